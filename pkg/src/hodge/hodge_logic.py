"""
Hodge Logic Module

Hodge diamonds h[j][i] = dim H^j(X, Omega^i) for the supported varieties and
the coherent Euler characteristic chi(X, O_X, r) built from them.

Smooth hypersurfaces use the classical generating function for the primitive
middle cohomology,

    H(a, b) = ((1+a)^e - (1+b)^e) / (a(1+b)^e - b(1+a)^e) - 1) / ((1+a)(1+b))
              + 1 / (1 - ab),

whose coefficient of a^i b^(dim-i) is the middle Hodge number h^(i, dim-i); all
other entries are those of projective space. The values are those of a lift to
characteristic zero, so hypersurfaces whose degree is divisible by p are
flagged rather than trusted.
"""

from typing import List

from pydantic import BaseModel, Field, model_validator
from sympy import ZZ
from sympy.polys.rings import ring

from utils.exceptions import InputError, UnsupportedVariety
from utils.logging import get_logger
from variety.schemas import Hypersurface, PlaneCurve, Product, ProjectiveSpace

logger = get_logger(__name__)

_R, _a, _b = ring("a,b", ZZ)


class HodgeDiamond(BaseModel):
    """(d+1) x (d+1) matrix with h[j][i] = dim H^j(X, Omega^i)."""

    d: int = Field(ge=0)
    h: List[List[int]]

    @model_validator(mode="after")
    def _serre_symmetric(self) -> "HodgeDiamond":
        size = self.d + 1
        if len(self.h) != size or any(len(row) != size for row in self.h):
            raise InputError(f"Hodge diamond of dimension {self.d} must be {size}x{size}", error_code="VALIDATION_ERROR")
        if self.h[0][0] != 1:
            raise InputError("h^{0,0} must be 1", error_code="VALIDATION_ERROR")
        for j in range(size):
            for i in range(size):
                if self.h[j][i] < 0 or self.h[j][i] != self.h[self.d - j][self.d - i]:
                    raise InputError(f"diamond violates Serre duality at ({j}, {i})", error_code="VALIDATION_ERROR")
        return self

    def betti(self) -> List[int]:
        return [
            sum(self.h[j][m - j] for j in range(max(0, m - self.d), min(m, self.d) + 1))
            for m in range(2 * self.d + 1)
        ]


def _truncate(poly, top: int):
    return _R.from_dict({m: c for m, c in poly.items() if sum(m) <= top})


def _inverse(poly, top: int):
    """Power series inverse of a polynomial with constant term 1, up to total degree ``top``."""
    if poly.get((0, 0), 0) != 1:
        raise ValueError("series inverse needs constant term 1")
    tail = _truncate(_R.one - poly, top)
    out, term = _R.one, _R.one
    for _ in range(top):
        term = _truncate(term * tail, top)
        out += term
    return out


def hypersurface_middle_hodge(degree: int, dim: int) -> List[int]:
    """h^(i, dim-i) for i = 0..dim of a smooth degree ``degree`` hypersurface of dimension ``dim``."""
    one_a, one_b = _R.one + _a, _R.one + _b
    # both fractions of the generating function share the factor (a - b)
    numerator = sum((one_a ** j * one_b ** (degree - 1 - j) for j in range(degree)), _R.zero)
    denominator = (_a * one_b ** degree - _b * one_a ** degree).exquo(_a - _b)
    F = _truncate(numerator * _inverse(denominator, dim), dim)
    H = _truncate((F - 1) * _inverse(one_a * one_b, dim), dim) + _inverse(_R.one - _a * _b, dim)
    return [int(H.get((i, dim - i), 0)) for i in range(dim + 1)]


def _identity(d: int) -> List[List[int]]:
    return [[int(i == j) for i in range(d + 1)] for j in range(d + 1)]


def _kunneth(left: HodgeDiamond, right: HodgeDiamond) -> HodgeDiamond:
    d = left.d + right.d
    h = [[0] * (d + 1) for _ in range(d + 1)]
    for j1, row1 in enumerate(left.h):
        for i1, x in enumerate(row1):
            if not x:
                continue
            for j2, row2 in enumerate(right.h):
                for i2, y in enumerate(row2):
                    h[j1 + j2][i1 + i2] += x * y
    return HodgeDiamond(d=d, h=h)


def hodge_of(v) -> HodgeDiamond:
    """
    Hodge diamond of a supported variety.

    Args:
        v: ProjectiveSpace, PlaneCurve, Hypersurface or a Product of those

    Returns:
        HodgeDiamond with h[j][i] = dim H^j(X, Omega^i)

    Raises:
        UnsupportedVariety: for hypersurfaces in P^1 and unknown kinds
    """
    if isinstance(v, ProjectiveSpace):
        return HodgeDiamond(d=v.n, h=_identity(v.n))
    if isinstance(v, PlaneCurve):
        e = v.f.degree
        g = (e - 1) * (e - 2) // 2
        return HodgeDiamond(d=1, h=[[1, g], [g, 1]])
    if isinstance(v, Hypersurface):
        if v.n < 2:
            raise UnsupportedVariety("hypersurfaces in P^1 are finite point sets", kind="hypersurface")
        dim = v.n - 1
        h = _identity(dim)
        for i, value in enumerate(hypersurface_middle_hodge(v.f.degree, dim)):
            h[dim - i][i] = value
        return HodgeDiamond(d=dim, h=h)
    if isinstance(v, Product):
        return _kunneth(hodge_of(v.left), hodge_of(v.right))
    raise UnsupportedVariety(f"no Hodge numbers for {type(v).__name__}", kind=type(v).__name__)


def characteristic_caveat(v, p: int) -> bool:
    """True when some hypersurface degree is divisible by p, where lifted Hodge numbers may be wrong."""
    if isinstance(v, (Hypersurface, PlaneCurve)):
        flagged = v.f.degree % p == 0
        if flagged:
            logger.warning("degree divisible by the characteristic", degree=v.f.degree, p=p)
        return flagged
    if isinstance(v, Product):
        return characteristic_caveat(v.left, p) or characteristic_caveat(v.right, p)
    return False


def chi_O(hd: HodgeDiamond, r: int) -> int:
    """sum over i <= min(r, d) and all j of (-1)^(i+j) (r - i) h[j][i]."""
    if r < 0:
        raise InputError("r must be non-negative", error_code="VALIDATION_ERROR")
    return sum(
        (-1) ** (i + j) * (r - i) * hd.h[j][i]
        for i in range(min(r, hd.d) + 1)
        for j in range(hd.d + 1)
    )
