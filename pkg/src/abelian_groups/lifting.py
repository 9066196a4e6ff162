"""
Lifting Module

Idempotents and units of the matrix ring M_k(Z/p^s) lifted from their
reductions mod p. The kernel of reduction, p * M_k(Z/p^s), is a nil ideal,
so for a with a^2 - a in that ideal,

    a' = (1 - (1 - a)^N)^N,   N least with (a - a^2)^N = 0,

is an exact idempotent congruent to a, and a unit with reduction 1 is
inverted by the finite geometric series 1 + (1 - a) + ... + (1 - a)^(N-1).
"""

from dataclasses import dataclass
from itertools import combinations
from typing import List, Sequence, Tuple

from sympy import Matrix, factorint

from utils.exceptions import (
    HypothesisFailed,
    InputError,
    NotIdempotentModP,
    NotOrthogonalModP,
    NotUnitModP,
)
from utils.logging import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class MatrixRingElement:
    """A square integer matrix with entries reduced into [0, modulus)."""

    entries: Tuple[Tuple[int, ...], ...]
    modulus: int

    def __post_init__(self):
        if self.modulus < 2:
            raise InputError(f"modulus must be at least 2, got {self.modulus}", error_code="VALIDATION_ERROR")
        size = len(self.entries)
        if size == 0 or any(len(row) != size for row in self.entries):
            raise InputError("matrix ring elements must be square and non-empty", error_code="VALIDATION_ERROR")
        object.__setattr__(
            self, "entries", tuple(tuple(int(x) % self.modulus for x in row) for row in self.entries)
        )

    @classmethod
    def of(cls, rows: Sequence[Sequence[int]], modulus: int) -> "MatrixRingElement":
        return cls(entries=tuple(tuple(row) for row in rows), modulus=modulus)

    @classmethod
    def identity(cls, size: int, modulus: int) -> "MatrixRingElement":
        return cls.of([[int(i == j) for j in range(size)] for i in range(size)], modulus)

    @classmethod
    def from_matrix(cls, M: Matrix, modulus: int) -> "MatrixRingElement":
        return cls.of(M.tolist(), modulus)

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def matrix(self) -> Matrix:
        return Matrix(self.entries)

    @property
    def prime(self) -> int:
        """p for a modulus p^s."""
        primes = factorint(self.modulus)
        if len(primes) != 1:
            raise InputError(f"modulus {self.modulus} is not a prime power", error_code="VALIDATION_ERROR")
        return int(next(iter(primes)))

    def _same_ring(self, other: "MatrixRingElement") -> None:
        if self.modulus != other.modulus or self.size != other.size:
            raise InputError("elements of different matrix rings", error_code="VALIDATION_ERROR")

    def __add__(self, other: "MatrixRingElement") -> "MatrixRingElement":
        self._same_ring(other)
        return MatrixRingElement.from_matrix(self.matrix + other.matrix, self.modulus)

    def __sub__(self, other: "MatrixRingElement") -> "MatrixRingElement":
        self._same_ring(other)
        return MatrixRingElement.from_matrix(self.matrix - other.matrix, self.modulus)

    def __mul__(self, other: "MatrixRingElement") -> "MatrixRingElement":
        self._same_ring(other)
        return MatrixRingElement.from_matrix(self.matrix * other.matrix, self.modulus)

    def __pow__(self, exponent: int) -> "MatrixRingElement":
        result = MatrixRingElement.identity(self.size, self.modulus)
        for _ in range(exponent):
            result = result * self
        return result

    def one(self) -> "MatrixRingElement":
        return MatrixRingElement.identity(self.size, self.modulus)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def reduce(self, modulus: int) -> "MatrixRingElement":
        if self.modulus % modulus:
            raise InputError(f"{modulus} does not divide {self.modulus}", error_code="VALIDATION_ERROR")
        return MatrixRingElement.of(self.entries, modulus)

    def is_idempotent(self) -> bool:
        return (self * self - self).is_zero()

    def tolist(self) -> List[List[int]]:
        return [list(row) for row in self.entries]


@dataclass(frozen=True)
class ConjugationResult:
    unit: MatrixRingElement
    inverse: MatrixRingElement


def nilpotency_index(x: MatrixRingElement) -> int:
    """Least N >= 1 with x^N = 0; x must lie in p * M_k(Z/p^s)."""
    power, N = x, 1
    while not power.is_zero():
        power = power * x
        N += 1
    return N


def _lift_in_corner(a: MatrixRingElement, unit: MatrixRingElement) -> MatrixRingElement:
    # the corner ring f R f has identity f; for f = 1 this is the plain formula
    N = nilpotency_index(a - a * a)
    logger.debug("lifting idempotent", N=N, modulus=a.modulus)
    return (unit - (unit - a) ** N) ** N


def _require_idempotent_mod_p(a: MatrixRingElement, index: int = 0) -> None:
    if not a.reduce(a.prime).is_idempotent():
        raise NotIdempotentModP(f"element {index} is not idempotent mod {a.prime}")


def lift_idempotent(a: MatrixRingElement) -> MatrixRingElement:
    """
    Exact idempotent above an idempotent mod p.

    Args:
        a: Element of M_k(Z/p^s) whose reduction mod p is idempotent

    Returns:
        a' with a'^2 = a' mod p^s and a' = a mod p

    Raises:
        NotIdempotentModP: if a mod p is not idempotent
    """
    _require_idempotent_mod_p(a)
    return _lift_in_corner(a, a.one())


def lift_unit(a: MatrixRingElement) -> MatrixRingElement:
    """
    Inverse of a unit of M_k(Z/p^s).

    b inverts a mod p, so c = b a lies over 1 and 1 - c is nilpotent; then
    a^-1 = (1 + (1 - c) + ... + (1 - c)^(N-1)) b.

    Raises:
        NotUnitModP: if a mod p is singular
    """
    p = a.prime
    try:
        b = a.matrix.inv_mod(p)
    except ValueError as e:
        raise NotUnitModP(f"matrix is singular mod {p}") from e
    b = MatrixRingElement.from_matrix(b, a.modulus)
    c = b * a
    tail = a.one() - c
    N = nilpotency_index(tail)
    series = a.one()
    term = a.one()
    for _ in range(N - 1):
        term = term * tail
        series = series + term
    return series * b


def conjugating_unit(e: MatrixRingElement, e_prime: MatrixRingElement) -> ConjugationResult:
    """
    Unit u with e' = u e u^-1 for two idempotents that agree mod p.

    u = e' e + (1 - e')(1 - e) satisfies e' u = e' e = u e and reduces to 1.
    """
    e._same_ring(e_prime)
    for index, x in enumerate((e, e_prime)):
        if not x.is_idempotent():
            raise NotIdempotentModP(f"element {index} is not idempotent mod {x.modulus}")
    p = e.prime
    if e.reduce(p) != e_prime.reduce(p):
        raise HypothesisFailed(
            f"idempotents differ mod {p}",
            witness=(e - e_prime).tolist()
        )
    one = e.one()
    unit = e_prime * e + (one - e_prime) * (one - e)
    return ConjugationResult(unit=unit, inverse=lift_unit(unit))


def lift_orthogonal_idempotents(es: Sequence[MatrixRingElement]) -> List[MatrixRingElement]:
    """
    Lift pairwise orthogonal idempotents mod p to pairwise orthogonal exact idempotents.

    Each element is lifted inside the corner ring f R f with f = 1 - (sum of
    the lifts so far), which is orthogonal to all earlier lifts.

    Raises:
        NotIdempotentModP: if some element is not idempotent mod p
        NotOrthogonalModP: if two elements have a nonzero product mod p
    """
    if not es:
        return []
    for x in es[1:]:
        es[0]._same_ring(x)
    p = es[0].prime
    for index, x in enumerate(es):
        _require_idempotent_mod_p(x, index)
    for i, j in combinations(range(len(es)), 2):
        if not (es[i] * es[j]).reduce(p).is_zero() or not (es[j] * es[i]).reduce(p).is_zero():
            raise NotOrthogonalModP(f"elements {i} and {j} are not orthogonal mod {p}", pair=(i, j))
    one = es[0].one()
    lifts: List[MatrixRingElement] = []
    for x in es:
        f = one
        for earlier in lifts:
            f = f - earlier
        lifts.append(_lift_in_corner(f * x * f, f))
    return lifts
