"""
Frobenius Cohomology Logic Module

Weil-étale side of the special-value identity computed from Frobenius data.
For a Gamma_0-module M the cohomology is M^Gamma_0, M_Gamma_0, 0, 0, ...; with
M = H^i of the geometric variety twisted by r, the action of 1 - F q^-r is an
isomorphism unless q^r is an inverse root of P_i, in which case both groups
have positive rank. Finite contributions are measured through the product
formula: over all primes the indices multiply to |P_i(q^-r)|.

Each H^i of the Weil-étale site sits in
    0 -> H^{i-1}(V)_Gamma_0 -> H^i(V_W) -> H^i(V)^Gamma_0 -> 0,
so ranks occur in degrees 2r and 2r + 1 when q^r only occurs in P_{2r}.
"""

from fractions import Fraction
from typing import Dict, List, Literal, Optional, Sequence

from pydantic import BaseModel, Field, model_validator
from sympy import QQ, Poly, factorint, gcdex, symbols

from special_value import leading_coefficient, pole_order
from utils.exceptions import InputError, MinPolyInconsistent, WeightAmbiguous
from utils.logging import get_logger
from utils.rationals import ExactRational
from zeta import ZetaFunction, int_poly, weight_of

logger = get_logger(__name__)

T = symbols("T")


class FrobData(BaseModel):
    """Characteristic polynomials det(1 - F t | H^i), i = 0..2d."""

    d: int = Field(ge=0)
    p: int
    k: int
    polys: List[List[int]]

    @model_validator(mode="after")
    def _shape(self) -> "FrobData":
        if len(self.polys) != 2 * self.d + 1:
            raise InputError(
                f"expected {2 * self.d + 1} characteristic polynomials, got {len(self.polys)}",
                error_code="VALIDATION_ERROR",
            )
        for i, poly in enumerate(self.polys):
            if not poly or poly[0] != 1:
                raise InputError(f"P_{i} must have constant term 1", error_code="VALIDATION_ERROR")
        self.polys = [int_poly.trim(poly) for poly in self.polys]
        return self

    @classmethod
    def from_zeta(cls, z: ZetaFunction) -> "FrobData":
        return cls(d=z.d, p=z.p, k=z.k, polys=[list(poly) for poly in z.factors])

    @property
    def q(self) -> int:
        return self.p ** self.k

    def check_weights(self, tolerance: Optional[float] = None) -> None:
        """
        Raise WeightAmbiguous unless every inverse root of P_i has modulus q^(i/2).
        """
        for i, poly in enumerate(self.polys):
            if int_poly.degree(poly) == 0:
                continue
            w = weight_of(poly, self.q, tolerance)
            if w != i:
                raise WeightAmbiguous(f"P_{i} has weight {w}", factor=poly)


class Gamma0Term(BaseModel):
    kind: Literal["finite", "infinite_rank"]
    rank: int = 0


class Gamma0Cohomology(BaseModel):
    degree: int
    r: int
    h0: Gamma0Term
    h1: Gamma0Term
    contribution: Optional[ExactRational] = None

    def higher(self, n: int) -> int:
        """H^n(Gamma_0, M) for n >= 2 is always zero."""
        if n < 2:
            raise InputError("only degrees n >= 2 are higher cohomology", error_code="VALIDATION_ERROR")
        return 0


class WeilEtaleDegree(BaseModel):
    degree: int
    rank_positive: bool
    invariants_rank: int
    coinvariants_rank: int
    contribution: Optional[ExactRational] = None
    prime_exponents: Dict[str, int] = Field(default_factory=dict)


class WeilEtaleReport(BaseModel):
    r: int
    degrees: List[WeilEtaleDegree]

    @property
    def rank_degrees(self) -> List[int]:
        return [d.degree for d in self.degrees if d.rank_positive]


class CrosscheckResult(BaseModel):
    kind: Literal["match", "mismatch"]
    value: Optional[ExactRational] = None
    lhs: Optional[ExactRational] = None
    rhs: Optional[ExactRational] = None
    detail: Optional[str] = None


class SemisimplicityVerdict(BaseModel):
    kind: Literal["semisimple", "not_semisimple", "unknown"]
    rho: int
    minimal_poly_multiplicity: Optional[int] = None


class SymmetryReport(BaseModel):
    r: int
    rho_r: int
    rho_dual: int
    symmetric: bool


class FrobeniusIdempotents(BaseModel):
    """e_rest + e_eigen = 1, both idempotent modulo the N-th power of the characteristic polynomial."""

    rho: int
    rest_dimension: int
    e_rest: List[ExactRational]
    e_eigen: List[ExactRational]


def _prime_exponents(value: Fraction) -> Dict[str, int]:
    exponents: Dict[str, int] = {}
    for prime, e in factorint(value.numerator).items():
        exponents[str(prime)] = e
    for prime, e in factorint(value.denominator).items():
        exponents[str(prime)] = exponents.get(str(prime), 0) - e
    return dict(sorted(exponents.items(), key=lambda item: int(item[0])))


def gamma0_cohomology(poly: Sequence[int], r: int, q: int, degree: int = 0) -> Gamma0Cohomology:
    """
    Gamma_0-cohomology of H^degree twisted by r, from its characteristic polynomial.

    Returns InfiniteRank(rho) in degrees 0 and 1 when q^r is an inverse root of
    multiplicity rho; otherwise both are finite and the contribution is
    |P(q^-r)|.
    """
    rho, _ = int_poly.strip_inverse_root(poly, q ** r)
    if rho:
        term = Gamma0Term(kind="infinite_rank", rank=rho)
        return Gamma0Cohomology(degree=degree, r=r, h0=term, h1=term)
    value = abs(int_poly.evaluate(poly, Fraction(1, q ** r)))
    finite = Gamma0Term(kind="finite")
    return Gamma0Cohomology(
        degree=degree, r=r, h0=finite, h1=finite, contribution=ExactRational.from_fraction(value)
    )


def weil_etale_orders(fd: FrobData, r: int) -> WeilEtaleReport:
    """
    Per-degree contributions to H^i(X_W, Z(r)), i = 0..2d+1.

    Degree i combines the invariants of H^i with the coinvariants of H^{i-1}.
    """
    gammas = [gamma0_cohomology(poly, r, fd.q, i) for i, poly in enumerate(fd.polys)]
    degrees = []
    for i in range(2 * fd.d + 2):
        invariants = gammas[i].h0 if i < len(gammas) else Gamma0Term(kind="finite")
        coinvariants = gammas[i - 1] if i >= 1 else None
        co_term = coinvariants.h1 if coinvariants else Gamma0Term(kind="finite")
        rank_positive = invariants.kind == "infinite_rank" or co_term.kind == "infinite_rank"
        entry = WeilEtaleDegree(
            degree=i,
            rank_positive=rank_positive,
            invariants_rank=invariants.rank,
            coinvariants_rank=co_term.rank,
        )
        if not rank_positive and coinvariants is not None:
            value = coinvariants.contribution.to_fraction()
            entry.contribution = ExactRational.from_fraction(value)
            entry.prime_exponents = _prime_exponents(value)
        elif not rank_positive:
            entry.contribution = ExactRational.from_fraction(1)
        degrees.append(entry)
    report = WeilEtaleReport(r=r, degrees=degrees)
    logger.debug("weil-etale degrees", r=r, rank_degrees=report.rank_degrees)
    return report


def crosscheck_special_value(fd: FrobData, z: ZetaFunction, r: int) -> CrosscheckResult:
    """
    Compare prod_i |P_i*(q^-r)|^((-1)^(i+1)) with |leading coefficient of Z at q^-r|.

    Only P_{2r} has (1 - q^r t)^rho removed; a vanishing factor in any other
    degree is reported as a mismatch.
    """
    x = Fraction(1, fd.q ** r)
    rhs = abs(leading_coefficient(z, r))
    lhs = Fraction(1)
    for i, poly in enumerate(fd.polys):
        if i == 2 * r:
            _, poly = int_poly.strip_inverse_root(poly, fd.q ** r)
        value = abs(int_poly.evaluate(poly, x))
        if value == 0:
            logger.warning("frobenius data vanishes outside degree 2r", degree=i, r=r)
            return CrosscheckResult(
                kind="mismatch",
                rhs=ExactRational.from_fraction(rhs),
                detail=f"P_{i} vanishes at q^-{r}",
            )
        lhs = lhs / value if i % 2 == 0 else lhs * value
    if lhs == rhs:
        return CrosscheckResult(kind="match", value=ExactRational.from_fraction(lhs))
    logger.warning("special value crosscheck failed", lhs=str(lhs), rhs=str(rhs))
    return CrosscheckResult(
        kind="mismatch",
        lhs=ExactRational.from_fraction(lhs),
        rhs=ExactRational.from_fraction(rhs),
        detail="alternating product differs from the zeta limit",
    )


def semisimplicity_verdict(
    poly: Sequence[int], r: int, q: int, minimal_poly: Optional[Sequence[int]] = None
) -> SemisimplicityVerdict:
    """
    Is Frobenius semisimple on the q^r-eigenspace of H^{2r}?

    Both polynomials use the det(1 - F t) convention. Without a minimal
    polynomial a simple eigenvalue forces semisimplicity and a repeated one is
    undecided.

    Raises:
        MinPolyInconsistent: if the minimal polynomial does not divide the
            characteristic polynomial or misses the eigenvalue q^r
    """
    a = q ** r
    rho, _ = int_poly.strip_inverse_root(poly, a)
    if minimal_poly is None:
        kind = "semisimple" if rho <= 1 else "unknown"
        return SemisimplicityVerdict(kind=kind, rho=rho)
    char = Poly(list(reversed(int_poly.trim(poly))), T, domain=QQ)
    minimal = Poly(list(reversed(int_poly.trim(minimal_poly))), T, domain=QQ)
    if minimal.is_zero or not char.rem(minimal).is_zero:
        raise MinPolyInconsistent("minimal polynomial does not divide the characteristic polynomial")
    mu, _ = int_poly.strip_inverse_root(minimal_poly, a)
    if rho > 0 and mu == 0:
        raise MinPolyInconsistent(f"minimal polynomial misses the eigenvalue {a}")
    kind = "semisimple" if mu <= 1 else "not_semisimple"
    return SemisimplicityVerdict(kind=kind, rho=rho, minimal_poly_multiplicity=mu)


def tate_symmetry(z: ZetaFunction, r: int) -> SymmetryReport:
    """Pole orders at r and d - r agree by Poincaré duality."""
    if not 0 <= r <= z.d:
        raise InputError(f"r must lie in [0, {z.d}]", error_code="VALIDATION_ERROR")
    rho_r, rho_dual = pole_order(z, r), pole_order(z, z.d - r)
    return SymmetryReport(r=r, rho_r=rho_r, rho_dual=rho_dual, symmetric=rho_r == rho_dual)


def frobenius_idempotents(poly: Sequence[int], r: int, q: int, N: int = 1) -> FrobeniusIdempotents:
    """
    Split H^{2r} into the generalized q^r-eigenspace and its complement.

    Writes the forward characteristic polynomial as Q(T) (T - q^r)^rho and
    returns the Bezout pair e_rest = u Q^N, e_eigen = v (T - q^r)^(N rho).
    """
    if N < 1:
        raise InputError("N must be positive", error_code="VALIDATION_ERROR")
    a = q ** r
    poly = int_poly.trim(poly)
    rho, rest = int_poly.strip_inverse_root(poly, a)
    zero = ExactRational.from_fraction(0)
    one = ExactRational.from_fraction(1)
    if rho == 0:
        return FrobeniusIdempotents(rho=0, rest_dimension=len(poly) - 1, e_rest=[one], e_eigen=[zero])
    # forward polynomial of the cofactor: T^deg * rest(1/T)
    forward_rest = Poly(list(int_poly.trim(rest)), T, domain=QQ)
    A = forward_rest ** N
    B = Poly(T - a, T, domain=QQ) ** (N * rho)
    u, v, g = gcdex(A, B)
    if g != Poly(1, T, domain=QQ):
        raise MinPolyInconsistent("eigenvalue factor is not coprime to its cofactor")

    def coefficients(p: Poly) -> List[ExactRational]:
        values = [Fraction(int(c.p), int(c.q)) for c in reversed(p.all_coeffs())]
        return [ExactRational.from_fraction(c) for c in values] or [zero]

    return FrobeniusIdempotents(
        rho=rho,
        rest_dimension=len(poly) - 1 - rho,
        e_rest=coefficients(u * A),
        e_eigen=coefficients(v * B),
    )
