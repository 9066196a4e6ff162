"""
Zeta Reconstruction Logic Module

Recovers Z(X,t) = prod_i P_i(t)^((-1)^(i+1)) from finitely many point counts.
The rational function N(t)/D(t) is fitted exactly over the rationals (a Padé
system with the degrees fixed by the Betti numbers); N*D is then factored over
the integers and every irreducible factor is assigned to a cohomological
degree by the absolute value of its inverse roots, |alpha| = q^(i/2).
"""

from fractions import Fraction
from typing import List, Literal, Optional, Sequence, Tuple

import mpmath
from pydantic import BaseModel, Field, model_validator
from sympy import Matrix, Poly, Rational, cancel, factor_list, symbols

from utils.config import get_config
from utils.exceptions import InputError, InsufficientCounts, NoRationalFit, WeightAmbiguous
from utils.logging import get_logger
from variety.schemas import CountVector
from zeta import int_poly
from zeta.int_poly import IntPoly

logger = get_logger(__name__)

t = symbols("t")


class ZetaFunction(BaseModel):
    """Weil factorization P_0..P_{2d}, integer coefficients low-degree-first."""

    d: int = Field(ge=0)
    p: int
    k: int
    factors: List[List[int]]

    @model_validator(mode="after")
    def _shape(self) -> "ZetaFunction":
        if len(self.factors) != 2 * self.d + 1:
            raise InputError(
                f"expected {2 * self.d + 1} factors for dimension {self.d}, got {len(self.factors)}",
                error_code="VALIDATION_ERROR",
            )
        for i, poly in enumerate(self.factors):
            if not poly or poly[0] != 1:
                raise InputError(f"P_{i} must have constant term 1", error_code="VALIDATION_ERROR")
        self.factors = [int_poly.trim(poly) for poly in self.factors]
        return self

    @property
    def q(self) -> int:
        return self.p ** self.k

    @property
    def betti(self) -> List[int]:
        return [int_poly.degree(poly) for poly in self.factors]

    @property
    def chi_top(self) -> int:
        return sum((-1) ** i * b for i, b in enumerate(self.betti))

    def as_expression(self):
        """Z(t) as a sympy rational function."""
        expr = Rational(1)
        for i, poly in enumerate(self.factors):
            factor = Poly(list(reversed(poly)), t).as_expr()
            expr = expr * factor if i % 2 else expr / factor
        return expr


class FunctionalEquationResult(BaseModel):
    holds: bool
    chi_top: int
    sign: Optional[Literal[-1, 1]] = None
    detail: Optional[str] = None


class RootModulusReport(BaseModel):
    degree: int
    expected: float
    moduli: List[float]
    max_relative_error: float
    holds: bool


class RiemannHypothesisReport(BaseModel):
    factors: List[RootModulusReport]

    @property
    def holds(self) -> bool:
        return all(f.holds for f in self.factors)

    @property
    def violations(self) -> List[int]:
        return [f.degree for f in self.factors if not f.holds]


def zeta_series(counts: Sequence[int], order: int) -> List[Fraction]:
    """Coefficients z_0..z_order of exp(sum N_m t^m / m)."""
    z = [Fraction(1)]
    for n in range(1, order + 1):
        z.append(sum(Fraction(counts[m - 1]) * z[n - m] for m in range(1, n + 1)) / n)
    return z


def inverse_roots(poly: Sequence[int], dps: Optional[int] = None) -> List[mpmath.mpc]:
    """
    Numeric inverse roots of an integer polynomial with nonzero constant term.

    Roots are found per irreducible factor so repeated roots never stall the
    iteration.
    """
    dps = dps or get_config().root_precision_dps
    poly = int_poly.trim(poly)
    if len(poly) == 1:
        return []
    roots: List[mpmath.mpc] = []
    _, factors = factor_list(Poly(list(reversed(poly)), t))
    with mpmath.workdps(dps):
        for factor, multiplicity in factors:
            coeffs = [int(c) for c in reversed(factor.all_coeffs())]
            # reading the low-first list high-first gives the reciprocal polynomial
            found = mpmath.polyroots(coeffs, maxsteps=400, extraprec=2 * dps)
            if not isinstance(found, list):
                found = [found]
            roots.extend(list(found) * multiplicity)
    return roots


def weight_of(poly: Sequence[int], q: int, tolerance: Optional[float] = None, dps: Optional[int] = None) -> int:
    """
    The common weight w with |alpha| = q^(w/2) for every inverse root.

    Raises:
        WeightAmbiguous: if some root matches no weight within tolerance or the
            roots disagree
    """
    tolerance = tolerance or get_config().weight_tolerance
    dps = dps or get_config().root_precision_dps
    weights = set()
    with mpmath.workdps(dps):
        for alpha in inverse_roots(poly, dps):
            modulus = abs(alpha)
            w = int(mpmath.nint(2 * mpmath.log(modulus) / mpmath.log(q)))
            expected = mpmath.power(q, mpmath.mpf(w) / 2)
            if w < 0 or abs(modulus - expected) / expected > tolerance:
                raise WeightAmbiguous(
                    f"inverse root of modulus {mpmath.nstr(modulus, 12)} matches no weight",
                    factor=list(poly),
                )
            weights.add(w)
    if len(weights) != 1:
        raise WeightAmbiguous(f"inverse roots disagree on the weight: {sorted(weights)}", factor=list(poly))
    return weights.pop()


def _check_betti(betti: Sequence[int]) -> int:
    if len(betti) % 2 != 1 or betti[0] != 1 or betti[-1] != 1 or any(b < 0 for b in betti):
        raise InputError(f"inconsistent Betti numbers {list(betti)}", error_code="VALIDATION_ERROR")
    return (len(betti) - 1) // 2


def _solve_denominator(z: Sequence[Fraction], n_odd: int, n_even: int, M: int) -> List[Fraction]:
    rows, rhs = [], []
    for k in range(n_odd + 1, M + 1):
        rows.append([Rational(*_pair(z[k - j])) if k - j >= 0 else 0 for j in range(1, n_even + 1)])
        rhs.append(-Rational(*_pair(z[k])))
    A, b = Matrix(rows), Matrix(rhs)
    if A.rank() < n_even:
        raise NoRationalFit("linear system for the denominator is singular")
    try:
        solution, params = A.gauss_jordan_solve(b)
    except ValueError as exc:
        raise NoRationalFit("counts are inconsistent with the declared degrees") from exc
    if params.shape[0]:
        raise NoRationalFit("denominator is not determined by the counts")
    return [Fraction(int(x.p), int(x.q)) for x in solution]


def _pair(x: Fraction) -> Tuple[int, int]:
    return x.numerator, x.denominator


def _as_integers(coeffs: Sequence[Fraction], what: str) -> IntPoly:
    if any(c.denominator != 1 for c in coeffs):
        raise NoRationalFit(f"{what} has non-integral coefficients")
    return [int(c) for c in coeffs]


def _irreducible_factors(poly: IntPoly) -> List[Tuple[IntPoly, int]]:
    if int_poly.degree(poly) == 0:
        return []
    _, factors = factor_list(Poly(list(reversed(poly)), t))
    out = []
    for factor, multiplicity in factors:
        coeffs = [int(c) for c in reversed(factor.all_coeffs())]
        if abs(coeffs[0]) != 1:
            raise NoRationalFit(f"factor {coeffs} cannot be normalized to constant term 1")
        if coeffs[0] == -1:
            coeffs = [-c for c in coeffs]
        out.append((coeffs, multiplicity))
    return out


def zeta_from_counts(
    counts: CountVector,
    betti: Sequence[int],
    tolerance: Optional[float] = None,
    dps: Optional[int] = None,
) -> ZetaFunction:
    """
    Reconstruct the Weil-factored zeta function from point counts.

    Args:
        counts: N_1..N_M over F_q
        betti: Declared b_0..b_{2d}; fixes the numerator and denominator degrees
        tolerance: Relative tolerance for the weight of inverse roots
        dps: Working precision for root finding

    Returns:
        ZetaFunction whose factors have integer coefficients and constant term 1

    Raises:
        InsufficientCounts: if M < sum(betti)
        NoRationalFit: if no rational function of the declared shape fits
        WeightAmbiguous: if a factor cannot be assigned to a single weight
    """
    d = _check_betti(betti)
    n_odd = sum(b for i, b in enumerate(betti) if i % 2)
    n_even = sum(b for i, b in enumerate(betti) if i % 2 == 0)
    M = len(counts.counts)
    if M < n_odd + n_even:
        raise InsufficientCounts(
            f"need {n_odd + n_even} point counts, got {M}", needed=n_odd + n_even, given=M
        )
    q = counts.q
    z = zeta_series(counts.counts, M)
    denominator = [Fraction(1)] + _solve_denominator(z, n_odd, n_even, M)
    numerator = [
        sum(denominator[j] * z[k - j] for j in range(0, min(k, n_even) + 1)) for k in range(n_odd + 1)
    ]
    numerator_int = _as_integers(numerator, "numerator")
    denominator_int = _as_integers(denominator, "denominator")
    if numerator_int[-1] == 0 or denominator_int[-1] == 0:
        raise NoRationalFit("fit has lower degree than the Betti numbers declare")

    factors: List[IntPoly] = [[1] for _ in range(2 * d + 1)]
    for side, poly in (("numerator", numerator_int), ("denominator", denominator_int)):
        for factor, multiplicity in _irreducible_factors(poly):
            w = weight_of(factor, q, tolerance, dps)
            if w > 2 * d or (w % 2 == 1) != (side == "numerator"):
                raise NoRationalFit(f"factor {factor} of weight {w} cannot sit in the {side}")
            factors[w] = int_poly.mul(factors[w], int_poly.power(factor, multiplicity))

    for i, (poly, b) in enumerate(zip(factors, betti)):
        if int_poly.degree(poly) != b:
            raise NoRationalFit(f"deg P_{i} = {int_poly.degree(poly)} but b_{i} = {b}")

    logger.info("reconstructed zeta function", q=q, betti=list(betti), terms=M)
    return ZetaFunction(d=d, p=counts.p, k=counts.k, factors=factors)


def expand_counts(z: ZetaFunction, M: int) -> List[int]:
    """N_1..N_M predicted by the factorization, exactly via Newton's identities."""
    if M < 1:
        raise InputError("M must be positive", error_code="VALIDATION_ERROR")
    totals = [0] * M
    for i, poly in enumerate(z.factors):
        sign = (-1) ** i
        for m, s in enumerate(int_poly.power_sums(poly, M)):
            totals[m] += sign * s
    return totals


def kunneth_product(left: ZetaFunction, right: ZetaFunction) -> ZetaFunction:
    """Zeta of X x Y: P_i = prod_{j+k=i} P_j(X) (x) P_k(Y)."""
    if (left.p, left.k) != (right.p, right.k):
        raise InputError("factors live over different fields", error_code="VALIDATION_ERROR")
    d = left.d + right.d
    factors: List[IntPoly] = [[1] for _ in range(2 * d + 1)]
    for j, a in enumerate(left.factors):
        for k, b in enumerate(right.factors):
            factors[j + k] = int_poly.mul(factors[j + k], int_poly.tensor(a, b))
    return ZetaFunction(d=d, p=left.p, k=left.k, factors=factors)


def kunneth_counts(left: ZetaFunction, right: ZetaFunction, M: int) -> List[int]:
    """Counts of the product, termwise products of the factors' predicted counts."""
    return [a * b for a, b in zip(expand_counts(left, M), expand_counts(right, M))]


def functional_equation_check(z: ZetaFunction) -> FunctionalEquationResult:
    """
    Test Z(1/(q^d t)) = c * t^chi * Z(t) with c^2 = q^(d*chi) as an identity of
    rational functions; the sign of c is returned.
    """
    chi = z.chi_top
    Z = z.as_expression()
    ratio = cancel(Z.subs(t, 1 / (Rational(z.q) ** z.d * t)) / (t ** chi * Z))
    if ratio.free_symbols:
        return FunctionalEquationResult(holds=False, chi_top=chi, detail=f"ratio {ratio} is not constant")
    if ratio ** 2 != Rational(z.q) ** (z.d * chi):
        return FunctionalEquationResult(
            holds=False, chi_top=chi, detail=f"constant {ratio} squared is not q^(d*chi)"
        )
    return FunctionalEquationResult(holds=True, chi_top=chi, sign=1 if ratio > 0 else -1)


def riemann_hypothesis_check(
    z: ZetaFunction, tolerance: Optional[float] = None, dps: Optional[int] = None
) -> RiemannHypothesisReport:
    """Locate every inverse root of each P_i and compare |alpha| with q^(i/2)."""
    tolerance = tolerance or get_config().weight_tolerance
    dps = dps or get_config().root_precision_dps
    reports = []
    with mpmath.workdps(dps):
        for i, poly in enumerate(z.factors):
            expected = mpmath.power(z.q, mpmath.mpf(i) / 2)
            moduli = [abs(alpha) for alpha in inverse_roots(poly, dps)]
            errors = [abs(m - expected) / expected for m in moduli]
            worst = max(errors) if errors else mpmath.mpf(0)
            reports.append(
                RootModulusReport(
                    degree=i,
                    expected=float(expected),
                    moduli=[float(m) for m in moduli],
                    max_relative_error=float(worst),
                    holds=worst <= tolerance,
                )
            )
    report = RiemannHypothesisReport(factors=reports)
    if not report.holds:
        logger.warning("inverse roots off the expected circles", degrees=report.violations)
    return report
