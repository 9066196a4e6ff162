"""
Special Value Logic Module

Pole order and exact leading coefficient of Z(X,t) at t = q^(-r), and the
Weil-étale Euler characteristic they predict:

    lim_{t -> q^-r} Z(X,t) (1 - q^r t)^rho = ± chi'(X, Z(r)) * q^chi(X, O_X, r)

The sign is reported but never asserted.
"""

from fractions import Fraction
from math import comb
from typing import List, Literal, Optional, Sequence, Tuple

import mpmath
from pydantic import BaseModel, Field

from hodge import HodgeDiamond, chi_O
from utils.config import get_config
from utils.exceptions import CrosscheckMismatch, InputError, InternalZero
from utils.logging import get_logger
from utils.rationals import ExactRational
from zeta import ZetaFunction, int_poly

logger = get_logger(__name__)


class HypothesisFlags(BaseModel):
    """What is known about the hypotheses of the special-value formula; None means not checked."""

    smoothness_probe: Optional[Literal["probably_smooth", "singular_point_found"]] = None
    weight_check: Optional[bool] = None
    functional_equation: Optional[bool] = None
    characteristic_caveat: Optional[bool] = None

    @property
    def verified(self) -> bool:
        return (
            self.smoothness_probe != "singular_point_found"
            and self.weight_check is not False
            and self.functional_equation is not False
        )


class SpecialValueReport(BaseModel):
    r: int = Field(ge=0)
    rho: int
    leading: ExactRational
    leading_sign: Literal[-1, 1]
    chi_O: int
    predicted_chi_prime: ExactRational
    hypotheses: HypothesisFlags = Field(default_factory=HypothesisFlags)
    statement: str = (
        "if T^r(X) holds, chi'(X_Wet, Z(r)) is defined and equals predicted_chi_prime"
    )


class TateVerdict(BaseModel):
    kind: Literal["consistent", "pole_mismatch", "no_claim"]
    rho: int
    claimed: Optional[int] = None


def _stripped_factors(z: ZetaFunction, r: int) -> List[Tuple[int, List[int]]]:
    a = z.q ** r
    return [int_poly.strip_inverse_root(poly, a) for poly in z.factors]


def pole_order(z: ZetaFunction, r: int) -> int:
    """Order of the pole of Z(X,t) at t = q^(-r); negative for a zero."""
    return sum(
        (1 if i % 2 == 0 else -1) * multiplicity
        for i, (multiplicity, _) in enumerate(_stripped_factors(z, r))
    )


def leading_coefficient(z: ZetaFunction, r: int) -> Fraction:
    """
    Exact value of Z(X,t) (1 - q^r t)^rho at t = q^(-r).

    Raises:
        InternalZero: if a factor still vanishes after removing (1 - q^r t)
    """
    x = Fraction(1, z.q ** r)
    value = Fraction(1)
    for i, (_, rest) in enumerate(_stripped_factors(z, r)):
        evaluated = int_poly.evaluate(rest, x)
        if evaluated == 0:
            raise InternalZero(f"P_{i}* vanishes at q^-{r}", degree=i)
        value = value / evaluated if i % 2 == 0 else value * evaluated
    return value


SERIES_TERMS = 64


def _exact(raw) -> Fraction:
    sign, man, exp, _ = raw
    value = Fraction(int(man)) * Fraction(2) ** int(exp)
    return -value if sign else value


def _bounds(x) -> Tuple[Fraction, Fraction]:
    """Exact endpoints of an mpmath interval."""
    lo, hi = x._mpi_
    return _exact(lo), _exact(hi)


def _contains_zero(x) -> bool:
    lo, hi = _bounds(x)
    return lo <= 0 <= hi


def _shifted(poly: Sequence[int], x0) -> list:
    """Coefficients of P(x0 + s) in s."""
    iv = mpmath.iv
    return [
        sum((iv.mpf(poly[k]) * comb(k, j) * x0 ** (k - j) for k in range(j, len(poly))), iv.mpf(0))
        for j in range(len(poly))
    ]


def _mul(a: list, b: list) -> list:
    out = [mpmath.iv.mpf(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _monomial(c: int, e: int) -> list:
    return [mpmath.iv.mpf(0)] * e + [mpmath.iv.mpf(c)]


def laurent_expansion(z: ZetaFunction, r: int, rho: int, terms: int = SERIES_TERMS) -> list:
    """
    First ``terms`` coefficients of Z(X,t) (1 - q^r t)^rho in s = t - q^(-r).

    Works on the factors P_i as given, in interval arithmetic, so it shares
    nothing with the exact stripping in ``leading_coefficient``. Near q^(-r),
    1 - q^r t = -q^r s.

    Raises:
        CrosscheckMismatch: if the expansion still has a pole at s = 0
    """
    iv = mpmath.iv
    a = z.q ** r
    x0 = iv.mpf(1) / iv.mpf(a)
    numerator = _monomial((-a) ** max(rho, 0), max(rho, 0))
    denominator = _monomial((-a) ** max(-rho, 0), max(-rho, 0))
    for i, poly in enumerate(z.factors):
        if i % 2 == 0:
            denominator = _mul(denominator, _shifted(poly, x0))
        else:
            numerator = _mul(numerator, _shifted(poly, x0))

    shift = next((j for j, c in enumerate(denominator) if not _contains_zero(c)), None)
    if shift is None:
        raise CrosscheckMismatch("denominator of the zeta function vanishes identically near q^-r")
    if not all(_contains_zero(c) for c in numerator[:shift]):
        lowest = next(j for j, c in enumerate(numerator) if not _contains_zero(c))
        raise CrosscheckMismatch(
            "series expansion keeps a pole at q^-r after removing the pole order",
            lhs=rho,
            rhs=rho + shift - lowest,
        )
    numerator = numerator[shift:] + [iv.mpf(0)] * terms
    denominator = denominator[shift:] + [iv.mpf(0)] * terms

    series: list = []
    for n in range(terms):
        acc = numerator[n] - sum((denominator[n - j] * series[j] for j in range(n)), iv.mpf(0))
        series.append(acc / denominator[0])
    return series


def bracket_leading(
    z: ZetaFunction, r: int, rho: Optional[int] = None, dps: Optional[int] = None, terms: int = SERIES_TERMS
) -> Tuple[Fraction, Fraction]:
    """Interval enclosure of the leading coefficient, read off the Laurent expansion at q^(-r)."""
    iv = mpmath.iv
    saved = iv.dps
    iv.dps = dps or get_config().root_precision_dps
    try:
        rho = pole_order(z, r) if rho is None else rho
        return _bounds(laurent_expansion(z, r, rho, terms)[0])
    finally:
        iv.dps = saved


def check_leading(z: ZetaFunction, r: int, leading: Optional[Fraction] = None) -> Tuple[Fraction, Fraction]:
    """
    Check the exact leading coefficient against its interval enclosure.

    Raises:
        CrosscheckMismatch: if the exact value lies outside the enclosure
    """
    leading = leading_coefficient(z, r) if leading is None else leading
    lo, hi = bracket_leading(z, r)
    if not lo <= leading <= hi:
        raise CrosscheckMismatch(
            "exact leading coefficient lies outside its interval enclosure",
            lhs=str(leading),
            rhs=[str(lo), str(hi)],
        )
    return lo, hi


def predict_chi_prime(
    z: ZetaFunction, hd: HodgeDiamond, r: int, hypotheses: Optional[HypothesisFlags] = None
) -> SpecialValueReport:
    """
    Assemble the special-value block at t = q^(-r).

    Args:
        z: Weil-factored zeta function
        hd: Hodge diamond of the same variety
        r: Twist
        hypotheses: Flags collected by the caller

    Returns:
        SpecialValueReport with predicted chi' = |leading| / q^chi_O
    """
    if r < 0:
        raise InputError(f"r must be non-negative, got {r}", error_code="VALIDATION_ERROR")
    rho = pole_order(z, r)
    leading = leading_coefficient(z, r)
    chi = chi_O(hd, r)
    predicted = abs(leading) / Fraction(z.q) ** chi
    logger.info("special value", r=r, rho=rho, leading=str(leading), chi_O=chi, predicted=str(predicted))
    return SpecialValueReport(
        r=r,
        rho=rho,
        leading=ExactRational.from_fraction(leading),
        leading_sign=1 if leading > 0 else -1,
        chi_O=chi,
        predicted_chi_prime=ExactRational.from_fraction(predicted),
        hypotheses=hypotheses or HypothesisFlags(),
    )


def tate_verdict(z: ZetaFunction, r: int, claimed_cycle_rank: Optional[int] = None) -> TateVerdict:
    """Compare the pole order with a claimed rank of numerical cycle classes."""
    rho = pole_order(z, r)
    if claimed_cycle_rank is None:
        return TateVerdict(kind="no_claim", rho=rho)
    kind = "consistent" if claimed_cycle_rank == rho else "pole_mismatch"
    if kind == "pole_mismatch":
        logger.warning("pole order differs from claimed cycle rank", rho=rho, claimed=claimed_cycle_rank)
    return TateVerdict(kind=kind, rho=rho, claimed=claimed_cycle_rank)
