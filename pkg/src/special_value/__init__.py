"""
Special value package.

Pole orders, exact leading coefficients and predicted Weil-étale Euler
characteristics at t = q^(-r).
"""

from .special_value_logic import (
    HypothesisFlags,
    SpecialValueReport,
    TateVerdict,
    bracket_leading,
    check_leading,
    laurent_expansion,
    leading_coefficient,
    pole_order,
    predict_chi_prime,
    tate_verdict,
)

__all__ = [
    "HypothesisFlags",
    "SpecialValueReport",
    "TateVerdict",
    "bracket_leading",
    "check_leading",
    "laurent_expansion",
    "leading_coefficient",
    "pole_order",
    "predict_chi_prime",
    "tate_verdict",
]
