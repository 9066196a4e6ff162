"""
Frobenius cohomology package.

Gamma_0-cohomology and Weil-étale contributions computed from Frobenius
characteristic polynomials, with the cross-check against the zeta side.
"""

from .frob_cohomology_logic import (
    CrosscheckResult,
    FrobData,
    FrobeniusIdempotents,
    Gamma0Cohomology,
    Gamma0Term,
    SemisimplicityVerdict,
    SymmetryReport,
    WeilEtaleDegree,
    WeilEtaleReport,
    crosscheck_special_value,
    frobenius_idempotents,
    gamma0_cohomology,
    semisimplicity_verdict,
    tate_symmetry,
    weil_etale_orders,
)

__all__ = [
    "CrosscheckResult",
    "FrobData",
    "FrobeniusIdempotents",
    "Gamma0Cohomology",
    "Gamma0Term",
    "SemisimplicityVerdict",
    "SymmetryReport",
    "WeilEtaleDegree",
    "WeilEtaleReport",
    "crosscheck_special_value",
    "frobenius_idempotents",
    "gamma0_cohomology",
    "semisimplicity_verdict",
    "tate_symmetry",
    "weil_etale_orders",
]
