"""
Zeta package.

Reconstruction of Weil-factored zeta functions from point counts and the
structural checks they must pass.
"""

from . import int_poly
from .zeta_logic import (
    FunctionalEquationResult,
    RiemannHypothesisReport,
    RootModulusReport,
    ZetaFunction,
    expand_counts,
    functional_equation_check,
    inverse_roots,
    kunneth_counts,
    kunneth_product,
    riemann_hypothesis_check,
    weight_of,
    zeta_from_counts,
    zeta_series,
)

__all__ = [
    "int_poly",
    "FunctionalEquationResult",
    "RiemannHypothesisReport",
    "RootModulusReport",
    "ZetaFunction",
    "expand_counts",
    "functional_equation_check",
    "inverse_roots",
    "kunneth_counts",
    "kunneth_product",
    "riemann_hypothesis_check",
    "weight_of",
    "zeta_from_counts",
    "zeta_series",
]
