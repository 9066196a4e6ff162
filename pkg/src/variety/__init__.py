"""
Variety package.

Symbolic variety descriptions and exact point counts over finite fields.
"""

from .schemas import (
    CountVector,
    HomogeneousPolynomial,
    Hypersurface,
    PlaneCurve,
    Product,
    ProjectiveSpace,
    SmoothnessVerdict,
    VarietyExpr,
)
from .variety_logic import (
    betti_degrees,
    count_hypersurface,
    count_points,
    count_vector,
    dimension,
    smoothness_probe,
)

__all__ = [
    "CountVector",
    "HomogeneousPolynomial",
    "Hypersurface",
    "PlaneCurve",
    "Product",
    "ProjectiveSpace",
    "SmoothnessVerdict",
    "VarietyExpr",
    "betti_degrees",
    "count_hypersurface",
    "count_points",
    "count_vector",
    "dimension",
    "smoothness_probe",
]
