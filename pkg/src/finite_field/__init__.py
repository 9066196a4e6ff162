"""
Finite Field Module

Exact arithmetic in F_{p^k} and its extensions, plus element enumeration for
point counting.

The module provides:
- make_field: canonical field construction (least monic irreducible modulus)
- arith: add / sub / mul / inv / pow on field elements
- enumerate_extension: deterministic enumeration of F_{q^m}
"""

from .field_logic import (
    LOG_ZERO,
    FieldElement,
    GaloisField,
    PrimePower,
    arith,
    enumerate_extension,
    make_field,
)

__all__ = [
    "LOG_ZERO",
    "FieldElement",
    "GaloisField",
    "PrimePower",
    "arith",
    "enumerate_extension",
    "make_field",
]
