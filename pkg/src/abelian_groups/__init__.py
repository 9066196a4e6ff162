"""
Abelian groups package.

Smith normal form, a closed class of abelian groups with z(f), completions and
Ulm subgroups, exhaustive summand complements, and idempotent lifting.
"""

from .groups import (
    AbGroup,
    Completion,
    GroupHom,
    PairingEmbedding,
    TateModule,
    UlmReport,
    cyclic_decomposition,
    l_adic_completion,
    pairing_embedding,
    quotient_mod_n,
    torsion_T,
    ulm_and_divisible,
    z_value,
)
from .lifting import (
    ConjugationResult,
    MatrixRingElement,
    conjugating_unit,
    lift_idempotent,
    lift_orthogonal_idempotents,
    lift_unit,
)
from .selftest import SelftestReport, run_selftest
from .smith import smith_normal_form
from .subgroups import ComplementResult, is_pure, maximal_avoiding_subgroup, summand_complement

__all__ = [
    "AbGroup",
    "Completion",
    "ComplementResult",
    "ConjugationResult",
    "GroupHom",
    "MatrixRingElement",
    "PairingEmbedding",
    "SelftestReport",
    "TateModule",
    "UlmReport",
    "conjugating_unit",
    "cyclic_decomposition",
    "is_pure",
    "l_adic_completion",
    "lift_idempotent",
    "lift_orthogonal_idempotents",
    "lift_unit",
    "maximal_avoiding_subgroup",
    "pairing_embedding",
    "quotient_mod_n",
    "run_selftest",
    "smith_normal_form",
    "summand_complement",
    "torsion_T",
    "ulm_and_divisible",
    "z_value",
]
