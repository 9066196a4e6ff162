"""
Versioned machine-format reports.

Every rational is an ExactRational and nothing time-dependent is recorded, so
two runs on the same input emit byte-identical JSON.
"""

from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field

from frob_cohomology import (
    CrosscheckResult,
    FrobeniusIdempotents,
    SemisimplicityVerdict,
    SymmetryReport,
    WeilEtaleReport,
)
from special_value import SpecialValueReport, TateVerdict
from utils.rationals import ExactRational
from variety import SmoothnessVerdict
from zeta import FunctionalEquationResult, RootModulusReport

REPORT_VERSION = 1


class FieldInfo(BaseModel):
    p: int
    k: int
    q: int


class ZetaBlock(BaseModel):
    d: int
    betti: List[int]
    factors: List[List[int]]
    counts_source: Literal["direct", "kunneth"]


class ChecksBlock(BaseModel):
    functional_equation: FunctionalEquationResult
    riemann_hypothesis: List[RootModulusReport]
    riemann_hypothesis_holds: bool
    smoothness: SmoothnessVerdict
    characteristic_caveat: bool
    hodge_betti_consistent: bool


class SpecialBlock(BaseModel):
    value: SpecialValueReport
    leading_bracket: List[ExactRational]


class FrobeniusBlock(BaseModel):
    source: Literal["input", "zeta"]
    crosscheck: CrosscheckResult
    weil_etale: WeilEtaleReport
    rank_degrees: List[int]
    semisimplicity: Optional[SemisimplicityVerdict] = None
    symmetry: Optional[SymmetryReport] = None
    idempotents: Optional[FrobeniusIdempotents] = None


class VerdictBlock(BaseModel):
    tate: TateVerdict
    hypotheses_verified: bool


class AbgrpBlock(BaseModel):
    operation: str
    result: Dict[str, Any]
    passed: bool = True


class Report(BaseModel):
    report_version: Literal[1] = REPORT_VERSION
    command: str
    variety: Optional[str] = None
    field: Optional[FieldInfo] = None
    counts: Optional[List[int]] = None
    zeta: Optional[ZetaBlock] = None
    checks: Optional[ChecksBlock] = None
    special: Optional[SpecialBlock] = None
    frobenius: Optional[FrobeniusBlock] = None
    verdicts: Optional[VerdictBlock] = None
    abgrp: Optional[AbgrpBlock] = None
    notes: List[str] = Field(default_factory=list)

    @property
    def inconsistent(self) -> bool:
        """A cross-check mismatch or a failed self-test."""
        if self.frobenius is not None and self.frobenius.crosscheck.kind == "mismatch":
            return True
        return self.abgrp is not None and not self.abgrp.passed


def emit_json(report: Report) -> str:
    """Newline-terminated machine format."""
    return report.model_dump_json(indent=2) + "\n"


def load_json(text: str) -> Report:
    return Report.model_validate_json(text)
