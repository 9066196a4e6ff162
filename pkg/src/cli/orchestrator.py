"""
Pipeline Orchestrator Module

Runs the stages behind every subcommand in order:

    count   -> point counts N_1..N_M
    zeta    -> Weil factorization plus structural checks
    special -> pole order, leading coefficient and predicted chi'
    verify  -> Frobenius cross-check, Weil-étale ranks and conjecture verdicts

Each stage feeds the next; `run` returns the Report for the requested stage.
The `abgrp` utilities are dispatched separately by `run_abgrp`.
"""

from fractions import Fraction
from functools import cached_property
from typing import Any, Dict, List, Optional, Sequence

from abelian_groups import (
    AbGroup,
    GroupHom,
    MatrixRingElement,
    cyclic_decomposition,
    lift_idempotent,
    lift_unit,
    run_selftest,
    smith_normal_form,
    summand_complement,
    z_value,
)
from cli.input_parser import InputDocument
from cli.reports import (
    AbgrpBlock,
    ChecksBlock,
    FieldInfo,
    FrobeniusBlock,
    Report,
    SpecialBlock,
    VerdictBlock,
    ZetaBlock,
)
from finite_field import make_field
from frob_cohomology import (
    FrobData,
    crosscheck_special_value,
    frobenius_idempotents,
    semisimplicity_verdict,
    tate_symmetry,
    weil_etale_orders,
)
from hodge import characteristic_caveat, hodge_of
from special_value import HypothesisFlags, check_leading, predict_chi_prime, tate_verdict
from utils.config import get_config
from utils.exceptions import CrosscheckMismatch, InputError
from utils.logging import get_logger
from utils.rationals import ExactRational
from variety import (
    CountVector,
    Hypersurface,
    PlaneCurve,
    Product,
    betti_degrees,
    count_vector,
    smoothness_probe,
)
from zeta import (
    ZetaFunction,
    expand_counts,
    functional_equation_check,
    kunneth_counts,
    kunneth_product,
    riemann_hypothesis_check,
    zeta_from_counts,
)

logger = get_logger(__name__)

COMMANDS = ("count", "zeta", "special", "verify")
ABGRP_OPERATIONS = ("snf", "z", "decompose", "complement", "lift-idempotent", "lift-unit", "selftest")


def search_space(v, Q: int) -> int:
    """Largest number of projective points enumerated to count ``v`` over F_Q."""
    if isinstance(v, Product):
        return max(search_space(v.left, Q), search_space(v.right, Q))
    if isinstance(v, (Hypersurface, PlaneCurve)):
        n = v.n
        return (Q ** (n + 1) - 1) // (Q - 1)
    return 0


class ZetaOrchestrator:
    """
    Orchestrator for one input document.

    The field and variety come from the document; run parameters from the
    document's [run] section unless overridden by the caller.
    """

    def __init__(
        self,
        doc: InputDocument,
        terms: Optional[int] = None,
        r: Optional[int] = None,
        max_points: Optional[int] = None,
        workers: Optional[int] = None,
    ):
        if doc.field is None:
            raise InputError("no [field] section and no --q given", error_code="VALIDATION_ERROR")
        if doc.variety is None:
            raise InputError("no [variety] section given", error_code="VALIDATION_ERROR")
        self.doc = doc
        self.variety = doc.variety
        self.field = make_field(doc.field.p, doc.field.k, get_config().max_field_size)
        self.terms = terms or doc.run.terms
        self.r = r if r is not None else doc.run.r
        self.max_points = max_points or doc.run.max_points
        self.workers = workers or doc.run.workers
        self.notes: List[str] = []

        self._counts: Optional[List[int]] = None
        self._counts_source = "direct"
        self._zeta: Optional[ZetaFunction] = None

        logger.info(
            "orchestrator initialized",
            variety=str(self.variety),
            q=self.field.q,
        )

    # --- stages -----------------------------------------------------------

    @cached_property
    def betti(self) -> List[int]:
        return betti_degrees(self.variety)

    @property
    def needed_terms(self) -> int:
        return sum(self.betti)

    def _zeta_of(self, v) -> ZetaFunction:
        """Zeta of a factor; products are assembled by Künneth."""
        if isinstance(v, Product):
            return kunneth_product(self._zeta_of(v.left), self._zeta_of(v.right))
        betti = betti_degrees(v)
        counts = count_vector(v, self.field, sum(betti), self.max_points, self.workers)
        return zeta_from_counts(counts, betti)

    def count_stage(self, terms: Optional[int] = None) -> List[int]:
        """N_1..N_M, counted directly or, for products, through the factors' zeta functions."""
        M = terms or self.terms or self.needed_terms
        if self._counts is not None and len(self._counts) >= M:
            return self._counts[:M]
        bound = self.max_points or get_config().max_points
        if isinstance(self.variety, Product) and search_space(self.variety, self.field.q ** M) > bound:
            logger.info("direct product count exceeds the size guard, using Künneth", terms=M)
            counts = kunneth_counts(self._zeta_of(self.variety.left), self._zeta_of(self.variety.right), M)
            source = "kunneth"
        else:
            counts = count_vector(self.variety, self.field, M, self.max_points, self.workers).counts
            source = "direct"
        self._counts, self._counts_source = counts, source
        return counts

    def zeta_stage(self) -> ZetaFunction:
        if self._zeta is not None:
            return self._zeta
        M = max(self.terms or 0, self.needed_terms)
        counts = self.count_stage(M)
        if isinstance(self.variety, Product):
            z = self._zeta_of(self.variety)
            if expand_counts(z, M) != counts:
                raise CrosscheckMismatch(
                    "Künneth zeta does not reproduce the product's counts",
                    lhs=expand_counts(z, M),
                    rhs=counts,
                )
        else:
            z = zeta_from_counts(CountVector(p=self.field.p, k=self.field.k, counts=counts), self.betti)
        self._zeta = z
        return z

    def checks_stage(self, z: ZetaFunction) -> ChecksBlock:
        functional = functional_equation_check(z)
        rh = riemann_hypothesis_check(z)
        smoothness = smoothness_probe(self.variety, self.field, depth=1, max_points=self.max_points)
        caveat = characteristic_caveat(self.variety, self.field.p)
        hd = hodge_of(self.variety)
        consistent = hd.betti() == z.betti
        if not smoothness.is_smooth:
            self.notes.append("singular point found: hypotheses unverified")
        else:
            self.notes.append("smoothness probe found no singular point; this is not a proof")
        if caveat:
            self.notes.append("characteristic divides a degree: Hodge numbers are those of a lift")
            logger.warning("characteristic divides a defining degree", p=self.field.p)
        if not rh.holds:
            logger.warning("inverse roots off the expected circles", degrees=rh.violations)
        return ChecksBlock(
            functional_equation=functional,
            riemann_hypothesis=rh.factors,
            riemann_hypothesis_holds=rh.holds,
            smoothness=smoothness,
            characteristic_caveat=caveat,
            hodge_betti_consistent=consistent,
        )

    def special_stage(self, z: ZetaFunction, checks: ChecksBlock) -> SpecialBlock:
        r = self._require_r()
        flags = HypothesisFlags(
            smoothness_probe=checks.smoothness.verdict,
            weight_check=checks.riemann_hypothesis_holds,
            functional_equation=checks.functional_equation.holds,
            characteristic_caveat=checks.characteristic_caveat,
        )
        value = predict_chi_prime(z, hodge_of(self.variety), r, flags)
        lo, hi = check_leading(z, r, value.leading.to_fraction())
        return SpecialBlock(
            value=value,
            leading_bracket=[ExactRational.from_fraction(lo), ExactRational.from_fraction(hi)],
        )

    def frobenius_stage(self, z: ZetaFunction) -> FrobeniusBlock:
        r = self._require_r()
        if self.doc.frobenius is not None:
            fd = FrobData(d=z.d, p=z.p, k=z.k, polys=self.doc.frobenius)
            source = "input"
        else:
            fd = FrobData.from_zeta(z)
            source = "zeta"
        fd.check_weights()
        crosscheck = crosscheck_special_value(fd, z, r)
        weil_etale = weil_etale_orders(fd, r)
        block = FrobeniusBlock(
            source=source,
            crosscheck=crosscheck,
            weil_etale=weil_etale,
            rank_degrees=weil_etale.rank_degrees,
        )
        if r <= z.d:
            block.semisimplicity = semisimplicity_verdict(
                fd.polys[2 * r], r, fd.q, minimal_poly=self.doc.claims.minimal_poly
            )
            block.symmetry = tate_symmetry(z, r)
            block.idempotents = frobenius_idempotents(fd.polys[2 * r], r, fd.q)
        else:
            self.notes.append(f"r = {r} exceeds the dimension: no H^{2 * r} to decompose")
        return block

    def _require_r(self) -> int:
        if self.r is None:
            raise InputError("this command needs --r or r in [run]", error_code="VALIDATION_ERROR")
        return self.r

    # --- assembly ---------------------------------------------------------

    def run(self, command: str) -> Report:
        """
        Execute the stages up to ``command``.

        Args:
            command: One of count, zeta, special, verify

        Returns:
            Report for that stage
        """
        if command not in COMMANDS:
            raise InputError(f"unknown command {command!r}", error_code="VALIDATION_ERROR")
        logger.info("starting pipeline", command=command, variety=str(self.variety))
        report = Report(
            command=command,
            variety=str(self.variety),
            field=FieldInfo(p=self.field.p, k=self.field.k, q=self.field.q),
        )
        if command == "count":
            report.counts = self.count_stage()
            report.notes = self.notes
            return report

        z = self.zeta_stage()
        report.counts = self._counts
        report.zeta = ZetaBlock(d=z.d, betti=z.betti, factors=z.factors, counts_source=self._counts_source)
        report.checks = self.checks_stage(z)
        if command in ("special", "verify"):
            report.special = self.special_stage(z, report.checks)
        if command == "verify":
            report.frobenius = self.frobenius_stage(z)
            report.verdicts = VerdictBlock(
                tate=tate_verdict(z, self.r, self.doc.claims.cycle_rank),
                hypotheses_verified=report.special.value.hypotheses.verified,
            )
        report.notes = self.notes
        logger.info("pipeline completed", command=command)
        return report


def execute_pipeline(
    doc: InputDocument,
    command: str,
    terms: Optional[int] = None,
    r: Optional[int] = None,
    max_points: Optional[int] = None,
    workers: Optional[int] = None,
) -> Report:
    """
    Convenience function to run one subcommand on a parsed document.

    Args:
        doc: Parsed input document
        command: count, zeta, special or verify
        terms, r, max_points, workers: Overrides of the [run] section

    Returns:
        Report of the requested stage
    """
    orchestrator = ZetaOrchestrator(doc, terms=terms, r=r, max_points=max_points, workers=workers)
    return orchestrator.run(command)


# --- abelian group utilities ----------------------------------------------

def _rows(matrix: Any) -> List[List[int]]:
    return [[int(x) for x in row] for row in matrix.tolist()]


def _require(value: Any, flag: str) -> Any:
    if value is None:
        raise InputError(f"this operation needs {flag}", error_code="VALIDATION_ERROR")
    return value


def run_abgrp(
    operation: str,
    matrix: Optional[Sequence[Sequence[int]]] = None,
    source: Optional[Sequence[int]] = None,
    target: Optional[Sequence[int]] = None,
    group: Optional[Sequence[int]] = None,
    generators: Optional[Sequence[Sequence[int]]] = None,
    l: Optional[int] = None,
    n: int = 1,
    modulus: Optional[int] = None,
    seed: int = 0,
) -> Report:
    """Run one abelian-group utility and wrap its result in a Report."""
    if operation not in ABGRP_OPERATIONS:
        raise InputError(f"unknown abgrp operation {operation!r}", error_code="VALIDATION_ERROR")
    logger.info("abelian group utility", operation=operation)
    result: Dict[str, Any]
    passed = True

    if operation == "snf":
        D, U, V = smith_normal_form(_require(matrix, "--matrix"))
        result = {"D": _rows(D), "U": _rows(U), "V": _rows(V)}
    elif operation == "z":
        f = GroupHom(
            source_orders=list(_require(source, "--source")),
            target_orders=list(_require(target, "--target")),
            matrix=[list(row) for row in _require(matrix, "--matrix")],
        )
        result = {"z": ExactRational.from_fraction(Fraction(z_value(f))).model_dump()}
    elif operation == "decompose":
        factors = cyclic_decomposition(_require(matrix, "--matrix"))
        result = {"invariant_factors": factors, "group": str(AbGroup.from_orders(factors))}
    elif operation == "complement":
        N = AbGroup.from_orders(list(_require(group, "--group")))
        outcome = summand_complement(N, _require(generators, "--generators"), _require(l, "--l"), n)
        result = outcome.model_dump()
        passed = outcome.verified
    elif operation in ("lift-idempotent", "lift-unit"):
        a = MatrixRingElement.of(_require(matrix, "--matrix"), _require(modulus, "--modulus"))
        if operation == "lift-idempotent":
            result = {"modulus": a.modulus, "idempotent": lift_idempotent(a).tolist()}
        else:
            result = {"modulus": a.modulus, "inverse": lift_unit(a).tolist()}
    else:
        selftest = run_selftest(seed=seed)
        result = selftest.model_dump()
        passed = selftest.passed

    return Report(command="abgrp", abgrp=AbgrpBlock(operation=operation, result=result, passed=passed))
