"""Human-readable rendering of reports with rich."""

import json
from typing import List, Sequence

from rich.console import Console
from rich.table import Table

from cli.reports import Report


def format_poly(coefficients: Sequence[int], var: str = "t") -> str:
    """``[1, -2, 5]`` -> ``1 - 2t + 5t^2``."""
    parts: List[str] = []
    for i, c in enumerate(coefficients):
        if c == 0:
            continue
        magnitude = abs(c)
        if i == 0:
            body = str(magnitude)
        else:
            power = var if i == 1 else f"{var}^{i}"
            body = power if magnitude == 1 else f"{magnitude}{power}"
        if not parts:
            parts.append(f"-{body}" if c < 0 else body)
        else:
            parts.append(f"- {body}" if c < 0 else f"+ {body}")
    return " ".join(parts) or "0"


def _yes(flag) -> str:
    if flag is None:
        return "not checked"
    return "yes" if flag else "no"


def render_report(report: Report, console: Console) -> None:
    if report.abgrp is not None:
        console.print(f"[bold]abgrp {report.abgrp.operation}[/bold]")
        console.print_json(json.dumps(report.abgrp.result))
        if not report.abgrp.passed:
            console.print("[red]check failed[/red]")
        return

    field = report.field
    console.print(f"[bold]{report.variety}[/bold] over F_{field.q} (p = {field.p}, k = {field.k})")

    if report.counts is not None:
        table = Table(title="Point counts")
        table.add_column("m", justify="right")
        table.add_column("N_m", justify="right")
        for m, n in enumerate(report.counts, start=1):
            table.add_row(str(m), str(n))
        console.print(table)

    if report.zeta is not None:
        table = Table(title=f"Zeta function (d = {report.zeta.d}, counts: {report.zeta.counts_source})")
        table.add_column("i", justify="right")
        table.add_column("b_i", justify="right")
        table.add_column("P_i(t)")
        for i, (b, poly) in enumerate(zip(report.zeta.betti, report.zeta.factors)):
            table.add_row(str(i), str(b), format_poly(poly))
        console.print(table)

    if report.checks is not None:
        checks = report.checks
        fe = checks.functional_equation
        table = Table(title="Checks", show_header=False)
        table.add_row("functional equation", f"{_yes(fe.holds)} (sign {fe.sign}, chi_top {fe.chi_top})")
        table.add_row("riemann hypothesis", _yes(checks.riemann_hypothesis_holds))
        table.add_row("smoothness probe", checks.smoothness.verdict)
        table.add_row("p divides a degree", _yes(checks.characteristic_caveat))
        table.add_row("hodge/betti consistent", _yes(checks.hodge_betti_consistent))
        console.print(table)

    if report.special is not None:
        value = report.special.value
        lo, hi = report.special.leading_bracket
        table = Table(title=f"Special value at t = q^-{value.r}", show_header=False)
        table.add_row("pole order rho", str(value.rho))
        table.add_row("leading coefficient", str(value.leading))
        table.add_row("enclosure", f"[{lo}, {hi}]")
        table.add_row("chi(X, O_X, r)", str(value.chi_O))
        table.add_row("predicted chi'", str(value.predicted_chi_prime))
        table.add_row("hypotheses verified", _yes(value.hypotheses.verified))
        console.print(table)
        console.print(value.statement)

    if report.frobenius is not None:
        frob = report.frobenius
        table = Table(title=f"Frobenius data (from {frob.source})", show_header=False)
        crosscheck = frob.crosscheck.kind if frob.crosscheck.value is None else f"{frob.crosscheck.kind} ({frob.crosscheck.value})"
        table.add_row("cross-check", crosscheck)
        table.add_row("rank-positive degrees", ", ".join(map(str, frob.rank_degrees)) or "none")
        if frob.semisimplicity is not None:
            table.add_row("semisimplicity", frob.semisimplicity.kind)
        if frob.symmetry is not None:
            table.add_row("pole symmetry", f"{frob.symmetry.rho_r} / {frob.symmetry.rho_dual}")
        if frob.idempotents is not None:
            table.add_row("eigenspace split", f"{frob.idempotents.rho} + {frob.idempotents.rest_dimension}")
        console.print(table)

    if report.verdicts is not None:
        tate = report.verdicts.tate
        claimed = "" if tate.claimed is None else f", claimed {tate.claimed}"
        console.print(f"tate verdict: {tate.kind} (rho {tate.rho}{claimed})")

    for note in report.notes:
        console.print(f"[dim]note: {note}[/dim]")
