"""
Tests for the input parser, the orchestrator and the command-line front end.
"""

import json

import jsonschema
import pytest

from abelian_groups import SelftestReport
from cli import Report, emit_json, execute_pipeline, load_json, parse_input, parse_variety
from cli import orchestrator as orchestrator_module
from cli.command_line import main, parse_q
from cli.render import format_poly
from utils.exceptions import (
    InhomogeneousPolynomial,
    InputError,
    NotPrime,
    ParseError,
    SizeExceeded,
    UndeclaredVariable,
    UnsupportedVariety,
)
from variety import Hypersurface, PlaneCurve, Product, ProjectiveSpace

P2_DOC = """
# the projective plane over F_2
[field]
p = 2
k = 1

[variety]
expr = P(2)
"""

ELLIPTIC_DOC = """
[field]
p = 5

[variety]
expr = curve(x1^2*x2 - x0^3 - x0*x2^2)

[run]
r = 1
"""


# --- parsing ---------------------------------------------------------------

def test_parse_fermat_cubic():
    v = parse_variety("hyp(2; x0^3+x1^3+x2^3)")
    assert isinstance(v, Hypersurface)
    assert v.n == 2
    assert v.f.degree == 3
    assert v.f.as_dict() == {(3, 0, 0): 1, (0, 3, 0): 1, (0, 0, 3): 1}


def test_parse_product_of_lines():
    v = parse_variety("prod(P(1),P(1))")
    assert isinstance(v, Product)
    assert v.left == ProjectiveSpace(n=1) == v.right


def test_parse_coefficients_and_whitespace():
    v = parse_variety("curve( 2 * x0 x1 - x2^2 + 3x0^2 )")
    assert isinstance(v, PlaneCurve)
    assert v.f.as_dict() == {(1, 1, 0): 2, (0, 0, 2): -1, (2, 0, 0): 3}


def test_parse_leading_minus_and_repeated_monomials():
    v = parse_variety("curve(-x0^2 + x0*x0 + x1*x2)")
    assert v.f.as_dict() == {(0, 1, 1): 1}


@pytest.mark.parametrize(
    "text",
    ["hyp(2; x0^3+x1^3+x2^3)", "prod(P(1),curve(x1^2*x2 - x0^3 - x0*x2^2))", "hyp(3; x0*x1 - x2*x3)"],
)
def test_printed_varieties_parse_back(text):
    v = parse_variety(text)
    assert parse_variety(str(v)) == v


def test_inhomogeneous_polynomial_is_rejected():
    with pytest.raises(InhomogeneousPolynomial) as excinfo:
        parse_variety("hyp(2; x0^2+x1)")
    assert excinfo.value.degrees == [1, 2]


def test_undeclared_variable():
    with pytest.raises(UndeclaredVariable) as excinfo:
        parse_variety("curve(x0^2 - x3^2)")
    assert excinfo.value.variable == "x3"


def test_parse_error_position_and_expected_tokens():
    with pytest.raises(ParseError) as excinfo:
        parse_input("[variety]\nexpr = curve(x0^2 ** x1)\n")
    error = excinfo.value
    assert (error.line, error.column) == (2, 20)
    assert error.expected == ["x<digit>"]
    assert error.exit_code == 2


@pytest.mark.parametrize(
    "text,expected",
    [
        ("Q(2)", ["P(", "curve(", "hyp(", "prod("]),
        ("hyp(2, x0)", [";"]),
        ("prod(P(1) P(1))", [","]),
        ("P()", ["integer"]),
        ("P(1) extra", ["end of input"]),
    ],
)
def test_expression_syntax_errors(text, expected):
    with pytest.raises(ParseError) as excinfo:
        parse_variety(text)
    assert excinfo.value.expected == expected


@pytest.mark.parametrize(
    "text",
    [
        "p = 2\n",
        "[field]\np = 2\np = 3\n",
        "[field]\nq = 4\n",
        "[colours]\nred = 1\n",
        "[field]\np = two\n",
        "[frobenius]\nP0 = 1, -1\nP2 = 1\n",
    ],
)
def test_document_errors(text):
    with pytest.raises(ParseError):
        parse_input(text)


def test_not_prime_characteristic():
    with pytest.raises(NotPrime):
        parse_input("[field]\np = 4\n")


def test_full_document():
    doc = parse_input(
        P2_DOC
        + "\n[run]\nr = 1\nterms = 5\n"
        + "\n[frobenius]\nP0 = 1, -1\nP1 = 1\nP2 = 1, -2\nP3 = 1\nP4 = 1, -4\n"
        + "\n[claims]\ncycle_rank = 1  # hyperplane class\nminimal_poly = 1, -2\n"
    )
    assert (doc.field.p, doc.field.k) == (2, 1)
    assert doc.variety == ProjectiveSpace(n=2)
    assert (doc.run.r, doc.run.terms) == (1, 5)
    assert doc.frobenius == [[1, -1], [1], [1, -2], [1], [1, -4]]
    assert doc.claims.cycle_rank == 1
    assert doc.claims.minimal_poly == [1, -2]


def test_parse_q():
    assert parse_q("5^2") == (5, 2)
    assert parse_q("7") == (7, 1)
    with pytest.raises(InputError):
        parse_q("5**2")


# --- orchestration ---------------------------------------------------------

def test_verify_projective_plane():
    report = execute_pipeline(parse_input(P2_DOC), "verify", r=1)
    assert report.counts == [7, 21, 73]
    assert report.zeta.factors == [[1, -1], [1], [1, -2], [1], [1, -4]]
    value = report.special.value
    assert value.rho == 1
    assert str(value.leading) == "-2"
    assert value.chi_O == 1
    assert str(value.predicted_chi_prime) == "1"
    assert report.frobenius.crosscheck.kind == "match"
    assert report.frobenius.source == "zeta"
    assert report.frobenius.rank_degrees == [2, 3]
    assert report.frobenius.symmetry.symmetric
    assert report.frobenius.semisimplicity.kind == "semisimple"
    assert report.verdicts.tate.kind == "no_claim"
    assert report.verdicts.hypotheses_verified
    assert not report.inconsistent


def test_zeta_of_elliptic_curve():
    report = execute_pipeline(parse_input(ELLIPTIC_DOC), "special")
    assert report.zeta.factors[1] == [1, -2, 5]
    assert report.counts[:2] == [4, 32]
    assert report.checks.functional_equation.holds
    assert report.checks.riemann_hypothesis_holds
    assert report.checks.smoothness.verdict == "probably_smooth"
    assert report.checks.hodge_betti_consistent
    assert str(report.special.value.predicted_chi_prime) == "1"
    lo, hi = report.special.leading_bracket
    assert lo.to_fraction() <= 1 <= hi.to_fraction()


def test_count_uses_requested_terms():
    report = execute_pipeline(parse_input(P2_DOC), "count", terms=5)
    assert report.counts == [7, 21, 73, 273, 1057]
    assert report.zeta is None


def test_count_of_a_point_set_needs_no_betti_numbers():
    # x0^2 + x1^2 = 0 in P^1: two points over F_5, since 2^2 = -1
    doc = parse_input("[field]\np = 5\n[variety]\nexpr = hyp(1; x0^2 + x1^2)\n")
    assert execute_pipeline(doc, "count", terms=2).counts == [2, 2]
    with pytest.raises(UnsupportedVariety):
        execute_pipeline(doc, "zeta", terms=2)


def test_product_counts_direct_and_reconstructed():
    report = execute_pipeline(parse_input("[field]\np = 3\n[variety]\nexpr = prod(P(1),P(1))\n"), "zeta")
    assert report.counts == [16, 100, 784, 6724]
    assert report.zeta.betti == [1, 0, 2, 0, 1]
    assert report.zeta.counts_source == "direct"


def test_large_product_falls_back_to_kunneth(mocker):
    spy = mocker.spy(orchestrator_module, "kunneth_counts")
    # y^2 + y = x^3 + 1 over F_2 has 3 points and P_1 = 1 + 2t^2
    doc = parse_input("[field]\np = 2\n[variety]\nexpr = prod(curve(x1^2*x2 + x1*x2^2 + x0^3 + x2^3), P(1))\n")
    report = execute_pipeline(doc, "zeta", max_points=1000)
    assert spy.call_count == 1
    assert report.zeta.counts_source == "kunneth"
    assert report.zeta.betti == [1, 2, 2, 2, 1]
    assert report.zeta.factors[1] == [1, 0, 2]
    assert report.counts[0] == 3 * 3


def test_special_needs_r():
    with pytest.raises(InputError):
        execute_pipeline(parse_input(P2_DOC), "special")


def test_missing_field_section():
    with pytest.raises(InputError):
        execute_pipeline(parse_input("[variety]\nexpr = P(1)\n"), "count")


def test_size_guard_override():
    doc = parse_input("[field]\np = 5\n[variety]\nexpr = hyp(2; x0^3+x1^3+x2^3)\n")
    with pytest.raises(SizeExceeded):
        execute_pipeline(doc, "count", terms=2, max_points=100)


def test_mismatching_frobenius_data():
    doc = parse_input(P2_DOC + "\n[frobenius]\nP0 = 1, -1\nP1 = 1\nP2 = 1, 2\nP3 = 1\nP4 = 1, -4\n")
    report = execute_pipeline(doc, "verify", r=1)
    assert report.frobenius.source == "input"
    assert report.frobenius.crosscheck.kind == "mismatch"
    assert report.inconsistent


def test_claimed_cycle_rank():
    doc = parse_input(P2_DOC + "\n[claims]\ncycle_rank = 2\n")
    report = execute_pipeline(doc, "verify", r=1)
    assert report.verdicts.tate.kind == "pole_mismatch"


# --- reports ---------------------------------------------------------------

def test_report_round_trip_and_schema():
    report = execute_pipeline(parse_input(P2_DOC), "verify", r=1)
    text = emit_json(report)
    assert text.endswith("\n")
    assert load_json(text) == report
    document = json.loads(text)
    assert document["report_version"] == 1
    jsonschema.validate(document, Report.model_json_schema())


def test_rationals_are_exact_strings():
    document = json.loads(emit_json(execute_pipeline(parse_input(P2_DOC), "special", r=1)))
    assert document["special"]["value"]["leading"] == {"sign": -1, "num": "2", "den": "1"}


def test_format_poly():
    assert format_poly([1, -2, 5]) == "1 - 2t + 5t^2"
    assert format_poly([1]) == "1"
    assert format_poly([1, 0, -1]) == "1 - t^2"


# --- command line ----------------------------------------------------------

@pytest.fixture
def p2_file(tmp_path):
    path = tmp_path / "p2.zeta"
    path.write_text(P2_DOC, encoding="utf-8")
    return path


def test_main_json_is_deterministic(p2_file, capsys):
    assert main(["verify", "--input", str(p2_file), "--r", "1", "--json"]) == 0
    first = capsys.readouterr().out
    assert main(["verify", "--input", str(p2_file), "--r", "1", "--json"]) == 0
    assert capsys.readouterr().out == first
    assert json.loads(first)["frobenius"]["crosscheck"]["kind"] == "match"


def test_main_human_output(p2_file, capsys):
    assert main(["zeta", "--input", str(p2_file)]) == 0
    out = capsys.readouterr().out
    assert "1 - 4t" in out
    assert "P(2)" in out


def test_main_field_override(p2_file, capsys):
    assert main(["count", "--input", str(p2_file), "--q", "3", "--terms", "2", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["counts"] == [13, 91]


@pytest.mark.parametrize(
    "argv,code",
    [
        (["zeta", "--input", "does-not-exist.zeta"], 2),
        (["count", "--q", "4", "--input", "{p2}"], 2),
        (["count", "--q", "5", "--terms", "1", "--max-points", "10", "--input", "{cubic}"], 3),
        (["abgrp", "lift-unit", "--matrix", "[[3]]", "--modulus", "9"], 5),
        (["abgrp", "decompose", "--matrix", "[[2, 0], [0, 0]]"], 4),
        (["abgrp", "snf", "--matrix", "not json"], 2),
    ],
)
def test_exit_codes(argv, code, p2_file, tmp_path, capsys):
    cubic = tmp_path / "cubic.zeta"
    cubic.write_text("[variety]\nexpr = hyp(2; x0^3+x1^3+x2^3)\n", encoding="utf-8")
    argv = [a.format(p2=p2_file, cubic=cubic) for a in argv]
    assert main(argv) == code
    assert "error" in capsys.readouterr().err


def test_main_malformed_document(tmp_path, capsys):
    path = tmp_path / "bad.zeta"
    path.write_text("[variety]\nexpr = hyp(2; x0^3 +)\n", encoding="utf-8")
    assert main(["zeta", "--input", str(path)]) == 2
    assert "line 2" in capsys.readouterr().err


def test_abgrp_operations(capsys):
    assert main(["abgrp", "snf", "--matrix", "[[2, 4], [6, 8]]", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["abgrp"]["result"]["D"] == [[2, 0], [0, 4]]

    assert main(["abgrp", "z", "--source", "4", "--target", "2", "--matrix", "[[1]]", "--json"]) == 0
    z = json.loads(capsys.readouterr().out)["abgrp"]["result"]["z"]
    assert (z["sign"], z["num"], z["den"]) == (1, "2", "1")

    assert main(["abgrp", "decompose", "--matrix", "[[2, 0], [0, 3]]", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["abgrp"]["result"]["invariant_factors"] == [6]

    argv = ["abgrp", "complement", "--group", "2,4", "--generators", "[[1, 2]]", "--l", "2", "--json"]
    assert main(argv) == 0
    result = json.loads(capsys.readouterr().out)["abgrp"]["result"]
    assert result["verified"] and result["orders"] == [4]

    assert main(["abgrp", "lift-unit", "--matrix", "[[4]]", "--modulus", "9", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["abgrp"]["result"]["inverse"] == [[7]]

    assert main(["abgrp", "lift-idempotent", "--matrix", "[[4]]", "--modulus", "9", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["abgrp"]["result"]["idempotent"] == [[1]]


def test_abgrp_selftest_passes_seed(mocker, capsys):
    selftest = mocker.patch.object(orchestrator_module, "run_selftest", return_value=SelftestReport(seed=7))
    assert main(["abgrp", "selftest", "--seed", "7", "--json"]) == 0
    selftest.assert_called_once_with(seed=7)
    assert json.loads(capsys.readouterr().out)["abgrp"]["result"]["seed"] == 7


def test_failed_selftest_exits_with_inconsistency(mocker):
    failing = SelftestReport.model_validate(
        {"seed": 1, "checks": {"z_value": {"passed": 1, "total": 2, "failures": ["hom 0"]}}}
    )
    mocker.patch.object(orchestrator_module, "run_selftest", return_value=failing)
    assert main(["abgrp", "selftest", "--seed", "1"]) == 4


def test_verbose_prints_enumeration_summary(p2_file, capsys):
    assert main(["count", "--input", str(p2_file), "--verbose", "--json"]) == 0
    assert "total_points" in capsys.readouterr().err
