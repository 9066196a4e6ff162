"""
Tests for pole orders, leading coefficients and the predicted chi'.
"""

from fractions import Fraction

import pytest

from hodge import hodge_of
from special_value import (
    HypothesisFlags,
    bracket_leading,
    check_leading,
    laurent_expansion,
    leading_coefficient,
    pole_order,
    predict_chi_prime,
    tate_verdict,
)
from utils.exceptions import CrosscheckMismatch, InputError
from variety import HomogeneousPolynomial, PlaneCurve, ProjectiveSpace
from zeta import ZetaFunction, int_poly, kunneth_product

P2_F2 = ZetaFunction(d=2, p=2, k=1, factors=[[1, -1], [1], [1, -2], [1], [1, -4]])
P1_F3 = ZetaFunction(d=1, p=3, k=1, factors=[[1, -1], [1], [1, -3]])
E_F5 = ZetaFunction(d=1, p=5, k=1, factors=[[1, -1], [1, -2, 5], [1, -5]])
CURVE = PlaneCurve(f=HomogeneousPolynomial.from_dict(3, {(0, 2, 1): 1, (3, 0, 0): -1, (1, 0, 2): -1}))


@pytest.mark.parametrize("z,r,rho", [(P2_F2, 1, 1), (E_F5, 0, 1), (E_F5, 1, 1), (P2_F2, 3, 0)])
def test_pole_order(z, r, rho):
    assert pole_order(z, r) == rho


@pytest.mark.parametrize(
    "z,r,value",
    [
        (P2_F2, 1, Fraction(-2)),
        (E_F5, 1, Fraction(1)),
        (P1_F3, 0, Fraction(-1, 2)),
        (E_F5, 0, Fraction(-1)),
    ],
)
def test_leading_coefficient(z, r, value):
    assert leading_coefficient(z, r) == value


def test_leading_at_zero_contains_point_count():
    # lim (1 - t) Z(t) = P_1(1) / (1 - 5) and |P_1(1)| = N_1 = 4
    assert abs(leading_coefficient(E_F5, 0)) * 4 == 4


def test_projective_plane_prediction():
    report = predict_chi_prime(P2_F2, hodge_of(ProjectiveSpace(n=2)), 1)
    assert report.rho == 1
    assert report.leading.to_fraction() == -2
    assert report.leading_sign == -1
    assert report.chi_O == 1
    assert report.predicted_chi_prime.to_fraction() == 1


def test_elliptic_curve_prediction():
    hd = hodge_of(CURVE)
    for r in (0, 1):
        report = predict_chi_prime(E_F5, hd, r)
        assert report.chi_O == 0
        assert report.predicted_chi_prime.to_fraction() == 1


@pytest.mark.parametrize("z", [P2_F2, P1_F3, E_F5, kunneth_product(E_F5, E_F5)])
def test_prediction_identity(z):
    for r in range(z.d + 1):
        report = predict_chi_prime(z, hodge_of(ProjectiveSpace(n=z.d)), r)
        lhs = abs(report.leading.to_fraction())
        assert lhs == report.predicted_chi_prime.to_fraction() * Fraction(z.q) ** report.chi_O


@pytest.mark.parametrize("z,r", [(P2_F2, 1), (E_F5, 1), (P1_F3, 0), (kunneth_product(E_F5, E_F5), 1)])
def test_interval_bracket_contains_exact_value(z, r):
    lo, hi = bracket_leading(z, r)
    assert lo <= leading_coefficient(z, r) <= hi


def test_r_zero_prediction_equals_absolute_leading():
    report = predict_chi_prime(P1_F3, hodge_of(ProjectiveSpace(n=1)), 0)
    assert report.predicted_chi_prime.to_fraction() == Fraction(1, 2)


def test_negative_r_rejected():
    with pytest.raises(InputError):
        predict_chi_prime(P2_F2, hodge_of(ProjectiveSpace(n=2)), -1)


def test_tate_verdicts():
    assert tate_verdict(P2_F2, 1, 1).kind == "consistent"
    mismatch = tate_verdict(P2_F2, 1, 2)
    assert mismatch.kind == "pole_mismatch" and mismatch.rho == 1 and mismatch.claimed == 2
    assert tate_verdict(E_F5, 1).kind == "no_claim"


def test_self_product_of_elliptic_curve_pole():
    square = kunneth_product(E_F5, E_F5)
    # P_2 carries (1 - 5t)^4: two from the ruling classes, two from End(E)
    assert pole_order(square, 1) == 4
    assert tate_verdict(square, 1, 3).kind == "pole_mismatch"


def test_hypothesis_flags():
    assert HypothesisFlags().verified
    assert not HypothesisFlags(smoothness_probe="singular_point_found").verified


def test_bracket_keeps_the_sign_of_a_negative_leading_coefficient():
    lo, hi = bracket_leading(P2_F2, 1)
    assert lo <= Fraction(-2) <= hi
    assert hi < 0
    assert check_leading(P2_F2, 1) == (lo, hi)


def test_laurent_expansion_coefficients():
    # (1 - t) Z(P^1/F_3, t) = 1 / (1 - 3t) = -1/2 * sum (-3/2)^n s^n with s = t - 1
    series = laurent_expansion(P1_F3, 0, 1)
    assert len(series) == 64
    for n, expected in enumerate([-0.5, 0.75, -1.125]):
        assert expected in series[n]


def test_understated_pole_order_is_detected():
    with pytest.raises(CrosscheckMismatch):
        bracket_leading(P2_F2, 1, rho=0)


def test_corrupted_cofactor_is_caught(mocker):
    strip = int_poly.strip_inverse_root

    def doubled(poly, a):
        multiplicity, rest = strip(poly, a)
        return multiplicity, [2 * c for c in rest]

    mocker.patch.object(int_poly, "strip_inverse_root", side_effect=doubled)
    assert leading_coefficient(P2_F2, 1) == Fraction(-1)
    with pytest.raises(CrosscheckMismatch):
        check_leading(P2_F2, 1)


def test_corrupted_multiplicity_is_caught(mocker):
    strip = int_poly.strip_inverse_root

    def overcounted(poly, a):
        multiplicity, rest = strip(poly, a)
        return multiplicity + 1, rest

    mocker.patch.object(int_poly, "strip_inverse_root", side_effect=overcounted)
    assert pole_order(P2_F2, 1) == 3
    with pytest.raises(CrosscheckMismatch):
        check_leading(P2_F2, 1)
