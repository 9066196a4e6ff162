"""
Tests for the variety module: point counts, the smoothness probe and the
dimension / Betti bookkeeping.
"""

from types import SimpleNamespace

import pytest

from finite_field import make_field
from utils.exceptions import InhomogeneousPolynomial, SizeExceeded
from variety import (
    HomogeneousPolynomial,
    Hypersurface,
    PlaneCurve,
    Product,
    ProjectiveSpace,
    betti_degrees,
    count_points,
    count_vector,
    dimension,
    smoothness_probe,
)

# y^2 z = x^3 + x z^2 with (x, y, z) = (x0, x1, x2)
ELLIPTIC = PlaneCurve(
    f=HomogeneousPolynomial.from_dict(3, {(0, 2, 1): 1, (3, 0, 0): -1, (1, 0, 2): -1})
)
FERMAT_CUBIC = PlaneCurve(f=HomogeneousPolynomial.from_dict(3, {(3, 0, 0): 1, (0, 3, 0): 1, (0, 0, 3): 1}))
QUADRIC = Hypersurface(n=3, f=HomogeneousPolynomial.from_dict(4, {(1, 1, 0, 0): 1, (0, 0, 1, 1): -1}))


def test_projective_plane_over_f2():
    assert count_points(ProjectiveSpace(n=2), make_field(2, 1), 1) == 7


def test_elliptic_curve_over_f5():
    f5 = make_field(5, 1)
    assert count_points(ELLIPTIC, f5, 1) == 4
    assert count_points(ELLIPTIC, f5, 2) == 32


def test_product_of_lines_over_f3():
    v = Product(left=ProjectiveSpace(n=1), right=ProjectiveSpace(n=1))
    assert count_points(v, make_field(3, 1), 1) == 16


@pytest.mark.parametrize("m", [1, 2, 3])
def test_product_count_is_multiplicative(m):
    f2 = make_field(2, 1)
    v = Product(left=ELLIPTIC, right=FERMAT_CUBIC)
    assert count_points(v, f2, m) == count_points(ELLIPTIC, f2, m) * count_points(FERMAT_CUBIC, f2, m)


@pytest.mark.parametrize("n,p,k,m", [(1, 2, 1, 3), (2, 3, 1, 2), (3, 2, 2, 1), (2, 5, 1, 1)])
def test_projective_enumeration_matches_closed_form(n, p, k, m):
    field = make_field(p, k)
    v = ProjectiveSpace(n=n)
    assert count_points(v, field, m, by_enumeration=True) == count_points(v, field, m)


def test_split_quadric_surface_count():
    # P^1 x P^1 via the Segre embedding: (q + 1)^2 points
    assert count_points(QUADRIC, make_field(2, 1), 1) == 9
    assert count_points(QUADRIC, make_field(3, 1), 1) == 16


def test_parallel_counting_agrees_with_serial():
    f4 = make_field(2, 2)
    serial = count_points(QUADRIC, f4, 1, workers=1)
    parallel = count_points(QUADRIC, f4, 1, workers=2)
    assert serial == parallel == 25


def test_count_vector():
    vector = count_vector(ProjectiveSpace(n=1), make_field(3, 1), 3)
    assert vector.counts == [4, 10, 28]
    assert vector.q == 3


def test_size_guard():
    with pytest.raises(SizeExceeded):
        count_points(QUADRIC, make_field(5, 1), 2, max_points=1000)


def test_from_dict_orders_terms_and_drops_zeros():
    f = HomogeneousPolynomial.from_dict(3, {(3, 0, 0): -1, (0, 2, 1): 1, (1, 1, 1): 0, (1, 0, 2): -1})
    assert f.terms == ((1, (0, 2, 1)), (-1, (1, 0, 2)), (-1, (3, 0, 0)))
    assert f.degree == 3
    assert f.as_dict() == {(0, 2, 1): 1, (1, 0, 2): -1, (3, 0, 0): -1}


def test_inhomogeneous_polynomial_rejected():
    with pytest.raises(InhomogeneousPolynomial):
        HomogeneousPolynomial.from_dict(3, {(2, 0, 0): 1, (0, 1, 0): 1})


def test_probe_fermat_cubic_smooth():
    verdict = smoothness_probe(FERMAT_CUBIC, make_field(5, 1), depth=2)
    assert verdict.is_smooth
    assert verdict.witness is None


def test_probe_double_line_singular():
    double_line = PlaneCurve(f=HomogeneousPolynomial.from_dict(3, {(2, 0, 0): 1}))
    verdict = smoothness_probe(double_line, make_field(3, 1), depth=1)
    assert verdict.verdict == "singular_point_found"
    assert verdict.extension_degree == 1
    assert verdict.witness[0] == [0]


def test_probe_quadric_smooth():
    assert smoothness_probe(QUADRIC, make_field(2, 1), depth=1).is_smooth


def test_dimensions():
    assert dimension(ProjectiveSpace(n=3)) == 3
    assert dimension(ELLIPTIC) == 1
    assert dimension(QUADRIC) == 2
    assert dimension(Product(left=ELLIPTIC, right=QUADRIC)) == 3


def test_betti_of_projective_plane():
    assert betti_degrees(ProjectiveSpace(n=2)) == [1, 0, 1, 0, 1]


def test_betti_of_plane_cubic():
    assert betti_degrees(FERMAT_CUBIC) == [1, 2, 1]


def test_betti_of_product_uses_kunneth_convolution():
    curve_diamond = SimpleNamespace(d=1, h=[[1, 1], [1, 1]])
    v = Product(left=ELLIPTIC, right=ELLIPTIC)
    assert betti_degrees(v, hodge_provider=lambda _: curve_diamond) == [1, 4, 6, 4, 1]
