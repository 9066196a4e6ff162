"""
Tests for the finite field module.

Covers canonical construction, the field axioms on small fields, the cyclic
structure of the unit group and the Frobenius map.
"""

import itertools
import random

import pytest
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p

from finite_field import arith, enumerate_extension, make_field
from utils.exceptions import DivisionByZero, NotPrime, SizeExceeded

SMALL_FIELDS = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1), (2, 6), (3, 3)]


def test_prime_field_modulus_is_x():
    field = make_field(5, 1)
    assert field.q == 5
    assert field.modulus == (0, 1)


def test_f8_modulus_is_least_irreducible_cubic():
    field = make_field(2, 3)
    assert field.q == 8
    assert gf_irreducible_p(list(reversed(field.modulus)), 2, ZZ)
    smaller = [
        tuple(tail) + (1,)
        for tail in itertools.product(range(2), repeat=3)
        if tuple(tail) + (1,) < field.modulus
    ]
    for candidate in smaller:
        # brute force: a reducible cubic over F_2 has a root
        assert any(sum(c * x ** i for i, c in enumerate(candidate)) % 2 == 0 for x in range(2))


def test_composite_characteristic_rejected():
    with pytest.raises(NotPrime):
        make_field(4, 1)


def test_field_size_guard():
    with pytest.raises(SizeExceeded):
        make_field(2, 30, max_field_size=10**6)


def test_prime_field_inverse_and_fermat():
    f5 = make_field(5, 1)
    assert arith(f5.element(2), None, "inv") == f5.element(3)
    f7 = make_field(7, 1)
    assert arith(f7.element(3), 6, "pow") == f7.one


def test_f8_every_nonzero_element_inverts():
    field = make_field(2, 3)
    for a in field.elements():
        if a.is_zero():
            continue
        assert a * arith(a, None, "inv") == field.one


def test_inverse_of_zero():
    with pytest.raises(DivisionByZero):
        make_field(3, 2).zero.inverse()


@pytest.mark.parametrize("p,k", SMALL_FIELDS)
def test_multiplication_associative_and_commutative(p, k):
    field = make_field(p, k)
    rng = random.Random(p * 100 + k)
    elements = list(field.elements())
    for _ in range(50):
        a, b, c = (rng.choice(elements) for _ in range(3))
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


@pytest.mark.parametrize("p,k", SMALL_FIELDS)
def test_unit_group_is_cyclic(p, k):
    field = make_field(p, k)
    order = field.q - 1
    orders = []
    for a in field.elements():
        if a.is_zero():
            continue
        n = 1
        x = a
        while x != field.one:
            x = x * a
            n += 1
        orders.append(n)
    assert max(orders) == order
    assert all(order % n == 0 for n in orders)


@pytest.mark.parametrize("p,k", SMALL_FIELDS)
def test_frobenius_is_additive_and_fixes_prime_field(p, k):
    field = make_field(p, k)
    elements = list(field.elements())
    fixed = [a for a in elements if field.frobenius(a) == a]
    assert sorted(a.code for a in fixed) == list(range(p))
    for a, b in itertools.islice(itertools.product(elements, repeat=2), 400):
        assert field.frobenius(a + b) == field.frobenius(a) + field.frobenius(b)


def test_table_and_polynomial_arithmetic_agree():
    plain = make_field(3, 2)
    codes = range(plain.q)
    products = {(a, b): plain.mul_codes(a, b) for a in codes for b in codes}
    plain.build_tables()
    assert all(plain.mul_codes(a, b) == v for (a, b), v in products.items())


@pytest.mark.parametrize("p,k,m,size", [(2, 1, 3, 8), (5, 1, 2, 25), (3, 1, 1, 3)])
def test_enumerate_counts(p, k, m, size):
    elements = list(enumerate_extension(make_field(p, k), m))
    assert len(elements) == size
    assert len({e.coefficients for e in elements}) == size


def test_enumerate_prime_field_order():
    assert [e.code for e in enumerate_extension(make_field(3, 1), 1)] == [0, 1, 2]


def test_enumerate_size_guard():
    with pytest.raises(SizeExceeded):
        enumerate_extension(make_field(2, 1), 20, max_points=1000)
