"""
Integer polynomials in t, stored low-degree-first.

Small exact helpers shared by the zeta, special value and Frobenius modules:
evaluation at rationals, stripping factors (1 - a t), power sums of inverse
roots via Newton's identities, and the tensor product of two characteristic
polynomials.
"""

from fractions import Fraction
from typing import List, Sequence, Tuple

from utils.exceptions import NoRationalFit

IntPoly = List[int]


def trim(poly: Sequence[int]) -> IntPoly:
    out = list(poly)
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out or [0]


def degree(poly: Sequence[int]) -> int:
    return len(trim(poly)) - 1


def mul(a: Sequence[int], b: Sequence[int]) -> IntPoly:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def power(a: Sequence[int], n: int) -> IntPoly:
    out: IntPoly = [1]
    for _ in range(n):
        out = mul(out, a)
    return out


def evaluate(poly: Sequence[int], x: Fraction) -> Fraction:
    """Horner evaluation at an exact rational."""
    acc = Fraction(0)
    for c in reversed(list(poly)):
        acc = acc * x + c
    return acc


def divide_linear(poly: Sequence[int], a: int) -> Tuple[IntPoly, int]:
    """
    Divide by (1 - a t), eliminating from the constant term upwards.

    Returns:
        (quotient, remainder) with poly = quotient * (1 - a t) + remainder * t^n,
        n = deg poly; the factor divides exactly when the remainder is zero
    """
    c = trim(poly)
    if len(c) == 1:
        return [0], c[0]
    quotient = [c[0]]
    for coefficient in c[1:-1]:
        quotient.append(coefficient + a * quotient[-1])
    remainder = c[-1] + a * quotient[-1]
    return trim(quotient), remainder


def strip_inverse_root(poly: Sequence[int], a: int) -> Tuple[int, IntPoly]:
    """Multiplicity of a as an inverse root (i.e. of the factor 1 - a t) and the cofactor."""
    current = trim(poly)
    multiplicity = 0
    while degree(current) > 0:
        quotient, remainder = divide_linear(current, a)
        if remainder != 0:
            break
        current = quotient
        multiplicity += 1
    return multiplicity, current


def power_sums(poly: Sequence[int], count: int) -> List[int]:
    """
    s_1..s_count, the power sums of the inverse roots of a polynomial with
    constant term 1, by Newton's identities on its integer coefficients.
    """
    c = trim(poly)
    s: List[int] = []
    for m in range(1, count + 1):
        cm = c[m] if m < len(c) else 0
        total = m * cm
        for j in range(1, m):
            if j < len(c):
                total += c[j] * s[m - j - 1]
        s.append(-total)
    return s


def from_power_sums(sums: Sequence[int], deg: int) -> IntPoly:
    """Inverse of :func:`power_sums`: the degree ``deg`` polynomial with constant term 1."""
    c: List[Fraction] = [Fraction(1)]
    for m in range(1, deg + 1):
        total = Fraction(sums[m - 1])
        for j in range(1, m):
            total += c[j] * sums[m - j - 1]
        c.append(-total / m)
    if any(x.denominator != 1 for x in c):
        raise NoRationalFit("power sums do not come from an integer polynomial")
    return [int(x) for x in c]


def tensor(a: Sequence[int], b: Sequence[int]) -> IntPoly:
    """The polynomial whose inverse roots are the products alpha*beta."""
    da, db = degree(a), degree(b)
    deg = da * db
    if deg == 0:
        return [1]
    sa, sb = power_sums(a, deg), power_sums(b, deg)
    return from_power_sums([x * y for x, y in zip(sa, sb)], deg)
