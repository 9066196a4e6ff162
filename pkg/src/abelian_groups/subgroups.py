"""
Subgroups Module

Exhaustive subgroup computations inside a finite group N = Z/n_1 + ... + Z/n_k,
elements written as coordinate tuples. Everything here enumerates N, so
|N| is capped by ``max_summand_group_order``.
"""

import random
from itertools import product
from math import prod
from typing import Iterable, List, Optional, Sequence, Set, Tuple

from pydantic import BaseModel
from sympy import Matrix

from utils.config import get_config
from utils.exceptions import HypothesisFailed, InputError, SizeExceeded
from utils.logging import get_logger
from .groups import AbGroup
from .smith import smith_rows

logger = get_logger(__name__)

Element = Tuple[int, ...]


class FiniteGroup:
    """Coordinate arithmetic in Z/n_1 + ... + Z/n_k."""

    def __init__(self, orders: Sequence[int]):
        if any(n < 1 for n in orders):
            raise InputError("finite groups need positive cyclic orders", error_code="VALIDATION_ERROR")
        self.orders = tuple(int(n) for n in orders)
        self.zero: Element = tuple(0 for _ in self.orders)

    @classmethod
    def of(cls, N: AbGroup) -> "FiniteGroup":
        if not N.is_finite:
            raise InputError(f"{N} is not finite", error_code="VALIDATION_ERROR")
        return cls(N.invariant_factors)

    @property
    def order(self) -> int:
        return prod(self.orders)

    def element(self, coords: Sequence[int]) -> Element:
        if len(coords) != len(self.orders):
            raise InputError(f"expected {len(self.orders)} coordinates, got {len(coords)}", error_code="VALIDATION_ERROR")
        return tuple(int(x) % n for x, n in zip(coords, self.orders))

    def add(self, x: Element, y: Element) -> Element:
        return tuple((a + b) % n for a, b, n in zip(x, y, self.orders))

    def scale(self, c: int, x: Element) -> Element:
        return tuple((c * a) % n for a, n in zip(x, self.orders))

    def elements(self) -> Iterable[Element]:
        return product(*(range(n) for n in self.orders))

    def multiples(self, c: int) -> Set[Element]:
        return {self.scale(c, x) for x in self.elements()}

    def extend(self, H: Set[Element], x: Element) -> Set[Element]:
        """The subgroup generated by H and x."""
        out = set(H)
        step = x
        while step not in H:
            out.update(self.add(h, step) for h in H)
            step = self.add(step, x)
        return out

    def span(self, generators: Iterable[Element]) -> Set[Element]:
        H = {self.zero}
        for g in generators:
            if g not in H:
                H = self.extend(H, g)
        return H

    def meets(self, H: Set[Element], x: Element, avoid: Set[Element]) -> Optional[Element]:
        """A nonzero element of <H, x> in ``avoid`` outside H, if any."""
        step = x
        while step not in H:
            for h in H:
                y = self.add(h, step)
                if y in avoid:
                    return y
            step = self.add(step, x)
        return None


class ComplementResult(BaseModel):
    generators: List[List[int]]
    orders: List[int]
    verified: bool


def _guard(G: FiniteGroup, max_order: Optional[int]) -> None:
    bound = max_order or get_config().max_summand_group_order
    if G.order > bound:
        raise SizeExceeded(
            f"|N| = {G.order} exceeds the exhaustive bound {bound}",
            bound=bound,
            requested=G.order,
        )


def _avoiding(G: FiniteGroup, l: int, n: int) -> Set[Element]:
    nonzero = G.multiples(l ** n)
    nonzero.discard(G.zero)
    return nonzero


def _lift_of_order(G: FiniteGroup, M: Set[Element], g: Element, d: int) -> Optional[Element]:
    # a representative of g + M killed by d
    for m in M:
        candidate = G.add(g, m)
        if G.scale(d, candidate) == G.zero:
            return candidate
    return None


def summand_complement(
    N: AbGroup,
    generators: Sequence[Sequence[int]],
    l: int,
    n: int,
    max_order: Optional[int] = None,
) -> ComplementResult:
    """
    Complement of a subgroup maximal among those meeting l^n N trivially.

    Args:
        N: Finite group
        generators: Generators of M in N's cyclic coordinates
        l: Prime
        n: Exponent
        max_order: Override for the exhaustive size bound

    Returns:
        ComplementResult with M + C = N and M ∩ C = 0, checked by enumeration

    Raises:
        HypothesisFailed: if M meets l^n N or is not maximal, with a witness
    """
    G = FiniteGroup.of(N)
    _guard(G, max_order)
    gens = [G.element(g) for g in generators]
    M = G.span(gens)
    avoid = _avoiding(G, l, n)
    hit = next((x for x in M if x in avoid), None)
    if hit is not None:
        raise HypothesisFailed(f"M meets {l}^{n} N", witness=list(hit))

    covered = set(M)
    for x in G.elements():
        if x in covered:
            continue
        covered.update(G.add(x, m) for m in M)
        if G.meets(M, x, avoid) is None:
            raise HypothesisFailed(
                f"M is not maximal: adding {list(x)} still avoids {l}^{n} N",
                witness=list(x)
            )

    # N/M = Z^k / [diag(n_i) | M]; columns of U^-1 generate the quotient's cyclic summands
    k = len(G.orders)
    relations = [
        [G.orders[i] if i == j else 0 for j in range(k)] + [g[i] for g in gens]
        for i in range(k)
    ]
    D, U, _ = smith_rows(relations)
    U_inv = Matrix(U).inv()
    complement: List[Element] = []
    orders: List[int] = []
    for i in range(k):
        d = D[i][i]
        if d <= 1:
            continue
        g = G.element([int(U_inv[r, i]) for r in range(k)])
        lift = _lift_of_order(G, M, g, d)
        if lift is None:
            raise HypothesisFailed(
                f"no lift of order {d} for a quotient generator",
                witness=list(g)
            )
        complement.append(lift)
        orders.append(d)

    C = G.span(complement)
    total = {G.add(m, c) for m in M for c in C}
    verified = len(total) == G.order and len(M & C) == 1
    if not verified:
        raise HypothesisFailed("complement does not split N", witness=[list(c) for c in complement])
    logger.info("summand complement", order=G.order, m_order=len(M), c_orders=orders)
    return ComplementResult(generators=[list(c) for c in complement], orders=orders, verified=verified)


def maximal_avoiding_subgroup(
    N: AbGroup,
    l: int,
    n: int,
    order: Optional[Sequence[Sequence[int]]] = None,
    seed: Optional[int] = None,
    max_order: Optional[int] = None,
) -> List[List[int]]:
    """
    Generators of a subgroup M with M ∩ l^n N = 0 that is maximal for this.

    One greedy pass suffices: if y could still be added at the end, it could
    have been added when it was visited, since M only grew since then.
    """
    G = FiniteGroup.of(N)
    _guard(G, max_order)
    avoid = _avoiding(G, l, n)
    if order is None:
        visit = list(G.elements())
        if seed is not None:
            random.Random(seed).shuffle(visit)
    else:
        visit = [G.element(x) for x in order]
    M: Set[Element] = {G.zero}
    rejected: Set[Element] = set()
    generators: List[List[int]] = []
    for x in visit:
        if x in M or x in rejected:
            continue
        if G.meets(M, x, avoid) is None:
            M = G.extend(M, x)
            generators.append(list(x))
        else:
            # the whole coset stays rejected as M grows
            rejected.update(G.add(x, m) for m in M)
    return generators


def is_pure(N: AbGroup, generators: Sequence[Sequence[int]], max_order: Optional[int] = None) -> bool:
    """M ∩ kN = kM for every k dividing the exponent of N."""
    G = FiniteGroup.of(N)
    _guard(G, max_order)
    M = G.span(G.element(g) for g in generators)
    exponent = max(G.orders, default=1)
    for k in range(2, exponent + 1):
        if exponent % k:
            continue
        if M & G.multiples(k) != {G.scale(k, m) for m in M}:
            return False
    return True
