"""
Randomized property corpus for the abelian-group algorithms.

Instance generators and brute-force oracles are shared by the test suite and
by ``abgrp selftest``; every run is reproducible from its seed.
"""

import random
from fractions import Fraction
from itertools import product
from math import gcd, prod
from typing import Dict, List

from pydantic import BaseModel, Field
from sympy import Matrix

from utils.exceptions import HypothesisFailed
from utils.logging import get_logger
from .groups import AbGroup, GroupHom, l_adic_completion, quotient_mod_n, ulm_and_divisible, z_value
from .lifting import MatrixRingElement, lift_idempotent, lift_unit
from .subgroups import FiniteGroup, maximal_avoiding_subgroup, summand_complement

logger = get_logger(__name__)

PRIME_POWERS = [(p, s) for p in (2, 3, 5, 7) for s in range(1, 7) if p ** s <= 81]


class CheckTally(BaseModel):
    passed: int = 0
    total: int = 0
    failures: List[str] = Field(default_factory=list)

    def record(self, ok: bool, label: str) -> None:
        self.total += 1
        if ok:
            self.passed += 1
        elif len(self.failures) < 5:
            self.failures.append(label)


class SelftestReport(BaseModel):
    seed: int
    checks: Dict[str, CheckTally] = Field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(t.passed == t.total for t in self.checks.values())


# --- instance generators ---------------------------------------------------

def random_cyclic_orders(rng: random.Random, max_order: int, max_factors: int = 3) -> List[int]:
    orders: List[int] = []
    for _ in range(rng.randint(0, max_factors)):
        n = rng.randint(2, 24)
        if prod(orders) * n > max_order:
            break
        orders.append(n)
    return orders


def random_hom(rng: random.Random, max_order: int = 10 ** 4) -> GroupHom:
    """A homomorphism between random finite groups; column entries respect the source orders."""
    source = random_cyclic_orders(rng, max_order)
    target = random_cyclic_orders(rng, max_order)
    matrix = []
    for m in target:
        row = []
        for n in source:
            step = m // gcd(m, n)
            row.append(step * rng.randrange(m // step))
        matrix.append(row)
    return GroupHom(source_orders=source, target_orders=target, matrix=matrix)


def random_finite_group(rng: random.Random, l: int, max_order: int = 2 ** 12) -> AbGroup:
    orders = [l ** rng.randint(1, 3) for _ in range(rng.randint(1, 3))]
    orders += [rng.choice([3, 5, 6, 7, 9]) for _ in range(rng.randint(0, 1))]
    while prod(orders) > max_order:
        orders.pop()
    return AbGroup.from_orders(orders)


def random_member(rng: random.Random) -> AbGroup:
    return AbGroup.from_orders(
        [0] * rng.randint(0, 3) + random_cyclic_orders(rng, 10 ** 4),
        rational_rank=rng.randint(0, 2),
        cofinite_ranks={l: rng.randint(0, 2) for l in rng.sample([2, 3, 5, 7], rng.randint(0, 2))},
    )


def _random_invertible(rng: random.Random, size: int, p: int) -> Matrix:
    while True:
        P = Matrix(size, size, lambda i, j: rng.randrange(p))
        if P.det() % p:
            return P


def random_near_idempotent(rng: random.Random) -> MatrixRingElement:
    """An element whose reduction mod p is idempotent, perturbed by p * (random)."""
    p, s = rng.choice(PRIME_POWERS)
    size = rng.randint(1, 3)
    P = _random_invertible(rng, size, p)
    D = Matrix.diag(*[rng.randint(0, 1) for _ in range(size)])
    base = (P * D * P.inv_mod(p)).applyfunc(lambda x: x % p)
    noise = Matrix(size, size, lambda i, j: p * rng.randrange(p ** (s - 1)))
    return MatrixRingElement.from_matrix(base + noise, p ** s)


def random_unit(rng: random.Random) -> MatrixRingElement:
    p, s = rng.choice(PRIME_POWERS)
    size = rng.randint(1, 3)
    base = _random_invertible(rng, size, p)
    noise = Matrix(size, size, lambda i, j: p * rng.randrange(p ** (s - 1)))
    return MatrixRingElement.from_matrix(base + noise, p ** s)


# --- oracles ---------------------------------------------------------------

def brute_force_z_value(f: GroupHom) -> Fraction:
    """[Ker f]/[Coker f] by enumerating the source; finite groups only."""
    kernel, image = 0, set()
    for x in product(*(range(n) for n in f.source_orders)):
        y = tuple(
            sum(a * b for a, b in zip(row, x)) % m
            for row, m in zip(f.matrix, f.target_orders)
        )
        image.add(y)
        kernel += not any(y)
    return Fraction(kernel * len(image), prod(f.target_orders))


def _splits(N: AbGroup, m_generators, c_generators) -> bool:
    G = FiniteGroup.of(N)
    M = G.span(tuple(g) for g in m_generators)
    C = G.span(tuple(g) for g in c_generators)
    return len(M & C) == 1 and len({G.add(a, b) for a in M for b in C}) == G.order


# --- corpus ----------------------------------------------------------------

def run_selftest(
    seed: int = 0,
    homs: int = 500,
    complements: int = 100,
    lifts: int = 200,
    members: int = 500,
) -> SelftestReport:
    """Run every property family and tally the outcomes."""
    rng = random.Random(seed)
    report = SelftestReport(seed=seed)

    tally = report.checks.setdefault("z_value", CheckTally())
    for i in range(homs):
        f = random_hom(rng)
        tally.record(z_value(f) == brute_force_z_value(f), f"hom {i}: {f.source_orders} -> {f.target_orders}")

    tally = report.checks.setdefault("summand_complement", CheckTally())
    for i in range(complements):
        l, n = rng.choice([2, 3]), rng.randint(1, 2)
        N = random_finite_group(rng, l)
        M = maximal_avoiding_subgroup(N, l, n, seed=rng.randrange(2 ** 32))
        result = summand_complement(N, M, l, n)
        tally.record(result.verified and _splits(N, M, result.generators), f"instance {i}: {N}, l={l}, n={n}")

    tally = report.checks.setdefault("invalid_summand", CheckTally())
    for i in range(complements):
        l = rng.choice([2, 3])
        N = random_finite_group(rng, l)
        G = FiniteGroup.of(N)
        hit = next((x for x in G.multiples(l) if any(x)), None)
        # with lN = 0 the zero subgroup avoids it without being maximal
        generators = [list(hit)] if hit else []
        try:
            summand_complement(N, generators, l, 1)
            tally.record(False, f"instance {i}: {N} accepted an invalid subgroup")
        except HypothesisFailed as e:
            tally.record(e.witness is not None, f"instance {i}: failure without witness")

    tally = report.checks.setdefault("lift_idempotent", CheckTally())
    for i in range(lifts):
        a = random_near_idempotent(rng)
        lifted = lift_idempotent(a)
        p = a.prime
        tally.record(lifted.is_idempotent() and lifted.reduce(p) == a.reduce(p), f"lift {i} mod {a.modulus}")

    tally = report.checks.setdefault("lift_unit", CheckTally())
    for i in range(lifts):
        a = random_unit(rng)
        inverse = lift_unit(a)
        tally.record((a * inverse) == a.one() and (inverse * a) == a.one(), f"unit {i} mod {a.modulus}")

    tally = report.checks.setdefault("group_identities", CheckTally())
    for i in range(members):
        G = random_member(rng)
        ulm = ulm_and_divisible(G)
        free = AbGroup(free_rank=G.free_rank)
        l = rng.choice([2, 3, 5])
        completion_ok = l_adic_completion(free, l).free_rank == len(quotient_mod_n(free, l).invariant_factors)
        tally.record(ulm.quotients_finite and ulm.proposition_holds and completion_ok, f"member {i}: {G}")

    logger.info(
        "abelian group selftest",
        seed=seed,
        **{name: f"{t.passed}/{t.total}" for name, t in report.checks.items()},
    )
    return report
