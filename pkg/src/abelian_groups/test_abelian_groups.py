"""
Tests for the abelian-group algorithms: Smith normal form, z(f), the closed
group class, summand complements and idempotent lifting.
"""

import random
from fractions import Fraction

import pytest
from sympy import Matrix

from abelian_groups import (
    AbGroup,
    GroupHom,
    MatrixRingElement,
    conjugating_unit,
    cyclic_decomposition,
    is_pure,
    l_adic_completion,
    lift_idempotent,
    lift_orthogonal_idempotents,
    lift_unit,
    maximal_avoiding_subgroup,
    pairing_embedding,
    quotient_mod_n,
    run_selftest,
    smith_normal_form,
    summand_complement,
    torsion_T,
    ulm_and_divisible,
    z_value,
)
from abelian_groups.selftest import (
    brute_force_z_value,
    random_finite_group,
    random_hom,
    random_member,
    random_near_idempotent,
    random_unit,
)
from abelian_groups.subgroups import FiniteGroup
from utils.exceptions import (
    HypothesisFailed,
    InvalidHomomorphism,
    NotFinite,
    NotIdempotentModP,
    NotOrthogonalModP,
    NotUnitModP,
    SizeExceeded,
)


def _ring(rows, modulus):
    return MatrixRingElement.of(rows, modulus)


# --- Smith normal form ------------------------------------------------------

def test_smith_normal_form_example():
    M = [[2, 4], [6, 8]]
    D, U, V = smith_normal_form(M)
    assert D == Matrix([[2, 0], [0, 4]])
    assert U * Matrix(M) * V == D


@pytest.mark.parametrize("M", [[[1, 0], [0, 1]], [[0]]])
def test_smith_normal_form_fixed_points(M):
    D, _, _ = smith_normal_form(M)
    assert D == Matrix(M)


def test_smith_normal_form_random():
    rng = random.Random(7)
    for _ in range(100):
        rows, cols = rng.randint(1, 4), rng.randint(1, 4)
        M = [[rng.randint(-20, 20) for _ in range(cols)] for _ in range(rows)]
        D, U, V = smith_normal_form(M)
        assert U * Matrix(M) * V == D
        assert abs(U.det()) == 1 and abs(V.det()) == 1
        diag = [D[i, i] for i in range(min(rows, cols))]
        assert all(d >= 0 for d in diag)
        assert all(b % a == 0 for a, b in zip(diag, diag[1:]) if a)
        off = [D[i, j] for i in range(rows) for j in range(cols) if i != j]
        assert not any(off)


def test_smith_normal_form_ignores_permutations():
    M = [[4, 6, 2], [8, 3, 5], [1, 7, 9]]
    shuffled = [M[2], M[0], M[1]]
    assert smith_normal_form(M)[0] == smith_normal_form(shuffled)[0]
    D = smith_normal_form(M)[0]
    assert D[0, 0] * D[1, 1] * D[2, 2] == abs(Matrix(M).det())


# --- z(f) ------------------------------------------------------------------

def test_z_value_surjection():
    f = GroupHom(source_orders=[4], target_orders=[2], matrix=[[1]])
    assert z_value(f) == Fraction(2)


def test_z_value_multiplication_by_three():
    f = GroupHom(source_orders=[0], target_orders=[0], matrix=[[3]])
    assert z_value(f) == Fraction(1, 3)


def test_z_value_identity():
    assert z_value(GroupHom(source_orders=[0], target_orders=[0], matrix=[[1]])) == 1


def test_z_value_infinite_parts():
    with pytest.raises(NotFinite):
        z_value(GroupHom(source_orders=[0], target_orders=[0], matrix=[[0]]))
    with pytest.raises(NotFinite):
        z_value(GroupHom(source_orders=[0, 0], target_orders=[0], matrix=[[1, 1]]))


def test_z_value_between_groups():
    source = AbGroup(free_rank=1, invariant_factors=(6,))
    target = AbGroup(free_rank=1, invariant_factors=(2,))
    # (x, y) -> (2x, y mod 2): kernel Z/3, cokernel Z/2
    f = GroupHom.between(source, target, [[2, 0], [0, 1]])
    assert z_value(f) == Fraction(3, 2)


def test_hom_must_be_well_defined():
    with pytest.raises(InvalidHomomorphism):
        GroupHom(source_orders=[2], target_orders=[3], matrix=[[1]])
    with pytest.raises(InvalidHomomorphism):
        GroupHom(source_orders=[2], target_orders=[0], matrix=[[1]])


def test_hom_entries_are_reduced():
    f = GroupHom(source_orders=[4], target_orders=[2], matrix=[[5]])
    assert f.matrix == [[1]]


def test_z_value_matches_brute_force():
    rng = random.Random(2024)
    for _ in range(500):
        f = random_hom(rng)
        assert z_value(f) == brute_force_z_value(f), (f.source_orders, f.target_orders, f.matrix)


# --- the group class --------------------------------------------------------

def test_from_orders_normalizes():
    G = AbGroup.from_orders([0, 2, 3, 4])
    assert G.free_rank == 1
    assert G.invariant_factors == (2, 12)


def test_divisibility_chain_enforced():
    with pytest.raises(ValueError):
        AbGroup(invariant_factors=(4, 6))


def test_quotient_mod_n():
    G = AbGroup(free_rank=1, invariant_factors=(6,))
    assert quotient_mod_n(G, 4) == AbGroup(invariant_factors=(2, 4))
    assert quotient_mod_n(AbGroup(rational_rank=3), 5) == AbGroup()


def test_tate_module():
    assert torsion_T(AbGroup(cofinite_ranks={2: 1})).ranks == {2: 1}
    assert torsion_T(AbGroup(free_rank=2, invariant_factors=(4,))).is_zero


def test_ulm_of_finitely_generated_group_vanishes():
    report = ulm_and_divisible(AbGroup(free_rank=1, invariant_factors=(4,)))
    assert report.ulm == AbGroup()
    assert report.proposition_holds


def test_ulm_uniquely_divisible_case():
    report = ulm_and_divisible(AbGroup(rational_rank=1, invariant_factors=(2,)))
    assert report.ulm == AbGroup(rational_rank=1)
    assert report.torsion_free_tate and report.uniquely_divisible


def test_ulm_with_divisible_torsion():
    report = ulm_and_divisible(AbGroup(cofinite_ranks={3: 1}))
    assert report.ulm == AbGroup(cofinite_ranks={3: 1})
    assert report.ulm_is_divisible_part
    assert not report.torsion_free_tate
    assert not report.uniquely_divisible


@pytest.mark.parametrize(
    "G,l,free,finite",
    [
        (AbGroup(free_rank=2), 3, 2, ()),
        (AbGroup(invariant_factors=(12,)), 2, 0, (4,)),
        (AbGroup(rational_rank=1), 5, 0, ()),
    ],
)
def test_l_adic_completion(G, l, free, finite):
    completion = l_adic_completion(G, l)
    assert completion.free_rank == free
    assert completion.finite_part == finite


def test_group_identities_on_random_members():
    rng = random.Random(11)
    for _ in range(500):
        G = random_member(rng)
        report = ulm_and_divisible(G)
        assert report.quotients_finite
        assert report.proposition_holds
        free = AbGroup(free_rank=G.free_rank)
        for l in (2, 3, 5):
            assert l_adic_completion(free, l).free_rank == len(quotient_mod_n(free, l).invariant_factors)


@pytest.mark.parametrize(
    "relations,expected",
    [([[2, 0], [0, 6]], [2, 6]), ([[2, 1], [0, 3]], [6]), ([[1]], [])],
)
def test_cyclic_decomposition(relations, expected):
    assert cyclic_decomposition(relations) == expected


def test_cyclic_decomposition_detects_free_summand():
    with pytest.raises(NotFinite):
        cyclic_decomposition([[2, 0], [0, 0]])


def test_pairing_embedding():
    assert pairing_embedding([[1, 0], [0, 2]], 2).injective
    degenerate = pairing_embedding([[1, 2], [2, 4]], 3)
    assert not degenerate.injective
    w = degenerate.witness
    assert any(w)
    assert all(sum(w[i] * [[1, 2], [2, 4]][i][j] for i in range(2)) == 0 for j in range(2))


# --- summands ---------------------------------------------------------------

def test_summand_complement_example():
    # Z/4 + Z/2 written in invariant-factor order Z/2 + Z/4; M = <(2, 1)> becomes <(1, 2)>
    N = AbGroup(invariant_factors=(2, 4))
    result = summand_complement(N, [[1, 2]], 2, 1)
    assert result.verified
    assert result.orders == [4]
    G = FiniteGroup.of(N)
    M = G.span([(1, 2)])
    C = G.span(tuple(g) for g in result.generators)
    assert len(M & C) == 1 and len(M) * len(C) == G.order


def test_summand_complement_not_maximal():
    with pytest.raises(HypothesisFailed) as info:
        summand_complement(AbGroup(invariant_factors=(2,)), [], 2, 1)
    assert info.value.witness == [1]


def test_summand_complement_meets_multiples():
    with pytest.raises(HypothesisFailed) as info:
        summand_complement(AbGroup(invariant_factors=(4,)), [[2]], 2, 1)
    assert info.value.witness == [2]


def test_summand_complement_size_guard():
    with pytest.raises(SizeExceeded):
        summand_complement(AbGroup(invariant_factors=(64, 128)), [], 2, 1)


def test_summand_complement_on_random_instances():
    rng = random.Random(99)
    for _ in range(100):
        l, n = rng.choice([2, 3]), rng.randint(1, 2)
        N = random_finite_group(rng, l)
        M = maximal_avoiding_subgroup(N, l, n, seed=rng.randrange(1000))
        result = summand_complement(N, M, l, n)
        assert result.verified
        # a maximal subgroup avoiding l^n N is a direct summand, hence pure
        assert is_pure(N, M)


def test_maximal_avoiding_subgroup_is_maximal():
    N = AbGroup(invariant_factors=(2, 8))
    M = maximal_avoiding_subgroup(N, 2, 2, seed=3)
    G = FiniteGroup.of(N)
    span = G.span(tuple(g) for g in M)
    avoid = G.multiples(4) - {G.zero}
    assert not span & avoid
    for x in G.elements():
        if x not in span:
            assert G.meets(span, x, avoid) is not None


def test_is_pure():
    assert not is_pure(AbGroup(invariant_factors=(4,)), [[2]])
    assert is_pure(AbGroup(invariant_factors=(4,)), [[1]])
    assert is_pure(AbGroup(invariant_factors=(2, 4)), [[1, 0]])


# --- lifting ----------------------------------------------------------------

def test_lift_idempotent_examples():
    assert lift_idempotent(_ring([[3]], 9)) == _ring([[0]], 9)
    assert lift_idempotent(_ring([[1]], 27)) == _ring([[1]], 27)


def test_lift_idempotent_rejects_non_idempotent():
    with pytest.raises(NotIdempotentModP):
        lift_idempotent(_ring([[2]], 9))


def test_lift_idempotent_random():
    rng = random.Random(5)
    for _ in range(200):
        a = random_near_idempotent(rng)
        lifted = lift_idempotent(a)
        assert lifted.is_idempotent()
        assert lifted.reduce(a.prime) == a.reduce(a.prime)


@pytest.mark.parametrize("a,modulus,inverse", [(4, 9, 7), (1 + 3, 27, 1 - 3 + 9), (1 + 5, 125, 1 - 5 + 25)])
def test_lift_unit_examples(a, modulus, inverse):
    assert lift_unit(_ring([[a]], modulus)) == _ring([[inverse]], modulus)


def test_lift_unit_rejects_non_unit():
    with pytest.raises(NotUnitModP):
        lift_unit(_ring([[3]], 9))


def test_lift_unit_random():
    rng = random.Random(6)
    for _ in range(200):
        a = random_unit(rng)
        inverse = lift_unit(a)
        assert a * inverse == a.one()
        assert inverse * a == a.one()


def test_conjugating_unit():
    e = lift_idempotent(_ring([[1, 0], [0, 0]], 27))
    u = _ring([[1, 3], [6, 4]], 27)
    e_prime = u * e * lift_unit(u)
    result = conjugating_unit(e, e_prime)
    assert result.unit * e * result.inverse == e_prime
    assert result.unit.reduce(3) == e.one().reduce(3)


def test_conjugating_unit_needs_agreement_mod_p():
    e = _ring([[1, 0], [0, 0]], 9)
    f = _ring([[0, 0], [0, 1]], 9)
    with pytest.raises(HypothesisFailed):
        conjugating_unit(e, f)


def test_lift_orthogonal_idempotents():
    es = [_ring([[1, 3], [6, 3]], 9), _ring([[3, 0], [3, 1]], 9)]
    lifts = lift_orthogonal_idempotents(es)
    for x, lifted in zip(es, lifts):
        assert lifted.is_idempotent()
        assert lifted.reduce(3) == x.reduce(3)
    assert (lifts[0] * lifts[1]).is_zero() and (lifts[1] * lifts[0]).is_zero()


def test_lift_orthogonal_idempotents_rejects_overlap():
    e = _ring([[1, 0], [0, 0]], 9)
    with pytest.raises(NotOrthogonalModP):
        lift_orthogonal_idempotents([e, e])


# --- corpus -----------------------------------------------------------------

def test_selftest_is_deterministic_and_passes():
    first = run_selftest(seed=1, homs=20, complements=5, lifts=10, members=20)
    second = run_selftest(seed=1, homs=20, complements=5, lifts=10, members=20)
    assert first.passed
    assert first.model_dump() == second.model_dump()
