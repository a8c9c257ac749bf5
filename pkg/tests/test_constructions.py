import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from chorefair import INF, Allocation, ParameterError, validate
from chorefair.algorithms import ratio_matrix
from chorefair.constructions import (
    has_equal_partition,
    partition_reduction,
    random_additive,
    random_ido,
    random_instance,
    random_monotone_table,
    random_top_structured,
    ranking_gap_instance,
    six_chore_instance,
    three_partition_reduction,
)
from chorefair.fairness import is_envy_free, worst_ratio
from chorefair.model import is_superadditive, mask_of, ranking, superadditivity_violations
from chorefair.solver import find_efx


def test_six_chore_parameters():
    with pytest.raises(ParameterError):
        six_chore_instance(2)
    inst = six_chore_instance(10)
    assert (inst.n, inst.m) == (3, 6)
    assert [inst.chore_cost(0, e) for e in range(6)] == [10, 1, 1, 0, 0, 0]


def test_six_chore_is_not_superadditive():
    # {a_hat} and {b2, b3} cost k and k^2 apart but only k^2 together
    inst = six_chore_instance(10)
    s, t = mask_of([0]), mask_of([4, 5])
    assert inst.cost(0, s | t) < inst.cost(0, s) + inst.cost(0, t)
    assert not is_superadditive(inst, 0)
    assert validate(inst)
    assert all(v.kind == "superadditivity" for v in validate(inst))


def test_partition_reduction_costs():
    inst = partition_reduction([1, 2, 2, 1, 1, 2])
    assert (inst.n, inst.m) == (3, 9)
    for i in range(3):
        b_i = 6 + i
        assert inst.cost(i, mask_of([b_i, 0])) == INF
        assert inst.cost(i, mask_of([b_i])) == 0
        assert inst.cost(i, mask_of([0, 1, 2])) == 5
    finite = partition_reduction([1, 2, 2, 1, 1, 2], big="auto")
    assert finite.cost(0, mask_of([6, 0])) == 1 + 3 * 9


@pytest.mark.parametrize("values", [[1, 1, 1, 1], [0, 1, 2], [1, 1, 4], [], [1.5, 1.5, 3]])
def test_partition_reduction_rejects(values):
    with pytest.raises(ParameterError):
        partition_reduction(values)


def test_triplet_reduction_shape_and_checks():
    inst = three_partition_reduction([3] * 6, 2)
    assert (inst.n, inst.m) == (2, 8)
    assert [inst.chore_cost(0, e) for e in range(6, 8)] == [0, 0]
    with pytest.raises(ParameterError):
        three_partition_reduction([3] * 5, 2)
    with pytest.raises(ParameterError):
        three_partition_reduction([1, 1, 1, 1, 1, 13], 2)


def test_triplet_reduction_pair_of_b_chores_with_own():
    # a bundle with b_i and one foreign b is not a trigger for agent i
    inst = three_partition_reduction([5, 5, 5, 5, 5, 5, 5, 5, 5], 3)
    b = [9, 10, 11]
    assert inst.cost(0, mask_of([b[0], b[1]])) == 0
    assert inst.cost(0, mask_of([b[1], b[2]])) == INF


def test_partition_oracle():
    assert has_equal_partition([1, 1, 1, 1, 1, 1])
    assert not has_equal_partition([2, 2, 3, 3, 3, 5])
    assert not has_equal_partition([5, 5, 5, 7, 8, 8], 2, triplets=True)
    assert has_equal_partition([3] * 6, 2, triplets=True)
    # two equal halves exist, but not as triplets
    assert has_equal_partition([1, 1, 1, 3, 3, 3], 2)
    assert not has_equal_partition([1, 1, 1, 3, 3, 3], 2, triplets=True)


def test_partition_oracle_against_subset_sums():
    for values in itertools.product(range(1, 5), repeat=5):
        total = sum(values)
        expected = False
        if total % 3 == 0:
            s = total // 3
            idx = range(5)
            for first in itertools.product([0, 1], repeat=5):
                a = [values[i] for i in idx if first[i]]
                if sum(a) != s:
                    continue
                rest = [values[i] for i in idx if not first[i]]
                for pick in itertools.product([0, 1], repeat=len(rest)):
                    if sum(v for v, p in zip(rest, pick) if p) == s:
                        expected = True
        assert has_equal_partition(values) == expected, values


def test_ranking_gap_instance():
    n, k, m = 3, 7, 9
    inst, partial = ranking_gap_instance(n, k, m, big=1000, eps="1/10")
    assert partial.allocated == mask_of(range(k))
    assert is_envy_free(inst, partial)
    assert worst_ratio(inst, partial) <= 1
    assert inst.cost(n - 1, partial[n - 1]) == 1
    rows = ratio_matrix(inst, partial)
    for i in range(n - 1):
        # other bundles cost her at least 1, the dearest unallocated chore 9/10
        assert min(x for x in rows[i] if x is not None) == Fraction(10, 9)
    with pytest.raises(ParameterError):
        ranking_gap_instance(3, 6, 9, 100, "1/10")
    with pytest.raises(ParameterError):
        ranking_gap_instance(3, 7, 9, 100, 1)


def test_random_families_deterministic():
    for family in ("additive", "table", "ido"):
        a = random_instance(family, 5, n=2, m=4)
        b = random_instance(family, 5, n=2, m=4)
        assert a == b
    with pytest.raises(ParameterError):
        random_instance("nope", 0, n=1, m=1)


@given(st.integers(1, 4), st.integers(0, 8), st.integers(0, 10**6))
def test_ido_shares_the_order(n, m, seed):
    inst = random_ido(n, m, seed)
    orders = {tuple(ranking(inst, i)) for i in range(n)}
    assert len(orders) == 1


@given(st.integers(1, 3), st.integers(0, 6), st.integers(0, 10**6))
def test_monotone_tables_validate(n, m, seed):
    assert validate(random_monotone_table(n, m, seed)) == []


@given(st.integers(1, 3), st.integers(0, 8), st.integers(0, 10**6))
def test_random_additive_validates(n, m, seed):
    assert validate(random_additive(n, m, seed)) == []


@pytest.mark.parametrize("kind", ["top-n-agreement", "top-n-1-agreement", "top-n-1-disagreement"])
def test_top_structured_shapes(kind):
    from chorefair.algorithms import top_sets

    for seed in range(20):
        n = 2 + seed % 4
        inst = random_top_structured(kind, n, n * n, seed)
        if kind == "top-n-agreement":
            assert top_sets(inst, n).agree()
        elif kind == "top-n-1-agreement":
            assert top_sets(inst, n - 1).agree()
        else:
            assert top_sets(inst, n - 1).pairwise_disjoint()


@pytest.mark.parametrize("values", [[1, 1, 1, 1, 1, 1], [2, 2, 3, 3, 3, 5], [1, 2, 3, 3, 4, 5], [3, 5, 5, 5]])
def test_partition_reduction_equivalence(values):
    assert has_equal_partition(values) == (find_efx(partition_reduction(values)) is not None)
    assert has_equal_partition(values) == (find_efx(partition_reduction(values, big="auto")) is not None)


def test_triplet_reduction_two_agents_is_degenerate():
    # With two agents each holds the other's b-chore for free, so EFX always
    # exists; the triplet split does not matter.
    assert find_efx(three_partition_reduction([3] * 6, 2)) is not None
    assert find_efx(three_partition_reduction([5, 5, 5, 7, 8, 8], 2)) is not None
    assert not has_equal_partition([5, 5, 5, 7, 8, 8], 2, triplets=True)


def test_ranking_gap_two_agents_is_not_capped():
    inst, partial = ranking_gap_instance(2, 5, 7, big=1000, eps="1/10")
    # agent 0 sees only agent 1's four chores: 4 / (9/10)
    assert ratio_matrix(inst, partial)[0][1] == Fraction(40, 9)


@pytest.mark.parametrize("values", [(5, 5, 6, 6, 6, 7, 7, 7, 5), (6, 6, 6, 6, 6, 7, 7, 7, 9)])
def test_triplet_reduction_three_agents(values):
    expected = has_equal_partition(values, 3, triplets=True)
    assert (find_efx(three_partition_reduction(values, 3)) is not None) == expected


@pytest.mark.parametrize("k", [3, 5, 10, 100])
def test_six_chore_packing_variant(k):
    inst = six_chore_instance(k, variant="packing")
    assert validate(inst) == []
    assert all(is_superadditive(inst, i) for i in range(3))
    assert find_efx(inst) is None
    # both triggers at once: {b2, b3} plus {b1, a1} for agent 0
    assert inst.cost(0, mask_of([1, 3, 4, 5])) == 1 + 2 * k * k
    with pytest.raises(ParameterError):
        six_chore_instance(k, variant="other")
