from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from chorefair import INF, Allocation, Instance, TableCost, UsageError, sigma, validate
from chorefair.costs import as_cost, cost_to_json, leq_scaled, ratio
from chorefair.constructions import six_chore_instance
from chorefair.model import bits, check_allocation, mask_of, ranking

from conftest import additive_instances


A_HAT, A1, A2, B1, B2, B3 = range(6)


def test_six_chore_bundle_costs():
    inst = six_chore_instance(10)
    assert inst.cost(0, mask_of([B2, B3])) == 100
    assert inst.cost(0, mask_of([B1, A1])) == 100
    assert inst.cost(0, mask_of([A_HAT, A1, A2])) == 12
    for i in range(3):
        assert inst.cost(i, 0) == 0


def test_additive_cost():
    inst = Instance.additive([[1, 2, 3]])
    assert inst.cost(0, mask_of([0, 2])) == 4
    assert inst.cost(0, 0) == 0


def test_cost_rejects_out_of_range():
    inst = Instance.additive([[1, 2, 3]])
    with pytest.raises(UsageError):
        inst.cost(1, 1)
    with pytest.raises(UsageError):
        inst.cost(0, 1 << 3)


def test_sigma_tie_break_and_range():
    inst = Instance.additive([[1, 1, 2]])
    assert sigma(inst, 0, 1) == 2
    assert sigma(inst, 0, 2) == 0
    assert sigma(inst, 0, 3) == 1
    assert sigma(inst, 0, 1, mask_of([1])) == 1
    with pytest.raises(UsageError):
        sigma(inst, 0, 4)
    with pytest.raises(UsageError):
        sigma(inst, 0, 0)


def test_sigma_six_chore_top_is_a_hat():
    assert sigma(six_chore_instance(10), 0, 1) == A_HAT


def test_validate_additive_ok():
    assert validate(Instance.additive([[1, 2], [0, 5]])) == []


def test_validate_table_monotonicity_witness():
    # chores a=0, b=1: c({a}) = 5, c({a,b}) = 3
    inst = Instance(1, 2, (TableCost((0, 5, 1, 3)),))
    bad = validate(inst)
    assert [(v.kind, v.masks) for v in bad] == [("monotonicity", (0b01, 0b11))]


def test_validate_table_normalization():
    inst = Instance(1, 1, (TableCost((1, 2)),))
    assert validate(inst)[0].kind == "normalization"


def test_instance_shape_checks():
    with pytest.raises(UsageError):
        Instance(0, 0, ())
    with pytest.raises(UsageError):
        Instance.additive([[1, 2], [1]])
    with pytest.raises(UsageError):
        Instance(1, 2, (TableCost((0, 1)),))


def test_allocation_disjointness_and_helpers():
    with pytest.raises(UsageError):
        Allocation((0b011, 0b010))
    alloc = Allocation.from_lists([[0, 2], [], [1]])
    assert alloc.to_lists() == [[0, 2], [], [1]]
    assert alloc.is_complete(3)
    assert not alloc.is_complete(4)
    assert alloc.owner(1) == 2
    assert alloc.owner(5) is None
    assert bits(alloc.unallocated(5)) == [3, 4]


def test_check_allocation():
    inst = Instance.additive([[1, 2], [1, 2]])
    with pytest.raises(UsageError):
        check_allocation(inst, Allocation((1,)))
    with pytest.raises(UsageError):
        check_allocation(inst, Allocation((1, 4)))
    with pytest.raises(UsageError):
        check_allocation(inst, Allocation((1, 0)), complete=True)


def test_cost_values():
    assert as_cost("inf") == INF
    assert as_cost("3/6") == Fraction(1, 2)
    assert as_cost(0.1) == Fraction(1, 10)
    assert as_cost(Fraction(4, 2)) == 2 and isinstance(as_cost(Fraction(4, 2)), int)
    with pytest.raises(ValueError):
        as_cost(-1)
    with pytest.raises(TypeError):
        as_cost(True)
    assert cost_to_json(INF) == "inf"
    assert cost_to_json(Fraction(2, 3)) == "2/3"
    assert INF + 5 == INF and INF > 10**100


def test_ratio_conventions():
    assert ratio(0, 0) == 0
    assert ratio(3, 0) == INF
    assert ratio(INF, 5) == INF
    assert ratio(5, INF) == 0
    assert ratio(6, 4) == Fraction(3, 2)


def test_leq_scaled_exact():
    assert leq_scaled(Fraction(1, 3), 1, Fraction(1, 3))
    assert not leq_scaled(Fraction(1, 3) + Fraction(1, 10**30), 1, Fraction(1, 3))
    assert leq_scaled(5, 2, 3)
    assert leq_scaled(0, 0, INF)
    assert not leq_scaled(INF, 1, 10**9)


@given(additive_instances(max_m=5))
def test_validated_instances_are_monotone(inst):
    assert validate(inst) == []
    for i in range(inst.n):
        for mask in range(1 << inst.m):
            for e in range(inst.m):
                if not mask >> e & 1:
                    assert inst.cost(i, mask | 1 << e) >= inst.cost(i, mask)


@given(additive_instances(min_m=1, max_m=6), st.data())
def test_sigma_is_a_sorted_bijection(inst, data):
    agent = data.draw(st.integers(0, inst.n - 1))
    subset = data.draw(st.integers(1, inst.full))
    size = len(bits(subset))
    picked = [sigma(inst, agent, r, subset) for r in range(1, size + 1)]
    assert sorted(picked) == bits(subset)
    costs = [inst.chore_cost(agent, e) for e in picked]
    assert costs == sorted(costs, reverse=True)
    assert picked == ranking(inst, agent, subset)


@given(additive_instances(max_m=5), st.data())
def test_cost_is_deterministic(inst, data):
    mask = data.draw(st.integers(0, inst.full))
    agent = data.draw(st.integers(0, inst.n - 1))
    assert inst.cost(agent, mask) == inst.cost(agent, mask)
