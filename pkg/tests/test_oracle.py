import pytest

from sensync.oracle import (
    cyclic_word_sum,
    enumerate_ordered_partitions,
    naive_dynamics_count,
    ordered_bell,
)
from sensync.rule import TABLE_88
from sensync.schedule import enumerate_valid_labelings, label_of
from sensync.sensitivity import count_distinct_dynamics, lucas_bisection


def test_ordered_bell():
    assert [ordered_bell(n) for n in range(7)] == [1, 1, 3, 13, 75, 541, 4683]


@pytest.mark.parametrize("n", range(1, 7))
def test_partition_enumeration(n):
    parts = list(enumerate_ordered_partitions(n))
    assert len(parts) == len(set(parts)) == ordered_bell(n)


@pytest.mark.parametrize("n", range(3, 8))
def test_labelings_of_partitions_are_the_valid_labelings(n):
    via = {label_of(d).code for d in enumerate_ordered_partitions(n)}
    assert via == {lab.code for lab in enumerate_valid_labelings(n)}


def test_cyclic_word_sum():
    assert [cyclic_word_sum(n) for n in (1, 2, 3)] == [3, 7, 18]
    assert all(cyclic_word_sum(n) == lucas_bisection(n) for n in range(1, 13))
    with pytest.raises(ValueError):
        cyclic_word_sum(15)


@pytest.mark.parametrize("rule, n, count", [(0, 4, 1), (170, 5, 31), (162, 5, 176), (8, 5, 91)])
def test_naive_counts(rule, n, count):
    assert naive_dynamics_count(rule, n) == count


def test_oracle_agrees_on_all_classes():
    bad = [w for w in TABLE_88 if naive_dynamics_count(w, 4) != count_distinct_dynamics(w, 4)]
    assert bad == []


@pytest.mark.slow
def test_oracle_agrees_on_all_classes_n5():
    bad = [w for w in TABLE_88 if naive_dynamics_count(w, 5) != count_distinct_dynamics(w, 5)]
    assert bad == []


def test_oracle_bounds():
    with pytest.raises(ValueError):
        naive_dynamics_count(30, 7)
    with pytest.raises(ValueError):
        list(enumerate_ordered_partitions(8))
