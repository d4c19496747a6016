import json

import pytest

from sensync.schedule import ArcLabeling
from sensync.sensitivity import count_distinct_dynamics
from sensync.special import (
    SpecialPair,
    count_pattern_dynamics_class2,
    dset_characterization,
    find_special_pairs,
    pattern_signature,
    verify_closure,
)


@pytest.mark.parametrize("rule, n, count", [(128, 7, 70), (162, 5, 5), (162, 6, 6), (162, 8, 8), (128, 8, 80)])
def test_special_pair_counts(rule, n, count):
    s = find_special_pairs(rule, n)
    assert len(s) == count
    assert s.disjoint
    assert all(len(p.differing_arcs) == 1 for p in s)
    assert verify_closure(s, rule)
    # every labeling sits in a class of size 1 or 2
    assert len(s) == s.num_labelings - s.num_dynamics


@pytest.mark.slow
def test_rule_160_n9():
    s = find_special_pairs(160, 9)
    assert len(s) == 108 and s.disjoint and verify_closure(s, 160)


def test_rule_162_pairs_differ_on_rightward_arc():
    n = 7
    for p in find_special_pairs(162, n):
        ((i, j),) = p.differing_arcs
        assert j == (i + 1) % n


def test_rule_128_small_ring_not_disjoint():
    s = find_special_pairs(128, 6)
    assert s.class_sizes == {1: 489, 2: 48, 3: 6}
    assert not s.disjoint


def test_identity_rule_single_class():
    s = find_special_pairs(204, 5)
    assert len(s) == 0 and s.class_sizes == {181: 1}


def test_closure_detects_broken_set():
    pairs = list(find_special_pairs(128, 7))
    assert not verify_closure(pairs[1:], 128)
    assert verify_closure([], 128)


def test_json_export():
    obj = json.loads(find_special_pairs(162, 4).to_json())
    assert obj["count"] == 4 and obj["disjoint"] is True
    a = ArcLabeling.from_hex(obj["pairs"][0]["a"])
    assert a.n == 4


def test_pair_requires_distinct():
    lab = ArcLabeling.all_plus(4)
    with pytest.raises(ValueError):
        SpecialPair(lab, lab, 128)


@pytest.mark.parametrize("rule", [28, 32, 44, 140])
@pytest.mark.parametrize("n", [4, 5, 6])
def test_pattern_counts(rule, n):
    got = count_pattern_dynamics_class2(rule, n)
    assert got == 2**n - 1 == count_distinct_dynamics(rule, n)


def test_pattern_errors():
    with pytest.raises(ValueError):
        count_pattern_dynamics_class2(28, 3)
    with pytest.raises(ValueError):
        pattern_signature(30, ArcLabeling.all_plus(4))


def test_dset_characterization():
    assert dset_characterization(128, 7)
    assert not dset_characterization(204, 5)
