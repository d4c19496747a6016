from fractions import Fraction

import pytest

from sensync.schedule import expected_count
from sensync.sensitivity import (
    CLASS_MEMBERS,
    NONMAX_19,
    NotCovered,
    THRESHOLDS,
    classify,
    closed_form,
    count_distinct_dynamics,
    empirical_agreement,
    lucas_bisection,
    sensitivity,
)

# rule 8 counts frozen from enumeration (they equal L(2n) - 2^n)
RULE8 = {5: 91, 6: 258, 7: 715, 8: 1951}


@pytest.mark.parametrize(
    "rule, n, value",
    [
        (0, 5, Fraction(1, 181)),
        (51, 5, Fraction(1, 181)),
        (170, 4, Fraction(15, 51)),
        (8, 5, Fraction(91, 181)),
        (110, 7, Fraction(1)),
        (30, 6, Fraction(1)),
    ],
)
def test_sensitivity_examples(rule, n, value):
    assert sensitivity(rule, n).value == value


def test_rule_8_counts():
    for n, d in RULE8.items():
        assert count_distinct_dynamics(8, n) == d == lucas_bisection(n) - 2**n


def test_jobs_give_same_count():
    assert count_distinct_dynamics(128, 6, jobs=2) == count_distinct_dynamics(128, 6)


def test_equivalent_rules_have_equal_counts():
    # 128, 254 = negation, etc. are in one class
    from sensync.rule import orbit

    for w in (8, 128, 162, 30):
        counts = {count_distinct_dynamics(v, 5) for v in orbit(w)}
        assert len(counts) == 1


def test_lucas_values():
    assert [lucas_bisection(n) for n in range(6)] == [2, 3, 7, 18, 47, 123]
    with pytest.raises(ValueError):
        lucas_bisection(-1)


@pytest.mark.parametrize(
    "rule, n, num",
    [(128, 7, 1863), (162, 5, 176), (160, 9, 18553), (8, 6, 258), (170, 7, 127), (204, 8, 1)],
)
def test_closed_form_examples(rule, n, num):
    cf = closed_form(rule, n)
    assert cf and cf.num_dynamics == num and cf.num_classes == expected_count(n)


def test_closed_form_not_covered():
    assert isinstance(closed_form(128, 6), NotCovered)
    assert closed_form(160, 8).threshold == 9
    assert not closed_form(30, 8)
    assert closed_form(30, 8).threshold is None


def test_classify():
    assert classify(0) == "I" and classify(255) == "I"
    assert classify(170) == "II" and classify(240) == "II"
    assert classify(8) == "III"
    assert classify(128) == classify(254) == "IV"
    assert classify(30) == classify(110) == "max_sensitive"
    assert len(NONMAX_19) == 19 == sum(map(len, CLASS_MEMBERS.values()))


@pytest.mark.parametrize("rule", NONMAX_19)
def test_closed_forms_hold_from_threshold(rule):
    sizes = range(THRESHOLDS[rule], 9)
    assert empirical_agreement(rule, sizes) == list(sizes)


def test_class_iv_holds_below_proved_threshold():
    assert empirical_agreement(128, range(3, 9)) == [5, 6, 7, 8]
    assert empirical_agreement(160, range(3, 9)) == [5, 6, 7, 8]
    assert empirical_agreement(12, [3]) == []


@pytest.mark.parametrize("rule", [30, 54, 110, 150])
def test_max_sensitive_examples(rule):
    assert count_distinct_dynamics(rule, 7) == expected_count(7)
