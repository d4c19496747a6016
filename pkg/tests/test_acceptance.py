"""Acceptance gate: every criterion at zero tolerance, one PASS/FAIL line each."""

import numpy as np

from sensync.cli import scan_rows
from sensync.dynamics import evolve_batch, influence_span, stage_masks_of
from sensync.oracle import cyclic_word_sum, enumerate_ordered_partitions, naive_dynamics_count
from sensync.rule import TABLE_88
from sensync.schedule import (
    ArcLabeling,
    OrderedPartition,
    enumerate_valid_labelings,
    expected_count,
    label_of,
    realize,
)
from sensync.sensitivity import NONMAX_19, count_distinct_dynamics, lucas_bisection
from sensync.special import dset_characterization, find_special_pairs
from sensync.topology import effective_arcs, ring_arcs

# frozen after enumeration; these are L(2n) - 2^n
RULE8_COUNTS = {5: 91, 6: 258, 7: 715, 8: 1951, 9: 5266}


def test_c1_valid_labeling_count(criterion):
    counts = {n: sum(1 for _ in enumerate_valid_labelings(n)) for n in range(3, 10)}
    ok = counts == {n: expected_count(n) for n in range(3, 10)}
    ok &= list(counts.values()) == [13, 51, 181, 603, 1933, 6051, 18661]
    for n in range(3, 7):
        via = {label_of(d).code for d in enumerate_ordered_partitions(n)}
        ok &= via == {lab.code for lab in enumerate_valid_labelings(n)}
    criterion("C1 valid labelings = 3^n - 2^(n+1) + 2, n=3..9", ok, str(list(counts.values())))


def test_c2_class_one(criterion):
    bad = [(w, n) for w in (0, 51, 200, 204) for n in range(3, 9) if count_distinct_dynamics(w, n) != 1]
    criterion("C2 class I has one dynamics, n=3..8", not bad, str(bad))


def test_c3_class_two(criterion):
    rules = (3, 12, 15, 34, 60, 136, 170, 28, 32, 44, 140)
    bad = [(w, n) for w in rules for n in range(4, 9) if count_distinct_dynamics(w, n) != 2**n - 1]
    criterion("C3 class II has 2^n - 1 dynamics, n=4..8", not bad, str(bad))


def test_c4_class_three(criterion):
    got = {n: count_distinct_dynamics(8, n) for n in range(5, 10)}
    ok = got == RULE8_COUNTS
    ok &= all(d == lucas_bisection(n) - 2**n for n, d in got.items())
    ok &= all(cyclic_word_sum(n) == lucas_bisection(n) for n in range(1, 13))
    criterion("C4 rule 8 has L(2n) - 2^n dynamics, n=5..9", ok, str(list(got.values())))


def test_c5_class_four(criterion):
    cases = [(128, n, 10) for n in (7, 8)] + [(162, n, 1) for n in range(3, 10)] + [(160, 9, 12)]
    bad = []
    for w, n, rate in cases:
        s = find_special_pairs(w, n)
        ok = s.num_dynamics == count_distinct_dynamics(w, n) == expected_count(n) - rate * n
        ok &= len(s) == rate * n and s.disjoint
        if w != 162:
            ok &= all(len(p.differing_arcs) == 1 for p in s)
        if not ok:
            bad.append((w, n))
    criterion("C5 class IV counts and disjoint special pairs", not bad, str(bad))


def test_c6_max_sensitive(criterion):
    bad = [
        (w, n)
        for w in (30, 90, 110, 54, 150)
        for n in (7, 8)
        if count_distinct_dynamics(w, n) != expected_count(n)
    ]
    criterion("C6 rules 30, 90, 110, 54, 150 have sensitivity 1 at n=7,8", not bad, str(bad))


def test_c7_oracle_equivalence(criterion):
    bad = [
        (w, n)
        for n in (4, 5)
        for w in TABLE_88
        if naive_dynamics_count(w, n) != count_distinct_dynamics(w, n)
    ]
    criterion("C7 oracle = enumeration for 88 rules, n=4,5", not bad, str(bad))


def test_c8_scan_regeneration(criterion):
    rows = scan_rows(NONMAX_19, range(3, 10))
    ok = len(rows) == 19 * 7
    ok &= all(r.closed_form_match in ("yes", "not_covered") for r in rows)
    in_range = sum(r.closed_form_match == "yes" for r in rows)
    criterion("C8 scan of 19 rules, n=3..9, closed forms match in range", ok,
              f"{in_range} rows in range")


def test_c9_property_suites(criterion):
    rng = np.random.default_rng(20240101)
    trials, bad = 0, 0
    for n in range(3, 7):
        ranks = rng.integers(0, n, size=(2500, n))
        deltas = [OrderedPartition.from_ranks(r) for r in ranks]
        canon = [realize(label_of(d)) for d in deltas]
        for w in (30, 110, 128, 8):
            a = evolve_batch(w, n, np.array([stage_masks_of(d) for d in deltas]))
            b = evolve_batch(w, n, np.array([stage_masks_of(d) for d in canon]))
            bad += int((a != b).any(axis=1).sum())
        trials += len(deltas)
    ok = trials >= 10_000 and bad == 0

    for n in (4, 5):
        ok &= all(label_of(realize(lab)) == lab for lab in enumerate_valid_labelings(n))

    absent = {
        0: "rl", 3: "r", 12: "r", 15: "r", 34: "l", 51: "rl", 60: "r", 136: "l", 170: "l", 204: "rl",
    }
    for w, sides in absent.items():
        for n in (3, 6):
            gone = {((i + 1) % n, i) for i in range(n)} if "r" in sides else set()
            gone |= {((i - 1) % n, i) for i in range(n)} if "l" in sides else set()
            ok &= effective_arcs(w, n) == set(ring_arcs(n)) - gone

    ok &= dset_characterization(128, 7)
    criterion("C9 equivalence sampling, round trip, effective arcs, d_set", ok,
              f"{trials} sampled schedules, {bad} mismatches")
