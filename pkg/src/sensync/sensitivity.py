"""Exact sensitivity to synchronism and the closed forms for the 19 rules.

The sensitivity of a rule at size n is the number of distinct dynamics
divided by the number of valid labelings, 3^n - 2^(n+1) + 2.  Everything
here is exact: counts are Python ints, values are ``Fraction``.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .dynamics import dynamics_tables, evolve_batch
from .rule import as_rule, class_representative
from .schedule import check_enumerable, expected_count, schedule_table

CLASS_MEMBERS = {
    "I": (0, 51, 200, 204),
    "II": (3, 12, 15, 34, 60, 136, 170, 28, 32, 44, 140),
    "III": (8,),
    "IV": (128, 160, 162),
}
NONMAX_19 = tuple(sorted(r for members in CLASS_MEMBERS.values() for r in members))

# smallest n at which each closed form is claimed (never below 3 cells);
# rule 12 has only 4 dynamics at n=3, so its group starts at 4
THRESHOLDS = {
    0: 3, 51: 3, 200: 3, 204: 3,
    170: 3, 3: 4, 12: 4, 15: 4, 34: 4, 60: 4, 136: 4,
    28: 4, 32: 4, 44: 4, 140: 4,
    8: 5,
    128: 7, 162: 3, 160: 9,
}
SPECIAL_PAIR_RATE = {128: 10, 162: 1, 160: 12}

MAX_SENSITIVE_FROM = 7


@dataclass(frozen=True)
class SensitivityReport:
    rule: int
    n: int
    num_dynamics: int
    num_classes: int
    method: str  # "enumerated" | "closed_form"

    @property
    def value(self) -> Fraction:
        return Fraction(self.num_dynamics, self.num_classes)


@dataclass(frozen=True)
class NotCovered:
    rule: int
    n: int
    threshold: int | None
    reason: str

    def __bool__(self):
        return False


def unique_rows(tables: np.ndarray) -> np.ndarray:
    """Row ids such that equal ids <=> byte-identical rows (exact, sort-based)."""
    tables = np.ascontiguousarray(tables)
    view = tables.view(np.dtype((np.void, tables.dtype.itemsize * tables.shape[1]))).ravel()
    _, inverse = np.unique(view, return_inverse=True)
    return inverse.ravel()


def _distinct_in_chunk(args) -> set[bytes]:
    wolfram, n, masks = args
    tables = evolve_batch(wolfram, n, masks)
    return {row.tobytes() for row in tables}


@lru_cache(maxsize=None)
def _count(wolfram: int, n: int) -> int:
    _, tables = dynamics_tables(wolfram, n)
    return int(unique_rows(tables).max()) + 1


def count_distinct_dynamics(rule, n: int, jobs: int | None = 1) -> int:
    """Number of distinct image tables over all valid labelings of size n.

    ``jobs > 1`` fans the labelings out over worker processes; each worker
    returns the exact set of its row bytes and the sets are unioned.
    """
    w = as_rule(rule).wolfram
    n = check_enumerable(n)
    if jobs is None:
        jobs = os.cpu_count() or 1
    if jobs <= 1:
        return _count(w, n)
    _, masks = schedule_table(n)
    size = max(1, -(-len(masks) // (4 * jobs)))
    chunks = [(w, n, masks[lo : lo + size]) for lo in range(0, len(masks), size)]
    seen: set[bytes] = set()
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for part in pool.map(_distinct_in_chunk, chunks):
            seen |= part
    return len(seen)


def sensitivity(rule, n: int, jobs: int | None = 1) -> SensitivityReport:
    w = as_rule(rule).wolfram
    return SensitivityReport(
        w, n, count_distinct_dynamics(w, n, jobs=jobs), expected_count(n), "enumerated"
    )


def lucas_bisection(n: int) -> int:
    """L(2n), via T(k) = 3 T(k-1) - T(k-2) with T(0) = 2, T(1) = 3."""
    if n < 0:
        raise ValueError("n must be non-negative")
    a, b = 2, 3
    for _ in range(n):
        a, b = b, 3 * b - a
    return a


def classify(rule, n: int | None = None) -> str:
    """Class I-IV of the rule's representative, else ``max_sensitive``.

    The ``max_sensitive`` label is only established for n >= 7.
    """
    rep = class_representative(rule)
    for name, members in CLASS_MEMBERS.items():
        if rep in members:
            return name
    return "max_sensitive"


def closed_form_numerator(rep: int, n: int) -> int:
    cls = classify(rep)
    if cls == "I":
        return 1
    if cls == "II":
        return 2**n - 1
    if cls == "III":
        return lucas_bisection(n) - 2**n
    if cls == "IV":
        return expected_count(n) - SPECIAL_PAIR_RATE[rep] * n
    raise ValueError(f"rule {rep} has no closed form")


def closed_form(rule, n: int) -> SensitivityReport | NotCovered:
    w = as_rule(rule).wolfram
    rep = class_representative(w)
    cls = classify(rep)
    if cls == "max_sensitive":
        return NotCovered(w, n, None, f"rule {w} is not one of the 19 non-max-sensitive rules")
    threshold = THRESHOLDS[rep]
    if n < threshold:
        return NotCovered(w, n, threshold, f"closed form for rule {rep} holds from n={threshold}")
    return SensitivityReport(w, n, closed_form_numerator(rep, n), expected_count(n), "closed_form")


def empirical_agreement(rule, sizes) -> list[int]:
    """Sizes at which the enumerated count equals the closed-form numerator.

    Unlike ``closed_form`` this ignores the proved thresholds, so it shows
    where the formula happens to hold at small n as well.
    """
    rep = class_representative(rule)
    return [n for n in sizes if count_distinct_dynamics(rep, n) == closed_form_numerator(rep, n)]
