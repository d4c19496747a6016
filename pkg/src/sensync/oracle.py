"""Brute-force baselines.

Nothing in here reuses the labeling enumerator or the vectorised kernel:
schedules come straight from ordered set partitions and configurations are
evolved one list of bits at a time.
"""

from __future__ import annotations

from itertools import permutations, product
from math import comb
from typing import Iterator

from .schedule import OrderedPartition

ORACLE_MAX_N = 7


def ordered_bell(n: int) -> int:
    """a(n) = sum_{k>=1} C(n, k) a(n-k), a(0) = 1."""
    a = [1]
    for m in range(1, n + 1):
        a.append(sum(comb(m, k) * a[m - k] for k in range(1, m + 1)))
    return a[n]


def _restricted_growth(n: int) -> Iterator[list[int]]:
    # s[0] = 0, s[i] <= 1 + max(s[:i])
    def rec(prefix, top):
        if len(prefix) == n:
            yield prefix
            return
        for v in range(top + 2):
            yield from rec(prefix + [v], max(top, v))

    yield from rec([0], 0)


def enumerate_ordered_partitions(n: int) -> Iterator[OrderedPartition]:
    """Every ordered set partition of {0..n-1}: set partitions times block orders."""
    if not 1 <= n <= ORACLE_MAX_N:
        raise ValueError(f"oracle enumeration supports 1 <= n <= {ORACLE_MAX_N}")
    for rgs in _restricted_growth(n):
        k = max(rgs) + 1
        blocks = [frozenset(i for i in range(n) if rgs[i] == b) for b in range(k)]
        for order in permutations(blocks):
            yield OrderedPartition(tuple(order))


def cyclic_word_sum(n: int) -> int:
    """Sum over words u in {+,-}^n of 2^(#plus(u) - #cyclic '+-' factors of u)."""
    if not 1 <= n <= 14:
        raise ValueError("cyclic_word_sum supports 1 <= n <= 14")
    total = 0
    for u in product("+-", repeat=n):
        plus = u.count("+")
        factors = sum(1 for i in range(n) if u[i] == "+" and u[(i + 1) % n] == "-")
        total += 2 ** (plus - factors)
    return total


def _naive_step(bits: list[int], rule: int, blocks) -> list[int]:
    n = len(bits)
    x = list(bits)
    for block in blocks:
        old = list(x)
        for i in block:
            idx = 4 * old[(i - 1) % n] + 2 * old[i] + old[(i + 1) % n]
            x[i] = (rule >> idx) & 1
    return x


def naive_dynamics_count(rule, n: int) -> int:
    """Distinct image tables over ALL ordered partitions, not labelings."""
    if not 3 <= n <= 6:
        raise ValueError("naive_dynamics_count supports 3 <= n <= 6")
    rule = int(rule.wolfram if hasattr(rule, "wolfram") else rule)
    configs = [list(x) for x in product((0, 1), repeat=n)]
    seen = set()
    for delta in enumerate_ordered_partitions(n):
        blocks = [sorted(b) for b in delta.blocks]
        seen.add(tuple(tuple(_naive_step(x, rule, blocks)) for x in configs))
    return len(seen)
