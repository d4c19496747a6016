"""Ring interaction digraph of an elementary CA and its effective arcs."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .rule import as_rule

MIN_SIZE = 3


def check_size(n: int) -> int:
    n = int(n)
    if n < MIN_SIZE:
        # below 3 cells the left and right neighbours alias
        raise ValueError(f"ring size must be >= {MIN_SIZE}, got {n}")
    return n


def ring_arcs(n: int) -> tuple[tuple[int, int], ...]:
    """The 2n loopless arcs in canonical order (0,1),(1,0),(1,2),(2,1),..."""
    n = check_size(n)
    arcs = []
    for i in range(n):
        j = (i + 1) % n
        arcs.append((i, j))
        arcs.append((j, i))
    return tuple(arcs)


@dataclass(frozen=True)
class InteractionDigraph:
    n: int

    def __post_init__(self):
        check_size(self.n)

    @property
    def arcs(self) -> tuple[tuple[int, int], ...]:
        return ring_arcs(self.n)

    def in_degree(self, v: int) -> int:
        return sum(1 for _, j in self.arcs if j == v)

    def out_degree(self, v: int) -> int:
        return sum(1 for i, _ in self.arcs if i == v)


def _depends_on(rule, position: int) -> bool:
    """Does the local rule read its left (0), center (1) or right (2) input?"""
    h = as_rule(rule)
    for nb in product((0, 1), repeat=3):
        flipped = list(nb)
        flipped[position] ^= 1
        if h(*nb) != h(*flipped):
            return True
    return False


def effective_arcs(rule, n: int) -> frozenset[tuple[int, int]]:
    """Arcs (i, j) of the ring along which cell i actually influences cell j.

    Arc (i-1, i) is effective when the rule reads its left input, arc
    (i+1, i) when it reads its right input.  Deciding this on the 8
    neighbourhoods is exact because f_j only depends on cells j-1, j, j+1.
    """
    n = check_size(n)
    reads_left = _depends_on(rule, 0)
    reads_right = _depends_on(rule, 2)
    arcs = set()
    for i in range(n):
        if reads_left:
            arcs.add(((i - 1) % n, i))
        if reads_right:
            arcs.add(((i + 1) % n, i))
    return frozenset(arcs)
