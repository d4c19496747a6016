"""Block-sequential update schedules and their arc labelings.

An ordered partition ``(B1, ..., Bk)`` of the ring cells updates the blocks
one after the other, cells inside a block in parallel.  Two schedules that
put the same ``+``/``-`` labels on the 2n arcs of the ring induce the same
dynamics, so a valid labeling is the canonical name of a schedule class.

Labelings are encoded as a 2n-bit integer: bit ``k`` holds the label of the
k-th arc of ``ring_arcs(n)``, i.e. arcs (0,1),(1,0),(1,2),(2,1),...,
(n-1,0),(0,n-1), with ``+`` = 0 and ``-`` = 1.  An arc (i, j) is labeled
``-`` exactly when i is updated strictly before j.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

from .topology import check_size, ring_arcs

PLUS, MINUS = "+", "-"

DEFAULT_NCAP = 12
HARD_NCAP = 16  # image tables are stored as uint16


def size_cap() -> int:
    """Largest ring size accepted by the enumerators (env ``SENSYNC_NCAP``)."""
    raw = os.environ.get("SENSYNC_NCAP")
    if raw is None:
        return DEFAULT_NCAP
    cap = int(raw)
    if not 3 <= cap <= HARD_NCAP:
        raise ValueError(f"SENSYNC_NCAP must be in [3, {HARD_NCAP}], got {cap}")
    return cap


def check_enumerable(n: int) -> int:
    n = check_size(n)
    cap = size_cap()
    if n > cap:
        raise ValueError(f"n={n} exceeds the size cap {cap} (set SENSYNC_NCAP to raise it)")
    return n


def arc_index(n: int, i: int, j: int) -> int:
    """Position of arc (i, j) in the canonical arc order."""
    i, j = i % n, j % n
    if j == (i + 1) % n:
        return 2 * i
    if i == (j + 1) % n:
        return 2 * j + 1
    raise ValueError(f"({i}, {j}) is not an arc of the ring of size {n}")


def expected_count(n: int) -> int:
    """Number of valid labelings of the size-n ring, 3^n - 2^(n+1) + 2."""
    return 3**n - 2 ** (n + 1) + 2


# ---------------------------------------------------------------------------
# ordered partitions


@dataclass(frozen=True)
class OrderedPartition:
    blocks: tuple[frozenset[int], ...]

    def __post_init__(self):
        blocks = tuple(frozenset(int(c) for c in b) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        if any(not b for b in blocks):
            raise ValueError("blocks must be nonempty")
        cells = [c for b in blocks for c in b]
        if len(cells) != len(set(cells)):
            raise ValueError("blocks must be pairwise disjoint")
        if sorted(cells) != list(range(len(cells))):
            raise ValueError("blocks must cover exactly the cells 0..n-1")

    @classmethod
    def of(cls, *blocks: Iterable[int]) -> "OrderedPartition":
        return cls(tuple(frozenset(b) for b in blocks))

    @classmethod
    def sync(cls, n: int) -> "OrderedPartition":
        return cls((frozenset(range(n)),))

    @classmethod
    def from_ranks(cls, ranks: Sequence[int]) -> "OrderedPartition":
        """Group cells by rank; ranks only need to be comparable, not dense."""
        levels = sorted(set(ranks))
        return cls(tuple(frozenset(c for c, r in enumerate(ranks) if r == lv) for lv in levels))

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    def ranks(self) -> tuple[int, ...]:
        out = [0] * self.n
        for k, block in enumerate(self.blocks):
            for c in block:
                out[c] = k
        return tuple(out)

    def __len__(self) -> int:
        return len(self.blocks)

    def __str__(self) -> str:
        return "(" + ",".join("{" + ",".join(map(str, sorted(b))) + "}" for b in self.blocks) + ")"


# ---------------------------------------------------------------------------
# arc labelings


@dataclass(frozen=True)
class ArcLabeling:
    n: int
    code: int

    def __post_init__(self):
        check_size(self.n)
        if not 0 <= self.code < 1 << (2 * self.n):
            raise ValueError(f"code {self.code:#x} does not fit 2n={2 * self.n} bits")

    @classmethod
    def from_labels(cls, n: int, labels: dict) -> "ArcLabeling":
        """Build from a mapping arc -> '+'/'-'; every arc must be present."""
        code = 0
        for arc in ring_arcs(n):
            lab = labels[arc]
            if lab not in (PLUS, MINUS):
                raise ValueError(f"label of {arc} must be '+' or '-', got {lab!r}")
            if lab == MINUS:
                code |= 1 << arc_index(n, *arc)
        return cls(n, code)

    @classmethod
    def all_plus(cls, n: int) -> "ArcLabeling":
        return cls(n, 0)

    def is_minus(self, i: int, j: int) -> bool:
        return bool((self.code >> arc_index(self.n, i, j)) & 1)

    def __getitem__(self, arc) -> str:
        return MINUS if self.is_minus(*arc) else PLUS

    @property
    def labels(self) -> dict[tuple[int, int], str]:
        return {arc: self[arc] for arc in ring_arcs(self.n)}

    def to_hex(self) -> str:
        width = (2 * self.n + 3) // 4
        return f"n={self.n}:{self.code:0{width}x}"

    @classmethod
    def from_hex(cls, text: str) -> "ArcLabeling":
        head, _, body = text.partition(":")
        if not head.startswith("n=") or not body:
            raise ValueError(f"malformed labeling {text!r}; expected 'n=<n>:<hex>'")
        return cls(int(head[2:]), int(body, 16))

    def differing_arcs(self, other: "ArcLabeling") -> list[tuple[int, int]]:
        if other.n != self.n:
            raise ValueError("labelings of different sizes")
        diff = self.code ^ other.code
        return [arc for k, arc in enumerate(ring_arcs(self.n)) if (diff >> k) & 1]

    def rotate(self) -> "ArcLabeling":
        """Left rotation: the new label of (i, j) is the old label of (i+1, j+1)."""
        m = 2 * self.n
        mask = (1 << m) - 1
        return ArcLabeling(self.n, ((self.code >> 2) | (self.code << (m - 2))) & mask)

    def reflect(self) -> "ArcLabeling":
        """Mirror the ring (cell i -> -i): the new label of (i, j) is the old
        label of (-i, -j).  In the canonical encoding this reverses the bits."""
        m = 2 * self.n
        return ArcLabeling(self.n, int(f"{self.code:0{m}b}"[::-1], 2))

    def __str__(self) -> str:
        return self.to_hex()


def label_of(delta: OrderedPartition) -> ArcLabeling:
    n = check_size(delta.n)
    rank = delta.ranks()
    code = 0
    for k, (i, j) in enumerate(ring_arcs(n)):
        if rank[i] < rank[j]:
            code |= 1 << k
    return ArcLabeling(n, code)


def equivalent(d1: OrderedPartition, d2: OrderedPartition) -> bool:
    if d1.n != d2.n:
        raise ValueError(f"schedules of different sizes ({d1.n} vs {d2.n})")
    return label_of(d1) == label_of(d2)


def _closure(succ: list[int]) -> list[int]:
    """Reachability bitmasks (paths of length >= 1) of a small digraph."""
    n = len(succ)
    reach = list(succ)
    changed = True
    while changed:
        changed = False
        for v in range(n):
            acc = reach[v]
            todo = acc
            while todo:
                u = (todo & -todo).bit_length() - 1
                todo &= todo - 1
                acc |= reach[u]
            if acc != reach[v]:
                reach[v] = acc
                changed = True
    return reach


def is_valid(lab: ArcLabeling) -> bool:
    """Check that no schedule-forbidden cycle exists.

    Keep ``+`` arcs, reverse ``-`` arcs; the labeling is realizable iff no
    cycle of that multidigraph goes through a reversed arc.
    """
    n = lab.n
    succ = [0] * n
    reversed_arcs = []
    for i, j in ring_arcs(n):
        if lab.is_minus(i, j):
            succ[j] |= 1 << i
            reversed_arcs.append((j, i))
        else:
            succ[i] |= 1 << j
    reach = _closure(succ)
    # a reversed arc u -> v lies on a cycle iff v reaches u
    return not any((reach[v] >> u) & 1 for u, v in reversed_arcs)


def realize(lab: ArcLabeling) -> OrderedPartition:
    """Return a schedule whose labeling is ``lab``.

    Constraints: ``-`` on (i, j) means block(i) < block(j), ``+`` means
    block(j) <= block(i).  Cells in a common cycle of the constraint graph
    share a block; blocks are then ranked by the longest chain of strict
    constraints leading to them.
    """
    if not is_valid(lab):
        raise ValueError(f"labeling {lab} has a forbidden cycle and is not realizable")
    n = lab.n
    succ = [0] * n
    strict: list[tuple[int, int]] = []
    for i, j in ring_arcs(n):
        if lab.is_minus(i, j):
            succ[i] |= 1 << j
            strict.append((i, j))
        else:
            succ[j] |= 1 << i
    reach = _closure(succ)
    # component id: smallest cell mutually reachable (or itself)
    comp = []
    for v in range(n):
        same = (1 << v) | (reach[v] & _reaching(reach, v))
        comp.append((same & -same).bit_length() - 1)
    # longest strict-chain depth; all constraint arcs go forward in rank
    depth = [0] * n
    for _ in range(n):
        changed = False
        for i, j in ring_arcs(n):
            w = 1 if lab.is_minus(i, j) else 0
            a, b = (i, j) if w else (j, i)
            a, b = comp[a], comp[b]
            if a != b and depth[b] < depth[a] + w:
                depth[b] = depth[a] + w
                changed = True
            elif a == b and w:
                raise AssertionError("strict constraint inside a component")
        if not changed:
            break
    return OrderedPartition.from_ranks([depth[comp[v]] for v in range(n)])


def _reaching(reach: list[int], v: int) -> int:
    return sum(1 << u for u in range(len(reach)) if (reach[u] >> v) & 1)


# ---------------------------------------------------------------------------
# enumeration


def _valid_codes(n: int) -> Iterator[int]:
    """Depth-first over edges {i, i+1}, two arcs at a time.

    The simple cycles of the relabelled ring are the 2-cycles on one edge
    (both arcs ``-``) and the two turns around the ring.  The first kind is
    pruned as soon as an edge is complete; the second needs every edge to
    point the same way with at least one strict edge, which is tracked with
    two flags and checked when the last edge closes the ring.
    """

    # per edge: (bits for arcs (i,i+1),(i+1,i), forward-strict, backward-strict)
    choices = ((0b00, False, False), (0b01, True, False), (0b10, False, True))

    def rec(i: int, code: int, fwd: bool, bwd: bool) -> Iterator[int]:
        if i == n:
            if fwd and not bwd or bwd and not fwd:
                return
            yield code
            return
        for bits, f, b in choices:
            yield from rec(i + 1, code | (bits << (2 * i)), fwd or f, bwd or b)

    yield from rec(0, 0, False, False)


def enumerate_valid_labelings(n: int) -> Iterator[ArcLabeling]:
    """Yield every valid labeling of the size-n ring exactly once."""
    n = check_enumerable(n)
    for code in _valid_codes(n):
        yield ArcLabeling(n, code)


def naive_valid_labelings(n: int) -> Iterator[ArcLabeling]:
    """Filter all 2^(2n) label assignments through ``is_valid`` (small n only)."""
    n = check_size(n)
    if n > 7:
        raise ValueError("the naive filter is limited to n <= 7")
    for code in range(1 << (2 * n)):
        lab = ArcLabeling(n, code)
        if is_valid(lab):
            yield lab


@lru_cache(maxsize=None)
def schedule_table(n: int) -> tuple[np.ndarray, np.ndarray]:
    """All valid labelings of size n with a realizing schedule for each.

    Returns ``(codes, stage_masks)`` where ``codes`` has shape (L,) and
    ``stage_masks[l, t]`` is the bitmask of cells updated at stage t under
    labeling l (zero once the schedule has run out of blocks).
    """
    n = check_enumerable(n)
    codes = []
    masks = []
    for lab in enumerate_valid_labelings(n):
        delta = realize(lab)
        row = [0] * n
        for t, block in enumerate(delta.blocks):
            row[t] = sum(1 << c for c in block)
        codes.append(lab.code)
        masks.append(row)
    codes_arr = np.array(codes, dtype=np.int64)
    masks_arr = np.array(masks, dtype=np.uint16)
    codes_arr.setflags(write=False)
    masks_arr.setflags(write=False)
    return codes_arr, masks_arr
