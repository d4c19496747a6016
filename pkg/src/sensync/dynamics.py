"""Block-sequential evolution and full dynamics maps.

Configurations are integers: cell i is bit i, indices taken mod n.  A
dynamics map is the dense image table ``images[x] = f^(delta)(x)`` over all
2^n configurations, which is the unit compared when counting distinct
dynamics.
"""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .rule import LocalRule, as_rule
from .schedule import (
    ArcLabeling,
    OrderedPartition,
    check_enumerable,
    is_valid,
    realize,
    schedule_table,
)
from .topology import check_size

FORMAT_VERSION = 1
BINARY_MAGIC = b"SSDM"


def step(rule, delta: OrderedPartition, x: int) -> int:
    """Apply one full pass of the block-sequential schedule to configuration x."""
    h = as_rule(rule)
    n = check_size(delta.n)
    if not 0 <= x < 1 << n:
        raise ValueError(f"configuration {x} does not fit {n} cells")
    for block in delta.blocks:
        snapshot = x
        for i in block:
            if not 0 <= i < n:
                raise ValueError(f"cell {i} out of range for n={n}")
            left = (snapshot >> ((i - 1) % n)) & 1
            center = (snapshot >> i) & 1
            right = (snapshot >> ((i + 1) % n)) & 1
            if h(left, center, right):
                x |= 1 << i
            else:
                x &= ~(1 << i)
    return x


def global_map(rule, n: int, x: int) -> int:
    """Plain synchronous image of x."""
    h = as_rule(rule)
    y = 0
    for i in range(n):
        if h((x >> ((i - 1) % n)) & 1, (x >> i) & 1, (x >> ((i + 1) % n)) & 1):
            y |= 1 << i
    return y


# ---------------------------------------------------------------------------
# vectorised kernel


def _apply_packed(wolfram: int, states: np.ndarray, n: int) -> np.ndarray:
    """Synchronous image of every packed configuration in ``states``."""
    full = np.uint16((1 << n) - 1)
    left = ((states << 1) | (states >> (n - 1))) & full  # bit i <- cell i-1
    right = ((states >> 1) | (states << (n - 1))) & full  # bit i <- cell i+1
    planes = ((~left & full, left), (~states & full, states), (~right & full, right))
    out = np.zeros_like(states)
    for k in range(8):
        if (wolfram >> k) & 1:
            out |= planes[0][k >> 2] & planes[1][(k >> 1) & 1] & planes[2][k & 1]
    return out


def evolve_batch(rule, n: int, stage_masks: np.ndarray) -> np.ndarray:
    """Image tables for a batch of schedules.

    ``stage_masks`` has shape (S, T): row s lists, stage by stage, the
    bitmask of cells updated by schedule s (zero rows past its last block).
    Returns an array of shape (S, 2^n) with ``out[s, x] = f^(s)(x)``.
    """
    w = as_rule(rule).wolfram
    stage_masks = np.asarray(stage_masks, dtype=np.uint16)
    if stage_masks.ndim != 2:
        raise ValueError("stage_masks must be 2-dimensional")
    states = np.broadcast_to(
        np.arange(1 << n, dtype=np.uint16), (stage_masks.shape[0], 1 << n)
    ).copy()
    for t in range(stage_masks.shape[1]):
        mask = stage_masks[:, t : t + 1]
        if not mask.any():
            break
        new = _apply_packed(w, states, n)
        states = (states & ~mask) | (new & mask)
    return states


def stage_masks_of(delta: OrderedPartition) -> np.ndarray:
    row = np.zeros(delta.n, dtype=np.uint16)
    for t, block in enumerate(delta.blocks):
        row[t] = sum(1 << c for c in block)
    return row


def dynamics_tables(rule, n: int, chunk: int = 8192) -> tuple[np.ndarray, np.ndarray]:
    """Image tables of every valid labeling of size n.

    Returns ``(codes, tables)`` aligned row by row with ``schedule_table(n)``.
    """
    n = check_enumerable(n)
    codes, masks = schedule_table(n)
    tables = np.empty((len(codes), 1 << n), dtype=np.uint16)
    for lo in range(0, len(codes), chunk):
        tables[lo : lo + chunk] = evolve_batch(rule, n, masks[lo : lo + chunk])
    return codes, tables


# ---------------------------------------------------------------------------
# dynamics maps


@dataclass(frozen=True, eq=False)
class DynamicsMap:
    n: int
    rule: int
    images: np.ndarray

    def __post_init__(self):
        images = np.asarray(self.images, dtype=np.uint16)
        if images.shape != (1 << self.n,):
            raise ValueError(f"image table must have {1 << self.n} entries")
        if images.size and int(images.max()) >= 1 << self.n:
            raise ValueError("image entries must be < 2^n")
        images.setflags(write=False)
        object.__setattr__(self, "images", images)

    def __eq__(self, other):
        if not isinstance(other, DynamicsMap):
            return NotImplemented
        return (
            self.n == other.n
            and self.rule == other.rule
            and np.array_equal(self.images, other.images)
        )

    def __hash__(self):
        return hash((self.n, self.rule, self.images.tobytes()))

    def key(self) -> bytes:
        return self.images.tobytes()

    def __getitem__(self, x: int) -> int:
        return int(self.images[x])

    def to_json(self) -> str:
        return json.dumps(
            {
                "format": "sensync.dynamics",
                "version": FORMAT_VERSION,
                "n": self.n,
                "rule": self.rule,
                "images": [int(v) for v in self.images],
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "DynamicsMap":
        obj = json.loads(text)
        if obj.get("format") != "sensync.dynamics" or obj.get("version") != FORMAT_VERSION:
            raise ValueError("not a version-1 sensync dynamics document")
        return cls(obj["n"], obj["rule"], np.array(obj["images"], dtype=np.uint16))

    def to_bytes(self) -> bytes:
        """Binary form: magic, version, n, rule, pad, then 2^n uint32 LE images."""
        header = BINARY_MAGIC + struct.pack("<BBBB", FORMAT_VERSION, self.n, self.rule, 0)
        return header + self.images.astype("<u4").tobytes()

    @classmethod
    def from_bytes(cls, data: bytes) -> "DynamicsMap":
        if data[:4] != BINARY_MAGIC:
            raise ValueError("bad magic")
        version, n, rule, _ = struct.unpack("<BBBB", data[4:8])
        if version != FORMAT_VERSION:
            raise ValueError(f"unsupported version {version}")
        images = np.frombuffer(data[8:], dtype="<u4")
        return cls(n, rule, images.astype(np.uint16))


def dynamics_map(rule, lab: ArcLabeling) -> DynamicsMap:
    h = as_rule(rule)
    check_enumerable(lab.n)
    if not is_valid(lab):
        raise ValueError(f"labeling {lab} is not valid")
    delta = realize(lab)
    images = evolve_batch(h, lab.n, stage_masks_of(delta)[None, :])[0]
    return DynamicsMap(lab.n, h.wolfram, images)


def schedule_map(rule, delta: OrderedPartition) -> DynamicsMap:
    """Dynamics map of an arbitrary (not necessarily canonical) schedule."""
    h = as_rule(rule)
    images = evolve_batch(h, delta.n, stage_masks_of(delta)[None, :])[0]
    return DynamicsMap(delta.n, h.wolfram, images)


# ---------------------------------------------------------------------------
# chains of influence


@dataclass(frozen=True)
class InfluenceSpan:
    d_left: tuple[int, ...]
    d_right: tuple[int, ...]
    d_set: tuple[frozenset[int], ...]

    @property
    def n(self) -> int:
        return len(self.d_left)

    def covers_ring(self, i: int) -> bool:
        return len(self.d_set[i]) == self.n


def _chain(lab: ArcLabeling, i: int, direction: int) -> int:
    # direction -1: arcs (i-j, i-j+1); direction +1: arcs (i+j, i+j-1)
    n = lab.n
    k = 1
    while lab.is_minus(i + direction * k, i + direction * (k - 1)):
        k += 1
        if k > n:
            raise ValueError(f"labeling {lab} has a forbidden cycle")
    return k


def influence_span(lab: ArcLabeling) -> InfluenceSpan:
    """Lengths of the ``-`` chains feeding each cell, and the cells they reach."""
    if not is_valid(lab):
        raise ValueError(f"labeling {lab} is not valid")
    n = lab.n
    left = tuple(_chain(lab, i, -1) for i in range(n))
    right = tuple(_chain(lab, i, +1) for i in range(n))
    dset = tuple(
        frozenset((i - a) % n for a in range(left[i] + 1))
        | frozenset((i + a) % n for a in range(right[i] + 1))
        for i in range(n)
    )
    return InfluenceSpan(left, right, dset)


def spans_from_dsets(d_set: Sequence[frozenset[int]], n: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Recover (d_left, d_right) from d_set, valid where d_set(i) is not the whole ring."""
    left, right = [], []
    for i, cells in enumerate(d_set):
        a = 0
        while (i - a - 1) % n in cells and a < n:
            a += 1
        b = 0
        while (i + b + 1) % n in cells and b < n:
            b += 1
        left.append(a)
        right.append(b)
    return tuple(left), tuple(right)


def labeling_from_spans(n: int, d_left: Sequence[int], d_right: Sequence[int]) -> ArcLabeling:
    """Rebuild the labeling from the chain lengths at every cell.

    Arc (i-1, i) is ``-`` iff d_left(i) > 1 and arc (i+1, i) is ``-`` iff
    d_right(i) > 1.
    """
    labels = {}
    for i in range(n):
        labels[((i - 1) % n, i)] = "-" if d_left[i] > 1 else "+"
        labels[((i + 1) % n, i)] = "-" if d_right[i] > 1 else "+"
    return ArcLabeling.from_labels(n, labels)


__all__ = [
    "DynamicsMap",
    "InfluenceSpan",
    "LocalRule",
    "dynamics_map",
    "dynamics_tables",
    "evolve_batch",
    "global_map",
    "influence_span",
    "labeling_from_spans",
    "schedule_map",
    "spans_from_dsets",
    "stage_masks_of",
    "step",
]
