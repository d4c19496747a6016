"""Elementary cellular automaton local rules.

A local rule is stored as its 8-entry truth table indexed by the
neighbourhood ``(left, center, right)`` read as a big-endian 3-bit number,
so ``table[4*l + 2*c + r]`` is the image of that neighbourhood.  With this
ordering the Wolfram number is simply ``sum(table[k] << k)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

TRANSFORMS = ("identity", "reflection", "negation", "reflected_negation")

# Smallest Wolfram number of each of the 88 classes, as tabulated in the
# literature.  ``classes()`` recomputes the list and checks against this.
TABLE_88 = (
    0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 18, 19, 22, 23,
    24, 25, 26, 27, 28, 29, 30, 32, 33, 34, 35, 36, 37, 38, 40, 41, 42, 43,
    44, 45, 46, 50, 51, 54, 56, 57, 58, 60, 62, 72, 73, 74, 76, 77, 78, 90,
    94, 104, 105, 106, 108, 110, 122, 126, 128, 130, 132, 134, 136, 138, 140,
    142, 146, 150, 152, 154, 156, 160, 162, 164, 168, 170, 172, 178, 184, 200,
    204, 232,
)


def _index(left: int, center: int, right: int) -> int:
    return (left << 2) | (center << 1) | right


def wolfram_of(table) -> int:
    """Wolfram number of an 8-entry truth table (``table[4l+2c+r]``)."""
    table = tuple(bool(b) for b in table)
    if len(table) != 8:
        raise ValueError("a truth table has exactly 8 entries")
    return sum(1 << k for k, bit in enumerate(table) if bit)


@dataclass(frozen=True)
class LocalRule:
    wolfram: int

    def __post_init__(self):
        if not 0 <= int(self.wolfram) <= 255:
            raise ValueError(f"Wolfram number must be in [0, 255], got {self.wolfram}")
        object.__setattr__(self, "wolfram", int(self.wolfram))

    @classmethod
    def from_table(cls, table) -> "LocalRule":
        return cls(wolfram_of(table))

    @classmethod
    def from_function(cls, h) -> "LocalRule":
        """Build a rule from a Python callable ``h(left, center, right) -> bit``."""
        table = [0] * 8
        for l, c, r in product((0, 1), repeat=3):
            table[_index(l, c, r)] = int(h(l, c, r)) & 1
        return cls.from_table(table)

    @property
    def table(self) -> tuple[bool, ...]:
        return tuple(bool((self.wolfram >> k) & 1) for k in range(8))

    def __call__(self, left: int, center: int, right: int) -> int:
        return (self.wolfram >> _index(left, center, right)) & 1

    def __int__(self) -> int:
        return self.wolfram

    def is_symmetric(self) -> bool:
        """True when the rule is invariant under left/right exchange."""
        return transform(self, "reflection") == self


def as_rule(rule) -> LocalRule:
    return rule if isinstance(rule, LocalRule) else LocalRule(int(rule))


def apply_local(rule, left: int, center: int, right: int) -> int:
    return as_rule(rule)(left, center, right)


def transform(rule, which: str) -> LocalRule:
    """Apply one of the four sensitivity-preserving rule symmetries.

    ``negation`` exchanges the two states, h -> 1 - h(1-x, 1-y, 1-z);
    ``reflected_negation`` is the composition of reflection and negation.
    """
    h = as_rule(rule)
    if which == "identity":
        return h
    if which == "reflection":
        return LocalRule.from_function(lambda x, y, z: h(z, y, x))
    if which == "negation":
        return LocalRule.from_function(lambda x, y, z: 1 - h(1 - x, 1 - y, 1 - z))
    if which == "reflected_negation":
        return LocalRule.from_function(lambda x, y, z: 1 - h(1 - z, 1 - y, 1 - x))
    raise ValueError(f"unknown transform {which!r}; expected one of {TRANSFORMS}")


def orbit(rule) -> frozenset[int]:
    """Wolfram numbers reachable from ``rule`` by the four transforms."""
    return frozenset(transform(rule, t).wolfram for t in TRANSFORMS)


def class_representative(rule) -> int:
    return min(orbit(rule))


def classes() -> dict[int, frozenset[int]]:
    """Map each class representative to its orbit, over all 256 rules."""
    out: dict[int, frozenset[int]] = {}
    for w in range(256):
        out.setdefault(class_representative(w), orbit(w))
    return dict(sorted(out.items()))
