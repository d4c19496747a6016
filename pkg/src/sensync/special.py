"""Special pairs: distinct valid labelings that induce the same dynamics.

Labelings are grouped by their exact image table in one sort, so the search
is linear in the number of labelings (up to the sort) rather than quadratic.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .dynamics import dynamics_tables, influence_span
from .rule import as_rule
from .schedule import ArcLabeling, check_enumerable, enumerate_valid_labelings
from .sensitivity import unique_rows


@dataclass(frozen=True)
class SpecialPair:
    lab_a: ArcLabeling
    lab_b: ArcLabeling
    rule: int
    differing_arcs: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self):
        if self.lab_a == self.lab_b:
            raise ValueError("a special pair needs two distinct labelings")
        a, b = sorted((self.lab_a, self.lab_b), key=lambda lab: lab.code)
        object.__setattr__(self, "lab_a", a)
        object.__setattr__(self, "lab_b", b)
        object.__setattr__(self, "differing_arcs", tuple(a.differing_arcs(b)))

    @property
    def codes(self) -> frozenset[int]:
        return frozenset((self.lab_a.code, self.lab_b.code))

    def to_dict(self) -> dict:
        return {
            "a": self.lab_a.to_hex(),
            "b": self.lab_b.to_hex(),
            "differing_arcs": [list(arc) for arc in self.differing_arcs],
        }


@dataclass(frozen=True)
class SpecialPairSearch:
    """Result of grouping all valid labelings of size n by their dynamics.

    ``pairs`` holds the dynamics classes of size exactly two; the
    ``class_sizes`` histogram (class size -> number of classes) covers the
    rest, e.g. the single huge class of an insensitive rule.
    """

    rule: int
    n: int
    num_labelings: int
    num_dynamics: int
    pairs: tuple[SpecialPair, ...]
    class_sizes: dict[int, int]

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    @property
    def disjoint(self) -> bool:
        """No labeling is special with two different partners."""
        return max(self.class_sizes) <= 2

    def to_json(self) -> str:
        return json.dumps(
            {
                "rule": self.rule,
                "n": self.n,
                "count": len(self.pairs),
                "num_labelings": self.num_labelings,
                "num_dynamics": self.num_dynamics,
                "disjoint": self.disjoint,
                "class_sizes": {str(k): v for k, v in sorted(self.class_sizes.items())},
                "pairs": [p.to_dict() for p in self.pairs],
            },
            indent=2,
        )


def find_special_pairs(rule, n: int) -> SpecialPairSearch:
    w = as_rule(rule).wolfram
    n = check_enumerable(n)
    codes, tables = dynamics_tables(w, n)
    ids = unique_rows(tables)
    order = np.argsort(ids, kind="stable")
    bounds = np.flatnonzero(np.diff(ids[order])) + 1
    groups = np.split(order, bounds)
    sizes = Counter(len(g) for g in groups)
    pairs = []
    for g in groups:
        if len(g) == 2:
            a, b = (ArcLabeling(n, int(codes[k])) for k in g)
            pairs.append(SpecialPair(a, b, w))
    pairs.sort(key=lambda p: (p.lab_a.code, p.lab_b.code))
    return SpecialPairSearch(w, n, len(codes), len(groups), tuple(pairs), dict(sizes))


def verify_closure(pairs, rule) -> bool:
    """Check that the pair set is closed under rotation, and under mirroring
    the ring when the rule is left/right symmetric."""
    pairs = list(pairs)
    if not pairs:
        return True
    keys = {p.codes for p in pairs}
    moves = [ArcLabeling.rotate]
    if as_rule(rule).is_symmetric():
        moves.append(ArcLabeling.reflect)
    for p in pairs:
        for move in moves:
            image = frozenset((move(p.lab_a).code, move(p.lab_b).code))
            if image not in keys:
                return False
    return True


# ---------------------------------------------------------------------------
# class II pattern counting

CLASS2_PATTERN_RULES = (28, 32, 44, 140)


def pattern_signature(rule, lab: ArcLabeling):
    """The labeling features that decide the dynamics of rules 28, 32, 44, 140.

    32: the cells whose two incoming arcs are both ``+`` (only they can
    output 1); 28 and 44: the labels of the arcs (i-1, i); 140: the labels of
    the arcs (i+1, i).
    """
    rep = as_rule(rule).wolfram
    n = lab.n
    if rep == 32:
        return frozenset(
            i for i in range(n)
            if not lab.is_minus(i + 1, i) and not lab.is_minus(i - 1, i)
        )
    if rep in (28, 44):
        return tuple(lab.is_minus(i - 1, i) for i in range(n))
    if rep == 140:
        return tuple(lab.is_minus(i + 1, i) for i in range(n))
    raise ValueError(f"rule {as_rule(rule).wolfram} is not one of {CLASS2_PATTERN_RULES}")


def count_pattern_dynamics_class2(rule, n: int) -> int:
    """Count distinct pattern signatures over all valid labelings.

    No dynamics are computed; this is the count predicted by the pattern
    argument, to be compared with the enumerated number of dynamics.
    """
    w = as_rule(rule).wolfram
    if w not in CLASS2_PATTERN_RULES:
        raise ValueError(f"rule {w} is not one of {CLASS2_PATTERN_RULES}")
    if n <= 3:
        raise ValueError("the pattern argument needs n > 3")
    return len({pattern_signature(w, lab) for lab in enumerate_valid_labelings(n)})


# ---------------------------------------------------------------------------
# chains of influence vs dynamics


def dset_characterization(rule, n: int) -> bool:
    """True iff, over all valid labelings, equal d_set <=> equal dynamics."""
    codes, tables = dynamics_tables(rule, n)
    dyn = unique_rows(tables)
    dsets = [influence_span(ArcLabeling(n, int(c))).d_set for c in codes]
    index = {d: k for k, d in enumerate(dict.fromkeys(dsets))}
    dk = np.array([index[d] for d in dsets])
    joint = len(set(zip(dk.tolist(), dyn.tolist())))
    return joint == len(index) == int(dyn.max()) + 1
