"""Exact sensitivity to synchronism of elementary cellular automata under
block-sequential update schedules."""

from .dynamics import (
    DynamicsMap,
    InfluenceSpan,
    dynamics_map,
    dynamics_tables,
    influence_span,
    schedule_map,
    step,
)
from .oracle import cyclic_word_sum, enumerate_ordered_partitions, naive_dynamics_count
from .rule import LocalRule, apply_local, class_representative, classes, transform, wolfram_of
from .schedule import (
    ArcLabeling,
    OrderedPartition,
    enumerate_valid_labelings,
    equivalent,
    expected_count,
    is_valid,
    label_of,
    realize,
)
from .sensitivity import (
    NotCovered,
    SensitivityReport,
    classify,
    closed_form,
    count_distinct_dynamics,
    lucas_bisection,
    sensitivity,
)
from .special import (
    SpecialPair,
    count_pattern_dynamics_class2,
    find_special_pairs,
    verify_closure,
)
from .topology import InteractionDigraph, effective_arcs

__version__ = "0.1.0"
