"""The lattice of antichains over a finite set, its intervals, and exact counting.

Subsets are int bitmasks (bit ``i-1`` holds element ``i``).  Counts are
Python ints, so they never overflow.
"""
from .core import (
    Antichain,
    LatticeError,
    PreconditionError,
    Universe,
    UsageError,
    direct_product,
    join,
    join_all,
    leq,
    max_ac,
    meet,
    parse_antichain,
    relabel,
    support,
)
from .counting import (
    LevelDecomposition,
    canonical_decomposition,
    count_poset,
    dedekind_levels,
    down,
    even_odd_terms,
    horizontal_interval,
    horizontal_poset,
    interval_size,
    layer_membership_interval,
    level,
    pivot_blocks,
    size_even_odd,
    size_multilevel,
    size_pivot,
    up,
)
from .decomp import (
    PartitionReport,
    dedekind_product,
    direct_join_factors,
    direct_join_split,
    largest_nondominating,
    partition_by_nondominating,
    partition_by_product,
    partition_interval_by_nondominating,
)
from .interval import (
    Interval,
    IntervalPoset,
    interval_from_poset,
    is_interval_poset,
    lift_interval,
    underlying_poset,
)
from .oracle import BudgetError, EnumerationBudget, enumerate_all, enumerate_interval, size_brute

__all__ = [name for name in dir() if not name.startswith("_")]
