"""Brute-force reference enumeration.

Everything here is deliberately naive.  Besides enumeration, antichains can
be mapped to their down-sets, encoded as a ``2**n``-bit int whose bit ``X``
is set when ``X`` lies below some member.  In that encoding the lattice order
is bit inclusion, join is ``|`` and meet is ``&``, which gives tests an
independent route to check the maxAC-based operations.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .core import Antichain, LatticeError, Universe
from .interval import Interval

HARD_MAX_N = 6


class BudgetError(LatticeError):
    """Enumeration request exceeds the configured budget."""


@dataclass(frozen=True)
class EnumerationBudget:
    max_n: int = 5
    max_items: int = 10_000_000

    def __post_init__(self):
        if self.max_n > HARD_MAX_N:
            raise BudgetError(f"full enumeration is capped at n={HARD_MAX_N}")

    def check(self, n: int):
        if n > self.max_n:
            raise BudgetError(f"n={n} exceeds the enumeration budget max_n={self.max_n}")


DEFAULT_BUDGET = EnumerationBudget()


def downset(a: Antichain) -> int:
    d = 0
    for x in range(1 << a.universe.n):
        for y in a.sets:
            if x & ~y == 0:
                d |= 1 << x
                break
    return d


def from_downset(d: int, universe: Universe) -> Antichain:
    """Maximal elements of a down-closed family given as a ``2**n``-bit int."""
    members = [x for x in range(1 << universe.n) if d >> x & 1]
    maximal = [x for x in members
               if not any(y != x and x & ~y == 0 for y in members)]
    return Antichain(universe, maximal)


def _extend(n: int, chosen: list[int], start: int) -> Iterator[tuple[int, ...]]:
    yield tuple(chosen)
    for x in range(start, 1 << n):
        # later masks are numerically larger, so they can only be supersets
        if all(c & ~x for c in chosen):
            chosen.append(x)
            yield from _extend(n, chosen, x + 1)
            chosen.pop()


def enumerate_all(n: int, budget: EnumerationBudget = DEFAULT_BUDGET) -> Iterator[Antichain]:
    """Every antichain on ``{1..n}`` once, in lexicographic order of member-mask tuples."""
    budget.check(n)
    u = Universe(n)
    for count, sets in enumerate(_extend(n, [], 0), 1):
        if count > budget.max_items:
            raise BudgetError(f"more than {budget.max_items} antichains")
        yield Antichain._trusted(u, sets)


@lru_cache(maxsize=None)
def _table(n: int) -> tuple[tuple[Antichain, int], ...]:
    return tuple((a, downset(a)) for a in enumerate_all(n, EnumerationBudget(max_n=5)))


def all_with_downsets(n: int, budget: EnumerationBudget = DEFAULT_BUDGET) -> tuple[tuple[Antichain, int], ...]:
    """Cached ``(antichain, down-set)`` pairs for all of the lattice on ``n`` elements."""
    budget.check(n)
    if n > 5:
        raise BudgetError("down-set tables are only cached up to n=5")
    return _table(n)


def enumerate_interval(i: Interval, budget: EnumerationBudget = DEFAULT_BUDGET) -> Iterator[Antichain]:
    n = i.universe.n
    budget.check(n)
    if n <= 5:
        lo, hi = downset(i.bottom), downset(i.top)
        for a, d in _table(n):
            if lo & ~d == 0 and d & ~hi == 0:
                yield a
        return
    for a in enumerate_all(n, budget):
        if a in i:
            yield a


def size_brute(i: Interval, budget: EnumerationBudget = DEFAULT_BUDGET) -> int:
    return sum(1 for _ in enumerate_interval(i, budget))
