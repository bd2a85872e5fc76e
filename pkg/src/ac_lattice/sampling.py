"""Random antichains and intervals for randomized checks."""
from __future__ import annotations

import random
from typing import Callable

from .core import Antichain, Universe, join, max_ac, meet
from .interval import Interval, IntervalPoset, underlying_poset


def random_antichain(universe: Universe, rng: random.Random, within: int | None = None,
                     density: float | None = None) -> Antichain:
    """maxAC of a random family of subsets of ``within`` (default: the whole universe).

    Empty families are drawn with small probability so that bottom shows up.
    """
    if within is None:
        within = universe.full
    if rng.random() < 0.05:
        return universe.bottom
    if density is None:
        density = rng.choice((0.05, 0.1, 0.2, 0.35, 0.5))
    subs = [x for x in range(universe.full + 1) if x & ~within == 0]
    family = [x for x in subs if rng.random() < density]
    if not family:
        family = [rng.choice(subs)]
    return max_ac(family, universe)


def random_interval(universe: Universe, rng: random.Random) -> Interval:
    """``[a & b, a | b]`` for two random antichains; never empty."""
    a = random_antichain(universe, rng)
    b = random_antichain(universe, rng)
    return Interval(meet(a, b), join(a, b))


def random_interval_where(universe: Universe, rng: random.Random,
                          accept: Callable[[Interval, IntervalPoset], bool], tries: int = 200) -> tuple[Interval, IntervalPoset] | None:
    """Redraw until ``accept(interval, poset)``.

    The full lattice is tried first and also serves as the fallback; if it is
    rejected, None is returned at once (the predicates used here are
    conditions on the level span, which the full lattice maximizes).
    """
    full = Interval.full(universe)
    full_poset = underlying_poset(full)
    if not accept(full, full_poset):
        return None
    for _ in range(tries):
        i = random_interval(universe, rng)
        p = underlying_poset(i)
        if accept(i, p):
            return i, p
    return full, full_poset


def random_member(i: Interval, rng: random.Random) -> Antichain:
    """A member of a nonempty interval: ``bottom | (x & top)`` for random ``x``."""
    x = random_antichain(i.universe, rng)
    return join(i.bottom, meet(x, i.top))


def random_sub(members, rng: random.Random, p: float = 0.5) -> list:
    return [x for x in members if rng.random() < p]
