"""Intervals ``[bottom, top]`` of antichains and their underlying posets."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .core import (
    Antichain,
    PreconditionError,
    Universe,
    UsageError,
    _same_universe,
    direct_product,
    dominated,
    format_set,
    join,
    leq,
    max_ac,
    meet,
    support,
)


@dataclass(frozen=True)
class Interval:
    """All antichains ``x`` with ``bottom <= x <= top``; empty when ``bottom`` is not below ``top``."""

    bottom: Antichain
    top: Antichain

    def __post_init__(self):
        _same_universe(self.bottom, self.top)

    @property
    def universe(self) -> Universe:
        return self.bottom.universe

    @property
    def is_empty(self) -> bool:
        return not leq(self.bottom, self.top)

    def __contains__(self, x: Antichain) -> bool:
        return leq(self.bottom, x) and leq(x, self.top)

    def __str__(self):
        return f"[{self.bottom}, {self.top}]"

    @classmethod
    def full(cls, universe: Universe) -> Interval:
        return cls(universe.bottom, universe.top)


@dataclass(frozen=True)
class IntervalPoset:
    """A convex family of subsets, stored level by level.

    ``sets`` is sorted by ``(size, mask)``.  ``m`` and ``M`` are the smallest
    and largest member sizes, ``None`` for the empty poset.
    """

    universe: Universe
    sets: tuple[int, ...]
    levels: dict[int, tuple[int, ...]] = field(compare=False, repr=False)

    @classmethod
    def from_sets(cls, universe: Universe, sets: Iterable[int]) -> IntervalPoset:
        ordered = tuple(sorted(set(sets), key=lambda x: (x.bit_count(), x)))
        levels: dict[int, list[int]] = {}
        for x in ordered:
            universe.check_mask(x)
            levels.setdefault(x.bit_count(), []).append(x)
        return cls(universe, ordered, {k: tuple(v) for k, v in levels.items()})

    @property
    def m(self) -> int | None:
        return self.sets[0].bit_count() if self.sets else None

    @property
    def M(self) -> int | None:
        return self.sets[-1].bit_count() if self.sets else None

    def level(self, size: int) -> tuple[int, ...]:
        return self.levels.get(size, ())

    def __contains__(self, bits: int) -> bool:
        return bits in self.levels.get(bits.bit_count(), ())

    def __len__(self):
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)

    def as_set(self) -> frozenset[int]:
        return frozenset(self.sets)

    def format_levels(self) -> list[str]:
        return [f"level {k}: " + ",".join(format_set(x) for x in self.levels[k])
                for k in sorted(self.levels)]


def _require_nonempty(i: Interval, what: str):
    if i.is_empty:
        raise PreconditionError(f"{what} needs bottom <= top, got the empty interval {i}")


def interval_intersect(i1: Interval, i2: Interval) -> Interval:
    return Interval(join(i1.bottom, i2.bottom), meet(i1.top, i2.top))


def clamp(i: Interval, x: Antichain) -> Antichain:
    """Project ``x`` into ``i`` by ``bottom | (x & top)``; a lattice homomorphism."""
    _require_nonempty(i, "clamp")
    return join(i.bottom, meet(x, i.top))


def pred(bits: int, universe: Universe) -> Antichain:
    """Immediate subsets of ``bits``; bottom for the empty set."""
    out = []
    rest = bits
    while rest:
        low = rest & -rest
        out.append(bits ^ low)
        rest ^= low
    return Antichain._trusted(universe, tuple(sorted(out)))


def _submasks(bits: int):
    sub = bits
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & bits


def underlying_poset(i: Interval) -> IntervalPoset:
    """Sets ``X`` with ``{X}`` not below ``bottom`` but below ``top``.

    Only subsets of the top's members are visited.
    """
    _require_nonempty(i, "underlying_poset")
    seen: set[int] = set()
    alpha = i.bottom
    for b in i.top.sets:
        for x in _submasks(b):
            if x not in seen:
                seen.add(x)
    return IntervalPoset.from_sets(i.universe, (x for x in seen if not dominated(x, alpha)))


def is_interval_poset(sets: Iterable[int]) -> bool:
    """Convexity: every ``C`` with ``A1 ⊆ C ⊆ A2`` for members ``A1, A2`` is a member."""
    members = set(sets)
    ordered = sorted(members, key=lambda x: x.bit_count())
    for a2 in ordered:
        for a1 in ordered:
            if a1.bit_count() >= a2.bit_count():
                break
            if a1 & ~a2:
                continue
            gap = a2 & ~a1
            for extra in _submasks(gap):
                if (a1 | extra) not in members:
                    return False
    return True


def interval_from_poset(poset: IntervalPoset | Iterable[int], universe: Universe | None = None) -> Interval:
    """The interval spanned by a convex family.

    bottom = join over members ``X`` of ``pred(X)`` minus the family;
    top = the maximal members.
    """
    if isinstance(poset, IntervalPoset):
        universe = poset.universe
        members = poset.as_set()
    else:
        if universe is None:
            raise UsageError("a universe is required when passing a plain family of sets")
        members = frozenset(universe.check_mask(x) for x in poset)
    if not is_interval_poset(members):
        raise PreconditionError("family is not convex, so it is not an interval poset")
    lower = []
    for x in members:
        rest = x
        while rest:
            low = rest & -rest
            y = x ^ low
            if y not in members:
                lower.append(y)
            rest ^= low
    return Interval(max_ac(lower, universe), max_ac(members, universe))


def strip_common(sets: Iterable[int]) -> tuple[set[int], int]:
    """Remove the intersection ``A`` of all members from each member.

    Returns the stripped family and ``A``.
    """
    members = list(sets)
    if not members:
        return set(), 0
    common = members[0]
    for x in members[1:]:
        common &= x
    return {x & ~common for x in members}, common


def lift_interval(chi_lo: Antichain, chi_hi: Antichain, a: int) -> Interval:
    """``[({a} ⊗ chi_lo) | (pred(a) ⊗ chi_hi), {a} ⊗ chi_hi]``, isomorphic to ``[chi_lo, chi_hi]``."""
    u = _same_universe(chi_lo, chi_hi)
    u.check_mask(a)
    if not leq(chi_lo, chi_hi):
        raise PreconditionError(f"lift needs chi_lo <= chi_hi, got {chi_lo} and {chi_hi}")
    if a == 0:
        raise PreconditionError("lift needs a nonempty set a")
    if a & support(chi_hi):
        raise PreconditionError(
            f"lift needs a disjoint from the support of chi_hi; both contain {format_set(a & support(chi_hi))}")
    single = Antichain._trusted(u, (a,))
    bottom = join(direct_product(single, chi_lo), direct_product(pred(a, u), chi_hi))
    return Interval(bottom, direct_product(single, chi_hi))


def spanning_part(i: Interval, gamma: Antichain) -> Antichain:
    """``gamma`` minus ``bottom``: the poset-drawn part that joins with ``bottom`` to ``gamma``."""
    return gamma.minus(i.bottom)


__all__ = [
    "Interval",
    "IntervalPoset",
    "clamp",
    "interval_from_poset",
    "interval_intersect",
    "is_interval_poset",
    "lift_interval",
    "pred",
    "spanning_part",
    "strip_common",
    "underlying_poset",
]
