"""Uniform levels, the canonical level decomposition and interval sizes.

Inside one interval poset every uniform antichain ``chi`` at level ``l`` is a
subset of that level, so it is handled as a bitmask over the level's members
(member ``j`` of level ``l`` is bit ``j``).  ``down`` collects in-poset
immediate subsets; ``up`` collects next-level members whose in-poset immediate
subsets all lie in ``chi``.

Sizes are exact Python ints.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from .core import Antichain, PreconditionError, Universe, UsageError, join, join_all
from .interval import Interval, IntervalPoset, underlying_poset

FORMULA_I = "i"
FORMULA_II = "ii"
_PARITY_ALIASES = {"i": FORMULA_I, "even": FORMULA_I, "ii": FORMULA_II, "odd": FORMULA_II}


class LevelStructure:
    """Bitmask view of an interval poset: per-level members and in-poset predecessor masks."""

    def __init__(self, poset: IntervalPoset):
        self.poset = poset
        self.universe = poset.universe
        self.m = poset.m
        self.M = poset.M
        self.members: dict[int, tuple[int, ...]] = {}
        self.index: dict[int, dict[int, int]] = {}
        self.below: dict[int, tuple[int, ...]] = {}
        if self.m is None:
            return
        for lv in range(self.m - 1, self.M + 2):
            mem = poset.level(lv)
            self.members[lv] = mem
            self.index[lv] = {x: j for j, x in enumerate(mem)}
        for lv in range(self.m, self.M + 1):
            lower = self.index[lv - 1]
            masks = []
            for x in self.members[lv]:
                bits = 0
                rest = x
                while rest:
                    low = rest & -rest
                    j = lower.get(x ^ low)
                    if j is not None:
                        bits |= 1 << j
                    rest ^= low
                masks.append(bits)
            self.below[lv] = tuple(masks)
        self.below[self.m - 1] = ()
        self.below[self.M + 1] = ()

    def size(self, lv: int) -> int:
        return len(self.members.get(lv, ()))

    def full(self, lv: int) -> int:
        return (1 << self.size(lv)) - 1

    def down(self, lv: int, bits: int) -> int:
        """Predecessor mask at level ``lv - 1`` of ``bits`` at level ``lv``."""
        below = self.below.get(lv, ())
        out = 0
        j = 0
        while bits:
            if bits & 1:
                out |= below[j]
            bits >>= 1
            j += 1
        return out

    def up(self, lv: int, bits: int) -> int:
        """Successor mask at level ``lv + 1`` of ``bits`` at level ``lv``."""
        out = 0
        for j, b in enumerate(self.below.get(lv + 1, ())):
            if b & ~bits == 0:
                out |= 1 << j
        return out

    def up_count(self, lv: int, bits: int) -> int:
        n = 0
        for b in self.below.get(lv + 1, ()):
            if b & ~bits == 0:
                n += 1
        return n

    def to_bits(self, lv: int, chi: Antichain) -> int:
        idx = self.index.get(lv, {})
        bits = 0
        for x in chi.sets:
            j = idx.get(x)
            if j is None:
                raise PreconditionError(f"{chi} is not inside level {lv} of the poset")
            bits |= 1 << j
        return bits

    def to_antichain(self, lv: int, bits: int) -> Antichain:
        mem = self.members.get(lv, ())
        out = []
        j = 0
        while bits:
            if bits & 1:
                out.append(mem[j])
            bits >>= 1
            j += 1
        return Antichain._trusted(self.universe, tuple(sorted(out)))


def _submasks_ascending(free: int) -> Iterator[int]:
    s = 0
    while True:
        yield s
        if s == free:
            return
        s = (s - free) & free


def _uniform_level(chi: Antichain) -> int | None:
    sizes = {x.bit_count() for x in chi.sets}
    if len(sizes) > 1:
        raise PreconditionError(f"{chi} is not uniform")
    return sizes.pop() if sizes else None


def _poset_of(p: IntervalPoset | Interval) -> IntervalPoset:
    return underlying_poset(p) if isinstance(p, Interval) else p


def level(p: IntervalPoset | Interval, lv: int) -> Antichain:
    """All poset members of size ``lv``."""
    p = _poset_of(p)
    return Antichain._trusted(p.universe, tuple(sorted(p.level(lv))))


def down(chi: Antichain, p: IntervalPoset | Interval) -> Antichain:
    """In-poset immediate subsets of a uniform antichain inside the poset."""
    p = _poset_of(p)
    lv = _uniform_level(chi)
    if lv is None:
        return chi
    ls = LevelStructure(p)
    return ls.to_antichain(lv - 1, ls.down(lv, ls.to_bits(lv, chi)))


def up(chi: Antichain, p: IntervalPoset | Interval, lv: int | None = None) -> Antichain:
    """Next-level members all of whose in-poset immediate subsets lie in ``chi``.

    The level of an empty ``chi`` must be passed as ``lv``, except when the
    poset contains the empty set; then bottom sits one level below it and
    maps to ``{{}}``.
    """
    p = _poset_of(p)
    found = _uniform_level(chi)
    if found is None:
        if lv is None:
            if p.m != 0:
                raise UsageError("the level of an empty antichain is ambiguous; pass lv")
            lv = -1
    elif lv is not None and lv != found:
        raise PreconditionError(f"{chi} lies on level {found}, not {lv}")
    else:
        lv = found
    ls = LevelStructure(p)
    if ls.m is None:
        return p.universe.bottom
    return ls.to_antichain(lv + 1, ls.up(lv, ls.to_bits(lv, chi)))


def up_iter(chi: Antichain, p: IntervalPoset | Interval, times: int, lv: int | None = None) -> Antichain:
    """``up`` applied ``times`` times."""
    p = _poset_of(p)
    found = _uniform_level(chi)
    if found is not None:
        lv = found
    elif lv is None:
        if p.m != 0:
            raise UsageError("the level of an empty antichain is ambiguous; pass lv")
        lv = -1
    for _ in range(times):
        chi = up(chi, p, lv)
        lv += 1
    return chi


def down_iter(chi: Antichain, p: IntervalPoset | Interval, times: int) -> Antichain:
    p = _poset_of(p)
    for _ in range(times):
        chi = down(chi, p)
    return chi


@dataclass(frozen=True)
class LevelDecomposition:
    """``chi = alpha | layers[0] | ... | layers[-1]`` with layer ``j`` on level ``m + j``."""

    alpha: Antichain
    m: int | None
    layers: tuple[Antichain, ...]

    @property
    def M(self) -> int | None:
        return None if self.m is None else self.m + len(self.layers) - 1

    def layer(self, lv: int) -> Antichain:
        if self.m is None or not self.m <= lv <= self.M:
            return self.alpha.universe.bottom
        return self.layers[lv - self.m]

    def recombine(self) -> Antichain:
        return join_all((self.alpha, *self.layers), self.alpha.universe)

    def __str__(self):
        if self.m is None:
            return ""
        return " ".join(f"{self.m + j}:{c}" for j, c in enumerate(self.layers))


def canonical_decomposition(i: Interval, chi: Antichain) -> LevelDecomposition:
    """The unique layering whose layers each contain the predecessors of the next.

    Built top-down: the top layer is ``(chi - alpha)`` on level ``M``; each
    lower layer adds the in-poset predecessors of the layer above.
    """
    if chi not in i:
        raise PreconditionError(f"{chi} is not in {i}")
    poset = underlying_poset(i)
    ls = LevelStructure(poset)
    if ls.m is None:
        return LevelDecomposition(i.bottom, None, ())
    rest = chi.minus(i.bottom)
    by_level: dict[int, list[int]] = {}
    for x in rest.sets:
        by_level.setdefault(x.bit_count(), []).append(x)
    layers = []
    carried = 0
    for lv in range(ls.M, ls.m - 1, -1):
        own = Antichain._trusted(chi.universe, tuple(by_level.get(lv, ())))
        bits = ls.to_bits(lv, own) | carried
        layers.append(ls.to_antichain(lv, bits))
        carried = ls.down(lv, bits)
    layers.reverse()
    return LevelDecomposition(i.bottom, ls.m, tuple(layers))


# -- even/odd level counting -------------------------------------------------


def summed_levels(ls: LevelStructure, parity: str) -> list[int]:
    start = ls.M if parity == FORMULA_I else ls.M - 1
    return list(range(start, ls.m - 1, -2))


def choose_parity(ls: LevelStructure) -> str:
    """Pick the formula whose summed levels avoid the widest level."""
    if ls.m is None or ls.M == ls.m:
        return FORMULA_I
    cost = {p: sum(1 << ls.size(lv) for lv in summed_levels(ls, p)) for p in (FORMULA_I, FORMULA_II)}
    return FORMULA_II if cost[FORMULA_II] < cost[FORMULA_I] else FORMULA_I


class _EvenOddCounter:
    """Memoized count of lower layers given a fixed layer (keyed by level and layer mask)."""

    def __init__(self, ls: LevelStructure):
        self.ls = ls
        self.cache: dict[tuple[int, int], int] = {}

    def below_count(self, lv: int, bits: int) -> int:
        ls = self.ls
        if lv == ls.m:
            return 1
        if lv == ls.m + 1:
            return 1 << (ls.size(ls.m) - ls.down(lv, bits).bit_count())
        key = (lv, bits)
        hit = self.cache.get(key)
        if hit is not None:
            return hit
        d = ls.down(lv, bits)
        core = ls.down(lv - 1, d)
        free = ls.full(lv - 2) & ~core
        dcount = d.bit_count()
        total = 0
        for s in _submasks_ascending(free):
            c = core | s
            total += self.below_count(lv - 2, c) << (ls.up_count(lv - 2, c) - dcount)
        self.cache[key] = total
        return total

    def top_term(self, parity: str, bits: int) -> int:
        ls = self.ls
        if parity == FORMULA_I:
            return self.below_count(ls.M, bits)
        return self.below_count(ls.M - 1, bits) << ls.up_count(ls.M - 1, bits)


def _top_level(ls: LevelStructure, parity: str) -> int:
    return ls.M if parity == FORMULA_I else ls.M - 1


def _partial_sum(poset: IntervalPoset, parity: str, lo: int, hi: int) -> int:
    ls = LevelStructure(poset)
    counter = _EvenOddCounter(ls)
    return sum(counter.top_term(parity, bits) for bits in range(lo, hi))


def _workers(workers: int | None) -> int:
    if workers is None:
        workers = int(os.environ.get("AC_LATTICE_THREADS", "1") or 1)
    return max(1, workers)


def count_poset(poset: IntervalPoset, parity: str = "auto", workers: int | None = 1) -> int:
    """Number of antichains in the interval spanned by ``poset``."""
    ls = LevelStructure(poset)
    if ls.m is None:
        return 1
    if ls.M == ls.m:
        return 1 << ls.size(ls.m)
    parity = choose_parity(ls) if parity == "auto" else _PARITY_ALIASES.get(parity, parity)
    if parity not in (FORMULA_I, FORMULA_II):
        raise UsageError(f"unknown parity {parity!r}; use i/even, ii/odd or auto")
    n_top = 1 << ls.size(_top_level(ls, parity))
    workers = min(_workers(workers), n_top)
    if workers == 1:
        return _partial_sum(poset, parity, 0, n_top)
    step = -(-n_top // (workers * 4))
    bounds = [(lo, min(lo + step, n_top)) for lo in range(0, n_top, step)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(_partial_sum, *zip(*[(poset, parity, lo, hi) for lo, hi in bounds]))
        return sum(parts)


def size_even_odd(i: Interval, parity: str = "auto", workers: int | None = 1) -> int:
    """Interval size by summing every other level, closed-form powers of two in between.

    ``parity`` is ``"i"``/``"even"`` (sum from the top level down),
    ``"ii"``/``"odd"`` (sum from the level below the top) or ``"auto"``.
    """
    if i.is_empty:
        return 0
    return count_poset(underlying_poset(i), parity, workers)


def even_odd_terms(i: Interval, parity: str = FORMULA_I) -> Iterator[tuple[dict[int, Antichain], int]]:
    """Fully expanded terms of the even/odd sum, in enumeration order.

    Each item is ``(chosen layers by level, weight)``; the weights add up to
    the interval size.  Exponential; meant for inspection on small intervals.
    """
    if i.is_empty:
        return
    ls = LevelStructure(underlying_poset(i))
    if ls.m is None:
        yield {}, 1
        return
    if ls.M == ls.m:
        yield {}, 1 << ls.size(ls.m)
        return
    parity = _PARITY_ALIASES.get(parity, parity)
    top = _top_level(ls, parity)

    def walk(lv, bits, chosen, weight):
        chosen = {**chosen, lv: ls.to_antichain(lv, bits)}
        if lv == ls.m:
            yield chosen, weight
            return
        if lv == ls.m + 1:
            yield chosen, weight << (ls.size(ls.m) - ls.down(lv, bits).bit_count())
            return
        d = ls.down(lv, bits)
        core = ls.down(lv - 1, d)
        for s in _submasks_ascending(ls.full(lv - 2) & ~core):
            c = core | s
            yield from walk(lv - 2, c, chosen, weight << (ls.up_count(lv - 2, c) - d.bit_count()))

    for bits in range(1 << ls.size(top)):
        lead = 1 if parity == FORMULA_I else 1 << ls.up_count(top, bits)
        yield from walk(top, bits, {}, lead)


# -- pivot and multilevel sums ----------------------------------------------


def _check_inner(ls: LevelStructure, k: int):
    if ls.m is None or not ls.m < k < ls.M:
        raise UsageError(f"pivot level {k} must satisfy m < k < M (m={ls.m}, M={ls.M})")


def _upper_top(ls: LevelStructure, bottom: Antichain, lv: int, bits: int) -> Antichain:
    parts = [bottom, ls.to_antichain(lv, bits)]
    for step in range(lv, ls.M):
        bits = ls.up(step, bits)
        parts.append(ls.to_antichain(step + 1, bits))
    return join_all(parts, bottom.universe)


def _lower_top(ls: LevelStructure, bottom: Antichain, k: int, bits: int) -> Antichain:
    parts = [bottom, ls.to_antichain(k, bits)]
    parts.extend(ls.to_antichain(lv, ls.full(lv)) for lv in range(ls.m, k))
    return join_all(parts, bottom.universe)


def layer_membership_interval(i: Interval, k: int, rho: Antichain) -> Interval:
    """Members of ``i`` whose canonical layer on level ``k`` equals ``rho``."""
    ls = LevelStructure(underlying_poset(i))
    _check_inner(ls, k)
    bits = ls.to_bits(k, rho)
    bottom = join(i.bottom, rho)
    top = join(_lower_top(ls, bottom, k, bits), _upper_top(ls, bottom, k, bits))
    return Interval(bottom, top)


def pivot_blocks(i: Interval, k: int) -> Iterator[tuple[Antichain, Interval, Interval]]:
    """``(rho, lower block, upper block)`` for every ``rho`` inside level ``k``."""
    ls = LevelStructure(underlying_poset(i))
    _check_inner(ls, k)
    for bits in range(1 << ls.size(k)):
        rho = ls.to_antichain(k, bits)
        bottom = join(i.bottom, rho)
        yield rho, Interval(bottom, _lower_top(ls, bottom, k, bits)), Interval(bottom, _upper_top(ls, bottom, k, bits))


def size_pivot(i: Interval, k: int) -> int:
    """Sum over layers ``rho`` on level ``k`` of |lower block| * |upper block|."""
    if i.is_empty:
        return 0
    total = 0
    for _, lower, upper in pivot_blocks(i, k):
        total += size_even_odd(lower) * size_even_odd(upper)
    return total


def _check_levels(ls: LevelStructure, ks: Sequence[int]):
    if not ks:
        raise UsageError("multilevel sum needs at least one level")
    if any(b <= a for a, b in zip(ks, ks[1:])):
        raise UsageError(f"levels must be strictly ascending, got {list(ks)}")
    _check_inner(ls, ks[0])
    _check_inner(ls, ks[-1])


def _horizontal_bits(ls: LevelStructure, k_prev: int, prev_bits: int, k_last: int, last_bits: int) -> dict[int, int]:
    """Per-level poset masks of the horizontal block between two fixed layers."""
    ups = {k_prev: prev_bits}
    for lv in range(k_prev, k_last - 1):
        ups[lv + 1] = ls.up(lv, ups[lv])
    downs = {k_last: last_bits}
    for lv in range(k_last, k_prev + 1, -1):
        downs[lv - 1] = ls.down(lv, downs[lv])
    return {lv: ups[lv] & ~downs[lv] for lv in range(k_prev + 1, k_last)}


def horizontal_interval(chis: Mapping[int, Antichain], i: Interval) -> Interval:
    """The block between the last two fixed layers, built from its endpoints."""
    ks = sorted(chis)
    if len(ks) < 2:
        raise UsageError("need at least two fixed layers")
    ls = LevelStructure(underlying_poset(i))
    _check_consistent(ls, chis, ks)
    bottom = join_all([i.bottom, *(chis[k] for k in ks)], i.universe)
    k_prev, k_last = ks[-2], ks[-1]
    bits = ls.to_bits(k_prev, chis[k_prev])
    parts = [bottom]
    for lv in range(k_prev, k_last - 1):
        bits = ls.up(lv, bits)
        parts.append(ls.to_antichain(lv + 1, bits))
    return Interval(bottom, join_all(parts, i.universe))


def _check_consistent(ls: LevelStructure, chis: Mapping[int, Antichain], ks: list[int]):
    _check_levels(ls, ks)
    for a, b in zip(ks, ks[1:]):
        reach = ls.to_bits(a, chis[a])
        for lv in range(a, b):
            reach = ls.up(lv, reach)
        if ls.to_bits(b, chis[b]) & ~reach:
            raise PreconditionError(f"layer on level {b} is not inside the iterated up-set of level {a}")


def horizontal_poset(chis: Mapping[int, Antichain], i: Interval) -> IntervalPoset:
    """Closed-form poset of the block between the last two fixed layers.

    Level ``k`` strictly between them holds the ``k``-level up-set of the
    lower layer minus the ``k``-level down-set of the upper layer.
    """
    ks = sorted(chis)
    if len(ks) < 2:
        raise UsageError("need at least two fixed layers")
    ls = LevelStructure(underlying_poset(i))
    _check_consistent(ls, chis, ks)
    k_prev, k_last = ks[-2], ks[-1]
    per = _horizontal_bits(ls, k_prev, ls.to_bits(k_prev, chis[k_prev]), k_last, ls.to_bits(k_last, chis[k_last]))
    sets = []
    for lv, bits in per.items():
        sets.extend(ls.to_antichain(lv, bits).sets)
    return IntervalPoset.from_sets(i.universe, sets)


def size_multilevel(i: Interval, ks: Sequence[int]) -> int:
    """Nested sum over layers on levels ``ks``.

    The first layer ranges over its whole level and contributes the size of
    its lower block; each later layer ranges over the iterated up-set of the
    previous one and contributes its horizontal block; the last layer also
    contributes its upper block.
    """
    if i.is_empty:
        return 0
    ks = list(ks)
    ls = LevelStructure(underlying_poset(i))
    _check_levels(ls, ks)
    u = i.universe

    def horizontal_size(k_prev, prev_bits, k_last, last_bits):
        per = _horizontal_bits(ls, k_prev, prev_bits, k_last, last_bits)
        sets = []
        for lv, bits in per.items():
            sets.extend(ls.to_antichain(lv, bits).sets)
        return count_poset(IntervalPoset.from_sets(u, sets))

    def inner(bottom, k_prev, prev_bits, rest):
        if not rest:
            return size_even_odd(Interval(bottom, _upper_top(ls, bottom, k_prev, prev_bits)))
        k = rest[0]
        reach = prev_bits
        for lv in range(k_prev, k):
            reach = ls.up(lv, reach)
        total = 0
        for bits in _submasks_ascending(reach):
            h = horizontal_size(k_prev, prev_bits, k, bits)
            total += h * inner(join(bottom, ls.to_antichain(k, bits)), k, bits, rest[1:])
        return total

    k1 = ks[0]
    total = 0
    for bits in range(1 << ls.size(k1)):
        bottom = join(i.bottom, ls.to_antichain(k1, bits))
        b = size_even_odd(Interval(bottom, _lower_top(ls, bottom, k1, bits)))
        total += b * inner(bottom, k1, bits, ks[1:])
    return total


# -- dispatch ----------------------------------------------------------------


def parse_method(method: str) -> tuple[str, tuple[int, ...]]:
    """``brute | even | odd | i | ii | auto | pivot:k | multi:k1,k2,...``."""
    name, _, arg = method.partition(":")
    if name in ("brute", "auto") or name in _PARITY_ALIASES:
        if arg:
            raise UsageError(f"method {name!r} takes no argument")
        return name, ()
    if name in ("pivot", "multi"):
        try:
            ks = tuple(int(t) for t in arg.split(",")) if arg else ()
        except ValueError:
            raise UsageError(f"bad level list in method {method!r}") from None
        if not ks or (name == "pivot" and len(ks) != 1):
            raise UsageError(f"method {method!r} needs {'one level' if name == 'pivot' else 'levels'}")
        return name, ks
    raise UsageError(f"unknown method {method!r}")


def interval_size(i: Interval, method: str = "auto", workers: int | None = 1) -> int:
    name, ks = parse_method(method)
    if name == "brute":
        from .oracle import size_brute
        return size_brute(i)
    if name == "pivot":
        return 0 if i.is_empty else size_pivot(i, ks[0])
    if name == "multi":
        return size_multilevel(i, ks)
    return size_even_odd(i, name, workers)


def dedekind_levels(n: int, workers: int | None = 1) -> int:
    return size_even_odd(Interval.full(Universe(n)), "auto", workers)


__all__ = [
    "FORMULA_I",
    "FORMULA_II",
    "LevelDecomposition",
    "LevelStructure",
    "canonical_decomposition",
    "choose_parity",
    "count_poset",
    "dedekind_levels",
    "down",
    "down_iter",
    "even_odd_terms",
    "horizontal_interval",
    "horizontal_poset",
    "interval_size",
    "layer_membership_interval",
    "level",
    "parse_method",
    "pivot_blocks",
    "size_even_odd",
    "size_multilevel",
    "size_pivot",
    "up",
    "up_iter",
]
