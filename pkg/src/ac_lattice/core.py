"""Subsets of a finite universe, antichains and the antichain lattice.

A subset of ``N = {1..n}`` is stored as an ``int`` bitmask (bit ``i-1`` set
means element ``i`` is present).  An :class:`Antichain` keeps its member masks
as a tuple sorted by mask value, so two antichains are equal exactly when they
hold the same sets.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

MAX_N = 64


class LatticeError(ValueError):
    """Base class for all errors raised by this package."""


class UsageError(LatticeError):
    """Malformed input: bad text, mixed universes, invalid arguments."""


class PreconditionError(LatticeError):
    """Well-formed input that violates an operation's precondition."""


@dataclass(frozen=True)
class Universe:
    """The ground set ``{1, ..., n}``."""

    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or not 0 <= self.n <= MAX_N:
            raise UsageError(f"universe size must be an int in 0..{MAX_N}, got {self.n!r}")

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def mask(self, elements: Iterable[int]) -> int:
        bits = 0
        for e in elements:
            if not 1 <= e <= self.n:
                raise UsageError(f"element {e} outside 1..{self.n}")
            bits |= 1 << (e - 1)
        return bits

    def check_mask(self, bits: int) -> int:
        if bits < 0 or bits >> self.n:
            raise UsageError(f"mask {bits:#x} has bits outside a universe of size {self.n}")
        return bits

    @property
    def bottom(self) -> Antichain:
        return Antichain._trusted(self, ())

    @property
    def top(self) -> Antichain:
        return Antichain._trusted(self, (self.full,))

    def antichain(self, sets: Iterable[Iterable[int]]) -> Antichain:
        """Build an antichain from element lists, e.g. ``U.antichain([[1], [2, 3]])``."""
        return Antichain(self, (self.mask(s) for s in sets))

    def parse(self, text: str) -> Antichain:
        return parse_antichain(text, self)


def elements(bits: int) -> list[int]:
    """Elements of a mask in ascending order (1-based)."""
    out = []
    i = 1
    while bits:
        if bits & 1:
            out.append(i)
        bits >>= 1
        i += 1
    return out


def format_set(bits: int) -> str:
    return "{" + ",".join(map(str, elements(bits))) + "}"


def is_subset(x: int, y: int) -> bool:
    return x & ~y == 0


class Antichain:
    """A finite set of pairwise incomparable subsets of a universe.

    Supports ``<=`` (lattice order), ``|`` (join) and ``&`` (meet).  The empty
    antichain (bottom) and the antichain holding only the empty set are
    different values.
    """

    __slots__ = ("universe", "sets", "_hash")

    def __init__(self, universe: Universe, sets: Iterable[int] = ()):
        masks = sorted(set(universe.check_mask(s) for s in sets))
        for i, x in enumerate(masks):
            for y in masks[i + 1:]:
                # y > x numerically, so only x ⊂ y is possible
                if x & ~y == 0:
                    raise PreconditionError(
                        f"not an antichain: {format_set(x)} is a proper subset of {format_set(y)}")
        self.universe = universe
        self.sets = tuple(masks)
        self._hash = None

    @classmethod
    def _trusted(cls, universe: Universe, sets: tuple[int, ...]) -> Antichain:
        # caller guarantees: sorted, distinct, pairwise incomparable, in range
        obj = object.__new__(cls)
        obj.universe = universe
        obj.sets = sets
        obj._hash = None
        return obj

    def __iter__(self) -> Iterator[int]:
        return iter(self.sets)

    def __len__(self) -> int:
        return len(self.sets)

    def __contains__(self, bits: int) -> bool:
        return bits in self.sets

    def __bool__(self) -> bool:
        return bool(self.sets)

    def __eq__(self, other):
        if not isinstance(other, Antichain):
            return NotImplemented
        return self.universe == other.universe and self.sets == other.sets

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.universe.n, self.sets))
        return self._hash

    def __le__(self, other: Antichain) -> bool:
        return leq(self, other)

    def __ge__(self, other: Antichain) -> bool:
        return leq(other, self)

    def __or__(self, other: Antichain) -> Antichain:
        return join(self, other)

    def __and__(self, other: Antichain) -> Antichain:
        return meet(self, other)

    def __str__(self) -> str:
        return "{" + ",".join(format_set(s) for s in self.sets) + "}"

    def __repr__(self) -> str:
        return f"Antichain(n={self.universe.n}, {self})"

    # member-wise set algebra (not the lattice operations)
    def members_subset(self, other: Antichain) -> bool:
        return set(self.sets) <= set(other.sets)

    def minus(self, other: Antichain) -> Antichain:
        _same_universe(self, other)
        drop = set(other.sets)
        return Antichain._trusted(self.universe, tuple(s for s in self.sets if s not in drop))

    def intersection(self, other: Antichain) -> Antichain:
        _same_universe(self, other)
        keep = set(other.sets)
        return Antichain._trusted(self.universe, tuple(s for s in self.sets if s in keep))

    def union_uniform(self, other: Antichain) -> Antichain:
        """Member-wise union; both operands must be uniform of the same level."""
        _same_universe(self, other)
        return Antichain._trusted(self.universe, tuple(sorted(set(self.sets) | set(other.sets))))


def _same_universe(*acs: Antichain) -> Universe:
    u = acs[0].universe
    for a in acs[1:]:
        if a.universe != u:
            raise UsageError(f"mixed universes: n={u.n} and n={a.universe.n}")
    return u


def max_ac(family: Iterable[int], universe: Universe) -> Antichain:
    """Drop every set that is a proper subset of another member of ``family``."""
    masks = sorted(set(family), key=lambda x: (-x.bit_count(), x))
    kept: list[int] = []
    for x in masks:
        for y in kept:
            if x & ~y == 0:
                break
        else:
            kept.append(x)
    for x in kept:
        universe.check_mask(x)
    kept.sort()
    return Antichain._trusted(universe, tuple(kept))


def dominated(x: int, a: Antichain) -> bool:
    """True iff ``{x} <= a``, i.e. ``x`` is contained in some member of ``a``."""
    for y in a.sets:
        if x & ~y == 0:
            return True
    return False


def leq(a: Antichain, b: Antichain) -> bool:
    _same_universe(a, b)
    bs = b.sets
    for x in a.sets:
        for y in bs:
            if x & ~y == 0:
                break
        else:
            return False
    return True


def join(a: Antichain, b: Antichain) -> Antichain:
    u = _same_universe(a, b)
    if not a.sets:
        return b
    if not b.sets:
        return a
    return max_ac(a.sets + b.sets, u)


def meet(a: Antichain, b: Antichain) -> Antichain:
    u = _same_universe(a, b)
    return max_ac((x & y for x in a.sets for y in b.sets), u)


def join_all(items: Iterable[Antichain], universe: Universe) -> Antichain:
    family: list[int] = []
    for a in items:
        _same_universe(universe.bottom, a)
        family.extend(a.sets)
    return max_ac(family, universe)


def support(a: Antichain) -> int:
    bits = 0
    for x in a.sets:
        bits |= x
    return bits


def direct_product(a: Antichain, b: Antichain) -> Antichain:
    """All unions ``A | B``; the supports of ``a`` and ``b`` must be disjoint."""
    u = _same_universe(a, b)
    overlap = support(a) & support(b)
    if overlap:
        raise PreconditionError(f"direct product needs disjoint supports; both contain {format_set(overlap)}")
    return Antichain._trusted(u, tuple(sorted(x | y for x in a.sets for y in b.sets)))


def relabel(a: Antichain, perm: Sequence[int]) -> Antichain:
    """Rename elements: element ``i`` becomes ``perm[i-1]``."""
    n = a.universe.n
    if len(perm) != n or sorted(perm) != list(range(1, n + 1)):
        raise UsageError(f"not a permutation of 1..{n}: {list(perm)}")
    out = []
    for x in a.sets:
        y = 0
        for e in elements(x):
            y |= 1 << (perm[e - 1] - 1)
        out.append(y)
    return Antichain._trusted(a.universe, tuple(sorted(out)))


_TOKEN = re.compile(r"\s*(?:(\{)|(\})|(,)|(\d+)|(\S))")


def parse_antichain(text: str, universe: Universe, from_family: bool = False) -> Antichain:
    """Parse ``{{1},{2,3}}``-style text.

    ``"{}"`` is bottom and ``"{{}}"`` is the antichain holding only the empty
    set.  Comparable sets raise :class:`PreconditionError` unless
    ``from_family`` is set, in which case maximal sets are kept.
    """
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace is left
            break
        if m.group(5) is not None:
            raise UsageError(f"unexpected character {m.group(5)!r} at position {m.start(5)}")
        kind = next(i for i in range(1, 5) if m.group(i) is not None)
        toks.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    toks.append((0, "", len(text)))
    i = 0

    def expect(kind, what):
        nonlocal i
        k, val, p = toks[i]
        if k != kind:
            got = repr(val) if val else "end of input"
            raise UsageError(f"expected {what} at position {p}, got {got}")
        i += 1
        return val, p

    def read_set():
        nonlocal i
        expect(1, "'{'")
        elems = []
        if toks[i][0] == 2:
            i += 1
            return elems
        while True:
            val, p = expect(4, "an element")
            e = int(val)
            if not 1 <= e <= universe.n:
                raise UsageError(f"element {e} at position {p} outside 1..{universe.n}")
            elems.append(e)
            if toks[i][0] == 3:
                i += 1
                continue
            expect(2, "',' or '}'")
            return elems

    expect(1, "'{'")
    family = []
    if toks[i][0] == 2:
        i += 1
    else:
        while True:
            family.append(universe.mask(read_set()))
            if toks[i][0] == 3:
                i += 1
                continue
            expect(2, "',' or '}'")
            break
    if toks[i][0] != 0:
        raise UsageError(f"trailing input at position {toks[i][2]}")
    if from_family:
        return max_ac(family, universe)
    return Antichain(universe, family)
