"""Direct joins and partitions of the antichain lattice into disjoint intervals."""
from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .core import (
    Antichain,
    PreconditionError,
    Universe,
    UsageError,
    _same_universe,
    direct_product,
    elements,
    join,
    leq,
    max_ac,
    meet,
)
from .counting import _workers, size_even_odd
from .interval import Interval
from .oracle import EnumerationBudget, all_with_downsets, downset, enumerate_all

EXACT_CHECK_MAX_N = 4


@dataclass
class PartitionReport:
    """Blocks of a claimed partition plus the result of checking it."""

    target: Interval
    keys: list[str]
    blocks: list[Interval]
    sizes: list[int]
    total: int | None
    covered: int = 0
    disjoint: bool | None = None
    complete: bool | None = None
    method: str = field(default="unverified")

    @property
    def ok(self) -> bool:
        return bool(self.disjoint and self.complete)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n", quoting=csv.QUOTE_MINIMAL)
        w.writerow(["key", "bottom", "top", "size"])
        for key, blk, size in zip(self.keys, self.blocks, self.sizes):
            w.writerow([key, str(blk.bottom), str(blk.top), size])
        return buf.getvalue()


def largest_nondominating(chi: Antichain) -> Antichain:
    """Largest antichain with no member containing a member of ``chi``.

    Meet over ``X`` in ``chi`` of ``{N - {x} : x in X}``; bottom maps to top.
    """
    u = chi.universe
    full = u.full
    result = u.top
    for x in chi.sets:
        result = meet(result, max_ac((full & ~(1 << (e - 1)) for e in elements(x)), u))
    return result


def _sub_antichains(alpha: Antichain) -> Iterator[tuple[Antichain, Antichain]]:
    """``(chi, alpha - chi)`` for member subsets ``chi``, in ascending bit order over ``alpha``'s members."""
    u = alpha.universe
    k = len(alpha)
    for pick in range(1 << k):
        inside = tuple(alpha.sets[j] for j in range(k) if pick >> j & 1)
        outside = tuple(alpha.sets[j] for j in range(k) if not pick >> j & 1)
        yield Antichain._trusted(u, inside), Antichain._trusted(u, outside)


def _sizes(blocks: list[Interval], workers: int | None) -> list[int]:
    workers = _workers(workers)
    if workers == 1 or len(blocks) < 2:
        return [size_even_odd(b) for b in blocks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(size_even_odd, blocks, chunksize=max(1, len(blocks) // (workers * 4))))


def _exact_check(report: PartitionReport) -> None:
    """Count, for every antichain of the target, how many blocks hold it."""
    n = report.target.universe.n
    lo, hi = downset(report.target.bottom), downset(report.target.top)
    ranges = [(downset(b.bottom), downset(b.top)) for b in report.blocks if not b.is_empty]
    disjoint = complete = True
    members = 0
    for _, d in all_with_downsets(n):
        inside = lo & ~d == 0 and d & ~hi == 0
        hits = sum(1 for bl, bh in ranges if bl & ~d == 0 and d & ~bh == 0)
        if inside:
            members += 1
        if hits > 1 or (hits and not inside):
            disjoint = False
        if inside and hits == 0:
            complete = False
    report.method = "exact"
    report.disjoint = disjoint
    report.complete = complete and report.covered == members


def _target_size(target: Interval) -> int | None:
    # the full lattice beyond n=6 is out of reach for the level formulas
    if target.universe.n > 6 and target.bottom == target.universe.bottom:
        return None
    return size_even_odd(target)


def _finish(report: PartitionReport, verify: str) -> PartitionReport:
    report.covered = sum(report.sizes)
    if verify == "auto":
        verify = "exact" if report.target.universe.n <= EXACT_CHECK_MAX_N else "sizes"
    if verify == "exact":
        _exact_check(report)
    elif verify == "sizes":
        if report.total is not None:
            report.method = "size-accounting"
            # the blocks cover the target by construction; equal totals then force disjointness
            report.complete = report.disjoint = report.covered == report.total
    elif verify != "none":
        raise UsageError(f"unknown verification mode {verify!r}")
    return report


def partition_by_nondominating(alpha: Antichain, verify: str = "auto", workers: int | None = 1) -> PartitionReport:
    """Blocks ``[chi, (alpha - chi)ˇ]`` over member subsets ``chi`` of ``alpha``."""
    u = alpha.universe
    keys, blocks = [], []
    for chi, rest in _sub_antichains(alpha):
        keys.append(str(chi))
        blocks.append(Interval(chi, largest_nondominating(rest)))
    target = Interval.full(u)
    report = PartitionReport(target, keys, blocks, _sizes(blocks, workers), _target_size(target))
    return _finish(report, verify)


def partition_interval_by_nondominating(i: Interval, gamma: Antichain, verify: str = "auto",
                                        workers: int | None = 1) -> PartitionReport:
    """Blocks ``[bottom | chi, top & (gamma - chi)ˇ]`` over member subsets ``chi`` of ``gamma``."""
    if gamma not in i:
        raise PreconditionError(f"gamma {gamma} is not in {i}")
    keys, blocks = [], []
    for chi, rest in _sub_antichains(gamma):
        keys.append(str(chi))
        blocks.append(Interval(join(i.bottom, chi), meet(i.top, largest_nondominating(rest))))
    report = PartitionReport(i, keys, blocks, _sizes(blocks, workers), _target_size(i))
    return _finish(report, verify)


def direct_join_split(alpha: Antichain, nu1: Antichain, nu2: Antichain, chi: Antichain) -> tuple[Antichain, Antichain]:
    """The unique ``(chi1, chi2)`` with ``chi1 | chi2 = chi`` and ``chi_i`` in ``[alpha, alpha | nu_i]``."""
    _same_universe(alpha, nu1, nu2, chi)
    top = join(nu1, nu2)
    if not leq(meet(nu1, nu2), alpha):
        raise PreconditionError("direct join needs nu1 & nu2 <= alpha")
    if not leq(alpha, top):
        raise PreconditionError("direct join needs alpha <= nu1 | nu2")
    if not leq(alpha, chi):
        raise PreconditionError("direct join needs alpha <= chi")
    if not leq(chi, top):
        raise PreconditionError("direct join needs chi <= nu1 | nu2")
    return join(meet(chi, nu1), alpha), join(meet(chi, nu2), alpha)


def direct_join_factors(alpha: Antichain, nu1: Antichain, nu2: Antichain) -> tuple[tuple[Interval, Interval], tuple[Interval, Interval]]:
    """Both factorizations of ``[alpha, nu1 | nu2]`` into two intervals."""
    first = (Interval(alpha, join(alpha, nu1)), Interval(alpha, join(alpha, nu2)))
    second = (Interval(meet(alpha, nu1), nu1), Interval(meet(alpha, nu2), nu2))
    return first, second


def _embed(a: Antichain, part: list[int], universe: Universe) -> Antichain:
    # element i of the small universe becomes part[i-1]
    out = []
    for x in a.sets:
        y = 0
        for e in elements(x):
            y |= 1 << (part[e - 1] - 1)
        out.append(y)
    return Antichain._trusted(universe, tuple(sorted(out)))


def _check_split(universe: Universe, n1: int, n2: int):
    universe.check_mask(n1)
    universe.check_mask(n2)
    if n1 & n2:
        raise UsageError("split parts overlap")
    if n1 | n2 != universe.full:
        raise UsageError("split parts do not cover the universe")


def product_blocks(universe: Universe, n1: int, n2: int,
                   budget: EnumerationBudget = EnumerationBudget()) -> Iterator[tuple[str, Interval]]:
    """Stream ``(key, [a1 | a2, a1 ⊗ a2])`` over nonempty antichains ``a1`` on ``n1``, ``a2`` on ``n2``.

    The ``[bottom, bottom]`` block is not included.  An empty part is
    allowed; its only nonempty antichain is ``{{}}``.
    """
    _check_split(universe, n1, n2)
    p1, p2 = elements(n1), elements(n2)
    side1 = [_embed(a, p1, universe) for a in enumerate_all(len(p1), budget) if a]
    side2 = [_embed(a, p2, universe) for a in enumerate_all(len(p2), budget) if a]
    for a1 in side1:
        for a2 in side2:
            yield f"{a1}|{a2}", Interval(join(a1, a2), direct_product(a1, a2))


def partition_by_product(universe: Universe, n1: int, n2: int, verify: str = "auto",
                         workers: int | None = 1) -> PartitionReport:
    """``{[bottom, bottom]}`` plus one block per pair of nonempty antichains on the two parts."""
    keys, blocks = [], []
    for key, blk in product_blocks(universe, n1, n2):
        keys.append(key)
        blocks.append(blk)
    target = Interval.full(universe)
    # the [bottom, bottom] block is listed first
    keys.insert(0, "bottom")
    blocks.insert(0, Interval(universe.bottom, universe.bottom))
    sizes = [1] + _sizes(blocks[1:], workers)
    report = PartitionReport(target, keys, blocks, sizes, _target_size(target))
    return _finish(report, verify)


def dedekind_product(n: int, split: tuple[int, int] | None = None, workers: int | None = 1) -> int:
    """Number of antichains on ``n`` elements as ``1 + sum`` of product block sizes."""
    if split is None:
        split = ((n + 1) // 2, n // 2)
    s1, s2 = split
    if s1 < 0 or s2 < 0 or s1 + s2 != n:
        raise UsageError(f"split {s1},{s2} does not add up to n={n}")
    u = Universe(n)
    n1 = (1 << s1) - 1
    n2 = u.full & ~n1
    blocks = [blk for _, blk in product_blocks(u, n1, n2)]
    return 1 + sum(_sizes(blocks, workers))


def membership_key(chi: Antichain, n1: int) -> tuple[Antichain, Antichain]:
    """The product block holding ``chi``: its meets with each part."""
    u = chi.universe
    return meet(chi, Antichain._trusted(u, (n1,))), meet(chi, Antichain._trusted(u, (u.full & ~n1,)))


def sub_antichains(alpha: Antichain) -> Iterable[Antichain]:
    return (chi for chi, _ in _sub_antichains(alpha))
