"""Randomized and exhaustive checks of the lattice theorems.

Each ``check_*`` function returns a :class:`CheckResult` carrying the first
counterexample found.  The oracle side of every check goes through
down-sets or enumeration in :mod:`ac_lattice.oracle`, never through the
operation under test.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .core import Antichain, Universe, direct_product, join, join_all, leq, meet, support
from .counting import (
    LevelStructure,
    canonical_decomposition,
    down,
    down_iter,
    horizontal_interval,
    horizontal_poset,
    layer_membership_interval,
    level,
    pivot_blocks,
    size_even_odd,
    size_multilevel,
    size_pivot,
    up,
    up_iter,
)
from .decomp import (
    direct_join_factors,
    direct_join_split,
    largest_nondominating,
    partition_by_nondominating,
    partition_by_product,
    partition_interval_by_nondominating,
    sub_antichains,
)
from .interval import (
    Interval,
    interval_from_poset,
    is_interval_poset,
    lift_interval,
    underlying_poset,
)
from .oracle import all_with_downsets, downset, enumerate_all, enumerate_interval, size_brute
from .sampling import random_antichain, random_interval, random_interval_where, random_member, random_sub

ORACLE_MAX_N = 5


@dataclass
class CheckResult:
    name: str
    trials: int = 0
    failures: int = 0
    counterexample: str | None = None

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def record(self, passed: bool, witness) -> None:
        self.trials += 1
        if not passed:
            self.failures += 1
            if self.counterexample is None:
                self.counterexample = witness() if callable(witness) else str(witness)

    def line(self) -> str:
        if self.ok:
            note = ", not applicable at this n" if self.trials == 0 else ""
            return f"PASS  {self.name}  ({self.trials} trials{note})"
        return f"FAIL  {self.name}  ({self.failures}/{self.trials} failed)  counterexample: {self.counterexample}"


def _ac(lst, u):
    return Antichain._trusted(u, tuple(sorted(lst)))


# -- partitions ----------------------------------------------------------------


def check_nondominating_partition(n: int, rng: random.Random, trials: int = 50) -> CheckResult:
    """Blocks ``[chi, (alpha - chi)ˇ]`` are disjoint and cover the lattice."""
    res = CheckResult("largest-nondominating partition of the lattice")
    u = Universe(n)
    if n <= 3:
        alphas = list(enumerate_all(n))
    else:
        alphas = [random_antichain(u, rng) for _ in range(trials)]
    for alpha in alphas:
        rep = partition_by_nondominating(alpha)
        res.record(rep.ok, lambda: f"alpha={alpha} disjoint={rep.disjoint} complete={rep.complete}")
    return res


def check_block_key(n: int, rng: random.Random, trials: int = 50) -> CheckResult:
    """Every ``sigma`` in block ``[chi, (alpha - chi)ˇ]`` has ``(sigma & alpha) ∩ alpha = chi``."""
    res = CheckResult("block key lemma for the nondominating partition")
    u = Universe(n)
    for _ in range(trials):
        alpha = random_antichain(u, rng)
        for chi in sub_antichains(alpha):
            blk = Interval(chi, largest_nondominating(alpha.minus(chi)))
            for sigma in enumerate_interval(blk):
                key = meet(sigma, alpha).intersection(alpha)
                res.record(key == chi, lambda: f"alpha={alpha} chi={chi} sigma={sigma} key={key}")
    return res


def check_interval_corollary(n: int, rng: random.Random, trials: int = 50, verify: str = "auto") -> CheckResult:
    """Blocks ``[alpha | chi, beta & (gamma - chi)ˇ]`` partition ``[alpha, beta]``."""
    res = CheckResult("nondominating partition of an interval")
    u = Universe(n)
    for _ in range(trials):
        i = random_interval(u, rng)
        gamma = random_member(i, rng)
        rep = partition_interval_by_nondominating(i, gamma, verify=verify)
        res.record(rep.ok, lambda: f"interval={i} gamma={gamma} covered={rep.covered} total={rep.total}")
    return res


def check_product_partition(n: int, rng: random.Random, trials: int = 0) -> CheckResult:
    """Product blocks over every prefix split and one random split cover the lattice disjointly."""
    res = CheckResult("direct-product partition of the lattice")
    u = Universe(n)
    splits = [((1 << s) - 1) for s in range(1, n)]
    if n >= 2:
        splits.append(sum(1 << e for e in rng.sample(range(n), rng.randint(1, n - 1))))
    for n1 in splits:
        rep = partition_by_product(u, n1, u.full & ~n1)
        res.record(rep.ok and rep.covered == rep.total,
                   lambda: f"split={n1:#b} covered={rep.covered} total={rep.total}")
    return res


def check_product_key(n: int, rng: random.Random, trials: int = 0) -> CheckResult:
    """Every nonempty ``chi`` lies in ``[a1 | a2, a1 ⊗ a2]`` with ``a_i = chi & {N_i}``."""
    res = CheckResult("product block key lemma")
    u = Universe(n)
    if n < 2:
        return res
    n1 = sum(1 << e for e in rng.sample(range(n), rng.randint(1, n - 1)))
    p1, p2 = Antichain(u, [n1]), Antichain(u, [u.full & ~n1])
    for chi in enumerate_all(n):
        if not chi:
            continue
        a1, a2 = meet(chi, p1), meet(chi, p2)
        res.record(chi in Interval(join(a1, a2), direct_product(a1, a2)), lambda: f"chi={chi} split={n1:#b}")
    return res


# -- direct joins --------------------------------------------------------------


def random_direct_join_triple(u: Universe, rng: random.Random) -> tuple[Antichain, Antichain, Antichain]:
    """``(alpha, nu1, nu2)`` with ``nu1 & nu2 <= alpha <= nu1 | nu2``."""
    nu1 = random_antichain(u, rng)
    nu2 = random_antichain(u, rng)
    lo, hi = meet(nu1, nu2), join(nu1, nu2)
    alpha = join(lo, meet(random_antichain(u, rng), hi))
    return alpha, nu1, nu2


def _down_range(i: Interval) -> list[int]:
    lo, hi = downset(i.bottom), downset(i.top)
    return [d for _, d in all_with_downsets(i.universe.n) if lo & ~d == 0 and d & ~hi == 0]


def _unique_factorization(target: Interval, f1: Interval, f2: Interval):
    """Map each down-set of ``target`` to the factor pairs that join to it (down-set union)."""
    pairs: dict[int, list[tuple[int, int]]] = {}
    r1, r2 = _down_range(f1), _down_range(f2)
    for d1 in r1:
        for d2 in r2:
            pairs.setdefault(d1 | d2, []).append((d1, d2))
    inside = set(_down_range(target))
    return pairs, inside


def check_direct_join(n: int, rng: random.Random, trials: int = 100) -> CheckResult:
    """Both factorizations of ``[alpha, nu1 | nu2]`` are direct and the split formula finds the pair."""
    res = CheckResult("direct-join decomposition (both forms)")
    u = Universe(n)
    for _ in range(trials):
        alpha, nu1, nu2 = random_direct_join_triple(u, rng)
        target = Interval(alpha, join(nu1, nu2))
        first, second = direct_join_factors(alpha, nu1, nu2)
        tag = f"alpha={alpha} nu1={nu1} nu2={nu2}"
        ok = True
        for form, (f1, f2) in (("first", first), ("second", second)):
            pairs, inside = _unique_factorization(target, f1, f2)
            if set(pairs) != inside or any(len(v) != 1 for v in pairs.values()):
                ok = False
                res.record(False, f"{tag}: {form} form is not a direct join")
                break
        if not ok:
            continue
        pairs1, _ = _unique_factorization(target, *first)
        pairs2, _ = _unique_factorization(target, *second)
        good = True
        for chi in enumerate_interval(target):
            c1, c2 = direct_join_split(alpha, nu1, nu2, chi)
            d = downset(chi)
            if pairs1[d][0] != (downset(c1), downset(c2)):
                good = False
                break
            if pairs2[d][0] != (downset(meet(chi, nu1)), downset(meet(chi, nu2))):
                good = False
                break
        res.record(good, lambda: f"{tag}: formula pair differs from the unique pair at chi={chi}")
    return res


# -- level operators -------------------------------------------------------------


def _spread_at_least(k: int):
    return lambda i, p: p.m is not None and p.M - p.m >= k


def check_updown(n: int, rng: random.Random, trials: int = 500) -> CheckResult:
    """Galois-style laws linking ``up`` and ``down`` on adjacent levels."""
    res = CheckResult("up/down operator laws (i), (iii)-(v), and delta ⊆ (delta⁻)⁺")
    u = Universe(n)
    for _ in range(trials):
        drawn = random_interval_where(u, rng, _spread_at_least(1))
        if drawn is None:
            continue
        i, p = drawn
        lv = rng.randint(p.m, p.M - 1)
        delta = _ac(random_sub(p.level(lv), rng), u)
        d_up = up(delta, p, lv)
        if rng.random() < 0.5:
            gamma = _ac(random_sub(d_up.sets, rng, 0.7), u)
        else:
            gamma = _ac(random_sub(p.level(lv + 1), rng), u)
        g_down = down(gamma, p)
        g_up = up(gamma, p, lv + 1)
        checks = {
            "i": gamma.members_subset(d_up) == g_down.members_subset(delta),
            # the inclusion (delta⁻)⁺ ⊆ delta fails in general; the closure goes the other way
            "ii": delta.members_subset(up(down(delta, p), p, lv - 1)),
            "iii": down(d_up, p).members_subset(delta),
            "iv": (not gamma.members_subset(d_up)) or g_up.members_subset(up_iter(delta, p, 2, lv)),
            "v": (not g_down.members_subset(delta)) or down(g_down, p).members_subset(down(delta, p)),
        }
        bad = [k for k, v in checks.items() if not v]
        res.record(not bad, lambda: f"{bad} fail: interval={i} level={lv} delta={delta} gamma={gamma}")
    return res


def check_choice_count(n: int, rng: random.Random, trials: int = 500) -> CheckResult:
    """With layers ``i`` and ``i+2`` fixed, the middle layer has ``2**(|chi_i⁺| - |chi_{i+2}⁻|)`` choices."""
    res = CheckResult("middle-layer choice count")
    u = Universe(n)
    for _ in range(trials):
        drawn = random_interval_where(u, rng, _spread_at_least(2))
        if drawn is None:
            continue
        i, p = drawn
        ls = LevelStructure(p)
        lv = rng.randint(p.m, p.M - 2)
        top_bits = sum(1 << j for j in range(ls.size(lv + 2)) if rng.random() < 0.4)
        forced = ls.down(lv + 1, ls.down(lv + 2, top_bits))
        low_bits = forced | sum(1 << j for j in range(ls.size(lv)) if rng.random() < 0.5)
        low, high = ls.to_antichain(lv, low_bits), ls.to_antichain(lv + 2, top_bits)
        high_down = down(high, p)
        count = 0
        mids = p.level(lv + 1)
        for r in range(len(mids) + 1):
            for pick in itertools.combinations(mids, r):
                mid = _ac(pick, u)
                if down(mid, p).members_subset(low) and high_down.members_subset(mid):
                    count += 1
        expected = 2 ** (len(up(low, p, lv)) - len(high_down))
        res.record(count == expected, lambda: f"interval={i} level={lv} low={low} high={high}: {count} != {expected}")
    return res


def check_meet_by_levels(n: int, rng: random.Random, trials: int = 500) -> CheckResult:
    """``chi & gamma = alpha | (layerwise intersections)`` of canonical decompositions."""
    res = CheckResult("meet equals alpha joined with layerwise intersections")
    u = Universe(n)
    for _ in range(trials):
        i = random_interval(u, rng)
        chi, gamma = random_member(i, rng), random_member(i, rng)
        dc, dg = canonical_decomposition(i, chi), canonical_decomposition(i, gamma)
        rhs = join_all([i.bottom, *(a.intersection(b) for a, b in zip(dc.layers, dg.layers))], u)
        # meet checked through down-sets, independently of core.meet
        lhs_down = downset(chi) & downset(gamma)
        res.record(lhs_down == downset(rhs) and meet(chi, gamma) == rhs,
                   lambda: f"interval={i} chi={chi} gamma={gamma}")
    return res


def check_monotone_layers(n: int, rng: random.Random, trials: int = 500) -> CheckResult:
    """``chi <= gamma`` implies every canonical layer of ``chi`` is inside that of ``gamma``."""
    res = CheckResult("canonical layers are monotone")
    u = Universe(n)
    for _ in range(trials):
        i = random_interval(u, rng)
        gamma = random_member(i, rng)
        chi = join(i.bottom, meet(gamma, random_antichain(u, rng)))
        dc, dg = canonical_decomposition(i, chi), canonical_decomposition(i, gamma)
        res.record(all(a.members_subset(b) for a, b in zip(dc.layers, dg.layers)),
                   lambda: f"interval={i} chi={chi} gamma={gamma}")
    return res


def check_upper_block_levels(n: int, rng: random.Random, trials: int = 500) -> CheckResult:
    """Levels above ``k`` of the upper pivot block are the iterated up-sets of the pivot layer."""
    res = CheckResult("upper block levels are iterated up-sets")
    u = Universe(n)
    for _ in range(trials):
        drawn = random_interval_where(u, rng, _spread_at_least(2))
        if drawn is None:
            continue
        i, p = drawn
        k = rng.randint(p.m + 1, p.M - 1)
        chi_k = _ac(random_sub(p.level(k), rng), u)
        upper = Interval(join(i.bottom, chi_k), join_all([i.bottom, *(up_iter(chi_k, p, j, k) for j in range(p.M - k + 1))], u))
        q = underlying_poset(upper)
        ok = all(set(q.level(lv)) == set(up_iter(chi_k, p, lv - k, k).sets) for lv in range(k + 1, p.M + 1))
        res.record(ok, lambda: f"interval={i} k={k} chi_k={chi_k}")
    return res


def check_split_meet(n: int, rng: random.Random, trials: int = 500) -> CheckResult:
    """The tops of the lower and upper pivot blocks meet in ``alpha | chi_k``."""
    res = CheckResult("lower and upper pivot tops meet at alpha | chi_k")
    u = Universe(n)
    for _ in range(trials):
        drawn = random_interval_where(u, rng, _spread_at_least(2))
        if drawn is None:
            continue
        i, p = drawn
        k = rng.randint(p.m + 1, p.M - 1)
        chi_k = _ac(random_sub(p.level(k), rng), u)
        lower_top = join_all([i.bottom, *(level(p, lv) for lv in range(p.m, k)), chi_k], u)
        upper_top = join_all([i.bottom, *(up_iter(chi_k, p, j, k) for j in range(p.M - k + 1))], u)
        res.record(meet(lower_top, upper_top) == join(i.bottom, chi_k), lambda: f"interval={i} k={k} chi_k={chi_k}")
    return res


def check_horizontal(n: int, rng: random.Random, trials: int = 500) -> CheckResult:
    """Closed-form horizontal block poset equals the poset of the explicit block."""
    res = CheckResult("horizontal block poset formula")
    u = Universe(n)
    for _ in range(trials):
        drawn = random_interval_where(u, rng, _spread_at_least(3))
        if drawn is None:
            continue
        i, p = drawn
        inner = list(range(p.m + 1, p.M))
        ks = sorted(rng.sample(inner, rng.randint(2, len(inner))))
        chis = {ks[0]: _ac(random_sub(p.level(ks[0]), rng), u)}
        for a, b in zip(ks, ks[1:]):
            reach = up_iter(chis[a], p, b - a, a)
            chis[b] = _ac(random_sub(reach.sets, rng, 0.6), u)
        formula = horizontal_poset(chis, i)
        explicit = underlying_poset(horizontal_interval(chis, i))
        res.record(formula.as_set() == explicit.as_set(),
                   lambda: f"interval={i} layers={ {k: str(v) for k, v in chis.items()} }")
    return res


def check_spanning(n: int, rng: random.Random, trials: int = 50) -> CheckResult:
    """Every member ``gamma`` is ``alpha | (gamma - alpha)`` with ``gamma - alpha`` inside the poset."""
    res = CheckResult("underlying poset spans the interval")
    u = Universe(n)
    for _ in range(trials):
        i = random_interval(u, rng)
        p = underlying_poset(i).as_set()
        for gamma in enumerate_interval(i):
            rest = gamma.minus(i.bottom)
            res.record(set(rest.sets) <= p and join(i.bottom, rest) == gamma, lambda: f"interval={i} gamma={gamma}")
    return res


# -- sizes -----------------------------------------------------------------------


def check_method_agreement(n: int, rng: random.Random, trials: int = 200) -> CheckResult:
    """Brute force, both even/odd formulas, every pivot and a random multilevel sum agree."""
    res = CheckResult("size methods agree with brute force")
    u = Universe(n)
    for _ in range(trials):
        i = random_interval(u, rng)
        p = underlying_poset(i)
        want = size_brute(i)
        got = {"i": size_even_odd(i, "i"), "ii": size_even_odd(i, "ii")}
        if p.m is not None and p.M - p.m >= 2:
            inner = list(range(p.m + 1, p.M))
            for k in inner:
                got[f"pivot:{k}"] = size_pivot(i, k)
            ks = sorted(rng.sample(inner, rng.randint(1, len(inner))))
            got["multi:" + ",".join(map(str, ks))] = size_multilevel(i, ks)
        bad = {k: v for k, v in got.items() if v != want}
        res.record(not bad, lambda: f"interval={i} brute={want} disagreeing={bad}")
    return res


def check_layer_blocks(n: int, rng: random.Random, trials: int = 50) -> CheckResult:
    """Members sit in the block keyed by their canonical layer; the blocks partition the interval."""
    res = CheckResult("layer-k blocks partition the interval")
    u = Universe(n)
    for _ in range(trials):
        drawn = random_interval_where(u, rng, _spread_at_least(2))
        if drawn is None:
            continue
        i, p = drawn
        k = rng.randint(p.m + 1, p.M - 1)
        members = list(enumerate_interval(i))
        ok = all(chi in layer_membership_interval(i, k, canonical_decomposition(i, chi).layer(k)) for chi in members)
        blocks = [Interval(lo.bottom, join(lo.top, hi.top)) for _, lo, hi in pivot_blocks(i, k)]
        ok = ok and sum(size_brute(b) for b in blocks) == len(members)
        res.record(ok, lambda: f"interval={i} k={k}")
    return res


def check_poset_roundtrip(n: int, rng: random.Random, trials: int = 500) -> CheckResult:
    """Posets are convex, rebuild exactly from their spanned interval, and keep the size."""
    res = CheckResult("interval poset round trip")
    u = Universe(n)
    for _ in range(trials):
        i = random_interval(u, rng)
        p = underlying_poset(i)
        convex = is_interval_poset(p.sets)
        back = interval_from_poset(p)
        same = underlying_poset(back).as_set() == p.as_set()
        sized = size_even_odd(back) == size_even_odd(i)
        res.record(convex and same and sized, lambda: f"interval={i} convex={convex} same={same} sized={sized}")
    return res


def random_lift_instance(u: Universe, rng: random.Random) -> tuple[Antichain, Antichain, int]:
    """``(chi_lo, chi_hi, a)`` with ``chi_lo <= chi_hi`` and ``a`` a nonempty set outside the support."""
    free = rng.sample(range(u.n), rng.randint(1, u.n))
    a_elems = rng.sample(free, rng.randint(1, len(free)))
    a = sum(1 << e for e in a_elems)
    within = u.full & ~a
    x = random_antichain(u, rng, within)
    y = random_antichain(u, rng, within)
    return meet(x, y), join(x, y), a


def check_lift(n: int, rng: random.Random, trials: int = 100) -> CheckResult:
    """Lifted intervals have the same size as the original."""
    res = CheckResult("lifted intervals keep their size")
    u = Universe(n)
    if n == 0:
        return res
    for _ in range(trials):
        lo, hi, a = random_lift_instance(u, rng)
        lifted = lift_interval(lo, hi, a)
        base = Interval(lo, hi)
        res.record(size_brute(lifted) == size_brute(base) == size_even_odd(lifted),
                   lambda: f"chi_lo={lo} chi_hi={hi} a={a:#b}")
    return res


SUITES = {
    "partitions": [
        (check_nondominating_partition, 30),
        (check_block_key, 20),
        (check_interval_corollary, 30),
        (check_product_partition, 0),
        (check_product_key, 0),
    ],
    "directjoin": [(check_direct_join, 30)],
    "updown": [
        (check_updown, 200),
        (check_choice_count, 200),
        (check_meet_by_levels, 200),
        (check_monotone_layers, 200),
        (check_upper_block_levels, 200),
        (check_split_meet, 200),
        (check_horizontal, 100),
    ],
    "sizes": [
        (check_spanning, 30),
        (check_method_agreement, 100),
        (check_layer_blocks, 20),
        (check_poset_roundtrip, 100),
        (check_lift, 50),
    ],
}


def run_suite(name: str, n: int, seed: int, scale: float = 1.0) -> list[CheckResult]:
    names = list(SUITES) if name == "all" else [name]
    out = []
    for suite in names:
        for fn, trials in SUITES[suite]:
            rng = random.Random(f"{seed}:{fn.__name__}:{n}")
            out.append(fn(n, rng, max(1, int(trials * scale)) if trials else 0))
    return out
