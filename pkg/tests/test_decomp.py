import pytest
from hypothesis import given, strategies as st

from ac_lattice import (
    Antichain,
    Interval,
    PreconditionError,
    Universe,
    UsageError,
    dedekind_product,
    direct_join_factors,
    direct_join_split,
    join,
    largest_nondominating,
    meet,
    partition_by_nondominating,
    partition_by_product,
    partition_interval_by_nondominating,
    size_brute,
)
from ac_lattice.decomp import membership_key, product_blocks, sub_antichains
from ac_lattice.oracle import enumerate_all, enumerate_interval

from conftest import ac, antichains, intervals

U1, U2, U3 = Universe(1), Universe(2), Universe(3)


def brute_nondominating(chi):
    """Largest antichain with no member containing a member of ``chi``, by search."""
    u = chi.universe
    ok = [x for x in range(u.full + 1) if not any(y & ~x == 0 for y in chi.sets)]
    return Antichain(u, [x for x in ok if not any(x != z and x & ~z == 0 for z in ok)])


class TestLargestNondominating:
    def test_examples(self):
        assert largest_nondominating(ac(3, [1])) == ac(3, [2, 3])
        assert largest_nondominating(U3.bottom) == U3.top
        assert largest_nondominating(ac(3, [1], [2])) == ac(3, [3])

    def test_empty_set_member_dominates_everything(self):
        assert largest_nondominating(ac(3, [])) == U3.bottom

    @given(antichains(max_n=4))
    def test_matches_search(self, chi):
        assert largest_nondominating(chi) == brute_nondominating(chi)


class TestNondominatingPartition:
    def test_top_n1(self):
        rep = partition_by_nondominating(U1.top)
        assert rep.blocks == [Interval(U1.bottom, ac(1, [])), Interval(ac(1, [1]), ac(1, [1]))]
        assert rep.sizes == [2, 1] and rep.ok and rep.method == "exact"

    def test_bottom_gives_one_block(self):
        rep = partition_by_nondominating(U3.bottom)
        assert rep.blocks == [Interval(U3.bottom, U3.top)]
        assert rep.sizes == [20] and rep.ok

    @pytest.mark.parametrize("n", [0, 1, 2, 3])
    def test_every_alpha(self, n):
        for alpha in enumerate_all(n):
            rep = partition_by_nondominating(alpha)
            assert rep.ok, alpha

    @given(antichains(n=4))
    def test_random_alpha_n4(self, alpha):
        assert partition_by_nondominating(alpha).ok

    def test_size_accounting_mode(self):
        rep = partition_by_nondominating(ac(4, [1, 2], [3]), verify="sizes")
        assert rep.method == "size-accounting" and rep.ok and rep.covered == 168

    def test_unknown_mode(self):
        with pytest.raises(UsageError):
            partition_by_nondominating(U3.top, verify="maybe")

    def test_csv(self):
        text = partition_by_nondominating(U1.top).to_csv()
        assert text.splitlines() == ["key,bottom,top,size", "{},{},{{}},2", "{{1}},{{1}},{{1}},1"]

    @given(antichains(max_n=3))
    def test_block_key(self, alpha):
        for chi in sub_antichains(alpha):
            blk = Interval(chi, largest_nondominating(alpha.minus(chi)))
            for sigma in enumerate_interval(blk):
                assert meet(sigma, alpha).intersection(alpha) == chi


class TestIntervalPartition:
    def test_gamma_is_alpha(self):
        i = Interval(ac(3, [1]), ac(3, [1, 2, 3]))
        rep = partition_interval_by_nondominating(i, i.bottom)
        assert rep.ok and rep.covered == 14

    def test_reduces_to_lattice_partition(self):
        a = partition_interval_by_nondominating(Interval.full(U1), U1.top)
        b = partition_by_nondominating(U1.top)
        assert a.blocks == b.blocks

    def test_singleton_interval(self):
        alpha = ac(3, [1], [2])
        rep = partition_interval_by_nondominating(Interval(alpha, alpha), alpha)
        assert [s for s in rep.sizes if s] == [1] and rep.ok

    def test_gamma_outside(self):
        with pytest.raises(PreconditionError):
            partition_interval_by_nondominating(Interval(ac(3, [1]), ac(3, [1, 2])), ac(3, [3]))

    @given(intervals(max_n=4), st.data())
    def test_random(self, i, data):
        gamma = data.draw(st.sampled_from(list(enumerate_interval(i))))
        assert partition_interval_by_nondominating(i, gamma).ok


class TestDirectJoin:
    def test_example(self):
        nu1, nu2, alpha = ac(2, [1]), ac(2, [2]), ac(2, [])
        chi = ac(2, [1], [2])
        c1, c2 = direct_join_split(alpha, nu1, nu2, chi)
        assert (c1, c2) == (ac(2, [1]), ac(2, [2]))
        assert join(c1, c2) == chi

    def test_endpoints(self):
        nu1, nu2, alpha = ac(3, [1, 2]), ac(3, [2, 3]), ac(3, [2])
        assert direct_join_split(alpha, nu1, nu2, alpha) == (alpha, alpha)
        assert direct_join_split(alpha, nu1, nu2, join(nu1, nu2)) == (join(alpha, nu1), join(alpha, nu2))

    def test_preconditions_are_named(self):
        with pytest.raises(PreconditionError, match="nu1 & nu2 <= alpha"):
            direct_join_split(ac(3, [1]), ac(3, [1, 2]), ac(3, [2, 3]), ac(3, [1, 2], [2, 3]))
        with pytest.raises(PreconditionError, match="alpha <= chi"):
            direct_join_split(ac(3, [2]), ac(3, [1, 2]), ac(3, [2, 3]), ac(3, [1]))

    @given(antichains(n=3), antichains(n=3), antichains(n=3))
    def test_unique_factorization(self, nu1, nu2, x):
        alpha = join(meet(nu1, nu2), meet(x, join(nu1, nu2)))
        target = Interval(alpha, join(nu1, nu2))
        (f1, f2), (g1, g2) = direct_join_factors(alpha, nu1, nu2)
        for a, b in ((f1, f2), (g1, g2)):
            pairs = {}
            for c1 in enumerate_interval(a):
                for c2 in enumerate_interval(b):
                    pairs.setdefault(join(c1, c2), []).append((c1, c2))
            assert set(pairs) == set(enumerate_interval(target))
            assert all(len(v) == 1 for v in pairs.values())
        for chi in enumerate_interval(target):
            c1, c2 = direct_join_split(alpha, nu1, nu2, chi)
            assert c1 in f1 and c2 in f2 and join(c1, c2) == chi


class TestProductPartition:
    def test_n2_example(self):
        rep = partition_by_product(U2, 0b01, 0b10)
        assert rep.keys[0] == "bottom"
        assert rep.sizes == [1, 1, 1, 1, 2]
        assert rep.covered == 6 and rep.ok
        assert rep.blocks[-1] == Interval(ac(2, [1], [2]), ac(2, [1, 2]))

    @pytest.mark.parametrize("n1", [0b0001, 0b0011, 0b0101])
    def test_n4_splits(self, n1):
        rep = partition_by_product(Universe(4), n1, 0b1111 & ~n1)
        assert rep.ok and rep.method == "exact" and rep.covered == 168

    def test_block_key(self):
        n1 = 0b0011
        blocks = dict(product_blocks(Universe(4), n1, 0b1100))
        for chi in enumerate_all(4):
            if not chi:
                continue
            a1, a2 = membership_key(chi, n1)
            assert chi in blocks[f"{a1}|{a2}"]

    def test_bad_splits(self):
        with pytest.raises(UsageError):
            partition_by_product(U3, 0b011, 0b110)
        with pytest.raises(UsageError):
            partition_by_product(U3, 0b001, 0b010)

    @pytest.mark.parametrize("n,want", [(0, 2), (1, 3), (2, 6), (3, 20), (4, 168), (5, 7581)])
    def test_dedekind(self, n, want):
        assert dedekind_product(n) == want

    def test_dedekind_splits_agree(self):
        assert dedekind_product(5, (1, 4)) == dedekind_product(5, (2, 3)) == dedekind_product(5, (5, 0)) == 7581

    def test_bad_split_sizes(self):
        with pytest.raises(UsageError):
            dedekind_product(4, (1, 2))
