"""
Cutting the lattice into disjoint intervals
===========================================

"""

from ac_lattice import (
    Interval,
    Universe,
    direct_join_split,
    join,
    largest_nondominating,
    partition_by_nondominating,
    partition_by_product,
    partition_interval_by_nondominating,
)

U = Universe(3)

# largest antichain none of whose sets contains a set of chi
print(largest_nondominating(U.parse("{{1}}")))

# one block per subset of alpha's members
rep = partition_by_nondominating(U.parse("{{1},{2,3}}"))
print(rep.to_csv())
print(rep.covered, rep.method, rep.ok)

# the same idea inside an interval
I = Interval(U.parse("{{1}}"), U.parse("{{1,2,3}}"))
rep = partition_interval_by_nondominating(I, U.parse("{{1},{2,3}}"))
print(rep.sizes, rep.ok)

# blocks indexed by antichains on the two halves of a split
U4 = Universe(4)
rep = partition_by_product(U4, U4.mask([1, 2]), U4.mask([3, 4]))
print(len(rep.blocks), "blocks cover", rep.covered, "antichains;", rep.method, rep.ok)

# direct join: every chi factors as one piece below nu1 and one below nu2
U2 = Universe(2)
alpha, nu1, nu2 = U2.parse("{{}}"), U2.parse("{{1}}"), U2.parse("{{2}}")
c1, c2 = direct_join_split(alpha, nu1, nu2, U2.parse("{{1},{2}}"))
print(c1, c2, join(c1, c2))
