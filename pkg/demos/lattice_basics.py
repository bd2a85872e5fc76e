"""
Antichains and their lattice operations
=======================================

"""

from ac_lattice import Universe, direct_product, join, leq, meet, relabel

# subsets of {1,2,3}; elements are 1-based
U = Universe(3)
a = U.parse("{{1,2}}")
b = U.parse("{{1,3}}")
print("join:", join(a, b))
print("meet:", meet(a, b))

# order is "every member fits inside some member", not member inclusion
print(leq(U.parse("{{1}}"), U.parse("{{1,2}}")))

# bottom (no sets) and {{}} (just the empty set) are different antichains
print(U.bottom, U.parse("{{}}"), U.top)

# operators work too
print(a | b, a & b, a <= a | b)

# direct product needs disjoint supports
print(direct_product(U.parse("{{1}}"), U.parse("{{2},{3}}")))

# renaming elements is a lattice isomorphism
print(relabel(U.parse("{{1},{2,3}}"), [3, 2, 1]))
