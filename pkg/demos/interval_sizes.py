"""
Counting the antichains in an interval
======================================

The interval between {{1}} and {{1,2,3}} holds 14 antichains.  All the
counting routes agree on it.
"""

from ac_lattice import (
    Interval,
    Universe,
    canonical_decomposition,
    even_odd_terms,
    lift_interval,
    size_brute,
    size_even_odd,
    size_multilevel,
    size_pivot,
    underlying_poset,
)

U = Universe(3)
I = Interval(U.parse("{{1}}"), U.parse("{{1,2,3}}"))

# the sets that can be added on top of the bottom, grouped by size
for line in underlying_poset(I).format_levels():
    print(line)

print("brute:", size_brute(I))
print("sum from the top level:", size_even_odd(I, "i"))
print("sum from the level below:", size_even_odd(I, "ii"))
print("pivot on level 2:", size_pivot(I, 2))
print("nested sum over [2]:", size_multilevel(I, [2]))

# the individual terms of the top-level sum
for layers, weight in even_odd_terms(I, "i"):
    print(weight, {lv: str(x) for lv, x in layers.items()})

# every member splits uniquely into redundant layers
print(canonical_decomposition(I, U.parse("{{1},{2,3}}")))

# lifting by a fresh element keeps the size
U4 = Universe(4)
lo, hi = U4.parse("{{1}}"), U4.parse("{{1,2},{3}}")
print(size_brute(Interval(lo, hi)), size_brute(lift_interval(lo, hi, U4.mask([4]))))
