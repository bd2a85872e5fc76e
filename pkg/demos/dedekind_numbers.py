"""
Dedekind numbers three ways
===========================

Brute force stops at n = 5.  Summing over levels and splitting the ground
set both reach n = 6 in about a second.
"""

import time

from ac_lattice import dedekind_levels, dedekind_product
from ac_lattice.oracle import enumerate_all

for n in range(6):
    print(n, sum(1 for _ in enumerate_all(n)), dedekind_levels(n), dedekind_product(n))

t = time.perf_counter()
print("levels:", dedekind_levels(6), f"{time.perf_counter() - t:.2f}s")

t = time.perf_counter()
print("product 3+3:", dedekind_product(6, (3, 3)), f"{time.perf_counter() - t:.2f}s")

# worker processes split the top-level sum; the total is the same
print(dedekind_levels(6, workers=4))
