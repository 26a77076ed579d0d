"""The rank of H^1(Wh'(Z2^G)) across the catalog.

The invariant is S/C with S = {g : g^2 in [G,G]} and C generated by [G,G]
together with the elements conjugate to their own inverses.  Basic and
abelian 2-groups always give rank zero; the interesting catalog entries
give ranks 1 and 3.
"""

import time

from twogroups import h1_wh_prime, shipped_catalog

cat = shipped_catalog()

print("=== H^1(Wh') ranks ===")
for name, g in sorted(cat.items(), key=lambda kv: (kv[1].order, kv[0])):
    t0 = time.time()
    data = h1_wh_prime(g)
    print(f"  {name:12s} rank {data.rank}   |S| = {data.s_subgroup.order:5d}  "
          f"|C| = {data.c_subgroup.order:5d}   ({time.time() - t0:.2f}s)")

print()
print("=== conjugating witnesses for SG128_1377 (rank 0) ===")
g = cat["SG128_1377"]
data = h1_wh_prime(g)
for elem, conjugator in data.witnesses[:4]:
    lhs = g.conj(elem, conjugator)
    print(f"  ({g.element_str(conjugator)})^-1 ({g.element_str(elem)}) "
          f"({g.element_str(conjugator)}) = {g.element_str(lhs)} "
          f"(= inverse: {lhs == g.inv(elem)})")

print()
print("=== the order-2^14 group has rank 3 ===")
big = cat["G16384"]
t0 = time.time()
data = h1_wh_prime(big)
print(f"  rank {data.rank} in {time.time() - t0:.2f}s "
      f"(class-2 fast path, |S| = {data.s_subgroup.order})")
