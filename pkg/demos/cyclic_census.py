"""
Every Schur ring over a small cyclic group
==========================================

Enumerate the Schur rings of ``Z_n`` twice (by filtering inverse-closed set
partitions, and by refining upward from the trivial ring) and name the
traditional form each one takes.
"""

from collections import Counter

from schurlab import cyclic as Z

for n in range(2, 13):
    rings = Z.enumerate_schur_rings(n)
    assert rings == Z.enumerate_by_closure(n)
    kinds = Counter(Z.classify_traditional(r).kind for r in rings)
    print(f"n={n:2d}  rings={len(rings):3d}  {dict(sorted(kinds.items()))}")

# The structure constants of one ring, read off the verified table.
sc = Z.verify_partition(Z.automorphic_partition(7, [2]))
for (c, d, e), lam in sorted(sc.table.items()):
    print(f"{sc.classes[c]} * {sc.classes[d]} -> {lam} x {sc.classes[e]}")
