"""Intersection lattice, Moebius values and the characteristic polynomial.

We build the braid arrangement x_i = x_j in four variables, walk its
intersection lattice rank by rank and read the Betti numbers off the
characteristic polynomial.  Then we check the local-global formula: the k-th
Betti number is the sum of the k-th Betti numbers of the localizations at the
rank-k flats.
"""
from freearr.lattice import (Arrangement, betti, build_poset, charpoly,
                             localglobal_betti_check)

braid = Arrangement(4, [[1, -1, 0, 0], [1, 0, -1, 0], [1, 0, 0, -1],
                        [0, 1, -1, 0], [0, 1, 0, -1], [0, 0, 1, -1]])
print("hyperplanes:", braid.pretty())

poset = build_poset(braid)
for r in range(poset.top_rank + 1):
    level = poset.rank_level(r)
    print(f"rank {r}: {len(level)} flats")
    for X in level[:3]:
        print(f"    {X.pretty():<40} mu = {poset.mu(X)}")

chi = charpoly(poset)
print("\nchi(t) =", chi)
print("integer roots:", chi.integer_roots())
print("Betti numbers:", [betti(poset, k) for k in range(braid.dim + 1)])

for k in range(1, braid.dim):
    print(f"local-global formula for b_{k}:", localglobal_betti_check(braid, k, poset))

# Affine arrangements work the same way; parallel lines simply never meet.
strip = Arrangement(2, [([1, 0], 0), ([1, 0], 1), ([0, 1], 0)])
print("\nstrip", strip.pretty(), "has chi =", charpoly(strip))
