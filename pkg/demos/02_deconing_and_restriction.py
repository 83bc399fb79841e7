"""Deconing and the Ziegler multirestriction on an eight-plane example.

The arrangement below lives in four variables.  Choosing w = 0 as the pivot
we (1) cut it with w = 1 to get an affine arrangement in three variables and
(2) restrict the other hyperplanes to w = 0, counting how many land on each
trace.  The second Betti number of (1) is bounded below by sigma_2 of (2).
"""
from freearr.decone import decone, fiber_decomposition_b2, rho
from freearr.lattice import Arrangement, CharPoly, charpoly
from freearr.multi import sigma, ziegler_restrict

A = Arrangement(4, [[1, 0, 0, 0], [1, 0, 0, -1], [0, 1, 0, 0], [0, 1, 0, -1],
                    [1, 1, 1, 0], [1, -1, 1, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
                labels=["x", "x-w", "y", "y-w", "x+y+z", "x-y+z", "z", "w"])
w = A.resolve("w")

d = decone(A, w)
dchi = charpoly(d.base)
print("deconed arrangement:", d.base.pretty())
print("chi(dA) =", dchi)
print("chi(dA) * (t - 1) == chi(A):", dchi * CharPoly([-1, 1]) == charpoly(A))

z = ziegler_restrict(A, w)
print("\nmultirestriction:", z.pretty())
rep = sigma(z)
print(f"sigma_1 = {rep.sigma1}, sigma_2 = {rep.sigma2}, b_2(dA) = {dchi.coefficient(1)}")

# b_2 splits into contributions over the rank-2 flats of the restriction.
rmap = rho(d)
fibers = fiber_decomposition_b2(d, rmap)
print(f"\n{'flat of the restriction':<28} (e1, e2)   fiber b_2")
for X, pair in rep.per_flat.items():
    print(f"{X.pretty():<28} {str(tuple(pair)):<10} {fibers[X]}")
