"""Logarithmic derivations and Saito certificates.

``find_saito_basis`` collects minimal generators of D(A, m) degree by degree.
A free module shows up as exactly l generators whose degrees add to |m|, and
the determinant of their coefficients is then checked against Q(A, m).
"""
from freearr.freeness import (FreenessCertificate, derivation_slice,
                              find_saito_basis)
from freearr.lattice import Arrangement
from freearr.multi import MultiArrangement, rank2_exponents


def show(name, ma):
    res = find_saito_basis(ma)
    if isinstance(res, FreenessCertificate):
        print(f"{name}: free, exponents {res.exponents}, det = {res.determinant_scalar} * Q")
        for theta in res.basis:
            print("    ", theta.pretty())
    else:
        print(f"{name}: not free ({res.reason}; generator degrees {res.generator_degrees})")


braid3 = Arrangement(3, [[1, -1, 0], [1, 0, -1], [0, 1, -1]])
show("braid arrangement in 3 variables", MultiArrangement(braid3))

boolean = Arrangement(3, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
show("x^2 y z^3", MultiArrangement(boolean, [2, 1, 3]))

generic = Arrangement(3, [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]])
show("four generic planes", MultiArrangement(generic))

print("\ndegree-1 derivations of the generic arrangement:")
for theta in derivation_slice(MultiArrangement(generic), 1):
    print("    ", theta.pretty())

# Every rank-2 multiarrangement is free.
lines = Arrangement(2, [[1, 0], [0, 1], [1, 1]])
for mult in ([1, 1, 1], [2, 2, 2], [1, 1, 5]):
    print("exponents of", MultiArrangement(lines, mult).pretty(), "=",
          tuple(rank2_exponents(MultiArrangement(lines, mult))))
