"""Deciding freeness by comparing b_2 of the deconing with sigma_2.

Two arrangements that differ in a single hyperplane (z versus z - w) share
the same multirestriction to w = 0 and both satisfy b_2 = sigma_2, yet their
deconings have different characteristic polynomials.  The report explains
what can and cannot be concluded.
"""
import json

from freearr.freeness import theorem_check, ziegler_gap
from freearr.lattice import Arrangement


def example(seventh):
    return Arrangement(4, [[1, 0, 0, 0], [1, 0, 0, -1], [0, 1, 0, 0], [0, 1, 0, -1],
                           [1, 1, 1, 0], [1, -1, 1, 0], seventh, [0, 0, 0, 1]],
                       labels=["x", "x-w", "y", "y-w", "x+y+z", "x-y+z", "h7", "w"])


for name, arr in [("with z", example([0, 0, 1, 0])), ("with z - w", example([0, 0, 1, -1]))]:
    rep = theorem_check(arr, arr.resolve("w"))
    print(f"{name}: chi(dA) = {rep.decone_charpoly}")
    print(f"    b2 = {rep.b2}, sigma2 = {rep.sigma2}, codim-3 scan: {rep.codim3_scan.ok}")
    print(f"    verdict: {rep.verdict}")
    for note in rep.notes:
        print("    -", note)
    print("    higher sigma:", rep.to_dict()["higher_sigma"])

braid = Arrangement(4, [[1, -1, 0, 0], [1, 0, -1, 0], [1, 0, 0, -1],
                        [0, 1, -1, 0], [0, 1, 0, -1], [0, 0, 1, -1]])
rep = theorem_check(braid, 0)
print("\nbraid arrangement, pivot x - y:", rep.verdict)
print(json.dumps(ziegler_gap(braid, 0).to_dict(), indent=2))
