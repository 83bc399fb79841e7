"""A small randomized sweep of the inequality b_2(dA) >= sigma_2.

For random central arrangements in three to five variables and every pivot,
we compare b_2 of the deconing with sigma_2 of the multirestriction and with
the rank-3 freeness scan along the pivot.
"""
import random
from collections import Counter

from freearr.decone import decone
from freearr.freeness import locally_free_codim3
from freearr.lattice import Arrangement, Hyperplane, betti
from freearr.multi import sigma, ziegler_restrict

rng = random.Random(1)
tally = Counter()
for _ in range(60):
    ell = rng.choice([3, 4, 5])
    vectors = [[rng.randint(-1, 1) for _ in range(ell)] for _ in range(ell + 3)]
    hyps = list(dict.fromkeys(Hyperplane(v) for v in vectors if any(v)))
    if len(hyps) < 2:
        continue
    arr = Arrangement(ell, hyps)
    for p in range(len(arr)):
        b2 = betti(decone(arr, p).base, 2)
        s2 = sigma(ziegler_restrict(arr, p)).sigma2
        scan = locally_free_codim3(arr, p).ok
        tally["equal" if b2 == s2 else "strict" if b2 > s2 else "VIOLATION"] += 1
        tally["scan agrees" if (b2 == s2) == scan else "scan DISAGREES"] += 1
print(dict(tally))
