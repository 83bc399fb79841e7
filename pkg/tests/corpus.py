"""Seeded random arrangements shared by the property and acceptance suites."""
from __future__ import annotations

import random
from itertools import combinations

from freearr.lattice import Arrangement, Hyperplane


def root_vectors(ell: int) -> list[list[int]]:
    """Positive roots of type B_ell: e_i, e_i - e_j, e_i + e_j."""
    out = []
    for i in range(ell):
        out.append([int(k == i) for k in range(ell)])
    for i, j in combinations(range(ell), 2):
        for s in (1, -1):
            v = [0] * ell
            v[i], v[j] = 1, s
            out.append(v)
    return out


def _distinct(vectors, ell):
    seen, out = set(), []
    for v in vectors:
        if not any(v):
            continue
        h = Hyperplane(v)
        if h not in seen:
            seen.add(h)
            out.append(h)
    return out


def random_central(rng: random.Random, ell: int, kind: str) -> Arrangement:
    """``kind`` is one of generic, small (entries in -1..1), roots (subset of B_ell)."""
    if kind == "roots":
        pool = root_vectors(ell)
        n = rng.randint(ell, min(len(pool), ell + 5))
        hyps = _distinct(rng.sample(pool, n), ell)
        # keep coordinate hyperplanes often so that most instances are essential
    else:
        lo, hi = (-4, 4) if kind == "generic" else (-1, 1)
        n = rng.randint(ell, ell + (3 if ell < 5 else 2) + (1 if kind == "small" else 0))
        hyps = _distinct(([rng.randint(lo, hi) for _ in range(ell)] for _ in range(n)), ell)
    return Arrangement(ell, hyps)


def corpus(size: int = 500, seed: int = 20240501) -> list[Arrangement]:
    rng = random.Random(seed)
    kinds = ["generic", "small", "roots"]
    dims = [3, 4, 5]
    out = []
    while len(out) < size:
        ell = dims[len(out) % 3]
        kind = kinds[(len(out) // 3) % 3]
        arr = random_central(rng, ell, kind)
        if len(arr) >= 2:
            out.append(arr)
    return out


def random_rank2(rng: random.Random, max_total: int = 12) -> tuple[list[list[int]], list[int]]:
    """Distinct lines in the plane with positive multiplicities, total at most ``max_total``."""
    k = rng.randint(1, 5)
    lines: list[list[int]] = []
    seen = set()
    while len(lines) < k:
        v = [rng.randint(-3, 3), rng.randint(-3, 3)]
        if not any(v):
            continue
        h = Hyperplane(v)
        if h in seen:
            continue
        seen.add(h)
        lines.append(v)
    budget = rng.randint(k, max_total)
    mult = [1] * k
    for _ in range(budget - k):
        mult[rng.randrange(k)] += 1
    return lines, mult
