"""Independent reference computations built on sympy.

Nothing here imports the package's linear algebra or poset code, so these
serve as oracles for the exact values the package reports.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations

import sympy as sp
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix


def _rank(rows, ncols) -> int:
    if not rows:
        return 0
    conv = QQ.from_sympy
    entries = [[QQ(x) if isinstance(x, int) else conv(sp.sympify(x)) for x in r] for r in rows]
    return DomainMatrix(entries, (len(rows), ncols), QQ).rank()


def whitney_charpoly(normals, offsets=None) -> list[int]:
    """chi(A, t) from Whitney's subset sum, coefficients from t^0 upward.

    ``sum over subsets S with nonempty intersection of (-1)^|S| t^(dim cap S)``.
    A subset has nonempty intersection exactly when appending the offsets
    does not raise the rank.
    """
    n = len(normals)
    ell = len(normals[0]) if n else 0
    offsets = offsets or [0] * n
    coeffs = [0] * (ell + 1)
    for k in range(n + 1):
        for S in combinations(range(n), k):
            a = [list(normals[i]) for i in S]
            r = _rank(a, ell)
            if _rank([row + [offsets[i]] for row, i in zip(a, S)], ell + 1) != r:
                continue
            coeffs[ell - r] += (-1) ** k
    return coeffs


def _polypow(p, e):
    out = [1]
    for _ in range(e):
        out = [sum(out[k] * p[j - k] for k in range(len(out)) if 0 <= j - k < len(p))
               for j in range(len(out) + len(p) - 1)]
    return out


def _polymul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        for j, y in enumerate(q):
            out[i + j] += x * y
    return out


@lru_cache(maxsize=None)
def _transverse_rows(a: int, b: int, d: int, m: int):
    """Conditions for ``(a x + b y)^m | a P + b Q`` with P, Q of degree d.

    Restrict ``f = a P + b Q`` to the line through the point ``(-b, a)`` in the
    transverse direction ``(a, b)``; divisibility means the first m Taylor
    coefficients in the parameter t vanish.
    """
    cols = []
    for i in range(d + 1):
        mono = _polymul(_polypow([-b, a], i), _polypow([a, b], d - i))
        cols.append([mono[j] if j < len(mono) else 0 for j in range(m)])
    return [[a * cols[i][j] for i in range(d + 1)] + [b * cols[i][j] for i in range(d + 1)]
            for j in range(m)]


def rank2_slice_dims(lines, mults, top: int) -> list[int]:
    """``dim D(A, m)_d`` for d = 0..top of a multiarrangement of lines in the plane."""
    out = []
    for d in range(top + 1):
        rows = []
        for (a, b), m in zip(lines, mults):
            rows.extend(_transverse_rows(a, b, d, m))
        out.append(2 * (d + 1) - _rank(rows, 2 * d + 2))
    return out


def rank2_exponents_bruteforce(lines, mults) -> tuple[int, int]:
    """Exponents read off the slice dimensions over every degree 0..|m|.

    A free rank-2 module with exponents (e1, e2) has
    ``dim D_d = max(0, d - e1 + 1) + max(0, d - e2 + 1)``; the scan checks
    that every degree matches this shape, not just the first nonzero one.
    """
    total = sum(mults)
    dims = rank2_slice_dims(lines, mults, total)
    e1 = next(d for d, v in enumerate(dims) if v)
    e2 = total - e1
    expect = [max(0, d - e1 + 1) + max(0, d - e2 + 1) for d in range(total + 1)]
    if dims != expect:
        raise AssertionError(f"slice dimensions {dims} do not fit exponents {(e1, e2)}")
    return (e1, e2)


def slice_dimension(normals, mults, d: int) -> int:
    """``dim D(A, m)_d`` for a central multiarrangement in any number of variables.

    Divisibility by ``alpha^m`` is tested by substituting one variable so that
    alpha becomes a new variable u and requiring the coefficients of
    ``u^0 .. u^(m-1)`` to vanish identically.
    """
    ell = len(normals[0])
    xs = sp.symbols(f"x0:{ell}")
    u = sp.Symbol("u")
    monos = sorted(sp.itermonomials(xs, d, d), key=sp.default_sort_key) if d else [sp.Integer(1)]
    unknowns = sp.symbols(f"c0:{ell * len(monos)}")
    theta = [sum(unknowns[i * len(monos) + j] * monos[j] for j in range(len(monos))) for i in range(ell)]
    eqs = []
    for a, m in zip(normals, mults):
        if not m:
            continue
        f = sum(ai * th for ai, th in zip(a, theta))
        k = next(i for i, ai in enumerate(a) if ai)
        sub = (u - sum(a[i] * xs[i] for i in range(ell) if i != k)) / sp.Integer(a[k])
        g = sp.Poly(sp.expand(f.subs(xs[k], sub)), u, *[xs[i] for i in range(ell) if i != k])
        for mono, c in g.terms():
            if mono[0] < m:
                eqs.append(c)
    if not eqs:
        return len(unknowns)
    A, _ = sp.linear_eq_to_matrix(eqs, unknowns)
    return len(unknowns) - _rank(A.tolist(), len(unknowns))
