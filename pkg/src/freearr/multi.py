"""Multiarrangements, Ziegler restriction, rank-2 exponents and sigma_1, sigma_2."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

from .decone import trace_arrangement
from .lattice import (Arrangement, CharPoly, Flat, build_poset, essentialize,
                      default_names, localize)
from .poly import Poly
from .qlinalg import int_row, int_rref

__all__ = [
    "MultiArrangement", "ExponentPair", "SigmaReport", "ziegler_restrict",
    "rank2_exponents", "rank2_slice_dim", "sigma", "localglobal_sigma_check",
    "free_multi_charpoly",
]


class MultiArrangement:
    """A central arrangement with a nonnegative integer weight on each hyperplane.

    Zero-weight hyperplanes are kept for bookkeeping but ignored by every
    computation; :meth:`support` drops them.
    """

    def __init__(self, base: Arrangement, mult: Sequence[int] | None = None):
        if not base.is_central:
            raise ValueError("multiarrangements must be central")
        mult = [1] * len(base) if mult is None else [int(m) for m in mult]
        if len(mult) != len(base):
            raise ValueError("one multiplicity per hyperplane expected")
        if any(m < 0 for m in mult):
            raise ValueError("multiplicities must be nonnegative")
        self.base = base
        self.mult = tuple(mult)

    @property
    def dim(self) -> int:
        return self.base.dim

    @property
    def total(self) -> int:
        """``|m|``, which is also ``deg Q(A, m)``."""
        return sum(self.mult)

    def __len__(self):
        return len(self.base)

    def __eq__(self, other):
        return isinstance(other, MultiArrangement) and self.as_multiset() == other.as_multiset() \
            and self.dim == other.dim

    def __hash__(self):
        return hash(frozenset(self.as_multiset().items()))

    def as_multiset(self) -> dict:
        return {h: m for h, m in zip(self.base.hyperplanes, self.mult) if m}

    def support(self) -> "MultiArrangement":
        keep = [i for i, m in enumerate(self.mult) if m]
        return MultiArrangement(self.base.subarrangement(keep), [self.mult[i] for i in keep])

    def restrict_to(self, indices: Iterable[int]) -> "MultiArrangement":
        idx = list(indices)
        return MultiArrangement(self.base.subarrangement(idx), [self.mult[i] for i in idx])

    def localize(self, X: Flat) -> "MultiArrangement":
        """``(A_X, m_X)``; X must be a flat of the support."""
        supp = self.support()
        sub = localize(supp.base, X)
        return MultiArrangement(sub, [supp.mult[supp.base.index_of(h)] for h in sub])

    def essentialize(self) -> "MultiArrangement":
        ess, _ = essentialize(self.support().base)
        return MultiArrangement(ess, self.support().mult)

    def defining_form(self) -> Poly:
        q = Poly.constant(self.dim, 1)
        for h, m in zip(self.base, self.mult):
            if m:
                q = q * Poly.linear(h.normal) ** m
        return q

    def pretty(self, names: Sequence[str] | None = None) -> str:
        names = names or default_names(self.dim)
        parts = []
        for h, m in zip(self.base, self.mult):
            if not m:
                continue
            body = h.pretty(names)
            core = body if " " not in body else f"({body})"
            parts.append(core if m == 1 else f"{core}^{m}")
        return "".join(parts) or "1"

    def __repr__(self):
        return f"MultiArrangement(dim={self.dim}, {self.pretty()})"


@dataclass(frozen=True, order=True)
class ExponentPair:
    e1: int
    e2: int

    def __post_init__(self):
        if self.e1 > self.e2:
            raise ValueError("exponents must satisfy e1 <= e2")

    @property
    def product(self) -> int:
        return self.e1 * self.e2

    def __iter__(self):
        return iter((self.e1, self.e2))


@dataclass(frozen=True)
class SigmaReport:
    sigma1: int
    sigma2: int
    per_flat: dict


def ziegler_restrict(arr: Arrangement, pivot: int) -> MultiArrangement:
    """Multirestriction onto the pivot: each trace weighted by how many hyperplanes cut it."""
    traces, mult, _ = trace_arrangement(arr, pivot)
    return MultiArrangement(traces, mult)


def _rank2_constraints(lines: Sequence[tuple[int, int]], mults: Sequence[int], d: int) -> list[list[int]]:
    """Linear conditions on (P, Q) of degree d for ``a P + b Q`` to be divisible by ``(a x + b y)^m``.

    Unknowns are the coefficients p_i, q_i of ``x^i y^(d-i)``.  With ``a != 0``
    the condition is that the remainder of ``f(x, 1)`` modulo ``(x - r)^m``,
    ``r = -b/a``, vanishes; its coefficients in the basis ``(x - r)^j`` are the
    scaled Taylor sums below (multiplied through by ``a^(d-j)``).
    """
    rows = []
    for (a, b), m in zip(lines, mults):
        if a == 0:
            for i in range(max(d - m + 1, 0), d + 1):
                row = [0] * (2 * d + 2)
                row[d + 1 + i] = b
                rows.append(row)
            continue
        for j in range(min(m, d + 1)):
            f = [comb(i, j) * (-b) ** (i - j) * a ** (d - i) if i >= j else 0 for i in range(d + 1)]
            rows.append([a * c for c in f] + [b * c for c in f])
    return rows


def rank2_slice_dim(ma: MultiArrangement, d: int) -> int:
    """Dimension of the degree-d part of ``D(A, m)`` for a multiarrangement in two variables."""
    ma = ma.support()
    if ma.dim != 2:
        raise ValueError("expected a multiarrangement in two variables")
    lines = [tuple(int_row(h.normal)) for h in ma.base]
    rows = _rank2_constraints(lines, ma.mult, d)
    return 2 * (d + 1) - len(int_rref(rows, 2 * d + 2)[1])


def rank2_exponents(ma: MultiArrangement) -> ExponentPair:
    """Exponents of a multiarrangement of rank at most two.

    Scans degrees upward; the first degree with a nonzero derivation slice is
    the smaller exponent and the other one is ``|m| - e1``.
    """
    ma = ma.support()
    if ma.total == 0:
        return ExponentPair(0, 0)
    r = ma.base.rank()
    if r > 2:
        raise ValueError(f"rank {r} multiarrangement has no exponent pair")
    if r == 1:
        return ExponentPair(0, ma.total)
    return _exponents_of(_plane_key([h.int_normal for h in ma.base], ma.dim, ma.mult))


def _plane_key(normals, dim: int, mult) -> tuple:
    """Lines of a rank-2 arrangement in the coordinates of its row echelon basis.

    Each normal is a combination of the two echelon rows, and its coefficients
    are its entries at the pivot columns.  Lines are made primitive with a
    positive leading entry and sorted, so the key ignores hyperplane order.
    """
    _, pivots = int_rref(normals, dim)
    p, q = pivots
    lines = []
    for n, m in zip(normals, mult):
        a, b = int_row([n[p], n[q]])
        if a < 0 or (a == 0 and b < 0):
            a, b = -a, -b
        lines.append(((a, b), m))
    return tuple(sorted(lines))


@lru_cache(maxsize=65536)
def _exponents_of(key: tuple) -> ExponentPair:
    lines = [ln for ln, _ in key]
    mults = [m for _, m in key]
    total = sum(mults)
    if len(lines) == 2:
        return ExponentPair(min(mults), max(mults))
    for d in range(total // 2 + 1):
        rows = _rank2_constraints(lines, mults, d)
        if 2 * (d + 1) > len(int_rref(rows, 2 * d + 2)[1]):
            return ExponentPair(d, total - d)
    raise RuntimeError("no derivation found up to degree |m|/2")


def sigma(ma: MultiArrangement) -> SigmaReport:
    """``sigma_1 = sum m(H)`` and ``sigma_2 = sum_X e1(X) e2(X)`` over ``L_2``."""
    supp = ma.support()
    per_flat = {}
    if len(supp):
        poset = build_poset(supp.base, max_rank=2)
        normals = [h.int_normal for h in supp.base]
        for X in poset.rank_level(2):
            key = _plane_key([normals[i] for i in X.contains], supp.dim,
                             [supp.mult[i] for i in X.contains])
            per_flat[X] = _exponents_of(key)
    return SigmaReport(supp.total, sum(p.product for p in per_flat.values()), per_flat)


def localglobal_sigma_check(ma: MultiArrangement, k: int) -> bool:
    """Self-test: ``sigma_k(A, m) == sum_{X in L_k} sigma_k(A_X, m_X)`` for k = 1, 2."""
    if k not in (1, 2):
        raise ValueError("only sigma_1 and sigma_2 are available")
    supp = ma.support()
    if not len(supp):
        return True
    field = "sigma1" if k == 1 else "sigma2"
    total = getattr(sigma(supp), field)
    poset = build_poset(supp.base, max_rank=k)
    local = sum(getattr(sigma(supp.localize(X)), field) for X in poset.rank_level(k))
    return total == local


def free_multi_charpoly(exponents: Iterable[int]) -> CharPoly:
    """``prod (t - d_i)`` for a free multiarrangement with the given exponents."""
    return CharPoly.from_roots(exponents)
