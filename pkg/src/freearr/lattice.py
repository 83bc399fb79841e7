"""Arrangements, intersection posets, Moebius functions and characteristic polynomials.

Works for both central and affine arrangements over Q.  A hyperplane is the
solution set of ``normal . z = offset``; a flat is identified by the reduced
echelon form of the stacked ``(normal | offset)`` rows of the hyperplanes
containing it.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .poly import default_names
from .qlinalg import QMatrix, _primitive, as_rational, int_row, int_rref, solve_affine

__all__ = [
    "Hyperplane", "Arrangement", "Flat", "IntersectionPoset", "CharPoly",
    "build_poset", "mobius", "charpoly", "betti", "chi0", "localize",
    "essentialize", "localglobal_betti_check", "DuplicateHyperplaneError",
]


class DuplicateHyperplaneError(ValueError):
    def __init__(self, first: int, second: int):
        super().__init__(f"hyperplane {second} duplicates hyperplane {first}")
        self.first = first
        self.second = second


class Hyperplane:
    """The hyperplane ``normal . z = offset``.

    Stored as the primitive integer row ``(normal | offset)`` whose first
    nonzero normal entry is positive; proportional equations compare equal.
    ``normal``/``offset`` are exposed in the scaling with first nonzero
    normal entry 1.
    """

    __slots__ = ("row", "_hash", "__dict__")

    def __init__(self, normal: Sequence, offset=0):
        row = int_row(list(normal) + [offset])
        self._set(row)

    def _set(self, row):
        lead = next((x for x in row[:-1] if x), None)
        if lead is None:
            raise ValueError("hyperplane normal must be nonzero")
        if lead < 0:
            row = [-x for x in row]
        self.row = tuple(row)
        self._hash = hash(self.row)

    @classmethod
    def from_row(cls, row: Sequence[int]) -> "Hyperplane":
        """From an integer ``(normal | offset)`` row, any nonzero scaling."""
        h = cls.__new__(cls)
        g = 0
        for x in row:
            g = gcd(g, x)
        h._set([x // g for x in row] if g > 1 else list(row))
        return h

    def __eq__(self, other):
        return isinstance(other, Hyperplane) and self.row == other.row

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Hyperplane({self.pretty()} = 0)"

    @cached_property
    def normal(self) -> tuple[Fraction, ...]:
        lead = next(x for x in self.row if x)
        return tuple(Fraction(x, lead) for x in self.row[:-1])

    @cached_property
    def offset(self) -> Fraction:
        lead = next(x for x in self.row if x)
        return Fraction(self.row[-1], lead)

    @property
    def int_normal(self) -> tuple[int, ...]:
        return self.row[:-1]

    @property
    def dim(self) -> int:
        return len(self.row) - 1

    @property
    def is_linear(self) -> bool:
        return self.row[-1] == 0

    def equation_row(self) -> list[int]:
        """Primitive integer row ``(normal | offset)``."""
        return list(self.row)

    def evaluate(self, z: Sequence) -> Fraction:
        return sum((a * as_rational(x) for a, x in zip(self.normal, z)), Fraction(0)) - self.offset

    def pretty(self, names: Sequence[str] | None = None) -> str:
        names = names or default_names(self.dim)
        row = self.equation_row()
        terms = []
        for c, n in zip(row[:-1], names):
            if not c:
                continue
            mag = "" if abs(c) == 1 else str(abs(c))
            terms.append(("-" if c < 0 else "+", f"{mag}{n}"))
        s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        s += "".join(f" {sg} {t}" for sg, t in terms[1:])
        if row[-1]:
            s += f" - {row[-1]}" if row[-1] > 0 else f" + {-row[-1]}"
        return s


def _coerce_hyperplane(h, dim: int) -> Hyperplane:
    if isinstance(h, Hyperplane):
        hp = h
    elif isinstance(h, tuple) and len(h) == 2 and isinstance(h[0], (list, tuple)):
        hp = Hyperplane(h[0], h[1])
    else:
        hp = Hyperplane(h)
    if hp.dim != dim:
        raise ValueError(f"hyperplane {hp} does not live in dimension {dim}")
    return hp


class Arrangement:
    """Finite ordered list of distinct hyperplanes in Q^dim."""

    def __init__(self, dim: int, hyperplanes: Iterable = (), labels: Sequence[str | None] | None = None):
        if dim < 1:
            raise ValueError("ambient dimension must be at least 1")
        hyps = tuple(_coerce_hyperplane(h, dim) for h in hyperplanes)
        seen: dict[Hyperplane, int] = {}
        for i, h in enumerate(hyps):
            if h in seen:
                raise DuplicateHyperplaneError(seen[h], i)
            seen[h] = i
        if labels is None:
            labels = [None] * len(hyps)
        if len(labels) != len(hyps):
            raise ValueError("one label per hyperplane expected")
        self.dim = dim
        self.hyperplanes = hyps
        self.labels = tuple(lab if lab is not None else f"H{i}" for i, lab in enumerate(labels))
        self._index = seen

    def __len__(self):
        return len(self.hyperplanes)

    def __iter__(self):
        return iter(self.hyperplanes)

    def __getitem__(self, i):
        return self.hyperplanes[i]

    def __eq__(self, other):
        return (isinstance(other, Arrangement) and self.dim == other.dim
                and self.hyperplanes == other.hyperplanes and self.labels == other.labels)

    def __hash__(self):
        return hash((self.dim, self.hyperplanes))

    def __repr__(self):
        return f"Arrangement(dim={self.dim}, {self.pretty()})"

    @property
    def is_central(self) -> bool:
        """True when every hyperplane passes through the origin."""
        return all(h.is_linear for h in self.hyperplanes)

    def index_of(self, h: Hyperplane) -> int:
        return self._index[h]

    def resolve(self, selector) -> int:
        """Hyperplane index from a label or a 0-based index (labels win)."""
        if isinstance(selector, str):
            if selector in self.labels:
                return self.labels.index(selector)
            if selector.lstrip("-").isdigit():
                selector = int(selector)
            else:
                raise KeyError(f"no hyperplane labelled {selector!r}")
        if not 0 <= selector < len(self):
            raise IndexError(f"hyperplane index {selector} out of range")
        return selector

    def subarrangement(self, indices: Iterable[int]) -> "Arrangement":
        idx = list(indices)
        return Arrangement._trusted(self.dim, [self.hyperplanes[i] for i in idx],
                                    [self.labels[i] for i in idx])

    @classmethod
    def _trusted(cls, dim, hyps, labels) -> "Arrangement":
        """Construct from canonical, pairwise distinct hyperplanes without re-checking."""
        a = cls.__new__(cls)
        a.dim = dim
        a.hyperplanes = tuple(hyps)
        a.labels = tuple(labels)
        a._index = {h: i for i, h in enumerate(a.hyperplanes)}
        return a

    def normals_matrix(self) -> QMatrix:
        return QMatrix.from_rows([h.normal for h in self.hyperplanes], self.dim)

    def rank(self) -> int:
        if not self.hyperplanes:
            return 0
        return len(int_rref([h.int_normal for h in self.hyperplanes], self.dim)[1])

    def pretty(self, names: Sequence[str] | None = None) -> str:
        return " ".join(f"({h.pretty(names)})" for h in self.hyperplanes) or "(empty)"


@dataclass(frozen=True, eq=False)
class Flat:
    """A nonempty intersection of hyperplanes of a fixed arrangement."""

    dim: int
    key: tuple[tuple[int, ...], ...]
    pivots: tuple[int, ...]
    contains: tuple[int, ...]
    mask: int = field(repr=False)

    @property
    def rank(self) -> int:
        return len(self.key)

    @property
    def codim(self) -> int:
        return self.rank

    @property
    def flat_dim(self) -> int:
        return self.dim - self.rank

    @cached_property
    def equations(self) -> QMatrix:
        """Canonical reduced echelon ``(normal | offset)`` stack."""
        rows = [[Fraction(x, r[p]) for x in r] for r, p in zip(self.key, self.pivots)]
        return QMatrix.from_rows(rows, self.dim + 1) if rows else QMatrix.zeros(0, self.dim + 1)

    @cached_property
    def _solution(self):
        eq = self.equations
        normals = QMatrix.from_rows([r[:-1] for r in eq.to_rows()], self.dim) if eq.rows \
            else QMatrix.zeros(0, self.dim)
        sol = solve_affine(normals, [r[-1] for r in eq.to_rows()])
        assert sol is not None
        return sol

    @property
    def basepoint(self) -> tuple[Fraction, ...]:
        return self._solution[0]

    @property
    def directions(self) -> list[tuple[Fraction, ...]]:
        return self._solution[1]

    @property
    def is_linear(self) -> bool:
        return all(r[-1] == 0 for r in self.key)

    def pretty(self, names: Sequence[str] | None = None) -> str:
        if not self.key:
            return "V"
        return ", ".join(f"{Hyperplane.from_row(r).pretty(names)} = 0" for r in self.key)

    def __eq__(self, other):
        return isinstance(other, Flat) and self.dim == other.dim and self.key == other.key

    def __hash__(self):
        return hash((self.dim, self.key))

    def __le__(self, other: "Flat") -> bool:
        """Poset order: reverse inclusion of subspaces."""
        return self.mask & other.mask == self.mask

    def __lt__(self, other: "Flat") -> bool:
        return self.mask != other.mask and self <= other


def _reduce(rows: Sequence[Sequence[int]], pivots: Sequence[int], v: Sequence[int]) -> list[int]:
    v = list(v)
    for r, p in zip(rows, pivots):
        b = v[p]
        if b:
            a = r[p]
            v = [a * x - b * y for x, y in zip(v, r)]
    return v


def _extend(rows, pivots, v):
    """Echelon form of ``rows + [v]`` for v outside their span, or None when
    the new system is inconsistent (the pivot lands in the offset column).

    Produces exactly what :func:`int_rref` would, without redoing the
    elimination of the rows that are already reduced.
    """
    v = _reduce(rows, pivots, v)
    p = next(i for i, x in enumerate(v) if x)
    if p == len(v) - 1:
        return None
    v = _primitive(v)
    if v[p] < 0:
        v = [-x for x in v]
    a = v[p]
    out, piv = [], []
    placed = False
    for r, q in zip(rows, pivots):
        if not placed and p < q:
            out.append(v)
            piv.append(p)
            placed = True
        b = r[p]
        if b:
            r = _primitive([a * x - b * y for x, y in zip(r, v)])
        out.append(list(r))
        piv.append(q)
    if not placed:
        out.append(v)
        piv.append(p)
    return out, piv


def _in_span(rows, pivots, v) -> bool:
    return not any(_reduce(rows, pivots, v))


class IntersectionPoset:
    """Ranked poset ``L(A)`` with Moebius values, possibly truncated at ``max_rank``."""

    def __init__(self, arrangement: Arrangement, levels: list[list[Flat]], max_rank: int | None):
        self.arrangement = arrangement
        self.levels = levels
        self.max_rank = max_rank
        self._by_key = {f.key: f for lvl in levels for f in lvl}
        self.mobius = mobius(self)

    @property
    def complete(self) -> bool:
        return self.max_rank is None

    @property
    def top_rank(self) -> int:
        return len(self.levels) - 1

    def __len__(self):
        return sum(len(lvl) for lvl in self.levels)

    def __iter__(self):
        for lvl in self.levels:
            yield from lvl

    def __contains__(self, flat: Flat) -> bool:
        return isinstance(flat, Flat) and self._by_key.get(flat.key) is not None

    def rank_level(self, r: int) -> list[Flat]:
        if self.max_rank is not None and r > self.max_rank:
            raise ValueError(f"poset was truncated at rank {self.max_rank}")
        return self.levels[r] if r < len(self.levels) else []

    @property
    def bottom(self) -> Flat:
        return self.levels[0][0]

    def mu(self, flat: Flat) -> int:
        return self.mobius[flat]

    def lookup(self, key) -> Flat | None:
        return self._by_key.get(key)

    def flat_of(self, indices: Iterable[int]) -> Flat:
        """The flat cut out by the given hyperplanes (must be nonempty)."""
        arr = self.arrangement
        rows, pivots = int_rref([arr[i].equation_row() for i in indices], arr.dim + 1)
        if pivots and pivots[-1] == arr.dim:
            raise ValueError("the hyperplanes have empty intersection")
        flat = self._by_key.get(tuple(tuple(r) for r in rows))
        if flat is None:
            raise KeyError("flat not present (poset truncated?)")
        return flat


def _make_flat(arr: Arrangement, rows, pivots, rowcache) -> Flat:
    contains = tuple(j for j, h in enumerate(rowcache) if _in_span(rows, pivots, h))
    mask = 0
    for j in contains:
        mask |= 1 << j
    return Flat(arr.dim, tuple(tuple(r) for r in rows), tuple(pivots), contains, mask)


def build_poset(arr: Arrangement, max_rank: int | None = None) -> IntersectionPoset:
    """Intersection poset, built rank by rank.

    Each rank-r flat is intersected with every hyperplane not already known to
    contain a child; empty intersections (a pivot in the offset column) are
    dropped, duplicates are merged by their echelon key, and the ``contains``
    set of each new flat is recomputed against the whole arrangement.
    """
    rowcache = [h.equation_row() for h in arr.hyperplanes]
    top = Flat(arr.dim, (), (), (), 0)
    levels = [[top]]
    seen = {(): top}
    limit = arr.dim if max_rank is None else min(max_rank, arr.dim)
    for r in range(limit):
        nxt: list[Flat] = []
        for X in levels[r]:
            covered = X.mask
            for j, h in enumerate(rowcache):
                if covered >> j & 1:
                    continue
                ext = _extend(X.key, X.pivots, h)
                if ext is None:
                    continue
                rows, pivots = ext
                key = tuple(tuple(row) for row in rows)
                Y = seen.get(key)
                if Y is None:
                    Y = _make_flat(arr, rows, pivots, rowcache)
                    seen[key] = Y
                    nxt.append(Y)
                covered |= Y.mask
        if not nxt:
            break
        nxt.sort(key=lambda f: f.key)
        levels.append(nxt)
    return IntersectionPoset(arr, levels, max_rank)


def mobius(poset: IntersectionPoset) -> dict[Flat, int]:
    """Moebius values from ``mu(V) = 1`` and ``sum_{Y <= X} mu(Y) = 0``."""
    mu: dict[Flat, int] = {}
    done: list[tuple[int, int]] = []
    for lvl in poset.levels:
        for X in lvl:
            if not X.mask:
                val = 1
            else:
                m = X.mask
                val = -sum(v for ym, v in done if ym & m == ym)
            mu[X] = val
        done.extend((X.mask, mu[X]) for X in lvl)
    return mu


@dataclass(frozen=True)
class CharPoly:
    """Integer polynomial in t, coefficients listed from t^0 upward."""

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int]):
        c = [int(x) for x in coeffs]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c) or (0,))

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> "CharPoly":
        out = cls([1])
        for r in roots:
            out = out * cls([-r, 1])
        return out

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __call__(self, t):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __mul__(self, other: "CharPoly") -> "CharPoly":
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return CharPoly(out)

    def __sub__(self, other: "CharPoly") -> "CharPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return CharPoly([self.coefficient(k) - other.coefficient(k) for k in range(n)])

    def divide_linear(self, root: int) -> "CharPoly":
        """Exact division by ``(t - root)``; raises if there is a remainder."""
        q = [0] * max(self.degree, 0)
        rem = 0
        for k in range(self.degree, -1, -1):
            rem = rem * root + self.coeffs[k]
            if k:
                q[k - 1] = rem
        if rem:
            raise ArithmeticError(f"{self} is not divisible by (t - {root})")
        return CharPoly(q or [0])

    def signed_coefficients(self, ell: int | None = None) -> list[int]:
        """``[b_0, b_1, ...]`` with ``chi = sum (-1)^k b_k t^(ell-k)``."""
        ell = self.degree if ell is None else ell
        return [(-1) ** k * self.coefficient(ell - k) for k in range(ell + 1)]

    def integer_roots(self) -> list[int]:
        """Integer roots with multiplicity."""
        roots, p = [], self
        while p.degree > 0:
            c0 = next((c for c in p.coeffs if c), 0)
            cands = {0} if p.coeffs[0] == 0 else _divisors(abs(c0))
            for r in sorted(cands):
                if p(r) == 0:
                    roots.append(r)
                    p = p.divide_linear(r)
                    break
            else:
                break
        return sorted(roots)

    def splits_over_integers(self) -> bool:
        return len(self.integer_roots()) == self.degree

    def __str__(self):
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                var = "t" if k == 1 else f"t^{k}"
                body = var if mag == 1 else f"{mag}{var}"
            parts.append(("-" if c < 0 else "+", body))
        if not parts:
            return "0"
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return s + "".join(f" {sg} {b}" for sg, b in parts[1:])

    def to_dict(self) -> dict:
        return {"coeffs": list(self.coeffs), "pretty": str(self)}


def _divisors(n: int) -> set[int]:
    out = set()
    d = 1
    while d * d <= n:
        if n % d == 0:
            out |= {d, -d, n // d, -(n // d)}
        d += 1
    return out


def charpoly(arr: Arrangement | IntersectionPoset) -> CharPoly:
    """``chi(A, t) = sum_X mu(X) t^dim(X)``."""
    poset = arr if isinstance(arr, IntersectionPoset) else build_poset(arr)
    if not poset.complete:
        raise ValueError("characteristic polynomial needs the full poset")
    ell = poset.arrangement.dim
    coeffs = [0] * (ell + 1)
    for X, m in poset.mobius.items():
        coeffs[ell - X.rank] += m
    return CharPoly(coeffs)


def betti(arr: Arrangement | IntersectionPoset, k: int) -> int:
    """``b_k = (-1)^k * [t^(ell-k)] chi``, summed directly over ``L_k``."""
    poset = arr if isinstance(arr, IntersectionPoset) else None
    a = poset.arrangement if poset else arr
    if not 0 <= k <= a.dim:
        raise ValueError(f"rank {k} out of range 0..{a.dim}")
    if poset is None or (poset.max_rank is not None and poset.max_rank < k):
        poset = build_poset(a, max_rank=k)
    return (-1) ** k * sum(poset.mobius[X] for X in poset.rank_level(k))


def chi0(arr: Arrangement) -> CharPoly:
    """``chi(A, t) / (t - 1)`` for a nonempty central arrangement."""
    if not arr.is_central:
        raise ValueError("chi0 requires a central arrangement")
    if not len(arr):
        raise ValueError("chi0 requires a nonempty arrangement")
    return charpoly(arr).divide_linear(1)


def localize(arr: Arrangement, X: Flat) -> Arrangement:
    """Subarrangement ``A_X`` of hyperplanes containing X, in the same space."""
    if X.dim != arr.dim:
        raise ValueError("flat does not belong to this arrangement")
    rows = [h.equation_row() for h in arr.hyperplanes]
    contains = tuple(j for j, h in enumerate(rows) if _in_span(X.key, X.pivots, h))
    if contains != X.contains or len(int_rref([rows[j] for j in contains], arr.dim + 1)[0]) != X.rank:
        raise ValueError("flat is not an element of L(A) for this arrangement")
    return arr.subarrangement(contains)


def essentialize(arr: Arrangement) -> tuple[Arrangement, QMatrix]:
    """Rewrite a central arrangement in ``rank(arr)`` coordinates.

    The returned matrix B (rank x dim) is the coordinate map ``z -> B z``;
    each normal ``a`` becomes the unique ``c`` with ``c B = a``.
    """
    if not arr.is_central:
        raise ValueError("essentialize requires a central arrangement")
    rows, pivots = int_rref([h.int_normal for h in arr.hyperplanes], arr.dim)
    if not pivots:
        raise ValueError("the empty arrangement has no essentialization")
    basis = [[Fraction(x, r[p]) for x in r] for r, p in zip(rows, pivots)]
    hyps = [Hyperplane.from_row([h.row[p] for p in pivots] + [0]) for h in arr.hyperplanes]
    return Arrangement._trusted(len(pivots), hyps, arr.labels), QMatrix.from_rows(basis, arr.dim)


def localglobal_betti_check(arr: Arrangement, k: int, poset: IntersectionPoset | None = None) -> bool:
    """Self-test: ``b_k(A) == sum_{X in L_k} b_k(A_X)``."""
    if poset is None or (poset.max_rank is not None and poset.max_rank < k):
        poset = build_poset(arr, max_rank=k)
    total = betti(poset, k)
    local = sum(betti(localize(arr, X), k) for X in poset.rank_level(k))
    return total == local
