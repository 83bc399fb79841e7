"""Exact dense linear algebra over the rationals.

Elimination runs fraction-free on integer rows (each row is scaled by the
lcm of its denominators and kept primitive), which is far cheaper in Python
than arithmetic on ``Fraction`` objects.  Public results are always
``Fraction`` values in lowest terms.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

__all__ = [
    "QMatrix",
    "as_rational",
    "format_rational",
    "rref",
    "rank",
    "kernel_basis",
    "solve_affine",
    "int_row",
    "int_rref",
    "int_kernel",
    "inverse",
]


def as_rational(x) -> Fraction:
    """Coerce ints, Fractions and strings like ``"-3/4"`` to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if not s:
            raise ValueError("empty rational literal")
        return Fraction(s)
    if isinstance(x, float):
        raise TypeError("floating point input is not accepted; use 'p/q' strings")
    return Fraction(x)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class QMatrix:
    """Immutable row-major rational matrix."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable = ()):
        entries = tuple(as_rational(e) for e in entries)
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("QMatrix is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "QMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("cannot infer column count of an empty matrix")
            cols = len(rows[0])
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, (e for r in rows for e in r))

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls(n, n, (int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QMatrix":
        return cls(rows, cols, [0] * (rows * cols))

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[tuple]:
        return [self.row(i) for i in range(self.rows)]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def transpose(self) -> "QMatrix":
        return QMatrix(self.cols, self.rows,
                       (self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def __matmul__(self, other):
        if isinstance(other, QMatrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch")
            return QMatrix(self.rows, other.cols, (
                sum((self[i, k] * other[k, j] for k in range(self.cols)), Fraction(0))
                for i in range(self.rows) for j in range(other.cols)))
        v = [as_rational(x) for x in other]
        if len(v) != self.cols:
            raise ValueError("shape mismatch")
        return tuple(sum((a * b for a, b in zip(self.row(i), v)), Fraction(0))
                     for i in range(self.rows))

    def __eq__(self, other):
        return (isinstance(other, QMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(" ".join(format_rational(x) for x in self.row(i))
                         for i in range(self.rows))
        return f"QMatrix({self.rows}x{self.cols}: [{body}])"


# -- integer kernels --------------------------------------------------------

def int_row(v: Iterable) -> list[int]:
    """Scale a rational vector to a primitive integer vector (sign kept)."""
    v = list(v)
    if all(type(x) is int for x in v):
        return _primitive(v)
    v = [as_rational(x) for x in v]
    den = 1
    for x in v:
        den = lcm(den, x.denominator)
    out = [int(x * den) for x in v]
    g = 0
    for x in out:
        g = gcd(g, x)
    if g > 1:
        out = [x // g for x in out]
    return out


def _primitive(row: list[int]) -> list[int]:
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return row
    if g > 1:
        return [x // g for x in row]
    return row


def int_rref(rows: Iterable[Sequence[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Fraction-free reduced echelon form of an integer matrix.

    Returns ``(rows, pivots)`` where every returned row is primitive with a
    positive pivot entry and zeros in all other pivot columns.  Dividing each
    row by its pivot gives the true RREF.
    """
    work = [list(r) for r in rows if any(r)]
    pivots: list[int] = []
    out: list[list[int]] = []
    col = 0
    while work and col < ncols:
        k = next((i for i, r in enumerate(work) if r[col]), None)
        if k is None:
            col += 1
            continue
        p = work.pop(k)
        if p[col] < 0:
            p = [-x for x in p]
        p = _primitive(p)
        a = p[col]
        nxt = []
        for r in work:
            b = r[col]
            if b:
                r = [a * x - b * y for x, y in zip(r, p)]
                if not any(r):
                    continue
                r = _primitive(r)
            nxt.append(r)
        work = nxt
        for i, r in enumerate(out):
            b = r[col]
            if b:
                out[i] = _primitive([a * x - b * y for x, y in zip(r, p)])
                if out[i][pivots[i]] < 0:
                    out[i] = [-x for x in out[i]]
        out.append(p)
        pivots.append(col)
        col += 1
    return out, pivots


def int_kernel(rows: Iterable[Sequence[int]], ncols: int) -> list[list[int]]:
    """Integer basis of the right null space, one vector per free column."""
    red, pivots = int_rref(rows, ncols)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        # v_f = L, v_p = -L * r[f] / r[p]
        den = 1
        for r, p in zip(red, pivots):
            if r[f]:
                den = lcm(den, r[p])
        v = [0] * ncols
        v[f] = den
        for r, p in zip(red, pivots):
            if r[f]:
                v[p] = -den * r[f] // r[p]
        basis.append(_primitive(v))
    return basis


# -- public rational interface ----------------------------------------------

def _normalized(red: list[list[int]], pivots: list[int]) -> list[tuple[Fraction, ...]]:
    return [tuple(Fraction(x, r[p]) for x in r) for r, p in zip(red, pivots)]


def rref(m: QMatrix) -> tuple[QMatrix, list[int], int]:
    """Reduced row echelon form, pivot columns and rank."""
    red, pivots = int_rref((int_row(m.row(i)) for i in range(m.rows)), m.cols)
    rows = _normalized(red, pivots)
    rows += [(Fraction(0),) * m.cols] * (m.rows - len(rows))
    return QMatrix(m.rows, m.cols, (x for r in rows for x in r)), pivots, len(pivots)


def rank(m: QMatrix) -> int:
    return len(int_rref((int_row(m.row(i)) for i in range(m.rows)), m.cols)[1])


def kernel_basis(m: QMatrix) -> list[tuple[Fraction, ...]]:
    ker = int_kernel((int_row(m.row(i)) for i in range(m.rows)), m.cols)
    return [tuple(Fraction(x) for x in v) for v in ker]


def solve_affine(m: QMatrix, b: Sequence):
    """Solve ``m x = b``.

    Returns ``None`` when the system is inconsistent, otherwise
    ``(particular, kernel)`` with the particular solution having zeros in all
    free coordinates.
    """
    b = [as_rational(x) for x in b]
    if len(b) != m.rows:
        raise ValueError("right-hand side length does not match row count")
    aug = [int_row(list(m.row(i)) + [b[i]]) for i in range(m.rows)]
    red, pivots = int_rref(aug, m.cols + 1)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [Fraction(0)] * m.cols
    for r, p in zip(red, pivots):
        x[p] = Fraction(r[-1], r[p])
    return tuple(x), kernel_basis(m)


def inverse(m: QMatrix) -> QMatrix:
    if m.rows != m.cols:
        raise ValueError("inverse of a non-square matrix")
    n = m.rows
    aug = [int_row(list(m.row(i)) + [int(i == j) for j in range(n)]) for i in range(n)]
    red, pivots = int_rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("matrix is singular")
    rows = _normalized(red[:n], pivots[:n])
    return QMatrix(n, n, (x for r in rows for x in r[n:]))
