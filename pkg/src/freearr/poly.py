"""Sparse multivariate polynomials with rational coefficients.

Just enough polynomial arithmetic for derivations and Saito determinants:
a polynomial is a mapping from exponent tuples to nonzero Fractions.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Mapping, Sequence

from .qlinalg import as_rational, format_rational


def default_names(dim: int) -> list[str]:
    if dim <= 4:
        return ["x", "y", "z", "w"][:dim]
    return [f"z{i + 1}" for i in range(dim)]


class Poly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple, object] | None = None):
        self.nvars = nvars
        clean = {}
        for e, c in (terms or {}).items():
            c = as_rational(c)
            if c:
                if len(e) != nvars:
                    raise ValueError("exponent length does not match nvars")
                clean[tuple(e)] = c
        self.terms = clean

    @classmethod
    def constant(cls, nvars: int, c) -> "Poly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def linear(cls, coeffs: Sequence) -> "Poly":
        n = len(coeffs)
        return cls(n, {tuple(int(i == j) for j in range(n)): c for i, c in enumerate(coeffs)})

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1) -> "Poly":
        return cls(len(exps), {tuple(exps): c})

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def __add__(self, other: "Poly") -> "Poly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Poly(self.nvars, out)

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def scale(self, c) -> "Poly":
        c = as_rational(c)
        return Poly(self.nvars, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        out: dict[tuple, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        out = Poly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        return isinstance(other, Poly) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def leading(self) -> tuple[tuple, Fraction]:
        e = max(self.terms, key=lambda x: (sum(x), x))
        return e, self.terms[e]

    def proportional_to(self, other: "Poly") -> Fraction | None:
        """Return c with ``self == c * other`` when such a nonzero c exists."""
        if self.is_zero() or other.is_zero():
            return None
        e, c = other.leading()
        if e not in self.terms:
            return None
        ratio = self.terms[e] / c
        return ratio if self == other.scale(ratio) else None

    def to_dict(self) -> dict[str, str]:
        """Monomial -> rational string map, keys like ``"2,0,1"``."""
        return {",".join(map(str, e)): format_rational(c) for e, c in sorted(self.terms.items())}

    def pretty(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        names = names or default_names(self.nvars)
        parts = []
        for e, c in sorted(self.terms.items(), key=lambda t: (-sum(t[0]), [-x for x in t[0]])):
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            if not mono:
                s = format_rational(abs(c))
            elif abs(c) == 1:
                s = mono
            else:
                s = f"{format_rational(abs(c))}*{mono}"
            parts.append(("-" if c < 0 else "+", s))
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return head + "".join(f" {sgn} {s}" for sgn, s in parts[1:])

    def __repr__(self):
        return f"Poly({self.pretty()})"


@lru_cache(maxsize=None)
def monomials(nvars: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """All exponent vectors of the given total degree, in a fixed order."""
    if degree < 0:
        return ()
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return tuple(sorted(out, reverse=True))


def determinant(matrix: Sequence[Sequence[Poly]]) -> Poly:
    """Determinant by cofactor expansion along the first row (small sizes only)."""
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    nvars = matrix[0][0].nvars
    if n == 1:
        return matrix[0][0]
    total = Poly(nvars)
    for j in range(n):
        a = matrix[0][j]
        if a.is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in matrix[1:]]
        term = a * determinant(minor)
        total = total - term if j % 2 else total + term
    return total
