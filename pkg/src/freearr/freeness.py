"""Logarithmic derivations, Saito certificates and the b_2 / sigma_2 freeness tests."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .decone import decone, fiber_decomposition_b2, rho
from .lattice import Arrangement, CharPoly, build_poset, charpoly, essentialize
from .multi import MultiArrangement, free_multi_charpoly, sigma, ziegler_restrict
from .poly import Poly, default_names, determinant, monomials
from .qlinalg import format_rational, int_row, int_kernel, int_rref

__all__ = [
    "Derivation", "FreenessCertificate", "NonFreeWitness", "FreenessReport",
    "Rank3Result", "Codim3Scan", "GapReport", "derivation_slice",
    "slice_dimension", "saito_certify", "find_saito_basis", "is_free_rank3",
    "locally_free_codim3", "theorem_check", "ziegler_gap",
]

VERDICTS = ("free", "not-free", "locally-free-codim3-only", "undetermined")


@dataclass(frozen=True)
class Derivation:
    """``theta = sum_i coeffs[i] d/dz_i`` with homogeneous coefficients of one degree."""

    coeffs: tuple[Poly, ...]
    degree: int

    def __post_init__(self):
        for f in self.coeffs:
            if not f.is_zero() and (not f.is_homogeneous() or f.degree() != self.degree):
                raise ValueError("derivation coefficients must be homogeneous of the stated degree")

    @property
    def nvars(self) -> int:
        return len(self.coeffs)

    def apply(self, normal: Sequence) -> Poly:
        """``theta(alpha)`` for the linear form with the given coefficients."""
        out = Poly(self.nvars)
        for c, f in zip(normal, self.coeffs):
            if c:
                out = out + f.scale(c)
        return out

    def is_zero(self) -> bool:
        return all(f.is_zero() for f in self.coeffs)

    def pretty(self, names: Sequence[str] | None = None) -> str:
        names = names or default_names(self.nvars)
        parts = [f"({f.pretty(names)})*d{n}" for f, n in zip(self.coeffs, names) if not f.is_zero()]
        return " + ".join(parts) or "0"

    def to_dict(self) -> dict:
        return {"degree": self.degree, "coeffs": [f.to_dict() for f in self.coeffs]}


# -- degree slices -------------------------------------------------------------

_EXPANSIONS: dict = {}


def _frame_columns(alpha: tuple[int, ...]) -> list[list[int]]:
    """Integer basis ``B`` with ``alpha . B = (0, ..., 0, alpha_p)``."""
    ell = len(alpha)
    p = next(i for i, a in enumerate(alpha) if a)
    cols = []
    for j in range(ell):
        if j == p:
            continue
        c = [0] * ell
        c[j] = alpha[p]
        c[p] = -alpha[j]
        cols.append(c)
    e = [0] * ell
    e[p] = 1
    cols.append(e)
    return cols


def _expansion(alpha: tuple[int, ...], m: int, e: tuple[int, ...]) -> dict:
    """``z^e`` written in the frame where alpha is the last variable, keeping
    only terms of last-variable degree below m."""
    memo = _EXPANSIONS.setdefault((alpha, m), {})
    hit = memo.get(e)
    if hit is not None:
        return hit
    ell = len(alpha)
    if not any(e):
        out = {(0,) * ell: 1}
    else:
        i = next(k for k, x in enumerate(e) if x)
        prev = _expansion(alpha, m, e[:i] + (e[i] - 1,) + e[i + 1:])
        cols = _frame_columns(alpha)
        lin = [(j, cols[j][i]) for j in range(ell) if cols[j][i]]
        out = {}
        for mono, c in prev.items():
            for j, b in lin:
                if j == ell - 1 and mono[-1] + 1 >= m:
                    continue
                t = mono[:j] + (mono[j] + 1,) + mono[j + 1:]
                out[t] = out.get(t, 0) + c * b
        out = {k: v for k, v in out.items() if v}
    memo[e] = out
    return out


def _slice_constraints(ma: MultiArrangement, d: int) -> list[list[int]]:
    ell = ma.dim
    mons = monomials(ell, d)
    n = len(mons)
    rows = []
    for h, m in zip(ma.base, ma.mult):
        if not m:
            continue
        alpha = tuple(int_row(h.normal))
        bucket: dict[tuple, list[int]] = {}
        for i, a in enumerate(alpha):
            if not a:
                continue
            for k, e in enumerate(mons):
                for t, c in _expansion(alpha, m, e).items():
                    row = bucket.get(t)
                    if row is None:
                        row = bucket[t] = [0] * (ell * n)
                    row[i * n + k] += a * c
        rows.extend(bucket.values())
    return rows


def _slice_vectors(ma: MultiArrangement, d: int) -> list[list[int]]:
    ell = ma.dim
    return int_kernel(_slice_constraints(ma, d), ell * len(monomials(ell, d)))


def _to_derivation(vec: Sequence[int], ell: int, d: int) -> Derivation:
    mons = monomials(ell, d)
    n = len(mons)
    coeffs = tuple(Poly(ell, {mons[k]: vec[i * n + k] for k in range(n) if vec[i * n + k]})
                   for i in range(ell))
    return Derivation(coeffs, d)


def derivation_slice(ma: MultiArrangement, d: int) -> list[Derivation]:
    """Basis of the degree-d part of ``D(A, m)``.

    Unknowns are the monomial coefficients of the component polynomials; for
    each hyperplane, ``theta(alpha)`` is rewritten in a frame where alpha is the
    last variable and every term of too-low degree in that variable is forced
    to vanish.
    """
    if d < 0:
        raise ValueError("degree must be nonnegative")
    return [_to_derivation(v, ma.dim, d) for v in _slice_vectors(ma, d)]


def slice_dimension(ma: MultiArrangement, d: int) -> int:
    ell = ma.dim
    ncols = ell * len(monomials(ell, d))
    return ncols - len(int_rref(_slice_constraints(ma, d), ncols)[1])


# -- Saito's criterion -------------------------------------------------------

@dataclass(frozen=True)
class FreenessCertificate:
    basis: tuple[Derivation, ...]
    exponents: tuple[int, ...]
    determinant_scalar: Fraction

    def to_dict(self) -> dict:
        return {
            "exponents": list(self.exponents),
            "determinant_scalar": format_rational(self.determinant_scalar),
            "basis": [b.to_dict() for b in self.basis],
        }


@dataclass(frozen=True)
class NonFreeWitness:
    """Minimal generator degrees found before freeness became impossible."""

    generator_degrees: tuple[int, ...]
    scanned_to: int
    reason: str

    def to_dict(self) -> dict:
        return {"generator_degrees": list(self.generator_degrees),
                "scanned_to": self.scanned_to, "reason": self.reason}


def _divisible_by_power(f: Poly, normal: Sequence, m: int) -> bool:
    if m == 0 or f.is_zero():
        return True
    alpha = tuple(int_row(normal))
    cols = _frame_columns(alpha)
    ell = len(alpha)
    lin = [Poly(ell, {tuple(int(k == j) for k in range(ell)): cols[j][i] for j in range(ell)})
           for i in range(ell)]
    g = Poly(ell)
    for e, c in f.terms.items():
        term = Poly.constant(ell, c)
        for i, k in enumerate(e):
            if k:
                term = term * lin[i] ** k
        g = g + term
    return all(mono[-1] >= m for mono in g.terms)


def saito_certify(ma: MultiArrangement, candidates: Sequence[Derivation]) -> FreenessCertificate | None:
    """Certificate when ``det`` of the coefficient matrix is a nonzero multiple of ``Q(A, m)``."""
    ell = ma.dim
    if len(candidates) != ell:
        raise ValueError(f"Saito's criterion needs exactly {ell} derivations")
    for k, theta in enumerate(candidates):
        if theta.nvars != ell:
            raise ValueError("derivation lives in the wrong number of variables")
        for h, m in zip(ma.base, ma.mult):
            if not _divisible_by_power(theta.apply(h.normal), h.normal, m):
                raise ValueError(f"candidate {k} is not in D(A, m): fails on {h.pretty()}")
    det = determinant([list(theta.coeffs) for theta in candidates])
    c = det.proportional_to(ma.defining_form())
    if c is None:
        return None
    return FreenessCertificate(tuple(candidates), tuple(sorted(t.degree for t in candidates)), c)


def _shift(vec: Sequence[int], ell: int, d_from: int, d_to: int) -> list[list[int]]:
    """All products ``z^f * theta`` landing in degree d_to, as coefficient vectors."""
    src = monomials(ell, d_from)
    dst = monomials(ell, d_to)
    pos = {e: k for k, e in enumerate(dst)}
    n_src, n_dst = len(src), len(dst)
    out = []
    for f in monomials(ell, d_to - d_from):
        v = [0] * (ell * n_dst)
        for i in range(ell):
            for k, e in enumerate(src):
                c = vec[i * n_src + k]
                if c:
                    v[i * n_dst + pos[tuple(a + b for a, b in zip(e, f))]] = c
        out.append(v)
    return out


class _Echelon:
    """Rows kept so that each is zero at the pivots of all earlier rows."""

    def __init__(self):
        self.rows: list[list[int]] = []
        self.pivots: list[int] = []

    def reduce(self, v: Sequence[int]) -> list[int]:
        v = list(v)
        for r, p in zip(self.rows, self.pivots):
            b = v[p]
            if b:
                a = r[p]
                v = [a * x - b * y for x, y in zip(v, r)]
        return v

    def add(self, v: Sequence[int]) -> bool:
        v = self.reduce(v)
        p = next((i for i, x in enumerate(v) if x), None)
        if p is None:
            return False
        self.rows.append(v)
        self.pivots.append(p)
        return True


def find_saito_basis(ma: MultiArrangement) -> FreenessCertificate | NonFreeWitness:
    """Decide freeness by collecting minimal homogeneous generators of ``D(A, m)``.

    Degree by degree, derivations not generated by the ones already chosen are
    added.  A free module has exactly ``ell`` minimal generators whose degrees
    sum to ``|m|``, so the scan stops as soon as that is certified (Saito) or
    ruled out: too many generators, or a degree sum that can no longer reach
    ``|m|``.  Every exponent of a free multiarrangement is at most ``|m|``, so
    scanning degrees ``0..|m|`` always reaches a decision.
    """
    ell, total = ma.dim, ma.total
    gens: list[tuple[int, list[int]]] = []
    for d in range(total + 1):
        ech = _Echelon()
        for dg, vec in gens:
            for v in _shift(vec, ell, dg, d):
                ech.add(v)
        for v in _slice_vectors(ma, d):
            if ech.add(v):
                gens.append((d, v))
        degs = tuple(dg for dg, _ in gens)
        if len(gens) > ell:
            return NonFreeWitness(degs, d, f"more than {ell} minimal generators")
        s = sum(degs)
        if len(gens) == ell:
            if s > total:
                return NonFreeWitness(degs, d, f"generator degrees sum to {s} > |m| = {total}")
            if s == total:
                cert = saito_certify(ma, [_to_derivation(v, ell, dg) for dg, v in gens])
                if cert is not None:
                    return cert
        elif s + (ell - len(gens)) * (d + 1) > total:
            return NonFreeWitness(degs, d, f"remaining generators would push the degree sum past |m| = {total}")
    return NonFreeWitness(tuple(dg for dg, _ in gens), total, "minimal generators are dependent")


# -- combinatorial freeness tests ----------------------------------------------

def _decone_b2(arr: Arrangement, pivot: int) -> int:
    d = decone(arr, pivot)
    if not len(d.base):
        return 0
    poset = build_poset(d.base, max_rank=2)
    return sum(poset.mobius[X] for X in poset.rank_level(2))


@dataclass(frozen=True)
class Rank3Result:
    free: bool
    b2: int
    sigma2: int
    pivot: int

    def __bool__(self):
        return self.free


def is_free_rank3(arr: Arrangement, pivot: int = 0) -> Rank3Result:
    """Freeness of a rank-3 central arrangement via ``b_2(dA) == sigma_2(A^H0, m^H0)``."""
    if not arr.is_central:
        raise ValueError("is_free_rank3 requires a central arrangement")
    r = arr.rank()
    if r != 3:
        raise ValueError(f"expected rank 3, got rank {r}")
    if arr.dim != 3:
        arr, _ = essentialize(arr)
    b2 = _decone_b2(arr, pivot)
    s2 = sigma(ziegler_restrict(arr, pivot)).sigma2
    return Rank3Result(b2 == s2, b2, s2, pivot)


@dataclass(frozen=True)
class Codim3Scan:
    per_flat: dict
    ok: bool

    def __bool__(self):
        return self.ok


def locally_free_codim3(arr: Arrangement, pivot: int) -> Codim3Scan:
    """Run :func:`is_free_rank3` on ``A_X`` for every rank-3 flat X inside the pivot."""
    if arr.dim < 3:
        raise ValueError("locally_free_codim3 needs ambient dimension at least 3")
    poset = build_poset(arr, max_rank=3)
    per_flat = {}
    for X in poset.rank_level(3):
        if pivot in X.contains:
            per_flat[X] = is_free_rank3(arr.subarrangement(X.contains))
    return Codim3Scan(per_flat, all(per_flat.values()))


@dataclass
class FreenessReport:
    pivot: int
    pivot_label: str
    b1: int
    sigma1: int
    b2: int
    sigma2: int
    inequality_ok: bool
    equality: bool
    codim3_scan: Codim3Scan
    multirestriction: FreenessCertificate | NonFreeWitness
    verdict: str
    restriction: MultiArrangement
    decone_charpoly: CharPoly
    fiber_table: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def multirestriction_free(self) -> bool:
        return isinstance(self.multirestriction, FreenessCertificate)

    @property
    def scan_agrees(self) -> bool:
        return self.equality == self.codim3_scan.ok

    @property
    def higher_sigma(self) -> dict:
        """``sigma_k`` for k >= 3: only known through the product formula of a free restriction."""
        ell1 = self.restriction.dim
        if self.multirestriction_free:
            chi = free_multi_charpoly(self.multirestriction.exponents)
            return {k: chi.signed_coefficients(ell1)[k] for k in range(3, ell1 + 1)}
        return {k: None for k in range(3, ell1 + 1)}

    def to_dict(self) -> dict:
        mr = self.multirestriction
        return {
            "pivot": self.pivot_label,
            "pivot_index": self.pivot,
            "b1": self.b1,
            "sigma1": self.sigma1,
            "b2": self.b2,
            "sigma2": self.sigma2,
            "inequality_ok": self.inequality_ok,
            "equality": self.equality,
            "locally_free_codim3": self.codim3_scan.ok,
            "codim3_scan": [
                {"flat": X.pretty(), "free": r.free, "b2": r.b2, "sigma2": r.sigma2}
                for X, r in self.codim3_scan.per_flat.items()],
            "per_flat": self.fiber_table,
            "multirestriction": {
                "defining_form": self.restriction.pretty(),
                "free": self.multirestriction_free,
                **({"certificate": mr.to_dict()} if self.multirestriction_free
                   else {"witness": mr.to_dict()}),
            },
            "decone_charpoly": self.decone_charpoly.to_dict(),
            "higher_sigma": {str(k): ("unavailable" if v is None else v)
                             for k, v in self.higher_sigma.items()},
            "verdict": self.verdict,
            "notes": list(self.notes),
        }


def theorem_check(arr: Arrangement, pivot: int) -> FreenessReport:
    """Compare ``b_2`` of the deconing with ``sigma_2`` of the multirestriction and decide.

    * ``b2 > sigma2``: not free (a free arrangement forces equality).
    * equality with a free multirestriction: free, certified by its basis.
    * equality with a non-free multirestriction: locally free in codimension
      three along the pivot; the arrangement itself cannot be free because a
      free arrangement has a free multirestriction.
    """
    if not arr.is_central:
        raise ValueError("theorem_check requires a central arrangement")
    if arr.dim < 3:
        raise ValueError("theorem_check needs ambient dimension at least 3")
    d = decone(arr, pivot)
    rmap = rho(d)
    dchi = charpoly(rmap.source)
    b1, b2 = -dchi.coefficient(d.base.dim - 1), dchi.coefficient(d.base.dim - 2)
    restriction = ziegler_restrict(arr, pivot)
    srep = sigma(restriction)
    fibers = fiber_decomposition_b2(d, rmap)
    table = []
    for X in rmap.target.rank_level(2):
        pair = srep.per_flat[X]
        table.append({"flat": X.pretty(), "exponents": [pair.e1, pair.e2],
                      "product": pair.product, "fiber_b2": fibers[X]})
    scan = locally_free_codim3(arr, pivot)
    mr = find_saito_basis(restriction)
    notes = []
    s2 = srep.sigma2
    if b2 < s2:
        verdict = "undetermined"
        notes.append(f"inequality b2 >= sigma2 violated ({b2} < {s2}); this indicates a bug")
    elif b2 > s2:
        verdict = "not-free"
        notes.append("b2 > sigma2: not locally free in codimension three along the pivot")
    elif isinstance(mr, FreenessCertificate):
        verdict = "free"
        notes.append(f"multirestriction free with exponents {mr.exponents}; equality gives freeness")
    else:
        verdict = "locally-free-codim3-only"
        notes.append("multirestriction is not free, so the arrangement is not free either")
    if not isinstance(mr, FreenessCertificate):
        notes.append("sigma_k for k >= 3 unavailable: multirestriction not free")
    roots = dchi.integer_roots()
    if len(roots) == dchi.degree:
        notes.append(f"decone characteristic polynomial splits with roots {roots}")
    else:
        notes.append("decone characteristic polynomial does not split over the integers")
    return FreenessReport(
        pivot=pivot, pivot_label=arr.labels[pivot], b1=b1, sigma1=srep.sigma1,
        b2=b2, sigma2=s2, inequality_ok=b2 >= s2, equality=b2 == s2,
        codim3_scan=scan, multirestriction=mr, verdict=verdict,
        restriction=restriction, decone_charpoly=dchi, fiber_table=table, notes=notes)


@dataclass(frozen=True)
class GapReport:
    b1_minus_sigma1: int
    b2_minus_sigma2: int
    polynomial_gap: CharPoly | None
    gap_is_constant: bool | None
    exponents: tuple[int, ...] | None

    def to_dict(self) -> dict:
        return {
            "b1_minus_sigma1": self.b1_minus_sigma1,
            "b2_minus_sigma2": self.b2_minus_sigma2,
            "polynomial_gap": None if self.polynomial_gap is None else self.polynomial_gap.to_dict(),
            "gap_is_constant": self.gap_is_constant,
            "exponents": None if self.exponents is None else list(self.exponents),
        }


def ziegler_gap(arr: Arrangement, pivot: int) -> GapReport:
    """Coefficientwise gap between the deconing and the multirestriction.

    The full polynomial difference is reported only when the multirestriction
    is certified free, since only then is its characteristic polynomial known.
    """
    d = decone(arr, pivot)
    dchi = charpoly(d.base)
    ell1 = d.base.dim
    restriction = ziegler_restrict(arr, pivot)
    srep = sigma(restriction)
    b1 = -dchi.coefficient(ell1 - 1)
    b2 = dchi.coefficient(ell1 - 2) if ell1 >= 2 else 0
    mr = find_saito_basis(restriction)
    if isinstance(mr, FreenessCertificate):
        gap = dchi - free_multi_charpoly(mr.exponents)
        return GapReport(b1 - srep.sigma1, b2 - srep.sigma2, gap, gap.degree <= 0, mr.exponents)
    return GapReport(b1 - srep.sigma1, b2 - srep.sigma2, None, None, None)
