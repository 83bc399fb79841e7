"""Deconing along a pivot hyperplane and the combinatorial restriction map.

Coordinates are changed so that the pivot becomes ``w_l = 0``: the new
coordinate functions are standard coordinates chosen greedily, followed by
the pivot's linear form.  Setting ``w_l = 1`` gives the deconing, setting
``w_l = 0`` gives the traces on the pivot used by the Ziegler restriction.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .lattice import (Arrangement, Flat, Hyperplane, IntersectionPoset,
                      build_poset)
from .qlinalg import QMatrix, int_rref

__all__ = [
    "pivot_frame", "DeconedArrangement", "decone", "trace_arrangement",
    "RhoMap", "rho", "fiber_decomposition_b2",
]


def _frame_columns(arr: Arrangement, pivot: int) -> list[int]:
    ell = arr.dim
    alpha = arr[pivot].int_normal
    chosen: list[int] = []
    for i in range(ell):
        if len(chosen) == ell - 1:
            break
        trial = [[int(j == c) for j in range(ell)] for c in chosen + [i]] + [list(alpha)]
        if len(int_rref(trial, ell)[1]) == len(trial):
            chosen.append(i)
    return chosen


def pivot_frame(arr: Arrangement, pivot: int) -> QMatrix:
    """Invertible matrix whose last row is the pivot normal.

    Rows before it are standard coordinate functions appended greedily in
    index order whenever they keep the rows independent.
    """
    ell = arr.dim
    rows = [[int(j == c) for j in range(ell)] for c in _frame_columns(arr, pivot)]
    return QMatrix.from_rows(rows + [list(arr[pivot].normal)], ell)


def _transformed_normals(arr: Arrangement, pivot: int) -> list[list[int]]:
    """Every normal rewritten in the pivot frame, up to a positive scalar.

    With ``w_i = z_(c_i)`` and ``w_l = alpha0 . z`` the single missing
    coordinate p satisfies ``alpha0_p z_p = w_l - sum_i alpha0_(c_i) w_i``.
    """
    chosen = _frame_columns(arr, pivot)
    a0 = arr[pivot].int_normal
    p = next(j for j in range(arr.dim) if j not in chosen)
    s = 1 if a0[p] > 0 else -1
    out = []
    for h in arr.hyperplanes:
        a = h.int_normal
        out.append([s * (a0[p] * a[c] - a[p] * a0[c]) for c in chosen] + [s * a[p]])
    return out


def _check(arr: Arrangement, pivot: int) -> None:
    if not arr.is_central:
        raise ValueError("deconing requires a central arrangement")
    if not 0 <= pivot < len(arr):
        raise IndexError(f"pivot {pivot} out of range")
    if arr.dim < 2:
        raise ValueError("deconing needs ambient dimension at least 2")


@dataclass(frozen=True, eq=False)
class DeconedArrangement:
    base: Arrangement
    pivot: int
    coordinate_map: QMatrix
    parent: Arrangement = field(repr=False)
    parent_index: tuple[int, ...] = ()

    @property
    def pivot_label(self) -> str:
        return self.parent.labels[self.pivot]


def decone(arr: Arrangement, pivot: int) -> DeconedArrangement:
    """Affine arrangement cut out on the translate ``{pivot form = 1}``."""
    _check(arr, pivot)
    frame = pivot_frame(arr, pivot)
    normals = _transformed_normals(arr, pivot)
    hyps, labels, idx = [], [], []
    for i, b in enumerate(normals):
        if i == pivot:
            continue
        hyps.append(Hyperplane.from_row(b[:-1] + [-b[-1]]))
        labels.append(arr.labels[i])
        idx.append(i)
    base = Arrangement._trusted(arr.dim - 1, hyps, labels)
    return DeconedArrangement(base, pivot, frame, arr, tuple(idx))


def trace_arrangement(arr: Arrangement, pivot: int):
    """Distinct traces ``H cap H0`` on the pivot, in pivot coordinates.

    Returns ``(traces, multiplicities, owner)`` where ``owner[i]`` is the trace
    index of parent hyperplane i (``None`` for the pivot).  Traces are ordered
    by first appearance.
    """
    _check(arr, pivot)
    normals = _transformed_normals(arr, pivot)
    traces: list[Hyperplane] = []
    labels: list[str] = []
    mult: list[int] = []
    owner: list[int | None] = []
    where: dict[Hyperplane, int] = {}
    for i, b in enumerate(normals):
        if i == pivot:
            owner.append(None)
            continue
        h = Hyperplane.from_row(b[:-1] + [0])
        j = where.get(h)
        if j is None:
            j = where[h] = len(traces)
            traces.append(h)
            labels.append(arr.labels[i])
            mult.append(0)
        mult[j] += 1
        owner.append(j)
    return Arrangement._trusted(arr.dim - 1, traces, labels), mult, owner


@dataclass(eq=False)
class RhoMap:
    source: IntersectionPoset
    target: IntersectionPoset
    assignment: dict[Flat, Flat]
    fibers: dict[Flat, list[Flat]]

    def __call__(self, flat: Flat) -> Flat:
        return self.assignment[flat]

    def fiber(self, target: Flat) -> list[Flat]:
        return self.fibers.get(target, [])


def rho_key(flat: Flat) -> tuple:
    """Echelon key of ``span(X) cap H0`` for a deconed flat X.

    Homogenizing ``a . w = c`` to ``a . w - c w_l = 0`` and intersecting with
    ``w_l = 0`` leaves the equations ``a . w = 0`` on the pivot.
    """
    rows = [list(r[:-1]) + [0] for r in flat.key]
    red, _ = int_rref(rows, flat.dim + 1)
    return tuple(tuple(r) for r in red)


def rho(d: DeconedArrangement, max_rank: int | None = None,
        source: IntersectionPoset | None = None,
        target: IntersectionPoset | None = None) -> RhoMap:
    """The map ``X -> span(X) cap H0`` from ``L(dA)`` to ``L(A^H0)``."""
    if source is None:
        source = build_poset(d.base, max_rank=max_rank)
    if target is None:
        traces, _, _ = trace_arrangement(d.parent, d.pivot)
        target = build_poset(traces, max_rank=max_rank)
    assignment: dict[Flat, Flat] = {}
    fibers: dict[Flat, list[Flat]] = {X: [] for X in target}
    for Y in source:
        X = target.lookup(rho_key(Y))
        if X is None:
            raise RuntimeError(f"image of {Y.pretty()} is missing from the trace poset")
        assignment[Y] = X
        fibers[X].append(Y)
    return RhoMap(source, target, assignment, fibers)


def fiber_decomposition_b2(d: DeconedArrangement, rmap: RhoMap | None = None) -> dict[Flat, int]:
    """``sum_{Y in rho^-1(X)} mu(Y)`` for every X in ``L_2(A^H0)``.

    Each value is ``b_2`` of the deconing of the localization ``A_X``; the
    values add up to ``b_2(dA)``.
    """
    if rmap is None:
        rmap = rho(d, max_rank=2)
    mu = rmap.source.mobius
    return {X: sum(mu[Y] for Y in rmap.fiber(X)) for X in rmap.target.rank_level(2)}
