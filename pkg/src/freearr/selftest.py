"""Invariant checks over a directory of arrangement files."""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from . import arrfile
from .decone import decone
from .freeness import locally_free_codim3, theorem_check
from .lattice import CharPoly, build_poset, charpoly, localglobal_betti_check
from .multi import localglobal_sigma_check, rank2_exponents, sigma, ziegler_restrict


@dataclass
class CheckResult:
    source: str
    check: str
    ok: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return {"source": self.source, "check": self.check, "ok": self.ok, "detail": self.detail}


def _checks(af: arrfile.ArrangementFile):
    arr = af.arrangement
    expect = af.meta.get("expect", {})
    poset = build_poset(arr)
    chi = charpoly(poset)
    if "charpoly" in expect:
        want = CharPoly(expect["charpoly"])
        yield "expected charpoly", chi == want, f"got {chi}, expected {want}"
    for k in range(1, arr.dim):
        yield f"local-global betti k={k}", localglobal_betti_check(arr, k, poset), ""
    if "exponents2" in expect:
        got = list(rank2_exponents(af.multiarrangement))
        yield "expected rank-2 exponents", got == expect["exponents2"], f"got {got}"
    if af.has_multiplicities and arr.is_central:
        for k in (1, 2):
            yield f"local-global sigma k={k}", localglobal_sigma_check(af.multiarrangement, k), ""
    if not arr.is_central or not len(arr):
        return
    yield "chi(A, 1) = 0", chi(1) == 0, f"chi(1) = {chi(1)}"
    if arr.dim < 2:
        return
    for p in range(len(arr)):
        lab = arr.labels[p]
        dchi = charpoly(decone(arr, p).base)
        yield f"decone identity pivot={lab}", dchi * CharPoly([-1, 1]) == chi, f"{dchi} * (t - 1) != {chi}"
        z = ziegler_restrict(arr, p)
        for k in (1, 2):
            yield f"local-global sigma k={k} pivot={lab}", localglobal_sigma_check(z, k), ""
        if arr.dim >= 3:
            b2 = dchi.coefficient(arr.dim - 3)
            s2 = sigma(z).sigma2
            yield f"b2 >= sigma2 pivot={lab}", b2 >= s2, f"b2={b2} sigma2={s2}"
            scan = locally_free_codim3(arr, p)
            yield f"equality iff codim-3 scan pivot={lab}", (b2 == s2) == scan.ok, \
                f"b2={b2} sigma2={s2} scan={scan.ok}"
    for entry in expect.get("checks", []):
        p = arr.resolve(entry["pivot"])
        rep = theorem_check(arr, p).to_dict()
        fields = {"b2": rep["b2"], "sigma2": rep["sigma2"], "sigma1": rep["sigma1"],
                  "verdict": rep["verdict"], "decone_charpoly": rep["decone_charpoly"]["coeffs"]}
        for key, want in entry.items():
            if key == "pivot":
                continue
            got = fields[key]
            yield f"expected {key} pivot={entry['pivot']}", got == want, f"got {got!r}, expected {want!r}"


def run_selftest(catalog: Path | None = None) -> list[CheckResult]:
    if catalog is None:
        paths = [arrfile.catalog_path(n) for n in arrfile.catalog_names()]
    else:
        paths = sorted(Path(catalog).glob("*.arr"))
    results = []
    for path in paths:
        name = path.name
        try:
            af = arrfile.load(path)
        except arrfile.ArrangementFileError as exc:
            results.append(CheckResult(name, "parse", False, str(exc)))
            continue
        try:
            for check, ok, detail in _checks(af):
                results.append(CheckResult(name, check, bool(ok), "" if ok else detail))
        except Exception as exc:  # a crash is a failure of this file, not of the run
            results.append(CheckResult(name, "exception", False, f"{type(exc).__name__}: {exc}"))
    return results
