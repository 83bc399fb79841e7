"""Command-line front end.

Exit status: 0 on success, 1 when ``selftest`` finds a failure, 2 when the
input cannot be parsed, 3 when the input violates a precondition of the
requested computation.  ``check-free`` reports its verdict in the output,
never in the exit status.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import arrfile
from .decone import decone
from .freeness import (FreenessCertificate, find_saito_basis, theorem_check,
                       ziegler_gap)
from .lattice import Arrangement, betti, build_poset, charpoly
from .multi import rank2_exponents, sigma, ziegler_restrict
from .qlinalg import format_rational
from .selftest import run_selftest

SCHEMA_VERSION = 1
log = logging.getLogger("freearr")


class PreconditionError(Exception):
    pass


def _pivot(arr: Arrangement, selector: str | None) -> int:
    if selector is None:
        raise PreconditionError("this command needs --pivot (label or 0-based index)")
    if selector in arr.labels and selector.isdigit() and int(selector) < len(arr) \
            and arr.labels.index(selector) != int(selector):
        log.warning("pivot %r matches a label and an index; using the label", selector)
    try:
        return arr.resolve(selector)
    except (KeyError, IndexError) as exc:
        raise PreconditionError(str(exc).strip("'\"")) from None


def _flat_entry(X, poset, names):
    return {"rank": X.rank, "equations": X.pretty(names),
            "hyperplanes": [poset.arrangement.labels[i] for i in X.contains],
            "mobius": poset.mu(X)}


def cmd_poset(af, args):
    poset = build_poset(af.arrangement)
    return {"levels": [[_flat_entry(X, poset, af.variables) for X in lvl] for lvl in poset.levels],
            "flat_count": len(poset)}


def cmd_charpoly(af, args):
    return {"charpoly": charpoly(af.arrangement).to_dict()}


def cmd_betti(af, args):
    k = args.k
    if not 0 <= k <= af.arrangement.dim:
        raise PreconditionError(f"rank {k} out of range 0..{af.arrangement.dim}")
    return {"k": k, "betti": betti(af.arrangement, k)}


def _require_central(arr):
    if not arr.is_central:
        raise PreconditionError("input arrangement is not central")


def cmd_decone(af, args):
    arr = af.arrangement
    _require_central(arr)
    p = _pivot(arr, args.pivot)
    d = decone(arr, p)
    names = None
    if af.variables:
        frame = d.coordinate_map
        names = [af.variables[frame.row(i).index(1)] for i in range(arr.dim - 1)]
    return {"arrangement": arrfile.to_document(d.base, variables=names, pivot_of=arr.labels[p]),
            "charpoly": charpoly(d.base).to_dict()}


def cmd_ziegler(af, args):
    arr = af.arrangement
    _require_central(arr)
    p = _pivot(arr, args.pivot)
    z = ziegler_restrict(arr, p)
    return {"multiarrangement": arrfile.to_document(z.base, z.mult, restriction_of=arr.labels[p]),
            "defining_form": z.pretty(),
            "multiplicities": {lab: m for lab, m in zip(z.base.labels, z.mult)}}


def _sigma_doc(ma, names=None):
    rep = sigma(ma)
    rows = [{"flat": X.pretty(names), "multiplicities": _local_mults(ma, X),
             "exponents": [p.e1, p.e2], "product": p.product}
            for X, p in rep.per_flat.items()]
    return {"sigma1": rep.sigma1, "sigma2": rep.sigma2, "per_flat": rows}


def _local_mults(ma, X):
    loc = ma.localize(X)
    return list(loc.mult)


def cmd_sigma(af, args):
    _require_central(af.arrangement)
    return _sigma_doc(af.multiarrangement, af.variables)


def cmd_exponents2(af, args):
    _require_central(af.arrangement)
    ma = af.multiarrangement
    if ma.support().base.rank() > 2:
        raise PreconditionError("exponents2 needs a multiarrangement of rank at most 2")
    pair = rank2_exponents(ma)
    return {"exponents": [pair.e1, pair.e2], "total_multiplicity": ma.total}


def cmd_certify(af, args):
    _require_central(af.arrangement)
    res = find_saito_basis(af.multiarrangement)
    if isinstance(res, FreenessCertificate):
        return {"free": True, "exponents": list(res.exponents),
                "determinant_scalar": format_rational(res.determinant_scalar),
                "basis": [b.pretty(af.variables) for b in res.basis],
                "certificate": res.to_dict()}
    return {"free": False, "witness": res.to_dict()}


def cmd_check_free(af, args):
    arr = af.arrangement
    _require_central(arr)
    if arr.dim < 3:
        raise PreconditionError("check-free needs ambient dimension at least 3")
    return {"report": theorem_check(arr, _pivot(arr, args.pivot)).to_dict()}


def cmd_gap(af, args):
    arr = af.arrangement
    _require_central(arr)
    return {"gap": ziegler_gap(arr, _pivot(arr, args.pivot)).to_dict()}


COMMANDS = {
    "poset": cmd_poset, "charpoly": cmd_charpoly, "betti": cmd_betti,
    "decone": cmd_decone, "ziegler": cmd_ziegler, "sigma": cmd_sigma,
    "exponents2": cmd_exponents2, "certify": cmd_certify,
    "check-free": cmd_check_free, "gap": cmd_gap,
}


# -- text rendering -------------------------------------------------------------

def _render(value, indent=0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v and not _is_flat_list(v):
                lines.append(f"{pad}{k}:")
                lines.extend(_render(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, dict):
                inner = _render(item, indent + 1)
                lines.append(f"{pad}- " + inner[0].lstrip())
                lines.extend(inner[1:])
            else:
                lines.append(f"{pad}- {_scalar(item)}")
    else:
        lines.append(f"{pad}{_scalar(value)}")
    return lines


def _is_flat_list(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _scalar(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{}"
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def render_text(command: str, doc: dict) -> str:
    if command == "charpoly":
        return doc["charpoly"]["pretty"]
    if command == "sigma":
        head = [f"sigma1: {doc['sigma1']}", f"sigma2: {doc['sigma2']}",
                f"{'flat':<28} {'mult':<14} {'(e1, e2)':<10} product"]
        for r in doc["per_flat"]:
            head.append(f"{r['flat']:<28} {_scalar(r['multiplicities']):<14} "
                        f"{'(%d, %d)' % tuple(r['exponents']):<10} {r['product']}")
        return "\n".join(head)
    return "\n".join(_render(doc))


# -- entry point -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="freearr", description="Exact computations on hyperplane arrangements.")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("path", help="arrangement file (or name of a bundled catalog entry)")
        p.add_argument("--pivot", help="pivot hyperplane: label or 0-based index")
        p.add_argument("--format", choices=("text", "structured"), default="text")
        if name == "betti":
            p.add_argument("-k", type=int, required=True, help="rank")
    p = sub.add_parser("selftest")
    p.add_argument("--catalog", type=Path, help="directory of .arr files (default: bundled catalog)")
    p.add_argument("--format", choices=("text", "structured"), default="text")
    return ap


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if args.command == "selftest":
        results = run_selftest(args.catalog)
        failed = [r for r in results if not r.ok]
        if args.format == "structured":
            doc = {"schema_version": SCHEMA_VERSION, "command": "selftest",
                   "results": [r.to_dict() for r in results], "failures": len(failed)}
            out.write(json.dumps(doc, indent=2) + "\n")
        else:
            for r in results:
                out.write(f"{'PASS' if r.ok else 'FAIL'} {r.source}: {r.check}"
                          f"{'' if r.ok else ' -- ' + r.detail}\n")
            out.write(f"{len(results) - len(failed)}/{len(results)} checks passed\n")
        return 1 if failed else 0
    try:
        af = arrfile.load(arrfile.resolve(args.path))
    except arrfile.ArrangementFileError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    try:
        doc = COMMANDS[args.command](af, args)
    except (PreconditionError, ValueError, IndexError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 3
    if args.format == "structured":
        full = {"schema_version": SCHEMA_VERSION, "command": args.command,
                "input": str(args.path), **doc}
        out.write(json.dumps(full, indent=2) + "\n")
    else:
        out.write(render_text(args.command, doc) + "\n")
    return 0


def main():
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    sys.exit(run())


if __name__ == "__main__":
    main()
