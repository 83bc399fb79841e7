"""Reading and writing arrangement files.

An arrangement file is one JSON document::

    {"version": 1, "dim": 4,
     "variables": ["x", "y", "z", "w"],            # optional
     "hyperplanes": [{"coeffs": ["1", "0", "0", "-1"], "offset": "0",
                      "label": "x-w", "mult": 1}, ...],
     "pivot_of": "...",                           # optional, written by deconing
     "expect": {...}}                             # optional, used by selftest

A hyperplane is ``coeffs . z = offset``; rationals are strings ``"p/q"`` or
``"p"`` (plain JSON integers are accepted on input).
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .lattice import Arrangement, DuplicateHyperplaneError, Hyperplane
from .multi import MultiArrangement
from .qlinalg import as_rational, format_rational

FORMAT_VERSION = 1


class ArrangementFileError(ValueError):
    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        where = ""
        if source:
            where += f"{source}"
        if line is not None:
            where += f"{':' if where else 'line '}{line}"
        super().__init__(f"{where}: {message}" if where else message)
        self.line = line
        self.source = source


@dataclass
class ArrangementFile:
    arrangement: Arrangement
    mult: tuple[int, ...]
    variables: list[str] | None = None
    meta: dict = field(default_factory=dict)

    @property
    def multiarrangement(self) -> MultiArrangement:
        return MultiArrangement(self.arrangement, self.mult)

    @property
    def has_multiplicities(self) -> bool:
        return any(m != 1 for m in self.mult)


def _hyperplane_lines(text: str) -> list[int]:
    return [text.count("\n", 0, m.start()) + 1 for m in re.finditer(r'"coeffs"', text)]


def loads(text: str, source: str | None = None) -> ArrangementFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ArrangementFileError(exc.msg, exc.lineno, source) from None
    if not isinstance(doc, dict):
        raise ArrangementFileError("top level must be an object", 1, source)
    version = doc.get("version", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise ArrangementFileError(f"unsupported format version {version!r}", None, source)
    dim = doc.get("dim")
    if not isinstance(dim, int) or dim < 1:
        raise ArrangementFileError("'dim' must be a positive integer", None, source)
    raw = doc.get("hyperplanes")
    if not isinstance(raw, list):
        raise ArrangementFileError("'hyperplanes' must be a list", None, source)
    lines = _hyperplane_lines(text)

    def line_of(i):
        return lines[i] if i < len(lines) else None

    hyps, labels, mult = [], [], []
    for i, entry in enumerate(raw):
        try:
            if not isinstance(entry, dict) or "coeffs" not in entry:
                raise ValueError("hyperplane entry needs a 'coeffs' list")
            coeffs = entry["coeffs"]
            if not isinstance(coeffs, list) or len(coeffs) != dim:
                raise ValueError(f"'coeffs' must list {dim} rationals")
            normal = [_rational(c) for c in coeffs]
            offset = _rational(entry.get("offset", "0"))
            m = entry.get("mult", 1)
            if not isinstance(m, int) or isinstance(m, bool) or m < 0:
                raise ValueError("'mult' must be a nonnegative integer")
            hyps.append(Hyperplane(normal, offset))
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            raise ArrangementFileError(f"hyperplane {i}: {exc}", line_of(i), source) from None
        labels.append(entry.get("label"))
        mult.append(m)
    try:
        arr = Arrangement(dim, hyps, labels)
    except DuplicateHyperplaneError as exc:
        raise ArrangementFileError(str(exc), line_of(exc.second), source) from None
    meta = {k: v for k, v in doc.items() if k not in ("version", "dim", "hyperplanes", "variables")}
    variables = doc.get("variables")
    if variables is not None and len(variables) != dim:
        raise ArrangementFileError("'variables' must name every coordinate", None, source)
    return ArrangementFile(arr, tuple(mult), variables, meta)


def _rational(x):
    if isinstance(x, bool) or isinstance(x, float):
        raise ValueError(f"malformed rational {x!r}")
    if isinstance(x, str) and not re.fullmatch(r"\s*[+-]?\d+(\s*/\s*\d+)?\s*", x):
        raise ValueError(f"malformed rational {x!r}")
    return as_rational(x)


def load(path) -> ArrangementFile:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ArrangementFileError(f"cannot read file: {exc.strerror}", None, str(path)) from None
    return loads(text, str(path))


def to_document(arr: Arrangement, mult=None, variables=None, **meta) -> dict:
    doc: dict = {"version": FORMAT_VERSION, "dim": arr.dim}
    if variables:
        doc["variables"] = list(variables)
    hyps = []
    for i, h in enumerate(arr.hyperplanes):
        entry = {"coeffs": [format_rational(c) for c in h.normal],
                 "offset": format_rational(h.offset),
                 "label": arr.labels[i]}
        if mult is not None:
            entry["mult"] = int(mult[i])
        hyps.append(entry)
    doc["hyperplanes"] = hyps
    doc.update(meta)
    return doc


def dumps(af: ArrangementFile | Arrangement, **meta) -> str:
    if isinstance(af, Arrangement):
        return json.dumps(to_document(af, **meta), indent=2)
    mult = af.mult if af.has_multiplicities else None
    return json.dumps(to_document(af.arrangement, mult, af.variables, **{**af.meta, **meta}), indent=2)


def catalog_names() -> list[str]:
    root = resources.files("freearr") / "catalog"
    return sorted(p.name for p in root.iterdir() if p.name.endswith(".arr"))


def catalog_path(name: str) -> Path:
    if not name.endswith(".arr"):
        name += ".arr"
    return Path(str(resources.files("freearr") / "catalog" / name))


def resolve(path: str) -> Path:
    """A filesystem path, falling back to the bundled catalog by file name."""
    p = Path(path)
    if p.exists():
        return p
    c = catalog_path(p.name)
    return c if c.exists() else p
