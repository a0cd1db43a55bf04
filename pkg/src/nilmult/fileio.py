"""JSON file formats: algebras, ideals (lists of vectors) and maps (matrices).

Algebra file::

    {"name": "q2", "dim": 2, "basis": ["e1", "e2"],
     "brackets": [{"left": 2, "right": 2, "value": [[1, "1"]]}]}

Indices are 1-based.  Coefficients are integers or strings ``"p"`` / ``"p/q"``;
decimals are rejected.  An optional ``"convention": "left"`` marks a table
written for the left identity; it is transposed on load.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Any

from .algebra import LeibnizAlgebra, check_leibniz
from .errors import IdentityFail, IndexOutOfRange, SchemaError
from .exactlin import Mat, SVec, Subspace

_RATIONAL = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")

FORMAT_VERSION = 1


def parse_rational(x: Any, path: str) -> Fraction:
    if isinstance(x, bool):
        raise SchemaError(f"{path}: expected a rational, got a boolean", path=path)
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        m = _RATIONAL.match(x)
        if m:
            den = int(m.group(2)) if m.group(2) else 1
            if den == 0:
                raise SchemaError(f"{path}: zero denominator in {x!r}", path=path)
            return Fraction(int(m.group(1)), den)
    raise SchemaError(f"{path}: {x!r} is not an integer or a 'p/q' rational string", path=path)


def format_rational(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _load_json(data: bytes | str, what: str) -> Any:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise SchemaError(f"{what}: not UTF-8 ({exc})", path="$") from exc
    try:
        return json.loads(data)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{what}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}",
                          path="$") from exc


def _expect(cond: bool, path: str, message: str) -> None:
    if not cond:
        raise SchemaError(f"{path}: {message}", path=path)


def _index(x: Any, dim: int, path: str) -> int:
    _expect(isinstance(x, int) and not isinstance(x, bool), path, "index must be an integer")
    if not 1 <= x <= dim:
        raise IndexOutOfRange(f"{path}: index {x} outside 1..{dim}", path=path, index=x, dim=dim)
    return x - 1


def algebra_from_obj(doc: Any, check: bool = True) -> LeibnizAlgebra:
    _expect(isinstance(doc, dict), "$", "top level must be an object")
    allowed = {"name", "dim", "basis", "brackets", "convention", "format"}
    extra = set(doc) - allowed
    _expect(not extra, "$", f"unknown keys {sorted(extra)}")
    for key in ("name", "dim", "brackets"):
        _expect(key in doc, f"$.{key}", "missing")
    name, dim = doc["name"], doc["dim"]
    _expect(isinstance(name, str), "$.name", "must be a string")
    _expect(isinstance(dim, int) and not isinstance(dim, bool) and dim >= 0, "$.dim",
            "must be a non-negative integer")
    basis = doc.get("basis")
    if basis is None:
        basis = [f"e{i + 1}" for i in range(dim)]
    _expect(isinstance(basis, list) and all(isinstance(b, str) for b in basis), "$.basis",
            "must be a list of strings")
    _expect(len(basis) == dim, "$.basis", f"has {len(basis)} labels, expected {dim}")
    _expect(len(set(basis)) == dim, "$.basis", "labels must be distinct")
    convention = doc.get("convention", "right")
    _expect(convention in ("left", "right"), "$.convention", "must be 'left' or 'right'")
    brackets = doc["brackets"]
    _expect(isinstance(brackets, list), "$.brackets", "must be a list")
    sc: dict[tuple[int, int], SVec] = {}
    for n, entry in enumerate(brackets):
        p = f"$.brackets[{n}]"
        _expect(isinstance(entry, dict), p, "must be an object")
        _expect(set(entry) == {"left", "right", "value"}, p, "needs exactly the keys left, right, value")
        i = _index(entry["left"], dim, p + ".left")
        j = _index(entry["right"], dim, p + ".right")
        if (i, j) in sc:
            raise SchemaError(f"{p}: duplicate entry for ({i + 1},{j + 1})", path=p)
        value = entry["value"]
        _expect(isinstance(value, list), p + ".value", "must be a list of [index, rational] pairs")
        vec: SVec = {}
        for t, pair in enumerate(value):
            q = f"{p}.value[{t}]"
            _expect(isinstance(pair, list) and len(pair) == 2, q, "must be an [index, rational] pair")
            k = _index(pair[0], dim, q + "[0]")
            if k in vec:
                raise SchemaError(f"{q}: index {k + 1} repeated", path=q)
            vec[k] = parse_rational(pair[1], q + "[1]")
        sc[(i, j)] = vec
    if convention == "left":
        sc = {(j, i): v for (i, j), v in sc.items()}
    A = LeibnizAlgebra(name, dim, sc, basis)
    if check:
        chk = check_leibniz(A)
        if not chk:
            raise IdentityFail(f"Leibniz identity fails at basis triple {chk.triple}",
                               triple=list(chk.triple), residual=[format_rational(x) for x in chk.residual])
    return A


def parse_algebra(data: bytes | str, check: bool = True) -> LeibnizAlgebra:
    return algebra_from_obj(_load_json(data, "algebra file"), check)


def algebra_to_obj(A: LeibnizAlgebra) -> dict:
    """Canonical form: right convention, brackets sorted by (left, right), value sorted by index."""
    brackets = [
        {"left": i + 1, "right": j + 1,
         "value": [[k + 1, format_rational(x)] for k, x in sorted(v.items())]}
        for (i, j), v in sorted(A.sc.items())
    ]
    return {"format": FORMAT_VERSION, "name": A.name, "dim": A.dim, "basis": list(A.labels),
            "brackets": brackets}


def serialize_algebra(A: LeibnizAlgebra) -> str:
    return json.dumps(algebra_to_obj(A), indent=2) + "\n"


def _vector(row: Any, dim: int, path: str) -> tuple:
    _expect(isinstance(row, list), path, "must be a list of coordinates")
    _expect(len(row) == dim, path, f"has {len(row)} coordinates, expected {dim}")
    return tuple(parse_rational(x, f"{path}[{t}]") for t, x in enumerate(row))


def parse_ideal(data: bytes | str, dim: int) -> Subspace:
    """A JSON list of coordinate vectors; the span is returned (ideal-ness is checked by callers)."""
    doc = _load_json(data, "ideal file")
    _expect(isinstance(doc, list), "$", "ideal file must be a list of vectors")
    rows = [_vector(r, dim, f"$[{n}]") for n, r in enumerate(doc)]
    return Subspace.span(dim, rows)


def parse_map(data: bytes | str, rows: int, cols: int) -> Mat:
    """A JSON matrix with ``rows`` rows; column ``j`` is the image of domain basis vector ``j``."""
    doc = _load_json(data, "map file")
    _expect(isinstance(doc, list), "$", "map file must be a matrix (list of rows)")
    _expect(len(doc) == rows, "$", f"has {len(doc)} rows, expected {rows} (codomain dimension)")
    return Mat.of([_vector(r, cols, f"$[{n}]") for n, r in enumerate(doc)], cols)


def read_bytes(path: str | Path) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc.strerror}", path=str(path)) from exc
