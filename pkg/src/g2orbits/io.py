"""JSON encodings for the exact objects.

Rationals are strings ``"p/q"`` or ``"p"``.  A quadratic element is
``{"a": rat, "b": rat}`` read against a field given alongside it.  A
matrix is ``{"rows": n, "cols": m, "entries": [[elem, ...], ...]}``; a
bare list of rows is accepted on input.  Vectors are plain arrays.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .fields import QuadElem, QuadField, format_rat, parse_rat
from .g2rep import TriVector
from .linalg import DimensionError, Mat


class DecodeError(ValueError):
    """Malformed JSON input."""


# -- scalars -------------------------------------------------------------------


def encode_scalar(x):
    if isinstance(x, QuadElem):
        if x.b == 0:
            return format_rat(x.a)
        return {"a": format_rat(x.a), "b": format_rat(x.b)}
    return format_rat(x)


def decode_scalar(obj, field: QuadField | None = None):
    if isinstance(obj, dict):
        if set(obj) != {"a", "b"}:
            raise DecodeError(f"quadratic element needs exactly 'a' and 'b': {obj!r}")
        a, b = decode_rat(obj["a"]), decode_rat(obj["b"])
        if b == 0:
            return a
        if field is None:
            raise DecodeError("quadratic element given without a field (--d)")
        return field(a, b)
    return decode_rat(obj)


def decode_rat(obj) -> Fraction:
    if isinstance(obj, float):
        raise DecodeError(f"floats are not exact; write {obj!r} as 'p/q'")
    try:
        return parse_rat(obj)
    except (ValueError, ZeroDivisionError) as exc:
        raise DecodeError(str(exc)) from None


# -- vectors and matrices ------------------------------------------------------


def encode_vector(v) -> list:
    return [encode_scalar(x) for x in v]


def decode_vector(obj, length: int | None = None, field: QuadField | None = None) -> tuple:
    if not isinstance(obj, list):
        raise DecodeError(f"expected a JSON array, got {type(obj).__name__}")
    if length is not None and len(obj) != length:
        raise DecodeError(f"expected {length} entries, got {len(obj)}")
    return tuple(decode_scalar(x, field) for x in obj)


def decode_vec7(obj) -> tuple:
    return decode_vector(obj, 7)


def encode_matrix(m: Mat) -> dict:
    return {
        "rows": m.nrows,
        "cols": m.ncols,
        "entries": [[encode_scalar(x) for x in r] for r in m.rows],
    }


def decode_matrix(obj, field: QuadField | None = None, shape: tuple | None = None) -> Mat:
    if isinstance(obj, dict):
        try:
            n, k, entries = obj["rows"], obj["cols"], obj["entries"]
        except KeyError as exc:
            raise DecodeError(f"matrix object lacks {exc.args[0]!r}") from None
    elif isinstance(obj, list):
        entries = obj
        n = len(entries)
        k = len(entries[0]) if entries and isinstance(entries[0], list) else 0
    else:
        raise DecodeError("matrix must be an object or an array of rows")
    if not isinstance(entries, list) or len(entries) != n or not n:
        raise DecodeError("matrix row count does not match its header")
    rows = []
    for r in entries:
        if not isinstance(r, list) or len(r) != k:
            raise DecodeError("matrix rows must all have the declared length")
        rows.append([decode_scalar(x, field) for x in r])
    try:
        m = Mat(rows, field)
    except DimensionError as exc:
        raise DecodeError(str(exc)) from None
    if shape is not None and m.shape != tuple(shape):
        raise DecodeError(f"expected a {shape[0]}x{shape[1]} matrix, got {m.nrows}x{m.ncols}")
    return m


# -- composite objects ---------------------------------------------------------


def encode_trivector(t: TriVector) -> list:
    return encode_vector(t.coords)


def decode_trivector(obj, field: QuadField | None = None) -> TriVector:
    return TriVector(decode_vector(obj, 35, field))


def encode_pair(x) -> dict:
    return {"x1": encode_vector(x[0]), "x2": encode_vector(x[1])}


def decode_pair(obj) -> tuple:
    if not isinstance(obj, dict) or set(obj) != {"x1", "x2"}:
        raise DecodeError("a pair vector is {\"x1\": [...7], \"x2\": [...7]}")
    return decode_vec7(obj["x1"]), decode_vec7(obj["x2"])


def encode_group_elem2(g) -> dict:
    return {"g1": encode_matrix(g.g1), "g2": encode_matrix(g.g2)}


def decode_group_elem2(obj, field: QuadField | None = None):
    from .case2 import GroupElem2

    if not isinstance(obj, dict) or set(obj) != {"g1", "g2"}:
        raise DecodeError("a group element is {\"g1\": 7x7, \"g2\": 2x2}")
    return GroupElem2(
        decode_matrix(obj["g1"], field, (7, 7)),
        decode_matrix(obj["g2"], field, (2, 2)),
    )


def encode_cocycle(c) -> dict:
    from .cohomology import TORUS

    s = c.structure
    out = {"d": s.field.d, "structure": s.kind}
    if s.kind == TORUS:
        out["h"] = encode_scalar(c.h)
    else:
        out["lambda"] = encode_vector(s.lam.diagonal())
        out["h"] = encode_matrix(c.h)
    return out


def decode_cocycle(obj):
    from .cohomology import TORUS, Cocycle, SigmaStructure

    if not isinstance(obj, dict):
        raise DecodeError("a cocycle is a JSON object")
    try:
        field = QuadField(int(obj["d"]))
        kind = obj["structure"]
        h = obj["h"]
    except KeyError as exc:
        raise DecodeError(f"cocycle lacks {exc.args[0]!r}") from None
    except (TypeError, ValueError) as exc:
        raise DecodeError(str(exc)) from None
    if kind == TORUS:
        return Cocycle(SigmaStructure.torus(field), decode_scalar(h, field))
    hm = decode_matrix(h, field)
    if "lambda" in obj:
        lam = Mat.diag(*decode_vector(obj["lambda"], hm.nrows))
    else:
        lam = Mat.diag(*([1] * (hm.nrows - 1) + [-1]))
    try:
        structure = SigmaStructure(kind, field, lam)
    except ValueError as exc:
        raise DecodeError(str(exc)) from None
    return Cocycle(structure, hm)


# -- text ----------------------------------------------------------------------


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DecodeError(f"malformed JSON: {exc}") from None


def dumps(obj) -> str:
    """Deterministic rendering: sorted keys, fixed separators."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)
