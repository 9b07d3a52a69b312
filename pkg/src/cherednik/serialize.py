"""JSON encoding of polynomials, Saito frames and singular families.

Polynomial schema::

    {"vars": n,
     "field": {"kind": "Q" | "Qsqrt" | "cyclotomic", "param": int},
     "terms": [{"exp": [e1, ..., en], "coef": "p/q" | ["p/q", ...]}]}

Terms are written in descending grlex order so output is deterministic.
"""
from __future__ import annotations

import json
from typing import Any

from .coxeter import parse_group
from .field import ExtElement, FieldContext, format_rational, parse_rational
from .poly import MultiPoly, PolyMatrix

__all__ = [
    "SchemaError",
    "poly_to_json",
    "poly_from_json",
    "frame_to_json",
    "frame_from_json",
    "family_to_json",
    "family_from_json",
    "dumps",
    "loads_poly",
]


class SchemaError(ValueError):
    """Malformed serialized object; ``path`` locates the offending item."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


def _field_json(field: FieldContext | None) -> dict:
    if field is None:
        return {"kind": "Q", "param": 0}
    return {"kind": field.kind, "param": field.param}


def _coef_json(c, field):
    if field is None:
        if isinstance(c, ExtElement):
            raise ValueError("extension coefficient in a polynomial declared over Q")
        return format_rational(c)
    c = field(c)
    return [format_rational(v) for v in c.coeffs]


def poly_to_json(p: MultiPoly) -> dict:
    field = p.field
    if field is None and any(isinstance(c, ExtElement) for c in p.terms.values()):
        field = next(c.ctx for c in p.terms.values() if isinstance(c, ExtElement))
    return {
        "vars": p.nvars,
        "field": _field_json(field),
        "terms": [{"exp": list(e), "coef": _coef_json(c, field)} for e, c in p.sorted_terms()],
    }


def _require(obj, key, typ, path):
    if not isinstance(obj, dict):
        raise SchemaError(path, f"expected an object, got {type(obj).__name__}")
    if key not in obj:
        raise SchemaError(path, f"missing key {key!r}")
    val = obj[key]
    if typ is int and (isinstance(val, bool) or not isinstance(val, int)):
        raise SchemaError(f"{path}.{key}", f"expected an integer, got {val!r}")
    if typ is not int and not isinstance(val, typ):
        raise SchemaError(f"{path}.{key}", f"expected {typ.__name__}, got {type(val).__name__}")
    return val


def _parse_field(obj, path) -> FieldContext | None:
    kind = _require(obj, "kind", str, path)
    if kind == "Q":
        return None
    param = _require(obj, "param", int, path)
    try:
        return FieldContext(kind, param)
    except ValueError as exc:
        raise SchemaError(path, str(exc)) from None


def _parse_rational(text, path):
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise SchemaError(path, str(exc)) from None


def poly_from_json(obj: Any, path: str = "$") -> MultiPoly:
    nvars = _require(obj, "vars", int, path)
    if nvars < 0:
        raise SchemaError(f"{path}.vars", "must be nonnegative")
    field = _parse_field(_require(obj, "field", dict, path), f"{path}.field")
    terms_in = _require(obj, "terms", list, path)
    terms = {}
    for k, term in enumerate(terms_in):
        tpath = f"{path}.terms[{k}]"
        exp = _require(term, "exp", list, tpath)
        if len(exp) != nvars or not all(isinstance(e, int) and not isinstance(e, bool) and e >= 0 for e in exp):
            raise SchemaError(f"{tpath}.exp", f"expected {nvars} nonnegative integers")
        if "coef" not in term:
            raise SchemaError(tpath, "missing key 'coef'")
        raw = term["coef"]
        if field is None:
            if not isinstance(raw, str):
                raise SchemaError(f"{tpath}.coef", "rational coefficient must be a 'p/q' string")
            coef = _parse_rational(raw, f"{tpath}.coef")
        else:
            if not isinstance(raw, list) or len(raw) != field.degree:
                raise SchemaError(f"{tpath}.coef", f"expected an array of {field.degree} 'p/q' strings")
            coef = field.from_coeffs([_parse_rational(v, f"{tpath}.coef[{j}]") for j, v in enumerate(raw)])
        key = tuple(exp)
        if key in terms:
            raise SchemaError(f"{tpath}.exp", "duplicate exponent")
        terms[key] = coef
    return MultiPoly(nvars, terms, field)


def _matrix_json(M: PolyMatrix) -> list:
    return [[poly_to_json(p) for p in row] for row in M.rows]


def frame_to_json(frame) -> dict:
    return {
        "group": frame.rs.name,
        "degrees": list(frame.degrees),
        "h": frame.h,
        "field": _field_json(frame.field),
        "t": [poly_to_json(p) for p in frame.t],
        "U": _matrix_json(frame.U),
        "g": _matrix_json(frame.g),
    }


def frame_from_json(obj: Any, path: str = "$"):
    from .saito import SaitoFrame

    group = _require(obj, "group", str, path)
    try:
        rs = parse_group(group)
    except ValueError as exc:
        raise SchemaError(f"{path}.group", str(exc)) from None
    degrees = _require(obj, "degrees", list, path)
    if tuple(degrees) != rs.degrees:
        raise SchemaError(f"{path}.degrees", f"{degrees} does not match {group}")
    field = _parse_field(obj.get("field", {"kind": "Q", "param": 0}), f"{path}.field")
    t = [poly_from_json(p, f"{path}.t[{k}]") for k, p in enumerate(_require(obj, "t", list, path))]
    g_rows = _require(obj, "g", list, path)
    g = PolyMatrix(
        [[poly_from_json(p, f"{path}.g[{i}][{j}]") for j, p in enumerate(row)] for i, row in enumerate(g_rows)]
    )
    return SaitoFrame(rs, t, g, field)


def family_to_json(fam) -> dict:
    return {
        "group": fam.group,
        "beta": fam.beta,
        "m": fam.m,
        "c": format_rational(fam.c),
        "degree": fam.degree,
        "xi": [poly_to_json(p) for p in fam.xi],
        "q": [poly_to_json(p) for p in fam.q],
        "Q": poly_to_json(fam.Q),
        "Q_t": poly_to_json(fam.Q_t),
        "checks": dict(fam.checks),
    }


def family_from_json(obj: Any, path: str = "$"):
    from .shift import SingularFamily

    return SingularFamily(
        group=_require(obj, "group", str, path),
        beta=_require(obj, "beta", int, path),
        m=_require(obj, "m", int, path),
        c=_parse_rational(_require(obj, "c", str, path), f"{path}.c"),
        xi=[poly_from_json(p, f"{path}.xi[{k}]") for k, p in enumerate(_require(obj, "xi", list, path))],
        q=[poly_from_json(p, f"{path}.q[{k}]") for k, p in enumerate(_require(obj, "q", list, path))],
        Q=poly_from_json(_require(obj, "Q", dict, path), f"{path}.Q"),
        Q_t=poly_from_json(_require(obj, "Q_t", dict, path), f"{path}.Q_t"),
        degree=_require(obj, "degree", int, path),
        checks=dict(obj.get("checks", {})),
    )


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=False, ensure_ascii=False)


def loads_poly(text: str) -> MultiPoly:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"invalid JSON: {exc}") from None
    return poly_from_json(obj)
