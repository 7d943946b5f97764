"""JSON file formats for surfaces, maps, polynomials and reports.

Rationals travel as strings ("p/q" or "p"); complex values as {re, im}.
Output is canonical: sorted keys, terms ordered by (total degree, first
exponent), two-space indentation and a trailing newline.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import CRNormalError
from .poly import BiPoly, WJet
from .scalar import ExactScalar, format_rational, parse_rational
from .surface import ModelPolynomial, SurfaceJet, TangentIdentityMap

__all__ = [
    "FormatError",
    "SURFACE_FORMAT",
    "MAP_FORMAT",
    "POLY_FORMAT",
    "REPORT_FORMAT",
    "dumps",
    "scalar_record",
    "poly_records",
    "surface_to_dict",
    "surface_from_dict",
    "map_to_dict",
    "map_from_dict",
    "poly_to_dict",
    "poly_from_dict",
    "read_json",
    "write_json",
]

SURFACE_FORMAT = "cr-surface/1"
MAP_FORMAT = "cr-map/1"
POLY_FORMAT = "cr-poly/1"
REPORT_FORMAT = "cr-report/1"


class FormatError(CRNormalError, ValueError):
    """Malformed input file; ``where`` locates the offending field."""

    code = "FORMAT_ERROR"

    def __init__(self, where: str, message: str):
        self.where = where
        super().__init__(f"{where}: {message}")


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def scalar_record(c: ExactScalar) -> dict:
    return {"re": format_rational(c.re), "im": format_rational(c.im)}


def poly_records(p: BiPoly, names=("m", "n")) -> list:
    return _records(p.terms, names)


def _records(p: dict, names) -> list:
    out = []
    for (a, b), c in sorted(p.items(), key=lambda kv: (kv[0][0] + kv[0][1], kv[0][0])):
        rec = {names[0]: a, names[1]: b}
        rec.update(scalar_record(c))
        out.append(rec)
    return out


def _int(obj, key, where):
    if key not in obj:
        raise FormatError(where, f"missing field {key!r}")
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise FormatError(f"{where}.{key}", "expected an integer")
    return v


def _rational(obj, key, where):
    v = obj.get(key, "0")
    if not isinstance(v, str):
        raise FormatError(f"{where}.{key}", "rationals must be strings like \"p/q\"")
    try:
        return parse_rational(v)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"{where}.{key}", str(exc)) from None


def _parse_terms(seq, names, where) -> dict:
    if not isinstance(seq, list):
        raise FormatError(where, "expected a list of terms")
    out = {}
    for i, rec in enumerate(seq):
        here = f"{where}[{i}]"
        if not isinstance(rec, dict):
            raise FormatError(here, "expected an object")
        a, b = _int(rec, names[0], here), _int(rec, names[1], here)
        if a < 0 or b < 0:
            raise FormatError(here, "negative exponent")
        if (a, b) in out:
            raise FormatError(here, f"duplicate entry ({a}, {b})")
        out[(a, b)] = ExactScalar(_rational(rec, "re", here), _rational(rec, "im", here))
    return {k: c for k, c in out.items() if c}


def _check_format(obj, expected, where="$"):
    if not isinstance(obj, dict):
        raise FormatError(where, "expected a JSON object")
    fmt = obj.get("format")
    if fmt != expected:
        raise FormatError(f"{where}.format", f"expected {expected!r}, got {fmt!r}")


def surface_to_dict(surface: SurfaceJet) -> dict:
    return {
        "format": SURFACE_FORMAT,
        "k0": surface.k0,
        "degree": surface.order,
        "model": poly_records(surface.model.poly),
        "tail": poly_records(surface.tail),
    }


def surface_from_dict(obj) -> SurfaceJet:
    _check_format(obj, SURFACE_FORMAT)
    k0 = _int(obj, "k0", "$")
    degree = _int(obj, "degree", "$")
    model = BiPoly(_parse_terms(obj.get("model"), ("m", "n"), "$.model"))
    tail = BiPoly(_parse_terms(obj.get("tail", []), ("m", "n"), "$.tail"))
    mp = ModelPolynomial(k0, model)
    if degree < k0 + 1:
        raise FormatError("$.degree", f"must be at least k0+1 = {k0 + 1}")
    return SurfaceJet(mp, degree, tail)


def map_to_dict(m: TangentIdentityMap) -> dict:
    return {
        "format": MAP_FORMAT,
        "k0": m.k0,
        "f": _records(m.f.terms, ("k", "l")),
        "g": _records(m.g.terms, ("k", "l")),
    }


def map_from_dict(obj) -> TangentIdentityMap:
    _check_format(obj, MAP_FORMAT)
    k0 = _int(obj, "k0", "$")
    f = _parse_terms(obj.get("f", []), ("k", "l"), "$.f")
    g = _parse_terms(obj.get("g", []), ("k", "l"), "$.g")
    return TangentIdentityMap(k0, WJet(f), WJet(g))


def poly_to_dict(p: BiPoly) -> dict:
    return {"format": POLY_FORMAT, "terms": poly_records(p)}


def poly_from_dict(obj) -> BiPoly:
    _check_format(obj, POLY_FORMAT)
    return BiPoly(_parse_terms(obj.get("terms", []), ("m", "n"), "$.terms"))


def read_json(path) -> object:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(str(path), exc.strerror or str(exc)) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg) from None


def write_json(path, obj) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")
