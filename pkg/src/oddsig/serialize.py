"""JSON document schemas for the command line: parse, validate, emit.

Every document is a JSON object with a "kind" field naming its schema.
Parsing enforces the invariants of the target type, so a document that
loads is a valid object; every emitted document re-parses to an equal
value. Cyclotomic coordinates travel as exact rational strings.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Sequence

from .descent import FamilyTriple
from .errors import InputError, ParseError, SchemaError
from .exactnum import CyclotomicElement, GaloisElement
from .plane import PlaneCurve, ProjMap
from .polyring import SparsePoly
from .superell import QGonalCurve, QGonalMap, RationalFunction

KINDS = ("plane_curve", "projective_map", "qgonal_curve", "qgonal_map",
         "group", "family_triple", "galois_action")

PLANE_VARIABLES = ("x", "y", "z")


@dataclass(frozen=True)
class InputDocument:
    kind: str
    value: Any


def _require(obj: dict, key: str, expect=None):
    if key not in obj:
        raise SchemaError(f"document missing '{key}'")
    value = obj[key]
    if expect is not None and not isinstance(value, expect):
        raise SchemaError(f"'{key}' has the wrong type: {value!r}")
    return value


def _element(order: int, coords) -> CyclotomicElement:
    return CyclotomicElement.from_dict({"order": order, "coords": coords})


def _load_plane_curve(obj: dict) -> PlaneCurve:
    poly = SparsePoly.from_dict(obj)
    try:
        return PlaneCurve(poly)
    except (InputError, ValueError) as exc:
        raise SchemaError(f"not a plane curve: {exc}") from exc


def _load_projective_map(obj: dict) -> ProjMap:
    return ProjMap.from_dict(obj)


def _load_group(obj: dict) -> list[ProjMap]:
    gens = _require(obj, "generators", list)
    if not gens:
        raise SchemaError("group document needs at least one generator")
    out = []
    for item in gens:
        if not isinstance(item, dict):
            raise SchemaError("each generator must be a map object")
        out.append(ProjMap.from_dict(item))
    return out


def _load_qgonal_curve(obj: dict) -> QGonalCurve:
    q = _require(obj, "q", int)
    poly_doc = _require(obj, "poly", dict)
    poly = SparsePoly.from_dict(poly_doc)
    m, n = obj.get("m"), obj.get("n")
    for label, value in (("m", m), ("n", n)):
        if value is not None and not isinstance(value, int):
            raise SchemaError(f"'{label}' must be an integer")
    try:
        return QGonalCurve(q, poly, m, n)
    except (InputError, ValueError) as exc:
        raise SchemaError(f"not a cyclic cover: {exc}") from exc


def _load_qgonal_map(obj: dict) -> QGonalMap:
    order = _require(obj, "order", int)
    if order < 1:
        raise SchemaError(f"bad order: {order!r}")
    rows = _require(obj, "mobius", list)
    if len(rows) != 2 or any(not isinstance(r, list) or len(r) != 2 for r in rows):
        raise SchemaError("mobius part must be a 2x2 array")
    num = _require(obj, "multiplier_num", list)
    den = _require(obj, "multiplier_den", list)
    try:
        mobius = [[_element(order, e) for e in row] for row in rows]
        multiplier = RationalFunction(order, [_element(order, c) for c in num],
                                      [_element(order, c) for c in den])
        return QGonalMap(order, mobius, multiplier)
    except (InputError, ValueError) as exc:
        raise SchemaError(f"not a cover map: {exc}") from exc


def _load_family_triple(obj: dict) -> FamilyTriple:
    order = _require(obj, "order", int)
    if order < 1:
        raise SchemaError(f"bad order: {order!r}")
    values = _require(obj, "values", list)
    if len(values) != 3:
        raise SchemaError("family triple needs exactly three values")
    try:
        return FamilyTriple(*[_element(order, v) for v in values])
    except InputError as exc:
        raise SchemaError(f"not a valid family triple: {exc}") from exc


def _load_galois_action(obj: dict) -> GaloisElement:
    order = _require(obj, "order", int)
    exponent = _require(obj, "exponent", int)
    if order < 1:
        raise SchemaError(f"bad order: {order!r}")
    try:
        return GaloisElement(order, exponent)
    except InputError as exc:
        raise SchemaError(str(exc)) from exc


_LOADERS = {
    "plane_curve": _load_plane_curve,
    "projective_map": _load_projective_map,
    "qgonal_curve": _load_qgonal_curve,
    "qgonal_map": _load_qgonal_map,
    "group": _load_group,
    "family_triple": _load_family_triple,
    "galois_action": _load_galois_action,
}


def parse_document(obj: Any) -> InputDocument:
    """Validate an already-decoded JSON object."""
    if not isinstance(obj, dict):
        raise SchemaError("document must be a JSON object")
    kind = obj.get("kind")
    if kind not in _LOADERS:
        raise SchemaError(f"unknown document kind {kind!r}")
    return InputDocument(kind, _LOADERS[kind](obj))


def parse_input(text: str) -> InputDocument:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return parse_document(obj)


# emission ----------------------------------------------------------------------

def element_coords(value: CyclotomicElement) -> list[str]:
    return [str(c) for c in value.coords]


def plane_curve_document(curve: PlaneCurve) -> dict:
    doc = curve.poly.to_dict(PLANE_VARIABLES)
    return {"kind": "plane_curve", **doc}


def projective_map_document(mapping: ProjMap) -> dict:
    return {"kind": "projective_map", **mapping.to_dict()}


def group_document(generators: Sequence[ProjMap]) -> dict:
    return {"kind": "group",
            "generators": [g.to_dict() for g in generators]}


def qgonal_curve_document(curve: QGonalCurve) -> dict:
    doc = {"kind": "qgonal_curve", "q": curve.q,
           "poly": curve.poly.to_dict(("x",))}
    if curve.m is not None:
        doc["m"] = curve.m
    if curve.n is not None:
        doc["n"] = curve.n
    return doc


def qgonal_map_document(mapping: QGonalMap) -> dict:
    return mapping.to_dict()


def family_triple_document(triple: FamilyTriple) -> dict:
    return {"kind": "family_triple", "order": triple.order,
            "values": [element_coords(v) for v in triple.values]}


def galois_action_document(action: GaloisElement) -> dict:
    return {"kind": "galois_action", "order": action.order,
            "exponent": action.exponent}


def to_document(value: Any) -> dict:
    if isinstance(value, PlaneCurve):
        return plane_curve_document(value)
    if isinstance(value, ProjMap):
        return projective_map_document(value)
    if isinstance(value, QGonalCurve):
        return qgonal_curve_document(value)
    if isinstance(value, QGonalMap):
        return qgonal_map_document(value)
    if isinstance(value, FamilyTriple):
        return family_triple_document(value)
    if isinstance(value, GaloisElement):
        return galois_action_document(value)
    if isinstance(value, (list, tuple)) and value and all(
            isinstance(g, ProjMap) for g in value):
        return group_document(value)
    raise TypeError(f"no document schema for {type(value).__name__}")


def dumps(obj: Any) -> str:
    """Canonical JSON: sorted keys, stable layout, trailing newline."""
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
