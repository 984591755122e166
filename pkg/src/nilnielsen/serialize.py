"""JSON encoding of presentations, endomorphisms, maps, setups and reports.

All indices in JSON are 1-based. Rationals are strings ``"p/q"`` or ``"p"``;
plain JSON integers are accepted on input as well.
"""
from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources
from typing import Any

from .endomorphism import Endomorphism
from .errors import DimensionError, FiltrationError, InputError
from .group import GroupElement, GroupPresentation, Polynomial, Term, builtin
from .linalg import ExtendedCount, format_rational, to_fraction
from .nvalued import AffineLift, AffineNValuedMap, ComponentReport, MapReport
from .torus import TorusFixedPoint
from .twisted import LayerDatum, TwistedSetup


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def load_path(path) -> Any:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def bundled_example(name: str) -> Any:
    """One of the JSON fixtures shipped in ``nilnielsen/data``."""
    ref = resources.files("nilnielsen").joinpath("data", f"{name}.json")
    if not ref.is_file():
        raise InputError(f"no bundled example named {name!r}")
    return loads(ref.read_text(encoding="utf-8"))


def bundled_example_names():
    return sorted(p.name[:-5] for p in resources.files("nilnielsen").joinpath("data").iterdir()
                  if p.name.endswith(".json"))


# --------------------------------------------------------------------------
# decoding helpers

def _rational(value, where):
    try:
        return to_fraction(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{where}: {value!r} is not an exact rational") from exc


def _int(value, where):
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"{where}: expected an integer, got {value!r}")
    return value


def _get(obj, key, where):
    if not isinstance(obj, dict):
        raise InputError(f"{where}: expected an object")
    if key not in obj:
        raise InputError(f"{where}: missing key {key!r}")
    return obj[key]


def _list(value, where):
    if not isinstance(value, list):
        raise InputError(f"{where}: expected a list")
    return value


def _matrix(value, where):
    rows = _list(value, where)
    out = [[_rational(v, f"{where}[{r}][{c}]") for c, v in enumerate(_list(row, f"{where}[{r}]"))]
           for r, row in enumerate(rows)]
    if not out or any(len(row) != len(out[0]) for row in out) or not out[0]:
        raise InputError(f"{where}: expected a non-empty rectangular matrix")
    return out


# --------------------------------------------------------------------------
# presentations

def presentation_from_json(obj, where="group") -> GroupPresentation:
    if isinstance(obj, str):
        obj = {"builtin": obj}
    if not isinstance(obj, dict):
        raise InputError(f"{where}: expected an object or builtin name")
    if "builtin" in obj:
        rank = obj.get("rank")
        try:
            return builtin(str(obj["builtin"]), None if rank is None else _int(rank, f"{where}.rank"))
        except ValueError as exc:
            raise InputError(f"{where}: {exc}") from exc
    ranks = [_int(k, f"{where}.ranks") for k in _list(_get(obj, "ranks", where), f"{where}.ranks")]
    if "class" in obj and _int(obj["class"], f"{where}.class") != len(ranks):
        raise InputError(f"{where}: class {obj['class']} does not match {len(ranks)} ranks")
    law = {}
    for n, entry in enumerate(_list(obj.get("law", []), f"{where}.law")):
        loc = f"{where}.law[{n}]"
        target = (_int(_get(entry, "layer", loc), loc) - 1, _int(_get(entry, "coordinate", loc), loc) - 1)
        if target in law:
            raise InputError(f"{loc}: duplicate polynomial for layer {target[0] + 1}, coordinate {target[1] + 1}")
        terms = []
        for t, term in enumerate(_list(_get(entry, "terms", loc), f"{loc}.terms")):
            tloc = f"{loc}.terms[{t}]"
            coeff = _rational(_get(term, "coeff", tloc), f"{tloc}.coeff")
            powers = {}
            for side in ("x", "y"):
                vs = []
                for v in _list(term.get(side, []), f"{tloc}.{side}"):
                    v = _list(v, f"{tloc}.{side}")
                    if len(v) != 3:
                        raise InputError(f"{tloc}.{side}: variables are [layer, index, exponent]")
                    layer, idx, exp = (_int(a, f"{tloc}.{side}") for a in v)
                    if exp < 0:
                        raise InputError(f"{tloc}.{side}: negative exponent")
                    vs.append((layer - 1, idx - 1, exp))
                powers[side] = tuple(vs)
            terms.append(Term(coeff, powers["x"], powers["y"]))
        law[target] = Polynomial(tuple(terms))
    try:
        return GroupPresentation.create(ranks, law, name=str(obj.get("name", "custom")))
    except DimensionError as exc:
        raise InputError(f"{where}: {exc}") from exc


def presentation_to_json(g: GroupPresentation) -> dict:
    if g.name == "heisenberg":
        return {"builtin": "heisenberg"}
    if g.name.startswith("abelian("):
        return {"builtin": g.name}
    law = []
    for i, row in enumerate(g.law):
        for j, poly in enumerate(row):
            if poly:
                law.append({"layer": i + 1, "coordinate": j + 1, "terms": [
                    {"coeff": format_rational(t.coeff),
                     "x": [[a + 1, b + 1, e] for a, b, e in t.x],
                     "y": [[a + 1, b + 1, e] for a, b, e in t.y]} for t in poly.terms]})
    return {"class": len(g.ranks), "ranks": list(g.ranks), "law": law}


# --------------------------------------------------------------------------
# elements and endomorphisms

def element_from_json(g: GroupPresentation, value, where) -> GroupElement:
    layers = _list(value, where)
    if len(layers) != len(g.ranks):
        raise InputError(f"{where}: expected {len(g.ranks)} layers, got {len(layers)}")
    out = []
    for i, (layer, k) in enumerate(zip(layers, g.ranks)):
        layer = _list(layer, f"{where}[{i}]")
        if len(layer) != k:
            raise InputError(f"{where}[{i}]: layer {i + 1} needs {k} coordinates, got {len(layer)}")
        out.append([_rational(v, f"{where}[{i}]") for v in layer])
    return GroupElement.from_layers(out)


def element_to_json(x: GroupElement) -> list:
    return [[format_rational(v) for v in layer] for layer in x.coords]


def endomorphism_from_json(g: GroupPresentation, obj, where="endomorphism") -> Endomorphism:
    """Decode an endomorphism; raises ``FiltrationError`` for layer violations."""
    if isinstance(obj, dict) and "matrix" in obj:
        if g.nilpotency_class != 1:
            raise InputError(f"{where}: 'matrix' form is only allowed for abelian groups")
        mat = _matrix(obj["matrix"], f"{where}.matrix")
        try:
            return Endomorphism.linear(g, mat)
        except DimensionError as exc:
            raise InputError(f"{where}: {exc}") from exc
    images = {}
    for n, entry in enumerate(_list(_get(obj, "images", where), f"{where}.images")):
        loc = f"{where}.images[{n}]"
        basis = _list(_get(entry, "basis", loc), f"{loc}.basis")
        if len(basis) != 2:
            raise InputError(f"{loc}.basis: expected [layer, index]")
        key = (_int(basis[0], loc) - 1, _int(basis[1], loc) - 1)
        if key in images:
            raise InputError(f"{loc}: duplicate image for basis element {list(basis)}")
        images[key] = element_from_json(g, _get(entry, "value", loc), f"{loc}.value")
    try:
        return Endomorphism.from_images(g, images)
    except FiltrationError:
        raise
    except DimensionError as exc:
        raise InputError(f"{where}: {exc}") from exc


def endomorphism_to_json(phi: Endomorphism) -> dict:
    return {"images": [{"basis": [i + 1, j + 1], "value": element_to_json(phi.image(i, j))}
                       for i, j in phi.group.basis()]}


# --------------------------------------------------------------------------
# maps and setups

def map_from_json(obj) -> AffineNValuedMap:
    g = presentation_from_json(_get(obj, "group", "map"))
    lifts = []
    for n, entry in enumerate(_list(_get(obj, "lifts", "map"), "map.lifts")):
        loc = f"map.lifts[{n}]"
        t = element_from_json(g, _get(entry, "translation", loc), f"{loc}.translation")
        phi = endomorphism_from_json(g, _get(entry, "endomorphism", loc), f"{loc}.endomorphism")
        lifts.append(AffineLift(t, phi))
    if not lifts:
        raise InputError("map.lifts: at least one lift is required")
    return AffineNValuedMap(g, tuple(lifts))


def map_to_json(m: AffineNValuedMap) -> dict:
    return {"group": presentation_to_json(m.group),
            "lifts": [{"translation": element_to_json(l.translation),
                       "endomorphism": endomorphism_to_json(l.endomorphism)} for l in m.lifts]}


def setup_from_json(obj):
    """Return ``(setup, index)``; ``index`` is None when not given."""
    layers = []
    for n, entry in enumerate(_list(_get(obj, "layers", "setup"), "setup.layers")):
        loc = f"setup.layers[{n}]"
        b = _matrix(_get(entry, "B", loc), f"{loc}.B")
        m = _matrix(_get(entry, "M", loc), f"{loc}.M")
        try:
            layers.append(LayerDatum(b, m))
        except ValueError as exc:
            raise InputError(f"{loc}: {exc}") from exc
    if not layers:
        raise InputError("setup.layers: at least one layer is required")
    index = obj.get("index")
    return TwistedSetup(tuple(layers)), None if index is None else _int(index, "setup.index")


# --------------------------------------------------------------------------
# reports

def count_to_json(c: ExtendedCount) -> str:
    return str(c)


def component_to_json(c: ComponentReport) -> dict:
    return {"orbit": [i + 1 for i in c.orbit], "det": format_rational(c.det_value),
            "R": count_to_json(c.R_component), "N": c.N_component, "index_sign": c.index_sign}


def map_report_to_json(r: MapReport) -> dict:
    return {"reidemeister": count_to_json(r.reidemeister), "nielsen": r.nielsen,
            "components": [component_to_json(c) for c in r.components]}


def map_report_from_json(obj) -> MapReport:
    comps = []
    for c in obj["components"]:
        orbit = tuple(i - 1 for i in c["orbit"])
        comps.append(ComponentReport(orbit, orbit[0], Fraction(c["det"]),
                                     ExtendedCount.parse(c["R"]), int(c["N"]), int(c["index_sign"])))
    return MapReport(ExtendedCount.parse(obj["reidemeister"]), int(obj["nielsen"]), tuple(comps))


def fixed_point_to_json(p: TorusFixedPoint) -> dict:
    return {"point": [format_rational(v) for v in p.coordinates], "lift": p.lift_index + 1,
            "witness": list(p.translation_class)}
