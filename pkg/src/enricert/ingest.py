"""JSON input documents: families, maps and parameter actions.

The document shape is

    { "families": [ { "name", "kind", "parameters": [...],
                      "monomials": [ {"i", "j", "coeff": {"param", "scalar"}} ],
                      "actions":   [ {"name", "weights", "geometric",
                                      "w_square_scale"} ] } ],
      "maps":     [ { "name", "coords": {"w": ..., "y": ..., "z": ...} } ] }

with scalars in the four-rational field encoding "c0,c1,c2,c3", coordinate
and geometric entries in the expression grammar, and an optional "param" key
making a monomial entry contribute scalar * param * y^i * z^j.  Entries
repeating an (i, j) pair accumulate.  serialize_document inverts ingest up
to that accumulation, so round trips reproduce the same domain objects.

Failure taxonomy: malformed expressions raise ParseError (with a character
position), a document of the wrong shape raises SchemaError, and a
well-formed document describing an invalid object raises InvariantError
from the object constructor.
"""

from __future__ import annotations

import json
from typing import Dict, List, Mapping, Optional, Tuple

from .cover import SurfaceFamily, horikawa_support
from .errors import ParseError, SchemaError
from .field import Cyclo, parse_cyclo
from .maps import BirMap
from .moduli import ParameterAction
from .parsing import parse_expression
from .poly import MPoly, RatFunc, TABLE

_ENRIQUES_COORDS = ("w", "y", "z")
_K3_COORDS = ("W", "Y", "Z")
_KINDS = ("enriques_horikawa", "k3_cover")


class IngestResult:
    """Parsed document: families, maps, and actions keyed by family name."""

    def __init__(
        self,
        families: Tuple[SurfaceFamily, ...],
        maps: Tuple[BirMap, ...],
        actions: Dict[str, Tuple[ParameterAction, ...]],
    ):
        self.families = families
        self.maps = maps
        self.actions = actions

    def __repr__(self) -> str:
        return (
            f"IngestResult({len(self.families)} families, "
            f"{len(self.maps)} maps)"
        )


def _expect(cond: bool, where: str, what: str) -> None:
    if not cond:
        raise SchemaError(f"{where}: {what}")


def _str_field(entry: Mapping, key: str, where: str) -> str:
    _expect(key in entry, where, f"missing key {key!r}")
    value = entry[key]
    _expect(isinstance(value, str), where, f"{key!r} must be a string")
    return value


def _scalar(entry: Mapping, where: str) -> Cyclo:
    text = _str_field(entry, "scalar", where)
    try:
        return parse_cyclo(text)
    except ParseError as exc:
        raise ParseError(f"{where}.scalar: {exc.message}", exc.position) from exc


def _expression(text: str, where: str) -> RatFunc:
    try:
        return parse_expression(text)
    except ParseError as exc:
        raise ParseError(f"{where}: {exc.message}", exc.position) from exc


def _load_family(entry: Mapping, where: str) -> Tuple[SurfaceFamily, Tuple[ParameterAction, ...]]:
    _expect(isinstance(entry, Mapping), where, "family entry must be an object")
    name = _str_field(entry, "name", where)
    kind = _str_field(entry, "kind", where)
    _expect(kind in _KINDS, where, f"kind must be one of {_KINDS}, got {kind!r}")
    params = entry.get("parameters", [])
    _expect(isinstance(params, list), where, "'parameters' must be a list")
    for p in params:
        _expect(
            isinstance(p, str) and TABLE.is_parameter(p) and p != "alpha",
            where,
            f"unknown parameter {p!r}",
        )
    monomials = entry.get("monomials")
    _expect(isinstance(monomials, list) and monomials, where,
            "'monomials' must be a non-empty list")

    base1, base2 = ("y", "z") if kind == "enriques_horikawa" else ("Y", "Z")
    support = horikawa_support()
    branch = MPoly.zero(TABLE)
    for idx, mono in enumerate(monomials):
        mwhere = f"{where}.monomials[{idx}]"
        _expect(isinstance(mono, Mapping), mwhere, "must be an object")
        for key in ("i", "j"):
            _expect(key in mono, mwhere, f"missing key {key!r}")
            _expect(
                isinstance(mono[key], int) and not isinstance(mono[key], bool),
                mwhere,
                f"{key!r} must be an integer",
            )
        i, j = mono["i"], mono["j"]
        if kind == "enriques_horikawa":
            _expect(
                (i, j) in support,
                mwhere,
                f"support outside 4 <= i+2j <= 8: ({i}, {j})",
            )
        else:
            _expect(
                0 <= i <= 4 and 0 <= j <= 4,
                mwhere,
                f"support outside bidegree (4, 4): ({i}, {j})",
            )
        coeff = mono.get("coeff")
        _expect(isinstance(coeff, Mapping), mwhere, "'coeff' must be an object")
        _expect(
            set(coeff) <= {"param", "scalar"},
            mwhere,
            f"unknown coeff keys {sorted(set(coeff) - {'param', 'scalar'})}",
        )
        scalar = _scalar(coeff, mwhere)
        term = MPoly.const(scalar, TABLE)
        if "param" in coeff:
            p = coeff["param"]
            _expect(
                isinstance(p, str) and p in params,
                mwhere,
                f"coeff names undeclared parameter {p!r}",
            )
            term = term * MPoly.var(p, TABLE)
        term = term * MPoly.var(base1, TABLE) ** i * MPoly.var(base2, TABLE) ** j
        branch = branch + term

    fam = SurfaceFamily(name, kind, branch, tuple(params))

    actions: List[ParameterAction] = []
    raw_actions = entry.get("actions", [])
    _expect(isinstance(raw_actions, list), where, "'actions' must be a list")
    for idx, raw in enumerate(raw_actions):
        actions.append(_load_action(raw, f"{where}.actions[{idx}]"))
    return fam, tuple(actions)


def _load_action(entry: Mapping, where: str) -> ParameterAction:
    _expect(isinstance(entry, Mapping), where, "action entry must be an object")
    name = _str_field(entry, "name", where)
    weights = entry.get("weights")
    _expect(isinstance(weights, Mapping), where, "'weights' must be an object")
    for p, wgt in weights.items():
        _expect(
            isinstance(p, str) and TABLE.is_parameter(p) and p != "alpha",
            where,
            f"weight names unknown parameter {p!r}",
        )
        _expect(
            isinstance(wgt, int) and not isinstance(wgt, bool),
            where,
            f"weight of {p!r} must be an integer",
        )
    geometric_raw = entry.get("geometric", {})
    _expect(isinstance(geometric_raw, Mapping), where, "'geometric' must be an object")
    geometric = {}
    for var, text in geometric_raw.items():
        _expect(isinstance(text, str), where, f"geometric[{var!r}] must be a string")
        geometric[var] = _expression(text, f"{where}.geometric.{var}")
    scale = entry.get("w_square_scale")
    _expect(
        isinstance(scale, int) and not isinstance(scale, bool),
        where,
        "'w_square_scale' must be an integer",
    )
    return ParameterAction(name, dict(weights), geometric, scale)


def _load_map(entry: Mapping, where: str) -> BirMap:
    _expect(isinstance(entry, Mapping), where, "map entry must be an object")
    name = _str_field(entry, "name", where)
    coords = entry.get("coords")
    _expect(isinstance(coords, Mapping), where, "'coords' must be an object")
    keys = set(coords)
    if keys == set(_ENRIQUES_COORDS):
        variables = _ENRIQUES_COORDS
    elif keys == set(_K3_COORDS):
        variables = _K3_COORDS
    else:
        raise SchemaError(
            f"{where}: coords keys must be exactly {set(_ENRIQUES_COORDS)} "
            f"or {set(_K3_COORDS)}, got {sorted(keys)}"
        )
    parsed = {
        v: _expression(_str_field(coords, v, f"{where}.coords"), f"{where}.coords.{v}")
        for v in variables
    }
    return BirMap(variables, parsed, label=name)


def load_document(document: Mapping) -> IngestResult:
    """Build domain objects from an already-parsed JSON document."""
    _expect(isinstance(document, Mapping), "document", "top level must be an object")
    unknown = set(document) - {"schema", "families", "maps"}
    _expect(not unknown, "document", f"unknown keys {sorted(unknown)}")
    families: List[SurfaceFamily] = []
    actions: Dict[str, Tuple[ParameterAction, ...]] = {}
    raw_families = document.get("families", [])
    _expect(isinstance(raw_families, list), "document", "'families' must be a list")
    for idx, entry in enumerate(raw_families):
        fam, fam_actions = _load_family(entry, f"families[{idx}]")
        _expect(
            fam.name not in actions,
            f"families[{idx}]",
            f"duplicate family name {fam.name!r}",
        )
        families.append(fam)
        actions[fam.name] = fam_actions
    maps: List[BirMap] = []
    raw_maps = document.get("maps", [])
    _expect(isinstance(raw_maps, list), "document", "'maps' must be a list")
    for idx, entry in enumerate(raw_maps):
        maps.append(_load_map(entry, f"maps[{idx}]"))
    return IngestResult(tuple(families), tuple(maps), actions)


def ingest(path: str) -> IngestResult:
    """Read and parse a JSON document from a file."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            document = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path}: not valid JSON: {exc}") from exc
    return load_document(document)


# -- serialization -----------------------------------------------------------

def _coeff_entries(fam: SurfaceFamily, i: int, j: int) -> List[Dict[str, object]]:
    """Split the (i, j) coefficient into one entry per scalar / parameter part."""
    coeff = fam.monomial_coefficient(i, j)
    table = coeff.table
    out: List[Dict[str, object]] = []
    const_term = None
    by_param: Dict[str, Cyclo] = {}
    for e, c in coeff.terms.items():
        live = [table.names[pos] for pos, k in enumerate(e) if k]
        if not live:
            const_term = c
        else:
            # affine-linearity leaves exactly one parameter of exponent one
            by_param[live[0]] = c
    if const_term is not None:
        out.append({"i": i, "j": j, "coeff": {"scalar": const_term.encode()}})
    for p in fam.parameters:
        if p in by_param:
            out.append(
                {"i": i, "j": j, "coeff": {"param": p, "scalar": by_param[p].encode()}}
            )
    return out


def serialize_family(
    fam: SurfaceFamily, actions: Tuple[ParameterAction, ...] = ()
) -> Dict[str, object]:
    monomials: List[Dict[str, object]] = []
    for i, j in fam.geometric_support():
        monomials.extend(_coeff_entries(fam, i, j))
    entry: Dict[str, object] = {
        "name": fam.name,
        "kind": fam.kind,
        "parameters": list(fam.parameters),
        "monomials": monomials,
    }
    if actions:
        entry["actions"] = [serialize_action(a) for a in actions]
    return entry


def serialize_action(action: ParameterAction) -> Dict[str, object]:
    return {
        "name": action.name,
        "weights": {p: action.weights[p] for p in sorted(action.weights)},
        "geometric": {
            v: str(action.geometric[v]) for v in sorted(action.geometric)
        },
        "w_square_scale": action.w_square_scale,
    }


def serialize_map(phi: BirMap) -> Dict[str, object]:
    return {
        "name": phi.label,
        "coords": {v: str(phi.coords[v]) for v in phi.variables},
    }


def serialize_document(
    families,
    maps=(),
    actions: Optional[Mapping[str, Tuple[ParameterAction, ...]]] = None,
) -> Dict[str, object]:
    actions = actions or {}
    return {
        "schema": "enricert-input/1",
        "families": [
            serialize_family(fam, tuple(actions.get(fam.name, ()))) for fam in families
        ],
        "maps": [serialize_map(phi) for phi in maps],
    }
