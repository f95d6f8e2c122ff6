"""Structure files: canonical JSON documents for the four structure
kinds (semigroupoid, poset, action, triple) plus load/save helpers.

Serialization is canonical: sorted keys, entities listed in index order,
references by unique name.  parse(serialize(x)) == x on validated
structures.
"""
from __future__ import annotations

import json
from typing import Any

from .actions import PartialActionData, make_action
from .core import FiniteSemigroupoid, semigroupoid_triples, validate_semigroupoid
from .errors import ParseError
from .inverse import InverseSemigroupoid, promote_to_inverse
from .posets import FinitePoset, validate_poset
from .ptheorem import McAlisterTriple, validate_mcalister_triple

FORMAT_VERSION = 1


def _require(doc: Any, key: str):
    if not isinstance(doc, dict) or key not in doc:
        raise ParseError(f"missing field {key!r}")
    return doc[key]


def _unique_names(names, what: str) -> dict[str, int]:
    index = {}
    for i, name in enumerate(names):
        if not isinstance(name, str):
            raise ParseError(f"{what} name {name!r} is not a string")
        if name in index:
            raise ParseError(f"duplicate {what} name {name!r}")
        index[name] = i
    return index


# ------------------------------------------------------------ semigroupoid

def semigroupoid_to_doc(sg: FiniteSemigroupoid) -> dict:
    return {
        "kind": "semigroupoid",
        "version": FORMAT_VERSION,
        "objects": list(sg.object_names),
        "arrows": [
            {
                "name": sg.arrow_names[s],
                "dom": sg.object_names[sg.dom[s]],
                "cod": sg.object_names[sg.cod[s]],
            }
            for s in sg.arrows()
        ],
        "mul": [list(t) for t in semigroupoid_triples(sg)],
    }


def semigroupoid_from_doc(doc: dict) -> FiniteSemigroupoid:
    objects = _require(doc, "objects")
    arrows = _require(doc, "arrows")
    mul = _require(doc, "mul")
    obj_index = _unique_names(objects, "object")
    names = []
    dom = []
    cod = []
    for entry in arrows:
        names.append(_require(entry, "name"))
        d = _require(entry, "dom")
        c = _require(entry, "cod")
        if d not in obj_index or c not in obj_index:
            raise ParseError(f"unknown object in arrow {entry!r}")
        dom.append(obj_index[d])
        cod.append(obj_index[c])
    _unique_names(names, "arrow")
    triples = []
    for t in mul:
        if not (isinstance(t, list) and len(t) == 3):
            raise ParseError(f"bad product triple {t!r}")
        triples.append(tuple(t))
    return validate_semigroupoid(
        dom,
        cod,
        triples,
        n_objects=len(objects),
        arrow_names=names,
        object_names=objects,
    )


# ------------------------------------------------------------------- poset

def poset_to_doc(poset: FinitePoset) -> dict:
    return {
        "kind": "poset",
        "version": FORMAT_VERSION,
        "elements": list(poset.names),
        "leq": [
            [poset.names[x], poset.names[y]]
            for x in poset.elements()
            for y in poset.elements()
            if poset.leq[x][y]
        ],
    }


def poset_from_doc(doc: dict) -> FinitePoset:
    elements = _require(doc, "elements")
    index = _unique_names(elements, "element")
    pairs = []
    for pair in _require(doc, "leq"):
        if not (isinstance(pair, list) and len(pair) == 2):
            raise ParseError(f"bad order pair {pair!r}")
        x, y = pair
        if x not in index or y not in index:
            raise ParseError(f"unknown element in pair {pair!r}")
        pairs.append((index[x], index[y]))
    return validate_poset(
        pairs, len(elements), names=elements, auto_close=bool(doc.get("auto_close"))
    )


# ------------------------------------------------------------------ action

def action_to_doc(a: PartialActionData) -> dict:
    sg = a.actor.base
    doc = {
        "kind": "action",
        "version": FORMAT_VERSION,
        "actor": semigroupoid_to_doc(sg),
        "carrier": list(a.carrier_names),
        "domains": {
            sg.arrow_names[s]: sorted(a.carrier_names[x] for x in a.domains[s])
            for s in a.actor.arrows()
        },
        "maps": {
            sg.arrow_names[s]: [
                [a.carrier_names[x], a.carrier_names[y]]
                for x, y in sorted(a.maps[s].items())
            ]
            for s in a.actor.arrows()
        },
        "global": a.global_flag,
    }
    if a.order is not None:
        doc["order"] = [
            [a.carrier_names[x], a.carrier_names[y]]
            for x in a.order.elements()
            for y in a.order.elements()
            if a.order.leq[x][y]
        ]
    return doc


def action_from_doc(doc: dict) -> PartialActionData:
    actor = promote_to_inverse(semigroupoid_from_doc(_require(doc, "actor")))
    carrier = _require(doc, "carrier")
    carrier_index = _unique_names(carrier, "carrier point")
    arrow_index = _unique_names(actor.base.arrow_names, "arrow")

    raw_domains = _require(doc, "domains")
    raw_maps = _require(doc, "maps")
    domains = [frozenset() for _ in actor.arrows()]
    maps: list[dict[int, int]] = [dict() for _ in actor.arrows()]
    for name, pts in raw_domains.items():
        if name not in arrow_index:
            raise ParseError(f"unknown arrow {name!r} in domains")
        try:
            domains[arrow_index[name]] = frozenset(carrier_index[p] for p in pts)
        except KeyError as exc:
            raise ParseError(f"unknown carrier point {exc.args[0]!r}") from exc
    for name, pairs in raw_maps.items():
        if name not in arrow_index:
            raise ParseError(f"unknown arrow {name!r} in maps")
        m = {}
        for pair in pairs:
            if not (isinstance(pair, list) and len(pair) == 2):
                raise ParseError(f"bad map pair {pair!r}")
            x, y = pair
            if x not in carrier_index or y not in carrier_index:
                raise ParseError(f"unknown carrier point in {pair!r}")
            m[carrier_index[x]] = carrier_index[y]
        maps[arrow_index[name]] = m

    order = None
    if "order" in doc:
        pairs = []
        for pair in doc["order"]:
            if not (isinstance(pair, list) and len(pair) == 2):
                raise ParseError(f"bad order pair {pair!r}")
            x, y = pair
            if x not in carrier_index or y not in carrier_index:
                raise ParseError(f"unknown carrier point in {pair!r}")
            pairs.append((carrier_index[x], carrier_index[y]))
        order = validate_poset(pairs, len(carrier), names=carrier)

    from .errors import ValidationError

    try:
        return make_action(
            actor,
            carrier,
            domains,
            maps,
            order=order,
            global_flag=bool(doc.get("global")),
        )
    except ValidationError as exc:
        raise ParseError(f"malformed action: {exc}") from exc


# ------------------------------------------------------------------ triple

def triple_to_doc(t: McAlisterTriple) -> dict:
    return {
        "kind": "triple",
        "version": FORMAT_VERSION,
        "groupoid": semigroupoid_to_doc(t.groupoid.base),
        "space": poset_to_doc(t.space),
        "ideal": sorted(t.space.names[x] for x in t.ideal),
        "action": action_to_doc(t.action),
    }


def triple_from_doc(doc: dict) -> McAlisterTriple:
    groupoid = promote_to_inverse(semigroupoid_from_doc(_require(doc, "groupoid")))
    space = poset_from_doc(_require(doc, "space"))
    action = action_from_doc(_require(doc, "action"))
    index = {name: i for i, name in enumerate(space.names)}
    ideal = set()
    for name in _require(doc, "ideal"):
        if name not in index:
            raise ParseError(f"unknown space element {name!r}")
        ideal.add(index[name])
    triple = McAlisterTriple(
        groupoid=groupoid, space=space, ideal=frozenset(ideal), action=action
    )
    return validate_mcalister_triple(triple)


# -------------------------------------------------------------- dispatching

_TO_DOC = {
    "semigroupoid": semigroupoid_to_doc,
    "poset": poset_to_doc,
    "action": action_to_doc,
    "triple": triple_to_doc,
}

_FROM_DOC = {
    "semigroupoid": semigroupoid_from_doc,
    "poset": poset_from_doc,
    "action": action_from_doc,
    "triple": triple_from_doc,
}


def structure_to_doc(obj) -> dict:
    if isinstance(obj, InverseSemigroupoid):
        return semigroupoid_to_doc(obj.base)
    if isinstance(obj, FiniteSemigroupoid):
        return semigroupoid_to_doc(obj)
    if isinstance(obj, FinitePoset):
        return poset_to_doc(obj)
    if isinstance(obj, PartialActionData):
        return action_to_doc(obj)
    if isinstance(obj, McAlisterTriple):
        return triple_to_doc(obj)
    raise TypeError(f"no document form for {type(obj)!r}")


def parse_document(doc: Any):
    if not isinstance(doc, dict):
        raise ParseError("document is not an object")
    kind = _require(doc, "kind")
    if kind not in _FROM_DOC:
        raise ParseError(f"unknown kind {kind!r}")
    return _FROM_DOC[kind](doc)


def canonical_dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def load_structure(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in {path}: {exc}") from exc
    return parse_document(doc)


def save_structure(obj, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(canonical_dumps(structure_to_doc(obj)))
