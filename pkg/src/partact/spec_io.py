"""Reading and writing the JSON documents used by the command line."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import jsonschema

from .errors import SpecError, UnresolvedLabelError
from .globalization import Globalization, GlobalAction, make_global_action
from .group import Group, build_cyclic_group, build_group_from_cayley
from .partial import PartialAction, make_partial_action

SPEC_SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": ["group", "set"],
    "additionalProperties": False,
    "properties": {
        "group": {
            "type": "object",
            "required": ["kind"],
            "properties": {"kind": {"enum": ["cyclic", "cayley"]}},
            "allOf": [
                {
                    "if": {"properties": {"kind": {"const": "cyclic"}}},
                    "then": {
                        "required": ["order"],
                        "additionalProperties": False,
                        "properties": {
                            "kind": {},
                            "order": {"type": "integer", "minimum": 1},
                        },
                    },
                },
                {
                    "if": {"properties": {"kind": {"const": "cayley"}}},
                    "then": {
                        "required": ["elements", "table"],
                        "additionalProperties": False,
                        "properties": {
                            "kind": {},
                            "elements": {"type": "array", "items": {"type": "string"}, "minItems": 1},
                            "table": {
                                "type": "array",
                                "items": {"type": "array", "items": {"type": "integer"}},
                            },
                        },
                    },
                },
            ],
        },
        "set": {"type": "array", "items": {"type": "string"}, "uniqueItems": True},
        "domains": {
            "type": "object",
            "additionalProperties": {"type": "array", "items": {"type": "string"}},
        },
        "maps": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "additionalProperties": {"type": "string"},
            },
        },
    },
}

GLOBAL_SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": ["elements", "embedding", "perms"],
    "properties": {
        "elements": {"type": "array", "items": {"type": "string"}, "uniqueItems": True},
        "embedding": {"type": "object", "additionalProperties": {"type": "string"}},
        "perms": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "additionalProperties": {"type": "string"},
            },
        },
        "orbits": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "string"}},
        },
    },
}


def pointer(*parts: object) -> str:
    return "".join("/" + str(p).replace("~", "~0").replace("/", "~1") for p in parts)


def _read_json(path: str | Path, schema: dict) -> Any:
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"invalid JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})") from None
    try:
        jsonschema.validate(doc, schema)
    except jsonschema.ValidationError as exc:
        raise SpecError(exc.message, pointer(*exc.absolute_path)) from None
    return doc


def _group_from(doc: dict) -> Group:
    spec = doc["group"]
    if spec["kind"] == "cyclic":
        return build_cyclic_group(spec["order"])
    return build_group_from_cayley(spec["elements"], spec["table"])


def parse_spec_document(doc: dict) -> tuple[Group, PartialAction]:
    """Resolve labels in an already-loaded document. The action is not validated here."""
    try:
        jsonschema.validate(doc, SPEC_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise SpecError(exc.message, pointer(*exc.absolute_path)) from None
    G = _group_from(doc)
    labels = doc["set"]
    xi = {lab: i for i, lab in enumerate(labels)}
    raw_domains = doc.get("domains", {})
    raw_maps = doc.get("maps", {})

    def gindex(label: str, where: str) -> int:
        try:
            return G.index(label)
        except KeyError:
            raise UnresolvedLabelError(label, pointer(where, label)) from None

    def xindex(label: str, *where: object) -> int:
        if label not in xi:
            raise UnresolvedLabelError(label, pointer(*where))
        return xi[label]

    domains = {}
    for glab, members in raw_domains.items():
        g = gindex(glab, "domains")
        domains[g] = [xindex(x, "domains", glab, i) for i, x in enumerate(members)]
    maps = {}
    for glab, table in raw_maps.items():
        g = gindex(glab, "maps")
        maps[g] = [(xindex(s, "maps", glab), xindex(t, "maps", glab, s)) for s, t in table.items()]

    identity = G.label(0)
    dkeys = {k for k, v in raw_domains.items() if v and k != identity}
    mkeys = {k for k, v in raw_maps.items() if v and k != identity}
    if dkeys != mkeys:
        k = sorted(dkeys ^ mkeys)[0]
        side = "maps" if k in dkeys else "domains"
        raise SpecError(f"group element {k!r} has a non-empty entry in only one of domains/maps", pointer(side, k))
    return G, make_partial_action(G, labels, domains, maps)


def parse_spec(path: str | Path) -> tuple[Group, PartialAction]:
    return parse_spec_document(_read_json(path, SPEC_SCHEMA))


def global_to_dict(A: PartialAction, glob: Globalization) -> dict:
    B = glob.action
    lab = B.carrier.labels
    return {
        "elements": list(lab),
        "embedding": {A.xlabel(x): lab[t] for x, t in enumerate(glob.embedding)},
        "perms": {
            B.group.label(g): {lab[t]: lab[p[t]] for t in range(len(lab))}
            for g, p in enumerate(B.perms)
        },
        "orbits": [[lab[t] for t in o] for o in B.orbit_decomposition],
    }


def global_from_dict(doc: dict, A: PartialAction) -> Globalization:
    """Rebuild a globalization of ``A`` from its JSON form."""
    try:
        jsonschema.validate(doc, GLOBAL_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise SpecError(exc.message, pointer(*exc.absolute_path)) from None
    G = A.group
    elements = doc["elements"]
    ti = {lab: i for i, lab in enumerate(elements)}

    def tindex(label: str, *where: object) -> int:
        if label not in ti:
            raise UnresolvedLabelError(label, pointer(*where))
        return ti[label]

    emb = []
    for x in A.carrier.labels:
        if x not in doc["embedding"]:
            raise SpecError(f"carrier element {x!r} has no image", pointer("embedding"))
        emb.append(tindex(doc["embedding"][x], "embedding", x))
    for x in doc["embedding"]:
        if x not in A.carrier.labels:
            raise UnresolvedLabelError(x, pointer("embedding", x))

    perms = []
    for g in range(G.order):
        glab = G.label(g)
        if glab not in doc["perms"]:
            raise SpecError(f"missing permutation for {glab!r}", pointer("perms"))
        table = doc["perms"][glab]
        row = []
        for t in elements:
            if t not in table:
                raise SpecError(f"beta_{glab} has no image for {t!r}", pointer("perms", glab))
            row.append(tindex(table[t], "perms", glab, t))
        perms.append(row)
    for glab in doc["perms"]:
        if glab not in G.elements:
            raise UnresolvedLabelError(glab, pointer("perms", glab))

    orbits = None
    if "orbits" in doc:
        orbits = [[tindex(t, "orbits", i, j) for j, t in enumerate(o)] for i, o in enumerate(doc["orbits"])]
    B: GlobalAction = make_global_action(G, elements, perms, orbits)
    return Globalization(B, tuple(emb), ())


def load_global(path: str | Path, A: PartialAction) -> Globalization:
    return global_from_dict(_read_json(path, GLOBAL_SCHEMA), A)
