"""JSON form of reference models::

    {"places": [str], "transitions": [{"id": str, "label": str | null}],
     "arcs": [[str, str]], "initial": {place: int}, "final": {place: int}}
"""
from __future__ import annotations

import json

import jsonschema

from ..errors import SchemaError
from ..petri_net import PetriNet

NET_SCHEMA = {
    "type": "object",
    "properties": {
        "places": {"type": "array", "items": {"type": "string"}},
        "transitions": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {"id": {"type": "string"}, "label": {"type": ["string", "null"]}},
                "required": ["id", "label"],
                "additionalProperties": False,
            },
        },
        "arcs": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "string"}, "minItems": 2, "maxItems": 2},
        },
        "initial": {"type": "object", "additionalProperties": {"type": "integer", "minimum": 0}},
        "final": {"type": "object", "additionalProperties": {"type": "integer", "minimum": 0}},
    },
    "required": ["places", "transitions", "arcs", "initial", "final"],
    "additionalProperties": False,
}

_VALIDATOR = jsonschema.Draft202012Validator(NET_SCHEMA)


def net_from_dict(doc, name: str = "") -> PetriNet:
    error = jsonschema.exceptions.best_match(_VALIDATOR.iter_errors(doc))
    if error is not None:
        raise SchemaError(error.message, error.json_path)
    try:
        return PetriNet(
            doc["places"],
            {t["id"]: t["label"] for t in doc["transitions"]},
            [tuple(a) for a in doc["arcs"]],
            doc["initial"],
            doc["final"],
            name=name,
        )
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def load_net(text: str, name: str = "") -> PetriNet:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("malformed JSON (%s)" % exc.msg) from exc
    return net_from_dict(doc, name)


def net_to_dict(net: PetriNet) -> dict:
    return {
        "places": sorted(net.places),
        "transitions": [{"id": t, "label": net.transitions[t]} for t in sorted(net.transitions)],
        "arcs": [list(a) for a in sorted(net.arcs)],
        "initial": dict(net.initial_marking),
        "final": dict(net.final_marking),
    }


def dump_net(net: PetriNet, indent=2) -> str:
    return json.dumps(net_to_dict(net), indent=indent, ensure_ascii=False)
