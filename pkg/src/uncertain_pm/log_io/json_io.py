"""JSON serialization of uncertain logs.

Layout::

    {"traces": [{"case_id": str, "weight": int, "events": [
        {"id": str,
         "activities": [{"label": str, "p": number | null}],
         "timestamp": {"type": "point", "value": num}
                    | {"type": "interval", "lo": num, "hi": num}
                    | {"type": "gaussian", "mu": num, "sigma": num},
         "indeterminate": bool,
         "absence_p": number | null}]}]}
"""
from __future__ import annotations

import json
from typing import Any, Dict

import jsonschema

from ..errors import SchemaError
from ..event_model import (
    ActivitySpec,
    Gaussian,
    Indeterminacy,
    Interval,
    Point,
    UncertainEvent,
    UncertainLog,
    UncertainTrace,
)

_NUM = {"type": "number"}
_TIMESTAMP = {
    "oneOf": [
        {
            "type": "object",
            "properties": {"type": {"const": "point"}, "value": _NUM},
            "required": ["type", "value"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {"type": {"const": "interval"}, "lo": _NUM, "hi": _NUM},
            "required": ["type", "lo", "hi"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {"type": {"const": "gaussian"}, "mu": _NUM, "sigma": _NUM},
            "required": ["type", "mu", "sigma"],
            "additionalProperties": False,
        },
    ]
}

LOG_SCHEMA: Dict[str, Any] = {
    "type": "object",
    "properties": {
        "traces": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "case_id": {"type": "string"},
                    "weight": {"type": "integer"},
                    "events": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "properties": {
                                "id": {"type": "string"},
                                "activities": {
                                    "type": "array",
                                    "items": {
                                        "type": "object",
                                        "properties": {
                                            "label": {"type": "string"},
                                            "p": {"type": ["number", "null"]},
                                        },
                                        "required": ["label", "p"],
                                        "additionalProperties": False,
                                    },
                                },
                                "timestamp": _TIMESTAMP,
                                "indeterminate": {"type": "boolean"},
                                "absence_p": {"type": ["number", "null"]},
                            },
                            "required": ["id", "activities", "timestamp", "indeterminate", "absence_p"],
                            "additionalProperties": False,
                        },
                    },
                },
                "required": ["case_id", "weight", "events"],
                "additionalProperties": False,
            },
        }
    },
    "required": ["traces"],
    "additionalProperties": False,
}

_VALIDATOR = jsonschema.Draft202012Validator(LOG_SCHEMA)


def _timestamp_to_dict(ts) -> dict:
    if isinstance(ts, Point):
        return {"type": "point", "value": float(ts.value)}
    if isinstance(ts, Interval):
        return {"type": "interval", "lo": float(ts.lo), "hi": float(ts.hi)}
    if isinstance(ts, Gaussian):
        return {"type": "gaussian", "mu": float(ts.mu), "sigma": float(ts.sigma)}
    raise TypeError("unknown timestamp type %r" % type(ts).__name__)


def _event_to_dict(e: UncertainEvent) -> dict:
    probs = e.activity.probabilities
    return {
        "id": e.id,
        "activities": [
            {"label": label, "p": None if probs is None else probs[i]}
            for i, label in enumerate(e.activity.candidates)
        ],
        "timestamp": _timestamp_to_dict(e.timestamp),
        "indeterminate": bool(e.indeterminacy.indeterminate),
        "absence_p": e.indeterminacy.absence_probability,
    }


def log_to_dict(log: UncertainLog) -> dict:
    return {
        "traces": [
            {"case_id": t.case_id, "weight": w, "events": [_event_to_dict(e) for e in t.events]}
            for t, w in log.traces
        ]
    }


def to_json(log: UncertainLog, indent=None) -> str:
    separators = (",", ":") if indent is None else (",", ": ")
    return json.dumps(log_to_dict(log), indent=indent, separators=separators, ensure_ascii=False)


def _timestamp_from_dict(d: dict):
    kind = d["type"]
    if kind == "point":
        return Point(float(d["value"]))
    if kind == "interval":
        return Interval(float(d["lo"]), float(d["hi"]))
    return Gaussian(float(d["mu"]), float(d["sigma"]))


def log_from_dict(doc: Any) -> UncertainLog:
    error = jsonschema.exceptions.best_match(_VALIDATOR.iter_errors(doc))
    if error is not None:
        raise SchemaError(error.message, error.json_path)
    traces = []
    for ti, td in enumerate(doc["traces"]):
        events = []
        for ei, ed in enumerate(td["events"]):
            path = "$.traces[%d].events[%d].activities" % (ti, ei)
            acts = ed["activities"]
            if not acts:
                raise SchemaError("at least one activity is required", path)
            ps = [a["p"] for a in acts]
            if all(p is None for p in ps):
                probs = None
            elif any(p is None for p in ps):
                raise SchemaError("either every activity carries a probability or none does", path)
            else:
                probs = tuple(float(p) for p in ps)
            absence = ed["absence_p"]
            events.append(
                UncertainEvent(
                    ed["id"],
                    ActivitySpec(tuple(a["label"] for a in acts), probs),
                    _timestamp_from_dict(ed["timestamp"]),
                    Indeterminacy(ed["indeterminate"], None if absence is None else float(absence)),
                )
            )
        traces.append((UncertainTrace(td["case_id"], events), td["weight"]))
    return UncertainLog(traces)


def from_json(text: str) -> UncertainLog:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("malformed JSON (%s)" % exc.msg, "$") from exc
    return log_from_dict(doc)
