"""XES import/export.

Certain attributes use the standard ``concept:name``, ``time:timestamp`` and
``identity:id`` keys. Uncertainty is carried by this package's own keys:

``uncertainty:label``          container whose children are keyed by label;
                               ``float`` children give probabilities
``uncertainty:time_lo/_hi``    dates bounding an interval timestamp
``uncertainty:time_mu/_sigma`` floats (seconds) of a Gaussian timestamp
``uncertainty:indeterminate``  boolean
``uncertainty:absence_p``      float
``uncertainty:weight``         int, trace multiplicity

Timestamps become seconds since the Unix epoch.
"""
from __future__ import annotations

import xml.etree.ElementTree as ET
from datetime import datetime, timezone
from typing import Dict, List, Optional

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

XES_NS = "http://www.xes-standard.org/"
NAME = "concept:name"
TIME = "time:timestamp"
ID = "identity:id"
U_LABEL = "uncertainty:label"
U_LO = "uncertainty:time_lo"
U_HI = "uncertainty:time_hi"
U_MU = "uncertainty:time_mu"
U_SIGMA = "uncertainty:time_sigma"
U_INDET = "uncertainty:indeterminate"
U_ABSENCE = "uncertainty:absence_p"
U_WEIGHT = "uncertainty:weight"


def _tag(el) -> str:
    return el.tag.rsplit("}", 1)[-1]


def parse_date(value: str) -> float:
    text = value.strip()
    if text.endswith("Z"):
        text = text[:-1] + "+00:00"
    try:
        dt = datetime.fromisoformat(text)
    except ValueError as exc:
        raise SchemaError("bad date %r" % value) from exc
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return dt.timestamp()


def format_date(seconds: float) -> str:
    return datetime.fromtimestamp(seconds, tz=timezone.utc).isoformat(timespec="microseconds")


def _attributes(el) -> Dict[str, ET.Element]:
    return {child.get("key"): child for child in el if child.get("key") is not None}


def _float(el, path) -> float:
    try:
        return float(el.get("value"))
    except (TypeError, ValueError):
        raise SchemaError("expected a number in %r" % el.get("key"), path) from None


def _label_spec(container, path) -> ActivitySpec:
    labels: List[str] = []
    probs: List[Optional[float]] = []
    for child in container.iter():
        if child is container or child.get("key") is None:
            continue
        labels.append(child.get("key"))
        probs.append(_float(child, path) if _tag(child) == "float" else None)
    if not labels:
        raise SchemaError("uncertainty:label lists no labels", path)
    if all(p is None for p in probs):
        return ActivitySpec(tuple(labels))
    if any(p is None for p in probs):
        raise SchemaError("uncertainty:label mixes labels with and without probabilities", path)
    return ActivitySpec(tuple(labels), tuple(probs))


def _event(el, index: int, path: str) -> UncertainEvent:
    attrs = _attributes(el)
    if NAME not in attrs and U_LABEL not in attrs:
        raise SchemaError("event has no concept:name", path)
    event_id = attrs[ID].get("value") if ID in attrs else "e%d" % index

    activity = _label_spec(attrs[U_LABEL], path) if U_LABEL in attrs else ActivitySpec.certain(attrs[NAME].get("value"))

    if U_MU in attrs and U_SIGMA in attrs:
        ts = Gaussian(_float(attrs[U_MU], path), _float(attrs[U_SIGMA], path))
    elif U_LO in attrs and U_HI in attrs:
        ts = Interval(parse_date(attrs[U_LO].get("value")), parse_date(attrs[U_HI].get("value")))
    elif TIME in attrs:
        ts = Point(parse_date(attrs[TIME].get("value")))
    else:
        raise SchemaError("event has no time:timestamp", path)

    indeterminate = U_INDET in attrs and attrs[U_INDET].get("value", "").strip().lower() == "true"
    absence = _float(attrs[U_ABSENCE], path) if U_ABSENCE in attrs else None
    if absence is not None:
        indeterminate = True
    return UncertainEvent(event_id, activity, ts, Indeterminacy(indeterminate, absence))


def import_xes(text: str) -> UncertainLog:
    try:
        root = ET.fromstring(text)
    except ET.ParseError as exc:
        raise SchemaError("malformed XML (%s)" % exc) from exc
    if _tag(root) != "log":
        raise SchemaError("root element is <%s>, expected <log>" % _tag(root))
    traces = []
    for k, tel in enumerate((c for c in root if _tag(c) == "trace"), start=1):
        attrs = _attributes(tel)
        case_id = attrs[NAME].get("value") if NAME in attrs else "t%d" % k
        weight = int(attrs[U_WEIGHT].get("value")) if U_WEIGHT in attrs else 1
        events = []
        for j, eel in enumerate((c for c in tel if _tag(c) == "event"), start=1):
            events.append(_event(eel, j, "$.trace[%d].event[%d]" % (k, j)))
        traces.append((UncertainTrace(case_id, events), weight))
    return UncertainLog(traces)


def _attr(parent, kind: str, key: str, value) -> ET.Element:
    return ET.SubElement(parent, kind, {"key": key, "value": value})


def export_xes(log: UncertainLog) -> str:
    root = ET.Element("log", {"xes.version": "1.0", "xmlns": XES_NS})
    for name, prefix in (("Concept", "concept"), ("Time", "time"), ("Identity", "identity")):
        ET.SubElement(root, "extension", {"name": name, "prefix": prefix, "uri": "%s%s.xesext" % (XES_NS, prefix)})
    for trace, weight in log.traces:
        tel = ET.SubElement(root, "trace")
        _attr(tel, "string", NAME, trace.case_id)
        if weight != 1:
            _attr(tel, "int", U_WEIGHT, str(weight))
        for e in trace.events:
            eel = ET.SubElement(tel, "event")
            _attr(eel, "string", ID, e.id)
            _attr(eel, "string", NAME, e.activity.candidates[0])
            act = e.activity
            if len(act.candidates) > 1 or act.probabilities is not None:
                lst = ET.SubElement(eel, "list", {"key": U_LABEL})
                values = ET.SubElement(lst, "values")
                for i, label in enumerate(act.candidates):
                    if act.probabilities is None:
                        _attr(values, "string", label, label)
                    else:
                        _attr(values, "float", label, repr(act.probabilities[i]))
            ts = e.timestamp
            if isinstance(ts, Point):
                _attr(eel, "date", TIME, format_date(ts.value))
            elif isinstance(ts, Interval):
                _attr(eel, "date", TIME, format_date(ts.lo))
                _attr(eel, "date", U_LO, format_date(ts.lo))
                _attr(eel, "date", U_HI, format_date(ts.hi))
            else:
                _attr(eel, "date", TIME, format_date(ts.mu))
                _attr(eel, "float", U_MU, repr(float(ts.mu)))
                _attr(eel, "float", U_SIGMA, repr(float(ts.sigma)))
            if e.is_indeterminate:
                _attr(eel, "boolean", U_INDET, "true")
            if e.indeterminacy.absence_probability is not None:
                _attr(eel, "float", U_ABSENCE, repr(e.indeterminacy.absence_probability))
    ET.indent(root)
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(root, encoding="unicode") + "\n"
