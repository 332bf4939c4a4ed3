"""Compact text notation for strongly uncertain logs.

    <a,{b,c},[e,f],g,j?>^5 ; <a,b>

``{b,c}`` lists candidate labels, ``[e,f]`` groups events with mutually
overlapping timestamps, a trailing ``?`` marks an indeterminate event and
``^n`` gives the trace multiplicity. Item ``i`` of a trace gets timestamp
``Point(i)``; every member of a bracket group at position ``i`` gets
``Interval(i, i + 0.5)``. Case ids are ``t1, t2, ...`` and event ids
``e1, e2, ...`` in reading order.
"""
from __future__ import annotations

import re
from typing import List, Tuple

from ..errors import ShorthandSyntaxError
from ..event_model import (
    ActivitySpec,
    Indeterminacy,
    Interval,
    Point,
    UncertainEvent,
    UncertainLog,
    UncertainTrace,
)

_LABEL = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_INT = re.compile(r"[0-9]+")
GROUP_WIDTH = 0.5


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def where(self, pos=None) -> Tuple[int, int]:
        pos = self.pos if pos is None else pos
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return line, col

    def error(self, message, pos=None):
        line, col = self.where(pos)
        return ShorthandSyntaxError(message, line, col)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            found = repr(self.peek()) if self.peek() else "end of input"
            raise self.error("expected %r, found %s" % (ch, found))
        self.pos += 1

    def regex(self, pattern, what):
        self.skip_ws()
        m = pattern.match(self.text, self.pos)
        if not m:
            found = repr(self.peek()) if self.peek() else "end of input"
            raise self.error("expected %s, found %s" % (what, found))
        self.pos = m.end()
        return m.group(0)

    def log(self) -> List[Tuple[list, int]]:
        traces = [self.trace()]
        while self.peek() == ";":
            self.pos += 1
            traces.append(self.trace())
        if self.peek():
            raise self.error("unexpected %r" % self.peek())
        return traces

    def trace(self):
        self.expect("<")
        items = [self.item()]
        while self.peek() == ",":
            self.pos += 1
            items.append(self.item())
        self.expect(">")
        weight = 1
        if self.peek() == "^":
            self.pos += 1
            start = self.pos
            weight = int(self.regex(_INT, "a multiplicity"))
            if weight < 1:
                raise self.error("multiplicity must be >= 1", start)
        return items, weight

    def item(self):
        if self.peek() == "[":
            self.pos += 1
            group = [self.elem()]
            while self.peek() == ",":
                self.pos += 1
                group.append(self.elem())
            if len(group) < 2:
                raise self.error("an overlap group needs at least two events")
            self.expect("]")
            return group
        return self.elem()

    def elem(self):
        if self.peek() == "{":
            start = self.pos
            self.pos += 1
            if self.peek() == "}":
                raise self.error("empty activity set")
            labels = [self.regex(_LABEL, "an activity label")]
            while self.peek() == ",":
                self.pos += 1
                labels.append(self.regex(_LABEL, "an activity label"))
            self.expect("}")
            if len(labels) < 2:
                raise self.error("a label set needs at least two labels", start)
            if len(set(labels)) != len(labels):
                raise self.error("repeated label in set", start)
        else:
            labels = [self.regex(_LABEL, "an activity label")]
        indeterminate = False
        if self.peek() == "?":
            self.pos += 1
            indeterminate = True
        return tuple(labels), indeterminate


def parse_shorthand(text: str) -> UncertainLog:
    if not text or not text.strip():
        raise ShorthandSyntaxError("empty input", 1, 1)
    parsed = _Parser(text).log()
    traces = []
    for k, (items, weight) in enumerate(parsed, start=1):
        events = []
        for i, item in enumerate(items, start=1):
            if isinstance(item, list):
                ts = Interval(float(i), i + GROUP_WIDTH)
                members = item
            else:
                ts = Point(float(i))
                members = [item]
            for labels, indeterminate in members:
                events.append(
                    UncertainEvent(
                        "e%d" % (len(events) + 1),
                        ActivitySpec(labels),
                        ts,
                        Indeterminacy(indeterminate),
                    )
                )
        traces.append((UncertainTrace("t%d" % k, events), weight))
    return UncertainLog(traces)


def _render_elem(e: UncertainEvent) -> str:
    if e.activity.probabilities is not None or e.indeterminacy.absence_probability is not None:
        raise ValueError("event %s carries probabilities; shorthand only holds strong uncertainty" % e.id)
    cands = e.activity.candidates
    text = cands[0] if len(cands) == 1 else "{%s}" % ",".join(cands)
    return text + ("?" if e.is_indeterminate else "")


def render_trace(trace: UncertainTrace) -> str:
    """Shorthand for a trace in canonical form (timestamps as produced by the parser)."""
    items = []
    events = list(trace.events)
    if not events:
        raise ValueError("trace %s is empty; shorthand has no empty traces" % trace.case_id)
    i = 0
    pos = 1
    while i < len(events):
        e = events[i]
        if e.timestamp == Point(float(pos)):
            items.append(_render_elem(e))
            i += 1
        elif e.timestamp == Interval(float(pos), pos + GROUP_WIDTH):
            j = i
            while j < len(events) and events[j].timestamp == e.timestamp:
                j += 1
            if j - i < 2:
                raise ValueError("trace %s: single event in an overlap slot" % trace.case_id)
            items.append("[%s]" % ",".join(_render_elem(x) for x in events[i:j]))
            i = j
        else:
            raise ValueError(
                "trace %s: event %s timestamp %r is not in canonical shorthand form" % (trace.case_id, e.id, e.timestamp)
            )
        pos += 1
    return "<%s>" % ",".join(items)


def render_shorthand(log: UncertainLog) -> str:
    parts = []
    for trace, weight in log.traces:
        text = render_trace(trace)
        if weight != 1:
            text += "^%d" % weight
        parts.append(text)
    return "; ".join(parts)
