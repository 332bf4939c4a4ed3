"""Data model for strongly and weakly uncertain event data.

An event may carry several candidate activity labels (optionally with
probabilities), an imprecise timestamp (point, interval or Gaussian) and an
indeterminacy flag stating that it was recorded but may not have happened.
Construction is permissive: invariants are checked by :func:`validate`, which
reports every breach instead of stopping at the first one.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

PROBABILITY_TOLERANCE = 1e-9
GAUSSIAN_SUPPORT_SIGMAS = 4.0


@dataclass(frozen=True)
class ActivitySpec:
    candidates: Tuple[str, ...]
    probabilities: Optional[Tuple[float, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "candidates", tuple(self.candidates))
        if self.probabilities is not None:
            object.__setattr__(self, "probabilities", tuple(float(p) for p in self.probabilities))

    @classmethod
    def certain(cls, label: str) -> "ActivitySpec":
        return cls((label,))

    @classmethod
    def weighted(cls, probabilities: Mapping[str, float]) -> "ActivitySpec":
        return cls(tuple(probabilities), tuple(probabilities.values()))

    @property
    def is_certain(self) -> bool:
        return len(self.candidates) == 1

    @property
    def is_weak(self) -> bool:
        return self.probabilities is not None

    def probability(self, label: str) -> Optional[float]:
        if self.probabilities is None:
            return None
        return self.probabilities[self.candidates.index(label)]


@dataclass(frozen=True)
class Point:
    value: float

    def support(self) -> "Interval":
        return Interval(self.value, self.value)


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def support(self) -> "Interval":
        return self

    def contains(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi


@dataclass(frozen=True)
class Gaussian:
    mu: float
    sigma: float

    def support(self) -> Interval:
        half = GAUSSIAN_SUPPORT_SIGMAS * self.sigma
        return Interval(self.mu - half, self.mu + half)


TimestampSpec = Union[Point, Interval, Gaussian]


@dataclass(frozen=True)
class Indeterminacy:
    indeterminate: bool = False
    absence_probability: Optional[float] = None


DETERMINATE = Indeterminacy()


@dataclass(frozen=True)
class UncertainEvent:
    id: str
    activity: ActivitySpec
    timestamp: TimestampSpec
    indeterminacy: Indeterminacy = DETERMINATE

    @property
    def is_indeterminate(self) -> bool:
        return self.indeterminacy.indeterminate

    @property
    def is_certain(self) -> bool:
        return (
            self.activity.is_certain
            and isinstance(self.timestamp, Point)
            and not self.indeterminacy.indeterminate
        )


@dataclass(frozen=True)
class UncertainTrace:
    case_id: str
    events: Tuple[UncertainEvent, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "events", tuple(self.events))

    def __len__(self) -> int:
        return len(self.events)

    def __iter__(self) -> Iterator[UncertainEvent]:
        return iter(self.events)

    def event(self, event_id: str) -> UncertainEvent:
        for e in self.events:
            if e.id == event_id:
                return e
        raise KeyError(event_id)

    @property
    def is_certain(self) -> bool:
        return all(e.is_certain for e in self.events)

    def content_key(self) -> tuple:
        """Hashable key of everything but the case id (used to group equal traces)."""
        return self.events


@dataclass(frozen=True)
class UncertainLog:
    traces: Tuple[Tuple[UncertainTrace, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "traces", tuple((t, w) for t, w in self.traces))

    def __len__(self) -> int:
        return len(self.traces)

    def __iter__(self) -> Iterator[Tuple[UncertainTrace, int]]:
        return iter(self.traces)

    def trace(self, case_id: str) -> UncertainTrace:
        for t, _ in self.traces:
            if t.case_id == case_id:
                return t
        raise KeyError(case_id)

    @property
    def activities(self) -> List[str]:
        seen: Dict[str, None] = {}
        for t, _ in self.traces:
            for e in t.events:
                for a in e.activity.candidates:
                    seen.setdefault(a, None)
        return sorted(seen)


def support(ts: TimestampSpec) -> Interval:
    """Closed interval of values the timestamp can take, for ordering purposes.

    Gaussian timestamps are truncated to mu +/- 4 sigma.
    """
    return ts.support()


def strictly_precedes(e: UncertainEvent, f: UncertainEvent) -> bool:
    # touching or overlapping supports leave the order open
    return support(e.timestamp).hi < support(f.timestamp).lo


@dataclass(frozen=True)
class Violation:
    case_id: Optional[str]
    event_id: Optional[str]
    rule: str
    message: str = field(default="", compare=False)

    def __str__(self):
        where = "trace %r" % self.case_id
        if self.event_id is not None:
            where += ", event %r" % self.event_id
        text = "%s: %s" % (where, self.rule)
        return text + (" (%s)" % self.message if self.message else "")


def _finite(x) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool) and math.isfinite(x)


def _event_violations(case_id: str, e: UncertainEvent) -> List[Violation]:
    out = []

    def bad(rule, msg=""):
        out.append(Violation(case_id, e.id, rule, msg))

    act = e.activity
    if not act.candidates:
        bad("empty-candidates")
    if len(set(act.candidates)) != len(act.candidates):
        bad("duplicate-label", ", ".join(act.candidates))
    if any(not isinstance(a, str) or not a for a in act.candidates):
        bad("label-type")
    if act.probabilities is not None:
        probs = act.probabilities
        if len(probs) != len(act.candidates):
            bad("probabilities-keys")
        elif any(not _finite(p) or not 0.0 < p <= 1.0 for p in probs):
            bad("probabilities-range", repr(probs))
        elif abs(math.fsum(probs) - 1.0) > PROBABILITY_TOLERANCE:
            bad("probabilities-sum", "sum=%r" % math.fsum(probs))

    ts = e.timestamp
    if isinstance(ts, Point):
        if not _finite(ts.value):
            bad("timestamp-value")
    elif isinstance(ts, Interval):
        if not (_finite(ts.lo) and _finite(ts.hi)):
            bad("timestamp-value")
        elif ts.lo > ts.hi:
            bad("interval-order", "lo=%r > hi=%r" % (ts.lo, ts.hi))
    elif isinstance(ts, Gaussian):
        if not (_finite(ts.mu) and _finite(ts.sigma)):
            bad("timestamp-value")
        elif ts.sigma <= 0:
            bad("gaussian-sigma", "sigma=%r" % ts.sigma)
    else:
        bad("timestamp-type", type(ts).__name__)

    ind = e.indeterminacy
    if ind.absence_probability is not None:
        if not ind.indeterminate:
            bad("absence-without-indeterminate")
        p = ind.absence_probability
        if not _finite(p) or not 0.0 < p < 1.0:
            bad("absence-range", repr(p))
    return out


def validate_trace(trace: UncertainTrace) -> List[Violation]:
    out = []
    seen = set()
    for e in trace.events:
        if e.id in seen:
            out.append(Violation(trace.case_id, e.id, "duplicate-id"))
        seen.add(e.id)
        out.extend(_event_violations(trace.case_id, e))
    return out


def validate(log: UncertainLog) -> List[Violation]:
    """Return every invariant breach in ``log``; an empty list means valid."""
    out = []
    for trace, weight in log.traces:
        if isinstance(weight, bool) or not isinstance(weight, int) or weight < 1:
            out.append(Violation(trace.case_id, None, "weight", repr(weight)))
        out.extend(validate_trace(trace))
    return out


def make_event(
    event_id: str,
    activity: Union[str, Sequence[str], Mapping[str, float], ActivitySpec],
    timestamp: Union[float, Tuple[float, float], TimestampSpec],
    indeterminate: bool = False,
    absence_probability: Optional[float] = None,
) -> UncertainEvent:
    """Shortcut constructor used by fixtures, tests and the injection module.

    ``activity`` may be a label, a sequence of labels or a label->probability
    mapping; ``timestamp`` a number, a ``(lo, hi)`` pair or a spec object.
    """
    if isinstance(activity, ActivitySpec):
        spec = activity
    elif isinstance(activity, str):
        spec = ActivitySpec.certain(activity)
    elif isinstance(activity, Mapping):
        spec = ActivitySpec.weighted(activity)
    else:
        spec = ActivitySpec(tuple(activity))

    if isinstance(timestamp, (Point, Interval, Gaussian)):
        ts = timestamp
    elif isinstance(timestamp, tuple):
        ts = Interval(float(timestamp[0]), float(timestamp[1]))
    else:
        ts = Point(float(timestamp))

    if absence_probability is not None:
        indeterminate = True
    return UncertainEvent(event_id, spec, ts, Indeterminacy(indeterminate, absence_probability))
