"""Synthetic uncertainty for certain logs.

Three generators mirror common sources of uncertain data: coarse
timestamps, ambiguous activity labels and events that may not have
happened. Every random decision for an event is drawn from its own
generator, derived from the seed, the case id and the event id, so results
do not depend on the order of traces in the log.
"""
from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field, replace
from typing import Dict, FrozenSet, Mapping, Optional

import numpy as np

from .event_model import ActivitySpec, Indeterminacy, Interval, Point, UncertainLog, UncertainTrace

KEEP_PROBABILITY = 0.9
MAX_ABSENCE_PROBABILITY = 0.5


def _event_rng(seed: int, case_id: str, event_id: str, purpose: str) -> np.random.Generator:
    digest = hashlib.sha256("\x00".join((case_id, event_id, purpose)).encode("utf-8")).digest()
    words = [int.from_bytes(digest[i:i + 4], "little") for i in range(0, 16, 4)]
    return np.random.default_rng(np.random.SeedSequence([seed & 0xFFFFFFFF, *words]))


def _map_events(log: UncertainLog, fn) -> UncertainLog:
    traces = []
    for trace, weight in log.traces:
        events = [fn(trace, e) for e in trace.events]
        traces.append((UncertainTrace(trace.case_id, events), weight))
    return UncertainLog(traces)


def coarsen_timestamps(log: UncertainLog, granularity: float, seed: int = 0) -> UncertainLog:
    """Replace each point timestamp by the bucket ``[k*g, (k+1)*g)`` containing it.

    ``seed`` is accepted for a uniform signature; the operation is deterministic.
    """
    if not granularity > 0:
        raise ValueError("granularity must be > 0")

    def coarsen(trace, e):
        if not isinstance(e.timestamp, Point):
            raise ValueError("event %s of trace %s already has an uncertain timestamp" % (e.id, trace.case_id))
        lo = math.floor(e.timestamp.value / granularity) * granularity
        return replace(e, timestamp=Interval(lo, lo + granularity))

    return _map_events(log, coarsen)


def ambiguate_labels(
    log: UncertainLog,
    confusion: Mapping[str, object],
    p_label: float,
    weak: bool = False,
    seed: int = 0,
) -> UncertainLog:
    """With probability ``p_label`` widen a confusable label to ``{original} | confusion[label]``.

    In weak mode the original label keeps probability 0.9 and the remaining
    0.1 is split evenly among the alternatives.
    """
    if not 0.0 <= p_label <= 1.0:
        raise ValueError("p_label must lie in [0, 1]")

    def ambiguate(trace, e):
        if not e.activity.is_certain:
            return e
        original = e.activity.candidates[0]
        alternatives = sorted(set(confusion.get(original, ())) - {original})
        if not alternatives:
            return e
        rng = _event_rng(seed, trace.case_id, e.id, "label")
        if rng.random() >= p_label:
            return e
        labels = (original,) + tuple(alternatives)
        probs = None
        if weak:
            share = round((1.0 - KEEP_PROBABILITY) / len(alternatives), 12)
            probs = (KEEP_PROBABILITY,) + (share,) * len(alternatives)
        return replace(e, activity=ActivitySpec(labels, probs))

    return _map_events(log, ambiguate)


def inject_indeterminacy(log: UncertainLog, p_indeterminate: float, weak: bool = False, seed: int = 0) -> UncertainLog:
    """Mark each event indeterminate with probability ``p_indeterminate``.

    In weak mode the absence probability is drawn uniformly from (0, 0.5].
    """
    if not 0.0 <= p_indeterminate <= 1.0:
        raise ValueError("p_indeterminate must lie in [0, 1]")

    def mark(trace, e):
        rng = _event_rng(seed, trace.case_id, e.id, "indeterminacy")
        hit = rng.random() < p_indeterminate
        u = rng.random()
        if not hit or e.is_indeterminate:
            return e
        absence = MAX_ABSENCE_PROBABILITY * (1.0 - u) if weak else None
        return replace(e, indeterminacy=Indeterminacy(True, absence))

    return _map_events(log, mark)


@dataclass
class InjectionConfig:
    time_granularity: Optional[float] = None
    label_confusion: Dict[str, FrozenSet[str]] = field(default_factory=dict)
    p_label: float = 0.0
    p_indeterminate: float = 0.0
    weak: bool = False
    seed: int = 0

    def __post_init__(self):
        self.label_confusion = {k: frozenset(v) for k, v in self.label_confusion.items()}
        if self.time_granularity is not None and not self.time_granularity > 0:
            raise ValueError("time_granularity must be > 0 or None")
        for name in ("p_label", "p_indeterminate"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ValueError("%s must lie in [0, 1]" % name)

    def to_dict(self) -> dict:
        return {
            "time_granularity": self.time_granularity,
            "label_confusion": {k: sorted(v) for k, v in sorted(self.label_confusion.items())},
            "p_label": self.p_label,
            "p_indeterminate": self.p_indeterminate,
            "weak": self.weak,
            "seed": self.seed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, doc: dict) -> "InjectionConfig":
        unknown = set(doc) - {"time_granularity", "label_confusion", "p_label", "p_indeterminate", "weak", "seed"}
        if unknown:
            raise ValueError("unknown injection config keys: %s" % sorted(unknown))
        return cls(**doc)

    @classmethod
    def from_json(cls, text: str) -> "InjectionConfig":
        return cls.from_dict(json.loads(text))


def inject(log: UncertainLog, config: InjectionConfig) -> UncertainLog:
    """Apply timestamp coarsening, label ambiguity and indeterminacy in that order."""
    if config.time_granularity is not None:
        log = coarsen_timestamps(log, config.time_granularity, config.seed)
    if config.p_label > 0 and config.label_confusion:
        log = ambiguate_labels(log, config.label_confusion, config.p_label, config.weak, config.seed)
    if config.p_indeterminate > 0:
        log = inject_indeterminacy(log, config.p_indeterminate, config.weak, config.seed)
    return log
