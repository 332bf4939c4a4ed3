"""Uncertain directly-follows graphs (UDFGs) and their filtering."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Tuple

from ..errors import CapExceededError
from ..event_model import UncertainLog, UncertainTrace
from ..realizations import DEFAULT_CAP, activity_sequences

START = "START"
END = "END"
RESERVED = (START, END)

MIN = "min"
MAX = "max"

Edge = Tuple[str, str]


@dataclass(frozen=True)
class UDFG:
    nodes: FrozenSet[str]
    edges: Dict[Edge, Tuple[int, int]] = field(default_factory=dict)

    @property
    def activities(self) -> FrozenSet[str]:
        return self.nodes - set(RESERVED)


@dataclass(frozen=True)
class DFG:
    """Certain directly-follows graph; edge values are frequencies."""

    nodes: FrozenSet[str]
    edges: Dict[Edge, int] = field(default_factory=dict)

    @property
    def activities(self) -> FrozenSet[str]:
        return self.nodes - set(RESERVED)


def _check_reserved(trace: UncertainTrace) -> None:
    for e in trace.events:
        for a in e.activity.candidates:
            if a in RESERVED:
                raise ValueError("activity label %r is reserved (trace %s, event %s)" % (a, trace.case_id, e.id))


def trace_df_bounds(trace: UncertainTrace, cap: int = DEFAULT_CAP) -> Dict[Edge, Tuple[int, int]]:
    """Min and max count of every directly-follows pair over the realizations of ``trace``.

    Sequences are padded with START and END. A pair missing from some
    realization has minimum 0.
    """
    _check_reserved(trace)
    sequences = activity_sequences(trace, cap)
    counts = []
    for seq in sequences:
        padded = (START,) + seq + (END,)
        c: Dict[Edge, int] = {}
        for pair in zip(padded, padded[1:]):
            c[pair] = c.get(pair, 0) + 1
        counts.append(c)
    pairs = set().union(*counts) if counts else set()
    return {p: (min(c.get(p, 0) for c in counts), max(c.get(p, 0) for c in counts)) for p in sorted(pairs)}


def compute_udfg(log: UncertainLog, cap: int = DEFAULT_CAP) -> UDFG:
    nodes = {START, END}
    totals: Dict[Edge, Tuple[int, int]] = {}
    cache: Dict[tuple, Dict[Edge, Tuple[int, int]]] = {}
    for trace, weight in log.traces:
        key = trace.content_key()
        if key not in cache:
            try:
                cache[key] = trace_df_bounds(trace, cap)
            except CapExceededError as exc:
                exc.context = "trace %s" % trace.case_id
                raise
        for e in trace.events:
            nodes.update(e.activity.candidates)
        for pair, (lo, hi) in cache[key].items():
            tlo, thi = totals.get(pair, (0, 0))
            totals[pair] = (tlo + weight * lo, thi + weight * hi)
    return UDFG(frozenset(nodes), dict(sorted(totals.items())))


def filter_udfg(g: UDFG, mode: str = MIN, threshold: int = 1) -> DFG:
    """Keep edges whose min (``mode='min'``) or max (``mode='max'``) bound reaches ``threshold``.

    Activities left without any incident edge are dropped; START and END stay.
    Kept edges carry their max bound as frequency.
    """
    if mode not in (MIN, MAX):
        raise ValueError("mode must be 'min' or 'max', got %r" % mode)
    if threshold < 0:
        raise ValueError("threshold must be >= 0")
    bound = 0 if mode == MIN else 1
    kept = {pair: mm[1] for pair, mm in g.edges.items() if mm[bound] >= threshold}
    nodes = {START, END}
    for a, b in kept:
        nodes.add(a)
        nodes.add(b)
    return DFG(frozenset(nodes), kept)


def certain_dfg(g: UDFG) -> DFG:
    """Plain DFG of a UDFG whose bounds coincide (fully certain logs)."""
    return DFG(g.nodes, {pair: hi for pair, (lo, hi) in g.edges.items()})


def dfg_from_sequences(sequences) -> DFG:
    """DFG of a certain event language (each sequence counted once)."""
    edges: Dict[Edge, int] = {}
    nodes = {START, END}
    for seq in sequences:
        padded = (START,) + tuple(seq) + (END,)
        nodes.update(seq)
        for pair in zip(padded, padded[1:]):
            edges[pair] = edges.get(pair, 0) + 1
    return DFG(frozenset(nodes), dict(sorted(edges.items())))
