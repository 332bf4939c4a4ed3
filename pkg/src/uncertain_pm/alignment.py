"""Optimal alignments and conformance bounds for uncertain traces.

Alignments are shortest paths in the state space of the synchronous product
of a log net (trace net or behavior net) and a model net. The search is a
uniform-cost search; a ``heuristic`` callable can be passed to turn it into
A* (it must be admissible and consistent to keep results optimal).
"""
from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple, Union

from .behavior_net import build_behavior_net
from .errors import AlignmentError, CapExceededError
from .event_model import UncertainTrace
from .petri_net import Marking, PetriNet
from .realizations import (
    DEFAULT_CAP,
    DEFAULT_SAMPLES,
    activity_sequences,
    realization_distribution,
)

NO_MOVE = "»"
TAU = "τ"
DEFAULT_MAX_STATES = 1_000_000


@dataclass(frozen=True)
class Sync:
    label: str
    log_transition: Optional[str] = None
    model_transition: Optional[str] = None
    cost = 0
    kind = 0


@dataclass(frozen=True)
class SilentModelMove:
    transition: str
    cost = 0
    kind = 1


@dataclass(frozen=True)
class SilentLogMove:
    """Firing of a silent log-net transition, i.e. skipping an indeterminate event."""

    transition: str
    cost = 0
    kind = 2


@dataclass(frozen=True)
class ModelMove:
    transition: str
    label: str
    cost = 1
    kind = 3


@dataclass(frozen=True)
class LogMove:
    label: str
    log_transition: Optional[str] = None
    cost = 1
    kind = 4


Move = Union[Sync, SilentModelMove, SilentLogMove, ModelMove, LogMove]


def _move_key(move) -> tuple:
    label = getattr(move, "label", "") or ""
    tid = getattr(move, "model_transition", None) or getattr(move, "transition", None) or ""
    log_tid = getattr(move, "log_transition", None) or ""
    return (move.kind, label, tid, log_tid)


@dataclass(frozen=True)
class Alignment:
    moves: Tuple[Move, ...]
    cost: int

    @property
    def log_projection(self) -> Tuple[str, ...]:
        return tuple(m.label for m in self.moves if isinstance(m, (Sync, LogMove)))

    @property
    def model_firing_sequence(self) -> Tuple[str, ...]:
        out = []
        for m in self.moves:
            if isinstance(m, Sync):
                out.append(m.model_transition)
            elif isinstance(m, (ModelMove, SilentModelMove)):
                out.append(m.transition)
        return tuple(out)

    @property
    def n_log_moves(self) -> int:
        return sum(isinstance(m, LogMove) for m in self.moves)

    @property
    def n_model_moves(self) -> int:
        return sum(isinstance(m, ModelMove) for m in self.moves)

    def render(self) -> str:
        return render_alignment(self)


def trace_net(sequence, name: str = "") -> PetriNet:
    """Linear net firing exactly ``sequence``."""
    sequence = list(sequence)
    places = ["p%d" % i for i in range(len(sequence) + 1)]
    transitions = {"t%d" % (i + 1): label for i, label in enumerate(sequence)}
    arcs = []
    for i in range(len(sequence)):
        arcs.append((places[i], "t%d" % (i + 1)))
        arcs.append(("t%d" % (i + 1), places[i + 1]))
    return PetriNet(places, transitions, arcs, {places[0]: 1}, {places[-1]: 1}, name=name or "trace net")


def _successors(log_net: PetriNet, model: PetriNet, lm: Marking, mm: Marking):
    log_en = sorted(log_net.enabled(lm))
    model_en = sorted(model.enabled(mm))
    out = []
    model_by_label: Dict[str, List[str]] = {}
    for t in model_en:
        label = model.transitions[t]
        if label is None:
            out.append((SilentModelMove(t), lm, model.fire(mm, t)))
        else:
            model_by_label.setdefault(label, []).append(t)
            out.append((ModelMove(t, label), lm, model.fire(mm, t)))
    for lt in log_en:
        label = log_net.transitions[lt]
        if label is None:
            out.append((SilentLogMove(lt), log_net.fire(lm, lt), mm))
            continue
        lm2 = log_net.fire(lm, lt)
        out.append((LogMove(label, lt), lm2, mm))
        for t in model_by_label.get(label, ()):
            out.append((Sync(label, lt, t), lm2, model.fire(mm, t)))
    out.sort(key=lambda item: _move_key(item[0]))
    return out


def optimal_alignment(
    log_net: PetriNet,
    model: PetriNet,
    heuristic: Optional[Callable[[Marking, Marking], float]] = None,
    max_states: int = DEFAULT_MAX_STATES,
) -> Alignment:
    """Minimum-cost alignment between the languages of ``log_net`` and ``model``.

    Log and visible model moves cost 1, synchronous and silent moves cost 0.
    Successors are expanded in a fixed order (move kind, label, transition
    id) and ties in the queue are broken by insertion order, so the witness
    is reproducible.
    """
    start = (log_net.initial_marking, model.initial_marking)
    goal = (log_net.final_marking, model.final_marking)
    h = heuristic or (lambda lm, mm: 0)
    counter = itertools.count()
    best: Dict[tuple, int] = {start: 0}
    parent: Dict[tuple, Tuple[tuple, Move]] = {}
    heap = [(h(*start), 0, next(counter), start)]
    closed = set()
    while heap:
        _, g, _, state = heapq.heappop(heap)
        if state in closed:
            continue
        if state == goal:
            moves = []
            while state != start:
                state, move = parent[state]
                moves.append(move)
            moves.reverse()
            return Alignment(tuple(moves), g)
        closed.add(state)
        if len(closed) > max_states:
            raise CapExceededError("max_states", max_states, len(closed), context="alignment search")
        for move, lm2, mm2 in _successors(log_net, model, *state):
            nxt = (lm2, mm2)
            if nxt in closed:
                continue
            g2 = g + move.cost
            if g2 < best.get(nxt, math.inf):
                best[nxt] = g2
                parent[nxt] = (state, move)
                heapq.heappush(heap, (g2 + h(*nxt), g2, next(counter), nxt))
    raise AlignmentError(
        "final marking unreachable in the synchronous product of %r and %r" % (log_net.name, model.name)
    )


def align_sequence(sequence, model: PetriNet, **kwargs) -> Alignment:
    return optimal_alignment(trace_net(sequence), model, **kwargs)


@dataclass(frozen=True)
class ConformanceBounds:
    case_id: str
    lower: int
    upper: Optional[int]
    lower_witness: Alignment
    upper_witness: Optional[Alignment]

    def as_row(self) -> str:
        upper = "capped" if self.upper is None else str(self.upper)
        return "%s lower=%d upper=%s" % (self.case_id, self.lower, upper)


def conformance_bounds(trace: UncertainTrace, model: PetriNet, cap: int = DEFAULT_CAP, **kwargs) -> ConformanceBounds:
    """Best- and worst-case optimal alignment cost over the realizations of ``trace``.

    The lower bound aligns the behavior net in one search. The upper bound
    aligns every distinct activity sequence (at most ``cap`` of them) and
    keeps the most expensive; ties go to the lexicographically smallest
    sequence. When the cap is exceeded a :class:`CapExceededError` is raised
    whose ``partial`` attribute holds the bounds with ``upper=None``.
    """
    lower_witness = optimal_alignment(build_behavior_net(trace), model, **kwargs)
    try:
        sequences = activity_sequences(trace, cap)
    except CapExceededError as exc:
        exc.partial = ConformanceBounds(trace.case_id, lower_witness.cost, None, lower_witness, None)
        raise
    upper_witness = None
    for seq in sorted(sequences):
        a = align_sequence(seq, model, **kwargs)
        if upper_witness is None or a.cost > upper_witness.cost:
            upper_witness = a
    upper = upper_witness.cost if upper_witness is not None else lower_witness.cost
    return ConformanceBounds(trace.case_id, lower_witness.cost, upper, lower_witness, upper_witness)


def expected_cost(
    trace: UncertainTrace,
    model: PetriNet,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    cap: int = DEFAULT_CAP,
    allow_defaults: bool = False,
    **kwargs,
) -> float:
    """Probability-weighted optimal alignment cost over all realizations.

    Sampled timestamp orders that fall outside the (truncated) supports are
    not realizations; the result is normalized over the probability mass of
    the enumerated realizations, which keeps it between the two bounds.
    """
    dist = realization_distribution(trace, samples, seed, cap, allow_defaults)
    costs: Dict[Tuple[str, ...], int] = {}
    total = 0.0
    weighted = 0.0
    for r, p in dist:
        seq = r.activities
        if seq not in costs:
            costs[seq] = align_sequence(seq, model, **kwargs).cost
        total += p
        weighted += p * costs[seq]
    if total <= 0.0:
        raise ValueError("realizations of trace %s carry no probability mass" % trace.case_id)
    value = weighted / total
    lo, hi = min(costs.values()), max(costs.values())
    return min(max(value, lo), hi)


def render_alignment(alignment: Alignment) -> str:
    """Two-row text table: log moves on top, model moves below."""
    top, bottom = [], []
    for m in alignment.moves:
        if isinstance(m, Sync):
            top.append(m.label)
            bottom.append(m.label)
        elif isinstance(m, LogMove):
            top.append(m.label)
            bottom.append(NO_MOVE)
        elif isinstance(m, ModelMove):
            top.append(NO_MOVE)
            bottom.append(m.label)
        elif isinstance(m, SilentModelMove):
            top.append(NO_MOVE)
            bottom.append(TAU)
        else:
            top.append(TAU)
            bottom.append(NO_MOVE)
    widths = [max(len(a), len(b)) for a, b in zip(top, bottom)]

    def row(cells):
        return "| " + " | ".join(c.ljust(w) for c, w in zip(cells, widths)) + " |"

    if not widths:
        return "| |\n| |"
    return row(top) + "\n" + row(bottom)
