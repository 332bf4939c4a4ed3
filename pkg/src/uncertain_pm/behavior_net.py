"""Behavior nets: Petri nets whose language is the realization set of a trace."""
from __future__ import annotations

from dataclasses import dataclass
from graphlib import CycleError, TopologicalSorter
from typing import Dict, FrozenSet, List, Set, Tuple

from .event_model import UncertainTrace, strictly_precedes
from .petri_net import PetriNet

TAU = "τ"


@dataclass(frozen=True)
class PrecedenceDag:
    nodes: Tuple[str, ...]
    edges: FrozenSet[Tuple[str, str]]

    def successors(self, node: str) -> List[str]:
        return [f for e, f in sorted(self.edges) if e == node]

    def predecessors(self, node: str) -> List[str]:
        return [e for e, f in sorted(self.edges) if f == node]

    def topological_order(self) -> List[str]:
        graph: Dict[str, Set[str]] = {n: set() for n in self.nodes}
        for e, f in self.edges:
            graph[f].add(e)
        ts = TopologicalSorter(graph)
        try:
            return list(ts.static_order())
        except CycleError as exc:
            raise ValueError("precedence graph has a cycle: %s" % (exc.args[1],)) from exc

    @property
    def minimal(self) -> List[str]:
        targets = {f for _, f in self.edges}
        return [n for n in self.nodes if n not in targets]

    @property
    def maximal(self) -> List[str]:
        sources = {e for e, _ in self.edges}
        return [n for n in self.nodes if n not in sources]


def precedence_dag(trace: UncertainTrace) -> PrecedenceDag:
    events = trace.events
    edges = frozenset(
        (e.id, f.id) for e in events for f in events if e is not f and strictly_precedes(e, f)
    )
    return PrecedenceDag(tuple(e.id for e in events), edges)


def transitive_reduction(dag: PrecedenceDag) -> PrecedenceDag:
    order = dag.topological_order()
    succ: Dict[str, Set[str]] = {n: set() for n in dag.nodes}
    for e, f in dag.edges:
        succ[e].add(f)
    # descendants computed in reverse topological order
    reach: Dict[str, Set[str]] = {}
    for n in reversed(order):
        r = set()
        for m in succ[n]:
            r.add(m)
            r |= reach[m]
        reach[n] = r
    kept = set()
    for e, f in dag.edges:
        if not any(f in reach[m] for m in succ[e] if m != f):
            kept.add((e, f))
    return PrecedenceDag(dag.nodes, frozenset(kept))


def build_behavior_net(trace: UncertainTrace) -> PetriNet:
    """Petri net that can fire exactly the realizations of ``trace``.

    One place per edge of the transitively reduced precedence DAG, plus a
    ``(start, e)`` place holding a token for every minimal event and an
    ``(e, end)`` place for every maximal one. Each event gets one visible
    transition per candidate label and a silent ``(e, τ)`` transition if it
    is indeterminate; all transitions of an event share its input and output
    places.
    """
    reduced = transitive_reduction(precedence_dag(trace))
    inputs: Dict[str, List[str]] = {e.id: [] for e in trace.events}
    outputs: Dict[str, List[str]] = {e.id: [] for e in trace.events}
    places = []
    initial = []
    final = []
    for e, f in sorted(reduced.edges):
        p = "(%s,%s)" % (e, f)
        places.append(p)
        outputs[e].append(p)
        inputs[f].append(p)
    for e in reduced.minimal:
        p = "(start,%s)" % e
        places.append(p)
        inputs[e].append(p)
        initial.append(p)
    for e in reduced.maximal:
        p = "(%s,end)" % e
        places.append(p)
        outputs[e].append(p)
        final.append(p)

    transitions = {}
    arcs = []
    for ev in trace.events:
        tids = []
        for label in ev.activity.candidates:
            tid = "(%s,%s)" % (ev.id, label)
            transitions[tid] = label
            tids.append(tid)
        if ev.is_indeterminate:
            tid = "(%s,%s)" % (ev.id, TAU)
            transitions[tid] = None
            tids.append(tid)
        for tid in tids:
            arcs.extend((p, tid) for p in inputs[ev.id])
            arcs.extend((tid, p) for p in outputs[ev.id])

    return PetriNet(
        places,
        transitions,
        arcs,
        {p: 1 for p in initial},
        {p: 1 for p in final},
        name="behavior net of %s" % trace.case_id,
    )
