"""Directly-follows based inductive miner.

Cuts are tried in the order exclusive choice, sequence, parallel, loop; if
none applies the flower model is returned. Empty traces (a START->END edge)
turn the result into a choice with a silent branch.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

from .process_tree import Leaf, ProcessTree, Silent, loop, par, seq, xor
from .udfg import DFG, END, START


@dataclass(frozen=True)
class _Graph:
    activities: FrozenSet[str]
    edges: FrozenSet[Tuple[str, str]]
    start: FrozenSet[str]
    end: FrozenSet[str]
    empty: bool = False

    def sub(self, nodes, start, end, empty=False) -> "_Graph":
        nodes = frozenset(nodes)
        return _Graph(
            nodes,
            frozenset((a, b) for a, b in self.edges if a in nodes and b in nodes),
            frozenset(start),
            frozenset(end),
            empty,
        )


def _from_dfg(dfg: DFG) -> _Graph:
    activities = set(dfg.activities)
    edges, start, end = set(), set(), set()
    empty = False
    for a, b in dfg.edges:
        if a == START and b == END:
            empty = True
        elif a == START:
            start.add(b)
        elif b == END:
            end.add(a)
        else:
            edges.add((a, b))
        activities.update(x for x in (a, b) if x not in (START, END))
    return _Graph(frozenset(activities), frozenset(edges), frozenset(start), frozenset(end), empty)


def _components(nodes, linked) -> List[FrozenSet[str]]:
    """Connected components of the undirected graph given by ``linked(a, b)``."""
    remaining = sorted(nodes)
    parent = {n: n for n in remaining}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, a in enumerate(remaining):
        for b in remaining[i + 1:]:
            if linked(a, b):
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
    groups: Dict[str, Set[str]] = {}
    for n in remaining:
        groups.setdefault(find(n), set()).add(n)
    return [frozenset(g) for _, g in sorted(groups.items())]


def _reachability(g: _Graph) -> Dict[str, Set[str]]:
    succ: Dict[str, Set[str]] = {a: set() for a in g.activities}
    for a, b in g.edges:
        succ[a].add(b)
    reach = {}
    for a in g.activities:
        seen: Set[str] = set()
        stack = list(succ[a])
        while stack:
            x = stack.pop()
            if x not in seen:
                seen.add(x)
                stack.extend(succ[x])
        reach[a] = seen
    return reach


def _xor_cut(g: _Graph) -> Optional[List[_Graph]]:
    comps = _components(g.activities, lambda a, b: (a, b) in g.edges or (b, a) in g.edges)
    if len(comps) < 2:
        return None
    return [g.sub(c, g.start & c, g.end & c) for c in comps]


def _seq_cut(g: _Graph) -> Optional[List[_Graph]]:
    reach = _reachability(g)

    def related(a, b):
        return b in reach[a] or a in reach[b]

    def same_scc(a, b):
        return b in reach[a] and a in reach[b]

    # nodes end up in one group when mutually reachable or mutually unreachable
    groups = _components(g.activities, lambda a, b: same_scc(a, b) or not related(a, b))
    if len(groups) < 2:
        return None
    for i, gi in enumerate(groups):
        for gj in groups[i + 1:]:
            forward = all(y in reach[x] for x in gi for y in gj)
            backward = all(x in reach[y] for x in gi for y in gj)
            none_forward = not any(y in reach[x] for x in gi for y in gj)
            none_backward = not any(x in reach[y] for x in gi for y in gj)
            if not ((forward and none_backward) or (backward and none_forward)):
                return None
    groups.sort(key=lambda grp: -sum(1 for other in groups if other is not grp and next(iter(other)) in reach[next(iter(grp))]))

    position = {START: -1, END: len(groups)}
    for k, grp in enumerate(groups):
        for a in grp:
            position[a] = k
    all_edges = set(g.edges) | {(START, s) for s in g.start} | {(e, END) for e in g.end}
    parts = []
    for k, grp in enumerate(groups):
        start = {b for a, b in all_edges if b in grp and position[a] != k}
        end = {a for a, b in all_edges if a in grp and position[b] != k}
        skipped = any(position[a] < k < position[b] for a, b in all_edges)
        parts.append(g.sub(grp, start, end, skipped))
    return parts


def _and_cut(g: _Graph) -> Optional[List[_Graph]]:
    comps = _components(g.activities, lambda a, b: not ((a, b) in g.edges and (b, a) in g.edges))
    if len(comps) < 2:
        return None
    if any(not (c & g.start) or not (c & g.end) for c in comps):
        return None
    return [g.sub(c, g.start & c, g.end & c) for c in comps]


def _loop_cut(g: _Graph) -> Optional[Tuple[_Graph, List[_Graph]]]:
    body = set(g.start | g.end)
    rest = g.activities - body
    if not rest:
        return None
    comps = _components(rest, lambda a, b: (a, b) in g.edges or (b, a) in g.edges)
    redos = []
    for c in comps:
        into = [(a, b) for a, b in g.edges if b in c and a not in c]
        out_of = [(a, b) for a, b in g.edges if a in c and b not in c]
        ok = (
            all(a in g.end for a, _ in into)
            and all(b in g.start for _, b in out_of)
            and all(any((e, x) in g.edges for x in c) for e in g.end)
            and all(any((x, s) in g.edges for x in c) for s in g.start)
        )
        if ok:
            redos.append(c)
        else:
            body |= c
    if not redos:
        return None
    body_graph = g.sub(body, g.start, g.end)
    redo_graphs = []
    for c in redos:
        start = {b for a, b in g.edges if b in c and a in body}
        end = {a for a, b in g.edges if a in c and b in body}
        redo_graphs.append(g.sub(c, start, end))
    return body_graph, redo_graphs


def _mine(g: _Graph) -> ProcessTree:
    if g.empty:
        if not g.activities:
            return Silent()
        return xor(_mine(replace(g, empty=False)), Silent())
    if not g.activities:
        return Silent()
    if len(g.activities) == 1:
        (a,) = g.activities
        if (a, a) in g.edges:
            return loop(Leaf(a), Silent())
        return Leaf(a)

    parts = _xor_cut(g)
    if parts:
        return xor(*(_mine(p) for p in parts))
    parts = _seq_cut(g)
    if parts:
        return seq(*(_mine(p) for p in parts))
    parts = _and_cut(g)
    if parts:
        return par(*(_mine(p) for p in parts))
    cut = _loop_cut(g)
    if cut:
        body, redos = cut
        return loop(_mine(body), xor(*(_mine(r) for r in redos)))
    return loop(xor(*(Leaf(a) for a in sorted(g.activities))), Silent())


def im_discover(dfg: DFG) -> ProcessTree:
    """Discover a process tree from a DFG that includes START/END edges."""
    return _mine(_from_dfg(dfg))
