"""Labeled place/transition nets with token-game semantics.

Arc weights are always 1 and every net has a single final marking.
"""
from __future__ import annotations

from collections import deque
from typing import Dict, FrozenSet, Iterable, Iterator, Mapping, Optional, Set, Tuple

from .errors import CapExceededError, NotEnabledError

SILENT = None


class Marking(Mapping):
    """Immutable, hashable multiset of places (only positive counts stored)."""

    __slots__ = ("_items", "_d", "_hash")

    def __init__(self, tokens=()):
        if isinstance(tokens, Mapping):
            tokens = tokens.items()
        counts: Dict[str, int] = {}
        for place, n in tokens:
            if n < 0:
                raise ValueError("negative token count for %r" % place)
            if n:
                counts[place] = counts.get(place, 0) + n
        self._items = tuple(sorted(counts.items()))
        self._d = dict(self._items)
        self._hash = hash(self._items)

    @classmethod
    def of(cls, *places: str) -> "Marking":
        counts: Dict[str, int] = {}
        for p in places:
            counts[p] = counts.get(p, 0) + 1
        return cls(counts)

    def __getitem__(self, place):
        return self._d[place]

    def get(self, place, default=0):
        return self._d.get(place, default)

    def __contains__(self, place):
        return place in self._d

    def __iter__(self):
        return (p for p, _ in self._items)

    def __len__(self):
        return len(self._items)

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if isinstance(other, Marking):
            return self._items == other._items
        if isinstance(other, Mapping):
            return self == Marking(other)
        return NotImplemented

    def __lt__(self, other):
        return self._items < other._items

    def __repr__(self):
        return "Marking({%s})" % ", ".join("%r: %d" % kv for kv in self._items)

    @property
    def total(self) -> int:
        return sum(n for _, n in self._items)


class PetriNet:
    """A labeled Petri net with initial and final marking.

    ``transitions`` maps transition ids to labels (``None`` marks a silent
    transition). ``arcs`` are ``(source, target)`` pairs linking a place to a
    transition or a transition to a place. Place and transition ids must be
    disjoint so that arcs are unambiguous.
    """

    def __init__(
        self,
        places: Iterable[str],
        transitions: Mapping[str, Optional[str]],
        arcs: Iterable[Tuple[str, str]],
        initial_marking=(),
        final_marking=(),
        name: str = "",
    ):
        self.name = name
        self.places: FrozenSet[str] = frozenset(places)
        self.transitions: Dict[str, Optional[str]] = dict(transitions)
        clash = self.places & self.transitions.keys()
        if clash:
            raise ValueError("ids used for both places and transitions: %s" % sorted(clash))

        pre: Dict[str, Set[str]] = {t: set() for t in self.transitions}
        post: Dict[str, Set[str]] = {t: set() for t in self.transitions}
        arc_set = set()
        for src, dst in arcs:
            if src in self.places and dst in self.transitions:
                pre[dst].add(src)
            elif src in self.transitions and dst in self.places:
                post[src].add(dst)
            else:
                raise ValueError("arc %r -> %r does not join a place and a transition" % (src, dst))
            arc_set.add((src, dst))
        self.arcs: FrozenSet[Tuple[str, str]] = frozenset(arc_set)
        self.preset: Dict[str, FrozenSet[str]] = {t: frozenset(s) for t, s in pre.items()}
        self.postset: Dict[str, FrozenSet[str]] = {t: frozenset(s) for t, s in post.items()}

        self.initial_marking = initial_marking if isinstance(initial_marking, Marking) else Marking(initial_marking)
        self.final_marking = final_marking if isinstance(final_marking, Marking) else Marking(final_marking)
        for m, what in ((self.initial_marking, "initial"), (self.final_marking, "final")):
            unknown = set(m) - self.places
            if unknown:
                raise ValueError("%s marking uses unknown places %s" % (what, sorted(unknown)))

        # transitions consuming from each place, for fast enabling checks
        self._consumers: Dict[str, Tuple[str, ...]] = {}
        for t in sorted(self.transitions):
            for p in self.preset[t]:
                self._consumers.setdefault(p, ())
                self._consumers[p] += (t,)
        self._source_transitions = tuple(t for t in sorted(self.transitions) if not self.preset[t])

    def label(self, transition: str) -> Optional[str]:
        return self.transitions[transition]

    def is_silent(self, transition: str) -> bool:
        return self.transitions[transition] is None

    @property
    def visible_labels(self) -> FrozenSet[str]:
        return frozenset(l for l in self.transitions.values() if l is not None)

    def enabled(self, marking: Marking) -> FrozenSet[str]:
        candidates = set(self._source_transitions)
        for p in marking:
            candidates.update(self._consumers.get(p, ()))
        return frozenset(t for t in candidates if all(marking.get(p, 0) >= 1 for p in self.preset[t]))

    def fire(self, marking: Marking, transition: str) -> Marking:
        pre = self.preset[transition]
        if any(marking.get(p, 0) < 1 for p in pre):
            raise NotEnabledError("transition %r is not enabled in %r" % (transition, marking))
        counts = dict(marking.items())
        for p in pre:
            counts[p] -= 1
        for p in self.postset[transition]:
            counts[p] = counts.get(p, 0) + 1
        return Marking(counts)

    def __repr__(self):
        return "PetriNet(%r, %d places, %d transitions)" % (self.name, len(self.places), len(self.transitions))

    def __eq__(self, other):
        if not isinstance(other, PetriNet):
            return NotImplemented
        return (
            self.places == other.places
            and self.transitions == other.transitions
            and self.arcs == other.arcs
            and self.initial_marking == other.initial_marking
            and self.final_marking == other.final_marking
        )

    __hash__ = None


def enabled(net: PetriNet, marking: Marking) -> FrozenSet[str]:
    return net.enabled(marking)


def fire(net: PetriNet, marking: Marking, transition: str) -> Marking:
    return net.fire(marking, transition)


def reachable_markings(net: PetriNet, max_states: int = 100_000) -> Set[Marking]:
    """All markings reachable from the initial marking (breadth first)."""
    seen = {net.initial_marking}
    queue = deque(seen)
    while queue:
        m = queue.popleft()
        for t in net.enabled(m):
            m2 = net.fire(m, t)
            if m2 not in seen:
                seen.add(m2)
                if len(seen) > max_states:
                    raise CapExceededError("max_states", max_states, len(seen))
                queue.append(m2)
    return seen


def bounded_language(
    net: PetriNet,
    max_len: int,
    max_seqs: int = 100_000,
    max_states: int = 2_000_000,
) -> Set[Tuple[str, ...]]:
    """Visible-label sequences of firing sequences from initial to final marking.

    Only sequences with at most ``max_len`` visible labels are explored, so
    nets with loops still terminate; ``max_len`` therefore filters rather than
    fails. Raises :class:`CapExceededError` when more than ``max_seqs``
    distinct sequences exist or the search visits more than ``max_states``
    (marking, prefix) states.
    """
    if max_len < 0 or max_seqs < 1:
        raise ValueError("max_len must be >= 0 and max_seqs >= 1")
    final = net.final_marking
    result: Set[Tuple[str, ...]] = set()
    start = (net.initial_marking, ())
    seen = {start}
    stack = [start]
    while stack:
        marking, prefix = stack.pop()
        if marking == final and prefix not in result:
            result.add(prefix)
            if len(result) > max_seqs:
                raise CapExceededError("max_seqs", max_seqs, len(result))
        for t in sorted(net.enabled(marking)):
            label = net.transitions[t]
            if label is None:
                nxt = (net.fire(marking, t), prefix)
            elif len(prefix) < max_len:
                nxt = (net.fire(marking, t), prefix + (label,))
            else:
                continue
            if nxt not in seen:
                seen.add(nxt)
                if len(seen) > max_states:
                    raise CapExceededError("max_states", max_states, len(seen))
                stack.append(nxt)
    return result


def iter_nodes(net: PetriNet) -> Iterator[str]:
    yield from sorted(net.places)
    yield from sorted(net.transitions)
