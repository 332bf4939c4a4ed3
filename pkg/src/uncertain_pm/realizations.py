"""Concrete outcomes of an uncertain trace and their probabilities.

A realization fixes which indeterminate events happened, one label per
present event and a total order of present events that respects the
timestamp supports. Enumeration is exhaustive but capped; probabilities of
discrete choices are exact while ordering probabilities are estimated by
Monte Carlo sampling of the timestamps.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Set, Tuple

import numpy as np

from .behavior_net import precedence_dag
from .errors import CapExceededError, StrongUncertaintyError
from .event_model import Gaussian, Interval, Point, UncertainTrace, strictly_precedes

DEFAULT_CAP = 10_000
DEFAULT_SAMPLES = 10_000
CHUNK_SIZE = 8192
DEFAULT_ABSENCE_PROBABILITY = 0.5


@dataclass(frozen=True)
class Realization:
    steps: Tuple[Tuple[str, str], ...]
    excluded: FrozenSet[str] = frozenset()

    @property
    def activities(self) -> Tuple[str, ...]:
        return tuple(label for _, label in self.steps)

    @property
    def order(self) -> Tuple[str, ...]:
        return tuple(eid for eid, _ in self.steps)

    def sort_key(self):
        return (self.activities, self.order, tuple(sorted(self.excluded)))


def linear_extensions(nodes: Sequence[str], edges) -> Iterator[Tuple[str, ...]]:
    """Yield every topological order of ``nodes`` under ``edges`` (pairs).

    Edges touching nodes outside ``nodes`` are ignored. Orders are produced
    in lexicographic order of node positions in ``nodes``.
    """
    nodes = list(nodes)
    index = {n: i for i, n in enumerate(nodes)}
    preds = [0] * len(nodes)
    succ: List[List[int]] = [[] for _ in nodes]
    for e, f in edges:
        if e in index and f in index:
            succ[index[e]].append(index[f])
            preds[index[f]] += 1
    placed = [False] * len(nodes)
    prefix: List[str] = []

    def rec():
        if len(prefix) == len(nodes):
            yield tuple(prefix)
            return
        for i in range(len(nodes)):
            if not placed[i] and preds[i] == 0:
                placed[i] = True
                for j in succ[i]:
                    preds[j] -= 1
                prefix.append(nodes[i])
                yield from rec()
                prefix.pop()
                for j in succ[i]:
                    preds[j] += 1
                placed[i] = False

    yield from rec()


def iter_realizations(trace: UncertainTrace) -> Iterator[Realization]:
    """Lazily yield all realizations of ``trace`` (no duplicates)."""
    dag = precedence_dag(trace)
    indeterminate = [e.id for e in trace.events if e.is_indeterminate]
    labels = {e.id: e.activity.candidates for e in trace.events}
    for absent_flags in itertools.product((False, True), repeat=len(indeterminate)):
        excluded = frozenset(eid for eid, a in zip(indeterminate, absent_flags) if a)
        present = [e.id for e in trace.events if e.id not in excluded]
        for order in linear_extensions(present, dag.edges):
            for choice in itertools.product(*(labels[eid] for eid in order)):
                yield Realization(tuple(zip(order, choice)), excluded)


def enumerate_realizations(trace: UncertainTrace, cap: int = DEFAULT_CAP) -> Set[Realization]:
    if cap < 1:
        raise ValueError("cap must be >= 1")
    out: Set[Realization] = set()
    for r in iter_realizations(trace):
        out.add(r)
        if len(out) > cap:
            raise CapExceededError("cap", cap, len(out), context="trace %s" % trace.case_id)
    return out


def count_realizations(trace: UncertainTrace, cap: int = DEFAULT_CAP) -> int:
    return len(enumerate_realizations(trace, cap))


def activity_sequences(trace: UncertainTrace, cap: int = DEFAULT_CAP) -> Set[Tuple[str, ...]]:
    """Distinct activity sequences over all realizations; ``cap`` bounds their number."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    out: Set[Tuple[str, ...]] = set()
    for r in iter_realizations(trace):
        out.add(r.activities)
        if len(out) > cap:
            raise CapExceededError("cap", cap, len(out), context="trace %s" % trace.case_id)
    return out


class TimestampSampler:
    """Monte-Carlo draws of all timestamps of a trace.

    Samples are produced in fixed-size chunks, chunk ``k`` using its own
    generator spawned from ``seed``; the result is therefore the same whether
    chunks are drawn sequentially or by ``n_jobs`` worker threads.

    Each event gets a primary draw (its timestamp) and a uniform tie-break
    key. Events are ranked by (primary, key, event id), so events with equal
    point timestamps come out in either order with equal probability.
    """

    def __init__(self, trace: UncertainTrace, samples: int = DEFAULT_SAMPLES, seed: int = 0, n_jobs: int = 1):
        if samples < 1:
            raise ValueError("samples must be >= 1")
        self.trace = trace
        self.samples = samples
        self.seed = seed
        self.index = {e.id: i for i, e in enumerate(trace.events)}
        self._id_rank = {eid: r for r, eid in enumerate(sorted(self.index))}
        sizes = [CHUNK_SIZE] * (samples // CHUNK_SIZE)
        if samples % CHUNK_SIZE:
            sizes.append(samples % CHUNK_SIZE)
        jobs = list(enumerate(sizes))
        if n_jobs > 1 and len(jobs) > 1:
            with ThreadPoolExecutor(max_workers=n_jobs) as pool:
                chunks = list(pool.map(lambda job: self._draw_chunk(*job), jobs))
        else:
            chunks = [self._draw_chunk(k, n) for k, n in jobs]
        # shape (2, n_events, samples): timestamps and tie-break keys
        self.draws = np.concatenate(chunks, axis=2) if chunks else np.empty((2, len(trace.events), 0))

    def _draw_chunk(self, k: int, n: int) -> np.ndarray:
        rng = np.random.default_rng(np.random.SeedSequence(self.seed, spawn_key=(k,)))
        n_events = len(self.trace.events)
        u = rng.random((2, n_events, n))
        z = rng.standard_normal((n_events, n))
        out = np.empty((2, n_events, n))
        out[1] = u[1]
        for i, e in enumerate(self.trace.events):
            ts = e.timestamp
            if isinstance(ts, Point):
                out[0, i, :] = ts.value
            elif isinstance(ts, Interval):
                out[0, i, :] = ts.lo + (ts.hi - ts.lo) * u[0, i, :]
            elif isinstance(ts, Gaussian):
                out[0, i, :] = ts.mu + ts.sigma * z[i, :]
            else:
                raise TypeError("unknown timestamp type %r" % type(ts).__name__)
        return out

    def _before(self, a: str, b: str) -> np.ndarray:
        i, j = self.index[a], self.index[b]
        p, s = self.draws[0], self.draws[1]
        pi, pj, si, sj = p[i], p[j], s[i], s[j]
        by_id = self._id_rank[a] < self._id_rank[b]
        return (pi < pj) | ((pi == pj) & ((si < sj) | ((si == sj) & by_id)))

    def order_mask(self, order: Sequence[str]) -> np.ndarray:
        mask = np.ones(self.samples, dtype=bool)
        for a, b in zip(order, order[1:]):
            mask &= self._before(a, b)
        return mask

    def probability(self, order: Sequence[str]) -> float:
        return float(np.count_nonzero(self.order_mask(order))) / self.samples


def _check_order(trace: UncertainTrace, order: Sequence[str]) -> None:
    ids = {e.id for e in trace.events}
    unknown = [eid for eid in order if eid not in ids]
    if unknown:
        raise ValueError("event ids not in trace %s: %s" % (trace.case_id, unknown))
    if len(set(order)) != len(order):
        raise ValueError("order repeats event ids: %s" % list(order))


def _surely_ordered(trace: UncertainTrace, order: Sequence[str]) -> bool:
    events = [trace.event(eid) for eid in order]
    return all(strictly_precedes(a, b) for a, b in zip(events, events[1:]))


def ordering_probability(
    trace: UncertainTrace,
    order: Sequence[str],
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    n_jobs: int = 1,
    sampler: Optional[TimestampSampler] = None,
) -> float:
    """Estimated probability that the sampled timestamps of ``order`` sort in that order.

    Points are constants, intervals uniform and Gaussians untruncated
    normals. Returns exactly 1.0 when the supports already force the order.
    """
    _check_order(trace, order)
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if len(order) <= 1 or _surely_ordered(trace, order):
        return 1.0
    if sampler is None:
        sampler = TimestampSampler(trace, samples, seed, n_jobs)
    return sampler.probability(order)


def strong_attributes(trace: UncertainTrace) -> List[str]:
    """Describe every attribute that is uncertain but carries no probability."""
    out = []
    for e in trace.events:
        if not e.activity.is_certain and e.activity.probabilities is None:
            out.append("%s: activity labels without probabilities" % e.id)
        if e.is_indeterminate and e.indeterminacy.absence_probability is None:
            out.append("%s: indeterminate without absence probability" % e.id)
        if isinstance(e.timestamp, Interval) and e.timestamp.lo < e.timestamp.hi:
            out.append("%s: interval timestamp without distribution" % e.id)
    return out


def _discrete_probability(trace: UncertainTrace, r: Realization) -> float:
    p = 1.0
    chosen = dict(r.steps)
    for e in trace.events:
        ind = e.indeterminacy
        absent_p = ind.absence_probability
        if absent_p is None:
            absent_p = DEFAULT_ABSENCE_PROBABILITY if ind.indeterminate else 0.0
        if e.id in r.excluded:
            p *= absent_p
            continue
        p *= 1.0 - absent_p
        label = chosen[e.id]
        lp = e.activity.probability(label)
        if lp is None:
            lp = 1.0 / len(e.activity.candidates)
        p *= lp
    return p


def _check_realization(trace: UncertainTrace, r: Realization) -> None:
    ids = [e.id for e in trace.events]
    seen = list(r.order) + sorted(r.excluded)
    if sorted(seen) != sorted(ids):
        raise ValueError("realization does not cover the events of trace %s exactly once" % trace.case_id)
    for eid in r.excluded:
        if not trace.event(eid).is_indeterminate:
            raise ValueError("event %s is excluded but not indeterminate" % eid)
    for eid, label in r.steps:
        if label not in trace.event(eid).activity.candidates:
            raise ValueError("label %r is not a candidate of event %s" % (label, eid))


def realization_probability(
    trace: UncertainTrace,
    r: Realization,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    allow_defaults: bool = False,
    sampler: Optional[TimestampSampler] = None,
) -> float:
    """Probability of one realization under independence across events.

    Multiplies the absence (or presence) probability of each indeterminate
    event, the chosen-label probability of each present event and the
    estimated probability of the step order. Strongly uncertain attributes
    raise :class:`StrongUncertaintyError` unless ``allow_defaults`` is set,
    in which case labels are uniform, absence has probability 0.5 and
    intervals are uniform.
    """
    if not allow_defaults:
        strong = strong_attributes(trace)
        if strong:
            raise StrongUncertaintyError(
                "trace %s has strongly uncertain attributes (pass allow_defaults=True): %s"
                % (trace.case_id, "; ".join(strong))
            )
    _check_realization(trace, r)
    p = _discrete_probability(trace, r)
    if p == 0.0:
        return 0.0
    return p * ordering_probability(trace, r.order, samples, seed, sampler=sampler)


def realization_distribution(
    trace: UncertainTrace,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    cap: int = DEFAULT_CAP,
    allow_defaults: bool = False,
    n_jobs: int = 1,
) -> List[Tuple[Realization, float]]:
    """All realizations with their probabilities, sorted by realization.

    One timestamp sample set is shared by every ordering estimate, so the
    ordering probabilities of a fixed presence/label pattern add up to the
    share of samples consistent with the supports.
    """
    realizations = sorted(enumerate_realizations(trace, cap), key=Realization.sort_key)
    sampler = TimestampSampler(trace, samples, seed, n_jobs)
    return [
        (r, realization_probability(trace, r, samples, seed, allow_defaults, sampler=sampler))
        for r in realizations
    ]

