"""Random inputs and brute-force oracles shared by the test modules."""
import itertools

import numpy as np

from uncertain_pm import (
    ActivitySpec,
    Gaussian,
    Indeterminacy,
    Interval,
    Point,
    UncertainEvent,
    UncertainLog,
    UncertainTrace,
    bounded_language,
    parse_tree,
    tree_to_net,
)
from uncertain_pm.datasets import healthcare_model

LABELS = "abcd"
HEALTHCARE_LABELS = ("NightSweats", "Splenomeg", "PrTP", "SecTP", "Adm")


def random_trace(rng, max_events=6, max_labels=2, labels=LABELS, case_id="c", gaussians=False, weak=False):
    n = int(rng.integers(1, max_events + 1))
    events = []
    for i in range(n):
        k = int(rng.integers(1, max_labels + 1))
        cands = tuple(sorted(rng.choice(list(labels), size=k, replace=False)))
        probs = None
        if weak and k > 1:
            w = rng.random(k) + 0.1
            probs = tuple(float(x) for x in w / w.sum())
        kind = rng.random()
        lo = float(rng.integers(0, 10))
        if kind < 0.4:
            ts = Point(lo)
        elif kind < 0.8 or not gaussians:
            ts = Interval(lo, lo + float(rng.integers(0, 4)))
        else:
            ts = Gaussian(lo, float(rng.uniform(0.2, 1.5)))
        ind = Indeterminacy()
        if rng.random() < 0.25:
            ind = Indeterminacy(True, float(rng.uniform(0.05, 0.9)) if weak else None)
        events.append(UncertainEvent("e%d" % (i + 1), ActivitySpec(cands, probs), ts, ind))
    return UncertainTrace(case_id, events)


def random_log(rng, max_traces=4, **kw):
    traces = []
    for j in range(int(rng.integers(1, max_traces + 1))):
        traces.append((random_trace(rng, case_id="case%d" % j, **kw), int(rng.integers(1, 20))))
    return UncertainLog(traces)


def oracle_sequences(trace):
    """Activity sequences by brute force: every subset, permutation and label choice.

    Orders are kept when no later event strictly precedes an earlier one,
    following the support-based rule independently of the library.
    """
    def sup(ts):
        if isinstance(ts, Point):
            return ts.value, ts.value
        if isinstance(ts, Interval):
            return ts.lo, ts.hi
        return ts.mu - 4 * ts.sigma, ts.mu + 4 * ts.sigma

    evs = list(trace.events)
    out = set()
    optional = [e for e in evs if e.indeterminacy.indeterminate]
    for r in range(len(optional) + 1):
        for dropped in itertools.combinations(optional, r):
            present = [e for e in evs if e not in dropped]
            for perm in itertools.permutations(present):
                ok = all(not sup(perm[j].timestamp)[1] < sup(perm[i].timestamp)[0]
                         for i in range(len(perm)) for j in range(i + 1, len(perm)))
                if not ok:
                    continue
                for labels in itertools.product(*[e.activity.candidates for e in perm]):
                    out.add(tuple(labels))
    return out


def lcs(a, b):
    m = [[0] * (len(b) + 1) for _ in range(len(a) + 1)]
    for i in range(len(a)):
        for j in range(len(b)):
            m[i + 1][j + 1] = m[i][j] + 1 if a[i] == b[j] else max(m[i][j + 1], m[i + 1][j])
    return m[-1][-1]


def oracle_cost(seq, model, slack=None):
    """Alignment cost as min over model runs of |s| + |m| - 2 LCS(s, m)."""
    shortest = min(len(w) for w in bounded_language(model, 12))
    limit = 2 * len(seq) + shortest if slack is None else slack
    lang = bounded_language(model, limit)
    return min(len(seq) + len(m) - 2 * lcs(seq, m) for m in lang)


CORPUS_TREES = [
    "->(a, b, c)",
    "X(a, b, c)",
    "+(a, b, c)",
    "->(a, +(b, c), d)",
    "->(a, X(b, tau), c)",
    "*(a, b)",
    "->(a, *(b, c), d)",
    "X(->(a, b), ->(c, d))",
    "->(+(a, X(b, c)), d)",
]


def model_corpus():
    """Ten reference nets: the healthcare model and nine block-structured nets."""
    models = [healthcare_model()]
    for text in CORPUS_TREES:
        models.append(tree_to_net(parse_tree(text), name=text))
    return models

