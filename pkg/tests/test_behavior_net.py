import numpy as np
import pytest

from uncertain_pm import (
    UncertainTrace,
    bounded_language,
    build_behavior_net,
    enumerate_realizations,
    make_event,
    precedence_dag,
    transitive_reduction,
)
from uncertain_pm.behavior_net import PrecedenceDag
from uncertain_pm.datasets import running_example_trace

import _gen


def test_precedence_dag_running_example():
    dag = precedence_dag(running_example_trace())
    # e1@5 < e2@8 < e4@12, e3 in [4,10] only precedes e4
    assert set(dag.edges) == {("e1", "e2"), ("e1", "e4"), ("e2", "e4"), ("e3", "e4")}
    red = transitive_reduction(dag)
    assert set(red.edges) == {("e1", "e2"), ("e2", "e4"), ("e3", "e4")}
    assert red.minimal == ["e1", "e3"] and red.maximal == ["e4"]


def test_topological_order_rejects_cycle():
    with pytest.raises(ValueError):
        PrecedenceDag(("a", "b"), (("a", "b"), ("b", "a"))).topological_order()


def test_behavior_net_arcs():
    net = build_behavior_net(running_example_trace())
    assert ("(start,e1)", "(e1,τ)") in net.arcs
    assert ("(e1,τ)", "(e1,e2)") in net.arcs
    assert len(net.arcs) == 13
    assert net.name == "behavior net of ID192"


def test_reduction_preserves_reachability():
    rng = np.random.default_rng(11)
    for _ in range(100):
        t = _gen.random_trace(rng, max_events=6)
        dag = precedence_dag(t)
        red = transitive_reduction(dag)

        def closure(d):
            succ = {n: set(d.successors(n)) for n in d.nodes}
            changed = True
            while changed:
                changed = False
                for n in succ:
                    new = set().union(*(succ[m] for m in succ[n])) if succ[n] else set()
                    if not new <= succ[n]:
                        succ[n] |= new
                        changed = True
            return succ

        assert closure(dag) == closure(red)
        # no edge of the reduction is implied by others
        for a, b in red.edges:
            others = PrecedenceDag(red.nodes, tuple(e for e in red.edges if e != (a, b)))
            assert b not in closure(others)[a]


def test_language_matches_brute_force_oracle():
    rng = np.random.default_rng(3)
    for i in range(150):
        t = _gen.random_trace(rng, max_events=5, max_labels=3, gaussians=True)
        assert bounded_language(build_behavior_net(t), len(t)) == _gen.oracle_sequences(t)


def test_single_certain_event():
    t = UncertainTrace("x", [make_event("e1", "a", 1)])
    net = build_behavior_net(t)
    assert bounded_language(net, 3) == {("a",)}
    assert set(net.places) == {"(start,e1)", "(e1,end)"}
