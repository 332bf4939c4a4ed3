import itertools

import numpy as np
import pytest

from uncertain_pm import (
    UncertainLog,
    UncertainTrace,
    bounded_language,
    compute_udfg,
    discover,
    filter_udfg,
    im_discover,
    make_event,
    parse_tree,
    tree_to_net,
)
from uncertain_pm.datasets import discovery_log
from uncertain_pm.discovery import (
    END,
    MAX,
    MIN,
    START,
    Leaf,
    Operator,
    Silent,
    certain_dfg,
    dfg_from_sequences,
    leaves,
    loop,
    par,
    seq,
    trace_df_bounds,
    xor,
)
from uncertain_pm.log_io import parse_shorthand


# --- an independent semantics of process trees --------------------------------

def shuffles(a, b):
    if not a:
        return {b}
    if not b:
        return {a}
    return {(a[0],) + s for s in shuffles(a[1:], b)} | {(b[0],) + s for s in shuffles(a, b[1:])}


def tree_language(tree, bound):
    if isinstance(tree, Leaf):
        return {(tree.activity,)}
    if isinstance(tree, Silent):
        return {()}
    kids = [tree_language(c, bound) for c in tree.children]
    if tree.op == "X":
        return set().union(*kids)
    if tree.op == "->":
        out = {()}
        for k in kids:
            out = {a + b for a in out for b in k if len(a + b) <= bound}
        return out
    if tree.op == "+":
        out = {()}
        for k in kids:
            out = {s for a in out for b in k for s in shuffles(a, b) if len(s) <= bound}
        return out
    body, redo = kids
    out = {b for b in body if len(b) <= bound}
    frontier = set(out)
    while frontier:
        nxt = {f + r + b for f in frontier for r in redo for b in body if len(f + r + b) <= bound} - out
        out |= nxt
        frontier = nxt
    return out


# --- UDFG ---------------------------------------------------------------------

def test_trace_df_bounds_single_trace():
    t = parse_shorthand("<a,[b,c]>").traces[0][0]
    b = trace_df_bounds(t)
    assert b[(START, "a")] == (1, 1)
    assert b[("a", "b")] == (0, 1) and b[("b", "c")] == (0, 1) and b[("c", END)] == (0, 1)


def test_udfg_weights_and_cache():
    g = compute_udfg(parse_shorthand("<a,b>^3; <a,b>^2; <a,{b,c}>"))
    assert g.edges[("a", "b")] == (5, 6)
    assert g.edges[("a", "c")] == (0, 1)


def test_reserved_labels_rejected():
    t = UncertainTrace("x", [make_event("e1", "START", 1)])
    with pytest.raises(ValueError):
        compute_udfg(UncertainLog([(t, 1)]))


def test_filter_modes():
    g = compute_udfg(discovery_log())
    dmin = filter_udfg(g, MIN, 15)
    assert ("a", "c") not in dmin.edges and ("g", "i") in dmin.edges
    dmax = filter_udfg(g, MAX, 15)
    assert ("a", "c") in dmax.edges and ("a", "d") not in dmax.edges
    assert "d" not in dmax.nodes
    with pytest.raises(ValueError):
        filter_udfg(g, "avg", 1)


def test_certain_dfg_of_certain_log():
    g = compute_udfg(parse_shorthand("<a,b,c>^2; <a,c>"))
    d = certain_dfg(g)
    assert d.edges == dfg_from_sequences([("a", "b", "c")] * 2 + [("a", "c")]).edges


# --- process trees -------------------------------------------------------------

def test_tree_text_roundtrip():
    for text in ["->(a, X(b, c), +(e, f), g, X(h, i, tau))", "*(->(a, b), tau)", "+(a, X(b, ->(c, d)))"]:
        assert str(parse_tree(text)) == text
        assert str(parse_tree(text.replace(" ", ""))) == text


def test_builders_are_canonical():
    assert str(xor(Leaf("c"), Silent(), Leaf("b"), Silent())) == "X(b, c, tau)"
    assert str(seq(Leaf("a"), seq(Leaf("b"), Leaf("c")))) == "->(a, b, c)"
    assert str(par(Leaf("b"), par(Leaf("a"), Leaf("c")))) == "+(a, b, c)"
    assert leaves(parse_tree("->(a, X(b, tau))")) == ["a", "b"]
    with pytest.raises(ValueError):
        parse_tree("->(a")
    with pytest.raises(ValueError):
        Operator("*", (Leaf("a"),))


@pytest.mark.parametrize(
    "text",
    ["->(a, b)", "X(a, tau)", "+(a, ->(b, c))", "*(a, b)", "*(->(a, b), tau)", "->(a, *(X(b, c), d), e)", "+(a, *(b, tau))"],
)
def test_tree_to_net_language(text):
    tree = parse_tree(text)
    assert bounded_language(tree_to_net(tree), 6) == tree_language(tree, 6)


# --- inductive miner -------------------------------------------------------------

def test_three_filter_tiers():
    log = discovery_log()
    assert str(discover(log, MIN, 15)) == "->(a, b, e, f, g, X(h, i))"
    assert str(discover(log, MAX, 15)) == "->(a, X(b, c), +(e, f), g, X(h, i))"
    assert str(discover(log, MAX, 1)) == "->(a, X(b, c, d), +(e, f), g, X(h, i, j, tau))"


def test_loose_model_replays_all_realizations():
    log = discovery_log()
    net = tree_to_net(discover(log, MAX, 1))
    lang = bounded_language(net, 7)
    from uncertain_pm import enumerate_realizations

    for trace, _ in log.traces:
        for r in enumerate_realizations(trace):
            assert r.activities in lang


def test_base_cases():
    assert str(im_discover(dfg_from_sequences([("a",)]))) == "a"
    assert str(im_discover(dfg_from_sequences([("a",), ()]))) == "X(a, tau)"
    assert str(im_discover(dfg_from_sequences([("a", "a")]))) == "*(a, tau)"


def random_tree(rng, labels, depth=0):
    if len(labels) == 1 or depth > 2:
        return seq(*[Leaf(l) for l in labels]) if len(labels) > 1 else Leaf(labels[0])
    op = rng.choice(["->", "X", "+", "*"])
    k = int(rng.integers(2, min(3, len(labels)) + 1))
    cuts = sorted(rng.choice(range(1, len(labels)), size=k - 1, replace=False))
    parts = [labels[i:j] for i, j in zip([0, *cuts], [*cuts, len(labels)])]
    kids = [random_tree(rng, p, depth + 1) for p in parts]
    if op == "->":
        return seq(*kids)
    if op == "X":
        return xor(*kids)
    if op == "+":
        return par(*kids)
    body = kids[0]
    if leaf_starts(body) & leaf_ends(body):
        # rediscovery needs loop bodies whose start and end activities differ
        body = seq(body, Leaf("z" + labels[0]))
    redo = kids[1] if len(kids) == 2 else xor(*kids[1:])
    return loop(body, redo)


def leaf_starts(tree):
    return {s[0] for s in tree_language(tree, 4) if s}


def leaf_ends(tree):
    return {s[-1] for s in tree_language(tree, 4) if s}


def test_rediscovery_corpus():
    rng = np.random.default_rng(17)
    checked = 0
    for _ in range(60):
        n = int(rng.integers(2, 7))
        tree = random_tree(rng, list("abcdef"[:n]))
        bound = 2 * len(leaves(tree)) + 2
        lang = tree_language(tree, bound)
        found = im_discover(dfg_from_sequences(sorted(lang)))
        assert tree_language(found, bound - 2) == {s for s in lang if len(s) <= bound - 2}, (str(tree), str(found))
        checked += 1
    assert checked == 60
