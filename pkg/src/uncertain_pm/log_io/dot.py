"""Graphviz DOT rendering of Petri nets and (uncertain) directly-follows graphs.

Output is byte-stable: nodes and edges are emitted in sorted order.
"""
from __future__ import annotations

from ..petri_net import PetriNet


def _q(text: str) -> str:
    return '"%s"' % str(text).replace("\\", "\\\\").replace('"', '\\"')


def export_dot_net(net: PetriNet) -> str:
    lines = ["digraph %s {" % _q(net.name or "petri_net"), "  rankdir=LR;"]
    for p in sorted(net.places):
        tokens = net.initial_marking.get(p, 0)
        label = "" if tokens == 0 else ("●" if tokens == 1 else str(tokens))
        attrs = ["shape=circle", "label=%s" % _q(label), "xlabel=%s" % _q(p)]
        if p in net.final_marking:
            attrs.append("peripheries=2")
        lines.append("  %s [%s];" % (_q("p:" + p), ", ".join(attrs)))
    for t in sorted(net.transitions):
        label = net.transitions[t]
        if label is None:
            attrs = ["shape=box", "style=filled", "fillcolor=black", 'label=""', "xlabel=%s" % _q(t)]
        else:
            attrs = ["shape=box", "label=%s" % _q(label), "xlabel=%s" % _q(t)]
        lines.append("  %s [%s];" % (_q("t:" + t), ", ".join(attrs)))
    for src, dst in sorted(net.arcs):
        s = ("p:" if src in net.places else "t:") + src
        d = ("p:" if dst in net.places else "t:") + dst
        lines.append("  %s -> %s;" % (_q(s), _q(d)))
    lines.append("}")
    return "\n".join(lines) + "\n"


def _graph_dot(name, nodes, edges, edge_label) -> str:
    from ..discovery.udfg import END, START

    lines = ["digraph %s {" % _q(name), "  rankdir=LR;"]
    for n in sorted(nodes):
        if n in (START, END):
            lines.append("  %s [shape=plaintext];" % _q(n))
        else:
            lines.append("  %s [shape=ellipse];" % _q(n))
    for (a, b), value in sorted(edges.items()):
        lines.append("  %s -> %s [label=%s];" % (_q(a), _q(b), _q(edge_label(value))))
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_dot_udfg(g) -> str:
    return _graph_dot("udfg", g.nodes, g.edges, lambda mm: "[%d, %d]" % mm)


def export_dot_dfg(g) -> str:
    return _graph_dot("dfg", g.nodes, g.edges, str)
