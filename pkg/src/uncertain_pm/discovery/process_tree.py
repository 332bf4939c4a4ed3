"""Block-structured process trees and their translation to Petri nets."""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Tuple, Union

from ..petri_net import PetriNet

SEQ = "->"
XOR = "X"
AND = "+"
LOOP = "*"
TAU_TEXT = "tau"


@dataclass(frozen=True)
class Leaf:
    activity: str

    def __str__(self):
        return self.activity


@dataclass(frozen=True)
class Silent:
    def __str__(self):
        return TAU_TEXT


@dataclass(frozen=True)
class Operator:
    op: str
    children: Tuple["ProcessTree", ...]

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        if self.op not in (SEQ, XOR, AND, LOOP):
            raise ValueError("unknown operator %r" % self.op)
        if self.op == LOOP and len(self.children) != 2:
            raise ValueError("a loop has exactly two children (body, redo)")
        if len(self.children) < 2:
            raise ValueError("operator %s needs at least two children" % self.op)

    def __str__(self):
        return "%s(%s)" % (self.op, ", ".join(str(c) for c in self.children))


ProcessTree = Union[Leaf, Silent, Operator]


def _canonical_key(tree) -> tuple:
    # silent children go last so "X(h, i, tau)" reads naturally
    return (isinstance(tree, Silent), str(tree))


def seq(*children) -> ProcessTree:
    flat: List = []
    for c in children:
        if isinstance(c, Operator) and c.op == SEQ:
            flat.extend(c.children)
        else:
            flat.append(c)
    return flat[0] if len(flat) == 1 else Operator(SEQ, flat)


def _commutative(op, children) -> ProcessTree:
    flat: List = []
    for c in children:
        if isinstance(c, Operator) and c.op == op:
            flat.extend(c.children)
        else:
            flat.append(c)
    if op == XOR:
        # a second silent branch adds no behavior
        seen_silent = False
        deduped = []
        for c in flat:
            if isinstance(c, Silent):
                if seen_silent:
                    continue
                seen_silent = True
            deduped.append(c)
        flat = deduped
    flat.sort(key=_canonical_key)
    return flat[0] if len(flat) == 1 else Operator(op, flat)


def xor(*children) -> ProcessTree:
    return _commutative(XOR, children)


def par(*children) -> ProcessTree:
    return _commutative(AND, children)


def loop(body, redo) -> ProcessTree:
    return Operator(LOOP, (body, redo))


def leaves(tree) -> List[str]:
    if isinstance(tree, Leaf):
        return [tree.activity]
    if isinstance(tree, Silent):
        return []
    out = []
    for c in tree.children:
        out.extend(leaves(c))
    return out


_TOKEN = re.compile(r"\s*(->|[X+*](?=\s*\()|\(|\)|,|[A-Za-z_][A-Za-z0-9_]*)")


def parse_tree(text: str) -> ProcessTree:
    """Parse the textual form, e.g. ``->(a, X(b, c), +(e, f), *(g, tau))``."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError("cannot parse process tree at offset %d: %r" % (pos, text[pos:pos + 10]))
        tokens.append(m.group(1))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    tokens.reverse()

    def node():
        tok = tokens.pop()
        if tok in (SEQ, XOR, AND, LOOP):
            if tokens.pop() != "(":
                raise ValueError("expected '(' after %s" % tok)
            children = [node()]
            while True:
                t = tokens.pop()
                if t == ")":
                    break
                if t != ",":
                    raise ValueError("expected ',' or ')' but got %r" % t)
                children.append(node())
            return Operator(tok, children)
        if tok == TAU_TEXT:
            return Silent()
        if tok in ("(", ")", ","):
            raise ValueError("unexpected %r" % tok)
        return Leaf(tok)

    try:
        tree = node()
    except IndexError:
        raise ValueError("unexpected end of process tree text") from None
    if tokens:
        raise ValueError("trailing tokens in process tree text")
    return tree


class _NetBuilder:
    def __init__(self):
        self.places: List[str] = []
        self.transitions = {}
        self.arcs = []

    def place(self) -> str:
        p = "p%d" % len(self.places)
        self.places.append(p)
        return p

    def transition(self, label) -> str:
        n = len(self.transitions)
        t = ("t%d" % n) if label is not None else ("tau%d" % n)
        self.transitions[t] = label
        return t

    def connect(self, src, t, dst):
        self.arcs.append((src, t))
        self.arcs.append((t, dst))

    def build(self, tree, p_in: str, p_out: str):
        if isinstance(tree, Leaf):
            self.connect(p_in, self.transition(tree.activity), p_out)
        elif isinstance(tree, Silent):
            self.connect(p_in, self.transition(None), p_out)
        elif tree.op == SEQ:
            current = p_in
            for i, child in enumerate(tree.children):
                nxt = p_out if i == len(tree.children) - 1 else self.place()
                self.build(child, current, nxt)
                current = nxt
        elif tree.op == XOR:
            for child in tree.children:
                self.build(child, p_in, p_out)
        elif tree.op == AND:
            fork = self.transition(None)
            join = self.transition(None)
            self.arcs.append((p_in, fork))
            self.arcs.append((join, p_out))
            for child in tree.children:
                a, b = self.place(), self.place()
                self.arcs.append((fork, a))
                self.arcs.append((b, join))
                self.build(child, a, b)
        else:
            # silent entry/exit keep the loop's places private, so that a loop
            # nested in a choice or sequence cannot be re-entered from outside
            body_in, body_out = self.place(), self.place()
            self.connect(p_in, self.transition(None), body_in)
            self.build(tree.children[0], body_in, body_out)
            self.build(tree.children[1], body_out, body_in)
            self.connect(body_out, self.transition(None), p_out)


def tree_to_net(tree: ProcessTree, name: str = "") -> PetriNet:
    b = _NetBuilder()
    source, sink = b.place(), b.place()
    b.build(tree, source, sink)
    return PetriNet(b.places, b.transitions, b.arcs, {source: 1}, {sink: 1}, name=name or str(tree))
