"""Height-2 subtrees: the unit that translation rules map between dialects."""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .tree import KINDS, SCALAR, ConfigAST, Node, fold

_ESCAPE = re.compile(r"([\\()\[\],])")


@dataclass(frozen=True)
class H2Tree:
    parent_label: str
    parent_kind: str
    children: tuple  # ((label, kind), ...)
    h2_id: int = field(default=-1, compare=False)
    origin_node_id: int = field(default=-1, compare=False)

    def __post_init__(self):
        if not self.children:
            raise ValueError("an H2 tree needs at least one child")

    @property
    def parent_key(self):
        return (self.parent_kind, self.parent_label)

    @property
    def leaf_labels(self):
        return [label for label, _ in self.children]

    def pattern(self):
        return ((self.parent_kind, self.parent_label), tuple(((k, l), ()) for l, k in self.children))

    def to_nodes(self, ast: ConfigAST):
        """Fresh parent Node (with children) owned by ``ast``."""
        kids = [ast.new_node(kind, label) for label, kind in self.children]
        return ast.new_node(self.parent_kind, self.parent_label, kids)


def _esc(text):
    return _ESCAPE.sub(r"\\\1", text)


def canonical_form(h2: H2Tree) -> str:
    """Deterministic text form, ``Kind(label)[Kind(label),...]``.

    Delimiters inside labels are backslash-escaped, which makes the form
    injective: equal text iff equal H2Tree.
    """
    kids = ",".join(f"{kind}({_esc(label)})" for label, kind in h2.children)
    return f"{h2.parent_kind}({_esc(h2.parent_label)})[{kids}]"


def _read_label(text, i):
    """Read an escaped label starting after '(' at ``i``; returns (label, index of ')')."""
    out = []
    while i < len(text):
        ch = text[i]
        if ch == "\\":
            out.append(text[i + 1])
            i += 2
            continue
        if ch == ")":
            return "".join(out), i
        if ch in "([],":
            raise ValueError(f"unescaped {ch!r} at {i}")
        out.append(ch)
        i += 1
    raise ValueError("unterminated label")


def _read_term(text, i):
    j = text.index("(", i)
    kind = text[i:j]
    if kind not in KINDS:
        raise ValueError(f"unknown node kind {kind!r}")
    label, end = _read_label(text, j + 1)
    return kind, label, end + 1


def parse_canonical(text: str) -> H2Tree:
    kind, label, i = _read_term(text, 0)
    if text[i:i + 1] != "[" or not text.endswith("]"):
        raise ValueError(f"malformed canonical form {text!r}")
    i += 1
    kids = []
    while text[i] != "]":
        ckind, clabel, i = _read_term(text, i)
        kids.append((clabel, ckind))
        if text[i] == ",":
            i += 1
    if i != len(text) - 1:
        raise ValueError(f"trailing text in {text!r}")
    return H2Tree(label, kind, tuple(kids))


def _h2_of(node: Node):
    leaves = tuple((c.label, c.kind) for c in node.children if c.kind == SCALAR)
    if not leaves or node.kind == SCALAR:
        return None
    return H2Tree(node.label, node.kind, leaves, node.node_id, node.node_id)


def extract_h2_with_parents(ast: ConfigAST):
    """[(H2Tree, grandparent Node or None)] in document order.

    The grandparent is the node above the H2's parent; it is None when the
    H2's parent is the root or a direct child of the root.
    """
    folded = fold(ast)
    out = []

    def walk(node, parent, depth):
        h2 = _h2_of(node)
        if h2 is not None:
            out.append((h2, parent if depth >= 2 else None))
        for child in node.children:
            if child.kind != SCALAR:
                walk(child, node, depth + 1)

    walk(folded.root, None, 0)
    return out


def extract_h2(ast: ConfigAST):
    """One H2Tree per node holding at least one leaf, in document order.

    Every leaf of the folded tree belongs to exactly one H2Tree: the one
    rooted at its parent.
    """
    return [h2 for h2, _ in extract_h2_with_parents(ast)]


def node_h2(node: Node):
    return _h2_of(node)


# ---------------------------------------------------------------------------
# whole-tree text encoding (used for frequent trees and seeds); an H2 tree
# encodes exactly as its canonical form


def encode_tree(pattern) -> str:
    (kind, label), kids = pattern
    head = f"{kind}({_esc(label)})"
    if not kids:
        return head
    return head + "[" + ",".join(encode_tree(k) for k in kids) + "]"


def decode_tree(text: str):
    def read(i):
        kind, label, i = _read_term(text, i)
        kids = []
        if i < len(text) and text[i] == "[":
            i += 1
            while True:
                child, i = read(i)
                kids.append(child)
                if text[i] == ",":
                    i += 1
                    continue
                if text[i] == "]":
                    i += 1
                    break
                raise ValueError(f"unexpected {text[i]!r} at {i}")
        return ((kind, label), tuple(kids)), i

    pattern, end = read(0)
    if end != len(text):
        raise ValueError(f"trailing text in tree encoding at {end}")
    return pattern
