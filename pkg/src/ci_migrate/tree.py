"""Ordered labeled trees for CI configuration files.

A parsed file is a *faithful* tree: mapping keys, sequence items and scalar
values are separate nodes, so ``language: java`` is ``MappingKey(language)``
holding ``Scalar(java)``.

Mining and translation work on the *folded* view of that tree. Below the
root level, a key whose value is a single scalar collapses into one leaf
labelled ``key: value``, and a sequence item holding one scalar (or one
single-scalar entry) collapses into ``- value`` / ``- key: value``. Leaf labels
in the folded view use a small reversible encoding (see :func:`encode_leaf`),
which lets generated trees be unfolded back into YAML.
"""
from __future__ import annotations

import copy
import json
from dataclasses import dataclass, field
from typing import Iterator, Optional

MAPPING_KEY = "MappingKey"
SEQUENCE_ITEM = "SequenceItem"
SCALAR = "Scalar"
KINDS = (MAPPING_KEY, SEQUENCE_ITEM, SCALAR)

ROOT_LABEL = "<root>"

TRAVIS = "travis"
GITHUB_ACTIONS = "github-actions"

# empty-container markers carried on childless MappingKey/SequenceItem nodes
NULL, EMPTY_MAP, EMPTY_SEQ = None, "{}", "[]"


@dataclass(eq=False)
class Node:
    kind: str
    label: str
    children: list = field(default_factory=list)
    node_id: int = -1
    # only meaningful for childless containers: NULL, EMPTY_MAP or EMPTY_SEQ
    empty: Optional[str] = None

    @property
    def is_leaf(self) -> bool:
        return self.kind == SCALAR

    @property
    def key(self):
        return (self.kind, self.label)

    def iter(self) -> Iterator["Node"]:
        """Pre-order (document order) traversal."""
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def iter_with_depth(self, depth=0):
        stack = [(self, depth)]
        while stack:
            node, d = stack.pop()
            yield node, d
            stack.extend((c, d + 1) for c in reversed(node.children))

    def size(self) -> int:
        return sum(1 for _ in self.iter())

    def structure(self):
        """Hashable structural value, ignoring node ids."""
        return (self.kind, self.label, self.empty, tuple(c.structure() for c in self.children))

    def __repr__(self):
        if self.children:
            return f"{self.kind}({self.label!r}, {len(self.children)} children)"
        return f"{self.kind}({self.label!r})"


@dataclass(eq=False)
class ConfigAST:
    root: Node
    dialect: str = "other"
    source_path: Optional[str] = None
    folded: bool = False

    def __post_init__(self):
        ids = [n.node_id for n in self.root.iter()]
        self._next_id = max(ids, default=-1) + 1

    def new_id(self) -> int:
        nid = self._next_id
        self._next_id += 1
        return nid

    def new_node(self, kind, label, children=None, empty=None) -> Node:
        return Node(kind, label, list(children or []), self.new_id(), empty)

    def adopt(self, node: Node) -> Node:
        """Assign fresh ids from this AST to every node of ``node``."""
        for n in node.iter():
            n.node_id = self.new_id()
        return node

    def copy(self) -> "ConfigAST":
        return ConfigAST(copy.deepcopy(self.root), self.dialect, self.source_path, self.folded)

    def structure(self):
        return self.root.structure()

    def node_count(self) -> int:
        return self.root.size()

    def find(self, node_id: int) -> Optional[Node]:
        for n in self.root.iter():
            if n.node_id == node_id:
                return n
        return None

    def parents(self) -> dict:
        """Map node_id -> parent Node."""
        out = {}
        for n in self.root.iter():
            for c in n.children:
                out[c.node_id] = n
        return out


def number_nodes(root: Node, start=0) -> int:
    nid = start
    for n in root.iter():
        n.node_id = nid
        nid += 1
    return nid


# ---------------------------------------------------------------------------
# leaf label encoding


def _plain_safe(text: str) -> bool:
    if not text or text != text.strip() or "\n" in text or "\r" in text:
        return False
    if text[0] == '"' or text == "-" or text.startswith("- "):
        return False
    if ": " in text or text.endswith(":") or text in ("{}", "[]"):
        return False
    return True


def _enc(text: str) -> str:
    return text if _plain_safe(text) else json.dumps(text, ensure_ascii=False)


def encode_leaf(value=None, key=None, item=False, empty=None) -> str:
    """Render a folded leaf label.

    ``value`` is the scalar text, or ``None`` for a null / empty container
    whose marker is given by ``empty``.
    """
    if value is None:
        tail = "" if empty is NULL else empty
    else:
        tail = _enc(value)
    if key is not None:
        body = _enc(key) + (": " + tail if tail else ":")
    else:
        body = tail
    if item:
        return "- " + body if body else "-"
    return body


@dataclass(frozen=True)
class LeafParts:
    item: bool
    key: Optional[str]
    value: Optional[str]
    empty: Optional[str] = None


def _take(text: str):
    """Split a possibly-quoted token off the front of ``text``."""
    if text.startswith('"'):
        try:
            value, end = json.JSONDecoder().raw_decode(text)
            if isinstance(value, str):
                return value, text[end:]
        except json.JSONDecodeError:
            pass
    return None


def decode_leaf(label: str) -> LeafParts:
    item = False
    rest = label
    if rest == "-":
        return LeafParts(True, None, None, NULL)
    if rest.startswith("- "):
        item, rest = True, rest[2:]

    def value_of(part):
        if part in ("{}", "[]"):
            return None, part
        quoted = _take(part)
        if quoted is not None and quoted[1] == "":
            return quoted[0], None
        return part, None

    quoted = _take(rest)
    if quoted is not None:
        first, remainder = quoted
        if remainder == "":
            return LeafParts(item, None, first)
        if remainder == ":":
            return LeafParts(item, first, None, NULL)
        if remainder.startswith(": "):
            v, e = value_of(remainder[2:])
            return LeafParts(item, first, v, e)
    idx = rest.find(": ")
    if idx >= 0:
        v, e = value_of(rest[idx + 2:])
        return LeafParts(item, rest[:idx], v, e)
    if rest.endswith(":"):
        return LeafParts(item, rest[:-1], None, NULL)
    if rest in ("{}", "[]"):
        return LeafParts(item, None, None, rest)
    return LeafParts(item, None, rest)


def leaf_role(label: str) -> str:
    """'item', 'entry' or 'value' for a folded leaf label."""
    parts = decode_leaf(label)
    if parts.item:
        return "item"
    return "entry" if parts.key is not None else "value"


# ---------------------------------------------------------------------------
# folding


def _fold_leaf_label(node: Node) -> Optional[str]:
    """Label of the leaf ``node`` folds into, or None if it stays a node."""
    if node.kind == MAPPING_KEY:
        if not node.children:
            return encode_leaf(None, key=node.label, empty=node.empty)
        if len(node.children) == 1 and node.children[0].kind == SCALAR:
            return encode_leaf(node.children[0].label, key=node.label)
        return None
    if node.kind == SEQUENCE_ITEM:
        if not node.children:
            return encode_leaf(None, item=True, empty=node.empty)
        if len(node.children) == 1:
            (child,) = node.children
            if child.kind == SCALAR:
                return encode_leaf(child.label, item=True)
            if child.kind == MAPPING_KEY:
                inner = _fold_leaf_label(child)
                if inner is not None:
                    return "- " + inner
    return None


def fold(ast: ConfigAST) -> ConfigAST:
    """Return the folded view of a faithful AST.

    Node ids are kept: a folded leaf takes the id of the outermost node it
    replaces, so ids in the folded view point back into the original tree.
    """
    if ast.folded:
        return ast

    def walk(node: Node, depth: int) -> Node:
        if depth >= 2 or (depth == 1 and node.kind == SEQUENCE_ITEM):
            label = _fold_leaf_label(node)
            if label is not None:
                return Node(SCALAR, label, [], node.node_id)
        if node.kind == SCALAR:
            return Node(SCALAR, encode_leaf(node.label), [], node.node_id)
        kids = [walk(c, depth + 1) for c in node.children]
        return Node(node.kind, node.label, kids, node.node_id, node.empty)

    root = walk(ast.root, 0)
    out = ConfigAST(root, ast.dialect, ast.source_path, folded=True)
    out._next_id = max(out._next_id, ast._next_id)
    return out


def unfold_node(node: Node) -> Node:
    """Expand folded leaves below ``node`` back into faithful structure."""
    if node.kind == SCALAR:
        parts = decode_leaf(node.label)
        inner = None
        if parts.key is not None:
            if parts.value is None:
                inner = Node(MAPPING_KEY, parts.key, [], -1, parts.empty)
            else:
                inner = Node(MAPPING_KEY, parts.key, [Node(SCALAR, parts.value)])
        elif parts.value is not None:
            inner = Node(SCALAR, parts.value)
        if parts.item:
            if inner is None:
                return Node(SEQUENCE_ITEM, "-", [], -1, parts.empty)
            return Node(SEQUENCE_ITEM, "-", [inner])
        if inner is None:
            # a bare empty container; only reachable through hand-built trees
            return Node(SCALAR, parts.empty or "")
        return inner
    return Node(node.kind, node.label, [unfold_node(c) for c in node.children], node.node_id, node.empty)


def unfold(ast: ConfigAST) -> ConfigAST:
    if not ast.folded:
        return ast
    root = unfold_node(ast.root)
    number_nodes(root)
    return ConfigAST(root, ast.dialect, ast.source_path, folded=False)


# ---------------------------------------------------------------------------
# patterns: hashable nested tuples ((kind, label), (child patterns...))


def to_pattern(node: Node):
    return (node.key, tuple(to_pattern(c) for c in node.children))


def from_pattern(pattern, ast: Optional[ConfigAST] = None) -> Node:
    (kind, label), kids = pattern
    node = Node(kind, label, [from_pattern(k, ast) for k in kids])
    if ast is not None:
        node.node_id = ast.new_id()
    return node


def pattern_size(pattern) -> int:
    return 1 + sum(pattern_size(c) for c in pattern[1])


def pattern_height(pattern) -> int:
    return 1 + max((pattern_height(c) for c in pattern[1]), default=0)


def _embed(small, big, contains) -> Optional[list]:
    """Greedy earliest order-preserving embedding of sequence ``small`` into ``big``.

    Returns the matched indices in ``big`` or None. Greedy earliest matching is
    optimal because the predicate is evaluated per pair.
    """
    positions = []
    j = 0
    for s in small:
        while j < len(big) and not contains(big[j], s):
            j += 1
        if j == len(big):
            return None
        positions.append(j)
        j += 1
    return positions


def contains_at(tree, pattern) -> bool:
    """Root-anchored induced ordered containment of ``pattern`` in ``tree``."""
    if tree[0] != pattern[0]:
        return False
    if not pattern[1]:
        return True
    if len(pattern[1]) > len(tree[1]):
        return False
    return _embed(pattern[1], tree[1], contains_at) is not None


def subpatterns(tree):
    yield tree
    for child in tree[1]:
        yield from subpatterns(child)


def contains_anywhere(tree, pattern) -> bool:
    return any(contains_at(sub, pattern) for sub in subpatterns(tree))


def node_contains_at(node: Node, pattern) -> Optional[list]:
    """Like :func:`contains_at` on a live Node; returns matched child positions."""
    if node.key != pattern[0]:
        return None
    if not pattern[1]:
        return []
    return _embed(pattern[1], node.children, lambda n, p: node_contains_at(n, p) is not None)


def find_pattern(root: Node, pattern) -> Optional[tuple]:
    """First node in document order where ``pattern`` is root-anchored contained."""
    for node in root.iter():
        pos = node_contains_at(node, pattern)
        if pos is not None:
            return node, pos
    return None


def trim_pattern(pattern):
    """Drop childless containers and sequence items without a scalar entry.

    Mined patterns keep a key whose value varies across files as a childless
    node; emitted, it would read as an explicit null. Returns None when
    nothing is left.
    """
    (kind, label), kids = pattern
    kept = tuple(k for k in (trim_pattern(c) for c in kids) if k is not None)
    if kind != SCALAR:
        if not kept:
            return None
        if kind == SEQUENCE_ITEM and not any(c[0][0] == SCALAR for c in kept):
            return None
    return ((kind, label), kept)


def render_pattern(pattern, indent=0) -> str:
    (kind, label), kids = pattern
    lines = ["  " * indent + f"{kind}({label})"]
    for k in kids:
        lines.append(render_pattern(k, indent + 1))
    return "\n".join(lines)

