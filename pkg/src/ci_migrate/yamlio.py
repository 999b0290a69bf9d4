"""YAML text <-> :class:`ConfigAST`.

Scalars keep their raw text (``on`` stays the string ``on``, ``8`` stays ``8``),
so structural equality ignores quoting style. Anchors and aliases are
expanded, merge keys (``<<``) are applied, comments are dropped.
"""
from __future__ import annotations

import json
import re
from functools import lru_cache

import yaml

from .tree import (
    EMPTY_MAP,
    EMPTY_SEQ,
    MAPPING_KEY,
    NULL,
    ROOT_LABEL,
    SCALAR,
    SEQUENCE_ITEM,
    ConfigAST,
    Node,
    number_nodes,
    unfold,
)

MERGE_TAG = "tag:yaml.org,2002:merge"
NULL_TAG = "tag:yaml.org,2002:null"


class ParseError(ValueError):
    def __init__(self, message, line=None, column=None, path=None):
        where = ""
        if line is not None:
            where = f" (line {line}, column {column})"
        super().__init__(f"{path + ': ' if path else ''}{message}{where}")
        self.line = line
        self.column = column
        self.path = path


class EmitError(ValueError):
    def __init__(self, message, path):
        super().__init__(f"{message} at {'/'.join(path) or '<root>'}")
        self.path = path


def _convert(ynode, active, label, kind):
    """Build a Node of ``kind``/``label`` whose value is the YAML node ``ynode``."""
    if id(ynode) in active:
        raise ParseError("recursive alias", ynode.start_mark.line + 1, ynode.start_mark.column + 1)
    if isinstance(ynode, yaml.ScalarNode):
        if ynode.tag == NULL_TAG and ynode.style is None and ynode.value in ("", "~", "null", "Null", "NULL"):
            return Node(kind, label, [], -1, NULL)
        return Node(kind, label, [Node(SCALAR, ynode.value)])
    active = active | {id(ynode)}
    if isinstance(ynode, yaml.SequenceNode):
        if not ynode.value:
            return Node(kind, label, [], -1, EMPTY_SEQ)
        items = [_convert(v, active, "-", SEQUENCE_ITEM) for v in ynode.value]
        return Node(kind, label, items)
    if isinstance(ynode, yaml.MappingNode):
        entries = _mapping_entries(ynode, active)
        if not entries:
            return Node(kind, label, [], -1, EMPTY_MAP)
        return Node(kind, label, [_convert(v, active, k, MAPPING_KEY) for k, v in entries])
    raise ParseError(f"unsupported YAML node {type(ynode).__name__}")


def _mapping_entries(ynode, active):
    entries = {}
    merged = {}
    for knode, vnode in ynode.value:
        if knode.tag == MERGE_TAG:
            sources = vnode.value if isinstance(vnode, yaml.SequenceNode) else [vnode]
            for src in sources:
                if not isinstance(src, yaml.MappingNode):
                    raise ParseError("merge key needs a mapping", knode.start_mark.line + 1, knode.start_mark.column + 1)
                if id(src) in active:
                    raise ParseError("recursive alias", src.start_mark.line + 1, src.start_mark.column + 1)
                for k, v in _mapping_entries(src, active | {id(src)}):
                    merged.setdefault(k, v)
            continue
        if not isinstance(knode, yaml.ScalarNode):
            raise ParseError("complex mapping keys are not supported", knode.start_mark.line + 1, knode.start_mark.column + 1)
        if knode.value in entries:
            raise ParseError(f"duplicate key {knode.value!r}", knode.start_mark.line + 1, knode.start_mark.column + 1)
        entries[knode.value] = vnode
    for k, v in merged.items():
        entries.setdefault(k, v)
    # explicit keys first in document order, merged keys after
    return list(entries.items())


def parse_config(text: str, dialect: str = "other", source_path=None) -> ConfigAST:
    """Parse one YAML document into a faithful ConfigAST."""
    try:
        docs = list(yaml.compose_all(text, Loader=yaml.SafeLoader))
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark or exc.context_mark
        line = mark.line + 1 if mark else None
        col = mark.column + 1 if mark else None
        raise ParseError(exc.problem or str(exc), line, col, source_path) from None
    except yaml.YAMLError as exc:
        raise ParseError(str(exc), path=source_path) from None
    docs = [d for d in docs if d is not None]
    if len(docs) > 1:
        raise ParseError(
            f"multi-document YAML is not supported ({len(docs)} documents); split it into one file per document",
            path=source_path,
        )
    if not docs:
        root = Node(MAPPING_KEY, ROOT_LABEL, [], -1, EMPTY_MAP)
    else:
        root = _convert(docs[0], frozenset(), ROOT_LABEL, MAPPING_KEY)
    number_nodes(root)
    return ConfigAST(root, dialect, source_path)


# ---------------------------------------------------------------------------
# emission


@lru_cache(maxsize=65536)
def _reads_back(rendered: str, expected: str) -> bool:
    try:
        node = yaml.compose(rendered, Loader=yaml.SafeLoader)
    except yaml.YAMLError:
        return False
    if not isinstance(node, yaml.MappingNode) or len(node.value) != 1:
        return False
    value = node.value[0][1]
    if not isinstance(value, yaml.ScalarNode) or value.value != expected:
        return False
    # a plain scalar that resolves to null would come back as an empty container
    return not (value.tag == NULL_TAG and value.style is None)


_BLOCK_OK = re.compile(r"^[^\s].*", re.S)


def _scalar_lines(text: str, indent: str) -> list:
    """Render ``text`` as a value; returns lines, the first without indentation."""
    if "\n" not in text and _reads_back("k: " + text, text):
        return [text]
    if "\n" in text and _BLOCK_OK.match(text) and "\t" not in text and "\r" not in text:
        body = text
        if text.endswith("\n"):
            chomp = "+" if text.endswith("\n\n") else ""
            body = text[:-1] if not chomp else text.rstrip("\n")
        else:
            chomp = "-"
        lines = body.split("\n")
        block = ["|" + chomp] + [(indent + "  " + ln) if ln else "" for ln in lines]
        if chomp == "+":
            block += [""] * (len(text) - len(text.rstrip("\n")) - 1)
        sample = "k: " + "\n".join([block[0]] + [ln[len(indent):] if ln else "" for ln in block[1:]]) + "\n"
        if _reads_back(sample, text):
            return block
    return [json.dumps(text, ensure_ascii=False)]


def _key_text(key: str) -> str:
    if "\n" not in key and _reads_back(key + ": x", "x"):
        try:
            node = yaml.compose(key + ": x", Loader=yaml.SafeLoader)
            if node.value[0][0].value == key:
                return key
        except yaml.YAMLError:
            pass
    return json.dumps(key, ensure_ascii=False)


def _empty_text(node: Node) -> str:
    return {NULL: "", EMPTY_MAP: "{}", EMPTY_SEQ: "[]"}.get(node.empty, "")


def _container_kind(node: Node, path):
    kinds = {c.kind for c in node.children}
    if kinds == {MAPPING_KEY}:
        seen = set()
        for c in node.children:
            if c.label in seen:
                raise EmitError(f"duplicate mapping key {c.label!r}", path + [c.label])
            seen.add(c.label)
        return "map"
    if kinds == {SEQUENCE_ITEM}:
        return "seq"
    if kinds == {SCALAR} and len(node.children) == 1:
        return "scalar"
    raise EmitError(f"node mixes incompatible children {sorted(kinds)}", path)


def _value_lines(node: Node, indent: str, path) -> tuple:
    """Lines for the value held by a container node.

    Returns (inline, block): ``inline`` goes after ``key:``/``-`` on the same
    line, ``block`` lines follow, already indented.
    """
    if not node.children:
        return _empty_text(node), []
    kind = _container_kind(node, path)
    if kind == "scalar":
        lines = _scalar_lines(node.children[0].label, indent)
        return lines[0], lines[1:]
    return "", _block(node, indent + "  ", path, kind)


def _block(node: Node, indent: str, path, kind=None) -> list:
    kind = kind or _container_kind(node, path)
    out = []
    if kind == "map":
        for child in node.children:
            inline, block = _value_lines(child, indent, path + [child.label])
            head = indent + _key_text(child.label) + ":"
            out.append(head + (" " + inline if inline else ""))
            out.extend(block)
    else:
        for i, child in enumerate(node.children):
            sub = path + [str(i)]
            if child.children and _container_kind(child, sub) == "map":
                inner = _block(child, indent + "  ", sub, "map")
                out.append(indent + "- " + inner[0][len(indent) + 2:])
                out.extend(inner[1:])
            else:
                inline, block = _value_lines(child, indent, sub)
                out.append(indent + "-" + (" " + inline if inline else ""))
                out.extend(block)
    return out


def emit_yaml(ast: ConfigAST) -> str:
    """Serialize an AST (faithful or folded) as block-style YAML.

    An empty mapping root emits ``{}``. Raises :class:`EmitError` on duplicate
    sibling keys or containers mixing mapping entries and sequence items.
    """
    ast = unfold(ast)
    root = ast.root
    if not root.children:
        return "[]\n" if root.empty == EMPTY_SEQ else "{}\n"
    kind = _container_kind(root, [])
    if kind == "scalar":
        return "\n".join(_scalar_lines(root.children[0].label, "")) + "\n"
    return "\n".join(_block(root, "", [], kind)) + "\n"
