"""Keyword-preserving abstraction of scalar values.

Commands keep their name and lose their arguments (``mvn clean verify`` ->
``CMD:mvn``); other project-specific values (URLs, versions) become
placeholders. Everything that was cut out lands in a :class:`ParameterStore`,
keyed by the height-2 subtree the value will belong to, so it can be put
back after translation.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from typing import Optional

import yaml

from .tree import SCALAR, ConfigAST, fold

COMMAND = "command"
SCALAR_CLASS = "scalar"

# placeholder tokens as they appear inside abstracted labels
SLOT_RE = re.compile(r"CMD:[^\s\"',]+|<[A-Z][A-Z0-9_]*>")


@dataclass(frozen=True)
class AbstractionRule:
    pattern: str
    canonical: str
    kind: str = COMMAND

    def __post_init__(self):
        if self.kind not in (COMMAND, SCALAR_CLASS):
            raise ValueError(f"unknown rule kind {self.kind!r}")
        re.compile(self.pattern)


@dataclass
class AbstractionSpec:
    command_keywords: list = field(default_factory=list)   # [(pattern, canonical)]
    scalar_classes: list = field(default_factory=list)     # [(pattern, placeholder)]
    command_keys: frozenset = frozenset()

    def __post_init__(self):
        self._commands = [(re.compile(p, re.S), c) for p, c in self.command_keywords]
        self._classes = [(re.compile(p), c) for p, c in self.scalar_classes]

    def __bool__(self):
        return bool(self.command_keywords or self.scalar_classes)

    @classmethod
    def from_rules(cls, rules, command_keys=()):
        cmds = [(r.pattern, r.canonical) for r in rules if r.kind == COMMAND]
        classes = [(r.pattern, r.canonical) for r in rules if r.kind == SCALAR_CLASS]
        return cls(cmds, classes, frozenset(command_keys))

    @classmethod
    def from_mapping(cls, data):
        rules = [AbstractionRule(r["pattern"], r["canonical"], r.get("kind", COMMAND)) for r in data.get("rules", [])]
        return cls.from_rules(rules, data.get("command_keys", ()))

    @classmethod
    def load(cls, path):
        with open(path, encoding="utf-8") as fh:
            return cls.from_mapping(yaml.safe_load(fh) or {})

    @classmethod
    def default(cls):
        text = resources.files("ci_migrate").joinpath("data/abstraction.yaml").read_text(encoding="utf-8")
        return cls.from_mapping(yaml.safe_load(text))

    def to_mapping(self):
        rules = [{"pattern": p, "canonical": c, "kind": COMMAND} for p, c in self.command_keywords]
        rules += [{"pattern": p, "canonical": c, "kind": SCALAR_CLASS} for p, c in self.scalar_classes]
        return {"rules": rules, "command_keys": sorted(self.command_keys)}

    def rewrite(self, text):
        """Return (new_text, excised parameters, matched?)."""
        for regex, canonical in self._commands:
            m = regex.match(text)
            if m:
                return canonical, [text[m.end():].strip()], True
        for regex, placeholder in self._classes:
            found = [m.group(0) for m in regex.finditer(text)]
            if found:
                return regex.sub(placeholder, text), found, True
        return text, [], False

    def render_command(self, canonical):
        """Command word written back in place of a ``CMD:`` token."""
        return canonical[4:] if canonical.startswith("CMD:") else canonical


@dataclass
class ParameterStore:
    entries: list = field(default_factory=list)      # [(h2_id, slot_index, original_text)]
    unabstracted: list = field(default_factory=list)  # [(path, scalar text)]
    # (h2_id, slot_index) -> placeholder token the parameter was cut from
    tokens: dict = field(default_factory=dict)

    def slots(self, h2_id):
        return [text for hid, _, text in self.entries if hid == h2_id]

    def typed_slots(self, h2_id):
        """[(token, original_text)] for one H2, in slot order."""
        return [(self.tokens.get((hid, i)), text) for hid, i, text in self.entries if hid == h2_id]

    def h2_ids(self):
        return sorted({hid for hid, _, _ in self.entries})

    def __len__(self):
        return len(self.entries)

    def coverage_report(self, source_path=None):
        """Plain-text listing of unabstracted scalars, one per line."""
        prefix = f"{source_path}\t" if source_path else ""
        return "".join(f"{prefix}{path}\t{text}\n" for path, text in self.unabstracted)


def slot_tokens(label):
    return SLOT_RE.findall(label)


def _owning_key(path):
    for label in reversed(path):
        if label != "-":
            return label
    return None


def abstract_ast(ast: ConfigAST, spec: Optional[AbstractionSpec] = None):
    """Abstract every scalar value of a faithful AST.

    Returns a new AST (same shape, same node ids) and the ParameterStore.
    Abstracting an already-abstracted AST changes nothing.
    """
    if ast.folded:
        raise ValueError("abstract_ast expects a faithful (unfolded) AST")
    spec = spec if spec is not None else AbstractionSpec.default()
    out = ast.copy()
    excised = {}
    unabstracted = []

    def walk(node, path):
        if node.kind == SCALAR:
            new, params, matched = spec.rewrite(node.label)
            if matched:
                node.label = new
                if params:
                    excised[node.node_id] = list(zip(slot_tokens(new)[-len(params):], params))
            elif _owning_key(path) in spec.command_keys and not slot_tokens(node.label):
                unabstracted.append(("/".join(path), node.label))
            return
        for child in node.children:
            walk(child, path + [child.label] if child.kind != SCALAR else path)

    walk(out.root, [])

    store = ParameterStore(unabstracted=unabstracted)
    if excised:
        by_id = {n.node_id: n for n in out.root.iter()}
        folded = fold(out)
        for parent in folded.root.iter():
            slot = 0
            for leaf in parent.children:
                if leaf.kind != SCALAR:
                    continue
                for original in by_id[leaf.node_id].iter():
                    for token, text in excised.get(original.node_id, ()):
                        store.entries.append((parent.node_id, slot, text))
                        store.tokens[(parent.node_id, slot)] = token
                        slot += 1
    return out, store

