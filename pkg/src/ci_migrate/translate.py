"""Translating one configuration file with a trained :class:`RuleModel`.

The pipeline works on folded trees (see :mod:`ci_migrate.tree`):

1. parse and abstract the source, extract its H2 trees;
2. start from the target seed tree, apply sim rules, then stat rules whose
   frequent-tree prerequisites hold, inserting each generated H2 at the
   deepest node matching its parent;
3. enrich with tree association rules, then hierarchize H2s left at the root;
4. make the tree emittable, copy stored parameters back into the generated
   commands, and emit YAML.
"""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from typing import Optional

from .abstraction import SLOT_RE, AbstractionSpec, abstract_ast, slot_tokens
from .apriori import HierarchizationRule
from .dialects import load_dialect
from .h2 import H2Tree, canonical_form, extract_h2, node_h2, parse_canonical
from .model import RuleModel
from .tree import (
    MAPPING_KEY,
    SCALAR,
    SEQUENCE_ITEM,
    ConfigAST,
    Node,
    contains_anywhere,
    contains_at,
    decode_leaf,
    encode_leaf,
    find_pattern,
    fold,
    from_pattern,
    number_nodes,
    to_pattern,
    trim_pattern,
)
from .treemine import DEFAULT_TAR_BRANCH_THRESHOLD
from .yamlio import emit_yaml, parse_config

log = logging.getLogger(__name__)

TRANSLATED_SIM = "TranslatedSim"
TRANSLATED_STAT = "TranslatedStat"
UNTRANSLATED = "Untranslated"

NO_EQUIVALENT = "Syntax with no direct equivalent"
DEEP_NESTING = "relies on more than two levels"
UNABSTRACTED = "Unabstracted syntax"

EMPTY = "empty"
UNPLACED_KEY = "x-unplaced"

EXIT_OK, EXIT_ERROR, EXIT_PARTIAL = 0, 1, 2


class TranslationError(Exception):
    pass


@dataclass
class H2Trace:
    index: int
    canonical: str
    h2_id: int
    status: str = UNTRANSLATED
    rule_id: Optional[str] = None
    target_node_ids: list = field(default_factory=list)
    # [(source slot index, target leaf node id, slot token)]
    slot_mapping: list = field(default_factory=list)


@dataclass
class TranslationTrace:
    entries: list = field(default_factory=list)
    applied_tars: list = field(default_factory=list)
    # generated target leaf node id -> index of the source H2 it came from
    provenance: dict = field(default_factory=dict)

    @classmethod
    def for_h2s(cls, h2s):
        return cls([H2Trace(i, canonical_form(h), h.h2_id) for i, h in enumerate(h2s)])

    def counts(self):
        out = {TRANSLATED_SIM: 0, TRANSLATED_STAT: 0, UNTRANSLATED: 0}
        for e in self.entries:
            out[e.status] += 1
        return out

    def translation_pct(self):
        """Percentage of source H2s translated, or ``"empty"`` with no H2s."""
        if not self.entries:
            return EMPTY
        c = self.counts()
        return 100.0 * (c[TRANSLATED_SIM] + c[TRANSLATED_STAT]) / len(self.entries)


# ---------------------------------------------------------------------------
# step 2: seed, insertion, sim and stat translation


def init_seed(model: RuleModel, dialect=None) -> ConfigAST:
    """Fresh copy of the model's seed tree for ``dialect`` (default: target)."""
    dialect = dialect or model.direction[1]
    for seed in model.seeds:
        if seed.dialect == dialect:
            root = from_pattern(seed.tree)
            number_nodes(root)
            return ConfigAST(root, dialect, folded=True)
    raise TranslationError(
        f"model has no seed tree for dialect {dialect!r}; retrain with a target-only corpus "
        "or add a seed entry to the model file"
    )


def _deepest(root: Node, key, exclude=None) -> Optional[Node]:
    """Deepest container with ``key``; the first in document order wins ties."""
    best, best_depth = None, -1
    stack = [(root, 0)]
    while stack:
        node, depth = stack.pop()
        if node is exclude or node.kind == SCALAR:
            continue
        if node.key == key and depth > best_depth:
            best, best_depth = node, depth
        stack.extend((c, depth + 1) for c in reversed(node.children))
    return best


def _add_leaves(dest: Node, leaves, ast: ConfigAST, trace=None, entry=None):
    placed = []
    for label, kind in leaves:
        same = [c for c in dest.children if c.kind == kind and c.label == label]
        if slot_tokens(label) and trace is not None:
            # commands carry parameters, so each translated one needs its own leaf
            same = [c for c in same if c.node_id not in trace.provenance]
        if same:
            node = same[0]
        else:
            node = ast.new_node(kind, label)
            dest.children.append(node)
        if trace is not None and entry is not None:
            trace.provenance.setdefault(node.node_id, entry)
        placed.append(node.node_id)
    return placed


def insert_h2(target_ast: ConfigAST, h2: H2Tree, trace=None, entry=None):
    """Attach ``h2`` under the deepest node matching its parent, else at the root.

    Returns the node ids of the inserted (or reused) leaves. H2s rooted at a
    sequence item never match: items are anonymous, and merging two of them
    would fuse two list entries.
    """
    dest = None
    if h2.parent_kind != SEQUENCE_ITEM:
        dest = _deepest(target_ast.root, h2.parent_key)
    if dest is None:
        dest = target_ast.new_node(h2.parent_kind, h2.parent_label)
        target_ast.root.children.append(dest)
    return _add_leaves(dest, h2.children, target_ast, trace, entry)


def _apply(rule, status, target_ast, trace, entry):
    e = trace.entries[entry]
    e.status = status
    e.rule_id = rule.rule_id
    e.target_node_ids = insert_h2(target_ast, parse_canonical(rule.rhs), trace, entry)


def translate_sim(h2s, model: RuleModel, target_ast: ConfigAST, trace: TranslationTrace = None):
    """Apply the best sim rule to every untranslated H2 that has one."""
    trace = trace or TranslationTrace.for_h2s(h2s)
    for e in trace.entries:
        if e.status != UNTRANSLATED:
            continue
        rules = model.sim_rules_for(e.canonical)
        if rules:
            _apply(rules[0], TRANSLATED_SIM, target_ast, trace, e.index)
    return target_ast, trace


def branch_coverage(tree, target_pattern) -> float:
    branches = tree[1]
    if not branches:
        return 0.0
    return sum(1 for b in branches if contains_anywhere(target_pattern, b)) / len(branches)


def translate_stat(h2s, source_ast: ConfigAST, model: RuleModel, index, target_ast: ConfigAST,
                   trace: TranslationTrace = None, threshold=DEFAULT_TAR_BRANCH_THRESHOLD):
    """Apply stat rules whose frequent-tree prerequisites hold.

    Candidates are scanned best first. A rule applies when (a) one of the
    source frequent trees containing its LHS occurs in the source file and
    (b) one of the target frequent trees containing its RHS has at least
    ``threshold`` of its branches already in the target tree.
    """
    trace = trace or TranslationTrace.for_h2s(h2s)
    index = index if index is not None else model.stat_index
    src_pattern = to_pattern(fold(source_ast).root)
    src_seen = {}

    def src_ok(ft_id):
        if ft_id not in src_seen:
            ft = model.tree(ft_id)
            src_seen[ft_id] = ft is not None and contains_anywhere(src_pattern, ft.tree)
        return src_seen[ft_id]

    for e in trace.entries:
        if e.status != UNTRANSLATED:
            continue
        candidates = model.stat_rules_for(e.canonical)
        if not candidates:
            continue
        tgt_pattern = to_pattern(target_ast.root)
        tgt_seen = {}

        def tgt_ok(ft_id):
            if ft_id not in tgt_seen:
                ft = model.tree(ft_id)
                tgt_seen[ft_id] = ft is not None and branch_coverage(ft.tree, tgt_pattern) >= threshold - 1e-12
            return tgt_seen[ft_id]

        for rule in candidates:
            srcs, tgts = index.entries.get(rule.rule_id, ((), ()))
            if any(src_ok(t) for t in srcs) and any(tgt_ok(t) for t in tgts):
                _apply(rule, TRANSLATED_STAT, target_ast, trace, e.index)
                break
    return target_ast, trace


# ---------------------------------------------------------------------------
# step 3.1: tree association rules


def _child_key(kind, label):
    """Mapping key a child occupies in its parent, or None."""
    if kind == MAPPING_KEY:
        return label
    if kind == SCALAR:
        parts = decode_leaf(label)
        if not parts.item:
            return parts.key
    return None


def _is_bare_value(kind, label):
    if kind != SCALAR:
        return False
    parts = decode_leaf(label)
    return not parts.item and parts.key is None


def _conflicts(parent: Node, kind, label) -> bool:
    """Would adding (kind, label) under ``parent`` clash with an existing child?"""
    if _is_bare_value(kind, label):
        return bool(parent.children)
    if any(_is_bare_value(c.kind, c.label) for c in parent.children):
        return True
    key = _child_key(kind, label)
    return key is not None and any(_child_key(c.kind, c.label) == key for c in parent.children)


def _present(parent: Node, branch):
    for c in parent.children:
        if contains_at(to_pattern(c), branch):
            return c
    return None


def _leaf_labels(node: Node):
    return {c.label for c in node.children if c.kind == SCALAR}


def _graft(parent: Node, branch, pos: int, ast: ConfigAST):
    """Make ``branch`` present under ``parent``; returns its node, or None on a clash.

    A branch clashes with an existing child that holds the same mapping key
    (which is left as is), and a sequence item clashes with an existing item
    sharing one of its entries, since that item already plays the role.
    """
    hit = _present(parent, branch)
    if hit is not None:
        return hit
    (kind, label), kids = branch
    if _conflicts(parent, kind, label):
        return None
    if kind == SEQUENCE_ITEM:
        mine = {k[0][1] for k in kids if k[0][0] == SCALAR}
        if any(c.kind == SEQUENCE_ITEM and mine & _leaf_labels(c) for c in parent.children):
            return None
    node = from_pattern(branch, ast)
    parent.children.insert(pos, node)
    return node


def _tar_order(model):
    def key(tar):
        ft = model.tree(tar.source_tree)
        return (-tar.support, repr(tar.antecedent_pattern(ft)), tar.consequent, tar.source_tree)
    return sorted(model.tars, key=key)


def enrich_with_tars(target_ast: ConfigAST, model: RuleModel, trace: TranslationTrace = None):
    """Add the missing consequent branches of every TAR whose antecedent is present.

    TARs are tried once each, by descending support. The antecedent is matched
    at the first node (document order) that contains it; each absent
    consequent branch is inserted next to the antecedent branch preceding it
    in the frequent tree, unless it clashes with an existing child (see
    :func:`_graft`). Existing nodes are never removed or relabeled.
    """
    for tar in _tar_order(model):
        ft = model.tree(tar.source_tree)
        if ft is None:
            continue
        hit = find_pattern(target_ast.root, tar.antecedent_pattern(ft))
        if hit is None:
            continue
        node, positions = hit
        placed = {i: node.children[p] for i, p in zip(tar.antecedent, positions)}
        added = 0
        for ci in tar.consequent:
            before = [i for i in placed if i < ci]
            if before:
                anchor = placed[max(before)]
                pos = next(k for k, c in enumerate(node.children) if c is anchor) + 1
            else:
                anchor = placed[min(placed)]
                pos = next(k for k, c in enumerate(node.children) if c is anchor)
            size = node.size()
            branch = trim_pattern(ft.branches[ci])
            got = None if branch is None else _graft(node, branch, pos, target_ast)
            if got is not None:
                placed[ci] = got
            added += node.size() - size
        if added and trace is not None:
            trace.applied_tars.append({
                "tree": tar.source_tree,
                "antecedent": list(tar.antecedent),
                "consequent": list(tar.consequent),
                "at": node.label,
                "nodes_added": added,
            })
    return target_ast


# ---------------------------------------------------------------------------
# step 3.2: hierarchization


def is_h2_node(node: Node) -> bool:
    return node.kind != SCALAR and bool(node.children) and all(c.kind == SCALAR for c in node.children)


def _protected(node: Node, keep) -> bool:
    return any(n.node_id in keep for n in node.iter())


def dfs_based_insert(node: Node, ast: ConfigAST, synthesized=False, keep=frozenset()) -> bool:
    """Move ``node``'s children under the deepest other node of the same type.

    On success ``node`` is also detached from the root. Children structurally
    equal to an existing child are dropped (set union), unless they carry
    parameter provenance (``keep``). A raw H2 rooted at a sequence item
    never matches; a synthesized sequence-item parent may.
    """
    if node.kind == SEQUENCE_ITEM and not synthesized:
        return False
    dest = _deepest(ast.root, node.key, exclude=node)
    if dest is None:
        return False
    existing = {c.structure() for c in dest.children}
    for child in node.children:
        if child.structure() in existing and not _protected(child, keep):
            continue
        dest.children.append(child)
        existing.add(child.structure())
    if dest.children:
        dest.empty = None
    if any(c is node for c in ast.root.children):
        ast.root.children = [c for c in ast.root.children if c is not node]
    return True


def _rule_lookup(h_rules):
    if isinstance(h_rules, RuleModel):
        return h_rules.h_rules_for
    table = {}
    for r in sorted(h_rules, key=HierarchizationRule.rank_key):
        table.setdefault(r.child, []).append(r)
    return lambda canonical: table.get(canonical, [])


def hierarchize_pass(ast: ConfigAST, h_rules, keep=frozenset(), events=None) -> bool:
    """One sweep of the hierarchization algorithm over the root's H2 children.

    Returns True when the tree changed.
    """
    rules_for = _rule_lookup(h_rules)
    events = events if events is not None else []
    root = ast.root
    changed = False
    for node in list(root.children):
        if not any(c is node for c in root.children) or not is_h2_node(node):
            continue
        canonical = canonical_form(node_h2(node))
        if dfs_based_insert(node, ast, keep=keep):
            events.append({"h2": canonical, "action": "merged"})
            changed = True
            continue
        matched = rules_for(canonical)
        if not matched:
            continue
        best = matched[0]
        new = ast.new_node(best.parent_kind, best.parent_label, [node])
        root.children = [c for c in root.children if c is not node]
        if dfs_based_insert(new, ast, synthesized=True, keep=keep):
            events.append({"h2": canonical, "action": "placed", "parent": best.parent_label})
        else:
            root.children.append(new)
            events.append({"h2": canonical, "action": "wrapped", "parent": best.parent_label})
        changed = True
    return changed


def hierarchize(ast: ConfigAST, h_rules, keep=frozenset(), events=None) -> ConfigAST:
    """Repeat :func:`hierarchize_pass` until nothing moves."""
    # every change removes one H2-shaped child from the root, so this ends
    for _ in range(len(ast.root.children) + 1):
        if not hierarchize_pass(ast, h_rules, keep, events):
            break
    return ast


# ---------------------------------------------------------------------------
# step 4: emittable tree and parameter transfer


def _role(node: Node):
    if node.kind == MAPPING_KEY:
        return "map"
    if node.kind == SEQUENCE_ITEM:
        return "seq"
    parts = decode_leaf(node.label)
    if parts.item:
        return "seq"
    return "map" if parts.key is not None else "value"


def _as_item(node: Node, ast: ConfigAST) -> Node:
    if node.kind == SCALAR:
        if _role(node) != "seq":
            node.label = "- " + node.label
        return node
    if node.kind == SEQUENCE_ITEM:
        return node
    return ast.new_node(SEQUENCE_ITEM, "-", [node])


def _path(stack):
    return "/".join(stack)


def _normalize(node: Node, ast: ConfigAST, keep, dropped, path, is_root=False):
    def drop(c):
        dropped.append({"path": _path(path), "label": c.label, "node_ids": [n.node_id for n in c.iter()]})

    kids = node.children
    roles = [_role(c) for c in kids]
    if kids and (is_root or "map" in roles):
        entries, stray = [], []
        for c, r in zip(kids, roles):
            if r == "map":
                entries.append(c)
            elif _protected(c, keep):
                stray.append(_as_item(c, ast))
            else:
                drop(c)
        if stray:
            holder = next((c for c in entries if c.kind == MAPPING_KEY and c.label == UNPLACED_KEY), None)
            if holder is None:
                holder = ast.new_node(MAPPING_KEY, UNPLACED_KEY)
                entries.append(holder)
            holder.children.extend(stray)
        groups = {}
        for c in entries:
            groups.setdefault(_child_key(c.kind, c.label), []).append(c)
        result = []
        for group in groups.values():
            first = group[0]
            if all(c.kind == MAPPING_KEY for c in group):
                for c in group[1:]:
                    first.children.extend(c.children)
                if first.children:
                    first.empty = None
                result.append(first)
                continue
            # clashing entries: a translated one beats seed / enrichment material
            winner = next((c for c in group if _protected(c, keep)), first)
            for c in group:
                if c is winner or (c.structure() == winner.structure() and not _protected(c, keep)):
                    continue
                drop(c)
            result.append(winner)
        node.children = result
    elif kids and roles != ["value"]:
        if all(r == "value" for r in roles) and any(_protected(c, keep) for c in kids):
            for c in kids:
                if not _protected(c, keep):
                    drop(c)
            kids = [c for c in kids if _protected(c, keep)]
        node.children = kids if len(kids) == 1 and _role(kids[0]) == "value" else [_as_item(c, ast) for c in kids]
    for c in node.children:
        if c.kind != SCALAR:
            _normalize(c, ast, keep, dropped, path + [c.label])


def finalize(target_ast: ConfigAST, keep=frozenset()):
    """Make every container a valid mapping, sequence or single scalar.

    Duplicate mapping keys merge. Among clashing entries the first one carrying
    translated content (ids in ``keep``) wins, else the first; the others are
    returned as dropped. In a mapping, stray sequence items and bare values
    move under an ``x-unplaced`` key if translated, and are dropped
    otherwise. Several bare values become a sequence.
    """
    dropped = []
    _normalize(target_ast.root, target_ast, keep, dropped, [], is_root=True)
    return dropped


def render_slot(token: str, text: str) -> str:
    if token.startswith("CMD:"):
        command = token[4:]
        return f"{command} {text}" if text else command
    return text


def bare_slot(token: str) -> str:
    """Rendering of a slot with no parameter: the command word for commands,
    the placeholder itself (e.g. ``<VERSION>``) otherwise, so it stays visible."""
    return token[4:] if token.startswith("CMD:") else token


def transfer_parameters(target_ast: ConfigAST, trace: TranslationTrace, store):
    """Copy stored parameters into generated command leaves, in source order.

    Each placeholder in a generated leaf takes the next unused source slot of
    the same type from the H2 the leaf was generated from. Returns
    ``(placed, unplaced, unparameterized)``.
    """
    used = {}
    placed, unparameterized = [], []
    parents = target_ast.parents()

    def where(node):
        labels = []
        while node.node_id in parents:
            node = parents[node.node_id]
            labels.append(node.label)
        return "/".join(reversed(labels[:-1]))

    for leaf in list(target_ast.root.iter()):
        if leaf.kind != SCALAR or not slot_tokens(leaf.label):
            continue
        parts = decode_leaf(leaf.label)
        ei = trace.provenance.get(leaf.node_id)
        if ei is None:
            for tok in slot_tokens(leaf.label):
                unparameterized.append({"path": where(leaf), "label": leaf.label, "token": tok, "reason": "no source"})
            if parts.value is not None:
                value = SLOT_RE.sub(lambda m: bare_slot(m.group(0)), parts.value)
                leaf.label = encode_leaf(value, parts.key, parts.item, parts.empty)
            continue
        entry = trace.entries[ei]
        slots = store.typed_slots(entry.h2_id)
        taken = used.setdefault(ei, set())
        if parts.value is None:
            continue

        def fill(m):
            tok = m.group(0)
            for si, (stok, text) in enumerate(slots):
                if si not in taken and stok == tok:
                    taken.add(si)
                    entry.slot_mapping.append((si, leaf.node_id, tok))
                    placed.append({"h2": ei, "slot": si, "text": text, "node_id": leaf.node_id})
                    return render_slot(tok, text)
            unparameterized.append({"path": where(leaf), "label": leaf.label, "token": tok, "reason": "no matching slot"})
            return bare_slot(tok)

        value = SLOT_RE.sub(fill, parts.value)
        leaf.label = encode_leaf(value, parts.key, parts.item, parts.empty)

    unplaced = []
    for e in trace.entries:
        taken = used.get(e.index, set())
        for si, (tok, text) in enumerate(store.typed_slots(e.h2_id)):
            if si not in taken:
                unplaced.append({"h2": e.index, "canonical": e.canonical, "slot": si, "token": tok, "text": text})
    return placed, unplaced, unparameterized


# ---------------------------------------------------------------------------
# whole-file translation


@dataclass
class TranslationReport:
    source: Optional[str]
    direction: tuple
    trace: TranslationTrace
    parameters_stored: int = 0
    placed: list = field(default_factory=list)
    unplaced: list = field(default_factory=list)
    unparameterized: list = field(default_factory=list)
    unabstracted: list = field(default_factory=list)
    dropped: list = field(default_factory=list)
    hierarchization: list = field(default_factory=list)
    failures: list = field(default_factory=list)

    @property
    def translation_pct(self):
        return self.trace.translation_pct()

    @property
    def untranslated(self):
        return [e for e in self.trace.entries if e.status == UNTRANSLATED]

    @property
    def exit_code(self):
        return EXIT_PARTIAL if self.untranslated else EXIT_OK

    def categories(self):
        return sorted({f["category"] for f in self.failures})

    def to_dict(self):
        return {
            "source": self.source,
            "direction": list(self.direction),
            "translation_pct": self.translation_pct,
            "counts": {**self.trace.counts(), "total": len(self.trace.entries)},
            "h2": [
                {"index": e.index, "canonical": e.canonical, "status": e.status, "rule": e.rule_id,
                 "target_node_ids": e.target_node_ids, "slots": [list(s) for s in e.slot_mapping]}
                for e in self.trace.entries
            ],
            "applied_tars": self.trace.applied_tars,
            "hierarchization": self.hierarchization,
            "parameters": {
                "stored": self.parameters_stored,
                "placed": len(self.placed),
                "unplaced": self.unplaced,
            },
            "unparameterized": self.unparameterized,
            "unabstracted": self.unabstracted,
            "dropped": self.dropped,
            "failures": self.failures,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _spec(model: RuleModel):
    return model._cached(
        "spec", lambda: AbstractionSpec.from_mapping(model.abstraction) if model.abstraction else AbstractionSpec.default()
    )


def _nesting_failures(target_ast, dialect, trace):
    keys = load_dialect(dialect).top_level_keys
    if not keys:
        return []
    out = []
    for child in target_ast.root.children:
        if child.label in keys:
            continue
        sources = sorted({trace.entries[trace.provenance[n.node_id]].canonical
                          for n in child.iter() if n.node_id in trace.provenance})
        out.append({"category": DEEP_NESTING, "key": child.label, "h2": sources})
    return out


def translate_file(source_text: str, model: RuleModel, direction=None, source_path=None):
    """Translate one file. Returns ``(target_yaml, TranslationReport)``.

    Raises :class:`~ci_migrate.yamlio.ParseError` on unparseable input and
    :class:`TranslationError` when ``direction`` differs from the model's.
    """
    if direction is not None and tuple(direction) != tuple(model.direction):
        raise TranslationError(
            f"model was trained for {model.direction[0]} -> {model.direction[1]}, "
            f"not {direction[0]} -> {direction[1]}"
        )
    src_dialect, tgt_dialect = model.direction
    spec = _spec(model)
    source = parse_config(source_text, src_dialect, source_path)
    if any(c.kind != MAPPING_KEY for c in source.root.children):
        raise TranslationError(f"{source_path or 'input'}: top level is not a YAML mapping")
    abstracted, store = abstract_ast(source, spec)
    h2s = extract_h2(abstracted)
    trace = TranslationTrace.for_h2s(h2s)

    target = init_seed(model, tgt_dialect)
    target.source_path = source_path
    translate_sim(h2s, model, target, trace)
    translate_stat(h2s, abstracted, model, model.stat_index, target, trace,
                   model.training_meta.get("tar_branch_threshold", DEFAULT_TAR_BRANCH_THRESHOLD))
    enrich_with_tars(target, model, trace)
    events = []
    hierarchize(target, model, keep=frozenset(trace.provenance), events=events)
    dropped = finalize(target, keep=frozenset(trace.provenance))
    placed, unplaced, unparameterized = transfer_parameters(target, trace, store)
    text = emit_yaml(target)

    failures = [{"category": NO_EQUIVALENT, "h2": e.canonical} for e in trace.entries if e.status == UNTRANSLATED]
    failures += _nesting_failures(target, tgt_dialect, trace)
    failures += [{"category": UNABSTRACTED, "path": p, "text": t} for p, t in store.unabstracted]
    report = TranslationReport(
        source=source_path,
        direction=tuple(model.direction),
        trace=trace,
        parameters_stored=len(store),
        placed=placed,
        unplaced=unplaced,
        unparameterized=unparameterized,
        unabstracted=[{"path": p, "text": t} for p, t in store.unabstracted],
        dropped=dropped,
        hierarchization=events,
        failures=failures,
    )
    log.debug("translated %s: %s", source_path or "<text>", report.translation_pct)
    return text, report

