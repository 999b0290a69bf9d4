"""Frequent maximal induced ordered subtree mining and tree association rules.

Sub-ASTs are taken at every intermediate node of every (folded) file and
grouped by their root label. Within a group, a pattern is a root-anchored
induced ordered subtree (parent/child edges kept, sibling order kept), and its
support is the fraction of the group's sub-ASTs that contain it.

Rather than growing every frequent pattern one node at a time, the miner
works top-down from the data. A maximal frequent pattern is always a maximal
common subtree of the trees that contain it. So the search starts from the
sub-ASTs themselves and repeatedly intersects an infrequent pattern with one
more tree that does not contain it yet, until the pattern becomes frequent.
Candidates contained in an already-found frequent pattern are pruned.
"""
from __future__ import annotations

import itertools
import logging
import math
import time
from dataclasses import dataclass, field

from .h2 import parse_canonical
from .tree import contains_anywhere, contains_at, fold, pattern_height, render_pattern, to_pattern

log = logging.getLogger(__name__)

DEFAULT_MIN_SUPPORT = 0.05
DEFAULT_TAR_BRANCH_THRESHOLD = 0.5
FULL_ENUMERATION_MAX_BRANCHES = 6


@dataclass
class FrequentTree:
    tree: tuple  # pattern: ((kind, label), (children...))
    support: float
    dialect: str = "other"
    root_label: str = ""
    ft_id: str = ""

    @property
    def branches(self):
        return self.tree[1]


@dataclass
class TAR:
    source_tree: str  # ft_id
    root: tuple  # (kind, label)
    antecedent: tuple  # branch indices into the source tree, ascending
    consequent: tuple
    support: float = 0.0

    def antecedent_pattern(self, ft: FrequentTree):
        return (self.root, tuple(ft.branches[i] for i in self.antecedent))


@dataclass
class StatRuleIndex:
    entries: dict = field(default_factory=dict)  # rule_id -> (src ft ids, tgt ft ids)

    def unusable(self):
        """Rule ids missing a frequent tree on either side."""
        return sorted(rid for rid, (s, t) in self.entries.items() if not s or not t)


class MiningTimeout(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# maximal common subtrees


def _embeds(small, big):
    j = 0
    for s in small:
        while j < len(big) and not contains_at(big[j], s):
            j += 1
        if j == len(big):
            return False
        j += 1
    return True


def _maximal_tuples(candidates):
    uniq = list(dict.fromkeys(candidates))
    uniq.sort(key=len, reverse=True)
    kept = []
    for c in uniq:
        if not any(_embeds(c, k) for k in kept):
            kept.append(c)
    return kept


def maximal_common_subtrees(p, t, memo=None):
    """All maximal root-anchored patterns contained in both ``p`` and ``t``."""
    if p[0] != t[0]:
        return []
    memo = {} if memo is None else memo
    key = (p, t)
    if key in memo:
        return memo[key]
    a, b = p[1], t[1]
    matches = {}
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            if x[0] == y[0]:
                matches[(i, j)] = maximal_common_subtrees(x, y, memo)

    best = {}

    def rest(i, j):
        if i == len(a) or j == len(b):
            return [()]
        if (i, j) in best:
            return best[(i, j)]
        found = list(rest(i + 1, j))
        for jj in range(j, len(b)):
            for sub in matches.get((i, jj), ()):
                found.extend((sub,) + tail for tail in rest(i + 1, jj + 1))
        best[(i, j)] = _maximal_tuples(found)
        return best[(i, j)]

    out = [(p[0], kids) for kids in rest(0, 0)]
    memo[key] = out
    return out


# ---------------------------------------------------------------------------
# mining


def min_count(min_support, n):
    return max(1, math.ceil(min_support * n - 1e-9))


def mine_group(trees, min_support, deadline=None):
    """Maximal frequent root-anchored patterns of one root-label group.

    ``trees`` are patterns sharing one root label. Returns [(pattern, support)]
    sorted by descending support then pattern text.
    """
    n = len(trees)
    if n == 0:
        return []
    k = min_count(min_support, n)
    weights = {}
    for t in trees:
        weights[t] = weights.get(t, 0) + 1
    distinct = list(weights)

    def support_set(p):
        return frozenset(i for i, t in enumerate(distinct) if contains_at(t, p))

    found = {}
    seen = set()
    memo = {}
    frontier = list(distinct)
    while frontier:
        nxt = []
        for p in frontier:
            if p in seen:
                continue
            seen.add(p)
            if deadline is not None and time.monotonic() > deadline:
                raise MiningTimeout
            if not p[1] or any(contains_at(f, p) for f in found):
                continue
            supp = support_set(p)
            count = sum(weights[distinct[i]] for i in supp)
            if count >= k:
                found[p] = count / n
                continue
            for i, t in enumerate(distinct):
                if i not in supp:
                    nxt.extend(q for q in maximal_common_subtrees(p, t, memo) if q not in seen)
        frontier = nxt

    pats = sorted(found, key=lambda p: (-found[p], repr(p)))
    maximal = [p for p in pats if not any(q != p and contains_at(q, p) for q in pats)]
    return [(p, found[p]) for p in maximal]


def subtree_groups(patterns):
    """Group the sub-AST at every intermediate node by its root label."""
    groups = {}

    def walk(p):
        if p[1]:
            groups.setdefault(p[0], []).append(p)
            for c in p[1]:
                walk(c)

    for p in patterns:
        walk(p)
    return groups


def mine_patterns(patterns, min_support=DEFAULT_MIN_SUPPORT, time_budget=None):
    """Mine every root-label group of a list of tree patterns.

    Returns ([(pattern, support)], complete). Groups still unfinished when
    ``time_budget`` seconds run out are skipped and ``complete`` is False.
    """
    if not 0 < min_support <= 1:
        raise ValueError("min_support must be in (0, 1]")
    deadline = time.monotonic() + time_budget if time_budget else None
    out = []
    complete = True
    groups = subtree_groups(patterns)
    for root in sorted(groups, key=repr):
        try:
            out.extend(mine_group(groups[root], min_support, deadline))
        except MiningTimeout:
            log.warning("frequent-tree mining ran out of time at group %r; remaining groups skipped", root)
            complete = False
            break
    return out, complete


def mine_frequent_trees(asts, min_support=DEFAULT_MIN_SUPPORT, dialect="other", time_budget=None, prefix="ft"):
    """Frequent maximal subtrees of a single-dialect corpus (abstracted ASTs)."""
    patterns = [to_pattern(fold(a).root) for a in asts]
    mined, _ = mine_patterns(patterns, min_support, time_budget)
    trees = []
    for i, (p, s) in enumerate(mined):
        trees.append(FrequentTree(p, s, dialect, p[0][1], f"{prefix}:{i}"))
    return trees


# ---------------------------------------------------------------------------
# tree association rules


def antecedent_choices(b, threshold=DEFAULT_TAR_BRANCH_THRESHOLD):
    """Index sets used as antecedents for a tree with ``b`` branches."""
    if b < 2:
        return []
    size = max(1, math.ceil(threshold * b - 1e-9))
    if size >= b:
        size = b - 1
    if b <= FULL_ENUMERATION_MAX_BRANCHES:
        return [tuple(c) for c in itertools.combinations(range(b), size)]
    windows = {tuple(sorted((s + i) % b for i in range(size))) for s in range(b)}
    return sorted(windows)


def derive_tars(trees, threshold=DEFAULT_TAR_BRANCH_THRESHOLD):
    tars = []
    for ft in trees:
        b = len(ft.branches)
        for ante in antecedent_choices(b, threshold):
            cons = tuple(i for i in range(b) if i not in ante)
            tars.append(TAR(ft.ft_id, ft.tree[0], ante, cons, ft.support))
    return tars


def match_stat_rules_to_trees(r_stat, src_trees, tgt_trees):
    """For each stat rule, the frequent trees that contain its LHS / RHS H2."""
    src_hits, tgt_hits = {}, {}

    def hits(canonical, trees, cache):
        if canonical not in cache:
            pat = parse_canonical(canonical).pattern()
            cache[canonical] = tuple(ft.ft_id for ft in trees if contains_anywhere(ft.tree, pat))
        return cache[canonical]

    index = StatRuleIndex()
    for rule in r_stat:
        index.entries[rule.rule_id] = (hits(rule.lhs, src_trees, src_hits), hits(rule.rhs, tgt_trees, tgt_hits))
    return index


def dump_trees(trees):
    """Indented rendering of frequent trees with their support."""
    blocks = []
    for ft in trees:
        blocks.append(f"# {ft.ft_id} support={ft.support:.4f} height={pattern_height(ft.tree)}\n{render_pattern(ft.tree)}")
    return "\n".join(blocks) + ("\n" if blocks else "")
