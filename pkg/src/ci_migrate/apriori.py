"""Transaction building and Apriori mining of translation / hierarchization rules."""
from __future__ import annotations

import itertools
import logging
import random
from collections import Counter
from dataclasses import dataclass, field

from .h2 import canonical_form, extract_h2, extract_h2_with_parents, parse_canonical
from .similarity import leaf_cosine

log = logging.getLogger(__name__)

SRC, TGT = "SRC", "TGT"
CHILD, PARENT = "CHILD", "PARENT"

SIM, STAT = "sim", "stat"

DEFAULT_MIN_SUPPORT = 1e-6
DEFAULT_SIM_THRESHOLD = 0.5
DEFAULT_CARTESIAN_CAP = 250_000


@dataclass
class TransactionSet:
    transactions: list = field(default_factory=list)  # list of tuples of unique items
    warnings: list = field(default_factory=list)

    def __len__(self):
        return len(self.transactions)

    def items(self):
        return sorted({i for t in self.transactions for i in t})


@dataclass(frozen=True)
class AssociationRule:
    lhs: object
    rhs: object
    support: float
    confidence: float
    lift: float
    # raw counts, kept so a flipped rule can be scored without re-scanning
    pair_count: int = 0
    lhs_count: int = 0
    rhs_count: int = 0
    n: int = 0


@dataclass
class TranslationRule:
    lhs: str  # source-dialect H2 canonical form
    rhs: str  # target-dialect H2 canonical form
    support: float
    confidence: float
    lift: float
    flipped_support: float
    flipped_confidence: float
    flipped_lift: float
    support_product: float
    confidence_product: float
    lift_product: float
    leaf_cosine: float
    cls: str = STAT
    rule_id: str = ""

    def rank_key(self):
        # higher products first, then closer leaves, then canonical text
        return (-self.confidence_product, -self.support_product, -self.lift_product, -self.leaf_cosine, self.lhs, self.rhs)


@dataclass
class HierarchizationRule:
    child: str  # H2 canonical form
    parent_label: str
    parent_kind: str
    support: float
    confidence: float
    lift: float
    flipped_support: float
    flipped_confidence: float
    flipped_lift: float
    support_product: float
    confidence_product: float
    lift_product: float

    def rank_key(self):
        return (-self.confidence_product, -self.support_product, -self.lift_product, self.parent_kind, self.parent_label)


def _h2_set(ast):
    seen = {}
    for h2 in extract_h2(ast):
        seen.setdefault(canonical_form(h2), None)
    return list(seen)


def build_translation_transactions(pairs, cartesian_cap=DEFAULT_CARTESIAN_CAP, seed=0):
    """Cartesian product of source and target H2 sets, pair by pair.

    H2s are deduplicated per file. Pairs whose product exceeds
    ``cartesian_cap`` are sampled uniformly with a seeded RNG.
    """
    ts = TransactionSet()
    rng = random.Random(seed)
    for i, (src, tgt) in enumerate(pairs):
        s_items = [(SRC, c) for c in _h2_set(src)]
        t_items = [(TGT, c) for c in _h2_set(tgt)]
        if not s_items or not t_items:
            msg = f"pair {i}: empty H2 set on the {'source' if not s_items else 'target'} side, no transactions"
            log.warning(msg)
            ts.warnings.append(msg)
            continue
        total = len(s_items) * len(t_items)
        if total > cartesian_cap:
            picks = sorted(rng.sample(range(total), cartesian_cap))
            msg = f"pair {i}: {total} transactions sampled down to {cartesian_cap}"
            log.info(msg)
            ts.warnings.append(msg)
            ts.transactions.extend((s_items[k // len(t_items)], t_items[k % len(t_items)]) for k in picks)
        else:
            ts.transactions.extend(itertools.product(s_items, t_items))
    return ts


def mine_apriori(ts: TransactionSet, min_support=DEFAULT_MIN_SUPPORT):
    """All rules ``a => b`` over frequent 2-itemsets.

    support = P(a and b), confidence = P(a and b) / P(a), lift = confidence / P(b).
    """
    if not 0 < min_support <= 1:
        raise ValueError("min_support must be in (0, 1]")
    n = len(ts.transactions)
    if n == 0:
        return []
    need = min_support * n - 1e-9

    singles = Counter()
    for t in ts.transactions:
        singles.update(set(t))
    frequent = {i for i, c in singles.items() if c >= need}

    pairs = Counter()
    for t in ts.transactions:
        kept = sorted({i for i in t if i in frequent})
        pairs.update(itertools.combinations(kept, 2))

    rules = []
    for (a, b), c in sorted(pairs.items()):
        if c < need:
            continue
        for x, y in ((a, b), (b, a)):
            conf = c / singles[x]
            rules.append(AssociationRule(x, y, c / n, conf, conf / (singles[y] / n), c, singles[x], singles[y], n))
    return rules


def _flip_metrics(rule: AssociationRule, index):
    flip = index.get((rule.rhs, rule.lhs))
    if flip is not None:
        return flip.support, flip.confidence, flip.lift
    if rule.rhs_count:
        conf = rule.pair_count / rule.rhs_count
        return rule.support, conf, conf / (rule.lhs_count / rule.n)
    return 0.0, 0.0, 0.0


def filter_translation_rules(rules, source_dialect=None, target_dialect=None):
    """Keep SRC => TGT rules and score each against its TGT => SRC flip."""
    index = {(r.lhs, r.rhs): r for r in rules}
    out = []
    for r in rules:
        if r.lhs[0] != SRC or r.rhs[0] != TGT:
            continue
        fs, fc, fl = _flip_metrics(r, index)
        lhs, rhs = r.lhs[1], r.rhs[1]
        cos = leaf_cosine(parse_canonical(lhs).leaf_labels, parse_canonical(rhs).leaf_labels)
        out.append(TranslationRule(
            lhs, rhs, r.support, r.confidence, r.lift, fs, fc, fl,
            r.support * fs, r.confidence * fc, r.lift * fl, cos,
        ))
    out.sort(key=TranslationRule.rank_key)
    return out


def bifurcate_rules(rules, threshold=DEFAULT_SIM_THRESHOLD):
    """Split into (similarity-based, statistical) rule lists and number them."""
    r_sim, r_stat = [], []
    for r in rules:
        r.cls = SIM if r.leaf_cosine > threshold else STAT
        (r_sim if r.cls == SIM else r_stat).append(r)
    for prefix, group in ((SIM, r_sim), (STAT, r_stat)):
        for i, r in enumerate(group):
            r.rule_id = f"{prefix}:{i}"
    return r_sim, r_stat


def parent_item(kind, label):
    return f"{kind}({label})"


def build_hierarchization_transactions(target_asts):
    """One {CHILD: h2, PARENT: node above the H2's parent} transaction per H2.

    H2s hanging directly off the root, or whose parent is a root-level key,
    have no such node and contribute nothing. Duplicates within a file are
    dropped.
    """
    ts = TransactionSet()
    for ast in target_asts:
        seen = set()
        for h2, grand in extract_h2_with_parents(ast):
            if grand is None:
                continue
            t = ((CHILD, canonical_form(h2)), (PARENT, parent_item(grand.kind, grand.label)))
            if t not in seen:
                seen.add(t)
                ts.transactions.append(t)
    return ts


def _split_parent(item_text):
    kind, rest = item_text.split("(", 1)
    return kind, rest[:-1]


def mine_hierarchization_rules(th: TransactionSet, min_support=DEFAULT_MIN_SUPPORT):
    rules = mine_apriori(th, min_support)
    index = {(r.lhs, r.rhs): r for r in rules}
    out = []
    for r in rules:
        if r.lhs[0] != CHILD or r.rhs[0] != PARENT:
            continue
        fs, fc, fl = _flip_metrics(r, index)
        kind, label = _split_parent(r.rhs[1])
        out.append(HierarchizationRule(
            r.lhs[1], label, kind, r.support, r.confidence, r.lift, fs, fc, fl,
            r.support * fs, r.confidence * fc, r.lift * fl,
        ))
    out.sort(key=lambda h: (h.child,) + h.rank_key())
    return out


def dump_rules(rules):
    """One rule per line: lhs, rhs, support, confidence, lift, products, class."""
    lines = []
    for r in rules:
        if isinstance(r, TranslationRule):
            lhs, rhs, cls = r.lhs, r.rhs, r.cls
        else:
            lhs, rhs, cls = r.child, parent_item(r.parent_kind, r.parent_label), "hier"
        products = f"{r.confidence_product:.6g}/{r.support_product:.6g}/{r.lift_product:.6g}"
        lines.append(f"{lhs}\t{rhs}\t{r.support:.6g}\t{r.confidence:.6g}\t{r.lift:.6g}\t{products}\t{cls}")
    return "\n".join(lines) + ("\n" if lines else "")
