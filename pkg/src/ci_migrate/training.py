"""Training: from corpora to a :class:`RuleModel`."""
from __future__ import annotations

import dataclasses
import logging
import time
from dataclasses import dataclass, field
from typing import Optional

from . import __version__
from .abstraction import AbstractionSpec, abstract_ast
from .apriori import (
    DEFAULT_CARTESIAN_CAP,
    DEFAULT_MIN_SUPPORT,
    DEFAULT_SIM_THRESHOLD,
    bifurcate_rules,
    build_hierarchization_transactions,
    build_translation_transactions,
    filter_translation_rules,
    mine_apriori,
    mine_hierarchization_rules,
)
from .corpus import CorpusLayout, load_pairs, load_single
from .dialects import load_dialect
from .model import RuleModel, SeedTree
from .tree import MAPPING_KEY, ROOT_LABEL, fold, pattern_size, to_pattern, trim_pattern
from .treemine import (
    DEFAULT_MIN_SUPPORT as DEFAULT_TREE_SUPPORT,
    DEFAULT_TAR_BRANCH_THRESHOLD,
    MiningTimeout,
    derive_tars,
    match_stat_rules_to_trees,
    mine_frequent_trees,
    mine_group,
)
from .yamlio import parse_config

log = logging.getLogger(__name__)

EMPTY_SEED = ((MAPPING_KEY, ROOT_LABEL), ())


class TrainingError(Exception):
    pass


@dataclass
class TrainingConfig:
    min_support_rules: float = DEFAULT_MIN_SUPPORT
    min_support_trees: float = DEFAULT_TREE_SUPPORT
    sim_threshold: float = DEFAULT_SIM_THRESHOLD
    tar_branch_threshold: float = DEFAULT_TAR_BRANCH_THRESHOLD
    cartesian_cap: int = DEFAULT_CARTESIAN_CAP
    seed: int = 0
    # seeds are whole-file skeletons shared by at least this fraction of files
    seed_min_support: float = 0.5
    # seconds allowed for each frequent-tree mining run; None means no limit
    time_budget: Optional[float] = None

    def knobs(self):
        return dataclasses.asdict(self)


@dataclass
class TrainingSummary:
    counts: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)

    def to_text(self):
        lines = [f"{k}\t{v}" for k, v in self.counts.items()]
        lines += [f"time_{k}_s\t{v:.3f}" for k, v in self.timings.items()]
        lines += [f"warning\t{w}" for w in self.warnings]
        return "\n".join(lines) + "\n"


def _prepare(texts, dialect, spec, label):
    out = []
    for i, text in enumerate(texts):
        name = getattr(text, "path", None)
        raw = text.read() if hasattr(text, "read") else text
        try:
            ast = parse_config(raw, dialect, name)
        except ValueError as exc:
            raise TrainingError(f"{label} file {name or i}: {exc}") from exc
        out.append(abstract_ast(ast, spec)[0])
    return out


def trim_seed(pattern):
    """A skeleton without the parts that would emit as noise (see :func:`trim_pattern`)."""
    root, kids = pattern
    return (root, tuple(k for k in (trim_pattern(c) for c in kids) if k is not None))


def select_seed(target_asts, dialect, min_support=0.5, time_budget=None):
    """Highest-support whole-file skeleton whose top-level keys suit ``dialect``.

    Returns ``(SeedTree, warning or None)``. Without any valid candidate the
    seed is an empty root.
    """
    info = load_dialect(dialect)
    roots = [to_pattern(fold(a).root) for a in target_asts]
    roots = [p for p in roots if p[0] == (MAPPING_KEY, ROOT_LABEL)]
    candidates = []
    if roots:
        deadline = time.monotonic() + time_budget if time_budget else None
        try:
            candidates = mine_group(roots, min_support, deadline)
        except MiningTimeout:
            candidates = []
    candidates.sort(key=lambda c: (-c[1], -pattern_size(c[0]), repr(c[0])))
    for pattern, _support in candidates:
        pattern = trim_seed(pattern)
        kids = pattern[1]
        if all(k[0][0] == MAPPING_KEY for k in kids) and info.valid_root_keys(k[0][1] for k in kids):
            return SeedTree(dialect, pattern), None
    msg = f"no frequent {dialect} skeleton passed the top-level key check; using an empty seed"
    log.warning(msg)
    return SeedTree(dialect, EMPTY_SEED), msg


def train(pairs, src_only=(), tgt_only=(), direction=("travis", "github-actions"), config=None, spec=None):
    """Mine every rule set for one direction.

    ``pairs`` holds (source, target) items and ``src_only`` / ``tgt_only``
    single-dialect items; each item is YAML text or a :class:`CorpusFile`.
    Returns ``(RuleModel, TrainingSummary)``.
    """
    config = config or TrainingConfig()
    spec = spec if spec is not None else AbstractionSpec.default()
    src_dialect, tgt_dialect = direction
    summary = TrainingSummary()
    clock = time.perf_counter
    if not pairs:
        raise TrainingError("no paired files: translation rules cannot be mined")

    t = clock()
    src_asts = _prepare([p[0] for p in pairs], src_dialect, spec, "source")
    tgt_asts = _prepare([p[1] for p in pairs], tgt_dialect, spec, "target")
    src_single = _prepare(src_only, src_dialect, spec, "source-only")
    tgt_single = _prepare(tgt_only, tgt_dialect, spec, "target-only")
    summary.timings["prepare"] = clock() - t
    for name, files in (("source-only", src_single), ("target-only", tgt_single)):
        if not files:
            msg = f"empty {name} corpus: stat translation and TAR enrichment are degraded"
            log.warning(msg)
            summary.warnings.append(msg)

    t = clock()
    ts = build_translation_transactions(list(zip(src_asts, tgt_asts)), config.cartesian_cap, config.seed)
    summary.warnings.extend(ts.warnings)
    rules = filter_translation_rules(mine_apriori(ts, config.min_support_rules), src_dialect, tgt_dialect)
    r_sim, r_stat = bifurcate_rules(rules, config.sim_threshold)
    summary.timings["translation_rules"] = clock() - t

    t = clock()
    th = build_hierarchization_transactions(tgt_asts + tgt_single)
    h_rules = mine_hierarchization_rules(th, config.min_support_rules)
    summary.timings["hierarchization_rules"] = clock() - t

    t = clock()
    src_fts = mine_frequent_trees(src_single, config.min_support_trees, src_dialect, config.time_budget, "src")
    tgt_fts = mine_frequent_trees(tgt_single, config.min_support_trees, tgt_dialect, config.time_budget, "tgt")
    tars = derive_tars(tgt_fts, config.tar_branch_threshold)
    index = match_stat_rules_to_trees(r_stat, src_fts, tgt_fts)
    summary.timings["frequent_trees"] = clock() - t

    seed, warning = select_seed(tgt_single, tgt_dialect, config.seed_min_support, config.time_budget)
    if warning:
        summary.warnings.append(warning)

    summary.counts = {
        "pairs": len(pairs),
        "source_only": len(src_single),
        "target_only": len(tgt_single),
        "translation_transactions": len(ts),
        "hierarchization_transactions": len(th),
        "sim_rules": len(r_sim),
        "stat_rules": len(r_stat),
        "stat_rules_unusable": len(index.unusable()),
        "hierarchization_rules": len(h_rules),
        "source_trees": len(src_fts),
        "target_trees": len(tgt_fts),
        "tars": len(tars),
    }
    meta = {"tool_version": __version__, **config.knobs(), **summary.counts}
    model = RuleModel(
        direction=(src_dialect, tgt_dialect),
        r_sim=r_sim,
        r_stat=r_stat,
        h_rules=h_rules,
        src_fts=src_fts,
        tgt_fts=tgt_fts,
        tars=tars,
        seeds=[seed],
        stat_index=index,
        abstraction=spec.to_mapping(),
        training_meta=meta,
    )
    return model.validate(), summary


def train_from_layout(layout: CorpusLayout, direction, config=None, spec=None, source_glob=None, target_glob=None):
    warnings = []
    pairs = load_pairs(layout.paired_dir, direction, source_glob, target_glob, warnings)
    src_only = load_single(layout.src_only_dir, direction[0], warnings)
    tgt_only = load_single(layout.tgt_only_dir, direction[1], warnings)
    model, summary = train(pairs, src_only, tgt_only, direction, config, spec)
    summary.warnings[:0] = warnings
    return model, summary
