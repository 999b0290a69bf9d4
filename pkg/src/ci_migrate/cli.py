"""Command-line interface: ``ci-migrate {train,translate,eval,inspect-rules,dump-trees}``.

Exit status: 0 success, 2 partial translation (some H2 trees untranslated),
1 error. Log level comes from ``CI_MIGRATE_LOG_LEVEL`` (default WARNING).
"""
from __future__ import annotations

import argparse
import logging
import os
import sys

from .abstraction import AbstractionSpec
from .apriori import DEFAULT_CARTESIAN_CAP, DEFAULT_MIN_SUPPORT, DEFAULT_SIM_THRESHOLD, dump_rules
from .corpus import CorpusError, CorpusLayout, load_pairs
from .evaluation import evaluate_corpus
from .model import ModelError, load_model, save_model
from .training import TrainingConfig, TrainingError, train_from_layout
from .translate import EXIT_ERROR, EXIT_OK, TranslationError, translate_file
from .tree import GITHUB_ACTIONS, TRAVIS
from .treemine import DEFAULT_MIN_SUPPORT as DEFAULT_TREE_SUPPORT, DEFAULT_TAR_BRANCH_THRESHOLD, dump_trees
from .yamlio import ParseError

LOG_ENV = "CI_MIGRATE_LOG_LEVEL"

ALIASES = {"travis": TRAVIS, "travis-ci": TRAVIS, "gha": GITHUB_ACTIONS, "github": GITHUB_ACTIONS,
           "github-actions": GITHUB_ACTIONS}


def parse_direction(text):
    """``travis:gha`` -> ("travis", "github-actions"); unknown names pass through."""
    parts = text.replace("->", ":").split(":")
    if len(parts) != 2 or not all(parts):
        raise argparse.ArgumentTypeError(f"direction must look like SOURCE:TARGET, got {text!r}")
    return tuple(ALIASES.get(p.strip().lower(), p.strip()) for p in parts)


def _fraction(text):
    value = float(text)
    if not 0 < value <= 1:
        raise argparse.ArgumentTypeError(f"expected a value in (0, 1], got {text}")
    return value


def build_parser():
    p = argparse.ArgumentParser(prog="ci-migrate", description="Mine CI migration rules and translate CI configuration files.")
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("train", help="mine a model from a corpus")
    t.add_argument("--paired", required=True, help="directory of project folders holding a source and target file")
    t.add_argument("--src-only", help="directory of source-dialect files")
    t.add_argument("--tgt-only", help="directory of target-dialect files")
    t.add_argument("--direction", type=parse_direction, default=(TRAVIS, GITHUB_ACTIONS))
    t.add_argument("-o", "--output", required=True, help="model file to write")
    t.add_argument("--summary", help="write the training summary here (default: stderr)")
    t.add_argument("--min-support-rules", type=_fraction, default=DEFAULT_MIN_SUPPORT)
    t.add_argument("--min-support-trees", type=_fraction, default=DEFAULT_TREE_SUPPORT)
    t.add_argument("--sim-threshold", type=float, default=DEFAULT_SIM_THRESHOLD)
    t.add_argument("--tar-branch-threshold", type=_fraction, default=DEFAULT_TAR_BRANCH_THRESHOLD)
    t.add_argument("--cartesian-cap", type=int, default=DEFAULT_CARTESIAN_CAP)
    t.add_argument("--seed", type=int, default=0, help="RNG seed for transaction sampling")
    t.add_argument("--seed-min-support", type=_fraction, default=0.5)
    t.add_argument("--time-budget", type=float, help="seconds per frequent-tree mining run")
    t.add_argument("--abstraction", help="abstraction rules file (default: bundled rules)")
    t.add_argument("--source-glob", help="select source files by path glob instead of dialect detection")
    t.add_argument("--target-glob", help="select target files by path glob instead of dialect detection")

    x = sub.add_parser("translate", help="translate one file")
    x.add_argument("model")
    x.add_argument("input")
    x.add_argument("-o", "--output", help="output YAML (default: stdout)")
    x.add_argument("--report", help="write the JSON report here")
    x.add_argument("--direction", type=parse_direction, help="fail unless the model matches this direction")

    e = sub.add_parser("eval", help="translate and score a paired test directory")
    e.add_argument("model")
    e.add_argument("paired")
    e.add_argument("-o", "--output", help="results table (default: stdout)")
    e.add_argument("--source-glob")
    e.add_argument("--target-glob")

    r = sub.add_parser("inspect-rules", help="list the rules in a model")
    r.add_argument("model")
    r.add_argument("--set", choices=("sim", "stat", "hier", "all"), default="all")
    r.add_argument("--limit", type=int)

    d = sub.add_parser("dump-trees", help="print the frequent trees in a model")
    d.add_argument("model")
    d.add_argument("--side", choices=("src", "tgt", "both"), default="both")
    return p


def _write(path, text):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_train(args):
    config = TrainingConfig(
        min_support_rules=args.min_support_rules,
        min_support_trees=args.min_support_trees,
        sim_threshold=args.sim_threshold,
        tar_branch_threshold=args.tar_branch_threshold,
        cartesian_cap=args.cartesian_cap,
        seed=args.seed,
        seed_min_support=args.seed_min_support,
        time_budget=args.time_budget,
    )
    spec = AbstractionSpec.load(args.abstraction) if args.abstraction else None
    layout = CorpusLayout(args.paired, args.src_only, args.tgt_only)
    model, summary = train_from_layout(layout, args.direction, config, spec, args.source_glob, args.target_glob)
    save_model(model, args.output)
    if args.summary:
        _write(args.summary, summary.to_text())
    else:
        sys.stderr.write(summary.to_text())
    return EXIT_OK


def cmd_translate(args):
    model = load_model(args.model)
    with open(args.input, encoding="utf-8") as fh:
        text = fh.read()
    out, report = translate_file(text, model, args.direction, source_path=args.input)
    _write(args.output, out)
    if args.report:
        _write(args.report, report.to_json())
    for e in report.untranslated:
        sys.stderr.write(f"untranslated\t{e.canonical}\n")
    pct = report.translation_pct
    sys.stderr.write(f"translation_pct\t{pct if isinstance(pct, str) else f'{pct:.2f}'}\n")
    return report.exit_code


def cmd_eval(args):
    model = load_model(args.model)
    pairs = load_pairs(args.paired, model.direction, args.source_glob, args.target_glob)
    result = evaluate_corpus(pairs, model)
    _write(args.output, result.to_tsv())
    stream = sys.stdout if args.output else sys.stderr
    for line in result.summary_lines():
        stream.write(line + "\n")
    return EXIT_OK


def cmd_inspect_rules(args):
    model = load_model(args.model)
    chosen = {"sim": model.r_sim, "stat": model.r_stat, "hier": model.h_rules}
    rules = [r for name in ("sim", "stat", "hier") if args.set in (name, "all") for r in chosen[name]]
    if args.limit is not None:
        rules = rules[:args.limit]
    sys.stdout.write("lhs\trhs\tsupport\tconfidence\tlift\tconf/supp/lift products\tclass\n")
    sys.stdout.write(dump_rules(rules))
    return EXIT_OK


def cmd_dump_trees(args):
    model = load_model(args.model)
    trees = (model.src_fts if args.side in ("src", "both") else []) + (model.tgt_fts if args.side in ("tgt", "both") else [])
    sys.stdout.write(dump_trees(trees))
    return EXIT_OK


COMMANDS = {
    "train": cmd_train,
    "translate": cmd_translate,
    "eval": cmd_eval,
    "inspect-rules": cmd_inspect_rules,
    "dump-trees": cmd_dump_trees,
}


def main(argv=None):
    logging.basicConfig(level=os.environ.get(LOG_ENV, "WARNING").upper(), format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ParseError as exc:
        sys.stderr.write(f"error: cannot parse input: {exc}\n")
    except (ModelError, TranslationError, TrainingError, CorpusError, OSError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
