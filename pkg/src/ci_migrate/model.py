"""Trained rule bundles and their on-disk format.

A model file is UTF-8 JSON::

    {"format": "ci-migrate-model", "version": 1,
     "checksum": "sha256:<hex>", "body": {...}}

``checksum`` is the SHA-256 of ``body`` serialized with sorted keys, compact
separators and ``ensure_ascii=False``. Trees are stored in the bracket
encoding of :func:`ci_migrate.h2.encode_tree`; H2 trees use their canonical
form. Body sections: ``direction``, ``r_sim``, ``r_stat``, ``h_rules``,
``src_fts``, ``tgt_fts``, ``tars``, ``seeds``, ``stat_index``,
``abstraction``, ``training_meta``.
"""
from __future__ import annotations

import dataclasses
import hashlib
import json
import os
import tempfile
from dataclasses import dataclass, field

from . import __version__
from .apriori import HierarchizationRule, TranslationRule
from .h2 import decode_tree, encode_tree
from .treemine import TAR, FrequentTree, StatRuleIndex

FORMAT = "ci-migrate-model"
VERSION = 1


class ModelError(Exception):
    pass


class ModelVersionError(ModelError):
    pass


class ModelIntegrityError(ModelError):
    pass


class ModelInvariantError(ModelError):
    pass


@dataclass
class SeedTree:
    dialect: str
    tree: tuple  # pattern


@dataclass
class RuleModel:
    direction: tuple  # (source dialect, target dialect)
    r_sim: list = field(default_factory=list)
    r_stat: list = field(default_factory=list)
    h_rules: list = field(default_factory=list)
    src_fts: list = field(default_factory=list)
    tgt_fts: list = field(default_factory=list)
    tars: list = field(default_factory=list)
    seeds: list = field(default_factory=list)
    stat_index: StatRuleIndex = field(default_factory=StatRuleIndex)
    abstraction: dict = field(default_factory=dict)
    training_meta: dict = field(default_factory=dict)

    # lookup tables are built lazily and never change: a model is read-only
    # once training has produced it

    def _cached(self, name, build):
        cache = self.__dict__.setdefault("_cache", {})
        if name not in cache:
            cache[name] = build()
        return cache[name]

    def _rules(self):
        return self._cached("rules", lambda: {r.rule_id: r for r in self.r_sim + self.r_stat})

    def rule(self, rule_id):
        return self._rules().get(rule_id)

    def tree(self, ft_id):
        return self._cached("trees", lambda: {t.ft_id: t for t in self.src_fts + self.tgt_fts}).get(ft_id)

    def _by_lhs(self, name, rules, attr):
        def build():
            out = {}
            for r in sorted(rules, key=lambda r: r.rank_key()):
                out.setdefault(getattr(r, attr), []).append(r)
            return out
        return self._cached(name, build)

    def sim_rules_for(self, canonical):
        """Sim rules whose LHS is ``canonical``, best first."""
        return self._by_lhs("sim", self.r_sim, "lhs").get(canonical, [])

    def stat_rules_for(self, canonical):
        return self._by_lhs("stat", self.r_stat, "lhs").get(canonical, [])

    def h_rules_for(self, canonical):
        return self._by_lhs("hier", self.h_rules, "child").get(canonical, [])

    def validate(self):
        rules = self._rules()
        if len(rules) != len(self.r_sim) + len(self.r_stat):
            raise ModelInvariantError("duplicate translation rule ids")
        src_ids = {t.ft_id for t in self.src_fts}
        tgt_ids = {t.ft_id for t in self.tgt_fts}
        if src_ids & tgt_ids:
            raise ModelInvariantError("source and target frequent trees share ids")
        stat_ids = {r.rule_id for r in self.r_stat}
        for rid, (srcs, tgts) in self.stat_index.entries.items():
            if rid not in stat_ids:
                raise ModelInvariantError(f"stat_index references unknown rule {rid!r}")
            for t in srcs:
                if t not in src_ids:
                    raise ModelInvariantError(f"stat_index rule {rid!r} references unknown source tree {t!r}")
            for t in tgts:
                if t not in tgt_ids:
                    raise ModelInvariantError(f"stat_index rule {rid!r} references unknown target tree {t!r}")
        for tar in self.tars:
            if tar.source_tree not in tgt_ids:
                raise ModelInvariantError(f"TAR references unknown target tree {tar.source_tree!r}")
        return self

    def structure(self):
        """Plain-data view used for equality checks."""
        return to_body(self)


def _fts(trees):
    return [{"id": t.ft_id, "support": t.support, "dialect": t.dialect, "tree": encode_tree(t.tree)} for t in trees]


def to_body(model: RuleModel):
    return {
        "direction": list(model.direction),
        "r_sim": [dataclasses.asdict(r) for r in model.r_sim],
        "r_stat": [dataclasses.asdict(r) for r in model.r_stat],
        "h_rules": [dataclasses.asdict(r) for r in model.h_rules],
        "src_fts": _fts(model.src_fts),
        "tgt_fts": _fts(model.tgt_fts),
        "tars": [
            {"source_tree": t.source_tree, "root": list(t.root), "antecedent": list(t.antecedent),
             "consequent": list(t.consequent), "support": t.support}
            for t in model.tars
        ],
        "seeds": [{"dialect": s.dialect, "tree": encode_tree(s.tree)} for s in model.seeds],
        "stat_index": {rid: {"src": list(s), "tgt": list(t)} for rid, (s, t) in sorted(model.stat_index.entries.items())},
        "abstraction": model.abstraction,
        "training_meta": model.training_meta,
    }


def _read_fts(rows):
    return [FrequentTree(decode_tree(r["tree"]), r["support"], r["dialect"], "", r["id"]) for r in rows]


def from_body(body) -> RuleModel:
    src = _read_fts(body["src_fts"])
    tgt = _read_fts(body["tgt_fts"])
    for t in src + tgt:
        t.root_label = t.tree[0][1]
    return RuleModel(
        direction=tuple(body["direction"]),
        r_sim=[TranslationRule(**r) for r in body["r_sim"]],
        r_stat=[TranslationRule(**r) for r in body["r_stat"]],
        h_rules=[HierarchizationRule(**r) for r in body["h_rules"]],
        src_fts=src,
        tgt_fts=tgt,
        tars=[TAR(t["source_tree"], tuple(t["root"]), tuple(t["antecedent"]), tuple(t["consequent"]), t["support"])
              for t in body["tars"]],
        seeds=[SeedTree(s["dialect"], decode_tree(s["tree"])) for s in body["seeds"]],
        stat_index=StatRuleIndex({rid: (tuple(v["src"]), tuple(v["tgt"])) for rid, v in body["stat_index"].items()}),
        abstraction=body["abstraction"],
        training_meta=body["training_meta"],
    )


def _checksum(body):
    raw = json.dumps(body, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return "sha256:" + hashlib.sha256(raw.encode("utf-8")).hexdigest()


def dumps_model(model: RuleModel) -> str:
    body = to_body(model)
    doc = {"format": FORMAT, "version": VERSION, "tool_version": __version__, "checksum": _checksum(body), "body": body}
    return json.dumps(doc, sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def save_model(model: RuleModel, path):
    """Write ``model`` to ``path`` atomically (temp file + rename)."""
    model.validate()
    text = dumps_model(model)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".model-", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def loads_model(text: str) -> RuleModel:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelIntegrityError(f"model file is not valid JSON (truncated or corrupt): {exc}") from None
    if not isinstance(doc, dict) or doc.get("format") != FORMAT:
        raise ModelIntegrityError("not a ci-migrate model file")
    if doc.get("version") != VERSION:
        raise ModelVersionError(f"unsupported model version: expected {VERSION}, found {doc.get('version')!r}")
    body = doc.get("body")
    if not isinstance(body, dict) or doc.get("checksum") != _checksum(body):
        raise ModelIntegrityError("model checksum mismatch")
    try:
        model = from_body(body)
    except (KeyError, TypeError, ValueError) as exc:
        raise ModelIntegrityError(f"malformed model body: {exc}") from None
    return model.validate()


def load_model(path) -> RuleModel:
    with open(path, encoding="utf-8") as fh:
        return loads_model(fh.read())
