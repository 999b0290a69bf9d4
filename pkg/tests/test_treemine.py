import random

import pytest
from hypothesis import given, settings, strategies as st

from ci_migrate.apriori import TranslationRule
from ci_migrate.h2 import parse_canonical
from ci_migrate.tree import contains_anywhere, contains_at
from ci_migrate.treemine import (
    FrequentTree,
    antecedent_choices,
    derive_tars,
    match_stat_rules_to_trees,
    mine_frequent_trees,
    mine_patterns,
)
from ci_migrate.yamlio import parse_config

from oracles import enumerate_rooted, mine_oracle, random_corpus, random_tree


def node(label, *kids):
    return (("MappingKey", label), tuple(kids))


def leaf(label):
    return (("Scalar", label), ())


def mined(patterns, support):
    return dict(mine_patterns(patterns, support)[0])


def test_identical_trees_return_whole_tree_once():
    t = node("r", node("a", leaf("x")), leaf("y"))
    got = mined([t] * 10, 0.5)
    assert got[t] == 1.0
    assert node("r", leaf("y")) not in got
    # the nested intermediate node forms its own group
    assert got[node("a", leaf("x"))] == 1.0
    assert len(got) == 2


def test_six_and_four_example():
    ab = node("r", leaf("a"), leaf("b"))
    ac = node("r", leaf("a"), leaf("c"))
    got = mined([ab] * 6 + [ac] * 4, 0.5)
    assert got == {ab: 0.6}
    assert got == mine_oracle([ab] * 6 + [ac] * 4, 0.5)


def test_full_support_with_only_root_shared():
    t1 = node("r", leaf("a"))
    t2 = node("r", leaf("b"))
    assert mined([t1, t2], 1.0) == {} == mine_oracle([t1, t2], 1.0)


def test_empty_corpus():
    assert mine_patterns([], 0.5) == ([], True)
    assert mine_frequent_trees([], 0.5) == []


def test_ordered_induced_semantics():
    big = node("r", node("a", leaf("x")), leaf("y"))
    assert contains_at(big, node("r", leaf("y")))
    assert not contains_at(big, node("r", leaf("y"), node("a")))  # order matters
    assert not contains_at(big, node("r", leaf("x")))  # no skipping levels
    assert contains_anywhere(big, node("a", leaf("x")))


def test_matches_enumeration_oracle_on_random_corpora():
    rng = random.Random(11)
    for _ in range(50):
        corpus = random_corpus(rng)
        support = rng.choice([0.2, 0.3, 0.5, 0.75, 1.0])
        assert mined(corpus, support) == pytest.approx(mine_oracle(corpus, support), abs=1e-12)


def test_enumeration_oracle_size():
    # prod(1 + rooted(child)) for r(a(x), y): a has 2 rooted patterns, y has 1
    t = node("r", node("a", leaf("x")), leaf("y"))
    assert len(enumerate_rooted(t)) == (1 + 2) * (1 + 1)


def test_time_budget_marks_incomplete():
    rng = random.Random(3)
    corpus = [random_tree(rng) for _ in range(12)]
    _, complete = mine_patterns(corpus, 0.1, time_budget=1e-9)
    assert complete is False


TREES = st.integers(0, 10_000).map(lambda s: random_corpus(random.Random(s)))


@settings(max_examples=25, deadline=None)
@given(TREES, st.sampled_from([0.25, 0.5, 1.0]))
def test_maximality(corpus, support):
    got = mined(corpus, support)
    for p in got:
        for q in got:
            if p != q and p[0] == q[0]:
                assert not contains_at(q, p)


@settings(max_examples=25, deadline=None)
@given(TREES, st.sampled_from([0.25, 0.5]), st.sampled_from([0.5, 0.75, 1.0]))
def test_higher_support_patterns_are_covered_at_lower_support(corpus, low, high):
    lo = mined(corpus, low)
    for p in mined(corpus, high):
        assert any(q[0] == p[0] and contains_at(q, p) for q in lo)


# ---------------------------------------------------------------------------
# tree association rules


def test_antecedent_choices():
    assert antecedent_choices(1) == []
    assert antecedent_choices(2) == [(0,), (1,)]
    assert len(antecedent_choices(5)) == 10  # C(5, 3)
    assert antecedent_choices(8) == sorted(tuple(sorted((s + i) % 8 for i in range(4))) for s in range(8))


def test_two_branch_tars():
    ft = FrequentTree(node("steps", leaf("- uses: setup-java"), leaf("- run: CMD:mvn")), 0.5, ft_id="tgt:0")
    tars = derive_tars([ft])
    assert [(t.antecedent, t.consequent) for t in tars] == [((0,), (1,)), ((1,), (0,))]


def test_single_branch_gives_no_tar():
    assert derive_tars([FrequentTree(node("a", leaf("x")), 1.0, ft_id="t:0")]) == []


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 10))
def test_tar_completeness(b):
    ft = FrequentTree(node("r", *[leaf(str(i)) for i in range(b)]), 1.0, ft_id="t:0")
    for tar in derive_tars([ft]):
        assert sorted(tar.antecedent + tar.consequent) == list(range(b))
        assert tar.consequent


def test_stat_index_matches_brute_force():
    src = mine_frequent_trees([parse_config("language: java\njdk: [openjdk8]\n")] * 3, 0.5, "travis", prefix="src")
    tgt = mine_frequent_trees([parse_config("jobs:\n  b:\n    steps:\n      - run: x\n")] * 3, 0.5, "github-actions", prefix="tgt")
    rules = []
    for i, (lhs, rhs) in enumerate([
        ("MappingKey(language)[Scalar(java)]", "MappingKey(steps)[Scalar(- run: x)]"),
        ("MappingKey(language)[Scalar(python)]", "MappingKey(steps)[Scalar(- run: x)]"),
        ("MappingKey(jdk)[Scalar(- openjdk8)]", "MappingKey(steps)[Scalar(- run: y)]"),
    ]):
        rules.append(TranslationRule(lhs, rhs, *([0.1] * 10), rule_id=f"stat:{i}"))
    index = match_stat_rules_to_trees(rules, src, tgt)
    for r in rules:
        want_src = tuple(t.ft_id for t in src if contains_anywhere(t.tree, parse_canonical(r.lhs).pattern()))
        want_tgt = tuple(t.ft_id for t in tgt if contains_anywhere(t.tree, parse_canonical(r.rhs).pattern()))
        assert index.entries[r.rule_id] == (want_src, want_tgt)
    assert index.entries["stat:0"][0] and index.entries["stat:0"][1]
    assert index.unusable() == ["stat:1", "stat:2"]
