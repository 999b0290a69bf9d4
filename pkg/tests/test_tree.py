import os

import pytest
import yaml
from hypothesis import given, settings, strategies as st

from ci_migrate.tree import (
    MAPPING_KEY,
    SCALAR,
    SEQUENCE_ITEM,
    decode_leaf,
    encode_leaf,
    fold,
    render_pattern,
    to_pattern,
    trim_pattern,
    unfold,
)
from ci_migrate.yamlio import EmitError, ParseError, emit_yaml, parse_config

from helpers import PAIRED, M, S, all_corpus_files, ast_of

P01_TRAVIS = os.path.join(PAIRED, "p01-maven-multi", ".travis.yml")


def read(path):
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def test_p01_node_count_matches_hand_count():
    # counted line by line: root 1, language 2, dist 2, jdk 5, cache 4, env 4,
    # branches 6, before_install 3, install 2, script 5, after_success 3,
    # notifications 9
    assert parse_config(read(P01_TRAVIS)).node_count() == 46


def test_small_document_shape():
    ast = parse_config("a: 1\nb:\n  - x\n  - y: 2\n")
    assert to_pattern(ast.root) == (
        (MAPPING_KEY, "<root>"),
        (
            ((MAPPING_KEY, "a"), (((SCALAR, "1"), ()),)),
            ((MAPPING_KEY, "b"), (
                ((SEQUENCE_ITEM, "-"), (((SCALAR, "x"), ()),)),
                ((SEQUENCE_ITEM, "-"), (((MAPPING_KEY, "y"), (((SCALAR, "2"), ()),)),)),
            )),
        ),
    )


def test_fold_keeps_root_keys_and_folds_deeper_leaves():
    ast = parse_config("a: 1\nb:\n  - x\n  - y: 2\n    z: [3]\nc:\n  d: e\n")
    text = render_pattern(to_pattern(fold(ast).root))
    assert text.splitlines() == [
        "MappingKey(<root>)",
        "  MappingKey(a)",
        "    Scalar(1)",
        "  MappingKey(b)",
        "    Scalar(- x)",
        "    SequenceItem(-)",
        "      Scalar(y: 2)",
        "      MappingKey(z)",
        "        Scalar(- 3)",
        "  MappingKey(c)",
        "    Scalar(d: e)",
    ]


def test_fold_unfold_restores_structure():
    for path in all_corpus_files():
        ast = parse_config(read(path))
        assert unfold(fold(ast)).structure() == ast.structure(), path


@pytest.mark.parametrize("parts", [
    dict(value="x"),
    dict(value="x", key="k"),
    dict(value="x", item=True),
    dict(value="a: b", key="k", item=True),
    dict(value=None, key="k"),
    dict(value=None, key="k", empty="[]"),
    dict(value=None, item=True),
    dict(value="- tricky", key="odd: key"),
    dict(value='"quoted"'),
])
def test_leaf_label_round_trip(parts):
    label = encode_leaf(**parts)
    got = decode_leaf(label)
    assert got.value == parts.get("value")
    assert got.key == parts.get("key")
    assert got.item == parts.get("item", False)


def test_trim_pattern_drops_empty_containers():
    pattern = to_pattern(M("<root>", M("install"), M("x", S("1")), M("steps", M("with"))))
    assert trim_pattern(pattern) == (("MappingKey", "<root>"), ((("MappingKey", "x"), ((("Scalar", "1"), ()),)),))


def test_every_corpus_file_round_trips():
    files = all_corpus_files()
    assert len(files) >= 30
    for path in files:
        text = read(path)
        first = emit_yaml(parse_config(text))
        assert parse_config(first).structure() == parse_config(text).structure(), path
        assert emit_yaml(parse_config(first)) == first, path


def test_parse_error_has_position():
    with pytest.raises(ParseError) as info:
        parse_config("a: [1, 2\nb: 3\n")
    assert info.value.line is not None


def test_duplicate_keys_rejected():
    with pytest.raises(ParseError):
        parse_config("a: 1\na: 2\n")


def test_multi_document_rejected():
    with pytest.raises(ParseError):
        parse_config("a: 1\n---\nb: 2\n")


def test_anchors_and_merge_keys_are_expanded():
    ast = parse_config("base: &b\n  x: 1\nuse:\n  <<: *b\n  y: 2\n")
    # explicit keys first, merged keys after
    assert emit_yaml(ast) == "base:\n  x: 1\nuse:\n  y: 2\n  x: 1\n"
    assert [c.label for c in ast.root.children[1].children] == ["y", "x"]


def test_emit_rejects_duplicate_keys():
    ast = ast_of(M("a", S("1")), M("a", S("2")))
    with pytest.raises(EmitError):
        emit_yaml(ast)


def test_empty_document_emits_empty_mapping():
    assert emit_yaml(parse_config("# only a comment\n")) == "{}\n"


# ---------------------------------------------------------------------------
# properties

TEXT = st.text(alphabet=st.characters(min_codepoint=32, max_codepoint=126), max_size=12)
KEYS = TEXT.filter(lambda k: k != "<<")
VALUES = st.recursive(
    st.one_of(TEXT, st.none(), st.integers(-5, 5), st.booleans()),
    lambda inner: st.one_of(st.lists(inner, max_size=4), st.dictionaries(KEYS, inner, max_size=4)),
    max_leaves=20,
)


@settings(max_examples=200, deadline=None)
@given(st.dictionaries(KEYS, VALUES, min_size=1, max_size=5))
def test_parse_emit_round_trip(data):
    text = yaml.safe_dump(data, sort_keys=False)
    ast = parse_config(text)
    emitted = emit_yaml(ast)
    assert parse_config(emitted).structure() == ast.structure()
    assert emit_yaml(parse_config(emitted)) == emitted


@settings(max_examples=200, deadline=None)
@given(st.dictionaries(KEYS, VALUES, min_size=1, max_size=5))
def test_fold_is_invertible(data):
    ast = parse_config(yaml.safe_dump(data, sort_keys=False))
    assert unfold(fold(ast)).structure() == ast.structure()
