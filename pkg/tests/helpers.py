"""Small builders shared by the test modules."""
import os

from ci_migrate.apriori import HierarchizationRule
from ci_migrate.tree import MAPPING_KEY, ROOT_LABEL, SCALAR, SEQUENCE_ITEM, ConfigAST, Node, number_nodes

PKG = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
CORPUS = os.path.join(PKG, "corpus")
PAIRED = os.path.join(CORPUS, "paired")
TRAVIS_ONLY = os.path.join(CORPUS, "travis_only")
GHA_ONLY = os.path.join(CORPUS, "gha_only")
FIXTURES = os.path.join(PKG, "tests", "fixtures")


def M(label, *kids):
    return Node(MAPPING_KEY, label, list(kids))


def I(*kids):
    return Node(SEQUENCE_ITEM, "-", list(kids))


def S(label):
    return Node(SCALAR, label)


def ast_of(*kids):
    root = M(ROOT_LABEL, *kids)
    number_nodes(root)
    return ConfigAST(root, "github-actions", folded=True)


def hrule(child, parent_label, conf=1.0, parent_kind=MAPPING_KEY):
    """A hierarchization rule with every score set from one confidence."""
    return HierarchizationRule(child, parent_label, parent_kind, conf, conf, 1.0, conf, conf, 1.0, conf * conf, conf * conf, 1.0)


def find_label(ast, label):
    return next(n for n in ast.root.iter() if n.label == label)


def all_corpus_files():
    out = []
    for here, dirs, files in os.walk(CORPUS):
        dirs.sort()
        out += [os.path.join(here, f) for f in sorted(files) if f.endswith((".yml", ".yaml"))]
    return sorted(out)
