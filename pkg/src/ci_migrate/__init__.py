"""Example-based migration of CI configuration files between dialects.

Rules are mined from corpora of paired and single-dialect CI files, then
used to translate a file from one dialect (e.g. Travis CI) to another
(e.g. GitHub Actions) while carrying concrete command parameters across.
"""
__version__ = "0.1.0"

from .abstraction import AbstractionSpec, ParameterStore, abstract_ast  # noqa: E402
from .apriori import (  # noqa: E402
    AssociationRule,
    HierarchizationRule,
    TransactionSet,
    TranslationRule,
    bifurcate_rules,
    build_hierarchization_transactions,
    build_translation_transactions,
    filter_translation_rules,
    mine_apriori,
    mine_hierarchization_rules,
)
from .evaluation import EvalResult, evaluate_corpus, evaluate_texts  # noqa: E402
from .h2 import H2Tree, canonical_form, extract_h2, parse_canonical  # noqa: E402
from .model import (  # noqa: E402
    ModelError,
    ModelIntegrityError,
    ModelInvariantError,
    ModelVersionError,
    RuleModel,
    SeedTree,
    load_model,
    save_model,
)
from .similarity import cosine_similarity  # noqa: E402
from .training import TrainingConfig, train, train_from_layout  # noqa: E402
from .translate import (  # noqa: E402
    TranslationReport,
    TranslationTrace,
    enrich_with_tars,
    hierarchize,
    init_seed,
    insert_h2,
    transfer_parameters,
    translate_file,
    translate_sim,
    translate_stat,
)
from .tree import ConfigAST, Node  # noqa: E402
from .treemine import TAR, FrequentTree, StatRuleIndex, derive_tars, match_stat_rules_to_trees, mine_frequent_trees  # noqa: E402
from .yamlio import EmitError, ParseError, emit_yaml, parse_config  # noqa: E402
