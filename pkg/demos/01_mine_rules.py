"""
Mining migration rules from example pairs
=========================================

Train a Travis CI to GitHub Actions model on the bundled corpus and look at
what it learned: translation rules, parent rules and frequent trees.
"""
import os

from ci_migrate.apriori import dump_rules
from ci_migrate.corpus import CorpusLayout
from ci_migrate.training import TrainingConfig, train_from_layout
from ci_migrate.treemine import dump_trees

CORPUS = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "corpus")
layout = CorpusLayout(
    os.path.join(CORPUS, "paired"),
    os.path.join(CORPUS, "travis_only"),
    os.path.join(CORPUS, "gha_only"),
)

# default knobs; every threshold lives on TrainingConfig
model, summary = train_from_layout(layout, ("travis", "github-actions"), TrainingConfig())
print(summary.to_text())

# Rules whose two sides share most leaf tokens are "sim" rules. They are
# ranked by the product of the rule's confidence and its flipped rule's.
print("top similarity rules")
print(dump_rules(model.r_sim[:8]))

# The rest only co-occur; they are applied when a frequent tree backs them up.
print("top statistical rules")
print(dump_rules(model.r_stat[:5]))

# Parent rules say where a target block usually hangs (steps under build, ...).
print("top parent rules")
print(dump_rules(model.h_rules[:8]))

# Frequent target trees feed the enrichment step.
print("frequent target trees")
print(dump_trees(model.tgt_fts[:3]))
