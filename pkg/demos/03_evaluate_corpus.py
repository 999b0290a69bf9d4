"""
Scoring both directions on the bundled corpus
=============================================

Train one model per direction and score every paired file: the share of
blocks translated and the token cosine against the hand-written reference.
GitHub Actions to Travis is the harder direction.
"""
import os

from ci_migrate.corpus import CorpusLayout, load_pairs
from ci_migrate.evaluation import evaluate_corpus
from ci_migrate.training import train_from_layout

CORPUS = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "corpus")
PAIRED = os.path.join(CORPUS, "paired")
SINGLE = {"travis": os.path.join(CORPUS, "travis_only"), "github-actions": os.path.join(CORPUS, "gha_only")}

for direction in [("travis", "github-actions"), ("github-actions", "travis")]:
    src, tgt = direction
    model, _ = train_from_layout(CorpusLayout(PAIRED, SINGLE[src], SINGLE[tgt]), direction)
    # note: the model is scored on the pairs it was trained on
    result = evaluate_corpus(load_pairs(PAIRED, direction), model)
    print(f"== {src} -> {tgt}")
    for row in result.rows:
        project = os.path.relpath(row.file, PAIRED).split(os.sep)[0]
        print(f"{project:28} {row.translation_pct:6.1f}%  cosine {row.cosine:.3f}")
    print("\n".join(result.summary_lines()))
    print()
