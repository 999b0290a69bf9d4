"""
Translating one Travis CI file
==============================

Train a model, translate a small Travis file and read the report: which
blocks were translated, where parameters went and what needs a human.
"""
import json
import os

from ci_migrate.corpus import CorpusLayout
from ci_migrate.training import train_from_layout
from ci_migrate.translate import translate_file

CORPUS = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "corpus")
layout = CorpusLayout(
    os.path.join(CORPUS, "paired"),
    os.path.join(CORPUS, "travis_only"),
    os.path.join(CORPUS, "gha_only"),
)
model, _ = train_from_layout(layout, ("travis", "github-actions"))

SOURCE = """\
language: java
jdk:
  - openjdk11
script:
  - mvn clean verify -B
branches:
  only:
    - main
notifications:
  email: false
"""

text, report = translate_file(SOURCE, model, source_path="demo/.travis.yml")
print(text)

# Enrichment adds steps that often appear together in the target corpus.
# Here that includes a ./gradlew step in a Maven build: the mini-corpus is
# small, so co-occurrence is a hint to review, not a guarantee.

# per-block status: TranslatedSim, TranslatedStat or Untranslated
for entry in report.trace.entries:
    print(f"{entry.status:15} {entry.canonical}")

# command arguments are cut out before matching and written back afterwards;
# anything without a home is listed rather than dropped
print("placed:", [p["text"] for p in report.placed])
print("unplaced:", [u["text"] for u in report.unplaced])

# the three kinds of manual follow-up
print(json.dumps(report.failures, indent=2))
print("translation %:", report.translation_pct, "exit code:", report.exit_code)
