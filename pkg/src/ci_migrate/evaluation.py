"""Scoring generated files against developer-written references.

The results table is tab-separated with one header row::

    file  reference  translation_pct  cosine  runtime_ms  crystalbleu  error

``translation_pct`` is a percentage or ``empty`` (no H2 trees in the
source); ``crystalbleu`` is always blank and reserved for an external
scorer; failed files have blank scores and a message in ``error``.
"""
from __future__ import annotations

import statistics
import time
from dataclasses import dataclass, field
from typing import Optional

from .similarity import cosine_similarity
from .translate import EMPTY, translate_file

COLUMNS = ("file", "reference", "translation_pct", "cosine", "runtime_ms", "crystalbleu", "error")


@dataclass
class EvalRow:
    file: str
    reference: str
    translation_pct: object = None  # float, "empty", or None after an error
    cosine: Optional[float] = None
    runtime_ms: Optional[float] = None
    error: Optional[str] = None
    output: Optional[str] = field(default=None, repr=False)
    report: object = field(default=None, repr=False)

    def cells(self):
        def num(v):
            return "" if v is None else (v if isinstance(v, str) else f"{v:.6f}")
        return [self.file, self.reference, num(self.translation_pct), num(self.cosine),
                num(self.runtime_ms), "", (self.error or "").replace("\t", " ").replace("\n", " ")]


def _agg(values):
    if not values:
        return {"mean": None, "median": None, "n": 0}
    return {"mean": statistics.fmean(values), "median": statistics.median(values), "n": len(values)}


@dataclass
class EvalResult:
    rows: list = field(default_factory=list)

    def pct_values(self):
        return [r.translation_pct for r in self.rows if isinstance(r.translation_pct, float)]

    def cosine_values(self):
        return [r.cosine for r in self.rows if r.cosine is not None]

    def aggregates(self):
        """Mean / median of each score over the rows that have one."""
        return {
            "translation_pct": _agg(self.pct_values()),
            "cosine": _agg(self.cosine_values()),
            "runtime_ms": _agg([r.runtime_ms for r in self.rows if r.runtime_ms is not None]),
            "files": len(self.rows),
            "errors": sum(1 for r in self.rows if r.error),
            "empty": sum(1 for r in self.rows if r.translation_pct == EMPTY),
        }

    def to_tsv(self):
        lines = ["\t".join(COLUMNS)]
        lines += ["\t".join(r.cells()) for r in self.rows]
        return "\n".join(lines) + "\n"

    def summary_lines(self):
        agg = self.aggregates()
        out = []
        for key in ("translation_pct", "cosine", "runtime_ms"):
            a = agg[key]
            if a["n"]:
                out.append(f"{key}\tmean={a['mean']:.4f}\tmedian={a['median']:.4f}\tn={a['n']}")
            else:
                out.append(f"{key}\tmean=-\tmedian=-\tn=0")
        out.append(f"files\t{agg['files']}\terrors={agg['errors']}\tempty={agg['empty']}")
        return out


def evaluate_texts(items, model, clock=time.perf_counter):
    """Score ``[(name, source_text, reference_text)]``; failures never abort the run."""
    result = EvalResult()
    for name, source, reference in items:
        row = EvalRow(name, name)
        start = clock()
        try:
            text, report = translate_file(source, model, source_path=name)
        except Exception as exc:  # recorded per file
            row.error = f"{type(exc).__name__}: {exc}"
        else:
            row.output, row.report = text, report
            row.translation_pct = report.translation_pct
            row.cosine = cosine_similarity(text, reference)
        row.runtime_ms = (clock() - start) * 1000.0
        result.rows.append(row)
    return result


def evaluate_corpus(pairs, model, clock=time.perf_counter):
    """Translate each (source path, reference path) pair and score it."""
    result = EvalResult()
    for src, ref in pairs:
        src_path = getattr(src, "path", src)
        ref_path = getattr(ref, "path", ref)
        try:
            with open(src_path, encoding="utf-8") as fh:
                source = fh.read()
            with open(ref_path, encoding="utf-8") as fh:
                reference = fh.read()
        except OSError as exc:
            result.rows.append(EvalRow(str(src_path), str(ref_path), error=f"{type(exc).__name__}: {exc}"))
            continue
        row = evaluate_texts([(str(src_path), source, reference)], model, clock).rows[0]
        row.reference = str(ref_path)
        result.rows.append(row)
    return result
