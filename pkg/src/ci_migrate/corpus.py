"""Reading training and evaluation corpora from local directories.

Layout::

    paired/<project>/.travis.yml
    paired/<project>/.github/workflows/<name>.yml   (one or more)
    travis_only/*.yml
    gha_only/*.yml

Each project directory holds exactly one file of the source dialect; a
project with several target files yields one pair per target file.
"""
from __future__ import annotations

import fnmatch
import logging
import os
from dataclasses import dataclass
from typing import Optional

from .dialects import detect_dialect

log = logging.getLogger(__name__)

YAML_SUFFIXES = (".yml", ".yaml")


class CorpusError(Exception):
    pass


@dataclass
class CorpusLayout:
    paired_dir: str
    src_only_dir: Optional[str] = None
    tgt_only_dir: Optional[str] = None


@dataclass(frozen=True)
class CorpusFile:
    path: str
    dialect: Optional[str]

    def read(self) -> str:
        with open(self.path, encoding="utf-8") as fh:
            return fh.read()


def yaml_files(directory):
    """All YAML files below ``directory`` (hidden folders included), sorted."""
    out = []
    for here, dirs, files in os.walk(directory):
        dirs.sort()
        out.extend(os.path.join(here, f) for f in sorted(files) if f.endswith(YAML_SUFFIXES))
    return sorted(out)


def _pick(paths, base, dialect, glob):
    if glob is not None:
        return [p for p in paths if fnmatch.fnmatch(os.path.relpath(p, base), glob)]
    return [p for p in paths if detect_dialect(p) == dialect]


def load_pairs(paired_dir, direction, source_glob=None, target_glob=None, warnings=None):
    """[(source CorpusFile, target CorpusFile)] from a paired directory.

    Files are assigned to a side by dialect detection, or by the given glob
    patterns (matched against the path relative to the project directory).
    Projects without exactly one source file, or without a target file, are
    skipped with a warning.
    """
    if not os.path.isdir(paired_dir):
        raise CorpusError(f"paired directory not found: {paired_dir}")
    warnings = warnings if warnings is not None else []
    src_dialect, tgt_dialect = direction
    pairs = []
    for name in sorted(os.listdir(paired_dir)):
        project = os.path.join(paired_dir, name)
        if not os.path.isdir(project):
            continue
        files = yaml_files(project)
        srcs = _pick(files, project, src_dialect, source_glob)
        tgts = [p for p in _pick(files, project, tgt_dialect, target_glob) if p not in srcs]
        if len(srcs) != 1 or not tgts:
            msg = f"{project}: expected one {src_dialect} file and at least one {tgt_dialect} file, skipped"
            log.warning(msg)
            warnings.append(msg)
            continue
        pairs.extend((CorpusFile(srcs[0], src_dialect), CorpusFile(t, tgt_dialect)) for t in tgts)
    return pairs


def load_single(directory, dialect, warnings=None):
    """Single-dialect files; files whose name says another dialect are skipped."""
    if directory is None:
        return []
    if not os.path.isdir(directory):
        raise CorpusError(f"directory not found: {directory}")
    warnings = warnings if warnings is not None else []
    out = []
    for path in yaml_files(directory):
        found = detect_dialect(path)
        if found is not None and found != dialect:
            msg = f"{path}: looks like {found}, not {dialect}; skipped"
            log.warning(msg)
            warnings.append(msg)
            continue
        out.append(CorpusFile(path, dialect))
    return out
