"""Per-dialect data (file naming, valid top-level keys) shipped as YAML files."""
from __future__ import annotations

import fnmatch
import os
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Optional

import yaml

from .tree import GITHUB_ACTIONS, TRAVIS


@dataclass(frozen=True)
class Dialect:
    name: str
    filename: str = ""
    top_level_keys: frozenset = frozenset()

    def valid_root_keys(self, keys) -> bool:
        """True when ``keys`` are unique and all known top-level keys."""
        keys = list(keys)
        if len(set(keys)) != len(keys):
            return False
        return not self.top_level_keys or set(keys) <= self.top_level_keys


def available():
    folder = resources.files("ci_migrate").joinpath("data/dialects")
    return sorted(p.name[:-5] for p in folder.iterdir() if p.name.endswith(".yaml"))


@lru_cache(maxsize=None)
def load_dialect(name: str) -> Dialect:
    """Dialect description for ``name``; unknown names get an unconstrained one."""
    if name not in available():
        return Dialect(name)
    text = resources.files("ci_migrate").joinpath(f"data/dialects/{name}.yaml").read_text(encoding="utf-8")
    data = yaml.safe_load(text) or {}
    # `on` needs quoting in YAML; guard against it loading as True anyway
    keys = frozenset("on" if k is True else str(k) for k in data.get("top_level_keys", ()))
    return Dialect(data.get("name", name), data.get("filename", ""), keys)


def detect_dialect(path) -> Optional[str]:
    """Guess a file's dialect from its name: ``.travis.yml`` or ``workflows/*.yml``."""
    path = os.path.normpath(str(path))
    base = os.path.basename(path)
    if base in (".travis.yml", ".travis.yaml", "travis.yml"):
        return TRAVIS
    parent = os.path.basename(os.path.dirname(path))
    if parent == "workflows" and fnmatch.fnmatch(base, "*.y*ml"):
        return GITHUB_ACTIONS
    return None
