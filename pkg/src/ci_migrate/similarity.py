"""Token-count cosine similarity shared by rule bifurcation and evaluation.

Tokens are lowercase runs of letters/digits; whitespace, punctuation and
underscores separate them. Two texts that both have no tokens score 1.0.
"""
import math
import re
from collections import Counter

_TOKEN = re.compile(r"[^\W_]+")


def tokenize(text):
    return _TOKEN.findall(text.lower())


def cosine_counts(a: Counter, b: Counter) -> float:
    if not a and not b:
        return 1.0
    if not a or not b:
        return 0.0
    if a == b:
        # the float quotient can land one ulp short of 1
        return 1.0
    dot = sum(v * b[k] for k, v in a.items() if k in b)
    norm = math.sqrt(sum(v * v for v in a.values())) * math.sqrt(sum(v * v for v in b.values()))
    return min(1.0, dot / norm)


def cosine_similarity(a: str, b: str) -> float:
    return cosine_counts(Counter(tokenize(a)), Counter(tokenize(b)))


def leaf_cosine(lhs_leaves, rhs_leaves) -> float:
    """Cosine between the leaf labels of two H2 trees."""
    return cosine_similarity(" ".join(lhs_leaves), " ".join(rhs_leaves))
