"""Independent reference implementations used to check the library.

These are written the slow, obvious way on purpose: they share no code with
the mining modules beyond plain data shapes.
"""
import itertools
import math


# ---------------------------------------------------------------------------
# association rules


def brute_force_rules(transactions, min_support):
    """{(a, b): (support, confidence, lift)} for every ordered item pair.

    Counts by scanning all transactions for every pair; keeps pairs whose
    joint support reaches ``min_support``.
    """
    n = len(transactions)
    if n == 0:
        return {}
    sets = [set(t) for t in transactions]
    items = sorted({i for t in sets for i in t})
    out = {}
    for a in items:
        for b in items:
            if a == b:
                continue
            both = sum(1 for t in sets if a in t and b in t)
            if both == 0 or both / n < min_support - 1e-12:
                continue
            count_a = sum(1 for t in sets if a in t)
            count_b = sum(1 for t in sets if b in t)
            conf = both / count_a
            out[(a, b)] = (both / n, conf, conf / (count_b / n))
    return out


# ---------------------------------------------------------------------------
# frequent trees


def enumerate_rooted(tree):
    """Every root-anchored induced ordered subtree of ``tree`` (as a set).

    A pattern keeps the root and any order-preserving subset of its
    children, each replaced by one of that child's own rooted patterns, so
    there are prod(1 + |rooted(child)|) of them before de-duplication.
    """
    label, kids = tree
    options = [[None] + sorted(enumerate_rooted(k), key=repr) for k in kids]
    out = set()
    for choice in itertools.product(*options):
        out.add((label, tuple(c for c in choice if c is not None)))
    return out


def intermediate_subtrees(tree):
    label, kids = tree
    if kids:
        yield tree
        for k in kids:
            yield from intermediate_subtrees(k)


def mine_oracle(trees, min_support):
    """{pattern: support} of maximal frequent patterns, per root-label group."""
    groups = {}
    for t in trees:
        for sub in intermediate_subtrees(t):
            groups.setdefault(sub[0], []).append(sub)
    result = {}
    for members in groups.values():
        n = len(members)
        need = max(1, math.ceil(min_support * n - 1e-9))
        member_sets = [enumerate_rooted(m) for m in members]
        counts = {}
        for s in member_sets:
            for p in s:
                if p[1]:
                    counts[p] = counts.get(p, 0) + 1
        frequent = {p: c for p, c in counts.items() if c >= need}
        closure = {p: enumerate_rooted(p) for p in frequent}
        for p, c in frequent.items():
            if not any(q != p and p in closure[q] for q in frequent):
                result[p] = c / n
    return result


# ---------------------------------------------------------------------------
# text similarity


def tf_cosine(a_tokens, b_tokens):
    vocab = sorted(set(a_tokens) | set(b_tokens))
    va = [a_tokens.count(w) for w in vocab]
    vb = [b_tokens.count(w) for w in vocab]
    dot = sum(x * y for x, y in zip(va, vb))
    norm = math.sqrt(sum(x * x for x in va)) * math.sqrt(sum(y * y for y in vb))
    return dot / norm if norm else 0.0


# ---------------------------------------------------------------------------
# random inputs


def random_transactions(rng, max_items=8, max_tx=50):
    items = [f"i{k}" for k in range(rng.randint(2, max_items))]
    return [tuple(rng.sample(items, rng.randint(1, min(4, len(items))))) for _ in range(rng.randint(1, max_tx))]


def random_tree(rng, max_nodes=15):
    """Random tree over a small alphabet so that corpora share structure."""
    size = rng.randint(2, max_nodes)
    labels = []
    kids = [[]]
    parents = [None]
    for i in range(1, size):
        p = rng.randrange(i)
        parents.append(p)
        kids.append([])
        kids[p].append(i)
    for i in range(size):
        labels.append(rng.choice("abc") if kids[i] else rng.choice("xyz"))

    def build(i):
        kind = "MappingKey" if kids[i] else "Scalar"
        return ((kind, labels[i]), tuple(build(k) for k in kids[i]))

    return (("MappingKey", "r"), build(0)[1]) if rng.random() < 0.5 else build(0)


def random_corpus(rng):
    base = [random_tree(rng) for _ in range(rng.randint(1, 3))]
    out = []
    for _ in range(rng.randint(1, 12)):
        out.append(rng.choice(base) if rng.random() < 0.5 else random_tree(rng))
    return out
