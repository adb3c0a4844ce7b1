"""Random and structured instances: DNFs, trees, samples, partial functions."""

from __future__ import annotations

from typing import Optional

import numpy as np

from .boolcore import (
    Dnf,
    Leaf,
    Node,
    PartialFn,
    Term,
    TruthTable,
    DecisionTree,
    table_mask,
    tree_one_leaves,
    var_tables,
)
from .errors import ContractError


def random_term(n: int, rng: np.random.Generator, min_size: int = 1, max_size: Optional[int] = None) -> Term:
    hi = n if max_size is None else min(n, max_size)
    size = int(rng.integers(min(min_size, hi), hi + 1))
    vs = rng.choice(np.arange(1, n + 1), size=size, replace=False)
    signs = rng.random(size) < 0.5
    return Term.from_literals(n, [(int(v), bool(neg)) for v, neg in zip(vs, signs)])


def random_dnf(
    n: int,
    s: int,
    rng: np.random.Generator,
    min_size: int = 1,
    max_size: Optional[int] = None,
) -> Dnf:
    """``s`` independent random terms (duplicates possible)."""
    return Dnf(n, tuple(random_term(n, rng, min_size, max_size) for _ in range(s)))


def random_monotone_dnf(n: int, s: int, rng: np.random.Generator, max_size: Optional[int] = None) -> Dnf:
    terms = []
    for _ in range(s):
        t = random_term(n, rng, 1, max_size)
        terms.append(Term(n, t.pos | t.neg, 0))
    return Dnf(n, tuple(terms))


def random_tree(n: int, leaves: int, rng: np.random.Generator, p_one: float = 0.5) -> DecisionTree:
    """A tree with at most ``leaves`` leaves and at least one 1-leaf."""
    if leaves < 1:
        raise ContractError("need at least one leaf")

    def build(budget, free):
        if budget == 1 or not free:
            return Leaf(int(rng.random() < p_one))
        var = free[int(rng.integers(len(free)))]
        rest = [v for v in free if v != var]
        left = int(rng.integers(1, budget))
        return Node(var, build(left, rest), build(budget - left, rest))

    while True:
        tree = build(leaves, list(range(1, n + 1)))
        if tree_one_leaves(tree):
            return tree


def random_partial(n: int, rng: np.random.Generator, p_defined: float = 0.5, p_one: float = 0.5) -> PartialFn:
    width = 1 << n
    defined = rng.random(width) < p_defined
    ones = rng.random(width) < p_one
    pos = neg = 0
    for a in range(width):
        if defined[a]:
            if ones[a]:
                pos |= 1 << a
            else:
                neg |= 1 << a
    return PartialFn(n, pos, neg)


def random_sample(target: int, n: int, m: int, rng: np.random.Generator) -> PartialFn:
    """Label ``m`` uniform draws (with replacement) by the truth table ``target``."""
    points = rng.integers(0, 1 << n, size=m)
    pos = neg = 0
    for a in points.tolist():
        if (target >> a) & 1:
            pos |= 1 << a
        else:
            neg |= 1 << a
    return PartialFn(n, pos, neg)


def parity_table(n: int) -> TruthTable:
    bits = 0
    for v in var_tables(n):
        bits ^= v
    return TruthTable(n, bits & table_mask(n))


def disjoint_terms(k: int) -> Dnf:
    """k disjoint monotone terms of size k over n = k^2 variables."""
    n = k * k
    terms = []
    for i in range(k):
        terms.append(Term.from_literals(n, [(i * k + j + 1, False) for j in range(k)]))
    return Dnf(n, tuple(terms))
