"""The seed covering method and a PAC learner built on it.

Covering repeatedly finds a seed ``T`` of the residual sample, adds the
closure ``T'`` of the positives ``T`` covers to the hypothesis, and makes
the positives covered by ``T'`` undefined.  Candidate seeds are scanned in
canonical order, all of them per pass, and a seed is never tried again
once used.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Protocol

import numpy as np

from .boolcore import (
    Assignment,
    DecisionTree,
    Dnf,
    PartialFn,
    Term,
    closure_of_set,
    count_terms,
    iter_bits,
    table_mask,
    term_tables,
    tree_table,
)
from .errors import ContractError
from .seeds import dtree_seed, seed_bound


@dataclass
class CoverResult:
    hypothesis: Dnf
    seeds_used: list[tuple[Term, Term]]
    residual: PartialFn
    passes: int = 0

    @property
    def ok(self) -> bool:
        return not self.residual.pos

    @property
    def leftover_positives(self) -> list[Assignment]:
        return self.residual.positives


def cover_sample(sample: PartialFn, s: int, q: Optional[int] = None) -> CoverResult:
    """Seed covering of ``sample`` with candidate seeds of size <= q.

    ``q`` defaults to ``seed_bound(n, s)``.  On failure (a full pass over
    the remaining candidates finds no seed while positives remain) the
    result has ``ok == False`` and ``residual`` is the stuck partial
    function.
    """
    if s < 1:
        raise ContractError(f"s must be >= 1, got {s}")
    n = sample.n
    if q is None:
        q = seed_bound(n, s)
    candidates = term_tables(n, q)
    remaining = list(range(len(candidates)))
    pos, neg = sample.pos, sample.neg
    terms: list[Term] = []
    used: list[tuple[Term, Term]] = []
    passes = 0

    while remaining and pos:
        passes += 1
        progress = False
        still = []
        for idx in remaining:
            tp, tn, tt = candidates[idx]
            covered = tt & pos
            if covered:
                closed = closure_of_set(covered, n)
                ct = closed.table()
                if not ct & neg:
                    pos &= ~ct
                    terms.append(closed)
                    used.append((Term(n, tp, tn), closed))
                    progress = True
                    continue
            still.append(idx)
        remaining = still
        if not progress:
            break

    return CoverResult(Dnf(n, tuple(terms)), used, PartialFn(n, pos, neg), passes)


def dtree_cover(tree: DecisionTree, n: int) -> CoverResult:
    """Seed covering of a decision tree's truth table with tree-derived seeds."""
    table = tree_table(tree, n)
    f = PartialFn.from_table(n, table)
    terms: list[Term] = []
    used: list[tuple[Term, Term]] = []
    passes = 0
    while f.pos:
        passes += 1
        seed = dtree_seed(tree, n, f)
        closed = closure_of_set(seed.term.table() & f.pos, n)
        ct = closed.table()
        if ct & f.neg:
            raise RuntimeError(f"tree seed {seed.term} yields a term covering a negative")
        terms.append(closed)
        used.append((seed.term, closed))
        f = f.without_positives(ct)
    return CoverResult(Dnf(n, tuple(terms)), used, f, passes)


# ---------------------------------------------------------------------------
# PAC learning


class ExampleSource(Protocol):
    n: int

    def draw(self, rng: np.random.Generator, m: int) -> np.ndarray:
        """``m`` assignments drawn i.i.d. from the source's distribution."""

    def error(self, target: int, hypothesis: int) -> float:
        """Exact probability mass of the disagreement between two truth tables."""


@dataclass
class UniformExamples:
    n: int

    def draw(self, rng, m):
        return rng.integers(0, 1 << self.n, size=m, dtype=np.int64)

    def error(self, target, hypothesis):
        return (target ^ hypothesis).bit_count() / (1 << self.n)


@dataclass
class ProductExamples:
    """Independent coordinates; ``probs[i]`` is Pr[x_{i+1} = 1]."""

    n: int
    probs: tuple[float, ...]

    def __post_init__(self):
        if len(self.probs) != self.n or not all(0.0 <= p <= 1.0 for p in self.probs):
            raise ContractError("need one probability in [0, 1] per variable")

    def draw(self, rng, m):
        bits = rng.random((m, self.n)) < np.asarray(self.probs)
        weights = 1 << np.arange(self.n - 1, -1, -1, dtype=np.int64)
        return bits.astype(np.int64) @ weights

    def error(self, target, hypothesis):
        total = 0.0
        for a in iter_bits(target ^ hypothesis):
            p = 1.0
            for i in range(1, self.n + 1):
                xi = (a >> (self.n - i)) & 1
                p *= self.probs[i - 1] if xi else 1.0 - self.probs[i - 1]
            total += p
        return total


def pac_sample_size(n: int, s: int, eps: float, delta: float) -> int:
    """Occam bound for consistent hypotheses with at most N_q terms.

    A DNF of at most N_q terms over n variables is one of at most
    3^(n N_q) formulas, hence the n N_q ln 3 term.
    """
    if not (0 < eps < 1 and 0 < delta < 1):
        raise ContractError("eps and delta must lie in (0, 1)")
    nq = count_terms(n, seed_bound(n, s))
    return math.ceil((nq * n * math.log(3) + math.log(1 / delta)) / eps)


@dataclass
class PacResult:
    hypothesis: Optional[Dnf]
    m: int
    sample: PartialFn
    cover: CoverResult = field(repr=False)

    @property
    def ok(self) -> bool:
        return self.cover.ok


def draw_sample(source: ExampleSource, target: int, m: int, rng: np.random.Generator) -> PartialFn:
    """Label ``m`` drawn assignments with the truth table ``target``."""
    points = np.unique(source.draw(rng, m))
    pos = neg = 0
    for a in points.tolist():
        if (target >> a) & 1:
            pos |= 1 << a
        else:
            neg |= 1 << a
    return PartialFn(source.n, pos, neg)


def pac_learn(
    source: ExampleSource,
    target: int,
    s: int,
    eps: float,
    delta: float,
    rng: np.random.Generator,
) -> PacResult:
    """Draw an Occam-sized sample labeled by ``target`` and cover it.

    ``target`` is the truth table of the concept; the learner only sees
    it through the labels of drawn examples.
    """
    n = source.n
    if target & ~table_mask(n):
        raise ContractError("target table wider than 2^n")
    m = pac_sample_size(n, s, eps, delta)
    sample = draw_sample(source, target, m, rng)
    cover = cover_sample(sample, s)
    return PacResult(cover.hypothesis if cover.ok else None, m, sample, cover)
