"""Query/size tradeoff machinery.

* the class M(n, t, s) of monotone DNFs with exactly t distinct terms of
  exactly s distinct variables, enumerated explicitly;
* the sparse-positive / dense-negative dichotomy for a DNF and the greedy
  hitting set behind it;
* the exact check of the weight-based zero-probability bound over M(n, t, s);
* the fingerprint adversary, which answers each equivalence query with the
  assignment eliminating the fewest remaining targets;
* majority-of-DNFs expansion and the halving learner built on it.

Everything is exhaustive and only meant for small n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from numbers import Rational, Real
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .boolcore import (
    Assignment,
    Dnf,
    PartialFn,
    Term,
    assignment_mask,
    check_table_dim,
    to_bitstring,
)
from .errors import ContractError, ProtocolError, ResourceCapError
from .mindnf import exact_min_dnf

DEFAULT_MAX_CLASS = 10**6
DEFAULT_MAX_N = 16
DEFAULT_MAX_RETRIES = 10_000


def table_array(bits: int, n: int) -> np.ndarray:
    """Truth-table bitset as a bool array indexed by assignment."""
    width = 1 << n
    raw = np.frombuffer(bits.to_bytes((width + 7) // 8, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:width].astype(bool)


# ---------------------------------------------------------------------------
# M(n, t, s)


@dataclass
class MonotoneClass:
    n: int
    t: int
    s: int
    terms: list[int]  # variable masks of the C(n, s) possible terms
    formulas: np.ndarray  # (count, t) indices into ``terms``

    def __len__(self):
        return len(self.formulas)

    def dnf(self, i: int) -> Dnf:
        return Dnf(self.n, tuple(Term(self.n, self.terms[j], 0) for j in self.formulas[i]))

    def dnfs(self) -> list[Dnf]:
        return [self.dnf(i) for i in range(len(self))]

    def values_at(self, z: Assignment) -> np.ndarray:
        """phi(z) for every formula phi of the class."""
        sat = np.array([(z & m) == m for m in self.terms], dtype=bool)
        if not len(self):
            return np.zeros(0, dtype=bool)
        return sat[self.formulas].any(axis=1)

    def tables(self) -> np.ndarray:
        """(count, 2^n) bool matrix of truth tables."""
        check_table_dim(self.n, DEFAULT_MAX_N)
        points = np.arange(1 << self.n)
        term_tab = np.array([(points & m) == m for m in self.terms], dtype=bool)
        if not len(self):
            return np.zeros((0, 1 << self.n), dtype=bool)
        return term_tab[self.formulas].any(axis=1)


def enumerate_M(n: int, t: int, s: int, max_class: int = DEFAULT_MAX_CLASS) -> MonotoneClass:
    if not (n >= 1 and 0 <= s <= n and t >= 1):
        raise ContractError(f"bad class parameters n={n}, t={t}, s={s}")
    count = math.comb(math.comb(n, s), t)
    if count > max_class:
        raise ResourceCapError(f"M({n},{t},{s}) has {count} formulas, cap is {max_class}")
    terms = [sum(1 << (n - v) for v in vs) for vs in combinations(range(1, n + 1), s)]
    flat = np.fromiter(
        (j for combo in combinations(range(len(terms)), t) for j in combo),
        dtype=np.int64,
        count=count * t,
    )
    return MonotoneClass(n, t, s, terms, flat.reshape(count, t))


# ---------------------------------------------------------------------------
# sparse positive or dense negative


@dataclass(frozen=True)
class PositiveSparse:
    y: Assignment


@dataclass(frozen=True)
class NegativeDense:
    z: Assignment
    V: tuple[int, ...]


Dichotomy = Union[PositiveSparse, NegativeDense]


def greedy_hitting_set(n: int, pos_masks: Sequence[int]) -> tuple[int, ...]:
    """Variables hitting every mask, picked greedily by frequency (lowest index on ties)."""
    remaining = [m for m in pos_masks]
    if any(not m for m in remaining):
        raise ContractError("a term without unnegated variables cannot be hit")
    chosen = []
    while remaining:
        best_var, best_count = 0, -1
        for i in range(1, n + 1):
            b = 1 << (n - i)
            c = sum(1 for m in remaining if m & b)
            if c > best_count:
                best_var, best_count = i, c
        b = 1 << (n - best_var)
        chosen.append(best_var)
        remaining = [m for m in remaining if not m & b]
    return tuple(chosen)


def _as_fraction(r) -> Fraction:
    if isinstance(r, (Rational, int)):
        return Fraction(r)
    if isinstance(r, Real):
        return Fraction(float(r))
    raise ContractError(f"r must be a real number, got {r!r}")


def sparse_or_dense(f: Dnf, r) -> Dichotomy:
    """A positive assignment of weight <= r sqrt(n), or a heavy negative one.

    Weight comparisons against r sqrt(n) are done exactly by squaring.
    """
    n = f.n
    r = _as_fraction(r)
    if r < 1:
        raise ContractError(f"r must be >= 1, got {r}")
    if not f.terms:
        raise ContractError("f needs at least one term")
    if not all(t.satisfiable() for t in f.terms):
        raise ContractError("every term of f must be satisfiable")
    if r * r >= n:
        return PositiveSparse(f.terms[0].pos)
    for t in f.terms:
        w = t.pos.bit_count()
        if w * w < r * r * n:
            return PositiveSparse(t.pos)
    V = greedy_hitting_set(n, [t.pos for t in f.terms])
    vmask = sum(1 << (n - v) for v in V)
    return NegativeDense(assignment_mask(n) & ~vmask, tuple(sorted(V)))


def hitting_set_bound(n: int, r, T: int) -> int:
    """1 + floor(log_b T) with b = 1 / (1 - r / sqrt(n)), for 1 <= r < sqrt(n)."""
    alpha = float(r) / math.sqrt(n)
    if not 0 < alpha < 1:
        raise ContractError("hitting_set_bound needs 0 < r / sqrt(n) < 1")
    b = 1.0 / (1.0 - alpha)
    k = 0
    while b ** (k + 1) <= T * (1 + 1e-12):
        k += 1
    return 1 + k


def dichotomy_holds(f: Dnf, r, d: Dichotomy, strict: bool = False) -> bool:
    """Check the invariants of a dichotomy value against ``f`` and ``r``.

    For the dense case the weight lower bound is n - sqrt(n) ln T / r - 1,
    non-strict unless ``strict`` is set.
    """
    n = f.n
    r = _as_fraction(r)
    if isinstance(d, PositiveSparse):
        w = d.y.bit_count()
        return f.covers(d.y) and w * w <= r * r * n
    vmask = sum(1 << (n - v) for v in d.V)
    if not d.V or d.z != assignment_mask(n) & ~vmask:
        return False
    w = d.z.bit_count()
    lower = n - math.sqrt(n) * math.log(f.size()) / float(r) - 1
    weight_ok = w > lower + 1e-9 if strict else w >= lower - 1e-9
    return (not f.covers(d.z)) and w < n and weight_ok


# ---------------------------------------------------------------------------
# zero probability of monotone DNFs at a fixed point


@dataclass(frozen=True)
class Fact1Result:
    bound: Fraction
    exact: Fraction
    ok: bool


def fact1_bound(n: int, t: int, s: int, weight: int) -> Fraction:
    """(1 - ((|z| - s) / n)^s)^t, with |z| - s floored at 0.

    Below |z| = s the base is negative; there no term can be satisfied, so
    the bound is taken as 1.
    """
    base = Fraction(max(weight - s, 0), n)
    return (1 - base**s) ** t


def fact1_bound_unclamped(n: int, t: int, s: int, weight: int) -> Fraction:
    return (1 - Fraction(weight - s, n) ** s) ** t


def fact1_check(n: int, t: int, s: int, z: Assignment, max_class: int = DEFAULT_MAX_CLASS) -> Fact1Result:
    """Compare the weight-based bound with the exact Pr[phi(z) = 0] over M(n, t, s)."""
    w = z.bit_count()
    room = math.comb(n, s) - math.comb(w, s)
    if t > room:
        raise ContractError(
            f"stipulation t <= C(n,s) - C(|z|,s) fails: t={t}, C({n},{s}) - C({w},{s}) = {room}"
        )
    cls = enumerate_M(n, t, s, max_class)
    zeros = int(np.count_nonzero(~cls.values_at(z)))
    exact = Fraction(zeros, len(cls))
    bound = fact1_bound(n, t, s, w)
    return Fact1Result(bound, exact, exact <= bound)


# ---------------------------------------------------------------------------
# version spaces and the fingerprint adversary


@dataclass
class VersionSpace:
    """Formulas of a fixed finite class still consistent with the history."""

    n: int
    tables: np.ndarray
    remaining: np.ndarray = None
    history: list[tuple[Dnf, Assignment, int]] = field(default_factory=list)

    def __post_init__(self):
        if self.remaining is None:
            self.remaining = np.arange(len(self.tables))

    def __len__(self):
        return len(self.remaining)

    def ones(self) -> np.ndarray:
        """N_{a,1} for every assignment a."""
        return self.tables[self.remaining].sum(axis=0)

    def update(self, query: Dnf, a: Assignment, label: int) -> int:
        """Keep formulas with value ``label`` at ``a``; returns how many were eliminated."""
        before = len(self.remaining)
        self.remaining = self.remaining[self.tables[self.remaining, a] == bool(label)]
        eliminated = before - len(self.remaining)
        self.history.append((query, a, eliminated))
        return eliminated


def fingerprint_counterexample(vs: VersionSpace, h: Dnf) -> Optional[Assignment]:
    """Assignment where the most remaining formulas disagree with ``h``.

    Ties go to the lexicographically least assignment.  None means ``h``
    agrees with every remaining formula everywhere.
    """
    h_arr = table_array(h.table(), vs.n)
    disagree = (vs.tables[vs.remaining] != h_arr).sum(axis=0)
    if not len(disagree) or disagree.max() == 0:
        return None
    return int(np.argmax(disagree))


class FingerprintAdversary:
    """Worst-case teacher over a finite class; never commits to a target early."""

    def __init__(self, n: int, tables: np.ndarray):
        self.vs = VersionSpace(n, tables)

    def __call__(self, h: Dnf) -> Optional[tuple[Assignment, int]]:
        a = fingerprint_counterexample(self.vs, h)
        if a is None:
            return None
        label = 0 if h.covers(a) else 1
        self.vs.update(h, a, label)
        return a, label


class TargetTeacher:
    """Honest teacher for a fixed target: least counterexample first."""

    def __init__(self, n: int, target: int):
        self.n = n
        self.target = target

    def __call__(self, h: Dnf) -> Optional[tuple[Assignment, int]]:
        diff = self.target ^ h.table()
        if not diff:
            return None
        a = (diff & -diff).bit_length() - 1
        return a, (self.target >> a) & 1


def adversary_report(n: int, t: int, s: int, queries: Sequence[Dnf], max_class: int = DEFAULT_MAX_CLASS) -> list[dict]:
    """Answer scripted queries with the fingerprint adversary over M(n, t, s)."""
    cls = enumerate_M(n, t, s, max_class)
    adversary = FingerprintAdversary(n, cls.tables())
    rows = []
    for i, h in enumerate(queries, start=1):
        if h.n != n:
            raise ContractError(f"query {i} is over {h.n} variables, expected {n}")
        before = len(adversary.vs)
        answer = adversary(h)
        after = len(adversary.vs)
        rows.append(
            {
                "query": i,
                "hyp_terms": h.size(),
                "counterexample": None if answer is None else to_bitstring(answer[0], n),
                "label": None if answer is None else answer[1],
                "before": before,
                "after": after,
                "eliminated": before - after,
                "eliminated_fraction": (before - after) / before if before else 0.0,
            }
        )
        if answer is None:
            break
    return rows


def log_term_parameters(n: int) -> tuple[int, int]:
    """(t, s) with both equal to log2 n, rounded down and at least 1."""
    k = max(1, int(math.log2(n)))
    return k, k


# ---------------------------------------------------------------------------
# majority of DNFs


def maj_to_dnf(fs: Sequence[Dnf]) -> Dnf:
    """DNF for the pointwise majority (sum >= t/2) of the given DNFs.

    Every ceil(t/2)-subset of the slots contributes the AND of its DNFs,
    multiplied out.  Contradictory products are dropped and repeated terms
    kept once.
    """
    if not fs:
        raise ContractError("maj_to_dnf needs at least one formula")
    n = fs[0].n
    if any(f.n != n for f in fs):
        raise ContractError("all formulas must share the dimension")
    t = len(fs)
    need = (t + 1) // 2
    seen = set()
    out = []
    for slots in combinations(range(t), need):
        for choice in product(*(fs[i].terms for i in slots)):
            pos = neg = 0
            for term in choice:
                pos |= term.pos
                neg |= term.neg
            if pos & neg or (pos, neg) in seen:
                continue
            seen.add((pos, neg))
            out.append(Term(n, pos, neg))
    return Dnf(n, tuple(out))


def maj_term_bound(fs: Sequence[Dnf]) -> int:
    t = len(fs)
    return 2**t * max(f.size() for f in fs) ** t


# ---------------------------------------------------------------------------
# halving learner


@dataclass
class ShrinkRecord:
    query: int
    before: int
    after: int
    counterexample: Optional[Assignment]
    in_Z: Optional[bool]
    retries: int
    fallback: bool
    hyp_terms: int


@dataclass
class HalvingResult:
    hypothesis: Dnf
    log: list[ShrinkRecord]
    remaining: np.ndarray

    @property
    def queries(self) -> int:
        return len(self.log)


def default_t_sample(n: int, k: int) -> int:
    """ceil(3n / (k log2 n)), at least 1."""
    if n < 2:
        return 1
    return max(1, math.ceil(3 * n / (k * math.log2(n))))


def _table_dnf(n: int, arr: np.ndarray) -> Dnf:
    bits = 0
    for a in np.flatnonzero(arr).tolist():
        bits |= 1 << a
    if n <= 10:
        return exact_min_dnf(PartialFn.from_table(n, bits))
    return Dnf(n, tuple(Term.minterm(a, n) for a in np.flatnonzero(arr).tolist()))


def halving_learn(
    universe: Sequence[Dnf],
    teacher: Callable[[Dnf], Optional[tuple[Assignment, int]]],
    k: int,
    t_sample: Optional[int],
    rng: np.random.Generator,
    max_retries: int = DEFAULT_MAX_RETRIES,
    tables: Optional[np.ndarray] = None,
) -> HalvingResult:
    """Learn a member of a finite class of DNFs with majority-vote hypotheses.

    Each query is the majority of ``t_sample`` formulas drawn uniformly from
    the version space, redrawn until that majority agrees with the majority
    of the whole version space on every assignment where fewer than a
    1/n^k fraction of the version space dissents.  After ``max_retries``
    failed draws the exact majority of the version space is used instead.
    """
    if not universe:
        raise ContractError("empty universe")
    n = universe[0].n
    if tables is None:
        tables = np.array([table_array(f.table(), n) for f in universe])
    if t_sample is None:
        t_sample = default_t_sample(n, k)
    vs = VersionSpace(n, tables)
    nk = n**k
    log: list[ShrinkRecord] = []

    while True:
        N = len(vs)
        if N == 0:
            raise ProtocolError("teacher answers are inconsistent with every formula in the universe")
        retries, fallback, in_z = 0, False, None
        if N == 1:
            h = universe[int(vs.remaining[0])]
            Z = None
        else:
            ones = vs.ones()
            nmin = np.minimum(ones, N - ones)
            Z = nmin * nk < N
            maj = 2 * ones >= N
            h = None
            for retries in range(1, max_retries + 1):
                picks = rng.choice(vs.remaining, size=t_sample, replace=True)
                sub = tables[picks].sum(axis=0)
                if np.array_equal((2 * sub >= t_sample)[Z], maj[Z]):
                    h = maj_to_dnf([universe[int(i)] for i in picks])
                    break
            if h is None:
                fallback = True
                h = _table_dnf(n, maj)

        answer = teacher(h)
        if answer is None:
            log.append(ShrinkRecord(len(log) + 1, N, N, None, None, retries, fallback, h.size()))
            return HalvingResult(h, log, vs.remaining)
        a, label = answer
        if h.covers(a) == bool(label):
            raise ProtocolError(f"{to_bitstring(a, n)} is not a counterexample to the query")
        if Z is not None:
            in_z = bool(Z[a])
        vs.update(h, a, label)
        log.append(ShrinkRecord(len(log) + 1, N, len(vs), a, in_z, retries, fallback, h.size()))
