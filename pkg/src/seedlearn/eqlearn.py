"""Proper equivalence-query learning of DNF from seeds.

The learner keeps, for every level ``j`` in ``1..|Q|`` and every potential
seed ``T`` (a term of size at most ``q``), a pair ``(T, T')``.  Pairs start
with ``T'`` equal to the all-literals term, which is unsatisfiable and so
neither contributes to hypotheses nor can be hit by a negative
counterexample.  Only pairs that a counterexample has touched are stored:

* ``modified[(j, T)]`` holds a touched, still-present pair's ``T'``;
* ``removed[j]`` holds the seeds whose pair was deleted from level ``j``.

Seeds and ``T'`` are keyed by their raw ``(pos, neg)`` masks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

import numpy as np

from .boolcore import (
    Assignment,
    Dnf,
    PartialFn,
    Term,
    assignment_mask,
    closure_of_set,
    count_terms,
    enumerate_terms,
    iter_bits,
    lowest_bit,
    term_table,
    term_tables,
    to_bitstring,
)
from .errors import ContractError, ProtocolError
from .seeds import seed_bound

Mask = tuple[int, int]

#: An EQ answer: None for "yes", else (counterexample, target label).
Answer = Optional[tuple[Assignment, int]]
Teacher = Callable[[Dnf], Answer]


class LevelExhausted(RuntimeError):
    """A positive counterexample found no level with a live covering seed.

    Cannot happen when the target has a DNF of size at most ``s``.
    """


@dataclass
class QueryRecord:
    index: int
    hyp_terms: int
    counterexample: Optional[Assignment]
    label: Optional[int]
    s: int

    def as_json(self, n: int) -> dict:
        return {
            "query_index": self.index,
            "hyp_terms": self.hyp_terms,
            "counterexample": None if self.counterexample is None else to_bitstring(self.counterexample, n),
            "label": self.label,
        }


class EqState:
    def __init__(self, n: int, s: int, q: Optional[int] = None):
        if n < 1 or s < 1:
            raise ContractError(f"need n >= 1 and s >= 1, got n={n}, s={s}")
        self.n = n
        self.s = s
        self.q = seed_bound(n, s) if q is None else q
        self.num_seeds = count_terms(n, self.q)
        self.full = assignment_mask(n)
        self.modified: dict[tuple[int, Mask], Mask] = {}
        self.removed: dict[int, set[Mask]] = {}
        # satisfiable T' -> the (level, seed) pairs currently holding it
        self._holders: dict[Mask, set[tuple[int, Mask]]] = {}
        self._subsets = [m for m in range(1 << n) if m.bit_count() <= self.q]
        self._tables: dict[Mask, int] = {}
        self._seed_keys: dict[Mask, tuple] = {}

    @property
    def default_tprime(self) -> Mask:
        return (self.full, self.full)

    def q_order(self) -> Iterator[Term]:
        """The potential seeds in canonical order."""
        return enumerate_terms(self.n, self.q)

    def covering_seeds(self, e: Assignment) -> list[Mask]:
        """Every potential seed satisfied by ``e``."""
        off = self.full & ~e
        return [(m & e, m & off) for m in self._subsets]

    def pair(self, level: int, seed: Term) -> Optional[Term]:
        """Current ``T'`` of the pair at ``level`` for ``seed``; None if removed."""
        key = (seed.pos, seed.neg)
        if key in self.removed.get(level, ()):
            return None
        pos, neg = self.modified.get((level, key), self.default_tprime)
        return Term(self.n, pos, neg)

    def covers(self, e: Assignment) -> bool:
        """Value of the current hypothesis on ``e``."""
        return any((e & p) == p and not e & m for p, m in self._holders)

    def apply_positive(self, e: Assignment) -> int:
        """Process a positive counterexample; returns the level updated."""
        cover = self.covering_seeds(e)
        j = 1
        while True:
            if j > self.num_seeds:
                raise LevelExhausted(f"no level holds a live seed covering {to_bitstring(e, self.n)}")
            gone = self.removed.get(j)
            live = [t for t in cover if t not in gone] if gone else cover
            if live:
                break
            j += 1
        keep_neg = self.full & ~e
        default = self.default_tprime
        for t in live:
            key = (j, t)
            old = self.modified.get(key, default)
            if not old[0] & old[1]:
                holders = self._holders[old]
                holders.discard(key)
                if not holders:
                    del self._holders[old]
            new = (old[0] & e, old[1] & keep_neg)
            self.modified[key] = new
            self._holders.setdefault(new, set()).add(key)
        return j

    def apply_negative(self, e: Assignment) -> int:
        """Process a negative counterexample; returns the number of pairs removed."""
        hit = [tp for tp in self._holders if (e & tp[0]) == tp[0] and not e & tp[1]]
        count = 0
        for tp in hit:
            for key in self._holders.pop(tp):
                level, seed = key
                self.removed.setdefault(level, set()).add(seed)
                del self.modified[key]
                count += 1
        return count

    def hypothesis_masks(self) -> list[Mask]:
        """Distinct live T' ordered by their first holder (level, then seed order)."""
        return sorted(self._holders, key=lambda tp: min(self._pair_key(k) for k in self._holders[tp]))

    def hypothesis(self) -> Dnf:
        return Dnf(self.n, tuple(Term(self.n, p, m) for p, m in self.hypothesis_masks()))

    def hypothesis_table(self) -> int:
        out = 0
        for tp in self._holders:
            t = self._tables.get(tp)
            if t is None:
                t = self._tables[tp] = term_table(self.n, *tp)
            out |= t
        return out

    def _pair_key(self, key: tuple[int, Mask]) -> tuple:
        level, seed = key
        k = self._seed_keys.get(seed)
        if k is None:
            k = self._seed_keys[seed] = Term(self.n, *seed).order_key()
        return (level, k)

    def live_pairs(self) -> int:
        return len(self.modified)


def eq_apply_counterexample(state: EqState, e: Assignment, is_positive: bool) -> EqState:
    if not 0 <= e <= state.full:
        raise ContractError(f"assignment {e} out of range for n={state.n}")
    if state.covers(e) == is_positive:
        kind = "positive" if is_positive else "negative"
        raise ProtocolError(f"{to_bitstring(e, state.n)} is not a {kind} counterexample for the current hypothesis")
    if is_positive:
        state.apply_positive(e)
    else:
        state.apply_negative(e)
    return state


def eq_hypothesis(state: EqState) -> Dnf:
    return state.hypothesis()


def query_ceiling(n: int, s: int) -> int:
    """2n|Q|^2 + |Q|^2 + 1 for the potential-seed set of ``(n, s)``."""
    size = count_terms(n, seed_bound(n, s))
    return 2 * n * size * size + size * size + 1


@dataclass
class EqResult:
    hypothesis: Dnf
    log: list[QueryRecord]
    s: int
    restarts: int = 0
    hypotheses: list[Dnf] = field(default_factory=list, repr=False)

    @property
    def queries(self) -> int:
        return len(self.log)


def learn_eq(
    teacher: Teacher,
    n: int,
    s: Optional[int] = None,
    auto_s: bool = False,
    max_queries: Optional[int] = None,
    keep_hypotheses: bool = False,
) -> EqResult:
    """Run the learner against ``teacher`` until it answers yes.

    With ``auto_s`` the size bound starts at ``s`` (default 1) and doubles
    whenever a positive counterexample exhausts all levels; the learner
    then restarts from the empty hypothesis.  Without it, ``s`` is required
    and exhaustion raises :class:`LevelExhausted`.
    """
    if s is None:
        if not auto_s:
            raise ContractError("s is required unless auto_s is set")
        s = 1
    state = EqState(n, s)
    log: list[QueryRecord] = []
    seen: list[Dnf] = []
    restarts = 0
    h = Dnf(n, ())
    while True:
        if max_queries is not None and len(log) >= max_queries:
            raise ProtocolError(f"no exact hypothesis after {max_queries} queries")
        if keep_hypotheses:
            seen.append(h)
        answer = teacher(h)
        if answer is None:
            log.append(QueryRecord(len(log) + 1, h.size(), None, None, state.s))
            return EqResult(h, log, state.s, restarts, seen)
        e, label = answer
        log.append(QueryRecord(len(log) + 1, h.size(), e, label, state.s))
        if label not in (0, 1):
            raise ProtocolError(f"label must be 0 or 1, got {label}")
        try:
            eq_apply_counterexample(state, e, label == 1)
        except LevelExhausted:
            if not auto_s:
                raise
            state = EqState(n, state.s * 2)
            restarts += 1
        h = state.hypothesis()


# ---------------------------------------------------------------------------
# teachers


class LexTeacher:
    """Answers with the lexicographically least counterexample."""

    def __init__(self, target: int, n: int):
        self.target = target
        self.n = n

    def __call__(self, h: Dnf) -> Answer:
        diff = self.target ^ h.table()
        if not diff:
            return None
        a = lowest_bit(diff)
        return a, (self.target >> a) & 1


class RandomTeacher:
    """Answers with a uniformly random counterexample."""

    def __init__(self, target: int, n: int, rng: np.random.Generator):
        self.target = target
        self.n = n
        self.rng = rng

    def __call__(self, h: Dnf) -> Answer:
        diff = self.target ^ h.table()
        if not diff:
            return None
        k = int(self.rng.integers(diff.bit_count()))
        for i, a in enumerate(iter_bits(diff)):
            if i == k:
                return a, (self.target >> a) & 1
        raise AssertionError("unreachable")


# ---------------------------------------------------------------------------
# analysis aid


def ghost_sequence(f: PartialFn, q: int) -> list[PartialFn]:
    """The partial functions f^(1), f^(2), ... for seeds of size <= q.

    Each function equals the previous one except that positives covered by
    a seed of the previous function become undefined.  The list stops at
    the first function with no positives or no seeds (later ones repeat it).
    """
    out = [f]
    candidates = term_tables(f.n, q)
    while out[-1].pos:
        cur = out[-1]
        covered = 0
        for tp, tn, tt in candidates:
            if tt & cur.pos and _is_seed_mask(cur, tt):
                covered |= tt & cur.pos
        if not covered:
            break
        out.append(cur.without_positives(covered))
    return out


def _is_seed_mask(f: PartialFn, tt: int) -> bool:
    closed = closure_of_set(tt & f.pos, f.n)
    return not closed.table() & f.neg
