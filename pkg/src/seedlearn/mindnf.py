"""Exact minimum DNF for small partial functions.

Prime implicants are enumerated exhaustively, then an exact minimum set
cover of the positives is found by branch and bound.  This is the oracle
for ds(f); it is exponential and capped.
"""

from __future__ import annotations

from typing import Optional

from .boolcore import (
    Dnf,
    PartialFn,
    Term,
    iter_bits,
    table_mask,
    term_table,
    var_tables,
)
from .errors import ResourceCapError

DEFAULT_MAX_N = 10


def prime_implicants(f: PartialFn) -> list[Term]:
    """Implicants of ``f`` that cover a positive and have no implicant proper subterm."""
    n = f.n
    vt = var_tables(n)
    full = table_mask(n)
    found: list[tuple[int, int, int]] = []

    def walk(i, pos, neg, t):
        if not t & f.pos:
            return
        if not t & f.neg:
            found.append((pos, neg, t))
            return
        if i > n:
            return
        b = 1 << (n - i)
        walk(i + 1, pos, neg, t)
        walk(i + 1, pos | b, neg, t & vt[i])
        walk(i + 1, pos, neg | b, t & (full ^ vt[i]))

    walk(1, 0, 0, full)

    primes = []
    for pos, neg, _ in found:
        prime = True
        for b in iter_bits(pos | neg):
            bit = 1 << b
            if not term_table(n, pos & ~bit, neg & ~bit) & f.neg:
                prime = False
                break
        if prime:
            primes.append(Term(n, pos, neg))
    primes.sort(key=Term.order_key)
    return primes


def min_set_cover(universe: int, sets: list[int], limit: Optional[int] = None) -> Optional[list[int]]:
    """Indices of a minimum number of ``sets`` whose union contains ``universe``.

    Returns None if no cover exists, or if every cover needs more than
    ``limit`` sets.
    """
    if not universe:
        return []
    if limit is not None and limit < 1:
        return None
    union = 0
    for s in sets:
        union |= s
    if universe & ~union:
        return None

    by_element: dict[int, list[int]] = {}
    for idx, s in enumerate(sets):
        for e in iter_bits(s & universe):
            by_element.setdefault(e, []).append(idx)
    max_size = max((s & universe).bit_count() for s in sets)

    best: list[Optional[list[int]]] = [None]
    bound = [(limit + 1) if limit is not None else len(sets) + 1]

    greedy = _greedy_cover(universe, sets)
    if len(greedy) < bound[0]:
        best[0] = greedy
        bound[0] = len(greedy)

    def search(uncovered, chosen):
        if not uncovered:
            if len(chosen) < bound[0]:
                best[0] = list(chosen)
                bound[0] = len(chosen)
            return
        need = -(-uncovered.bit_count() // max_size)
        if len(chosen) + need >= bound[0]:
            return
        pick = min(iter_bits(uncovered), key=lambda e: len(by_element[e]))
        options = sorted(by_element[pick], key=lambda j: -(sets[j] & uncovered).bit_count())
        for j in options:
            chosen.append(j)
            search(uncovered & ~sets[j], chosen)
            chosen.pop()

    search(universe, [])
    return best[0]


def _greedy_cover(universe: int, sets: list[int]) -> list[int]:
    chosen = []
    uncovered = universe
    while uncovered:
        j = max(range(len(sets)), key=lambda k: (sets[k] & uncovered).bit_count())
        chosen.append(j)
        uncovered &= ~sets[j]
    return chosen


def exact_min_dnf(f: PartialFn, budget: Optional[int] = None, max_n: int = DEFAULT_MAX_N) -> Optional[Dnf]:
    """A smallest DNF consistent with ``f``.

    With ``budget`` set, returns None when every consistent DNF has more
    than ``budget`` terms.  A function with no positives gets the empty DNF.
    """
    if f.n > max_n:
        raise ResourceCapError(f"exact_min_dnf: n={f.n} exceeds cap {max_n}")
    if not f.pos:
        return Dnf(f.n, ())
    primes = prime_implicants(f)
    coverage = [p.table() & f.pos for p in primes]
    chosen = min_set_cover(f.pos, coverage, limit=budget)
    if chosen is None:
        return None
    terms = sorted((primes[j] for j in chosen), key=Term.order_key)
    return Dnf(f.n, tuple(terms))


def dnf_size(f: PartialFn, max_n: int = DEFAULT_MAX_N) -> int:
    """ds(f): the number of terms of a smallest consistent DNF."""
    return exact_min_dnf(f, max_n=max_n).size()
