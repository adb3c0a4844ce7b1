"""Certificates that a function has no small DNF.

``certify`` runs seed covering on a full truth table.  Either covering
succeeds, which exhibits a DNF, or it gets stuck on a residual partial
function ``f'`` with no seed of size at most ``q``.  In the second case every
short term ``T`` covering a positive of ``f'`` has a small witness that
``f'_T`` is not consistent with a monomial: positives of ``f'`` covered by
``T`` together with a negative covered by ``T`` lying between them.  The
union of the witnesses is the certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .boolcore import (
    Assignment,
    Dnf,
    PartialFn,
    Term,
    TruthTable,
    assignment_mask,
    between,
    closure,
    closure_of_set,
    count_terms,
    iter_bits,
    lowest_bit,
    term_table,
    term_tables,
)
from .coverlearn import cover_sample
from .errors import ContractError, ResourceCapError
from .mindnf import DEFAULT_MAX_N, exact_min_dnf
from .seeds import seed_bound


@dataclass(frozen=True)
class Witness:
    """Points proving ``f'_T`` has no consistent monomial.

    Normally two positives with the negative between them.  When no such
    triple exists (possible for partial functions) ``positives`` is a
    minimal set whose closure covers ``negative``.
    """

    term: Term
    positives: tuple[Assignment, ...]
    negative: Assignment

    def is_triple(self) -> bool:
        return len(self.positives) == 2


@dataclass
class Certificate:
    n: int
    points: dict[Assignment, int]
    provenance: list[Witness]
    q: int
    residual: PartialFn

    def size(self) -> int:
        return len(self.points)

    def as_partial(self) -> PartialFn:
        return PartialFn.from_sets(
            self.n,
            (a for a, v in self.points.items() if v == 1),
            (a for a, v in self.points.items() if v == 0),
        )


@dataclass
class Cover:
    dnf: Dnf
    q: int

    @property
    def terms(self) -> int:
        return self.dnf.size()


def _witness(f: PartialFn, term: Term, tt: int) -> Witness:
    n = f.n
    full = assignment_mask(n)
    pos = f.pos & tt
    neg = f.neg & tt
    for p1 in iter_bits(pos):
        for p2 in iter_bits(pos & ~((2 << p1) - 1)):
            agree = full & ~(p1 ^ p2)
            hits = term_table(n, p1 & agree, ~p1 & agree) & neg
            if hits:
                return Witness(term, (p1, p2), lowest_bit(hits))

    # no triple: shrink the covered positives to a minimal set whose closure
    # still covers a negative
    z = lowest_bit(closure_of_set(pos, n).table() & neg)
    keep = list(iter_bits(pos))
    for p in list(keep):
        trial = [x for x in keep if x != p]
        if closure(trial, n).covers(z):
            keep = trial
    return Witness(term, tuple(keep), z)


def certify(f: TruthTable, s: int, max_n: int = DEFAULT_MAX_N) -> Union[Cover, Certificate]:
    """Either a DNF for ``f`` built by seed covering, or a certificate that ds(f) > s."""
    if s < 1:
        raise ContractError(f"s must be >= 1, got {s}")
    if f.n > max_n:
        raise ResourceCapError(f"certify: n={f.n} exceeds cap {max_n}")
    n = f.n
    q = seed_bound(n, s)
    result = cover_sample(f.to_partial(), s, q)
    if result.ok:
        return Cover(result.hypothesis, q)

    stuck = result.residual
    points: dict[Assignment, int] = {}
    provenance = []
    for tp, tn, tt in term_tables(n, q):
        if not tt & stuck.pos:
            continue
        w = _witness(stuck, Term(n, tp, tn), tt)
        provenance.append(w)
        for a in w.positives:
            points[a] = 1
        points[w.negative] = 0
    return Certificate(n, dict(sorted(points.items())), provenance, q, stuck)


def check_witness(f: TruthTable, w: Witness) -> bool:
    """Coverage, labels and betweenness of one witness, checked directly."""
    t = w.term
    if any(f.value(p) != 1 or not t.covers(p) for p in w.positives):
        return False
    if f.value(w.negative) != 0 or not t.covers(w.negative):
        return False
    if w.is_triple():
        return between(w.positives[0], w.positives[1], w.negative)
    return closure(w.positives, f.n).covers(w.negative)


def verify_certificate(f: TruthTable, cert: Certificate, s: int, max_n: int = DEFAULT_MAX_N) -> bool:
    """True iff no DNF with at most ``s`` terms agrees with ``f`` on the certificate points."""
    if f.n > max_n:
        raise ResourceCapError(f"verify_certificate: n={f.n} exceeds cap {max_n}")
    if cert.n != f.n:
        return False
    if any(f.value(a) != v for a, v in cert.points.items()):
        return False
    return exact_min_dnf(cert.as_partial(), budget=s, max_n=max_n) is None


def certificate_size_bound(n: int, q: int) -> int:
    """3 times the number of terms of size at most ``q``."""
    return 3 * count_terms(n, q)
