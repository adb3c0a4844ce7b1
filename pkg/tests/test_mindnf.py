import functools
import itertools
import operator

import pytest
from hypothesis import given

import oracles
from seedlearn.boolcore import Dnf, PartialFn, Term, table_mask
from seedlearn.errors import ResourceCapError
from seedlearn.mindnf import dnf_size, exact_min_dnf, min_set_cover, prime_implicants
from strategies import partials


def test_xor_needs_two_terms():
    d = exact_min_dnf(PartialFn.from_table(2, 0b0110))
    assert d.size() == 2
    assert d.table() == 0b0110


def test_constants():
    one = exact_min_dnf(PartialFn.from_table(3, table_mask(3)))
    assert one.terms == (Term.empty(3),)
    zero = exact_min_dnf(PartialFn.from_table(3, 0))
    assert zero.size() == 0


def test_parity_four_needs_eight_terms():
    bits = sum(1 << a for a in range(16) if bin(a).count("1") % 2)
    assert dnf_size(PartialFn.from_table(4, bits)) == 8


def test_budget():
    f = PartialFn.from_table(2, 0b0110)
    assert exact_min_dnf(f, budget=1) is None
    assert exact_min_dnf(f, budget=2).size() == 2


def test_cap():
    with pytest.raises(ResourceCapError):
        exact_min_dnf(PartialFn(11, 1, 0))


@given(partials(max_n=3))
def test_min_size_matches_subset_search(f):
    d = exact_min_dnf(f)
    assert f.consistent_with(d.table())
    assert d.size() == oracles.min_dnf_size(f.pos, f.neg, f.n)


@given(partials(max_n=5))
def test_prime_implicants_are_prime(f):
    for p in prime_implicants(f):
        t = p.table()
        assert t & f.pos and not t & f.neg
        for lit in p.literals:
            smaller = Term.from_literals(f.n, [x for x in p.literals if x != lit])
            assert smaller.table() & f.neg


@given(partials(max_n=4))
def test_every_implicant_contains_a_prime(f):
    primes = prime_implicants(f)
    for lits, t in oracles.monomials(f.n):
        if t & f.pos and not t & f.neg:
            term = Term.from_literals(f.n, lits)
            assert any(term.issuperset(p) for p in primes)


def test_min_set_cover_against_brute_force():
    sets = [0b0011, 0b0110, 0b1100, 0b1001, 0b0001]
    got = min_set_cover(0b1111, sets)
    best = min(
        k
        for k in range(1, 6)
        for combo in itertools.combinations(sets, k)
        if functools.reduce(operator.or_, combo) == 0b1111
    )
    assert len(got) == best == 2
    assert min_set_cover(0b1111, sets, limit=1) is None


def test_min_dnf_result_is_a_dnf_over_same_dimension():
    f = PartialFn.from_sets(4, [0b1100, 0b0011], [0b0000, 0b1111])
    d = exact_min_dnf(f)
    assert isinstance(d, Dnf) and d.n == 4
    assert f.consistent_with(d.table())
    assert d.size() == 2
