import pytest
from hypothesis import given, settings

import oracles
from seedlearn.boolcore import Dnf, PartialFn, Term, TruthTable, between, closure
from seedlearn.certs import (
    Certificate,
    Cover,
    Witness,
    certificate_size_bound,
    certify,
    check_witness,
    verify_certificate,
)
from seedlearn.errors import ContractError, ResourceCapError
from seedlearn.gen import parity_table
from seedlearn.seeds import find_seed_enumerate
from strategies import T, dnfs


def test_parity4_certificate():
    f = parity_table(4)
    cert = certify(f, 1)
    assert isinstance(cert, Certificate)
    assert cert.q == 0
    assert cert.points == {0b0000: 0, 0b0001: 1, 0b0010: 1}
    (w,) = cert.provenance
    assert w.term == Term.empty(4)
    assert w.positives == (0b0001, 0b0010) and w.negative == 0b0000
    assert verify_certificate(f, cert, 1)


def test_cover_cases():
    f = TruthTable(2, Dnf(2, (T(2, 1), T(2, 2))).table())
    res = certify(f, 2)
    assert isinstance(res, Cover)
    assert res.dnf.table() == f.bits
    zero = certify(TruthTable(3, 0), 1)
    assert isinstance(zero, Cover) and zero.terms == 0


def test_verify_trivial_cases():
    f = TruthTable(4, T(4, 1).table())
    empty = Certificate(4, {}, [], 0, PartialFn(4))
    assert not verify_certificate(f, empty, 0)
    single = Certificate(4, {0b1000: 1}, [], 0, PartialFn(4))
    assert not verify_certificate(f, single, 1)
    # wrong labels never verify
    assert not verify_certificate(f, Certificate(4, {0b1000: 0}, [], 0, PartialFn(4)), 0)


def test_three_point_certificate_rules_out_one_term():
    # the closure of 0001 and 0010 covers 0000
    assert closure([0b0001, 0b0010], 4) == T(4, -1, -2)
    assert oracles.min_dnf_size(0b0110, 0b0001, 2) == 2


def test_argument_checks():
    with pytest.raises(ContractError):
        certify(parity_table(3), 0)
    with pytest.raises(ResourceCapError):
        certify(parity_table(6), 1, max_n=5)


@pytest.mark.parametrize("n,s", [(4, 1), (6, 1), (8, 2), (5, 1), (7, 1)])
def test_parity_certificates(n, s):
    f = parity_table(n)
    cert = certify(f, s)
    assert isinstance(cert, Certificate)
    assert verify_certificate(f, cert, s)
    assert cert.size() <= certificate_size_bound(n, cert.q)
    assert all(w.is_triple() and check_witness(f, w) for w in cert.provenance)
    # genuinely stuck
    assert find_seed_enumerate(cert.residual, cert.q) is None


def test_fallback_witness_for_partial_residual():
    # no triple exists: every pair of positives agrees on one coordinate
    # the negative 000 disagrees with all of them there
    from seedlearn.certs import _witness

    f = PartialFn.from_sets(3, [0b110, 0b101, 0b011], [0b000])
    w = _witness(f, Term.empty(3), Term.empty(3).table())
    assert not w.is_triple()
    assert len(w.positives) == 3 and w.negative == 0
    assert closure(w.positives, 3).covers(w.negative)
    for i, p in enumerate(w.positives):
        for p2 in w.positives[i + 1 :]:
            assert not between(p, p2, 0)


@settings(max_examples=30)
@given(dnfs(max_n=5, max_terms=6))
def test_certify_dichotomy(d):
    f = TruthTable(d.n, d.table())
    for s in (1, 2):
        res = certify(f, s)
        if isinstance(res, Cover):
            assert res.dnf.table() == f.bits
        else:
            assert verify_certificate(f, res, s)
            assert all(check_witness(f, w) for w in res.provenance)
            assert res.size() <= certificate_size_bound(f.n, res.q)
            # a certificate means ds(f) > s
            assert oracles.min_dnf_size(f.bits, ((1 << 2**f.n) - 1) ^ f.bits, f.n, limit=s) is None


def test_witness_type():
    w = Witness(Term.empty(2), (1, 2), 0)
    assert w.is_triple()
    f = TruthTable(2, 0b0110)
    assert check_witness(f, w)
    assert not check_witness(f, Witness(Term.empty(2), (1, 3), 0))  # 11 is not positive
    assert not check_witness(f, Witness(T(2, 1), (1, 2), 0))  # x1 does not cover 01
