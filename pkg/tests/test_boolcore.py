import pytest
from hypothesis import given, strategies as st

import oracles
from strategies import T, dnfs, partials
from seedlearn.boolcore import (
    Dnf,
    Leaf,
    Literal,
    Node,
    PartialFn,
    Term,
    TruthTable,
    between,
    check_tree,
    closure,
    closure_of_set,
    count_terms,
    enumerate_terms,
    evaluate,
    from_bitstring,
    monomial_consistency,
    to_bitstring,
    truth_table,
)
from seedlearn.errors import ContractError, ResourceCapError


# --- assignments -----------------------------------------------------------


def test_bitstring_roundtrip_and_order():
    assert from_bitstring("101") == 5
    assert to_bitstring(5, 3) == "101"
    assert to_bitstring(1, 4) == "0001"
    # integer order is lexicographic bitstring order
    strs = [to_bitstring(a, 3) for a in range(8)]
    assert strs == sorted(strs)


def test_between_examples():
    assert between(0b0001, 0b0010, 0b0000)
    assert not between(0b0001, 0b0010, 0b0100)
    assert between(0b1011, 0b1011, 0b1011)


@given(st.integers(1, 6).flatmap(lambda n: st.tuples(st.just(n), *[st.integers(0, 2**n - 1)] * 3)))
def test_between_matches_coordinatewise_definition(args):
    n, x, y, r = args
    px, py, pr = (oracles.point(v, n) for v in (x, y, r))
    assert between(x, y, r) == all(pr[i] in (px[i], py[i]) for i in range(n))


# --- evaluation ------------------------------------------------------------


def test_eval_examples():
    f = Dnf(3, (T(3, 1), T(3, 2, -3)))
    assert evaluate(f, 0b101) == 1
    assert evaluate(Dnf(3, ()), 0b111) == 0
    assert all(evaluate(Term.empty(4), a) == 1 for a in range(16))


def test_contradictory_term_is_never_satisfied():
    t = Term.all_literals(3)
    assert not t.satisfiable()
    assert t.size() == 6
    assert t.table() == 0


def test_eval_dimension_mismatch():
    with pytest.raises(ContractError):
        evaluate(T(3, 1), 0, n=4)
    with pytest.raises(ContractError):
        evaluate(T(3, 1), 8)
    with pytest.raises(ContractError):
        T(3, 4)


def test_truth_table_examples():
    assert str(truth_table(T(2, 1, 2), 2)) == "0001"
    assert str(truth_table(Dnf.constant(1, 1), 1)) == "11"
    xor = Node(1, Node(2, Leaf(0), Leaf(1)), Node(2, Leaf(1), Leaf(0)))
    assert str(truth_table(xor, 2)) == "0110"


def test_truth_table_cap():
    with pytest.raises(ResourceCapError):
        truth_table(T(3, 1), 12, max_n=10)


def test_truth_table_lifts_smaller_formula():
    # x1 over 1 variable read at n = 2 is still x1
    assert str(truth_table(T(1, 1), 2)) == "0011"


@given(dnfs())
def test_dnf_eval_is_or_of_terms(f):
    lits = oracles.dnf_lits(f)
    for a in range(2**f.n):
        want = oracles.dnf_value(lits, oracles.point(a, f.n))
        assert bool(evaluate(f, a)) == want
        assert f.covers(a) == any(evaluate(t, a) for t in f.terms)
    assert f.table() == oracles.table(lambda x: oracles.dnf_value(lits, x), f.n)


def test_tree_eval_and_path_check():
    tree = Node(2, Leaf(0), Node(1, Leaf(1), Leaf(0)))
    assert [evaluate(tree, a, 2) for a in range(4)] == [0, 1, 0, 0]
    with pytest.raises(ContractError):
        check_tree(Node(1, Node(1, Leaf(0), Leaf(1)), Leaf(1)), 2)
    with pytest.raises(ContractError):
        evaluate(tree, 0)


# --- terms -----------------------------------------------------------------


def test_term_literals_are_canonical():
    t = T(4, -3, 1, 3)
    assert t.literals == (Literal(1), Literal(3), Literal(3, True))
    assert str(t) == "x1&x3&~x3"
    assert str(Term.empty(4)) == "1"


def test_enumerate_terms_examples():
    got = [str(t) for t in enumerate_terms(2, 1)]
    assert got == ["1", "x1", "~x1", "x2", "~x2"]
    assert len(list(enumerate_terms(2, 2))) == 9
    assert [str(t) for t in enumerate_terms(4, 0)] == ["1"]


@pytest.mark.parametrize("n,k", [(1, 1), (3, 2), (4, 4), (5, 3), (6, 2)])
def test_enumerate_terms_count_and_distinct(n, k):
    ts = list(enumerate_terms(n, k))
    assert len(ts) == count_terms(n, k)
    assert len({(t.pos, t.neg) for t in ts}) == len(ts)
    assert all(t.satisfiable() and t.size() <= k for t in ts)
    keys = [t.order_key() for t in ts]
    assert keys == sorted(keys)


# --- closure and monomial consistency ---------------------------------------


def test_closure_examples():
    assert closure([0b110, 0b111], 3) == T(3, 1, 2)
    assert closure([0b101], 3) == T(3, 1, -2, 3)
    assert closure([], 3) == Term.all_literals(3)


@given(st.integers(1, 6).flatmap(lambda n: st.tuples(st.just(n), st.sets(st.integers(0, 2**n - 1), max_size=6))))
def test_closure_matches_literal_intersection(args):
    n, pts = args
    want = oracles.literal_closure(pts, n)
    got = closure(pts, n)
    assert {(lit.var, lit.negated) for lit in got.literals} == want
    mask = sum(1 << a for a in pts)
    assert closure_of_set(mask, n) == got


def test_monomial_consistency_examples():
    f = PartialFn.from_sets(3, [0b110, 0b111], [0b011])
    assert monomial_consistency(f) == T(3, 1, 2)
    assert monomial_consistency(PartialFn.from_sets(2, [0b10, 0b01], [0b11])) is None
    # no positives: the closure is the all-literals term, consistent with anything
    assert monomial_consistency(PartialFn.from_sets(2, [], [0, 3])) == Term.all_literals(2)


@given(partials(max_n=5))
def test_monomial_consistency_matches_brute_force(f):
    brute = oracles.consistent_monomials(f.pos, f.neg, f.n)
    got = monomial_consistency(f)
    if not f.pos:
        assert got is not None
        return
    assert (got is not None) == bool(brute)
    if got is not None:
        assert tuple(oracles.lits_of(got)) in brute


# --- partial functions and tables --------------------------------------------


def test_partial_function_rejects_overlap():
    with pytest.raises(ContractError):
        PartialFn(2, 0b1, 0b1)


def test_partial_function_queries():
    f = PartialFn.from_sets(3, [1, 5], [0])
    assert f.value(5) == 1 and f.value(0) == 0 and f.value(2) is None
    assert f.positives == [1, 5] and f.negatives == [0]
    assert not f.is_total()
    proj = f.project(T(3, 1))
    assert proj.positives == [5] and proj.negatives == []
    assert f.without_positives(1 << 5).positives == [1]


def test_truth_table_string_roundtrip():
    tt = TruthTable.from_string(2, "0110")
    assert str(tt) == "0110"
    assert tt.to_partial().is_total()
    with pytest.raises(ValueError):
        TruthTable.from_string(2, "011")
