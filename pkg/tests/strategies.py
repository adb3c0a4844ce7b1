"""Hypothesis strategies and small constructors shared by the tests."""

from hypothesis import strategies as st

from seedlearn.boolcore import Dnf, PartialFn, Term


def T(n, *lits):
    """Term from signed indices: 3 is x3, -3 is ~x3."""
    return Term.from_literals(n, [(abs(v), v < 0) for v in lits])


@st.composite
def terms(draw, n=None, max_size=None):
    n = n or draw(st.integers(1, 6))
    k = draw(st.integers(0, n if max_size is None else min(n, max_size)))
    vs = draw(st.permutations(range(1, n + 1)))[:k]
    signs = draw(st.lists(st.booleans(), min_size=k, max_size=k))
    return Term.from_literals(n, list(zip(vs, signs)))


@st.composite
def dnfs(draw, max_n=6, max_terms=5):
    n = draw(st.integers(1, max_n))
    return Dnf(n, tuple(draw(st.lists(terms(n=n), max_size=max_terms))))


@st.composite
def partials(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    labels = draw(st.lists(st.sampled_from([None, 0, 1]), min_size=2**n, max_size=2**n))
    pos = sum(1 << a for a, v in enumerate(labels) if v == 1)
    neg = sum(1 << a for a, v in enumerate(labels) if v == 0)
    return PartialFn(n, pos, neg)


@st.composite
def trees(draw, n=None, max_leaves=8):
    from seedlearn.boolcore import Leaf, Node

    n = n or draw(st.integers(1, 6))

    def build(free, budget):
        if budget <= 1 or not free or draw(st.integers(0, 3)) == 0:
            return Leaf(draw(st.integers(0, 1)))
        var = draw(st.sampled_from(sorted(free)))
        left = draw(st.integers(1, budget - 1))
        return Node(var, build(free - {var}, left), build(free - {var}, budget - left))

    return n, build(frozenset(range(1, n + 1)), draw(st.integers(1, max_leaves)))
