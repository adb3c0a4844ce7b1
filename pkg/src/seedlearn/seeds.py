"""Seeds of partial Boolean functions.

A seed of ``f`` is a satisfiable term ``T`` covering at least one positive
of ``f`` such that the restriction of ``f`` to the assignments covered by
``T`` is consistent with a monomial.  That monomial can always be taken to
be the closure of the covered positives, which contains ``T``'s literals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .boolcore import (
    Assignment,
    DecisionTree,
    Dnf,
    Leaf,
    Literal,
    Node,
    PartialFn,
    Term,
    check_tree,
    enumerate_terms,
    lowest_bit,
    monomial_consistency,
    table_mask,
    term_table,
    tree_one_leaves,
    tree_table,
    var_tables,
)
from .errors import ContractError


@dataclass(frozen=True)
class Seed:
    term: Term
    witness: Assignment
    residual: Term

    def size(self) -> int:
        return self.term.size()


def seed_bound(n: int, s: int) -> int:
    """ceil(2 * sqrt(n ln s)) clamped to [0, n]."""
    if n < 1 or s < 1:
        raise ContractError(f"seed_bound needs n >= 1 and s >= 1, got n={n}, s={s}")
    if s == 1:
        return 0
    return min(n, math.ceil(2 * math.sqrt(n * math.log(s))))


def is_seed(f: PartialFn, term: Term) -> Optional[Seed]:
    if term.n != f.n:
        raise ContractError(f"term over {term.n} variables tested against f over {f.n}")
    if not term.satisfiable():
        raise ContractError(f"contradictory term {term} cannot be a seed")
    projected = f.project(term)
    if not projected.pos:
        return None
    residual = monomial_consistency(projected)
    if residual is None:
        return None
    return Seed(term, lowest_bit(projected.pos), residual)


def check_seed(f: PartialFn, seed: Seed) -> bool:
    """Validate a seed point by point, without the bitset shortcuts."""
    t, r = seed.term, seed.residual
    if f.value(seed.witness) != 1 or not t.covers(seed.witness):
        return False
    for a in range(1 << f.n):
        if not t.covers(a):
            continue
        v = f.value(a)
        if v == 1 and not r.covers(a):
            return False
        if v == 0 and r.covers(a):
            return False
    return True


def find_seed_enumerate(f: PartialFn, q: int) -> Optional[Seed]:
    """First seed of size <= q in canonical term order, if any."""
    for term in enumerate_terms(f.n, q):
        seed = is_seed(f, term)
        if seed is not None:
            return seed
    return None


def min_seed(f: PartialFn) -> Optional[Seed]:
    """A seed of minimum size (first in canonical order among those)."""
    return find_seed_enumerate(f, f.n)


# ---------------------------------------------------------------------------
# the constructive procedure


def find_seed_lemma2(f: PartialFn, phi: Dnf, trace: Optional[list] = None) -> Seed:
    """Build a seed of ``f`` from a consistent DNF ``phi``.

    The seed has size at most ``seed_bound(n, phi.size())`` when ``phi`` is
    a smallest consistent DNF.  Ties are broken by lowest variable index,
    unnegated literal first.  When ``trace`` is a list, the steps taken are
    appended to it as ``("Q", literal)``, ``("R", literal)`` and finally
    ``("output", term)``.
    """
    n = f.n
    if phi.n != n:
        raise ContractError(f"phi is over {phi.n} variables, f over {n}")
    if not f.pos:
        raise ContractError("f has no positive example")
    if not f.consistent_with(phi.table()):
        raise ContractError("phi is not consistent with f")

    s = phi.size()
    limit = n * math.log(s)  # compare size**2 against n ln s
    vt = var_tables(n)
    full = table_mask(n)

    terms = [(t.pos, t.neg) for t in phi.terms if t.table() & f.pos]
    qpos = qneg = rpos = rneg = 0

    for _ in range(n + 1):
        for p, m in terms:
            if (p.bit_count() + m.bit_count()) ** 2 <= limit:
                seed_term = Term(n, qpos | p, qneg | m)
                if trace is not None:
                    trace.append(("output", seed_term))
                seed = is_seed(f, seed_term)
                if seed is None:
                    raise RuntimeError(f"procedure produced {seed_term}, which is not a seed")
                return seed
        if not terms:
            raise RuntimeError("working formula lost all its terms")

        used = qpos | qneg | rpos | rneg
        covered_by_q = f.pos & term_table(n, qpos, qneg)
        common = None
        for i in range(1, n + 1):
            b = 1 << (n - i)
            if used & b:
                continue
            if not covered_by_q & (full ^ vt[i]):
                common = (i, False)
                break
            if not covered_by_q & vt[i]:
                common = (i, True)
                break

        if common is not None:
            i, negated = common
            b = 1 << (n - i)
            if negated:
                rneg |= b
                terms = [(p, m & ~b) for p, m in terms]
            else:
                rpos |= b
                terms = [(p & ~b, m) for p, m in terms]
            if trace is not None:
                trace.append(("R", Literal(i, negated)))
            continue

        best = None
        for i in range(1, n + 1):
            b = 1 << (n - i)
            for negated in (False, True):
                count = sum(1 for p, m in terms if (m if negated else p) & b)
                if best is None or count > best[0]:
                    best = (count, i, negated)
        _, i, negated = best
        b = 1 << (n - i)
        # the complement of l joins Q; l is set to 0 in phi
        if negated:
            qpos |= b
            terms = [(p & ~b, m) for p, m in terms if not m & b]
        else:
            qneg |= b
            terms = [(p, m & ~b) for p, m in terms if not p & b]
        if trace is not None:
            trace.append(("Q", Literal(i, not negated)))
        fixed_pos, fixed_neg = qpos | rpos, qneg | rneg
        terms = [(p, m) for p, m in terms if term_table(n, p | fixed_pos, m | fixed_neg) & f.pos]

    raise RuntimeError(f"no seed after {n + 1} iterations")


# ---------------------------------------------------------------------------
# decision trees


def _reduce_tree(tree: DecisionTree, n: int, positives: int) -> DecisionTree:
    """Relabel 1-leaves reached by no positive to 0 and fold 0-only subtrees into a 0-leaf."""
    vt = var_tables(n)
    full = table_mask(n)

    def walk(node, region):
        if isinstance(node, Leaf):
            if node.label and not region & positives:
                return Leaf(0)
            return node
        lo = walk(node.lo, region & (full ^ vt[node.var]))
        hi = walk(node.hi, region & vt[node.var])
        if lo == Leaf(0) and hi == Leaf(0):
            return Leaf(0)
        return Node(node.var, lo, hi)

    return walk(tree, full)


def _is_key(node: Node) -> bool:
    return node.lo != Leaf(0) and node.hi != Leaf(0)


def key_depth_leaf(tree: DecisionTree) -> tuple[int, list[tuple[Literal, bool]]]:
    """The 1-leaf of least key-depth (leftmost on ties).

    Returns its key-depth and its path as ``(literal, from_key_node)`` pairs.
    """
    best: list = [None]

    def walk(node, depth, path):
        if isinstance(node, Leaf):
            if node.label and (best[0] is None or depth < best[0][0]):
                best[0] = (depth, list(path))
            return
        key = _is_key(node)
        d = depth + key
        for child, negated in ((node.lo, True), (node.hi, False)):
            path.append((Literal(node.var, negated), key))
            walk(child, d, path)
            path.pop()

    walk(tree, 0, [])
    if best[0] is None:
        raise ContractError("decision tree has no leaf labeled 1")
    return best[0]


def dtree_seed(tree: DecisionTree, n: int, f: Optional[PartialFn] = None) -> Seed:
    """Seed of size at most floor(log2 s1) read off a decision tree.

    ``f`` defaults to the tree's own truth table; if given it must be
    consistent with the tree.  Literals at key nodes (no 0-leaf child) on
    the path to the chosen 1-leaf form the seed.
    """
    check_tree(tree, n)
    table = tree_table(tree, n)
    if f is None:
        f = PartialFn.from_table(n, table)
    elif f.n != n or not f.consistent_with(table):
        raise ContractError("f is not consistent with the decision tree")
    if not f.pos:
        raise ContractError("f has no positive example")
    reduced = _reduce_tree(tree, n, f.pos)
    _, path = key_depth_leaf(reduced)
    seed_term = Term.from_literals(n, [lit for lit, key in path if key])
    seed = is_seed(f, seed_term)
    if seed is None:
        raise RuntimeError(f"key-node literals {seed_term} do not form a seed")
    return seed


def dtree_seed_bound(tree: DecisionTree) -> int:
    s1 = tree_one_leaves(tree)
    return s1.bit_length() - 1 if s1 else 0
