"""Assignments, literals, terms, DNFs, partial functions and decision trees.

Conventions used throughout the package:

* An assignment over ``n`` variables is a plain ``int`` in ``range(2**n)``.
  Bit ``n - i`` holds x_i, so x_1 is the most significant bit and the
  integer doubles as the assignment's index in a truth table.  The bitstring
  ``"101"`` is x1=1, x2=0, x3=1, i.e. the integer 5.  Integer order is
  lexicographic order on bitstrings.
* Sets of assignments and truth tables are ``int`` bitsets of width
  ``2**n``: bit ``k`` is the value at assignment ``k``.
* A term stores two variable masks in the same layout as assignments:
  ``pos`` (unnegated literals) and ``neg`` (negated literals).  A term may
  contain both x_i and ~x_i; it is then unsatisfiable and evaluates to 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Optional, Union

from .errors import ContractError, ResourceCapError

Assignment = int

#: Largest dimension for which full truth tables are built.
DEFAULT_MAX_TABLE_N = 22


# ---------------------------------------------------------------------------
# bit helpers


def var_bit(i: int, n: int) -> int:
    """Mask of variable x_i inside an ``n``-bit assignment."""
    return 1 << (n - i)


def assignment_mask(n: int) -> int:
    return (1 << n) - 1


def table_mask(n: int) -> int:
    """Bitset containing every assignment of ``{0,1}^n``."""
    return (1 << (1 << n)) - 1


def check_table_dim(n: int, max_n: int = DEFAULT_MAX_TABLE_N) -> None:
    if n < 0:
        raise ContractError(f"negative dimension {n}")
    if n > max_n:
        raise ResourceCapError(f"n={n} exceeds the truth-table cap max_n={max_n}")


@lru_cache(maxsize=64)
def var_tables(n: int) -> tuple[int, ...]:
    """``var_tables(n)[i]`` is the truth table of x_i (index 0 unused)."""
    width = 1 << n
    full = (1 << width) - 1
    out = [0]
    for i in range(1, n + 1):
        block = 1 << (n - i)
        unit = ((1 << block) - 1) << block
        repeat = full // ((1 << (2 * block)) - 1)
        out.append(unit * repeat)
    return tuple(out)


def iter_bits(mask: int) -> Iterator[int]:
    """Positions of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def lowest_bit(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def to_bitstring(a: Assignment, n: int) -> str:
    return format(a, f"0{n}b") if n else ""


def from_bitstring(s: str) -> Assignment:
    if s and set(s) - {"0", "1"}:
        raise ValueError(f"not a bitstring: {s!r}")
    return int(s, 2) if s else 0


def weight(a: Assignment) -> int:
    return a.bit_count()


def between(x: Assignment, y: Assignment, r: Assignment) -> bool:
    """True iff every coordinate of ``r`` equals that of ``x`` or of ``y``."""
    return ((x ^ r) & (y ^ r)) == 0


# ---------------------------------------------------------------------------
# literals and terms


@dataclass(frozen=True, order=True)
class Literal:
    var: int
    negated: bool = False

    def __post_init__(self):
        if self.var < 1:
            raise ContractError(f"variable index must be >= 1, got {self.var}")

    def complement(self) -> Literal:
        return Literal(self.var, not self.negated)

    def satisfied_by(self, a: Assignment, n: int) -> bool:
        return bool((a >> (n - self.var)) & 1) != self.negated

    def __str__(self):
        return f"~x{self.var}" if self.negated else f"x{self.var}"


@dataclass(frozen=True)
class Term:
    """Conjunction of literals over ``n`` variables."""

    n: int
    pos: int = 0
    neg: int = 0

    def __post_init__(self):
        full = assignment_mask(self.n)
        if self.pos & ~full or self.neg & ~full:
            raise ContractError(f"literal out of range for n={self.n}")

    @classmethod
    def from_literals(cls, n: int, literals: Iterable[Literal | tuple[int, bool]]) -> Term:
        pos = neg = 0
        for lit in literals:
            var, negated = (lit.var, lit.negated) if isinstance(lit, Literal) else lit
            if not 1 <= var <= n:
                raise ContractError(f"variable x{var} out of range for n={n}")
            if negated:
                neg |= var_bit(var, n)
            else:
                pos |= var_bit(var, n)
        return cls(n, pos, neg)

    @classmethod
    def empty(cls, n: int) -> Term:
        return cls(n, 0, 0)

    @classmethod
    def all_literals(cls, n: int) -> Term:
        full = assignment_mask(n)
        return cls(n, full, full)

    @classmethod
    def minterm(cls, a: Assignment, n: int) -> Term:
        return cls(n, a, assignment_mask(n) & ~a)

    @property
    def literals(self) -> tuple[Literal, ...]:
        out = []
        for i in range(1, self.n + 1):
            b = var_bit(i, self.n)
            if self.pos & b:
                out.append(Literal(i, False))
            if self.neg & b:
                out.append(Literal(i, True))
        return tuple(out)

    def size(self) -> int:
        return self.pos.bit_count() + self.neg.bit_count()

    def satisfiable(self) -> bool:
        return not (self.pos & self.neg)

    def variables(self) -> int:
        """Mask of the variables mentioned by the term."""
        return self.pos | self.neg

    def covers(self, a: Assignment) -> bool:
        return (a & self.pos) == self.pos and not (a & self.neg)

    def issuperset(self, other: Term) -> bool:
        """Literal-set containment: every literal of ``other`` is in ``self``."""
        return (other.pos & ~self.pos) == 0 and (other.neg & ~self.neg) == 0

    def union(self, other: Term) -> Term:
        return Term(self.n, self.pos | other.pos, self.neg | other.neg)

    def restrict_to(self, a: Assignment) -> Term:
        """Drop every literal falsified by ``a``."""
        return Term(self.n, self.pos & a, self.neg & ~a & assignment_mask(self.n))

    def lift(self, n: int) -> Term:
        """The same term read as a term over ``n >= self.n`` variables."""
        if n < self.n:
            raise ContractError(f"cannot lift a term over {self.n} variables to {n}")
        shift = n - self.n
        return Term(n, self.pos << shift, self.neg << shift)

    def table(self) -> int:
        check_table_dim(self.n)
        if not self.satisfiable():
            return 0
        vt = var_tables(self.n)
        t = table_mask(self.n)
        full = t
        for i in range(1, self.n + 1):
            b = var_bit(i, self.n)
            if self.pos & b:
                t &= vt[i]
            elif self.neg & b:
                t &= full ^ vt[i]
        return t

    def order_key(self) -> tuple:
        """Canonical order: by size, then lexicographic on (var, negated)."""
        return (self.size(), tuple((lit.var, lit.negated) for lit in self.literals))

    def __str__(self):
        if not self.pos and not self.neg:
            return "1"
        return "&".join(str(lit) for lit in self.literals)


def term_table(n: int, pos: int, neg: int) -> int:
    """Truth table of the term given by raw masks (0 if contradictory)."""
    if pos & neg:
        return 0
    vt = var_tables(n)
    full = table_mask(n)
    t = full
    for i in range(1, n + 1):
        b = 1 << (n - i)
        if pos & b:
            t &= vt[i]
        elif neg & b:
            t &= full ^ vt[i]
    return t


def count_terms(n: int, max_size: int) -> int:
    """Number of satisfiable terms with at most ``max_size`` literals."""
    return sum(math.comb(n, i) * 2**i for i in range(max_size + 1))


def enumerate_terms(n: int, max_size: int) -> Iterator[Term]:
    """All satisfiable terms of size <= ``max_size`` in canonical order.

    Terms come by size; within a size, lexicographically on the sorted
    sequence of (var, negated) pairs, unnegated before negated.
    """
    if not 0 <= max_size <= n:
        raise ContractError(f"max_size must be in [0, {n}], got {max_size}")
    for size in range(max_size + 1):
        for pos, neg in _terms_of_size(n, size, 1):
            yield Term(n, pos, neg)


@lru_cache(maxsize=8)
def term_tables(n: int, max_size: int) -> tuple[tuple[int, int, int], ...]:
    """``(pos, neg, table)`` for every term of :func:`enumerate_terms`, same order."""
    check_table_dim(n)
    vt = var_tables(n)
    full = table_mask(n)
    out = []

    def walk(size, first_var, pos, neg, t):
        if size == 0:
            out.append((pos, neg, t))
            return
        for v in range(first_var, n - size + 2):
            b = 1 << (n - v)
            walk(size - 1, v + 1, pos | b, neg, t & vt[v])
            walk(size - 1, v + 1, pos, neg | b, t & (full ^ vt[v]))

    for size in range(max_size + 1):
        walk(size, 1, 0, 0, full)
    return tuple(out)


def _terms_of_size(n: int, size: int, first_var: int) -> Iterator[tuple[int, int]]:
    if size == 0:
        yield 0, 0
        return
    for v in range(first_var, n - size + 2):
        b = 1 << (n - v)
        for pos, neg in _terms_of_size(n, size - 1, v + 1):
            yield pos | b, neg
        for pos, neg in _terms_of_size(n, size - 1, v + 1):
            yield pos, neg | b


# ---------------------------------------------------------------------------
# DNF formulas


@dataclass(frozen=True)
class Dnf:
    """Disjunction of terms.  No terms is the constant 0."""

    n: int
    terms: tuple[Term, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        for t in self.terms:
            if t.n != self.n:
                raise ContractError(f"term over {t.n} variables in a DNF over {self.n}")

    @classmethod
    def constant(cls, n: int, value: int) -> Dnf:
        return cls(n, (Term.empty(n),) if value else ())

    def size(self) -> int:
        return len(self.terms)

    def covers(self, a: Assignment) -> bool:
        return any(t.covers(a) for t in self.terms)

    def table(self) -> int:
        check_table_dim(self.n)
        out = 0
        for t in self.terms:
            out |= t.table()
        return out

    def lift(self, n: int) -> Dnf:
        return Dnf(n, tuple(t.lift(n) for t in self.terms))

    def __str__(self):
        if not self.terms:
            return "0"
        return " | ".join(f"({t})" if t.size() > 1 else str(t) for t in self.terms)


# ---------------------------------------------------------------------------
# partial functions and truth tables


@dataclass(frozen=True)
class PartialFn:
    """Partial Boolean function: ``pos`` / ``neg`` are assignment bitsets.

    Assignments in neither set are undefined.
    """

    n: int
    pos: int = 0
    neg: int = 0

    def __post_init__(self):
        if self.pos & self.neg:
            a = lowest_bit(self.pos & self.neg)
            raise ContractError(f"assignment {to_bitstring(a, self.n)} is both positive and negative")
        if (self.pos | self.neg) & ~table_mask(self.n):
            raise ContractError(f"assignment out of range for n={self.n}")

    @classmethod
    def from_sets(cls, n: int, positives: Iterable[Assignment], negatives: Iterable[Assignment] = ()) -> PartialFn:
        pos = neg = 0
        for a in positives:
            pos |= 1 << a
        for a in negatives:
            neg |= 1 << a
        return cls(n, pos, neg)

    @classmethod
    def from_table(cls, n: int, bits: int) -> PartialFn:
        return cls(n, bits, table_mask(n) & ~bits)

    @property
    def positives(self) -> list[Assignment]:
        return list(iter_bits(self.pos))

    @property
    def negatives(self) -> list[Assignment]:
        return list(iter_bits(self.neg))

    def value(self, a: Assignment) -> Optional[int]:
        if (self.pos >> a) & 1:
            return 1
        if (self.neg >> a) & 1:
            return 0
        return None

    def defined(self) -> int:
        return self.pos | self.neg

    def is_total(self) -> bool:
        return self.defined() == table_mask(self.n)

    def project(self, term: Term) -> PartialFn:
        """Restriction to the assignments covered by ``term``.

        This is the projection f_T with the fixed coordinates kept in place,
        which is all any consistency test needs.
        """
        t = term.table()
        return PartialFn(self.n, self.pos & t, self.neg & t)

    def consistent_with(self, table: int) -> bool:
        return not (self.pos & ~table) and not (self.neg & table)

    def without_positives(self, mask: int) -> PartialFn:
        """Make the positives in ``mask`` undefined."""
        return PartialFn(self.n, self.pos & ~mask, self.neg)


@dataclass(frozen=True)
class TruthTable:
    n: int
    bits: int

    def __post_init__(self):
        if self.bits & ~table_mask(self.n):
            raise ContractError(f"truth table wider than 2^{self.n}")

    def value(self, a: Assignment) -> int:
        return (self.bits >> a) & 1

    def to_partial(self) -> PartialFn:
        return PartialFn.from_table(self.n, self.bits)

    def __str__(self):
        return "".join(str((self.bits >> k) & 1) for k in range(1 << self.n))

    @classmethod
    def from_string(cls, n: int, s: str) -> TruthTable:
        if len(s) != 1 << n or set(s) - {"0", "1"}:
            raise ValueError(f"expected {1 << n} characters of 0/1")
        bits = 0
        for k, ch in enumerate(s):
            if ch == "1":
                bits |= 1 << k
        return cls(n, bits)


# ---------------------------------------------------------------------------
# decision trees


@dataclass(frozen=True)
class Leaf:
    label: int


@dataclass(frozen=True)
class Node:
    var: int
    lo: DecisionTree
    hi: DecisionTree


DecisionTree = Union[Leaf, Node]


def tree_eval(tree: DecisionTree, a: Assignment, n: int) -> int:
    while isinstance(tree, Node):
        tree = tree.hi if (a >> (n - tree.var)) & 1 else tree.lo
    return tree.label


def tree_table(tree: DecisionTree, n: int) -> int:
    check_table_dim(n)
    vt = var_tables(n)
    full = table_mask(n)

    def walk(node, region):
        if isinstance(node, Leaf):
            return region if node.label else 0
        return walk(node.lo, region & (full ^ vt[node.var])) | walk(node.hi, region & vt[node.var])

    return walk(tree, full)


def tree_one_leaves(tree: DecisionTree) -> int:
    if isinstance(tree, Leaf):
        return 1 if tree.label else 0
    return tree_one_leaves(tree.lo) + tree_one_leaves(tree.hi)


def tree_max_var(tree: DecisionTree) -> int:
    if isinstance(tree, Leaf):
        return 0
    return max(tree.var, tree_max_var(tree.lo), tree_max_var(tree.hi))


def check_tree(tree: DecisionTree, n: int) -> None:
    """Raise unless variables are in range and distinct along every path."""

    def walk(node, seen):
        if isinstance(node, Leaf):
            if node.label not in (0, 1):
                raise ContractError(f"leaf label must be 0 or 1, got {node.label}")
            return
        if not 1 <= node.var <= n:
            raise ContractError(f"variable x{node.var} out of range for n={n}")
        if node.var in seen:
            raise ContractError(f"variable x{node.var} repeated on a root-to-leaf path")
        walk(node.lo, seen | {node.var})
        walk(node.hi, seen | {node.var})

    walk(tree, frozenset())


# ---------------------------------------------------------------------------
# generic evaluation


Formula = Union[Term, Dnf, Leaf, Node]


def evaluate(formula: Formula, a: Assignment, n: Optional[int] = None) -> int:
    """Value of a term, DNF or decision tree on assignment ``a``."""
    if isinstance(formula, (Term, Dnf)):
        if n is not None and n != formula.n:
            raise ContractError(f"formula over {formula.n} variables evaluated at dimension {n}")
        if not 0 <= a < 1 << formula.n:
            raise ContractError(f"assignment {a} out of range for n={formula.n}")
        return int(formula.covers(a))
    if n is None:
        raise ContractError("decision-tree evaluation needs the dimension n")
    if not 0 <= a < 1 << n:
        raise ContractError(f"assignment {a} out of range for n={n}")
    return tree_eval(formula, a, n)


def truth_table(formula: Formula, n: int, max_n: int = DEFAULT_MAX_TABLE_N) -> TruthTable:
    check_table_dim(n, max_n)
    if isinstance(formula, (Term, Dnf)):
        if formula.n > n:
            raise ContractError(f"formula over {formula.n} variables does not fit n={n}")
        return TruthTable(n, formula.lift(n).table())
    if tree_max_var(formula) > n:
        raise ContractError(f"decision tree mentions variables beyond n={n}")
    return TruthTable(n, tree_table(formula, n))


# ---------------------------------------------------------------------------
# closure and monomial consistency


def closure(points: Iterable[Assignment], n: int) -> Term:
    """Term of the literals satisfied by every point.

    The empty set yields the all-literals (unsatisfiable) term.
    """
    full = assignment_mask(n)
    pos = neg = full
    for a in points:
        pos &= a
        neg &= ~a
    return Term(n, pos, neg & full)


def closure_of_set(mask: int, n: int) -> Term:
    """:func:`closure` of an assignment bitset."""
    full_table = table_mask(n)
    vt = var_tables(n)
    pos = neg = 0
    for i in range(1, n + 1):
        if not mask & ~vt[i] & full_table:
            pos |= 1 << (n - i)
        if not mask & vt[i]:
            neg |= 1 << (n - i)
    return Term(n, pos, neg)


def monomial_consistency(f: PartialFn) -> Optional[Term]:
    """A monomial consistent with ``f``, or None if there is none.

    The closure of the positives is the most specific candidate, so if it
    covers a negative, every monomial covering all positives does too.
    """
    t = closure_of_set(f.pos, f.n)
    if t.table() & f.neg:
        return None
    return t
