"""Text formats for DNFs, labeled samples, truth tables and decision trees.

DNF::

    dnf n=4
    1 2
    -1 3 4
    0            <- the empty (constant-true) term

Sample::

    sample n=3
    101 1
    000 0

Truth table (characters in assignment-index order)::

    tt n=2
    0001

Decision tree (prefix notation; ``x<i>`` is followed by its 0-child then
its 1-child)::

    tree n=2
    x1 x2 0 1 x2 1 0

Blank lines and lines starting with ``#`` are ignored everywhere.
"""

from __future__ import annotations

import re
from typing import Union

from .boolcore import (
    DecisionTree,
    Dnf,
    Leaf,
    Literal,
    Node,
    PartialFn,
    Term,
    TruthTable,
    check_tree,
    from_bitstring,
    iter_bits,
    to_bitstring,
)
from .errors import ContractError, ParseError

_HEADER = re.compile(r"^(dnf|sample|tt|tree)\s+n\s*=\s*(\d+)$")


def _content_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            out.append((lineno, line))
    return out


def _header(lines, expected=None) -> tuple[str, int]:
    if not lines:
        raise ParseError("empty input: missing header")
    lineno, line = lines[0]
    m = _HEADER.match(line)
    if not m:
        raise ParseError(f"bad header {line!r}", lineno)
    kind, n = m.group(1), int(m.group(2))
    if expected is not None and kind != expected:
        raise ParseError(f"expected a {expected!r} file, got {kind!r}", lineno)
    return kind, n


# ---------------------------------------------------------------------------
# DNF


def parse_dnf(text: str) -> Dnf:
    lines = _content_lines(text)
    _, n = _header(lines, "dnf")
    terms = []
    for lineno, line in lines[1:]:
        try:
            idx = [int(tok) for tok in line.split()]
        except ValueError:
            raise ParseError(f"non-integer literal in {line!r}", lineno) from None
        if idx == [0]:
            terms.append(Term.empty(n))
            continue
        lits = []
        for i in idx:
            if i == 0 or abs(i) > n:
                raise ParseError(f"literal index {i} out of range for n={n}", lineno)
            lits.append(Literal(abs(i), i < 0))
        terms.append(Term.from_literals(n, lits))
    return Dnf(n, tuple(terms))


def format_term(term: Term) -> str:
    if not term.pos and not term.neg:
        return "0"
    return " ".join(str(-lit.var if lit.negated else lit.var) for lit in term.literals)


def serialize_dnf(dnf: Dnf) -> str:
    lines = [f"dnf n={dnf.n}"]
    lines.extend(format_term(t) for t in dnf.terms)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# samples


def parse_sample(text: str) -> PartialFn:
    lines = _content_lines(text)
    _, n = _header(lines, "sample")
    pos = neg = 0
    for lineno, line in lines[1:]:
        parts = line.split()
        if len(parts) != 2 or parts[1] not in ("0", "1"):
            raise ParseError(f"expected '<bitstring> <0|1>', got {line!r}", lineno)
        bits, label = parts
        if len(bits) != n:
            raise ParseError(f"assignment {bits!r} has length {len(bits)}, expected {n}", lineno)
        try:
            a = from_bitstring(bits)
        except ValueError:
            raise ParseError(f"not a bitstring: {bits!r}", lineno) from None
        if label == "1":
            if (neg >> a) & 1:
                raise ParseError(f"assignment {bits} labeled both 0 and 1", lineno)
            pos |= 1 << a
        else:
            if (pos >> a) & 1:
                raise ParseError(f"assignment {bits} labeled both 0 and 1", lineno)
            neg |= 1 << a
    return PartialFn(n, pos, neg)


def serialize_sample(f: PartialFn) -> str:
    lines = [f"sample n={f.n}"]
    labeled = [(a, 1) for a in iter_bits(f.pos)] + [(a, 0) for a in iter_bits(f.neg)]
    for a, label in sorted(labeled):
        lines.append(f"{to_bitstring(a, f.n)} {label}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# truth tables


def parse_truth_table(text: str) -> TruthTable:
    lines = _content_lines(text)
    _, n = _header(lines, "tt")
    if len(lines) != 2:
        raise ParseError(f"expected exactly one table line, got {len(lines) - 1}")
    lineno, line = lines[1]
    try:
        return TruthTable.from_string(n, line)
    except ValueError as exc:
        raise ParseError(str(exc), lineno) from None


def serialize_truth_table(tt: TruthTable) -> str:
    return f"tt n={tt.n}\n{tt}\n"


# ---------------------------------------------------------------------------
# decision trees


def parse_tree(text: str) -> tuple[int, DecisionTree]:
    lines = _content_lines(text)
    _, n = _header(lines, "tree")
    tokens = []
    for lineno, line in lines[1:]:
        tokens.extend((lineno, tok) for tok in line.split())
    if not tokens:
        raise ParseError("tree file has no nodes")
    pos = 0

    def node():
        nonlocal pos
        if pos >= len(tokens):
            raise ParseError("truncated tree", tokens[-1][0])
        lineno, tok = tokens[pos]
        pos += 1
        if tok in ("0", "1"):
            return Leaf(int(tok))
        m = re.fullmatch(r"x(\d+)", tok)
        if not m:
            raise ParseError(f"bad tree token {tok!r}", lineno)
        var = int(m.group(1))
        if not 1 <= var <= n:
            raise ParseError(f"variable x{var} out of range for n={n}", lineno)
        lo = node()
        hi = node()
        return Node(var, lo, hi)

    tree = node()
    if pos != len(tokens):
        raise ParseError("trailing tokens after the tree", tokens[pos][0])
    try:
        check_tree(tree, n)
    except ContractError as exc:
        raise ParseError(str(exc)) from None
    return n, tree


def format_tree(tree: DecisionTree) -> str:
    if isinstance(tree, Leaf):
        return str(tree.label)
    return f"x{tree.var} {format_tree(tree.lo)} {format_tree(tree.hi)}"


def serialize_tree(tree: DecisionTree, n: int) -> str:
    return f"tree n={n}\n{format_tree(tree)}\n"


# ---------------------------------------------------------------------------


Parsed = Union[Dnf, PartialFn, TruthTable, tuple]


def parse_any(text: str) -> Parsed:
    """Dispatch on the header keyword."""
    kind, _ = _header(_content_lines(text))
    return {
        "dnf": parse_dnf,
        "sample": parse_sample,
        "tt": parse_truth_table,
        "tree": parse_tree,
    }[kind](text)

