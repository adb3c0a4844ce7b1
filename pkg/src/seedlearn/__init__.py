"""Proper DNF learning from seeds: seed search, covering, equivalence-query
learning, size certificates and query/size tradeoff tools."""

from .boolcore import (
    Dnf,
    Leaf,
    Literal,
    Node,
    PartialFn,
    Term,
    TruthTable,
    between,
    closure,
    enumerate_terms,
    evaluate,
    monomial_consistency,
    truth_table,
)
from .certs import Certificate, Cover, certify, verify_certificate
from .coverlearn import CoverResult, cover_sample, pac_learn
from .eqlearn import EqState, LexTeacher, RandomTeacher, eq_apply_counterexample, eq_hypothesis, learn_eq
from .errors import ContractError, ParseError, ProtocolError, ResourceCapError, SeedlearnError
from .mindnf import exact_min_dnf
from .seeds import Seed, dtree_seed, find_seed_enumerate, find_seed_lemma2, is_seed, seed_bound
from .tradeoff import (
    MonotoneClass,
    NegativeDense,
    PositiveSparse,
    VersionSpace,
    enumerate_M,
    fact1_check,
    fingerprint_counterexample,
    halving_learn,
    maj_to_dnf,
    sparse_or_dense,
)

__version__ = "0.1.0"

__all__ = [
    "Certificate",
    "ContractError",
    "Cover",
    "CoverResult",
    "Dnf",
    "EqState",
    "Leaf",
    "Literal",
    "MonotoneClass",
    "NegativeDense",
    "Node",
    "ParseError",
    "PartialFn",
    "PositiveSparse",
    "ProtocolError",
    "ResourceCapError",
    "Seed",
    "SeedlearnError",
    "Term",
    "TruthTable",
    "VersionSpace",
    "between",
    "certify",
    "closure",
    "cover_sample",
    "dtree_seed",
    "enumerate_M",
    "enumerate_terms",
    "exact_min_dnf",
    "eq_apply_counterexample",
    "eq_hypothesis",
    "evaluate",
    "fact1_check",
    "find_seed_enumerate",
    "find_seed_lemma2",
    "fingerprint_counterexample",
    "halving_learn",
    "is_seed",
    "learn_eq",
    "LexTeacher",
    "RandomTeacher",
    "maj_to_dnf",
    "monomial_consistency",
    "pac_learn",
    "seed_bound",
    "sparse_or_dense",
    "truth_table",
    "verify_certificate",
]
