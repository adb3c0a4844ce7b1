"""Command-line experiment runner.

Every subcommand builds a :class:`RunConfig`, :func:`run_experiment` turns
it into a :class:`Report`, and the report is printed as text or JSON.

Exit statuses: 0 success, 1 learner failure or failed post-check,
2 usage error, 3 resource cap.

Randomness: one generator per run, ``numpy.random.default_rng(seed)``;
per-trial generators (learn-pac) are ``default_rng([seed, trial])``.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Optional

import numpy as np

from . import codec, gen
from .boolcore import (
    Dnf,
    PartialFn,
    TruthTable,
    from_bitstring,
    to_bitstring,
    tree_one_leaves,
    tree_table,
)
from .certs import Certificate, certificate_size_bound, certify, check_witness, verify_certificate
from .coverlearn import ProductExamples, UniformExamples, dtree_cover, pac_learn
from .eqlearn import LexTeacher, RandomTeacher, learn_eq, query_ceiling
from .errors import ContractError, ParseError, ProtocolError, ResourceCapError
from .mindnf import exact_min_dnf
from .seeds import check_seed, dtree_seed, dtree_seed_bound, find_seed_enumerate, find_seed_lemma2, seed_bound
from .tradeoff import (
    FingerprintAdversary,
    TargetTeacher,
    adversary_report,
    default_t_sample,
    enumerate_M,
    fact1_check,
    halving_learn,
    log_term_parameters,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3
TRADEOFF_MAX_N = 16


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class Caps:
    max_n: int = 10
    max_class: int = 10**6
    max_retries: int = 10_000

    @classmethod
    def parse(cls, text: Optional[str]) -> Caps:
        if not text:
            return cls()
        values = {}
        for part in text.split(","):
            key, sep, val = part.partition("=")
            key = key.strip()
            if not sep or key not in cls.__dataclass_fields__:
                raise UsageError(f"bad cap {part!r}; expected max_n=, max_class= or max_retries=")
            try:
                values[key] = int(val)
            except ValueError:
                raise UsageError(f"cap {key} must be an integer, got {val!r}") from None
            if values[key] <= 0:
                raise UsageError(f"cap {key} must be positive")
        return cls(**values)

    def as_dict(self) -> dict:
        return {"max_n": self.max_n, "max_class": self.max_class, "max_retries": self.max_retries}


@dataclass
class RunConfig:
    command: str
    params: dict[str, Any]
    rng_seed: int = 0
    format: str = "text"
    caps: Caps = field(default_factory=Caps)
    no_time: bool = False


@dataclass
class Report:
    command: str
    inputs: dict
    outputs: dict = field(default_factory=dict)
    log: list = field(default_factory=list)
    checks: dict = field(default_factory=dict)
    failed: bool = False  # learner returned a failure value
    wall_time: Optional[float] = None

    @property
    def ok(self) -> bool:
        return not self.failed and all(self.checks.values())

    @property
    def exit_code(self) -> int:
        return EXIT_OK if self.ok else EXIT_FAIL

    def as_dict(self) -> dict:
        out = {
            "command": self.command,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "log": self.log,
            "checks": self.checks,
            "ok": self.ok,
        }
        if self.wall_time is not None:
            out["wall_time"] = self.wall_time
        return out

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, indent=2)

    def to_text(self) -> str:
        lines = [f"command: {self.command}"]
        for section in ("inputs", "outputs", "checks"):
            for k, v in sorted(getattr(self, section).items()):
                lines.append(f"{section}.{k}: {_text(v)}")
        for row in self.log:
            lines.append(f"log: {_text(row)}")
        lines.append(f"ok: {str(self.ok).lower()}")
        if self.wall_time is not None:
            lines.append(f"wall_time: {self.wall_time:.3f}s")
        return "\n".join(lines)


def _text(v) -> str:
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True)
    if isinstance(v, bool):
        return str(v).lower()
    return str(v)


def rational(x: Fraction) -> dict:
    return {"exact": f"{x.numerator}/{x.denominator}", "decimal": float(x)}


# ---------------------------------------------------------------------------
# input helpers


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _load_function(path: str):
    """A file as (n, PartialFn, Dnf or None)."""
    value = codec.parse_any(_read(path))
    if isinstance(value, Dnf):
        return value.n, PartialFn.from_table(value.n, value.table()), value
    if isinstance(value, TruthTable):
        return value.n, value.to_partial(), None
    if isinstance(value, PartialFn):
        return value.n, value, None
    n, tree = value
    return n, PartialFn.from_table(n, tree_table(tree, n)), None


def _load_table(path: str) -> TruthTable:
    n, f, _ = _load_function(path)
    if not f.is_total():
        raise UsageError(f"{path} does not define a total function")
    return TruthTable(n, f.pos)


def _load_dnf(path: str) -> Dnf:
    value = codec.parse_any(_read(path))
    if not isinstance(value, Dnf):
        raise UsageError(f"{path} is not a DNF file")
    return value


def _check_n(n: int, cap: int):
    if n > cap:
        raise ResourceCapError(f"n={n} exceeds cap max_n={cap}")


def _bits(a, n):
    return None if a is None else to_bitstring(a, n)


# ---------------------------------------------------------------------------
# handlers


def _find_seed(cfg: RunConfig) -> Report:
    p = cfg.params
    n, f, phi = _load_function(p["input"])
    _check_n(n, cfg.caps.max_n)
    rep = Report(cfg.command, {"input": p["input"], "n": n, "method": p["method"], "s": p.get("s"), "q": p.get("q")})
    if not f.pos:
        raise ContractError("the function has no positive example")
    if p["method"] == "lemma2":
        if p.get("q") is not None:
            raise UsageError("--q applies to --method enumerate only")
        if phi is None:
            phi = exact_min_dnf(f, max_n=cfg.caps.max_n)
        trace: list = []
        seed = find_seed_lemma2(f, phi, trace)
        bound = seed_bound(n, max(1, phi.size()))
        rep.log = [{"step": kind, "value": str(v)} for kind, v in trace]
        rep.outputs["phi_terms"] = phi.size()
    else:
        if p.get("q") is not None:
            bound = p["q"]
        else:
            bound = seed_bound(n, p.get("s") or max(1, exact_min_dnf(f, max_n=cfg.caps.max_n).size()))
        seed = find_seed_enumerate(f, bound)
    rep.outputs["bound"] = bound
    if seed is None:
        rep.outputs["found"] = False
        rep.failed = True
        return rep
    rep.outputs.update(
        found=True,
        seed=str(seed.term),
        size=seed.size(),
        witness=to_bitstring(seed.witness, n),
        residual=str(seed.residual),
    )
    rep.checks = {"valid": check_seed(f, seed), "within_bound": seed.size() <= bound}
    return rep


def _learn_pac(cfg: RunConfig) -> Report:
    p = cfg.params
    target = _load_dnf(p["target"])
    n = target.n
    _check_n(n, cfg.caps.max_n)
    if p["dist"] == "uniform":
        source = UniformExamples(n)
    else:
        if not p.get("probs"):
            raise UsageError("--dist product needs --probs")
        source = ProductExamples(n, tuple(float(x) for x in p["probs"].split(",")))
    table = target.table()
    rep = Report(
        cfg.command,
        {k: p[k] for k in ("target", "s", "eps", "delta", "dist", "trials")} | {"n": n, "seed": cfg.rng_seed},
    )
    good = 0
    for trial in range(p["trials"]):
        rng = np.random.default_rng([cfg.rng_seed, trial])
        res = pac_learn(source, table, p["s"], p["eps"], p["delta"], rng)
        err = source.error(table, res.hypothesis.table()) if res.ok else None
        if res.ok and err <= p["eps"]:
            good += 1
        rep.log.append(
            {
                "trial": trial,
                "m": res.m,
                "queries": 0,
                "error_exact": err,
                "size_h": res.hypothesis.size() if res.ok else None,
                "ok": res.ok,
            }
        )
        rep.failed |= not res.ok
    rep.outputs = {"trials": p["trials"], "within_eps": good, "fraction_within_eps": good / max(1, p["trials"])}
    rep.checks = {"all_consistent": all(r["ok"] for r in rep.log)}
    return rep


def _learn_eq(cfg: RunConfig) -> Report:
    p = cfg.params
    target = _load_dnf(p["target"])
    n = target.n
    _check_n(n, cfg.caps.max_n)
    table = target.table()
    if p["teacher"] == "lex":
        teacher = LexTeacher(table, n)
    else:
        teacher = RandomTeacher(table, n, np.random.default_rng(cfg.rng_seed))
    s = p.get("s")
    if s is None and not p["auto_s"]:
        raise UsageError("learn-eq needs --s or --auto-s")
    rep = Report(
        cfg.command,
        {"target": p["target"], "n": n, "s": s, "auto_s": p["auto_s"], "teacher": p["teacher"], "seed": cfg.rng_seed},
    )
    res = learn_eq(teacher, n, s, auto_s=p["auto_s"], max_queries=p.get("max_queries"))
    rep.log = [r.as_json(n) for r in res.log]
    equal = res.hypothesis.table() == table
    rep.outputs = {
        "queries": res.queries,
        "equal": equal,
        "hypothesis": str(res.hypothesis),
        "terms": res.hypothesis.size(),
        "final_s": res.s,
        "restarts": res.restarts,
        "ceiling": query_ceiling(n, res.s),
    }
    rep.checks = {"equal": equal, "within_ceiling": res.queries <= query_ceiling(n, res.s)}
    return rep


def _learn_dtree(cfg: RunConfig) -> Report:
    p = cfg.params
    value = codec.parse_any(_read(p["tree"]))
    if not isinstance(value, tuple):
        raise UsageError(f"{p['tree']} is not a tree file")
    n, tree = value
    _check_n(n, cfg.caps.max_n)
    rep = Report(cfg.command, {"tree": p["tree"], "n": n, "s1": tree_one_leaves(tree)})
    seed = dtree_seed(tree, n)
    bound = dtree_seed_bound(tree)
    table = tree_table(tree, n)
    cover = dtree_cover(tree, n)
    rep.outputs = {
        "seed": str(seed.term),
        "seed_size": seed.size(),
        "residual": str(seed.residual),
        "bound": bound,
        "hypothesis": str(cover.hypothesis),
        "terms": cover.hypothesis.size(),
    }
    rep.log = [{"seed": str(t), "term": str(c)} for t, c in cover.seeds_used]
    rep.checks = {
        "seed_valid": check_seed(PartialFn.from_table(n, table), seed),
        "within_bound": seed.size() <= bound,
        "equal": cover.hypothesis.table() == table,
    }
    return rep


def _certify(cfg: RunConfig) -> Report:
    p = cfg.params
    f = _load_table(p["target"])
    _check_n(f.n, cfg.caps.max_n)
    rep = Report(cfg.command, {"target": p["target"], "n": f.n, "s": p["s"]})
    res = certify(f, p["s"], max_n=cfg.caps.max_n)
    if isinstance(res, Certificate):
        verified = verify_certificate(f, res, p["s"], max_n=cfg.caps.max_n)
        bound = certificate_size_bound(f.n, res.q)
        rep.outputs = {
            "certificate": [[to_bitstring(a, f.n), v] for a, v in res.points.items()],
            "points": res.size(),
            "size_bound": bound,
            "q": res.q,
            "triples": [
                {
                    "term": str(w.term),
                    "positives": [to_bitstring(a, f.n) for a in w.positives],
                    "negative": to_bitstring(w.negative, f.n),
                }
                for w in res.provenance
            ],
            "verified": verified,
        }
        rep.checks = {
            "verified": verified,
            "within_size_bound": res.size() <= bound,
            "witnesses_valid": all(check_witness(f, w) for w in res.provenance),
        }
    else:
        rep.outputs = {"cover": codec.serialize_dnf(res.dnf).strip(), "terms": res.terms, "q": res.q}
        rep.checks = {"equal": res.dnf.table() == f.bits}
    return rep


def _mindnf(cfg: RunConfig) -> Report:
    p = cfg.params
    n, f, _ = _load_function(p["input"])
    _check_n(n, cfg.caps.max_n)
    rep = Report(cfg.command, {"input": p["input"], "n": n, "budget": p.get("budget")})
    d = exact_min_dnf(f, budget=p.get("budget"), max_n=cfg.caps.max_n)
    if d is None:
        rep.outputs = {"found": False}
        rep.failed = True
        return rep
    rep.outputs = {"found": True, "dnf": str(d), "size": d.size(), "file": codec.serialize_dnf(d)}
    rep.checks = {"consistent": f.consistent_with(d.table())}
    return rep


def _check_tradeoff_n(n: int):
    if n > TRADEOFF_MAX_N:
        raise ResourceCapError(f"n={n} exceeds the exhaustive cap {TRADEOFF_MAX_N}")


def _adversary(cfg: RunConfig) -> Report:
    p = cfg.params
    n = p["n"]
    _check_tradeoff_n(n)
    t, s = p.get("t"), p.get("s")
    if p.get("log_terms"):
        t, s = log_term_parameters(n)
    if t is None or s is None:
        raise UsageError("adversary needs --t and --s (or --log-terms)")
    queries = [_load_dnf(path) for path in p.get("script") or []]
    if p.get("random_queries"):
        rng = np.random.default_rng(cfg.rng_seed)
        queries += [gen.random_monotone_dnf(n, t, rng, max_size=s) for _ in range(p["random_queries"])]
    if not queries:
        raise UsageError("no queries: give --script files or --random-queries")
    rep = Report(
        cfg.command,
        {"n": n, "t": t, "s": s, "script": p.get("script") or [], "random_queries": p.get("random_queries") or 0},
    )
    rows = adversary_report(n, t, s, queries, max_class=cfg.caps.max_class)
    rep.log = rows
    rep.outputs = {
        "class_size": rows[0]["before"] if rows else 0,
        "remaining": rows[-1]["after"] if rows else 0,
        "max_eliminated_fraction": max((r["eliminated_fraction"] for r in rows), default=0.0),
    }
    return rep


def _parse_universe(text: str) -> tuple[int, int, int]:
    kind, _, rest = text.partition(":")
    try:
        n, t, s = (int(x) for x in rest.split(","))
    except ValueError:
        raise UsageError(f"bad universe {text!r}; expected m:<n>,<t>,<s>") from None
    if kind != "m":
        raise UsageError(f"unknown universe kind {kind!r}")
    return n, t, s


def _halving(cfg: RunConfig) -> Report:
    p = cfg.params
    n, t, s = _parse_universe(p["universe"])
    _check_tradeoff_n(n)
    cls = enumerate_M(n, t, s, cfg.caps.max_class)
    if not len(cls):
        raise ContractError(f"universe {p['universe']} is empty")
    tables = cls.tables()
    universe = cls.dnfs()
    k = p["k"]
    t_sample = p.get("t_sample") or default_t_sample(n, k)
    target_index = None
    if p["teacher"] == "worst":
        teacher = FingerprintAdversary(n, tables)
    else:
        target_index = p.get("target_index") or 0
        if p.get("target"):
            want = _load_dnf(p["target"]).table()
            hits = [i for i, f in enumerate(universe) if f.table() == want]
            if not hits:
                raise UsageError("target is not a member of the universe")
            target_index = hits[0]
        if not 0 <= target_index < len(universe):
            raise UsageError(f"target index out of range 0..{len(universe) - 1}")
        teacher = TargetTeacher(n, universe[target_index].table())
    rep = Report(
        cfg.command,
        {
            "universe": p["universe"],
            "k": k,
            "t_sample": t_sample,
            "teacher": p["teacher"],
            "seed": cfg.rng_seed,
            "target_index": target_index,
        },
    )
    res = halving_learn(
        universe,
        teacher,
        k,
        t_sample,
        np.random.default_rng(cfg.rng_seed),
        max_retries=cfg.caps.max_retries,
        tables=tables,
    )
    nk = n**k
    shrink_ok = True
    for r in res.log:
        row = {
            "query": r.query,
            "before": r.before,
            "after": r.after,
            "counterexample": _bits(r.counterexample, n),
            "in_Z": r.in_Z,
            "retries": r.retries,
            "fallback": r.fallback,
            "hyp_terms": r.hyp_terms,
        }
        if r.counterexample is not None:
            row["ratio_ok"] = r.after * nk <= (nk - 1) * r.before
            shrink_ok &= row["ratio_ok"]
        rep.log.append(row)
    h_table = res.hypothesis.table()
    rep.outputs = {"queries": res.queries, "hypothesis": str(res.hypothesis), "class_size": len(universe)}
    rep.checks = {"shrink_ratio": shrink_ok}
    if target_index is not None:
        rep.checks["equal"] = h_table == universe[target_index].table()
    else:
        rep.checks["consistent_with_adversary"] = bool(
            len(teacher.vs) and all(universe[int(i)].table() == h_table for i in teacher.vs.remaining)
        )
    return rep


def _fact1(cfg: RunConfig) -> Report:
    p = cfg.params
    n, t, s, zs = p["n"], p["t"], p["s"], p["z"]
    if len(zs) != n or set(zs) - {"0", "1"}:
        raise UsageError(f"--z must be a bitstring of length {n}")
    _check_tradeoff_n(n)
    rep = Report(cfg.command, {"n": n, "t": t, "s": s, "z": zs})
    res = fact1_check(n, t, s, from_bitstring(zs), cfg.caps.max_class)
    rep.outputs = {"bound": rational(res.bound), "exact": rational(res.exact), "ok": res.ok}
    rep.checks = {"exact_le_bound": res.ok}
    return rep


def _gen(cfg: RunConfig) -> Report:
    p = cfg.params
    rng = np.random.default_rng(cfg.rng_seed)
    n, kind = p["n"], p["kind"]
    if kind == "dnf":
        text = codec.serialize_dnf(gen.random_dnf(n, p["s"], rng, max_size=p.get("max_size")))
    elif kind == "tree":
        text = codec.serialize_tree(gen.random_tree(n, p["leaves"], rng), n)
    elif kind == "tt":
        d = gen.random_dnf(n, p["s"], rng, max_size=p.get("max_size"))
        text = codec.serialize_truth_table(TruthTable(n, d.table()))
    elif kind == "parity":
        text = codec.serialize_truth_table(gen.parity_table(n))
    elif kind == "sample":
        d = gen.random_dnf(n, p["s"], rng, max_size=p.get("max_size"))
        text = codec.serialize_sample(gen.random_sample(d.table(), n, p["m"], rng))
    else:
        text = codec.serialize_sample(gen.random_partial(n, rng))
    rep = Report(cfg.command, {k: v for k, v in p.items() if k != "out"} | {"seed": cfg.rng_seed})
    if p.get("out"):
        Path(p["out"]).write_text(text)
        rep.outputs = {"written": p["out"]}
    else:
        rep.outputs = {"text": text}
    return rep


HANDLERS: dict[str, Callable[[RunConfig], Report]] = {
    "find-seed": _find_seed,
    "learn-pac": _learn_pac,
    "learn-eq": _learn_eq,
    "learn-dtree": _learn_dtree,
    "certify": _certify,
    "mindnf": _mindnf,
    "adversary": _adversary,
    "halving": _halving,
    "fact1": _fact1,
    "gen": _gen,
}


def run_experiment(config: RunConfig) -> Report:
    """Dispatch ``config`` to its handler and time it."""
    handler = HANDLERS.get(config.command)
    if handler is None:
        raise UsageError(f"unknown command {config.command!r}")
    start = time.perf_counter()
    report = handler(config)
    if not config.no_time:
        report.wall_time = time.perf_counter() - start
    return report


# ---------------------------------------------------------------------------
# argument parsing


def _seed(text: str) -> int:
    if not text.isdigit():
        raise argparse.ArgumentTypeError("seed must be a decimal unsigned integer")
    v = int(text)
    if v >= 1 << 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return v


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def _unit(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not 0 < v < 1:
        raise argparse.ArgumentTypeError("must lie strictly between 0 and 1")
    return v


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default=argparse.SUPPRESS)
    common.add_argument("--seed", type=_seed, default=argparse.SUPPRESS, help="RNG seed (default 0)")
    common.add_argument("--caps", default=argparse.SUPPRESS, help="e.g. max_n=10,max_class=1000000,max_retries=10000")
    common.add_argument("--no-time", action="store_true", default=argparse.SUPPRESS, help="omit wall time")

    parser = _Parser(prog="seedlearn", description="Seed-based DNF learning experiments.", parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help):
        return sub.add_parser(name, help=help, parents=[common])

    p = add("find-seed", "find a seed of a function or sample")
    p.add_argument("--input", required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--s", type=_positive)
    g.add_argument("--q", type=_nonneg)
    p.add_argument("--method", choices=["lemma2", "enumerate"], default="lemma2")

    p = add("learn-pac", "PAC-learn a DNF by seed covering")
    p.add_argument("--target", required=True)
    p.add_argument("--s", type=_positive, required=True)
    p.add_argument("--eps", type=_unit, required=True)
    p.add_argument("--delta", type=_unit, required=True)
    p.add_argument("--dist", choices=["uniform", "product"], default="uniform")
    p.add_argument("--probs", help="comma-separated Pr[x_i = 1] for --dist product")
    p.add_argument("--trials", type=_positive, default=1)

    p = add("learn-eq", "learn a DNF exactly from equivalence queries")
    p.add_argument("--target", required=True)
    p.add_argument("--s", type=_positive)
    p.add_argument("--auto-s", action="store_true")
    p.add_argument("--teacher", choices=["lex", "random"], default="lex")
    p.add_argument("--max-queries", type=_positive)

    p = add("learn-dtree", "tree-derived seed and covering of a decision tree")
    p.add_argument("--tree", required=True)

    p = add("certify", "cover a function or certify that it needs more than s terms")
    p.add_argument("--target", required=True)
    p.add_argument("--s", type=_positive, required=True)

    p = add("mindnf", "exact minimum DNF")
    p.add_argument("--input", required=True)
    p.add_argument("--budget", type=_nonneg)

    p = add("adversary", "fingerprint adversary over M(n,t,s)")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--t", type=_positive)
    p.add_argument("--s", type=_nonneg)
    p.add_argument("--log-terms", action="store_true", help="set t = s = floor(log2 n)")
    p.add_argument("--script", nargs="+", help="query DNF files, answered in order")
    p.add_argument("--random-queries", type=_nonneg, help="append this many random monotone queries")

    p = add("halving", "majority-halving learner over M(n,t,s)")
    p.add_argument("--universe", required=True, help="m:<n>,<t>,<s>")
    p.add_argument("--k", type=_positive, default=1)
    p.add_argument("--t-sample", type=_positive)
    p.add_argument("--teacher", choices=["worst", "lex"], default="worst")
    p.add_argument("--target", help="DNF file of the target (lex teacher)")
    p.add_argument("--target-index", type=_nonneg, help="index of the target in the universe (lex teacher)")

    p = add("fact1", "exact Pr[phi(z) = 0] over M(n,t,s) against its weight bound")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--t", type=_positive, required=True)
    p.add_argument("--s", type=_nonneg, required=True)
    p.add_argument("--z", required=True, help="bitstring")

    p = add("gen", "random instances")
    p.add_argument("--kind", choices=["dnf", "tree", "tt", "parity", "sample", "partial"], required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--s", type=_positive, default=2)
    p.add_argument("--max-size", type=_positive)
    p.add_argument("--leaves", type=_positive, default=4)
    p.add_argument("--m", type=_positive, default=32)
    p.add_argument("--out")
    return parser


GLOBAL_KEYS = ("format", "seed", "caps", "no_time", "command")


def parse_config(argv: Optional[list[str]] = None) -> RunConfig:
    ns = vars(build_parser().parse_args(argv))
    params = {k: v for k, v in ns.items() if k not in GLOBAL_KEYS}
    return RunConfig(
        command=ns["command"],
        params=params,
        rng_seed=ns.get("seed", 0),
        format=ns.get("format", "text"),
        caps=Caps.parse(ns.get("caps")),
        no_time=ns.get("no_time", False),
    )


def main(argv: Optional[list[str]] = None) -> int:
    try:
        cfg = parse_config(argv)
        report = run_experiment(cfg)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ContractError, ParseError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceCapError as e:
        print(f"resource cap: {e}", file=sys.stderr)
        return EXIT_CAP
    except ProtocolError as e:
        print(f"protocol error: {e}", file=sys.stderr)
        return EXIT_FAIL
    print(report.to_json() if cfg.format == "json" else report.to_text())
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
