"""``metriforge`` command line.

Exit codes: 0 success, 1 property violation, 2 input error, 3 refused scale.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import asymmetric, combinatorial, editperm, poset, ringlee, verify
from .codefile import load_code, parse_word
from .config import ENV_MAX_SPACE, DomainError, MetriforgeError, SpaceTooLarge
from .core import (
    PERMUTATIONS,
    STRINGS,
    VECTORS,
    Channel,
    binary_asymmetric,
    bsc,
    dual_code,
    is_matched,
    minimum_distance,
    sphere_packing_check,
    weight_enumerator,
)
from .registry import load_metric

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_REFUSED = 0, 1, 2, 3
SCHEMA = 1


class Output:
    """Collects a report; prints it as ``key: value`` lines or one JSON object."""

    def __init__(self, as_json: bool):
        self.as_json = as_json
        self.data: dict = {}
        self.lines: list[str] = []

    def put(self, key: str, value, show: bool = True):
        self.data[key] = value
        if show:
            self.lines.append(f"{key}: {_plain(value)}")

    def say(self, text: str):
        self.lines.append(text)

    def emit(self, stream=None):
        stream = stream or sys.stdout
        if self.as_json:
            stream.write(json.dumps({"schema": SCHEMA, **self.data}, default=_jsonable, sort_keys=True) + "\n")
        else:
            for ln in self.lines:
                stream.write(ln + "\n")


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else v.numerator
    if isinstance(v, (set, frozenset)):
        return sorted(v)
    raise TypeError(f"cannot serialize {type(v).__name__}")


def _plain(v) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_plain(a) for a in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_plain(a)}" for k, a in v.items()) + "}"
    return str(v)


# ---------------------------------------------------------------------------
# Parsing helpers
# ---------------------------------------------------------------------------


def parse_point(metric, text: str) -> tuple:
    text = text.strip()
    if text.startswith("["):
        try:
            vals = json.loads(text)
        except json.JSONDecodeError:
            raise DomainError(f"malformed word {text!r}") from None
        if not isinstance(vals, list) or not all(isinstance(a, int) and not isinstance(a, bool) for a in vals):
            raise DomainError(f"malformed word {text!r}")
        return metric.validate(tuple(vals))
    if metric.domain == PERMUTATIONS:
        if not text.isdigit():
            raise DomainError(f"malformed permutation {text!r}; write it as [2,1,3]")
        return metric.validate(tuple(int(c) for c in text))
    if metric.domain == STRINGS and metric.alphabet is None:
        return tuple(text)
    q = metric.q
    if q is None:
        try:
            return metric.validate(tuple(int(t) for t in text.replace(",", " ").split()))
        except ValueError:
            raise DomainError(f"malformed word {text!r}") from None
    return metric.validate(parse_word(text, q))


def _word(w) -> str:
    return "".join(map(str, w)) if all(isinstance(a, int) and 0 <= a < 10 for a in w) else " ".join(map(str, w))


def parse_prob(text: str) -> Fraction:
    try:
        p = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise DomainError(f"bad probability {text!r}") from None
    if not 0 <= p <= 1:
        raise DomainError(f"probability {text} outside [0, 1]")
    return p


def parse_channel(text: str) -> Channel:
    kind, _, args = text.partition(":")
    vals = [parse_prob(a) for a in args.split(",") if a]
    if kind == "bsc" and len(vals) == 1:
        return bsc(vals[0])
    if kind in ("asym", "asymmetric") and len(vals) == 2:
        return binary_asymmetric(vals[0], vals[1])
    if kind == "matrix":
        try:
            return Channel([[Fraction(a) for a in row] for row in json.loads(args)])
        except (json.JSONDecodeError, TypeError, ValueError):
            raise DomainError(f"bad channel matrix {args!r}") from None
    raise DomainError(f"channel must be bsc:RHO, asym:RHO01,RHO10 or matrix:[[...]], got {text!r}")


def _code_for(metric, path: str):
    strings = metric.domain == STRINGS
    cf = load_code(path, exact_length=not strings)
    if metric.q is not None and metric.q != cf.q:
        raise DomainError(f"code file has q={cf.q}, metric alphabet has q={metric.q}")
    if metric.n is not None and metric.domain == VECTORS and metric.n != cf.n:
        raise DomainError(f"code file has n={cf.n}, metric has fixed length {metric.n}")
    if metric.domain == PERMUTATIONS:
        raise DomainError("code files hold vectors or strings, not permutations")
    if strings:
        return cf, cf.words
    return cf, cf.block_code(metric.alphabet if metric.alphabet is not None and metric.alphabet.has_arithmetic else None)


def _require(args, *names):
    for nm in names:
        if getattr(args, nm.replace("-", "_")) is None:
            raise DomainError(f"--{nm} is required here")


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_dist(args, out: Output) -> int:
    _require(args, "metric")
    metric = load_metric(args.metric)
    x, y = parse_point(metric, args.x), parse_point(metric, args.y)
    d = metric.dist(x, y)
    out.put("distance", d, show=False)
    out.say(str(d))
    return EXIT_OK


def cmd_weight(args, out: Output) -> int:
    _require(args, "metric")
    metric = load_metric(args.metric)
    w = metric.weight(parse_point(metric, args.x))
    out.put("weight", w, show=False)
    out.say(str(w))
    return EXIT_OK


def cmd_analyze(args, out: Output) -> int:
    _require(args, "metric", "code")
    metric = load_metric(args.metric)
    cf, code = _code_for(metric, args.code)
    out.put("metric", metric.name)
    out.put("n", cf.n)
    out.put("size", len(code))
    if metric.domain == STRINGS:
        out.put("min_distance", minimum_distance(code, metric) if len(code) > 1 else None)
        out.say("notice: variable-length strings have no finite ambient space; packing radius skipped")
        return EXIT_OK
    if code.is_linear:
        out.put("k", code.k)
    out.put("min_distance", minimum_distance(code, metric) if code.size > 1 else None)
    sp = sphere_packing_check(code, metric)
    out.put("packing_radius", sp.radius)
    out.put("perfect", sp.perfect)
    out.put("sphere_packing", {"covered": sp.covered, "space": sp.space, "holds": sp.holds})
    if metric.weight_defined:
        out.put("enumerator", weight_enumerator(code, metric))
    else:
        out.data["enumerator"] = None
        out.say("notice: metric is not weight-defined; enumerator skipped")
    return EXIT_OK if sp.holds else EXIT_VIOLATION


def cmd_bounds(args, out: Output) -> int:
    kind = args.kind
    if kind == "aued":
        _require(args, "n", "t")
        out.put("varshamov", asymmetric.varshamov_bound(args.n, args.t))
        if args.t == 1:
            out.put("lin_bose", asymmetric.lin_bose_bound(args.n))
    elif kind == "kendall":
        _require(args, "n")
        if args.t is None and args.r is None:
            raise DomainError("give --t (Singleton-type) and/or --r (sphere packing)")
        for k, v in editperm.kendall_bounds(args.n, t=args.t, r=args.r).items():
            out.put(k, v)
    elif kind == "levenshtein":
        _require(args, "n", "t")
        lo, hi = editperm.levenshtein_qary_bounds(args.n, args.t, args.q)
        out.put("lower", lo)
        out.put("upper", hi)
    elif kind == "ids1":
        _require(args, "n")
        lo, hi = editperm.edit_bounds("ids1", n=args.n, q=args.q)
        out.put("lower", lo)
        out.put("upper", hi)
    elif kind == "cullina":
        _require(args, "n", "a", "b")
        out.put("asymptotic_upper", editperm.cullina_bound(args.n, args.a, args.b, args.q))
    elif kind == "ks":
        _require(args, "n", "k", "r1", "r2", "b")
        classes = json.loads(args.classes) if args.classes else None
        part = ringlee.KSPartition(args.q, classes) if classes else ringlee.lee_partition(args.q)
        rep = ringlee.ks_hamming_bound(args.n, args.k, part, args.r1, args.r2, args.b)
        for k in ("bracket", "redundancy", "min_redundancy", "holds", "literal_rhs", "holds_literal"):
            out.put(k, getattr(rep, k))
        return EXIT_OK if rep.holds else EXIT_VIOLATION
    elif kind == "singleton":
        _require(args, "metric", "code")
        metric = load_metric(args.metric)
        if "covering" not in metric.params:
            raise DomainError("singleton bounds need a covering metric (covering, burst or burst2d)")
        cov = combinatorial.Covering.from_one_based(metric.n, metric.params["covering"])
        _, code = _code_for(metric, args.code)
        cs = combinatorial.comb_singleton_check(code, cov)
        out.put("distance", cs.distance)
        out.put("cover_number", cs.cover_number)
        out.put("comb_singleton", {"lhs": cs.lhs, "rhs": cs.rhs, "holds": cs.holds})
        ok = cs.holds
        if cov.is_partition() and code.is_linear:
            bs = combinatorial.block_singleton_check(code, cov)
            out.put("block_singleton", {"redundancy": bs.redundancy, "sum": bs.ascending_sum, "holds": bs.holds})
            ok = ok and bs.holds
        return EXIT_OK if ok else EXIT_VIOLATION
    else:
        raise DomainError(f"unknown bound {kind!r}")
    return EXIT_OK


def cmd_macwilliams(args, out: Output) -> int:
    _require(args, "metric")
    metric = load_metric(args.metric)
    if metric.name == "poset":
        P = poset.Poset.from_relations(metric.n, metric.params.get("relations", []))
        kinds = [args.kind] if args.kind else [poset.EC, poset.ES, poset.EH]
        ok = True
        for kind in kinds:
            v = poset.macwilliams_equivalence_test(P, kind, metric.q)
            out.put(f"{kind}_holds", v.holds)
            if v.witness:
                out.put(f"{kind}_witness", [[_word(w) for w in c.words] for c in v.witness])
            ok = ok and v.holds
        out.put("hierarchical", P.is_hierarchical())
        return EXIT_OK if ok else EXIT_VIOLATION
    if "covering" in metric.params:
        _require(args, "code")
        cov = combinatorial.Covering.from_one_based(metric.n, metric.params["covering"])
        if not combinatorial.admits_macwilliams(cov):
            raise DomainError("the block transform needs a partition into equal-size blocks")
        _, code = _code_for(metric, args.code)
        if not code.is_linear:
            raise DomainError("the MacWilliams transform needs a linear code")
        A = combinatorial.block_enumerator(code, cov)
        r = len(cov.sets[0])
        got = combinatorial.block_macwilliams_transform(A, code.q, r, cov.m, code.size)
        want = combinatorial.block_enumerator(dual_code(code), cov)
        out.put("enumerator", A)
        out.put("dual_transform", got)
        out.put("dual_direct", want)
        out.put("agree", got == want)
        return EXIT_OK if got == want else EXIT_VIOLATION
    raise DomainError("macwilliams supports poset and block-partition covering metrics")


def cmd_isometry(args, out: Output) -> int:
    _require(args, "metric")
    metric = load_metric(args.metric)
    if metric.name.startswith("edit"):
        rep = editperm.edit_isometry_check(args.length, args.q, metric.params.get("ops", "IDS"))
        out.put("maps", rep.maps)
        out.put("all_preserve", rep.all_preserve)
        out.put("distinct", rep.distinct)
        ok = bool(rep)
    elif metric.name == "poset":
        P = poset.Poset.from_relations(metric.n, metric.params.get("relations", []))
        rep = poset.verify_poset_isometries(P, metric.q)
        out.put("automorphisms", rep.automorphisms)
        out.put("matrices", rep.matrices)
        out.put("all_preserve", rep.all_preserve)
        ok = rep.all_preserve
    elif "covering" in metric.params:
        cov = combinatorial.Covering.from_one_based(metric.n, metric.params["covering"])
        rep = combinatorial.verify_comb_isometries(cov, metric.q)
        out.put("permutations", rep.permutations)
        out.put("matrices", rep.matrices)
        out.put("compositions", rep.compositions)
        out.put("all_preserve", rep.all_preserve)
        ok = rep.all_preserve
    else:
        raise DomainError("isometry supports edit, poset and covering metrics")
    if not ok:
        out.put("witness", _plain(rep.witness))
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_matched(args, out: Output) -> int:
    _require(args, "metric", "channel", "n")
    metric = load_metric(args.metric)
    rep = is_matched(metric, parse_channel(args.channel), args.n)
    out.put("matched", rep.matched)
    if rep.witness:
        x, c1, c2 = rep.witness
        out.put("witness", {"received": _word(x), "c1": _word(c1), "c2": _word(c2)})
    return EXIT_OK


def cmd_exact_a(args, out: Output) -> int:
    _require(args, "n")
    if args.kendall_d is not None:
        res = editperm.exact_kendall_A(args.n, args.kendall_d)
    else:
        _require(args, "t")
        res = editperm.exact_A(args.n, args.t, args.ops, args.q)
    out.put("A", res.value)
    out.put("code", [_word(w) for w in res.code])
    return EXIT_OK


def cmd_verify(args, out: Output) -> int:
    res = verify.run_suite(args.suite)
    for ln in res.lines:
        out.say(ln)
    out.data["lines"] = res.lines
    out.put("suite", res.name, show=False)
    out.put("passed", res.passed, show=False)
    out.say(f"{res.name}: {'pass' if res.passed else 'FAIL'}")
    if not res.passed:
        out.put("counterexample", _plain(res.witness))
    return EXIT_OK if res.passed else EXIT_VIOLATION


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-m", "--metric", help="metric config: JSON file, inline JSON, or shorthand like edit:IDS")
    common.add_argument("-c", "--code", help="code file")
    common.add_argument("--json", action="store_true", help="emit one JSON object")
    common.add_argument("--max-space", type=int, help="enumeration cap (overrides METRIFORGE_MAX_SPACE)")

    p = argparse.ArgumentParser(prog="metriforge", description="Alternative metrics for coding theory.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("dist", parents=[common], help="distance between two words")
    s.add_argument("x")
    s.add_argument("y")
    s.set_defaults(func=cmd_dist)

    s = sub.add_parser("weight", parents=[common], help="weight of a word")
    s.add_argument("x")
    s.set_defaults(func=cmd_weight)

    s = sub.add_parser("analyze", parents=[common], help="distance, packing radius and enumerator of a code")
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("bounds", parents=[common], help="evaluate a size bound")
    s.add_argument("kind", choices=["aued", "kendall", "levenshtein", "ids1", "cullina", "ks", "singleton"])
    for nm in ("n", "t", "r", "k", "a", "b", "r1", "r2"):
        s.add_argument(f"--{nm}", type=int)
    s.add_argument("--q", type=int, default=2)
    s.add_argument("--classes", help="KS partition as JSON, default the Lee partition")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("macwilliams", parents=[common], help="MacWilliams identity or equivalence test")
    s.add_argument("--kind", choices=[poset.EC, poset.ES, poset.EH])
    s.set_defaults(func=cmd_macwilliams)

    s = sub.add_parser("isometry", parents=[common], help="check that the known isometries preserve the metric")
    s.add_argument("--length", type=int, default=4, help="max string length for edit metrics")
    s.add_argument("--q", type=int, default=2, help="alphabet size for edit metrics")
    s.set_defaults(func=cmd_isometry)

    s = sub.add_parser("matched", parents=[common], help="is the metric matched to a channel")
    s.add_argument("--channel", help="bsc:RHO, asym:RHO01,RHO10 or matrix:[[...]]")
    s.add_argument("--n", type=int)
    s.set_defaults(func=cmd_matched)

    s = sub.add_parser("exact-a", parents=[common], help="exact largest code size by independent-set search")
    s.add_argument("--n", type=int)
    s.add_argument("--t", type=int)
    s.add_argument("--ops", default="ID")
    s.add_argument("--q", type=int, default=2)
    s.add_argument("--kendall-d", type=int, help="permutation codes of S_n with Kendall distance >= D")
    s.set_defaults(func=cmd_exact_a)

    s = sub.add_parser("verify", parents=[common], help="run a named exhaustive suite")
    s.add_argument("suite", help=", ".join(verify.SUITES))
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = Output(args.json)
    saved = os.environ.get(ENV_MAX_SPACE)
    if args.max_space is not None:
        os.environ[ENV_MAX_SPACE] = str(args.max_space)
    try:
        code = args.func(args, out)
    except SpaceTooLarge as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_REFUSED
    except (MetriforgeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    finally:
        if args.max_space is not None:
            if saved is None:
                os.environ.pop(ENV_MAX_SPACE, None)
            else:
                os.environ[ENV_MAX_SPACE] = saved
    out.emit()
    return code


if __name__ == "__main__":
    sys.exit(main())
