"""Command-line entry point: ``turan <subcommand> ...``.

Exit codes: 0 success, 2 invalid input, 3 guard exceeded, 1 internal error.
Output goes to stdout as JSON (default) or CSV; diagnostics go to stderr.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import re
import shlex
import sys
from fractions import Fraction
from math import comb

import mpmath
import numpy as np

from . import algebra as alg
from .conjectures import (
    DITTERT_GUARD,
    HAJEK_VERTEX_GUARD,
    dittert_search,
    hajek_counterexample_search,
    korner_marton_check,
)
from .constructions import (
    circ_product,
    cross_product,
    j_augment,
    oplus_join,
    star_product,
    strong_power,
    strong_product,
)
from .errors import GuardExceeded
from .extremal import PRUNED_GUARD, ForbiddenFamily, pi_sequence
from .hypergraph import blow_up, complement, disjoint_union, format_graph, read_graph, single_edge, write_graph
from .lagrangian import lambda_estimate
from .verify import CHECKS, run_suite

EXIT_OK, EXIT_INTERNAL, EXIT_INVALID, EXIT_GUARD = 0, 1, 2, 3

BINARY = {
    "star": star_product,
    "oplus": oplus_join,
    "cross": cross_product,
    "strong": strong_product,
    "circ": circ_product,
    "union": disjoint_union,
}
UNARY = {"j": j_augment, "complement": complement}


class UsageError(ValueError):
    pass


def _jsonable(x):
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    if isinstance(x, (np.bool_, bool)):
        return bool(x)
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.floating):
        return float(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, mpmath.mpf):
        return mpmath.nstr(x, 20)
    return x


def _emit(rows: list[dict], fmt: str, out) -> None:
    """JSON: a single object or a list; CSV: one row per dict."""
    if fmt == "json":
        payload = rows[0] if len(rows) == 1 else rows
        out.write(json.dumps(_jsonable(payload), indent=2) + "\n")
        return
    rows = [_jsonable(r) for r in rows]
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow({k: ";".join(map(str, v)) if isinstance(v, list) else v for k, v in r.items()})
    out.write(buf.getvalue())


def _seed(args):
    return None if args.seed == 0 else args.seed


# ---- subcommands ---------------------------------------------------------


def cmd_lagrangian(args, out) -> None:
    G = read_graph(args.graph)
    rep = lambda_estimate(
        G,
        restarts=args.restarts,
        max_iters=args.max_iters,
        tol=args.tol,
        seed=_seed(args),
        support_size=args.support_size,
    )
    row = {"r": G.r, "n": G.n, "edges": G.e, **rep.to_json(), "gradient_residual": rep.gradient_residual}
    _emit([row], args.format, out)


def cmd_construct(args, out) -> None:
    graphs = [read_graph(p) for p in args.graphs]
    op = args.op
    if op in BINARY:
        if len(graphs) != 2:
            raise UsageError(f"'{op}' takes two graph files")
        G = BINARY[op](*graphs)
    elif len(graphs) != 1:
        raise UsageError(f"'{op}' takes one graph file")
    elif op in UNARY:
        G = UNARY[op](graphs[0])
    elif op == "power":
        G = strong_power(graphs[0], args.k)
    else:  # blowup
        if not args.sizes:
            raise UsageError("'blowup' needs --sizes")
        G = blow_up(graphs[0], args.sizes)
    if args.out:
        write_graph(G, args.out)
    if args.format == "csv":
        _emit([{"edge": list(e)} for e in G.edges] or [{"edge": ""}], "csv", out)
    else:
        _emit([{"op": op, "r": G.r, "n": G.n, "edges": G.e, "graph": format_graph(G)}], "json", out)


# algebra expressions: prefix notation, e.g. "oplus 1/2 0 --r 4" or "star (1,1) (1,1)"
ALGEBRA_ARITY = {
    "star": 2, "circ": 2, "otimes": 2, "oplus": 2, "g": 3, "argmax": 2,
    "h": 1, "hinv": 1, "j": 1, "jump": 3, "split": 2,
}


def _literal(tok: str):
    tok = tok.strip()
    if tok.startswith("(") and tok.endswith(")"):
        parts = tok[1:-1].split(",")
        if len(parts) != 2:
            raise UsageError(f"pair literal must be (value,r), got {tok}")
        return alg.Density(_literal(parts[0]), int(parts[1]))
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a number or operator: {tok}") from None


def _number(x):
    if isinstance(x, alg.Density):
        raise UsageError("expected a number, got a pair")
    return x


def _pair(x):
    if not isinstance(x, alg.Density):
        raise UsageError("expected a pair literal (value,r)")
    return x


def _eval(tokens: list[str], r: int | None, prec: int):
    if not tokens:
        raise UsageError("incomplete expression")
    tok = tokens.pop(0)
    if tok == "chain":
        vals = []
        while tokens:
            vals.append(_number(_eval(tokens, r, prec)))
        return alg.oplus_chain(vals, _need_r(r), prec)
    if tok not in ALGEBRA_ARITY:
        return _literal(tok)
    args = [_eval(tokens, r, prec) for _ in range(ALGEBRA_ARITY[tok])]
    if tok == "star":
        return alg.star_op(_pair(args[0]), _pair(args[1]), prec)
    if tok == "circ":
        return alg.circ_op(_pair(args[0]), _pair(args[1]), prec)
    if tok == "otimes":
        return alg.otimes2(*map(_number, args))
    if tok == "split":
        return alg.split_factor(*(int(a) for a in args))
    if tok == "jump":
        return alg.jump_image(_number(args[0]), int(args[1]), int(args[2]))
    r = _need_r(r)
    if tok == "oplus":
        return alg.oplus(_number(args[0]), _number(args[1]), r, prec)
    if tok == "g":
        a, b, x = alg.coerce(*map(_number, args), prec=prec)
        return alg.g_func(a, b, r, x)
    if tok == "argmax":
        return alg.g_argmax(_number(args[0]), _number(args[1]), r, prec)
    if tok == "h":
        return alg.h_map(_number(args[0]), r, prec)
    if tok == "hinv":
        return alg.h_inv(_number(args[0]), r, prec)
    return alg.j_map(_number(args[0]), r)


def _need_r(r):
    if r is None:
        raise UsageError("this operator needs --r")
    return r


def _split_algebra_argv(words: list[str]):
    text = re.sub(r"\(([^)]*)\)", lambda m: "(" + m.group(1).replace(" ", "") + ")", " ".join(words))
    tokens = shlex.split(text)
    expr, r, prec = [], None, None
    i = 0
    while i < len(tokens):
        t = tokens[i]
        if t in ("--r", "--precision"):
            if i + 1 >= len(tokens):
                raise UsageError(f"{t} needs a value")
            val = int(tokens[i + 1])
            r, prec = (val, prec) if t == "--r" else (r, val)
            i += 2
            continue
        expr.append(t)
        i += 1
    return expr, r, prec


def _render(value, prec: int) -> dict:
    digits = max(15, int(prec * 0.30103))
    if isinstance(value, alg.Density):
        inner = _render(value.value, prec)
        return {**inner, "r": value.r}
    if isinstance(value, Fraction):
        return {"value": str(value), "exact": True, "decimal": mpmath.nstr(alg.to_mpf(value, prec), digits)}
    if value == mpmath.inf:
        return {"value": "inf", "exact": False, "decimal": "inf"}
    text = mpmath.nstr(alg.to_mpf(value, prec), digits)
    return {"value": text, "exact": False, "decimal": text}


def cmd_algebra(args, out) -> None:
    expr, r, prec = _split_algebra_argv(args.expression)
    r = r if r is not None else args.r
    prec = prec or args.precision
    tokens = list(expr)
    with mpmath.workprec(prec):
        value = _eval(tokens, r, prec)
        if tokens:
            raise UsageError(f"trailing tokens: {' '.join(tokens)}")
        row = {"expression": " ".join(expr), **_render(value, prec), "precision": prec}
    _emit([row], args.format, out)


def cmd_conjecture(args, out) -> None:
    seed = _seed(args)
    if args.which == "dittert":
        rep = dittert_search(args.n, restarts=args.restarts, tol=args.tol, seed=seed)
        row = {"n": rep["n"], "best_psi": rep["best_psi"], "psi_flat": rep["psi_flat"],
               "best_A": rep["best_A"].ravel().tolist(), "starts": rep["starts"], "seed": rep["seed"]}
    elif args.which == "hajek":
        if args.n**args.k > args.max_vertices:
            raise GuardExceeded(f"n^k = {args.n**args.k} exceeds --max-vertices {args.max_vertices}")
        rep = hajek_counterexample_search(args.n, args.k, restarts=args.restarts, tol=args.tol, seed=seed)
        row = {k: rep[k] for k in ("n", "k", "best_value", "uniform_value", "exceeds_uniform", "starts", "seed")}
        row["witness"] = rep["witness"].tolist()
    else:
        if args.r**args.k > args.max_vertices:
            raise GuardExceeded(f"r^k = {args.r**args.k} exceeds --max-vertices {args.max_vertices}")
        G = strong_power(single_edge(args.r), args.k)
        est = lambda_estimate(G, restarts=args.restarts, tol=args.tol, seed=seed, support_size=0)
        row = {**korner_marton_check(args.r, args.k, est.estimate), "seed": est.seed}
    _emit([row], args.format, out)


def cmd_extremal(args, out) -> None:
    graphs = [read_graph(p) for p in args.family]
    family = ForbiddenFamily.of(graphs, r=args.r)
    n_min = args.n_min if args.n_min is not None else family.r
    rows = [
        {"n": n, "ex": int(d * comb(n, family.r)), "density": float(d), "density_exact": d}
        for n, d in pi_sequence(family, n_min, args.n, guard=args.guard)
    ]
    if not rows:
        raise UsageError("no n in range satisfies n >= r")
    _emit(rows, args.format, out)


def cmd_verify(args, out) -> None:
    names = None if args.suite == "all" else args.suite.split(",")
    results = run_suite(args.seed, names)
    rows = [r.to_json() for r in results]
    if args.format == "json":
        summary = {"seed": args.seed, "passed": sum(r.passed for r in results), "total": len(results)}
        out.write(json.dumps({**summary, "checks": rows}, indent=2) + "\n")
    else:
        _emit(rows, "csv", out)
    if not all(r.passed for r in results):
        raise _ChecksFailed


class _ChecksFailed(Exception):
    pass


# ---- parser --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--precision", type=int, default=alg.DEFAULT_PRECISION, help="mpmath bits (default 128)")
    common.add_argument("--restarts", type=int, default=64, help="random restarts (default 64)")
    common.add_argument("--seed", type=int, default=1, help="RNG seed; 0 draws one from entropy (default 1)")
    common.add_argument("--tol", type=float, default=1e-12, help="relative-gain stopping tolerance")

    parser = argparse.ArgumentParser(prog="turan", description="Hypergraph Lagrangians and Turán density algebra.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lagrangian", parents=[common], help="estimate the Lagrangian of a graph file")
    p.add_argument("--graph", required=True)
    p.add_argument("--max-iters", type=int, default=4000)
    p.add_argument("--support-size", type=int, default=6, help="largest vertex subset used for face starts")
    p.set_defaults(func=cmd_lagrangian)

    p = sub.add_parser("construct", parents=[common], help="build a product or derived graph")
    p.add_argument("op", choices=sorted([*BINARY, *UNARY, "power", "blowup"]))
    p.add_argument("graphs", nargs="+")
    p.add_argument("--k", type=int, default=2, help="exponent for 'power'")
    p.add_argument("--sizes", type=int, nargs="+", help="part sizes for 'blowup'")
    p.add_argument("--out", help="also write the result in the text graph format")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("algebra", parents=[common], help="evaluate a density-algebra expression")
    p.add_argument("expression", nargs="+")
    p.add_argument("--r", type=int)
    p.set_defaults(func=cmd_algebra)

    p = sub.add_parser("conjecture", help="Dittert, Hajek and Körner-Marton probes")
    csub = p.add_subparsers(dest="which", required=True)
    q = csub.add_parser("dittert", parents=[common])
    q.add_argument("--n", type=int, required=True, help=f"matrix order (guard {DITTERT_GUARD})")
    q = csub.add_parser("hajek", parents=[common])
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--max-vertices", type=int, default=HAJEK_VERTEX_GUARD)
    q = csub.add_parser("km-check", parents=[common])
    q.add_argument("--r", type=int, required=True)
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--max-vertices", type=int, default=HAJEK_VERTEX_GUARD)
    p.set_defaults(func=cmd_conjecture)

    p = sub.add_parser("extremal", parents=[common], help="exact ex(n, F) table")
    p.add_argument("--n", type=int, required=True, help="largest n")
    p.add_argument("--n-min", type=int, help="smallest n (default r)")
    p.add_argument("--family", nargs="*", default=[], help="forbidden graph files")
    p.add_argument("--r", type=int, help="uniformity, required for an empty family")
    p.add_argument("--guard", type=int, default=PRUNED_GUARD, help="max candidate edges C(n,r)")
    p.set_defaults(func=cmd_extremal)

    p = sub.add_parser("verify", parents=[common], help="run the property-check matrix")
    p.add_argument("--suite", default="all", help=f"'all' or comma-separated names from: {', '.join(CHECKS)}")
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INVALID
    try:
        args.func(args, out)
    except _ChecksFailed:
        err.write("some checks failed\n")
        return EXIT_INTERNAL
    except GuardExceeded as exc:
        err.write(f"guard exceeded: {exc}\n")
        return EXIT_GUARD
    except (ValueError, OSError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INVALID
    except Exception as exc:  # noqa: BLE001
        err.write(f"internal error: {type(exc).__name__}: {exc}\n")
        return EXIT_INTERNAL
    return EXIT_OK


def main() -> None:
    sys.exit(run())
