"""Command-line front door.

Subcommands: gen (instance generators), vc (solvers), reduce (hard-instance
builders), verify (randomized property suites), bench (naive-vs-fast timing
with outputs cross-checked before any time is reported).

Every randomized run either receives --seed or draws one and echoes it in
the JSON report, so any result can be reproduced exactly. Payloads go to
--out when given (report JSON on stdout); without --out the payload itself
is stdout and the report moves to stderr.

Exit codes: 0 success, 1 verification or consistency failure, 2 usage or
input error.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from pathlib import Path

from .errors import InconsistencyError, VclabError
from .flow import vertex_connectivity
from .graphs import (
    emit_graph,
    emit_labeled,
    gen_gnp,
    gen_planted_4clique,
    parse_edge_pairs,
    parse_graph,
)
from .reductions import build_h, build_j, emit_hard_instance, four_partite
from .solvers import (
    apvc_naive,
    capped_apvc_sampled,
    capped_ssvc_sampled,
    fast_apvc,
    fast_ssvc,
    global_vc,
    ssvc,
    steiner_vc,
)
from .verify import SUITES

THREADS_ENV = "VCONN_THREADS"


def resolve_threads(flag: int | None) -> int:
    if flag is not None:
        if flag < 1:
            raise VclabError(f"--threads must be >= 1, got {flag}")
        return flag
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            value = int(env)
        except ValueError:
            raise VclabError(f"{THREADS_ENV} must be an integer, got {env!r}") from None
        if value < 1:
            raise VclabError(f"{THREADS_ENV} must be >= 1, got {value}")
        return value
    return os.cpu_count() or 1


def _ensure_seed(args: argparse.Namespace) -> int:
    if args.seed is None:
        args.seed = random.SystemRandom().randrange(2**32)
    return args.seed


def _load_graph(path: str):
    try:
        return parse_graph(Path(path).read_text())
    except OSError as exc:
        raise VclabError(f"cannot read {path}: {exc}") from None


def _deliver(payload: str, out: str | None, report: dict) -> None:
    """Payload to --out with the report on stdout, or payload on stdout."""
    if out:
        Path(out).write_text(payload)
        report["payload"] = out
        print(json.dumps(report, sort_keys=True))
    else:
        sys.stdout.write(payload)
        print(json.dumps(report, sort_keys=True), file=sys.stderr)


def _report(args: argparse.Namespace, **extra) -> dict:
    rep = {"command": args.command}
    if getattr(args, "seed", None) is not None:
        rep["seed"] = args.seed
    rep.update(extra)
    return rep


# ---------------------------------------------------------------------------
# gen
# ---------------------------------------------------------------------------


def cmd_gen(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    t0 = time.time()
    if args.kind == "gnp":
        if args.n is None or args.p is None:
            parser.error("gen gnp requires --n and --p")
        seed = _ensure_seed(args)
        g = gen_gnp(args.n, args.p, seed)
        payload = emit_graph(g)
    elif args.kind == "planted4":
        if args.n is None or args.p is None:
            parser.error("gen planted4 requires --n and --p")
        seed = _ensure_seed(args)
        g = gen_planted_4clique(args.n, args.p, not args.no_plant, seed)
        payload = emit_graph(g)
    else:  # fourpartite
        if args.graph is None:
            parser.error("gen fourpartite requires --graph")
        g = four_partite(_load_graph(args.graph)).inst
        payload = emit_labeled(g)
        g = g.graph
    rep = _report(
        args,
        kind=args.kind,
        instance={"n": g.n, "m": g.m},
        timings={"total": round(time.time() - t0, 6)},
    )
    _deliver(payload, args.out, rep)
    return 0


# ---------------------------------------------------------------------------
# vc
# ---------------------------------------------------------------------------


def _solve_vc(args, parser, g, threads):
    """Dispatch on (problem, algo); returns (payload, result-for-report)."""
    problem, algo = args.problem, args.algo
    if problem in ("st", "global", "steiner") and algo != "naive":
        parser.error(f"problem {problem} supports only --algo naive")
    if problem == "st":
        if args.s is None or args.t is None:
            parser.error("st needs --s and --t")
        value, cert = vertex_connectivity(g, args.s, args.t)
        result = {
            "value": value,
            "cut_vertices": sorted(cert.cut_vertices),
            "cut_edges": [list(e) for e in cert.cut_edges],
        }
        return f"{value}\n", result
    if problem == "global":
        value = global_vc(g)
        return f"{value}\n", {"value": value}
    if problem == "steiner":
        if not args.terminals:
            parser.error("steiner needs --terminals")
        terms = [int(x) for x in args.terminals.split()]
        value = steiner_vc(g, terms)
        return f"{value}\n", {"value": value, "terminals": terms}
    if problem == "ssvc":
        if args.s is None:
            parser.error("ssvc needs --s")
        if algo == "naive":
            row = ssvc(g, args.s)
        elif algo == "fast":
            row = fast_ssvc(g, args.s, k=args.k, seed=_ensure_seed(args), c=args.c, threads=threads)
        else:
            if args.k is None:
                parser.error("ssvc --algo sampled needs --k")
            row = capped_ssvc_sampled(
                g, args.s, args.k, seed=_ensure_seed(args),
                fallback=args.fallback, c=args.c, threads=threads,
            )
        payload = "\t".join(str(x) for x in row) + "\n"
        return payload, {"source": args.s}
    # apvc
    if algo == "naive":
        mat = apvc_naive(g, threads=threads)
    elif algo == "fast":
        mat = fast_apvc(g, k=args.k, seed=_ensure_seed(args), c=args.c, threads=threads, mode=args.mode)
    else:
        if args.k is None:
            parser.error("apvc --algo sampled needs --k")
        mat = capped_apvc_sampled(
            g, args.k, seed=_ensure_seed(args), fallback=args.fallback, c=args.c, threads=threads
        )
    return mat.to_tsv(), {"cap": mat.cap}


def cmd_vc(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    t0 = time.time()
    g = _load_graph(args.graph)
    t_load = time.time()
    payload, result = _solve_vc(args, parser, g, resolve_threads(args.threads))
    t_solve = time.time()
    rep = _report(
        args,
        problem=args.problem,
        algo=args.algo,
        instance={"n": g.n, "m": g.m},
        params={"k": args.k, "c": args.c, "fallback": args.fallback, "mode": args.mode,
                "threads": args.threads},
        result=result,
        timings={"load": round(t_load - t0, 6), "solve": round(t_solve - t_load, 6)},
    )
    _deliver(payload, args.out, rep)
    return 0


# ---------------------------------------------------------------------------
# reduce
# ---------------------------------------------------------------------------


def cmd_reduce(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    t0 = time.time()
    g = _load_graph(args.graph)
    if args.kind == "apvc":
        hard = build_h(g)
        assert hard.thresholds is not None
        thr = hard.thresholds.values()
        summary = {"thresholds": {"min": min(thr), "max": max(thr)}}
    else:
        if args.demand is None:
            parser.error("reduce steiner requires --demand")
        try:
            demand = parse_edge_pairs(Path(args.demand).read_text())
        except OSError as exc:
            raise VclabError(f"cannot read {args.demand}: {exc}") from None
        hard = build_j(g, demand)
        summary = {
            "uniform_threshold": hard.uniform_threshold,
            "terminals": len(hard.terminals or ()),
            "demand_edges": len(demand),
        }
    payload = emit_hard_instance(hard)
    rep = _report(
        args,
        kind=args.kind,
        source={"n": g.n, "m": g.m},
        instance={"n": hard.graph.n, "m": hard.graph.m},
        result=summary,
        timings={"total": round(time.time() - t0, 6)},
    )
    _deliver(payload, args.out, rep)
    return 0


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def cmd_verify(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    suite = SUITES[args.suite]
    kwargs: dict = {"seed": args.seed if args.seed is not None else 0}
    if args.seeds is not None:
        kwargs["trials"] = args.seeds
    if args.n is not None:
        kwargs["max_n"] = args.n
    if args.suite == "sampler":
        kwargs["fallback"] = args.fallback
        if args.c is not None:
            kwargs["c"] = args.c
    result = suite(**kwargs)
    print(result.summary())
    return 0 if result.ok else 1


# ---------------------------------------------------------------------------
# bench
# ---------------------------------------------------------------------------


def _bench_once(problem, algo, g, seed, threads):
    t0 = time.time()
    if problem == "apvc":
        out = apvc_naive(g, threads=threads) if algo == "naive" else fast_apvc(g, seed=seed, threads=threads)
        payload = out.to_tsv()
    else:
        row = ssvc(g, 0) if algo == "naive" else fast_ssvc(g, 0, seed=seed, threads=threads)
        out = row
        payload = "\t".join(str(x) for x in row) + "\n"
    return payload, time.time() - t0


def cmd_bench(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    seed = _ensure_seed(args)
    threads = resolve_threads(args.threads)
    algos = args.algos.split(",")
    for algo in algos:
        if algo not in ("naive", "fast"):
            parser.error(f"unknown algo {algo!r}")
    sizes = [int(s) for s in args.sizes.split(",")]
    rows = ["problem\talgo\tn\tm\tseconds"]
    for n in sizes:
        g = gen_gnp(n, args.p, seed + n)
        payloads = {}
        times = {}
        for algo in algos:
            payloads[algo], times[algo] = _bench_once(args.problem, algo, g, seed, threads)
        baseline = payloads[algos[0]]
        for algo in algos[1:]:
            if payloads[algo] != baseline:
                raise InconsistencyError(
                    f"algo outputs differ at n={n}: {algos[0]} vs {algo}"
                )
        for algo in algos:
            rows.append(f"{args.problem}\t{algo}\t{n}\t{g.m}\t{times[algo]:.4f}")
    table = "\n".join(rows) + "\n"
    rep = _report(args, problem=args.problem, algos=algos, sizes=sizes, p=args.p)
    _deliver(table, args.out, rep)
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vclab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate instances")
    p_gen.add_argument("kind", choices=["gnp", "planted4", "fourpartite"])
    p_gen.add_argument("--n", type=int)
    p_gen.add_argument("--p", type=float)
    p_gen.add_argument("--no-plant", action="store_true", help="planted4: skip the planted clique")
    p_gen.add_argument("--graph", help="fourpartite: source graph file")
    p_gen.add_argument("--seed", type=int)
    p_gen.add_argument("--out")
    p_gen.set_defaults(fn=cmd_gen)

    p_vc = sub.add_parser("vc", help="run a connectivity solver")
    p_vc.add_argument("problem", choices=["st", "global", "ssvc", "apvc", "steiner"])
    p_vc.add_argument("--graph", required=True)
    p_vc.add_argument("--algo", choices=["naive", "fast", "sampled"], default="naive")
    p_vc.add_argument("--s", type=int)
    p_vc.add_argument("--t", type=int)
    p_vc.add_argument("--terminals", help="space-separated terminal vertices")
    p_vc.add_argument("--k", type=int)
    p_vc.add_argument("--c", type=float, default=4.0)
    p_vc.add_argument("--fallback", action=argparse.BooleanOptionalAction, default=True)
    p_vc.add_argument("--mode", choices=["default", "gh"], default="default")
    p_vc.add_argument("--seed", type=int)
    p_vc.add_argument("--threads", type=int)
    p_vc.add_argument("--out")
    p_vc.set_defaults(fn=cmd_vc)

    p_red = sub.add_parser("reduce", help="build a hard instance")
    p_red.add_argument("kind", choices=["apvc", "steiner"])
    p_red.add_argument("--graph", required=True)
    p_red.add_argument("--demand", help="steiner: demand edge file, one 'u v' per line")
    p_red.add_argument("--out")
    p_red.set_defaults(fn=cmd_reduce)

    p_ver = sub.add_parser("verify", help="run a property suite")
    p_ver.add_argument("suite", choices=sorted(SUITES))
    p_ver.add_argument("--seeds", type=int, help="number of randomized trials")
    p_ver.add_argument("--n", type=int, help="max instance size")
    p_ver.add_argument("--seed", type=int)
    p_ver.add_argument("--fallback", action=argparse.BooleanOptionalAction, default=True)
    p_ver.add_argument("--c", type=float)
    p_ver.set_defaults(fn=cmd_verify)

    p_bench = sub.add_parser("bench", help="time solvers against each other")
    p_bench.add_argument("problem", choices=["apvc", "ssvc"])
    p_bench.add_argument("--algos", default="naive,fast")
    p_bench.add_argument("--sizes", default="40")
    p_bench.add_argument("--p", type=float, default=0.5)
    p_bench.add_argument("--seed", type=int)
    p_bench.add_argument("--threads", type=int)
    p_bench.add_argument("--out")
    p_bench.set_defaults(fn=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args, parser)
    except InconsistencyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except VclabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
