"""Command-line front end.

Exit codes: 0 yes/success, 1 no, 2 usage or parse error, 3 internal error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import oracle
from .graph import Graph, GraphError, read_graph
from .lpvc import lp_value
from .solve import IMPROVED, VARIANTS, SolveStats, solve_decision, solve_minimum
from .transversal import (
    InvalidDeletionSet,
    KERNEL,
    SOLVED_NO,
    kernelize,
    maximum_matching,
    solve_oct,
    solve_svd,
    vc_param_run,
)

EXIT_YES, EXIT_NO, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def half_units(h: int) -> str:
    """Render a half-unit count exactly: 5 -> '2.5', -1 -> '-0.5'."""
    sign = "-" if h < 0 else ""
    h = abs(h)
    return f"{sign}{h // 2}.{5 if h % 2 else 0}"


def _labels(g: Graph, vertices) -> list:
    return sorted(g.origin(v) for v in vertices)


def _report(problem, answer, witness, k, g, stats=None, started=0.0, extra=None):
    vc_half = lp_value(g)
    report = {
        "problem": problem,
        "answer": "yes" if answer else "no",
        "witness": witness,
        "k": k,
        "vc_star": half_units(vc_half),
        "mu": half_units(2 * k - vc_half) if k is not None else None,
        "stats": stats.as_dict() if stats is not None else None,
        "wall_time_ms": round((time.perf_counter() - started) * 1000, 3),
    }
    if extra:
        report.update(extra)
    return report


def _emit(args, report, lines) -> int:
    if args.json:
        print(json.dumps(report, sort_keys=True))
    else:
        for line in lines:
            print(line)
    return EXIT_YES if report["answer"] == "yes" else EXIT_NO


def _load(path) -> Graph:
    try:
        return read_graph(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _verified_cover(g: Graph, cover, k) -> list:
    if cover is None:
        return []
    if not g.is_vertex_cover(cover) or (k is not None and len(cover) > k):
        raise AssertionError("solver returned an invalid cover")
    return _labels(g, cover)


# -- commands --------------------------------------------------------------------------

def cmd_solve_vc(args) -> int:
    g = _load(args.file)
    started = time.perf_counter()
    stats = SolveStats()
    if args.minimum:
        cover = solve_minimum(g, args.variant, stats)
        k = len(cover)
    else:
        if args.k is None:
            raise UsageError("solve-vc needs -k K or --minimum")
        k = args.k
        cover = solve_decision(g, k, args.variant, stats)
    witness = _verified_cover(g, cover, k)
    report = _report("vertex-cover", cover is not None, witness, k, g, stats, started)
    lines = [f"{report['answer']}: vertex cover of size {len(witness)}" if cover is not None
             else f"no: no vertex cover of size {k}"]
    if cover is not None:
        lines.append("witness: " + " ".join(map(str, witness)))
    if args.stats:
        lines.append(f"vc*: {report['vc_star']}  mu: {report['mu']}")
        lines.extend(f"{key}: {value}" for key, value in stats.as_dict().items())
    return _emit(args, report, lines)


def cmd_solve_agvc(args) -> int:
    g = _load(args.file)
    started = time.perf_counter()
    matching = maximum_matching(g)
    k = len(matching) + args.l
    stats = SolveStats()
    cover = solve_decision(g, k, IMPROVED, stats)
    witness = _verified_cover(g, cover, k)
    report = _report("agvc", cover is not None, witness, k, g, stats, started,
                     {"matching_size": len(matching), "l": args.l})
    lines = [f"matching size {len(matching)}, budget k = {k}"]
    lines.append(f"yes: vertex cover of size {len(witness)}" if cover is not None else "no")
    if cover is not None:
        lines.append("witness: " + " ".join(map(str, witness)))
    return _emit(args, report, lines)


def _cmd_deletion(args, problem, fn) -> int:
    g = _load(args.file)
    started = time.perf_counter()
    found = fn(g, args.k)
    witness = _labels(g, found) if found is not None else []
    report = _report(problem, found is not None, witness, args.k, g, None, started)
    report["mu"] = None
    report["vc_star"] = None
    lines = [f"yes: delete {len(witness)} vertices" if found is not None else "no"]
    if found is not None:
        lines.append("witness: " + " ".join(map(str, witness)))
    return _emit(args, report, lines)


def cmd_solve_oct(args) -> int:
    return _cmd_deletion(args, "oct", solve_oct)


def cmd_solve_svd(args) -> int:
    return _cmd_deletion(args, "svd", solve_svd)


def _parse_set(g: Graph, text: str) -> set:
    by_label = {g.origin(v): v for v in g.vertices()}
    out = set()
    for tok in filter(None, (t.strip() for t in text.split(","))):
        try:
            label = int(tok)
        except ValueError:
            raise UsageError(f"bad vertex label {tok!r}") from None
        if label not in by_label:
            raise UsageError(f"vertex {label} is not in the graph")
        out.add(by_label[label])
    return out


def cmd_vc_param(args) -> int:
    g = _load(args.file)
    started = time.perf_counter()
    s = _parse_set(g, args.set)
    try:
        run = vc_param_run(g, s, args.l, args.kind)
    except InvalidDeletionSet as exc:
        raise UsageError(str(exc)) from None
    witness = _verified_cover(g, run.cover, args.l)
    report = _report("vc-param-" + args.kind, run.cover is not None, witness, args.l, g, None,
                     started, {"core_mu": half_units(run.mu_half), "set_size": len(s)})
    lines = [f"yes: vertex cover of size {len(witness)}" if run.cover is not None else "no"]
    if run.cover is not None:
        lines.append("witness: " + " ".join(map(str, witness)))
    return _emit(args, report, lines)


def cmd_kernelize(args) -> int:
    g = _load(args.file)
    started = time.perf_counter()
    res = kernelize(g, args.k, args.c)
    if res.status == KERNEL:
        report = _report("kernel", True, [], res.k, res.graph, None, started,
                         {"status": res.status, "kernel_n": res.graph.n,
                          "kernel_m": res.graph.edge_count, "kernel_dimacs": res.graph.to_dimacs()})
        lines = [f"kernel: {res.graph.n} vertices, k' = {res.k}", res.graph.to_dimacs().rstrip()]
        if args.json:
            print(json.dumps(report, sort_keys=True))
        else:
            print("\n".join(lines))
        return EXIT_YES
    answer = res.status != SOLVED_NO
    witness = _verified_cover(g, res.cover, args.k) if answer else []
    report = _report("kernel", answer, witness, args.k, g, None, started, {"status": res.status})
    lines = [res.status]
    if answer:
        lines.append("witness: " + " ".join(map(str, witness)))
    return _emit(args, report, lines)


def cmd_oracle(args) -> int:
    g = _load(args.file)
    try:
        result = oracle.OPS[args.op](g)
    except oracle.OracleLimitError as exc:
        raise UsageError(str(exc)) from None
    if args.op == "min-vc":
        result = {"size": result[0], "cover": _labels(g, result[1])}
    elif args.op == "lp":
        result = {"value": half_units(result[0]), "all_half_unique": result[1]}
    elif args.op == "min-surplus":
        result = {"surplus": result[0], "witness": _labels(g, result[1])}
    print(json.dumps({"op": args.op, "result": result}, sort_keys=True))
    return EXIT_YES


def _bench_one(path: str) -> dict:
    g = read_graph(path)
    row = {"file": os.path.basename(path), "n": g.n, "m": g.edge_count,
           "vc_star": half_units(lp_value(g))}
    for variant in VARIANTS:
        stats = SolveStats()
        t = time.perf_counter()
        cover = solve_minimum(g, variant, stats)
        row[variant] = {"vc": len(cover), "nodes": stats.nodes_visited,
                        "ms": round((time.perf_counter() - t) * 1000, 3),
                        "drop_violations": stats.drop_violations}
    return row


def cmd_bench(args) -> int:
    if not os.path.isdir(args.dir):
        raise UsageError(f"{args.dir} is not a directory")
    files = sorted(os.path.join(args.dir, f) for f in os.listdir(args.dir)
                   if os.path.isfile(os.path.join(args.dir, f)))
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            rows = list(pool.map(_bench_one, files))
    else:
        rows = [_bench_one(f) for f in files]
    if args.json:
        print(json.dumps(rows, sort_keys=True))
    else:
        print(f"{'file':30} {'n':>4} {'m':>5} {'vc*':>6} {'vc':>4} {'simple':>10} {'improved':>10}")
        for r in rows:
            print(f"{r['file']:30} {r['n']:>4} {r['m']:>5} {r['vc_star']:>6} {r[IMPROVED]['vc']:>4} "
                  f"{r['simple']['nodes']:>10} {r[IMPROVED]['nodes']:>10}")
    return EXIT_YES


# -- parser ----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="vcalp", description="Vertex Cover above the LP bound.")
    p.add_argument("--json", action="store_true", help="print a JSON report")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="print a JSON report")
        sp.set_defaults(func=fn)
        return sp

    sp = add("solve-vc", cmd_solve_vc, "vertex cover of size at most k")
    sp.add_argument("file")
    sp.add_argument("-k", type=int)
    sp.add_argument("--minimum", action="store_true")
    sp.add_argument("--variant", choices=VARIANTS, default=IMPROVED)
    sp.add_argument("--stats", action="store_true")

    sp = add("solve-agvc", cmd_solve_agvc, "vertex cover of size at most |M| + l")
    sp.add_argument("file")
    sp.add_argument("-l", type=int, required=True)

    for name, fn in (("solve-oct", cmd_solve_oct), ("solve-svd", cmd_solve_svd)):
        sp = add(name, fn, f"{name[6:]} deletion set of size at most k")
        sp.add_argument("file")
        sp.add_argument("-k", type=int, required=True)

    sp = add("vc-param", cmd_vc_param, "vertex cover given a KVD or OCT deletion set")
    sp.add_argument("file")
    sp.add_argument("--set", required=True, help="comma-separated vertex labels")
    sp.add_argument("--kind", choices=("kvd", "oct"), required=True)
    sp.add_argument("-l", type=int, required=True)

    sp = add("kernelize", cmd_kernelize, "reduce to a kernel or solve outright")
    sp.add_argument("file")
    sp.add_argument("-k", type=int, required=True)
    sp.add_argument("-c", type=int, default=1)

    sp = add("oracle", cmd_oracle, "brute-force reference answers")
    sp.add_argument("op", choices=sorted(oracle.OPS))
    sp.add_argument("file")

    sp = add("bench", cmd_bench, "solve every graph in a directory")
    sp.add_argument("dir")
    sp.add_argument("--jobs", type=int, default=1)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_YES
    try:
        return args.func(args)
    except (UsageError, GraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AssertionError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
