"""Command-line front end.  Every subcommand reads and writes JSON.

Exit codes: 0 success / Colored / Yes, 1 No / Unsupported, 2 usage or input
error, 3 internal-consistency failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import hardness
from .lists import (InternalConsistencyError, PreconditionError,
                    random_assignment, stripe_assignment, verify_coloring)
from .oracle import YES, is_L_colorable
from .solver import COLORED, IDENTICAL, solve, touch_counter
from .torus import TorusTriangulation, classify

log = logging.getLogger("toruslist")

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3
BUDGET_ENV = "TORUSLIST_BUDGET"
CSV_HEADER = ("n", "case", "total_touches", "max_touches_per_vertex", "millis")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    graph: tuple[int, int, int] | None = None
    input: str | None = None
    output: str | None = None
    seed: int = 0
    universe: int = 10
    trials: int = 1
    budget: int = 10**7
    extended: bool = False


def config_from_args(args) -> RunConfig:
    graph = getattr(args, "graph", None) or getattr(args, "rst", None)
    return RunConfig(args.command, tuple(graph) if graph else None,
                     getattr(args, "input", None) or getattr(args, "lists", None),
                     getattr(args, "output", None) or getattr(args, "csv", None),
                     getattr(args, "seed", 0), getattr(args, "universe", 10),
                     getattr(args, "trials", 1), getattr(args, "budget", None) or 10**7,
                     getattr(args, "extended", False))


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return 10**7
    try:
        return int(float(raw))
    except ValueError:
        raise UsageError(f"{BUDGET_ENV}={raw!r} is not a number") from None


# ---- JSON plumbing ---------------------------------------------------------

def _read_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else open(path).read()
    except OSError as e:
        raise UsageError(f"{path}: {e.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError(f"{path}: malformed JSON at line {e.lineno}, column {e.colno}: {e.msg}") from None


def _field(doc, name, where):
    if not isinstance(doc, dict) or name not in doc:
        raise UsageError(f"{where}: missing field '{name}'")
    return doc[name]


def _graph_from(doc, where) -> TorusTriangulation:
    g = _field(doc, "graph", where)
    try:
        r, s, t = (int(_field(g, k, f"{where}: graph")) for k in "rst")
        return TorusTriangulation(r, s, t)
    except (TypeError, ValueError) as e:
        raise UsageError(f"{where}: field 'graph': {e}") from None


def _lists_from(doc, where, n) -> list[frozenset]:
    raw = _field(doc, "lists", where)
    if not isinstance(raw, list) or len(raw) != n:
        raise UsageError(f"{where}: field 'lists' must be an array of {n} arrays")
    out = []
    for v, lst in enumerate(raw):
        if not isinstance(lst, list) or not all(isinstance(c, int) and not isinstance(c, bool) for c in lst):
            raise UsageError(f"{where}: field 'lists[{v}]' must be an array of integers")
        out.append(frozenset(lst))
    return out


def _load_assignment(path) -> tuple[TorusTriangulation, list[frozenset]]:
    doc = _read_json(path)
    G = _graph_from(doc, path)
    return G, _lists_from(doc, path, G.n)


def _graph_json(G: TorusTriangulation) -> dict:
    return {"r": G.r, "s": G.s, "t": G.t}


def _emit(doc, out=None):
    text = json.dumps(doc, sort_keys=True)
    if out and out != "-":
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _parse_graph(vals) -> TorusTriangulation:
    try:
        return TorusTriangulation(*vals)
    except ValueError as e:
        raise UsageError(str(e)) from None


# ---- subcommands -----------------------------------------------------------

def cmd_gen(args) -> int:
    G = _parse_graph(args.rst)
    cls = classify(G)
    _emit({"graph": _graph_json(G), "n": G.n, "classification": cls.to_json(),
           "adjacency": [list(nb) for nb in G.adjacency]}, args.output)
    return EXIT_NO if cls.solver_case == "Unsupported" else EXIT_OK


def cmd_assign(args) -> int:
    if args.graph is None and args.n is None:
        raise UsageError("assign needs --graph R S T or --n N")
    G = _parse_graph(args.graph) if args.graph else None
    n = G.n if G else args.n
    if args.k > args.universe:
        raise UsageError("--k exceeds --universe")
    L = random_assignment(n, args.k, args.universe, random.Random(args.seed), G.key if G else None)
    doc = L.to_json()
    doc["seed"] = args.seed
    _emit(doc, args.output)
    return EXIT_OK


def cmd_color(args) -> int:
    G, L = _load_assignment(args.input)
    try:
        out = solve(G, L)
    except PreconditionError as e:
        raise UsageError(str(e)) from None
    doc = {"graph": _graph_json(G), **out.to_json()}
    _emit(doc, args.output)
    return EXIT_OK if out.status in (COLORED, IDENTICAL) else EXIT_NO


def cmd_verify(args) -> int:
    G, L = _load_assignment(args.lists)
    cdoc = _read_json(args.coloring)
    col = _field(cdoc, "coloring", args.coloring)
    if col is None:
        ok = False
    elif not isinstance(col, list) or len(col) != G.n:
        raise UsageError(f"{args.coloring}: field 'coloring' must be an array of {G.n} integers")
    else:
        ok = verify_coloring(G.adjacency, L, col)
    _emit({"graph": _graph_json(G), "valid": ok}, args.output)
    return EXIT_OK if ok else EXIT_NO


def cmd_oracle(args) -> int:
    G, L = _load_assignment(args.input)
    budget = args.budget if args.budget is not None else default_budget()
    res = is_L_colorable(G.adjacency, L, budget=budget)
    _emit({"graph": _graph_json(G), **res.to_json()}, args.output)
    return EXIT_OK if res.status == YES else EXIT_NO


def cmd_hard(args) -> int:
    G = _parse_graph(args.graph)
    try:
        fam, why = hardness.select_family(G)
    except PreconditionError as e:
        raise UsageError(str(e)) from None
    doc = {"graph": _graph_json(G), "family": fam.to_json() if fam else None, "reason": why}
    if fam is None:
        _emit(doc, args.output)
        return EXIT_NO
    L0 = frozenset(args.l0) if args.l0 else hardness.DEFAULT_L0
    if len(L0) != 3:
        raise UsageError("--l0 needs three distinct colors")
    L = hardness.hard_assignment(G, L0)
    doc["lists"] = [sorted(x) for x in L]
    code = EXIT_OK
    if args.verify:
        if G.n > 33 and not args.extended:
            raise UsageError(f"n = {G.n} > 33: pass --extended to verify larger instances")
        budget = args.budget if args.budget is not None else default_budget()
        verdict = hardness.verify_hardness(G, L, budget)
        doc["verification"] = verdict.to_json()
        code = EXIT_OK if verdict.status == hardness.CONFIRMED else EXIT_NO
    _emit(doc, args.output)
    return code


# ---- benchmark -------------------------------------------------------------

BENCH_CASES = {
    "Case1": lambda s: (4, s, 1),
    "Case2": lambda s: (1, s, 2),
    "Case3": lambda s: (2, s, 4),
}


@dataclass(frozen=True)
class BenchRow:
    n: int
    case: str
    total_touches: int
    max_touches_per_vertex: int
    millis: float
    trial: int = 0
    excluded: bool = False


def _bench_graph(case: str, s: int) -> TorusTriangulation:
    G = TorusTriangulation(*BENCH_CASES[case](s))
    got = classify(G)
    if got.solver_case != case or got.representation != G.key:
        raise UsageError(f"size {s} does not give a native {case} graph (T{G.key})")
    return G


def _bench_trial(job) -> BenchRow:
    case, s, trial, seed, universe, lists = job
    G = _bench_graph(case, s)
    rng = random.Random(f"{seed}:{case}:{s}:{trial}")
    L = None
    if lists == "stripes":
        pool = [frozenset(rng.sample(range(universe), 5)) for _ in range(6)]
        L = stripe_assignment(G, rng, pool)
    if L is None:
        L = random_assignment(G.n, 5, universe, rng, G.key)
    t0 = time.perf_counter()
    out = solve(G, L)
    millis = (time.perf_counter() - t0) * 1000
    if out.coloring is None or not verify_coloring(G.adjacency, L, out.coloring):
        raise InternalConsistencyError(f"bench run on T{G.key} did not produce a coloring")
    st = touch_counter(out)
    label = case if not st.excluded else f"{case}/excluded"
    return BenchRow(G.n, label, st.total, st.max_per_vertex, millis, trial, st.excluded)


def run_bench(case: str, sizes, trials: int = 1, seed: int = 0, universe: int = 10,
              lists: str = "random", jobs: int = 1) -> list[BenchRow]:
    work = [(case, s, k, seed, universe, lists) for s in sizes for k in range(trials)]
    for s in sizes:
        _bench_graph(case, s)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_bench_trial, work))
    else:
        rows = [_bench_trial(w) for w in work]
    return sorted(rows, key=lambda r: (r.n, r.trial))


def emit_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow((r.n, r.case, r.total_touches, r.max_touches_per_vertex, f"{r.millis:.3f}"))
    return buf.getvalue()


def bench_summary(rows) -> dict:
    kept = [r for r in rows if not r.excluded]
    if not kept:
        return {"rows": len(rows), "excluded": len(rows)}
    per_n = [r.total_touches / r.n for r in kept]
    return {"rows": len(rows), "excluded": len(rows) - len(kept),
            "touches_per_n_min": min(per_n), "touches_per_n_max": max(per_n),
            "ratio": max(per_n) / min(per_n),
            "C": max(r.max_touches_per_vertex for r in kept)}


def cmd_bench(args) -> int:
    if args.trials < 1 or args.jobs < 1:
        raise UsageError("--trials and --jobs must be positive")
    rows = run_bench(args.case, args.sizes, args.trials, args.seed, args.universe,
                     args.lists, args.jobs)
    text = emit_csv(rows)
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    summary = bench_summary(rows)
    if args.plot:
        from .plotting import plot_bench
        plot_bench(rows, args.plot)
        summary["plot"] = args.plot
    print(json.dumps(summary, sort_keys=True), file=sys.stderr)
    return EXIT_OK


# ---- entry point -----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="toruslist", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def out_opt(q):
        q.add_argument("-o", "--output", default=None, help="write JSON here instead of stdout")

    q = sub.add_parser("gen", help="graph JSON and classification")
    q.add_argument("rst", nargs=3, type=int, metavar=("R", "S", "T"))
    out_opt(q)
    q.set_defaults(func=cmd_gen)

    q = sub.add_parser("assign", help="seeded random k-assignment")
    q.add_argument("--graph", nargs=3, type=int, metavar=("R", "S", "T"))
    q.add_argument("--n", type=int)
    q.add_argument("--k", type=int, default=5)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--universe", type=int, default=10)
    out_opt(q)
    q.set_defaults(func=cmd_assign)

    q = sub.add_parser("color", help="solve an assignment")
    q.add_argument("input", nargs="?", default="-", help="assignment JSON (default stdin)")
    out_opt(q)
    q.set_defaults(func=cmd_color)

    q = sub.add_parser("verify", help="check a coloring against an assignment")
    q.add_argument("--lists", required=True)
    q.add_argument("--coloring", required=True)
    out_opt(q)
    q.set_defaults(func=cmd_verify)

    q = sub.add_parser("oracle", help="exact L-colorability by backtracking")
    q.add_argument("input", nargs="?", default="-")
    q.add_argument("--budget", type=int, default=None, help=f"node budget (default ${BUDGET_ENV} or 1e7)")
    out_opt(q)
    q.set_defaults(func=cmd_oracle)

    q = sub.add_parser("hard", help="non-3-choosability witness")
    q.add_argument("--graph", nargs=3, type=int, required=True, metavar=("R", "S", "T"))
    q.add_argument("--verify", action="store_true")
    q.add_argument("--extended", action="store_true", help="allow verifying n > 33")
    q.add_argument("--budget", type=int, default=None)
    q.add_argument("--l0", nargs=3, type=int, default=None, metavar="C")
    out_opt(q)
    q.set_defaults(func=cmd_hard)

    q = sub.add_parser("bench", help="touch-count sweep, CSV out")
    q.add_argument("--case", choices=sorted(BENCH_CASES), default="Case3")
    q.add_argument("--sizes", nargs="*", type=int, default=[], help="values of s")
    q.add_argument("--trials", type=int, default=1)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--universe", type=int, default=10)
    q.add_argument("--lists", choices=("random", "stripes"), default="random")
    q.add_argument("--jobs", type=int, default=1)
    q.add_argument("--csv", default=None, help="CSV path (default stdout)")
    q.add_argument("--plot", default=None, help="PNG path for the touch-count figure")
    q.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    log.debug("%s", config_from_args(args))
    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except InternalConsistencyError as e:
        print(f"internal consistency failure: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
