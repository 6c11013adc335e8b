"""Command-line entry point: ``domgame gen|solve|play|verify|audit``.

Exit codes: 0 success, 1 failed check or bound, 2 usage or input error,
3 solver capacity exceeded, 4 illegal move by a policy, 5 audit mismatch.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import corpus as corpus_mod
from .graphs import (
    GraphError,
    complete,
    cycle,
    disjoint_copies,
    emit_edge_list,
    has_hamiltonian_path,
    legs,
    min_degree,
    parse_edge_list,
    path,
    random_min_deg2,
    theta,
)
from .solver import DEFAULT_CAP, CapacityError, Mover, solve_report, solver_for
from .state import GameState, legal_moves, potentials_after
from .strategy import IllegalPolicyMove, Policy, check_main_bound, make_dominator, make_staller, run_match
from .trace import MatchTrace, audit_trace, moves_per_component
from .transversal import cnh, emit_hypergraph, parse_hypergraph, tau_g

EXIT_FAIL, EXIT_USAGE, EXIT_CAPACITY, EXIT_ILLEGAL, EXIT_AUDIT = 1, 2, 3, 4, 5
RANDOM_STALLERS = 5


class UsageError(Exception):
    pass


class HumanStaller(Policy):
    name = "human"

    def __init__(self, stdin=None, stdout=None):
        self.stdin = stdin or sys.stdin
        self.stdout = stdout or sys.stdout

    def choose(self, s: GameState) -> int:
        colors = s.colors
        after = potentials_after(s)
        moves = legal_moves(s)
        print(f"t={s.t}  pi={s.pi}", file=self.stdout)
        for v in moves:
            print(f"  {v:4d}  {colors[v].name.lower():7s} drop={s.pi - after[v]}", file=self.stdout)
        while True:
            print("your move> ", end="", file=self.stdout, flush=True)
            line = self.stdin.readline()
            if not line:
                raise EOFError("no move given")
            try:
                v = int(line.strip())
            except ValueError:
                print("enter a vertex index", file=self.stdout)
                continue
            if v in moves:
                return v
            print(f"{v} is not a legal move", file=self.stdout)


def _write(data: bytes, out: str | None) -> None:
    if out and out != "-":
        Path(out).write_bytes(data)
    else:
        sys.stdout.write(data.decode())


def _read_graph(path_str: str):
    return parse_edge_list(Path(path_str).read_bytes())


# ---------------------------------------------------------------------------
# gen


def cmd_gen(args) -> int:
    if args.corpus:
        entries = corpus_mod.standard_corpus()
        if args.large:
            entries += corpus_mod.large_corpus()
        paths = corpus_mod.write_corpus(Path(args.corpus), entries)
        print(f"wrote {len(paths)} graphs to {args.corpus}")
        return 0
    if not args.family:
        raise UsageError("gen needs a family or --corpus")
    fam, p = args.family, args.params

    def ints(count):
        if len(p) != count:
            raise UsageError(f"{fam} takes {count} integer parameter(s)")
        try:
            return [int(x) for x in p]
        except ValueError:
            raise UsageError(f"{fam} parameters must be integers") from None

    if fam == "cycle":
        g = cycle(*ints(1))
    elif fam == "path":
        g = path(*ints(1))
    elif fam == "complete":
        g = complete(*ints(1))
    elif fam == "theta":
        g = theta(*ints(3))
    elif fam in ("random-mindeg2", "random_min_deg2"):
        n, extra = ints(2)
        g = random_min_deg2(n, extra, args.seed)
    elif fam in ("legs", "copies", "cnh"):
        if not args.base:
            raise UsageError(f"{fam} needs --base FILE")
        base = _read_graph(args.base)
        if fam == "legs":
            ints(0)
            g = legs(base)
        elif fam == "copies":
            g = disjoint_copies(base, *ints(1))
        else:
            ints(0)
            _write(emit_hypergraph(cnh(base)), args.output)
            return 0
    else:
        raise UsageError(f"unknown family {fam!r}")
    _write(emit_edge_list(g), args.output)
    return 0


# ---------------------------------------------------------------------------
# solve


def cmd_solve(args) -> int:
    data = Path(args.file).read_bytes()
    if args.hypergraph:
        h = parse_hypergraph(data)
        start = time.perf_counter()
        report = {
            "n": h.n,
            "k": h.k,
            "tau_g": tau_g(h, Mover.D, args.cap),
            "tau_g_prime": tau_g(h, Mover.S, args.cap),
            "millis": round((time.perf_counter() - start) * 1000, 3),
        }
    else:
        report = solve_report(parse_edge_list(data), args.cap)
    _write((json.dumps(report) + "\n").encode(), args.output)
    return 0


# ---------------------------------------------------------------------------
# play


def cmd_play(args) -> int:
    g = _read_graph(args.file)
    dom = make_dominator(args.dominator, args.cap)
    staller_kind = args.staller
    if staller_kind == "random":
        staller_kind = f"random:{args.seed}"
    stall = make_staller(staller_kind, args.cap)
    trace = run_match(g, dom, stall)
    text = trace.to_json() + "\n"
    if args.output:
        Path(args.output).write_text(text)
    if args.json or not args.output:
        sys.stdout.write(text)
    else:
        print(f"total={trace.total} t1={trace.t1} k={trace.k} bound_ok={trace.bound_ok} "
              f"(17*{trace.total}={17 * trace.total} vs 10n+1={10 * g.n + 1})")
        counts = moves_per_component(trace, g)
        if len(counts) > 1:
            print("moves per component: " + " ".join(map(str, counts)))
    for d in trace.diagnostics:
        print(f"diagnostic: {d}", file=sys.stderr)
    if g.n and min_degree(g) >= 2 and not trace.bound_ok:
        return EXIT_FAIL
    return 0


# ---------------------------------------------------------------------------
# verify


def verify_entry(entry: corpus_mod.Entry, cap: int = DEFAULT_CAP, tau_limit: int = 14) -> dict:
    """All checks for one corpus graph; returns a report row."""
    g = entry.graph
    delta = min_degree(g) if g.n else 0
    row = {"name": entry.name, "n": g.n, "m": g.m, "min_degree": delta, "gamma_g": None,
           "gamma_g_prime": None, "strategy_total": {}, "bound_ok": True, "failures": []}
    fails = row["failures"]
    if delta == 0:
        fails.append("isolated vertex")
        row["bound_ok"] = False
        row["assertions_passed"] = False
        return row
    if g.n <= cap:
        solver = solver_for(g, cap)
        gd, gs = solver.value(0, Mover.D), solver.value(0, Mover.S)
        row["gamma_g"], row["gamma_g_prime"] = gd, gs
        if entry.expected_gamma_g is not None and gd != entry.expected_gamma_g:
            fails.append(f"gamma_g {gd} != expected {entry.expected_gamma_g}")
        if delta >= 2 and not check_main_bound(g.n, gd):
            fails.append(f"17*gamma_g={17 * gd} > 10n+1={10 * g.n + 1}")
        if has_hamiltonian_path(g):
            row["hamiltonian_path"] = True
            if gd > -(-10 * g.n // 17):
                fails.append(f"gamma_g {gd} > ceil(10n/17) on a Hamiltonian-path graph")
        if g.n <= tau_limit:
            h = cnh(g)
            row["tau_g"], row["tau_g_prime"] = tau_g(h, Mover.D, cap), tau_g(h, Mover.S, cap)
            if (row["tau_g"], row["tau_g_prime"]) != (gd, gs):
                fails.append("transversal value differs from game domination value")
    stallers = (["optimal"] if g.n <= cap else []) + ["stingy"] + [f"random:{i}" for i in range(RANDOM_STALLERS)]
    for kind in stallers:
        trace = run_match(g, make_dominator("paper"), make_staller(kind, cap))
        row["strategy_total"][kind] = trace.total
        audit = audit_trace(trace, g)
        if delta >= 2:
            if not trace.bound_ok:
                row["bound_ok"] = False
                fails.append(f"dominator vs {kind}: {trace.total} moves breaks the bound")
            if trace.diagnostics:
                fails.append(f"dominator vs {kind}: {trace.diagnostics[0]}")
            if not audit.ok:
                fails.append(f"dominator vs {kind}: audit {audit.mismatches[0]}")
    row["assertions_passed"] = not fails
    return row


def _verify_job(job):
    entry, cap = job
    return verify_entry(entry, cap)


def cmd_verify(args) -> int:
    entries = corpus_mod.read_corpus(Path(args.directory))
    if not entries:
        raise UsageError(f"no *.g files in {args.directory}")
    jobs = [(e, args.cap) for e in entries]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            rows = list(pool.map(_verify_job, jobs))
    else:
        rows = [_verify_job(j) for j in jobs]
    rows.sort(key=lambda r: r["name"])
    failed = [r for r in rows if not r["assertions_passed"]]
    report = {"rows": rows, "summary": {"graphs": len(rows), "passed": len(rows) - len(failed),
                                        "failed": len(failed)}}
    if args.csv:
        Path(args.csv).write_text(_rows_csv(rows))
    if args.json:
        _write((json.dumps(report, indent=1) + "\n").encode(), args.output)
    else:
        for r in rows:
            totals = " ".join(f"{k}={v}" for k, v in r["strategy_total"].items())
            status = "ok" if r["assertions_passed"] else "FAIL"
            print(f"{status:4s} {r['name']:24s} n={r['n']:3d} gamma_g={r['gamma_g']} {totals}")
            for f in r["failures"]:
                print(f"     - {f}")
        print(f"{report['summary']['passed']}/{len(rows)} graphs passed")
    return EXIT_FAIL if failed else 0


def _rows_csv(rows) -> str:
    buf = io.StringIO()
    stallers = sorted({k for r in rows for k in r["strategy_total"]})
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["name", "n", "m", "min_degree", "gamma_g", "gamma_g_prime", "bound_ok", "assertions_passed"]
               + [f"total_{s}" for s in stallers])
    for r in rows:
        w.writerow([r["name"], r["n"], r["m"], r["min_degree"], r["gamma_g"], r["gamma_g_prime"],
                    r["bound_ok"], r["assertions_passed"]] + [r["strategy_total"].get(s, "") for s in stallers])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# audit


def cmd_audit(args) -> int:
    trace = MatchTrace.from_json(Path(args.trace).read_text())
    g = _read_graph(args.graph) if args.graph else None
    report = audit_trace(trace, g)
    summary = {
        "ok": report.ok,
        "mismatches": report.mismatches,
        "first_divergent": report.first_divergent,
        "t1": report.t1,
        "k": report.k,
        "reactive_length": report.reactive_length,
    }
    if args.json:
        print(json.dumps(summary))
    elif report.ok:
        extra = ""
        if report.t1 is not None:
            extra = f", t1={report.t1}, k={report.k}, reactive length {report.reactive_length} <= {2 * report.k + 1}"
        print(f"ok, 0 mismatches{extra}")
    else:
        print(f"{len(report.mismatches)} mismatches, first divergent move t={report.first_divergent}")
        for msg in report.mismatches:
            print(f"  {msg}")
    return 0 if report.ok else EXIT_AUDIT


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="solver size cap (vertices)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--json", action="store_true", help="print JSON")
    common.add_argument("--csv", metavar="FILE", help="also write a CSV table")
    common.add_argument("-o", "--output", metavar="FILE")

    parser = argparse.ArgumentParser(prog="domgame", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="generate graph files")
    p.add_argument("family", nargs="?",
                   help="cycle N | path N | complete N | theta A B C | random-mindeg2 N EXTRA | "
                        "legs | copies K | cnh")
    p.add_argument("params", nargs="*")
    p.add_argument("--base", metavar="FILE", help="base graph for legs/copies/cnh")
    p.add_argument("--corpus", metavar="DIR", help="write the standard acceptance corpus")
    p.add_argument("--large", action="store_true", help="with --corpus: add random graphs up to n=150")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", parents=[common], help="exact game values")
    p.add_argument("file")
    p.add_argument("--hypergraph", action="store_true", help="input is a hypergraph; report tau_g")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("play", parents=[common], help="play one match and emit its trace")
    p.add_argument("file")
    p.add_argument("--dominator", default="paper", choices=["paper", "optimal", "greedy"])
    p.add_argument("--staller", default="stingy", help="optimal | random[:SEED] | stingy | human")
    p.set_defaults(func=cmd_play)

    p = sub.add_parser("verify", parents=[common], help="check a corpus directory")
    p.add_argument("directory")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("audit", parents=[common], help="replay and check a match trace")
    p.add_argument("trace")
    p.add_argument("--graph", metavar="FILE", help="graph file (default: edges embedded in the trace)")
    p.set_defaults(func=cmd_audit)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except IllegalPolicyMove as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ILLEGAL
    except (GraphError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
