"""Acceptance criteria, one test per criterion.

Each test appends a PASS/FAIL line to the summary printed at the end of
the pytest run (see conftest.py) and then asserts.
"""

import copy
import math
import os
import random
import time
from pathlib import Path

from hypothesis import given, settings
from hypothesis import strategies as st

from domgame.corpus import standard_corpus
from domgame.graphs import (
    Graph,
    complete,
    cycle,
    disjoint_copies,
    has_hamiltonian_path,
    legs,
    min_degree,
    parse_edge_list,
    path,
    random_min_deg2,
)
from domgame.solver import Mover, Solver, game_value
from domgame.state import GameState, apply_move, legal_moves
from domgame.strategy import (
    PotentialDominator,
    Session,
    dominator_policy,
    find_stable_plan,
    make_dominator,
    make_staller,
    run_match,
    verify_terminal_structure,
)
from domgame.trace import moves_per_component
from domgame.transversal import cnh, tau_g

from conftest import ACCEPTANCE_LINES, min_deg2_graphs, sparse_min_deg2_graphs
import oracle

CORPUS = standard_corpus()
RANDOM_STALLERS = [f"random:{i}" for i in range(5)]


def record(number, title, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}"
    if detail:
        line += f" ({detail})"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def sparse_random_graph(n, seed):
    """G(n, 2.5/n) repaired to minimum degree two; usually not Hamiltonian."""
    rng = random.Random(seed)
    edges = {(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 2.5 / n}
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    for v in range(n):
        while deg[v] < 2:
            u = rng.randrange(n)
            e = (min(u, v), max(u, v))
            if u != v and e not in edges:
                edges.add(e)
                deg[u] += 1
                deg[v] += 1
    return Graph.from_edges(n, sorted(edges))


def bound(n):
    return (10 * n + 1) // 17


# ---------------------------------------------------------------------------


def test_criterion_1_solver_oracle_values():
    start = time.perf_counter()
    got, want = {}, {}
    for n in (4, 5, 6, 8, 9, 10, 12, 13, 14, 16):
        got[f"C{n}"], want[f"C{n}"] = Solver(cycle(n)).value(0, Mover.D), math.ceil(n / 2)
    got["P5"], want["P5"] = Solver(path(5)).value(0, Mover.D), 3
    got["C5'"], want["C5'"] = Solver(cycle(5)).value(0, Mover.S), 2
    for h in (1, 2, 3):
        got[f"legs{h}"], want[f"legs{h}"] = Solver(legs(complete(h))).value(0, Mover.D), 3 * h
    elapsed = time.perf_counter() - start
    wrong = {k: (got[k], want[k]) for k in got if got[k] != want[k]}
    ok = not wrong and elapsed < 120
    record(1, "solver oracle values", ok, f"{len(got)} values exact, {elapsed:.2f}s" if ok else f"{wrong}, {elapsed:.1f}s")
    assert ok


def test_criterion_2_main_bound_by_solver():
    bad, checked, c5 = [], 0, None
    for e in CORPUS:
        g = e.graph
        if g.n > 20 or min_degree(g) < 2:
            continue
        gd = game_value(g, Mover.D)
        checked += 1
        if 17 * gd > 10 * g.n + 1:
            bad.append((e.name, gd))
        if e.name == "cycle-05":
            c5 = (17 * gd, 10 * g.n + 1)
    ok = not bad and c5 == (51, 51)
    record(2, "17*gamma_g <= 10n+1 on delta>=2 corpus graphs", ok, f"{checked} graphs, C5 {c5[0]} = {c5[1]}" if ok else f"{bad} C5={c5}")
    assert ok


def test_criterion_3_strategy_bound():
    fails, matches = [], 0
    for e in CORPUS:
        g = e.graph
        if g.n > 20 or min_degree(g) < 2:
            continue
        tr = run_match(g, PotentialDominator(), make_staller("optimal"))
        matches += 1
        if tr.total > bound(g.n):
            fails.append((e.name, "optimal", tr.total))
    graphs = []
    for n in (20, 30, 45, 60, 80, 100, 125, 150):
        for extra in (0, n // 10, n // 3):
            graphs.append((f"ham-{n}-{extra}", random_min_deg2(n, extra, n + extra)))
        for seed in range(3):
            graphs.append((f"sparse-{n}-{seed}", sparse_random_graph(n, 1000 * n + seed)))
    for name, g in graphs:
        assert min_degree(g) >= 2
        for kind in ["stingy"] + RANDOM_STALLERS:
            tr = run_match(g, PotentialDominator(), make_staller(kind))
            matches += 1
            if tr.total > bound(g.n) or tr.diagnostics:
                fails.append((name, kind, tr.total, tr.diagnostics[:1]))
    ok = not fails
    record(3, "strategy Dominator within floor((10n+1)/17)", ok, f"{matches} matches, 0 failures" if ok else str(fails[:5]))
    assert ok


# ---------------------------------------------------------------------------
# criterion 4


def phase_problems(g, tr):
    """(a)-(e) for one strategy-Dominator trace, recomputing potentials with the oracle."""
    adj = oracle.adjacency(g)
    s = GameState.initial(g)
    states, pis = [s], [20 * g.n]
    for mv in tr.moves:
        s = apply_move(s, mv.vertex)
        states.append(s)
        dom = {v for v in range(g.n) if s.dominated >> v & 1}
        pis.append(oracle.potential(adj, dom) if g.n <= 40 else s.pi)
    out = []
    if pis[-1] != 0:
        out.append("game not over")
    if any(a - b < 20 for a, b in zip(pis, pis[1:])):
        out.append("(a) drop below 20")
    t1, k = tr.t1, tr.k
    if t1 is None or k is None or tr.diagnostics:
        return out + [f"no phase statistics: {tr.diagnostics}"]
    active_checkpoints = [t for t in tr.checkpoints if t <= t1]
    if 0 not in active_checkpoints or t1 not in active_checkpoints:
        out.append("(b) checkpoints missing")
    if any(20 * g.n - pis[t] - 34 * t < 0 for t in active_checkpoints):
        out.append("(b) negative surplus at a checkpoint")
    if any(t % 2 and t != tr.total for t in active_checkpoints):
        out.append("(b) checkpoint at odd t")
    if t1 < tr.total:
        rep = verify_terminal_structure(states[t1])
        if rep.violations:
            out.append(f"(c) {rep.violations}")
        if rep.k != k:
            out.append("(c) k mismatch")
    elif k != 0:
        out.append("(c) game ended in the active phase with k != 0")
    if tr.total - t1 > 2 * k + 1:
        out.append("(d) reactive phase too long")
    if pis[t1] != 100 * k:
        out.append("(e) pi(t1) != 100k")
    return out


@st.composite
def match_inputs(draw):
    kind = draw(st.sampled_from(["dense", "sparse", "large"]))
    if kind == "dense":
        g = draw(min_deg2_graphs(max_n=14))
    elif kind == "sparse":
        g = draw(sparse_min_deg2_graphs(max_n=20))
    else:
        n = draw(st.integers(15, 150))
        g = (random_min_deg2(n, draw(st.integers(0, n // 3)), draw(st.integers(0, 10**6)))
             if draw(st.booleans()) else sparse_random_graph(n, draw(st.integers(0, 10**6))))
    stallers = ["stingy", f"random:{draw(st.integers(0, 10**6))}"]
    if g.n <= 16:
        stallers.append("optimal")
    return g, draw(st.sampled_from(stallers))


PROPERTY_RESULTS = {"matches": 0, "failures": []}


@settings(max_examples=int(os.environ.get("ACCEPTANCE_EXAMPLES", "300")), deadline=None)
@given(match_inputs())
def _property_phase_structure(inp):
    g, kind = inp
    tr = run_match(g, PotentialDominator(), make_staller(kind))
    problems = phase_problems(g, tr)
    PROPERTY_RESULTS["matches"] += 1
    if problems:
        PROPERTY_RESULTS["failures"].append((g.n, g.edges(), kind, problems))
    assert not problems


def test_criterion_4_phase_structure():
    fixed = 0
    failures = []
    for e in CORPUS:
        g = e.graph
        if min_degree(g) < 2:
            continue
        for kind in (["optimal"] if g.n <= 20 else []) + ["stingy"] + RANDOM_STALLERS:
            tr = run_match(g, PotentialDominator(), make_staller(kind))
            fixed += 1
            problems = phase_problems(g, tr)
            if problems:
                failures.append((e.name, kind, problems))
    error = None
    try:
        _property_phase_structure()
    except AssertionError as exc:  # hypothesis re-raises the shrunk failure
        error = exc
    failures += PROPERTY_RESULTS["failures"][-1:]
    ok = not failures and error is None
    record(4, "phase structure (a)-(e); (b) checked at active-phase checkpoints", ok,
           f"{fixed} corpus matches + {PROPERTY_RESULTS['matches']} generated matches" if ok else str(failures[:3]))
    assert ok


# ---------------------------------------------------------------------------


def test_criterion_5_reduction_identity():
    bad, checked = [], 0
    for e in CORPUS:
        g = e.graph
        if g.n > 14 or min_degree(g) < 1:
            continue
        h = cnh(g)
        pair = (tau_g(h, Mover.D), tau_g(h, Mover.S))
        want = (game_value(g, Mover.D), game_value(g, Mover.S))
        checked += 1
        if pair != want:
            bad.append((e.name, pair, want))
    ok = not bad
    record(5, "tau_g(cnh(G)) = gamma_g(G) for both first movers", ok, f"{checked} graphs" if ok else str(bad))
    assert ok


def reachable_checkpoints(g):
    """Every checkpoint the strategy Dominator reaches against every Staller line of play."""
    seen = {}
    todo = [Session.start(g)]
    visited = set()
    while todo:
        sess = todo.pop()
        s = sess.state
        if s.is_over:
            continue
        pending = sess.pending and (sess.pending.first, tuple(sorted(sess.pending.responses.items())))
        key = (s.dominated, s.t, pending, sess.phase)
        if key in visited:
            continue
        visited.add(key)
        sess = copy.deepcopy(sess)
        before = len(sess.checkpoints)
        v = dominator_policy(sess)
        if len(sess.checkpoints) > before:
            t, surplus = sess.checkpoints[-1]
            seen.setdefault((s.dominated, t, surplus), s)
        sess.advance(v)
        if sess.state.is_over:
            continue
        for w in legal_moves(sess.state):
            child = copy.deepcopy(sess)
            child.advance(w)
            todo.append(child)
    return seen


def test_criterion_6_plan_search_soundness():
    problems, plans, empty = [], 0, 0
    for e in CORPUS:
        g = e.graph
        if g.n > 12 or min_degree(g) < 1:
            continue
        game = oracle.Game(g)
        for (dominated, t, surplus), s in reachable_checkpoints(g).items():
            dom = frozenset(v for v in range(g.n) if dominated >> v & 1)
            plan = find_stable_plan(s, surplus)
            if plan is None:
                empty += 1
                if oracle.plan_exists(game, dom, surplus):
                    problems.append((e.name, t, "brute force finds a plan"))
            else:
                plans += 1
                issues = oracle.plan_problems(game, dom, surplus, plan)
                if issues:
                    problems.append((e.name, t, issues[:2]))
    ok = not problems
    record(6, "plan search soundness and completeness", ok,
           f"{plans} plans replayed, {empty} empty searches confirmed" if ok else str(problems[:3]))
    assert ok


def test_criterion_7_hamiltonian_path_bound():
    bad, checked = [], 0
    for e in CORPUS:
        g = e.graph
        if min_degree(g) < 1 or not has_hamiltonian_path(g):
            continue
        gd = game_value(g, Mover.D)
        checked += 1
        if gd > math.ceil(10 * g.n / 17):
            bad.append((e.name, gd))
    names = {e.name for e in CORPUS}
    ok = not bad and all(f"path-{n:02d}" in names for n in range(2, 17))
    record(7, "gamma_g <= ceil(10n/17) with a Hamiltonian path", ok, f"{checked} graphs" if ok else str(bad))
    assert ok


def test_criterion_8_lower_bound_candidate_harness():
    """Excluded: the extremal 13-vertex graph is not available.

    A candidate can be supplied through DOMGAME_G13 (edge-list file) and a
    copy count through DOMGAME_G13_COPIES; the harness plays optimal
    Dominator against optimal Staller on the copies and reports the per-copy
    move counts without asserting anything about them.
    """
    src = os.environ.get("DOMGAME_G13")
    base = parse_edge_list(Path(src).read_bytes()) if src else random_min_deg2(13, 3, 13)
    g = disjoint_copies(base, int(os.environ.get("DOMGAME_G13_COPIES", "1")))
    tr = run_match(g, make_dominator("optimal"), make_staller("optimal"))
    counts = moves_per_component(tr, g)
    line = (f"[EXCLUDED] criterion 8: 7/13 lower bound not reproducible; candidate "
            f"{'from DOMGAME_G13' if src else 'placeholder'} n={base.n}, per-copy moves {counts}")
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert sum(counts) == tr.total
