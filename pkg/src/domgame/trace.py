"""Match traces: JSON serialization and independent replay audits."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

from .graphs import Graph, components
from .state import GameState, MoveError, apply_move, compute_colors, potential


@dataclass
class MoveRecord:
    t: int
    player: str
    vertex: int
    pi_after: int
    drop: int
    phase: str
    detail: str = ""


@dataclass
class MatchTrace:
    n: int
    m: int
    moves: list[MoveRecord]
    total: int
    bound_ok: bool
    t1: int | None = None
    k: int | None = None
    dominator: str = ""
    staller: str = ""
    checkpoints: list[int] = field(default_factory=list)
    diagnostics: list[str] = field(default_factory=list)
    edges: list[list[int]] = field(default_factory=list)

    def graph(self) -> Graph:
        return Graph.from_edges(self.n, [tuple(e) for e in self.edges])

    @property
    def reactive_length(self) -> int | None:
        if self.t1 is None:
            return None
        return self.total - self.t1

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)

    @classmethod
    def from_dict(cls, data: dict) -> "MatchTrace":
        data = dict(data)
        data["moves"] = [MoveRecord(**mv) for mv in data["moves"]]
        return cls(**data)

    @classmethod
    def from_json(cls, text: str) -> "MatchTrace":
        return cls.from_dict(json.loads(text))


@dataclass
class AuditReport:
    mismatches: list[str]
    first_divergent: int | None
    t1: int | None
    k: int | None
    reactive_length: int | None

    @property
    def ok(self) -> bool:
        return not self.mismatches


def audit_trace(trace: MatchTrace, g: Graph | None = None) -> AuditReport:
    """Replay ``trace`` move by move, recomputing colors and potential from scratch.

    Checks legality, recorded potential and drop, drop >= 20, surplus >= 0
    at every recorded checkpoint, the terminal structure at t1 (for traces of
    the potential strategy), pi(t1) = 100k and the reactive-phase length bound 2k+1.
    """
    from .strategy import verify_terminal_structure

    g = g or trace.graph()
    problems: list[tuple[int, str]] = []
    if (g.n, g.m) != (trace.n, trace.m):
        problems.append((0, f"graph size ({g.n}, {g.m}) differs from trace ({trace.n}, {trace.m})"))
    s = GameState.initial(g)
    pis = {0: 20 * g.n}
    states = {0: s}
    for i, mv in enumerate(trace.moves, start=1):
        if mv.t != i:
            problems.append((i, f"move index {mv.t} out of sequence"))
        expected_player = "D" if i % 2 == 1 else "S"
        if mv.player != expected_player:
            problems.append((i, f"player {mv.player} but {expected_player} was to move"))
        try:
            nxt = apply_move(s, mv.vertex)
        except MoveError as exc:
            problems.append((i, str(exc)))
            break
        pi = potential(compute_colors(g, nxt.dominated))
        if pi != mv.pi_after:
            problems.append((i, f"pi_after {mv.pi_after} but replay gives {pi}"))
        drop = pis[i - 1] - pi
        if drop != mv.drop:
            problems.append((i, f"drop {mv.drop} but replay gives {drop}"))
        if drop < 20:
            problems.append((i, f"drop {drop} < 20"))
        pis[i] = pi
        states[i] = nxt
        s = nxt
    if not s.is_over:
        problems.append((len(trace.moves), "game not over at end of trace"))
    if trace.total != len(trace.moves):
        problems.append((len(trace.moves), f"total {trace.total} != {len(trace.moves)} moves"))
    if trace.bound_ok != (17 * trace.total <= 10 * g.n + 1):
        problems.append((len(trace.moves), "bound_ok flag inconsistent"))

    for mv in trace.moves:
        if mv.player == "D" and mv.detail.startswith("plan-start") and mv.t - 1 not in trace.checkpoints:
            problems.append((mv.t, f"plan started at t={mv.t} without a checkpoint at t={mv.t - 1}"))
    for t in trace.checkpoints:
        if t in pis:
            surplus = 20 * g.n - pis[t] - 34 * t
            if surplus < 0:
                problems.append((t, f"surplus {surplus} < 0 at checkpoint t={t}"))
            if t % 2 and t != len(trace.moves):
                problems.append((t, f"checkpoint at odd t={t} before game end"))
    k = trace.k
    if trace.t1 is not None and trace.t1 in states:
        t1 = trace.t1
        if t1 not in trace.checkpoints:
            problems.append((t1, "t1 is not a recorded checkpoint"))
        report = verify_terminal_structure(states[t1])
        if report.violations:
            problems.append((t1, f"terminal structure violated at t1: {list(report.violations)}"))
        if k is not None and report.k != k:
            problems.append((t1, f"k={k} but terminal structure has {report.k} configurations"))
        if k is not None and pis[t1] != 100 * k:
            problems.append((t1, f"pi(t1)={pis[t1]} != 100k={100 * k}"))
        if k is not None and trace.total - t1 > 2 * k + 1:
            problems.append((trace.total, f"reactive phase {trace.total - t1} moves > 2k+1"))
        for mv in trace.moves:
            want = "active" if mv.t <= t1 else "reactive"
            if mv.phase != want:
                problems.append((mv.t, f"phase {mv.phase} but t1={t1} implies {want}"))
                break
    problems.sort(key=lambda p: p[0])
    return AuditReport(
        mismatches=[f"t={t}: {msg}" for t, msg in problems],
        first_divergent=problems[0][0] if problems else None,
        t1=trace.t1,
        k=k,
        reactive_length=trace.reactive_length,
    )


def moves_per_component(trace: MatchTrace, g: Graph | None = None) -> list[int]:
    """Number of moves played inside each connected component (ordered by smallest vertex)."""
    g = g or trace.graph()
    comps = components(g)
    where = {v: i for i, comp in enumerate(comps) for v in comp}
    counts = [0] * len(comps)
    for mv in trace.moves:
        counts[where[mv.vertex]] += 1
    return counts
