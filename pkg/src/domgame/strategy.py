"""Dominator's potential-based strategy, Staller policies and the match runner.

Active phase: at every stable checkpoint Dominator searches all contingent
plans of at most three moves (D, S, D) for one that provably reaches the
next stable state, with Staller branching exhaustive.  When no such plan
exists the white vertices must sit in isolated white five-cycles or in
six-cycle configurations; the strategy checks that and switches to the
reactive phase, answering every Staller move inside a configuration by
clearing what is left of it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import kernels
from .graphs import Graph, GraphError, bits
from .solver import DEFAULT_CAP, CapacityError, Mover, solver_for
from .state import (
    Color,
    GameState,
    Ledger,
    MoveError,
    apply_move,
    legal_moves,
    potentials_after,
    white_structure,
)

STEP = 34  # average potential drop per move the active phase maintains


class GameOverError(RuntimeError):
    pass


class Phase(Enum):
    ACTIVE = "active"
    REACTIVE = "reactive"


@dataclass(frozen=True)
class Plan:
    """A contingent Dominator plan.

    ``responses`` maps every legal Staller reply to ``first`` onto either a
    second Dominator vertex or ``None`` (the position after the reply is
    already stable).  ``guarantee`` is the smallest cumulative potential
    drop over all branch ends.
    """

    first: int
    responses: dict[int, int | None]
    guarantee: int
    length: int


def branch_requirement(depth: int, over: bool, surplus: int) -> int:
    """Cumulative drop a branch ending after ``depth`` moves must reach."""
    if over or depth % 2 == 0:
        return STEP * depth - surplus
    # Staller's forced next move drops at least 20 more
    return STEP * (depth + 1) - 20 - surplus


def find_stable_plan(s: GameState, surplus: int) -> Plan | None:
    """Best plan of length <= 3 reaching the next stable state, or None.

    Preference: shortest length, then largest guarantee, then smallest
    first vertex.  Second moves are the largest-drop vertex meeting the
    branch requirement (lowest index on ties).
    """
    g = s.graph
    closed = g.closed_matrix
    pi0 = s.pi
    dom = s.dominated_array
    after1 = potentials_after(s)
    firsts = np.flatnonzero(after1 >= 0)

    best = None
    for v in firsts:
        drop = pi0 - after1[v]
        if drop >= branch_requirement(1, after1[v] == 0, surplus) and (best is None or drop > best[1]):
            best = (int(v), int(drop))
    if best is not None:
        v = best[0]
        replies = _replies(g, s.dominated | g.closed(v))
        return Plan(v, {w: None for w in replies}, best[1], 1)

    need2 = branch_requirement(2, False, surplus)
    expanded = []
    best2 = None
    for v in firsts:
        if after1[v] == 0:
            continue
        cdom = dom | closed[v]
        after2 = kernels.potentials_after(g, cdom)
        replies = np.flatnonzero(after2 >= 0)
        deltas = pi0 - after2[replies]
        expanded.append((int(v), cdom, after2, replies, deltas))
        low = int(deltas.min())
        if low >= need2 and (best2 is None or low > best2.guarantee):
            best2 = Plan(int(v), {int(w): None for w in replies}, low, 2)
    if best2 is not None:
        return best2

    best3 = None
    for v, cdom, after2, replies, deltas in expanded:
        stable = deltas >= need2
        floor = int(deltas[stable].min()) if stable.any() else None
        if best3 is not None and floor is not None and floor <= best3.guarantee:
            continue
        responses: dict[int, int | None] = {int(w): None for w in replies[stable]}
        open_replies = np.flatnonzero(~stable)
        open_replies = open_replies[np.argsort(deltas[open_replies], kind="stable")]
        ok = True
        for i in open_replies:
            w = int(replies[i])
            if after2[w] == 0:
                ok = False
                break
            after3 = kernels.potentials_after(g, cdom | closed[w])
            seconds = np.flatnonzero(after3 >= 0)
            d3 = pi0 - after3[seconds]
            need3 = np.where(after3[seconds] == 0, branch_requirement(3, True, surplus),
                             branch_requirement(3, False, surplus))
            good = d3 >= need3
            if not good.any():
                ok = False
                break
            masked = np.where(good, d3, -1)
            pick = int(np.argmax(masked))
            responses[w] = int(seconds[pick])
            floor = int(masked[pick]) if floor is None else min(floor, int(masked[pick]))
            if best3 is not None and floor <= best3.guarantee:
                ok = False
                break
        if ok:
            best3 = Plan(v, dict(sorted(responses.items())), floor, 3)
    return best3


def _replies(g: Graph, dominated: int) -> list[int]:
    undominated = g.full_mask & ~dominated
    return [w for w in range(g.n) if g.closed(w) & undominated]


def check_plan(s: GameState, surplus: int, plan: Plan) -> bool:
    """Replay ``plan`` against every Staller reply, including the forced
    Staller move after odd-length branches, using fresh states.  Every
    branch end must also reach ``plan.guarantee``."""
    pi0 = s.pi
    a = apply_move(s, plan.first)

    def settled(state: GameState, depth: int) -> bool:
        drop = pi0 - state.pi
        if drop < plan.guarantee:
            return False
        if state.is_over or depth % 2 == 0:
            return drop >= STEP * depth - surplus
        return all(pi0 - apply_move(state, z).pi >= STEP * (depth + 1) - surplus
                   for z in legal_moves(state))

    if a.is_over:
        return not plan.responses and settled(a, 1)
    replies = legal_moves(a)
    if sorted(plan.responses) != replies:
        return False
    if plan.length == 1:
        return all(r is None for r in plan.responses.values()) and settled(a, 1)
    for w in replies:
        b = apply_move(a, w)
        second = plan.responses[w]
        if second is None:
            if not settled(b, 2):
                return False
        else:
            if plan.length != 3 or not b.is_legal(second) or not settled(apply_move(b, second), 3):
                return False
    return True


# ---------------------------------------------------------------------------
# terminal structure


@dataclass(frozen=True)
class Config:
    kind: str  # "white-C5" | "six-cycle"
    vertices: tuple[int, ...]  # six-cycle order: u, x, y, v, y', x'

    @property
    def whites(self) -> frozenset[int]:
        if self.kind == "white-C5":
            return frozenset(self.vertices)
        u, x, y, v, y2, x2 = self.vertices
        return frozenset((x, y, y2, x2))


@dataclass(frozen=True)
class TerminalReport:
    configs: tuple[Config, ...]
    violations: tuple[tuple[str, tuple[int, ...]], ...]

    @property
    def k(self) -> int:
        return len(self.configs)

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_terminal_structure(s: GameState) -> TerminalReport:
    """Check every structural property of a position where no stable plan exists."""
    g = s.graph
    col = s.colors.colors
    white = {v for v in range(g.n) if col[v] == Color.WHITE}
    wn = {v: [u for u in g.neighbors(v) if u in white] for v in range(g.n)}
    ws = white_structure(s)
    in_h = {v for c in ws.components for v in c.vertices}
    single = {v for v in white if not wn[v]}
    pair_of = {}
    for v in white:
        if len(wn[v]) == 1 and len(wn[wn[v][0]]) == 1:
            pair_of[v] = wn[v][0]
    viol: list[tuple[str, tuple[int, ...]]] = []

    def fail(name, *witness):
        viol.append((name, tuple(witness)))

    for v in range(g.n):
        if col[v] == Color.WHITE and len(wn[v]) >= 3:
            fail("white-three-white", v)
        if col[v] == Color.BLUE and len(wn[v]) >= 4:
            fail("blue-four-white", v)

    for x in sorted(in_h):
        for y in wn[x]:
            for z in wn[y]:
                if z != x and set(wn[x]) <= {y, z}:
                    fail("dangling-path", x, y, z)

    cycles5 = set()
    for comp in ws.of_kind("cycle"):
        L = comp.length
        if L >= 9:
            fail("long-cycle", *comp.vertices)
        elif L in (7, 8):
            fail("cycle-7-8", *comp.vertices)
        elif L == 6:
            fail("cycle-6", *comp.vertices)
        elif L == 5:
            fail("cycle-5", *comp.vertices)
            cycles5.update(comp.vertices)
        elif L == 4:
            fail("cycle-4", *comp.vertices)

    for u in range(g.n):
        if col[u] != Color.BLUE:
            continue
        on5 = [x for x in wn[u] if x in cycles5]
        if len(on5) >= 2:
            fail("c5-shared-blue", u, *on5)
        if len(wn[u]) >= 3:
            fail("blue-three-white", u, *wn[u])
        doubles = [x for x in wn[u] if x in pair_of]
        for x in doubles:
            if pair_of[x] in wn[u] and x < pair_of[x]:
                fail("blue-both-doubles", u, x, pair_of[x])

    for x, y in pair_of.items():
        nbr_cols = [col[w] for w in g.neighbors(x)]
        if Color.ORANGE in nbr_cols:
            fail("double-orange", x)
        if nbr_cols.count(Color.BLUE) >= 2:
            fail("double-two-blues", x)
    for x in sorted(single):
        nbr_cols = [col[w] for w in g.neighbors(x)]
        if Color.BLUE in nbr_cols and Color.ORANGE in nbr_cols:
            fail("single-blue-orange", x)
        if Color.BLUE in nbr_cols:
            fail("single-blue", x)
    for v in range(g.n):
        sgl = [x for x in wn[v] if x in single]
        if len(sgl) >= 2:
            fail("two-singles", v, *sgl)
    for v in range(g.n):
        if col[v] == Color.ORANGE:
            fail("orange-exists", v)
    for x in sorted(single):
        fail("single-exists", x)
    for cyc in ws.excluded:
        if len(cyc) == 4:
            fail("isolated-c4", *cyc)

    configs = [Config("white-C5", cyc) for cyc in ws.excluded if len(cyc) == 5]
    seen = set()
    for x in sorted(pair_of):
        if x in seen:
            continue
        six = _six_cycle(g, col, wn, pair_of, x)
        if six is None:
            fail("pair-no-six-cycle", x, pair_of[x])
            continue
        seen.update(Config("six-cycle", six).whites)
        configs.append(Config("six-cycle", six))
    configs.sort(key=lambda c: min(c.vertices))
    if not viol:
        covered = [v for c in configs for v in c.whites]
        if sorted(covered) != sorted(white) or len(set(covered)) != len(covered):
            fail("uncovered-white", *sorted(set(white) - set(covered)))
    return TerminalReport(tuple(configs), tuple(viol))


def _six_cycle(g, col, wn, pair_of, x):
    y = pair_of[x]

    def anchor(a):
        others = [w for w in g.neighbors(a) if w != pair_of[a]]
        if len(others) != 1 or col[others[0]] != Color.BLUE:
            return None
        return others[0]

    u, v = anchor(x), anchor(y)
    if u is None or v is None or u == v:
        return None
    if len(wn[u]) != 2 or len(wn[v]) != 2:
        return None
    x2 = next(w for w in wn[u] if w != x)
    y2 = next(w for w in wn[v] if w != y)
    if x2 == y or y2 == x or x2 == y2 or pair_of.get(x2) != y2:
        return None
    if anchor(x2) != u or anchor(y2) != v:
        return None
    return (u, x, y, v, y2, x2)


# ---------------------------------------------------------------------------
# session and Dominator policy


@dataclass
class Session:
    state: GameState
    phase: Phase = Phase.ACTIVE
    terminal: TerminalReport | None = None
    pending: Plan | None = None
    t1: int | None = None
    checkpoints: list[tuple[int, int]] = field(default_factory=list)
    diagnostics: list[str] = field(default_factory=list)
    detail: str = ""

    @classmethod
    def start(cls, g: Graph) -> "Session":
        return cls(GameState.initial(g))

    @property
    def ledger(self) -> Ledger:
        return Ledger.of(self.state, self.t1)

    @property
    def k(self) -> int | None:
        if self.phase is Phase.REACTIVE:
            return self.terminal.k
        return 0 if self.t1 is not None else None

    def advance(self, v: int) -> None:
        self.state = apply_move(self.state, v)

    def finish(self) -> None:
        """Close the books when the game ended during the active phase."""
        if self.phase is Phase.ACTIVE and self.state.is_over and self.t1 is None and not self.diagnostics:
            self.t1 = self.state.t
            self.checkpoints.append((self.state.t, self.ledger.surplus))


def greedy_move(s: GameState) -> int:
    after = potentials_after(s)
    legal = np.flatnonzero(after >= 0)
    return int(legal[np.argmin(after[legal])])


def dominator_policy(sess: Session) -> int:
    s = sess.state
    if s.is_over:
        raise GameOverError("no legal moves")
    if sess.phase is Phase.REACTIVE:
        return reactive_move(sess)
    plan, sess.pending = sess.pending, None
    if plan is not None:
        if s.t < 2 or s.played[-2] != plan.first:
            raise AssertionError("pending plan out of sync with the game")
        second = plan.responses.get(s.played[-1])
        if second is not None:
            sess.detail = "plan-second"
            return second
    surplus = Ledger.of(s).surplus
    sess.checkpoints.append((s.t, surplus))
    if surplus < 0:
        sess.diagnostics.append(f"t={s.t}: negative surplus {surplus} at checkpoint")
    plan = find_stable_plan(s, surplus)
    if plan is not None:
        sess.pending = plan
        sess.detail = f"plan-start len={plan.length} guarantee={plan.guarantee}"
        return plan.first
    report = verify_terminal_structure(s)
    sess.terminal = report
    if not report.ok:
        sess.diagnostics.append(f"t={s.t}: terminal structure violated: {list(report.violations)}")
        sess.detail = "fallback-greedy"
        return greedy_move(s)
    sess.t1 = s.t
    sess.phase = Phase.REACTIVE
    return reactive_move(sess)


def reactive_move(sess: Session) -> int:
    s = sess.state
    if sess.phase is not Phase.REACTIVE or sess.terminal is None:
        raise AssertionError("reactive move requested outside the reactive phase")
    if s.is_over:
        raise GameOverError("no legal moves")
    g = s.graph
    whites = set(bits(s.whites))
    last = s.played[-1] if s.t > sess.t1 else None
    touched = []
    fresh = []
    for cfg in sess.terminal.configs:
        remaining = cfg.whites & whites
        if not remaining:
            continue
        if remaining == cfg.whites:
            fresh.append(cfg)
        elif last is not None and last in cfg.vertices:
            touched.insert(0, (cfg, remaining))
        else:
            touched.append((cfg, remaining))
    if touched:
        cfg, remaining = touched[0]
        need = sum(1 << w for w in remaining)
        for v in range(g.n):
            if g.closed(v) & need == need:
                sess.detail = f"reactive-clear {cfg.kind}@{min(cfg.vertices)}"
                return v
        raise AssertionError(f"no clearing vertex for {cfg}: whites {sorted(remaining)}")
    if not fresh:
        raise AssertionError("white vertices outside every configuration")
    cfg = fresh[0]
    sess.detail = f"reactive-open {cfg.kind}@{min(cfg.vertices)}"
    return cfg.vertices[0]


# ---------------------------------------------------------------------------
# policies


class Policy:
    """Chooses moves for one side; ``detail`` and ``phase`` describe the last choice."""

    name = "policy"
    detail = ""
    phase = Phase.ACTIVE

    def start(self, g: Graph) -> None:
        pass

    def choose(self, s: GameState) -> int:
        raise NotImplementedError

    def observe(self, s: GameState) -> None:
        """Called after every move with the new position."""


class PotentialDominator(Policy):
    name = "paper"

    def __init__(self):
        self.session: Session | None = None

    def start(self, g: Graph) -> None:
        self.session = Session.start(g)

    def choose(self, s: GameState) -> int:
        self.session.state = s
        v = dominator_policy(self.session)
        self.detail = self.session.detail
        self.phase = self.session.phase
        return v

    def observe(self, s: GameState) -> None:
        self.session.state = s


class GreedyPolicy(Policy):
    name = "greedy"

    def choose(self, s: GameState) -> int:
        return greedy_move(s)


class OptimalPolicy(Policy):
    def __init__(self, mover: Mover, cap: int = DEFAULT_CAP):
        self.mover = mover
        self.cap = cap
        self.name = "optimal"

    def start(self, g: Graph) -> None:
        if g.n > self.cap:
            raise CapacityError(f"optimal play needs n <= {self.cap}, got {g.n}")
        self.solver = solver_for(g, self.cap)

    def choose(self, s: GameState) -> int:
        return self.solver.best_move(s.dominated, self.mover)


class RandomStaller(Policy):
    def __init__(self, seed: int):
        self.seed = seed
        self.name = f"random:{seed}"

    def choose(self, s: GameState) -> int:
        rng = random.Random(f"{self.seed}:{s.dominated}:{s.t}")
        return rng.choice(legal_moves(s))


class StingyStaller(Policy):
    name = "stingy"

    def choose(self, s: GameState) -> int:
        after = potentials_after(s)
        legal = np.flatnonzero(after >= 0)
        return int(legal[np.argmax(after[legal])])


def staller_policy(kind: str, s: GameState, cap: int = DEFAULT_CAP) -> int:
    """One Staller move by policy name: optimal, stingy or random:<seed>."""
    policy = make_staller(kind, cap)
    policy.start(s.graph)
    return policy.choose(s)


def make_staller(kind: str, cap: int = DEFAULT_CAP) -> Policy:
    if kind == "optimal":
        return OptimalPolicy(Mover.S, cap)
    if kind == "stingy":
        return StingyStaller()
    if kind.startswith("random"):
        _, _, seed = kind.partition(":")
        return RandomStaller(int(seed or 0))
    if kind == "human":
        from .cli import HumanStaller

        return HumanStaller()
    raise ValueError(f"unknown staller policy {kind!r}")


def make_dominator(kind: str, cap: int = DEFAULT_CAP) -> Policy:
    if kind == "paper":
        return PotentialDominator()
    if kind == "optimal":
        return OptimalPolicy(Mover.D, cap)
    if kind == "greedy":
        return GreedyPolicy()
    raise ValueError(f"unknown dominator policy {kind!r}")


# ---------------------------------------------------------------------------
# matches


def check_main_bound(n: int, total: int) -> bool:
    return 17 * total <= 10 * n + 1


class IllegalPolicyMove(MoveError):
    def __init__(self, player: str, policy: str, vertex, t: int):
        self.player, self.policy, self.vertex, self.t = player, policy, vertex, t
        super().__init__(f"move {t}: {player} policy {policy!r} chose illegal vertex {vertex!r}")


def run_match(g: Graph, dom: Policy, stall: Policy):
    """Play one game, Dominator first, and return its MatchTrace."""
    from .trace import MatchTrace, MoveRecord

    if any(r == 0 for r in g.rows):
        raise GraphError("domination game undefined with isolated vertices")
    dom.start(g)
    stall.start(g)
    s = GameState.initial(g)
    moves = []
    while not s.is_over:
        player, policy = ("D", dom) if s.t % 2 == 0 else ("S", stall)
        v = policy.choose(s)
        if not isinstance(v, (int, np.integer)) or not s.is_legal(int(v)):
            raise IllegalPolicyMove(player, policy.name, v, s.t + 1)
        v = int(v)
        nxt = apply_move(s, v)
        detail = policy.detail if player == "D" else ""
        moves.append(MoveRecord(nxt.t, player, v, nxt.pi, s.pi - nxt.pi, dom.phase.value, detail))
        s = nxt
        dom.observe(s)
        stall.observe(s)
    t1 = k = None
    checkpoints: list[int] = []
    diagnostics: list[str] = []
    if isinstance(dom, PotentialDominator):
        sess = dom.session
        sess.finish()
        t1, k = sess.t1, sess.k
        checkpoints = [t for t, _ in sess.checkpoints]
        diagnostics = list(sess.diagnostics)
    return MatchTrace(
        n=g.n,
        m=g.m,
        moves=moves,
        total=len(moves),
        bound_ok=check_main_bound(g.n, len(moves)),
        t1=t1,
        k=k,
        dominator=dom.name,
        staller=stall.name,
        checkpoints=checkpoints,
        diagnostics=diagnostics,
        edges=[list(e) for e in g.edges()],
    )


__all__ = [
    "Plan", "Config", "TerminalReport", "Session", "Phase", "find_stable_plan", "check_plan",
    "verify_terminal_structure", "dominator_policy", "reactive_move", "staller_policy",
    "run_match", "check_main_bound", "make_dominator", "make_staller", "GameOverError",
    "IllegalPolicyMove", "white_structure",
]
