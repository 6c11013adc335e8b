"""Reference implementations used only as test oracles.

Everything here works on plain Python sets straight from the definitions
and shares no code with the package beyond the Graph container.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

WHITE, BLUE, ORANGE, RED = "white", "blue", "orange", "red"
POINTS = {WHITE: 20, BLUE: 10, ORANGE: 7, RED: 0}


def adjacency(g) -> list[set[int]]:
    adj = [set() for _ in range(g.n)]
    for u, v in g.edges():
        adj[u].add(v)
        adj[v].add(u)
    return adj


def closed(adj, v) -> set[int]:
    return adj[v] | {v}


def white_component_sizes(adj, whites: set[int]) -> dict[int, int]:
    size = {}
    seen = set()
    for s in whites:
        if s in seen:
            continue
        comp, stack = {s}, [s]
        while stack:
            x = stack.pop()
            for y in adj[x] & whites:
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        for x in comp:
            size[x] = len(comp)
    return size


def colors(adj, dominated: set[int]) -> list[str]:
    n = len(adj)
    whites = set(range(n)) - dominated
    size = white_component_sizes(adj, whites)
    out = []
    for v in range(n):
        if v in whites:
            out.append(WHITE)
            continue
        wn = adj[v] & whites
        if not wn:
            out.append(RED)
        elif len(wn) == 1 and size[next(iter(wn))] <= 2:
            out.append(ORANGE)
        else:
            out.append(BLUE)
    return out


def potential(adj, dominated: set[int]) -> int:
    return sum(POINTS[c] for c in colors(adj, dominated))


class Game:
    """Memoized reference positions keyed on the frozenset of dominated vertices."""

    def __init__(self, g):
        self.g = g
        self.adj = adjacency(g)
        self.n = g.n
        self.all = frozenset(range(g.n))
        self.pi = lru_cache(maxsize=None)(self._pi)
        self.value = lru_cache(maxsize=None)(self._value)

    def _pi(self, dom: frozenset) -> int:
        return potential(self.adj, set(dom))

    def moves(self, dom: frozenset) -> list[int]:
        return [v for v in range(self.n) if not closed(self.adj, v) <= dom]

    def play(self, dom: frozenset, v: int) -> frozenset:
        return dom | closed(self.adj, v)

    def over(self, dom: frozenset) -> bool:
        return dom == self.all

    def _value(self, dom: frozenset, dominator: bool) -> int:
        if self.over(dom):
            return 0
        vals = [self.value(self.play(dom, v), not dominator) for v in self.moves(dom)]
        return 1 + (min(vals) if dominator else max(vals))


def game_value_naive(g, dominator_first: bool = True) -> int:
    return Game(g).value(frozenset(), dominator_first)


def domination_number(g) -> int:
    adj = adjacency(g)
    everything = set(range(g.n))
    for k in range(1, g.n + 1):
        for cand in combinations(range(g.n), k):
            if set().union(*(closed(adj, v) for v in cand)) == everything:
                return k
    return 0


def hamiltonian_path(g) -> bool:
    """Backtracking search, independent of the bitmask DP in the package."""
    adj = adjacency(g)
    n = g.n
    if n <= 1:
        return True

    def extend(path, used):
        if len(path) == n:
            return True
        return any(extend(path + [y], used | {y}) for y in adj[path[-1]] - used)

    return any(extend([v], {v}) for v in range(n))


# ---------------------------------------------------------------------------
# depth <= 3 contingent plans, by brute force


def _need(depth: int, over: bool, surplus: int) -> int:
    if over:
        return 34 * depth - surplus
    return {1: 48, 2: 68, 3: 116}[depth] - surplus


def plan_exists(game: Game, dom: frozenset, surplus: int) -> bool:
    """Is there a Dominator tree of depth <= 3 whose every leaf meets its target?"""
    pi0 = game.pi(dom)

    def leaf_ok(d: frozenset, depth: int) -> bool:
        return pi0 - game.pi(d) >= _need(depth, game.over(d), surplus)

    for v in game.moves(dom):
        a = game.play(dom, v)
        if leaf_ok(a, 1):
            return True
        if game.over(a):
            continue
        good = True
        for w in game.moves(a):
            b = game.play(a, w)
            if leaf_ok(b, 2):
                continue
            if game.over(b) or not any(leaf_ok(game.play(b, u), 3) for u in game.moves(b)):
                good = False
                break
        if good:
            return True
    return False


def plan_problems(game: Game, dom: frozenset, surplus: int, plan) -> list[str]:
    """Replay a package Plan against every Staller reply; return what fails."""
    pi0 = game.pi(dom)
    out = []

    def drop(d):
        return pi0 - game.pi(d)

    def check_leaf(d, depth, label):
        over = game.over(d)
        if drop(d) < _need(depth, over, surplus):
            out.append(f"{label}: drop {drop(d)} below target")
        if drop(d) < plan.guarantee:
            out.append(f"{label}: drop {drop(d)} below guarantee {plan.guarantee}")
        if not over and depth % 2 == 1:
            # next checkpoint comes after Staller's reply
            for w in game.moves(d):
                nxt = game.play(d, w)
                if drop(nxt) < 34 * (depth + 1) - surplus:
                    out.append(f"{label}+{w}: next checkpoint unstable")

    if plan.first not in game.moves(dom):
        return [f"first move {plan.first} illegal"]
    a = game.play(dom, plan.first)
    if plan.length == 1:
        check_leaf(a, 1, f"{plan.first}")
        return out
    if sorted(plan.responses) != game.moves(a):
        out.append("responses do not cover every Staller reply")
    for w in game.moves(a):
        b = game.play(a, w)
        r = plan.responses.get(w)
        label = f"{plan.first},{w}"
        if r is None:
            check_leaf(b, 2, label)
        elif r not in game.moves(b):
            out.append(f"{label}: second move {r} illegal")
        else:
            check_leaf(game.play(b, r), 3, f"{label},{r}")
    return out
