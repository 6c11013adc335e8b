"""Exact game values by memoized minimax over dominated sets.

The residual game depends only on the dominated set and on who moves, so
one byte per (dominated set, mover) suffices.  Tables are dense, indexed by
the dominated-set bits, which limits the solver to ``cap`` vertices.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from . import kernels
from .graphs import Graph, GraphError

DEFAULT_CAP = 24


class CapacityError(RuntimeError):
    """Graph too large for the exact solver."""


class NoMoveError(RuntimeError):
    """Asked for a move in a finished game."""


class Mover(Enum):
    D = 0
    S = 1

    @property
    def other(self) -> "Mover":
        return Mover.S if self is Mover.D else Mover.D

    @classmethod
    def parse(cls, value) -> "Mover":
        if isinstance(value, Mover):
            return value
        return cls[str(value).upper()[:1]]


@dataclass(frozen=True)
class SolveKey:
    dominated: int
    mover: Mover


@dataclass(frozen=True)
class SolveResult:
    value: int
    best_move: int | None
    nodes: int


class Solver:
    """Owns the memo tables for one graph."""

    def __init__(self, g: Graph, cap: int = DEFAULT_CAP):
        if g.n > cap:
            raise CapacityError(f"n={g.n} exceeds solver cap {cap}")
        if g.n > 62:
            raise CapacityError("dominated sets must fit in 64 bits")
        self.graph = g
        self.full = g.full_mask
        self.cm = g.closed_masks
        size = 1 << g.n
        self.vd = np.full(size, kernels.UNKNOWN, dtype=np.uint8)
        self.vs = np.full(size, kernels.UNKNOWN, dtype=np.uint8)
        self.nodes = 0
        self._complete = False

    def _table(self, mover: Mover) -> np.ndarray:
        return self.vd if mover is Mover.D else self.vs

    def _ensure(self, mask: int, mover: Mover) -> None:
        if self._table(mover)[mask] != kernels.UNKNOWN:
            return
        if kernels.USE_NUMBA:
            self.nodes += int(kernels.solve_from_nb(
                self.cm, np.uint64(self.full), np.uint64(mask), mover.value, self.vd, self.vs))
        elif not self._complete:
            self.nodes += kernels.solve_all_np(self.cm, self.graph.n, self.vd, self.vs)
            self._complete = True

    def value(self, dominated: int, mover: Mover) -> int:
        if dominated == self.full:
            return 0
        self._ensure(dominated, mover)
        return int(self._table(mover)[dominated])

    def best_move(self, dominated: int, mover: Mover) -> int:
        if dominated == self.full:
            raise NoMoveError("game is over")
        target = self.value(dominated, mover) - 1
        for v in range(self.graph.n):
            child = dominated | self.graph.closed(v)
            if child != dominated and self.value(child, mover.other) == target:
                return v
        raise AssertionError("memo table inconsistent")  # pragma: no cover

    def result(self, key: SolveKey) -> SolveResult:
        value = self.value(key.dominated, key.mover)
        best = None if value == 0 else self.best_move(key.dominated, key.mover)
        return SolveResult(value, best, self.nodes)


@lru_cache(maxsize=8)
def _solver_for(g: Graph, cap: int) -> Solver:
    return Solver(g, cap)


def solver_for(g: Graph, cap: int = DEFAULT_CAP) -> Solver:
    if g.n > cap:
        raise CapacityError(f"n={g.n} exceeds solver cap {cap}")
    return _solver_for(g, cap)


def _naive_value(g: Graph, dominated: int, mover: Mover) -> int:
    if dominated == g.full_mask:
        return 0
    vals = [
        _naive_value(g, dominated | g.closed(v), mover.other)
        for v in range(g.n)
        if g.closed(v) & ~dominated
    ]
    return 1 + (min(vals) if mover is Mover.D else max(vals))


def remaining_value(g: Graph, key: SolveKey, cap: int = DEFAULT_CAP, memo: bool = True) -> SolveResult:
    if g.n > cap:
        raise CapacityError(f"n={g.n} exceeds solver cap {cap}")
    if memo:
        return solver_for(g, cap).result(key)
    value = _naive_value(g, key.dominated, key.mover)
    best = None
    if value:
        for v in range(g.n):
            child = key.dominated | g.closed(v)
            if child != key.dominated and _naive_value(g, child, key.mover.other) == value - 1:
                best = v
                break
    return SolveResult(value, best, 0)


def game_value(g: Graph, first: Mover | str = Mover.D, cap: int = DEFAULT_CAP) -> int:
    isolated = [v for v in range(g.n) if g.rows[v] == 0]
    if isolated:
        raise GraphError(f"domination game undefined with isolated vertices {isolated}")
    return solver_for(g, cap).value(0, Mover.parse(first))


def optimal_move(g: Graph, key: SolveKey, cap: int = DEFAULT_CAP) -> int:
    return solver_for(g, cap).best_move(key.dominated, key.mover)


def solve_report(g: Graph, cap: int = DEFAULT_CAP) -> dict:
    """Both game domination numbers with timing, as emitted by the CLI."""
    start = time.perf_counter()
    solver = Solver(g, cap)
    if any(r == 0 for r in g.rows):
        raise GraphError("domination game undefined with isolated vertices")
    gd = solver.value(0, Mover.D)
    gs = solver.value(0, Mover.S)
    return {
        "n": g.n,
        "m": g.m,
        "gamma_g": gd,
        "gamma_g_prime": gs,
        "nodes": solver.nodes,
        "millis": round((time.perf_counter() - start) * 1000, 3),
    }
