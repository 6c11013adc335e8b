"""Game positions: dominated sets, the four-color point system and white structure."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum
from functools import cached_property

import numpy as np

from . import kernels
from .graphs import Graph, bits, components, mask_to_array


class MoveError(ValueError):
    """A move that does not newly dominate any vertex."""


class Color(IntEnum):
    WHITE = kernels.WHITE
    BLUE = kernels.BLUE
    ORANGE = kernels.ORANGE
    RED = kernels.RED


POINTS = {Color.WHITE: 20, Color.BLUE: 10, Color.ORANGE: 7, Color.RED: 0}


@dataclass(frozen=True)
class ColorAssignment:
    colors: tuple[Color, ...]

    @property
    def points(self) -> tuple[int, ...]:
        return tuple(POINTS[c] for c in self.colors)

    def of(self, color: Color) -> list[int]:
        return [v for v, c in enumerate(self.colors) if c == color]

    def __getitem__(self, v: int) -> Color:
        return self.colors[v]


def compute_colors(g: Graph, dominated: int) -> ColorAssignment:
    codes = kernels.color_codes(g, mask_to_array(dominated, g.n))
    return ColorAssignment(tuple(Color(int(c)) for c in codes))


def potential(c: ColorAssignment) -> int:
    return sum(POINTS[col] for col in c.colors)


@dataclass(frozen=True)
class GameState:
    graph: Graph
    dominated: int = 0
    played: tuple[int, ...] = ()

    @classmethod
    def initial(cls, g: Graph) -> "GameState":
        return cls(g)

    @property
    def t(self) -> int:
        return len(self.played)

    @property
    def is_over(self) -> bool:
        return self.dominated == self.graph.full_mask

    @property
    def whites(self) -> int:
        return self.graph.full_mask & ~self.dominated

    @cached_property
    def dominated_array(self) -> np.ndarray:
        return mask_to_array(self.dominated, self.graph.n)

    @cached_property
    def colors(self) -> ColorAssignment:
        return compute_colors(self.graph, self.dominated)

    @cached_property
    def pi(self) -> int:
        return potential(self.colors)

    def is_legal(self, v: int) -> bool:
        return 0 <= v < self.graph.n and bool(self.graph.closed(v) & ~self.dominated)

    def __repr__(self) -> str:
        return f"GameState(n={self.graph.n}, t={self.t}, pi={self.pi})"


def legal_moves(s: GameState) -> list[int]:
    undominated = s.whites
    return [v for v in range(s.graph.n) if s.graph.closed(v) & undominated]


def apply_move(s: GameState, v: int) -> GameState:
    if not s.is_legal(v):
        raise MoveError(f"vertex {v} is not a legal move at t={s.t}")
    return GameState(s.graph, s.dominated | s.graph.closed(v), s.played + (v,))


def potential_drop(s: GameState, v: int) -> int:
    return s.pi - apply_move(s, v).pi


def potentials_after(s: GameState) -> np.ndarray:
    """Potential after each possible next move (-1 where illegal)."""
    return kernels.potentials_after(s.graph, s.dominated_array)


@dataclass(frozen=True)
class Ledger:
    pi0: int
    t: int
    pi_t: int
    t1: int | None = None

    @property
    def surplus(self) -> int:
        return self.pi0 - self.pi_t - 34 * self.t

    @classmethod
    def of(cls, s: GameState, t1: int | None = None) -> "Ledger":
        return cls(20 * s.graph.n, s.t, s.pi, t1)


# ---------------------------------------------------------------------------
# white structure


@dataclass(frozen=True)
class Component:
    kind: str  # single | pair | path | cycle | other
    vertices: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class WhiteStructure:
    whites: tuple[int, ...]
    excluded: tuple[tuple[int, ...], ...] = ()
    components: tuple[Component, ...] = field(default=())

    def of_kind(self, kind: str) -> list[Component]:
        return [c for c in self.components if c.kind == kind]


def _cycle_order(g: Graph, comp: list[int], within: int) -> tuple[int, ...]:
    start = comp[0]
    order = [start]
    prev, cur = start, min(bits(g.rows[start] & within))
    while cur != start:
        order.append(cur)
        nxt = [u for u in bits(g.rows[cur] & within) if u != prev]
        prev, cur = cur, nxt[0]
    return tuple(order)


def _path_order(g: Graph, comp: list[int], within: int) -> tuple[int, ...]:
    ends = [v for v in comp if (g.rows[v] & within).bit_count() == 1]
    start = min(ends)
    order = [start]
    prev, cur = start, min(bits(g.rows[start] & within))
    while True:
        order.append(cur)
        nxt = [u for u in bits(g.rows[cur] & within) if u != prev]
        if not nxt:
            return tuple(order)
        prev, cur = cur, nxt[0]


def classify(g: Graph, comp: list[int], within: int) -> Component:
    degs = [(g.rows[v] & within).bit_count() for v in comp]
    if len(comp) == 1:
        return Component("single", tuple(comp))
    if len(comp) == 2:
        return Component("pair", tuple(comp))
    if max(degs) > 2:
        return Component("other", tuple(comp))
    if min(degs) == 2:
        return Component("cycle", _cycle_order(g, comp, within))
    return Component("path", _path_order(g, comp, within))


def white_structure(s: GameState) -> WhiteStructure:
    g = s.graph
    whites = s.whites
    excluded = []
    removed = 0
    for comp in components(g):
        mask = sum(1 << v for v in comp)
        if mask & ~whites or len(comp) not in (4, 5):
            continue
        if all(g.degree(v) == 2 for v in comp):
            excluded.append(_cycle_order(g, comp, mask))
            removed |= mask
    h = whites & ~removed
    comps = tuple(classify(g, comp, h) for comp in components(g, within=h))
    return WhiteStructure(tuple(bits(whites)), tuple(excluded), comps)
