"""The transversal game on hypergraphs and the closed-neighbourhood reduction.

Positions are keyed by the set of already-hit edges, not by the selected
vertices: which edges a vertex hits is all that matters for legality and
for the rest of the game.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass

from .graphs import Graph, ParseError, _data_lines, _ints, bits
from .solver import DEFAULT_CAP, CapacityError, Mover


class HypergraphError(ValueError):
    pass


@dataclass(frozen=True)
class Hypergraph:
    n: int
    edges: tuple[int, ...]  # vertex bit-sets, deduplicated, first-seen order

    @classmethod
    def from_edges(cls, n: int, edges) -> "Hypergraph":
        seen = []
        for e in edges:
            mask = e if isinstance(e, int) else sum(1 << v for v in set(e))
            if mask == 0:
                raise HypergraphError("empty edge can never be hit")
            if mask >> n:
                raise HypergraphError(f"edge {bits(mask)} leaves vertex range 0..{n - 1}")
            if mask not in seen:
                seen.append(mask)
        return cls(n, tuple(seen))

    @property
    def k(self) -> int:
        return len(self.edges)

    def edge_lists(self) -> list[list[int]]:
        return [bits(e) for e in self.edges]

    def incidence(self) -> list[int]:
        """For each vertex, the bit-set of edge indices containing it."""
        inc = [0] * self.n
        for i, e in enumerate(self.edges):
            for v in bits(e):
                inc[v] |= 1 << i
        return inc


@dataclass
class TransversalState:
    hypergraph: Hypergraph
    hit: int = 0
    selected: tuple[int, ...] = ()

    @property
    def is_over(self) -> bool:
        return self.hit == (1 << self.hypergraph.k) - 1

    def select(self, v: int) -> "TransversalState":
        gain = self.hypergraph.incidence()[v] & ~self.hit
        if not gain:
            raise HypergraphError(f"vertex {v} hits no unhit edge")
        return TransversalState(self.hypergraph, self.hit | gain, self.selected + (v,))


def cnh(g: Graph) -> Hypergraph:
    """Closed-neighbourhood hypergraph of ``g``."""
    return Hypergraph.from_edges(g.n, [g.closed(v) for v in range(g.n)])


def disjoint_copies(h: Hypergraph, k: int) -> Hypergraph:
    if k < 1:
        raise HypergraphError(f"need k >= 1 copies, got {k}")
    edges = [e << (i * h.n) for i in range(k) for e in h.edges]
    return Hypergraph(h.n * k, tuple(edges))


def tau_g(h: Hypergraph, first: Mover | str = Mover.D, cap: int = DEFAULT_CAP) -> int:
    """Game transversal number; Mover.D stands for Edge-hitter."""
    if h.n > cap:
        raise CapacityError(f"n={h.n} exceeds cap {cap}")
    if any(e == 0 for e in h.edges):
        raise HypergraphError("empty edge can never be hit")
    inc = h.incidence()
    full = (1 << h.k) - 1
    memo: dict[tuple[int, bool], int] = {}

    def value(hit: int, hitter: bool) -> int:
        if hit == full:
            return 0
        key = (hit, hitter)
        got = memo.get(key)
        if got is None:
            children = {hit | inc[v] for v in range(h.n) if inc[v] & ~hit}
            vals = [value(c, not hitter) for c in children]
            got = 1 + (min(vals) if hitter else max(vals))
            memo[key] = got
        return got

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 4 * h.k + 100))
    try:
        return value(0, Mover.parse(first) is Mover.D)
    finally:
        sys.setrecursionlimit(limit)


# ---------------------------------------------------------------------------
# text format: "n k" header, then k lines of vertex indices


def parse_hypergraph(text: bytes) -> Hypergraph:
    lines = _data_lines(text)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise ParseError("missing 'n k' header") from None
    head = _ints(header, lineno)
    if len(head) != 2 or min(head) < 0:
        raise ParseError("header must be 'n k'", lineno)
    n, k = head
    edges = []
    for lineno, line in lines:
        verts = _ints(line, lineno)
        if any(not 0 <= v < n for v in verts):
            raise ParseError(f"vertex index out of range 0..{n - 1}", lineno)
        edges.append(verts)
    if len(edges) != k:
        raise ParseError(f"header announces {k} edges, found {len(edges)}")
    return Hypergraph.from_edges(n, edges)


def emit_hypergraph(h: Hypergraph) -> bytes:
    lines = [f"{h.n} {h.k}"] + [" ".join(map(str, e)) for e in h.edge_lists()]
    return ("\n".join(lines) + "\n").encode("ascii")
