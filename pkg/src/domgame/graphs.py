"""Simple undirected graphs on vertices 0..n-1 with bit-set adjacency rows."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np


class GraphError(ValueError):
    """Invalid graph or invalid generator parameters."""


class ParseError(GraphError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def bits(mask: int) -> list[int]:
    """Indices of the set bits of ``mask``, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def mask_to_array(mask: int, n: int) -> np.ndarray:
    raw = np.frombuffer(mask.to_bytes((n + 7) // 8 or 1, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:n].astype(bool)


def array_to_mask(arr: np.ndarray) -> int:
    return int.from_bytes(np.packbits(arr.astype(bool), bitorder="little").tobytes(), "little")


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph.  ``rows[v]`` is the open neighbourhood of v as a bit-set."""

    n: int
    rows: tuple[int, ...]
    m: int = field(init=False)

    def __post_init__(self):
        if len(self.rows) != self.n:
            raise GraphError("adjacency row count differs from n")
        full = (1 << self.n) - 1
        deg_sum = 0
        for v, row in enumerate(self.rows):
            if row & ~full:
                raise GraphError(f"vertex {v} has a neighbour outside 0..{self.n - 1}")
            if row >> v & 1:
                raise GraphError(f"self-loop at {v}")
            for u in bits(row):
                if not self.rows[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency {v}-{u}")
            deg_sum += row.bit_count()
        object.__setattr__(self, "m", deg_sum // 2)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if n < 0:
            raise GraphError("negative vertex count")
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            if rows[u] >> v & 1:
                raise GraphError(f"duplicate edge ({min(u, v)}, {max(u, v)})")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    def neighbors(self, v: int) -> list[int]:
        return bits(self.rows[v])

    def closed(self, v: int) -> int:
        """Closed neighbourhood N[v] as a bit-set."""
        return self.rows[v] | (1 << v)

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.rows[u] >> (u + 1) << (u + 1))]

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def indptr(self) -> np.ndarray:
        return np.concatenate([[0], np.cumsum([r.bit_count() for r in self.rows])]).astype(np.int64)

    @cached_property
    def indices(self) -> np.ndarray:
        flat = [u for v in range(self.n) for u in bits(self.rows[v])]
        return np.asarray(flat, dtype=np.int64)

    @cached_property
    def adj_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.float32)
        for u, v in self.edges():
            a[u, v] = a[v, u] = 1.0
        return a

    @cached_property
    def closed_matrix(self) -> np.ndarray:
        return (self.adj_matrix > 0) | np.eye(self.n, dtype=bool)

    @cached_property
    def closed_masks(self) -> np.ndarray:
        return np.array([self.closed(v) for v in range(self.n)], dtype=np.uint64)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


# ---------------------------------------------------------------------------
# properties


def min_degree(g: Graph) -> int:
    if g.n < 1:
        raise GraphError("min_degree of the empty graph")
    return min(r.bit_count() for r in g.rows)


def components(g: Graph, within: int | None = None) -> list[list[int]]:
    """Connected components of g (or of the subgraph induced by ``within``), by smallest vertex."""
    remaining = g.full_mask if within is None else within
    allowed = remaining
    comps = []
    while remaining:
        start = remaining & -remaining
        seen = frontier = start
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= g.rows[v]
            frontier = nxt & allowed & ~seen
            seen |= frontier
        remaining &= ~seen
        comps.append(bits(seen))
    return comps


def is_cycle(g: Graph) -> bool:
    return g.n >= 3 and all(r.bit_count() == 2 for r in g.rows) and len(components(g)) == 1


def has_hamiltonian_path(g: Graph) -> bool:
    """Bitmask DP over reachable (visited set, endpoint) pairs."""
    if g.n <= 1:
        return True
    full = g.full_mask
    frontier = {1 << v: 1 << v for v in range(g.n)}
    for _ in range(g.n - 1):
        nxt: dict[int, int] = {}
        for visited, ends in frontier.items():
            for v in bits(ends):
                for u in bits(g.rows[v] & ~visited):
                    key = visited | (1 << u)
                    nxt[key] = nxt.get(key, 0) | (1 << u)
        if not nxt:
            return False
        frontier = nxt
    return full in frontier


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Graph with vertex v renamed perm[v]."""
    if sorted(perm) != list(range(g.n)):
        raise GraphError("relabeling is not a permutation")
    return Graph.from_edges(g.n, [(perm[u], perm[v]) for u, v in g.edges()])


def domination_number(g: Graph) -> int:
    """Minimum dominating set size by exhaustive search (small graphs)."""
    full = g.full_mask
    closed = [g.closed(v) for v in range(g.n)]
    for size in range(g.n + 1):
        for combo in combinations(range(g.n), size):
            cov = 0
            for v in combo:
                cov |= closed[v]
            if cov == full:
                return size
    return g.n


# ---------------------------------------------------------------------------
# generators

FAMILY_KINDS = ("cycle", "path", "complete", "legs", "disjoint_copies", "random_min_deg2", "explicit")


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"cycle needs n >= 3, got {n}")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    if n < 1:
        raise GraphError(f"path needs n >= 1, got {n}")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete(n: int) -> Graph:
    if n < 1:
        raise GraphError(f"complete graph needs n >= 1, got {n}")
    return Graph.from_edges(n, combinations(range(n), 2))


def legs(base: Graph) -> Graph:
    """Append two paths of length two at every vertex of ``base``.

    Base vertex v keeps index v; its legs are v-a1-a2 and v-b1-b2 with
    a1, a2, b1, b2 = h + 4v + (0, 1, 2, 3) where h = base.n.
    """
    if base.n < 1:
        raise GraphError("legs needs a nonempty base graph")
    h = base.n
    edges = list(base.edges())
    for v in range(h):
        a1, a2, b1, b2 = (h + 4 * v + i for i in range(4))
        edges += [(v, a1), (a1, a2), (v, b1), (b1, b2)]
    return Graph.from_edges(5 * h, edges)


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for g in graphs:
        edges += [(u + offset, v + offset) for u, v in g.edges()]
        offset += g.n
    return Graph.from_edges(offset, edges)


def disjoint_copies(base: Graph, k: int) -> Graph:
    if k < 1:
        raise GraphError(f"disjoint_copies needs k >= 1, got {k}")
    return disjoint_union(*([base] * k))


def random_min_deg2(n: int, extra: int, seed: int) -> Graph:
    """Random Hamiltonian cycle plus ``extra`` uniformly random chords."""
    if n < 3:
        raise GraphError(f"random_min_deg2 needs n >= 3, got {n}")
    if extra < 0:
        raise GraphError("extra chord count must be nonnegative")
    rng = random.Random(seed)
    order = list(range(n))
    rng.shuffle(order)
    edges = {tuple(sorted((order[i], order[(i + 1) % n]))) for i in range(n)}
    free = [e for e in combinations(range(n), 2) if e not in edges]
    if extra > len(free):
        raise GraphError(f"only {len(free)} chords available, {extra} requested")
    edges.update(rng.sample(free, extra))
    return Graph.from_edges(n, sorted(edges))


def theta(a: int, b: int, c: int) -> Graph:
    """Two hubs joined by three internally disjoint paths with a, b, c inner vertices."""
    if min(a, b, c) < 0 or sorted((a, b, c))[:2].count(0) > 1:
        raise GraphError("theta graph needs at most one direct hub edge")
    edges = []
    nxt = 2
    for length in (a, b, c):
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, 1))
    return Graph.from_edges(nxt, edges)


@dataclass(frozen=True)
class GraphFamily:
    """A named generator with its parameters.

    ``params`` keys by kind: cycle/path/complete ``n``; legs ``base``;
    disjoint_copies ``base``, ``k``; random_min_deg2 ``n``, ``extra``, ``seed``;
    explicit ``n``, ``edges``.
    """

    kind: str
    params: dict

    def __hash__(self):
        return hash((self.kind, repr(sorted(self.params.items(), key=lambda kv: kv[0]))))


def generate(family: GraphFamily) -> Graph:
    p = family.params
    try:
        if family.kind == "cycle":
            return cycle(int(p["n"]))
        if family.kind == "path":
            return path(int(p["n"]))
        if family.kind == "complete":
            return complete(int(p["n"]))
        if family.kind == "legs":
            return legs(p["base"])
        if family.kind == "disjoint_copies":
            return disjoint_copies(p["base"], int(p["k"]))
        if family.kind == "random_min_deg2":
            return random_min_deg2(int(p["n"]), int(p.get("extra", 0)), int(p.get("seed", 0)))
        if family.kind == "explicit":
            return Graph.from_edges(int(p["n"]), [tuple(e) for e in p["edges"]])
    except KeyError as exc:
        raise GraphError(f"{family.kind}: missing parameter {exc.args[0]!r}") from None
    raise GraphError(f"unknown graph family {family.kind!r}")


# ---------------------------------------------------------------------------
# edge-list text format


def _data_lines(text: bytes):
    try:
        decoded = text.decode("ascii")
    except UnicodeDecodeError as exc:
        raise ParseError(f"non-ASCII input at byte {exc.start}") from None
    for lineno, line in enumerate(decoded.split("\n"), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield lineno, stripped


def _ints(line: str, lineno: int) -> list[int]:
    try:
        return [int(tok) for tok in line.split()]
    except ValueError:
        raise ParseError(f"expected integers, got {line!r}", lineno) from None


def parse_edge_list(text: bytes) -> Graph:
    lines = _data_lines(text)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise ParseError("missing 'n m' header") from None
    head = _ints(header, lineno)
    if len(head) != 2 or min(head) < 0:
        raise ParseError("header must be 'n m' with nonnegative integers", lineno)
    n, m = head
    rows = [0] * n
    count = 0
    for lineno, line in lines:
        pair = _ints(line, lineno)
        if len(pair) != 2:
            raise ParseError(f"expected 'u v', got {line!r}", lineno)
        u, v = pair
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"vertex index out of range 0..{n - 1}", lineno)
        if u == v:
            raise ParseError(f"self-loop at {u}", lineno)
        if rows[u] >> v & 1:
            raise ParseError(f"duplicate edge {min(u, v)} {max(u, v)}", lineno)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        count += 1
    if count != m:
        raise ParseError(f"header announces {m} edges, found {count}")
    return Graph(n, tuple(rows))


def emit_edge_list(g: Graph) -> bytes:
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges()]
    return ("\n".join(lines) + "\n").encode("ascii")
