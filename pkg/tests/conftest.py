import os

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from domgame import kernels
from domgame.graphs import Graph, cycle, disjoint_union, theta
from domgame.corpus import six_config

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile(
    "thorough", max_examples=400, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(params=["numba", "numpy"])
def backend(request, monkeypatch):
    """Run a test once per kernel backend."""
    if request.param == "numba" and not kernels.HAVE_NUMBA:
        pytest.skip("numba not installed")
    monkeypatch.setattr(kernels, "USE_NUMBA", request.param == "numba")
    return request.param


# ---------------------------------------------------------------------------
# graph strategies


@st.composite
def graphs(draw, min_n=1, max_n=9, allow_isolated=True):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    g = Graph.from_edges(n, edges)
    if not allow_isolated:
        extra = []
        for v in range(n):
            if g.rows[v] == 0 and n > 1:
                u = draw(st.integers(0, n - 2))
                extra.append((v, u if u < v else u + 1))
        g = Graph.from_edges(n, sorted({tuple(sorted(e)) for e in list(g.edges()) + extra}))
    return g


@st.composite
def min_deg2_graphs(draw, min_n=3, max_n=12):
    """Random graphs repaired to minimum degree two."""
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = set(draw(st.lists(st.sampled_from(pairs), unique=True, max_size=2 * n)))
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    for v in range(n):
        while deg[v] < 2:
            others = [u for u in range(n) if u != v and tuple(sorted((u, v))) not in edges]
            u = draw(st.sampled_from(others))
            edges.add(tuple(sorted((u, v))))
            deg[u] += 1
            deg[v] += 1
    return Graph.from_edges(n, sorted(edges))


@st.composite
def sparse_min_deg2_graphs(draw, max_n=20):
    """Cycles with a few subdivided chords and glued five-cycles or six-configurations.

    These keep long runs of degree-two vertices, which is where the
    terminal structures show up.
    """
    parts = []
    for _ in range(draw(st.integers(1, 3))):
        kind = draw(st.sampled_from(["cycle", "c5", "six", "theta"]))
        if kind == "cycle":
            parts.append(cycle(draw(st.integers(3, 9))))
        elif kind == "c5":
            parts.append(cycle(5))
        elif kind == "six":
            parts.append(six_config())
        else:
            a, b, c = sorted(draw(st.lists(st.integers(0, 4), min_size=3, max_size=3)))
            if b == 0:
                b = 1
            if c <= 1:
                c = 2
            parts.append(theta(a, b, c))
    g = disjoint_union(*parts)
    if g.n > max_n:
        g = parts[0]
    if draw(st.booleans()) and len(parts) > 1:
        # join two components through a new path of length >= 2
        n = g.n
        comps = []
        off = 0
        for p in parts:
            comps.append(off)
            off += p.n
        if off == n:
            a = draw(st.integers(0, parts[0].n - 1))
            b = comps[1] + draw(st.integers(0, parts[1].n - 1))
            k = draw(st.integers(1, 3))
            new = list(range(n, n + k))
            chain = [a] + new + [b]
            edges = list(g.edges()) + list(zip(chain, chain[1:]))
            g = Graph.from_edges(n + k, edges)
    return g
