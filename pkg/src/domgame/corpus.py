"""The standard acceptance corpus of small graphs with known properties."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .graphs import (
    Graph,
    complete,
    cycle,
    disjoint_union,
    emit_edge_list,
    legs,
    parse_edge_list,
    path,
    random_min_deg2,
    theta,
)

THETAS = [(1, 1, 1), (0, 2, 3), (1, 2, 3), (2, 2, 2), (1, 3, 5), (3, 3, 3), (2, 4, 6), (4, 5, 6), (5, 5, 6)]
RANDOM_SPECS = [(n, extra, seed) for n in range(12, 19) for extra, seed in ((2, n), (5, 100 + n))]
LARGE_SIZES = (30, 60, 100, 150)


def six_config() -> Graph:
    """Six-cycle u x y v y' x' plus a vertex w adjacent to u and v (u=0, v=3, w=6)."""
    return Graph.from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (6, 0), (6, 3)])


@dataclass(frozen=True)
class Entry:
    name: str
    graph: Graph
    family: str
    expected_gamma_g: int | None = None


def standard_corpus() -> list[Entry]:
    out = []
    for n in range(4, 17):
        exp = -(-n // 2) if n % 4 != 3 else None
        out.append(Entry(f"cycle-{n:02d}", cycle(n), "cycle", exp))
    for n in range(2, 17):
        exp = 3 if n == 5 else None
        out.append(Entry(f"path-{n:02d}", path(n), "path", exp))
    for a, b, c in THETAS:
        out.append(Entry(f"theta-{a}-{b}-{c}", theta(a, b, c), "theta"))
    for n, extra, seed in RANDOM_SPECS:
        out.append(Entry(f"random-{n:02d}-{extra}-s{seed}", random_min_deg2(n, extra, seed), "random_min_deg2"))
    for base_name, base in (("k1", path(1)), ("k2", complete(2)), ("k3", complete(3)), ("p3", path(3)), ("c4", cycle(4))):
        out.append(Entry(f"legs-{base_name}", legs(base), "legs", 3 * base.n))
    c5, six = cycle(5), six_config()
    unions = {
        "c5x2": (c5, c5),
        "c5x3": (c5, c5, c5),
        "c5x4": (c5, c5, c5, c5),
        "c5-six": (c5, six),
        "six-x2": (six, six),
        "c5x2-six": (c5, c5, six),
        "c5-c6": (c5, cycle(6)),
    }
    for name, parts in unions.items():
        out.append(Entry(f"union-{name}", disjoint_union(*parts), "union"))
    out.append(Entry("six-config", six, "six_config"))
    for n in (3, 4, 5):
        out.append(Entry(f"complete-{n}", complete(n), "complete", 1))
    return out


def large_corpus() -> list[Entry]:
    return [Entry(f"random-{n:03d}-{n // 5}-s{n}", random_min_deg2(n, n // 5, n), "random_min_deg2")
            for n in LARGE_SIZES]


def write_corpus(directory: Path, entries: list[Entry]) -> list[Path]:
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    manifest = {}
    for e in entries:
        p = directory / f"{e.name}.g"
        p.write_bytes(emit_edge_list(e.graph))
        paths.append(p)
        manifest[e.name] = {"family": e.family, "expected_gamma_g": e.expected_gamma_g}
    (directory / "manifest.json").write_text(json.dumps(manifest, indent=1, sort_keys=True) + "\n")
    return paths


def read_corpus(directory: Path) -> list[Entry]:
    manifest_path = directory / "manifest.json"
    manifest = json.loads(manifest_path.read_text()) if manifest_path.exists() else {}
    out = []
    for p in sorted(directory.glob("*.g")):
        meta = manifest.get(p.stem, {})
        out.append(Entry(p.stem, parse_edge_list(p.read_bytes()), meta.get("family", "file"),
                         meta.get("expected_gamma_g")))
    return out
