"""Hot numeric kernels with a numba and a pure-numpy implementation.

The numba path is used when numba imports cleanly and the environment
variable ``DOMGAME_NO_JIT`` is unset (or ``0``).  Both paths are always
importable under explicit names (``*_nb`` / ``*_np``) so they can be
benchmarked and cross-checked in one process.

Color codes: 0 white, 1 blue, 2 orange, 3 red.
"""

from __future__ import annotations

import os

import numpy as np

WHITE, BLUE, ORANGE, RED = 0, 1, 2, 3
POINTS = np.array([20, 10, 7, 0], dtype=np.int64)
UNKNOWN = 255


def _jit_requested() -> bool:
    flag = os.environ.get("DOMGAME_NO_JIT", "").strip().lower()
    return flag in ("", "0", "false", "no")


try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and _jit_requested()


def _njit(fn):
    if HAVE_NUMBA:
        return numba.njit(cache=True, nogil=True)(fn)
    return fn


# ---------------------------------------------------------------------------
# color computation


@_njit
def _colors_into(indptr, indices, dom, wdeg, out):
    n = dom.shape[0]
    for v in range(n):
        wdeg[v] = 0
    for v in range(n):
        if not dom[v]:
            for p in range(indptr[v], indptr[v + 1]):
                wdeg[indices[p]] += 1
    for v in range(n):
        if not dom[v]:
            out[v] = WHITE
        elif wdeg[v] == 0:
            out[v] = RED
        elif wdeg[v] == 1:
            u = -1
            for p in range(indptr[v], indptr[v + 1]):
                if not dom[indices[p]]:
                    u = indices[p]
                    break
            short = wdeg[u] == 0
            if not short and wdeg[u] == 1:
                for p in range(indptr[u], indptr[u + 1]):
                    w = indices[p]
                    if not dom[w]:
                        short = wdeg[w] == 1
                        break
            out[v] = ORANGE if short else BLUE
        else:
            out[v] = BLUE


@_njit
def color_codes_nb(indptr, indices, dom):
    n = dom.shape[0]
    wdeg = np.empty(n, dtype=np.int64)
    out = np.empty(n, dtype=np.int8)
    _colors_into(indptr, indices, dom, wdeg, out)
    return out


@_njit
def potentials_after_nb(indptr, indices, dom):
    """Potential after each single move from ``dom``; -1 marks illegal moves."""
    n = dom.shape[0]
    res = np.full(n, -1, dtype=np.int64)
    scratch = np.empty(n, dtype=np.bool_)
    wdeg = np.empty(n, dtype=np.int64)
    codes = np.empty(n, dtype=np.int8)
    pts = np.array([20, 10, 7, 0], dtype=np.int64)
    for v in range(n):
        legal = not dom[v]
        if not legal:
            for p in range(indptr[v], indptr[v + 1]):
                if not dom[indices[p]]:
                    legal = True
                    break
        if not legal:
            continue
        for i in range(n):
            scratch[i] = dom[i]
        scratch[v] = True
        for p in range(indptr[v], indptr[v + 1]):
            scratch[indices[p]] = True
        _colors_into(indptr, indices, scratch, wdeg, codes)
        total = 0
        for i in range(n):
            total += pts[codes[i]]
        res[v] = total
    return res


def _colors_batch_np(adj: np.ndarray, dom: np.ndarray) -> np.ndarray:
    """Color codes for a batch of dominated sets, shape (k, n)."""
    white = ~dom
    wdeg = white.astype(np.float32) @ adj
    one = wdeg == 1
    cnt1 = (white & one).astype(np.float32) @ adj
    single = white & (wdeg == 0)
    double = white & one & (cnt1 == 1)
    short_nbrs = (single | double).astype(np.float32) @ adj
    codes = np.full(dom.shape, BLUE, dtype=np.int8)
    codes[white] = WHITE
    codes[dom & one & (short_nbrs == 1)] = ORANGE
    codes[dom & (wdeg == 0)] = RED
    return codes


def color_codes_np(adj: np.ndarray, dom: np.ndarray) -> np.ndarray:
    return _colors_batch_np(adj, dom[None, :])[0]


def potentials_after_np(adj: np.ndarray, closed: np.ndarray, dom: np.ndarray) -> np.ndarray:
    legal = (closed & ~dom[None, :]).any(axis=1)
    res = np.full(dom.shape[0], -1, dtype=np.int64)
    idx = np.flatnonzero(legal)
    if idx.size:
        batch = closed[idx] | dom[None, :]
        res[idx] = POINTS[_colors_batch_np(adj, batch)].sum(axis=1)
    return res


# ---------------------------------------------------------------------------
# exact solver tables
#
# vd[mask] / vs[mask] hold the remaining optimal game length from dominated
# set ``mask`` with Dominator / Staller to move.  UNKNOWN marks unsolved.


@_njit
def solve_from_nb(cm, full, root, root_mover, vd, vs):
    """Memoized depth-first minimax from ``root``; returns nodes expanded."""
    n = cm.shape[0]
    depth_cap = n + 2
    smask = np.empty(depth_cap, dtype=np.uint64)
    smover = np.empty(depth_cap, dtype=np.int64)
    snext = np.empty(depth_cap, dtype=np.int64)
    sbest = np.empty(depth_cap, dtype=np.int64)
    nodes = 0
    if root == full:
        vd[root] = 0
        vs[root] = 0
        return nodes
    if (root_mover == 0 and vd[root] != UNKNOWN) or (root_mover == 1 and vs[root] != UNKNOWN):
        return nodes
    top = 0
    smask[0] = root
    smover[0] = root_mover
    snext[0] = 0
    sbest[0] = 1000 if root_mover == 0 else -1
    nodes += 1
    while top >= 0:
        mask = smask[top]
        mover = smover[top]
        v = snext[top]
        if v == n:
            val = sbest[top] + 1
            if mover == 0:
                vd[mask] = val
            else:
                vs[mask] = val
            top -= 1
            if top >= 0:
                if smover[top] == 0:
                    if val < sbest[top]:
                        sbest[top] = val
                elif val > sbest[top]:
                    sbest[top] = val
            continue
        snext[top] = v + 1
        child = mask | cm[v]
        if child == mask:
            continue
        cmover = 1 - mover
        if child == full:
            cval = 0
        elif cmover == 0:
            cval = vd[child]
        else:
            cval = vs[child]
        if cval == UNKNOWN:
            top += 1
            smask[top] = child
            smover[top] = cmover
            snext[top] = 0
            sbest[top] = 1000 if cmover == 0 else -1
            nodes += 1
            continue
        if mover == 0:
            if cval < sbest[top]:
                sbest[top] = cval
        elif cval > sbest[top]:
            sbest[top] = cval
    return nodes


def _popcount32(x: np.ndarray) -> np.ndarray:
    x = x - ((x >> 1) & 0x55555555)
    x = (x & 0x33333333) + ((x >> 2) & 0x33333333)
    x = (x + (x >> 4)) & 0x0F0F0F0F
    return ((x * 0x01010101) & 0xFFFFFFFF) >> 24


def solve_all_np(cm: np.ndarray, n: int, vd: np.ndarray, vs: np.ndarray) -> int:
    """Fill both tables for every dominated set, layer by popcount."""
    size = 1 << n
    masks = np.arange(size, dtype=np.uint64)
    pc = _popcount32(masks & np.uint64(0xFFFFFFFF))
    order = np.argsort(pc, kind="stable")
    bounds = np.searchsorted(pc[order], np.arange(n + 2))
    vd[size - 1] = 0
    vs[size - 1] = 0
    cm = cm.astype(np.uint64)
    for p in range(n - 1, -1, -1):
        layer = masks[order[bounds[p]:bounds[p + 1]]]
        best_d = np.full(layer.shape, 1000, dtype=np.int64)
        best_s = np.full(layer.shape, -1, dtype=np.int64)
        for v in range(n):
            child = layer | cm[v]
            legal = child != layer
            best_d = np.where(legal, np.minimum(best_d, vs[child]), best_d)
            best_s = np.where(legal, np.maximum(best_s, vd[child]), best_s)
        vd[layer] = best_d + 1
        vs[layer] = best_s + 1
    return 2 * (size - 1)


# ---------------------------------------------------------------------------
# dispatch


def color_codes(graph, dom: np.ndarray) -> np.ndarray:
    if USE_NUMBA:
        return color_codes_nb(graph.indptr, graph.indices, dom)
    return color_codes_np(graph.adj_matrix, dom)


def potentials_after(graph, dom: np.ndarray) -> np.ndarray:
    if USE_NUMBA:
        return potentials_after_nb(graph.indptr, graph.indices, dom)
    return potentials_after_np(graph.adj_matrix, graph.closed_matrix, dom)


def backend_name() -> str:
    return "numba" if USE_NUMBA else "numpy"
