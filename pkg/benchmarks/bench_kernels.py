"""Compare the numba kernels with the pure-numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 5]

Times the per-move potential kernel on random positions, the exact solver
on cycles, and full strategy matches with each backend switched in.
"""

import argparse
import random
import time

import numpy as np

from domgame import kernels
from domgame.graphs import cycle, legs, complete, random_min_deg2
from domgame.state import GameState, apply_move, legal_moves
from domgame.strategy import PotentialDominator, make_staller, run_match


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def random_positions(g, count, seed):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        s = GameState.initial(g)
        for _ in range(rng.randrange(g.n // 3 + 1)):
            moves = legal_moves(s)
            if not moves:
                break
            s = apply_move(s, rng.choice(moves))
        out.append(s.dominated_array)
    return out


def bench_potentials(repeat):
    print("potentials_after over 200 positions")
    print(f"{'graph':>16} {'numba ms':>10} {'numpy ms':>10} {'speedup':>8}")
    for n in (30, 100, 150):
        g = random_min_deg2(n, n // 5, n)
        doms = random_positions(g, 200, n)
        for d in doms[:2]:
            assert np.array_equal(kernels.potentials_after_nb(g.indptr, g.indices, d),
                                  kernels.potentials_after_np(g.adj_matrix, g.closed_matrix, d))
        nb = best_of(lambda: [kernels.potentials_after_nb(g.indptr, g.indices, d) for d in doms], repeat)
        npy = best_of(lambda: [kernels.potentials_after_np(g.adj_matrix, g.closed_matrix, d) for d in doms], repeat)
        print(f"{'random n=%d' % n:>16} {nb * 1e3:10.2f} {npy * 1e3:10.2f} {npy / nb:8.1f}")


def bench_solver(repeat):
    print("\nexact solver from the empty position (Dominator first)")
    print(f"{'graph':>16} {'numba ms':>10} {'numpy ms':>10} {'speedup':>8}")
    for name, g in [("C14", cycle(14)), ("C18", cycle(18)), ("legs(K3)", legs(complete(3))), ("C20", cycle(20))]:
        size = 1 << g.n

        def run_nb():
            vd = np.full(size, kernels.UNKNOWN, np.uint8)
            vs = np.full(size, kernels.UNKNOWN, np.uint8)
            kernels.solve_from_nb(g.closed_masks, np.uint64(g.full_mask), np.uint64(0), 0, vd, vs)
            return vd[0]

        def run_np():
            vd = np.full(size, kernels.UNKNOWN, np.uint8)
            vs = np.full(size, kernels.UNKNOWN, np.uint8)
            kernels.solve_all_np(g.closed_masks, g.n, vd, vs)
            return vd[0]

        assert run_nb() == run_np()
        nb = best_of(run_nb, repeat)
        npy = best_of(run_np, max(1, repeat // 2))
        print(f"{name:>16} {nb * 1e3:10.1f} {npy * 1e3:10.1f} {npy / nb:8.1f}")


def bench_matches(repeat):
    print("\nstrategy Dominator vs stingy Staller, full match")
    print(f"{'graph':>16} {'numba ms':>10} {'numpy ms':>10} {'speedup':>8}")
    old = kernels.USE_NUMBA
    try:
        for n in (60, 150):
            g = random_min_deg2(n, n // 5, 7)
            times = []
            for flag in (True, False):
                kernels.USE_NUMBA = flag
                times.append(best_of(lambda: run_match(g, PotentialDominator(), make_staller("stingy")), repeat))
            print(f"{'random n=%d' % n:>16} {times[0] * 1e3:10.1f} {times[1] * 1e3:10.1f} {times[1] / times[0]:8.1f}")
    finally:
        kernels.USE_NUMBA = old


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not kernels.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")
    # warm up the JIT so compile time is not measured
    g = cycle(6)
    kernels.potentials_after_nb(g.indptr, g.indices, np.zeros(6, np.bool_))
    bench_potentials(args.repeat)
    bench_solver(args.repeat)
    bench_matches(args.repeat)


if __name__ == "__main__":
    main()
