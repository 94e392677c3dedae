#!/usr/bin/env python3
"""Timings for the lattice sweep: compiled core vs numpy fallback.

The sweep (extend tables, score every partial assignment, subset and
superset dominance maxima) is the hot loop of the exhaustive search.
Run from the repository root:

    python benchmarks/bench_lattice.py
"""

import time

import numpy as np

from mrex import compute_lattice, solve_kmre
from mrex.lattice import _latticec
from mrex.fixtures import circuit_network

SHAPES = [
    ("8 binary targets", (2,) * 8),
    ("11 binary targets", (2,) * 11),
    ("14 binary targets", (2,) * 14),
    ("7 ternary targets", (3,) * 7),
    ("5 five-state targets", (5,) * 5),
]

REPEATS = 5


def random_tables(rng, shape):
    prior = rng.uniform(0.05, 1.0, size=shape)
    prior /= prior.sum()
    post = rng.uniform(0.05, 1.0, size=shape)
    post /= post.sum()
    return prior, post


def best_time(fn, repeats=REPEATS):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    rng = np.random.default_rng(0)
    if _latticec is None:
        print("compiled lattice core not built; showing numpy fallback only")
    print(f"{'case':24s} {'cells':>10s} {'numpy':>10s} {'compiled':>10s} {'speedup':>8s}")
    for label, shape in SHAPES:
        prior, post = random_tables(rng, shape)
        order = tuple(f"V{i}" for i in range(len(shape)))
        cells = int(np.prod([s + 1 for s in shape]))
        t_py = best_time(lambda: compute_lattice(prior, post, order, "python"))
        if _latticec is not None:
            t_c = best_time(lambda: compute_lattice(prior, post, order, "compiled"))
            a = compute_lattice(prior, post, order, "python")
            b = compute_lattice(prior, post, order, "compiled")
            assert np.array_equal(a.score, b.score)
            assert np.array_equal(a.minimal, b.minimal)
            print(
                f"{label:24s} {cells:>10d} {t_py * 1e3:>8.2f}ms "
                f"{t_c * 1e3:>8.2f}ms {t_py / t_c:>7.2f}x"
            )
        else:
            print(f"{label:24s} {cells:>10d} {t_py * 1e3:>8.2f}ms {'-':>10s} {'-':>8s}")

    # end-to-end sanity on the bundled network
    net = circuit_network()
    t = best_time(
        lambda: solve_kmre(net, None, {"Input": 1, "TotalOutput": 1}, k=3)
    )
    print(f"\ncircuit solve_kmre(k=3): {t * 1e3:.2f} ms per call")


if __name__ == "__main__":
    main()
