"""Time the compiled kernels against the numpy fallback.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import timeit

import numpy as np

from holozeno import kernels
from holozeno._pykernels import linear_entropy_batch, max_concurrence_grid
from holozeno.analysis import _haar_qubits
from holozeno.dfs import AngularParams
from holozeno.evolution import holonomy_gate


def _grid_states(n):
    t = np.linspace(0.0, np.pi, n)
    p = np.linspace(0.0, 2 * np.pi, n, endpoint=False)
    tt, pp = np.meshgrid(t, p, indexing="ij")
    tt, pp = tt.ravel(), pp.ravel()
    return np.column_stack([np.cos(tt / 2), np.exp(1j * pp) * np.sin(tt / 2)])


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--samples", type=int, default=100_000)
    args = parser.parse_args(argv)

    u = holonomy_gate(AngularParams(1.0, 0.4, 0.9, 0.3, 1.2, 2.0)).matrix
    rng = np.random.default_rng(0)
    a, b = _haar_qubits(rng, args.samples)
    states = _grid_states(32)

    cases = {
        f"linear_entropy_batch ({args.samples} pairs)": (
            lambda: linear_entropy_batch(u, a, b),
            None if kernels.compiled_backend is None
            else lambda: kernels.compiled_backend.linear_entropy_batch(u, a, b)),
        f"max_concurrence_grid ({len(states)}^2 pairs)": (
            lambda: max_concurrence_grid(u, states),
            None if kernels.compiled_backend is None
            else lambda: kernels.compiled_backend.max_concurrence_grid(u, states)),
    }
    print(f"{'kernel':<42} {'python [s]':>11} {'cython [s]':>11} {'speedup':>8}")
    for name, (py, cy) in cases.items():
        t_py = min(timeit.repeat(py, number=1, repeat=args.repeat))
        if cy is None:
            print(f"{name:<42} {t_py:>11.4f} {'n/a':>11} {'n/a':>8}")
            continue
        t_cy = min(timeit.repeat(cy, number=1, repeat=args.repeat))
        print(f"{name:<42} {t_py:>11.4f} {t_cy:>11.4f} {t_py / t_cy:>7.1f}x")


if __name__ == "__main__":
    main()
