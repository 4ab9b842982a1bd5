"""Benchmark the numba-jitted scan kernels against the pure-numpy fallback.

Run:  python benchmarks/bench_kernels.py [--samples 200] [--repeats 20]

Times every batch-margin kernel on a representative workload (the per-grid-
point inner loop of `sepmaps scan`).  The first numba call includes JIT
compilation and is reported separately.
"""

import argparse
import time

import numpy as np

from sepmaps.kernels import numba_backend, numpy_backend
from sepmaps.linalg import Dims, breuer_hall_unitary
from sepmaps.maps import PAULI_Y
from sepmaps.oracle import sample_pure_states


def build_cases(samples):
    rng = np.random.default_rng(0)
    psis_23 = sample_pure_states(Dims(2, 3), samples - 2, rng)
    psis_24 = sample_pure_states(Dims(2, 4), samples - 2, rng)
    psis_33 = sample_pure_states(Dims(3, 3), samples - 2, rng)
    w_b = np.kron(np.eye(2), breuer_hall_unitary(4))
    w_full = np.kron(PAULI_Y, breuer_hall_unitary(4))
    return [
        ("reduction (2,3)", "reduction_margins", (psis_23, 2, 3, 1.3)),
        ("bh2 (2,4)", "bh2_margins", (psis_24, 4, 1.1, -0.4)),
        ("four_param (2,4)", "four_param_margins", (psis_24, 4, 0.9, 0.3, -0.2, 0.5, w_b, w_full)),
        ("ando2xN (2,3)", "ando_2xn_margins", (psis_23, 3, 1, 0.6)),
        ("andoMxN (3,3)", "ando_mxn_margins", (psis_33, 3, 3, 0.4)),
    ]


def best_of(fn, args, repeats):
    best = np.inf
    for _ in range(repeats):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--samples", type=int, default=200)
    parser.add_argument("--repeats", type=int, default=20)
    args = parser.parse_args()

    cases = build_cases(args.samples)
    print(f"batch of {args.samples} pure states per call, best of {args.repeats} repeats\n")
    print(f"{'kernel':>20} {'compile (s)':>12} {'numba (ms)':>11} {'numpy (ms)':>11} {'speedup':>8}")
    for label, name, call_args in cases:
        nb_fn = getattr(numba_backend, name)
        np_fn = getattr(numpy_backend, name)
        start = time.perf_counter()
        nb_psd, nb_ppt = nb_fn(*call_args)
        compile_time = time.perf_counter() - start
        np_psd, np_ppt = np_fn(*call_args)
        assert np.abs(nb_psd - np_psd).max() < 1e-12
        assert np.abs(nb_ppt - np_ppt).max() < 1e-12
        t_nb = best_of(nb_fn, call_args, args.repeats)
        t_np = best_of(np_fn, call_args, args.repeats)
        print(f"{label:>20} {compile_time:>12.2f} {t_nb * 1e3:>11.3f} {t_np * 1e3:>11.3f} "
              f"{t_np / t_nb:>7.1f}x")


if __name__ == "__main__":
    main()
