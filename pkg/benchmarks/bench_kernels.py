"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each row reports the best-of-N wall time per call for both backends and the
largest absolute difference between their results.
"""

from __future__ import annotations

import argparse
import sys
import timeit

import numpy as np

from ckrep.kernels import compiled_backend, python_backend


def _cases(rng: np.random.Generator):
    A = (rng.random((4, 4)) < 0.7).astype(float)
    np.fill_diagonal(A, 1.0)
    M = A * rng.uniform(0.1, 0.9, size=(4, 1))
    D = np.sqrt(M * rng.uniform(0.1, 0.9, size=(4, 1)))
    v = rng.uniform(0.1, 0.5, size=4)
    v /= v.sum()
    c = float(np.max(D @ v / v))
    D /= 1.01 * c  # make the sequence decay
    return [
        ("power_iteration n=4", "power_iteration", (M, 1e-12, 10**6), lambda r: r[0]),
        ("t_sequence m<=2000", "t_sequence", (D, v, 2000), lambda r: np.asarray(r)),
        ("first_below eps=1e-12", "first_below", (D, v, 1e-12, 10**6), float),
        ("word_sum m=8 (65536 words)", "word_sum", (D, v, 8), float),
    ]


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args(argv)
    if compiled_backend is None:
        print("compiled extension not built; only the fallback is available", file=sys.stderr)
        return 1
    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':<28}{'cython [ms]':>13}{'python [ms]':>13}{'speedup':>10}{'max |diff|':>13}")
    for label, name, call_args, key in _cases(rng):
        fast, slow = getattr(compiled_backend, name), getattr(python_backend, name)
        t_fast = min(timeit.repeat(lambda: fast(*call_args), number=1, repeat=args.repeat))
        t_slow = min(timeit.repeat(lambda: slow(*call_args), number=1, repeat=args.repeat))
        diff = float(np.max(np.abs(key(fast(*call_args)) - key(slow(*call_args)))))
        print(f"{label:<28}{1e3 * t_fast:>13.3f}{1e3 * t_slow:>13.3f}"
              f"{t_slow / t_fast:>9.1f}x{diff:>13.2e}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
