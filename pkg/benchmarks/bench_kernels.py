"""Timing comparison of the eigensolver lanes.

Runs the compiled Jacobi extension, the pure numpy fallback, and
numpy.linalg directly on identical batches of random Hermitian matrices,
reporting best-of-N wall time per batch and the cross-lane agreement.
The shapes default to the ones the scans hammer: stacks of 3x3 (qutrit
states) and 4x4 (qubit Choi) matrices.

Usage: python3 benchmarks/bench_kernels.py [--batch 4096] [--dims 3 4]
"""
import argparse
import time

import numpy as np

from boundarylab._kernels import fallback


def _load_compiled():
    try:
        from boundarylab._kernels import _jacobi
    except ImportError:
        return None
    return _jacobi


def _random_batch(rng, batch, d):
    g = rng.standard_normal((batch, d, d)) + 1j * rng.standard_normal((batch, d, d))
    return (g + g.conj().transpose(0, 2, 1)) / 2.0


def _best_of(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--batch", type=int, default=4096)
    parser.add_argument("--dims", type=int, nargs="+", default=[3, 4])
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args(argv)

    compiled = _load_compiled()
    rng = np.random.default_rng(0)
    print(f"batch={args.batch}, best of {args.repeats} runs, times in ms")
    header = f"{'shape':>12} {'kernel':>10} {'eigvalsh':>10} {'eigh':>10}"
    print(header)
    print("-" * len(header))
    for d in args.dims:
        a = _random_batch(rng, args.batch, d)
        ref = np.linalg.eigvalsh(a)
        lanes = [("numpy", lambda: np.linalg.eigvalsh(a), lambda: np.linalg.eigh(a))]
        for mod in (fallback, compiled):
            if mod is None:
                continue
            lanes.append((mod.BACKEND,
                          lambda m=mod: m.eigvalsh_many(a),
                          lambda m=mod: m.eigh_many(a)))
            w, ok = mod.eigvalsh_many(a)
            dev = float(np.abs(w - ref).max())
            assert ok and dev < 1e-10, f"{mod.BACKEND} lane deviates by {dev:.3e}"
        for name, vals_fn, full_fn in lanes:
            t_vals = _best_of(vals_fn, args.repeats) * 1e3
            t_full = _best_of(full_fn, args.repeats) * 1e3
            shape = f"({args.batch},{d},{d})"
            print(f"{shape:>12} {name:>10} {t_vals:>10.2f} {t_full:>10.2f}")
    if compiled is None:
        print("note: compiled extension not built; showing fallback only")


if __name__ == "__main__":
    main()
