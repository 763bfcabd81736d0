"""Time the compiled kernels against the numpy fallback.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import timeit

import numpy as np

from gss import _kernels_py

try:
    from gss import _kernels
except ImportError:
    _kernels = None


def random_terms(rng, n_terms, n_qubits):
    digits = rng.integers(0, 4, size=(n_terms, n_qubits), dtype=np.uint8)
    coeffs = rng.normal(size=n_terms)
    return digits, coeffs


def cases(rng):
    digits10, coeffs10 = random_terms(rng, 2000, 10)
    a = rng.normal(size=(256, 256)) + 1j * rng.normal(size=(256, 256))
    herm = a + a.conj().T
    digits20, coeffs20 = random_terms(rng, 200_000, 20)
    table = rng.normal(size=(20, 4))
    return [
        ("pauli_to_dense  2000 terms, 10 qubits", "pauli_to_dense", (digits10, coeffs10)),
        ("dense_to_pauli  8 qubits", "dense_to_pauli", (herm,)),
        ("sparse_corr     200000 terms, 20 qubits", "sparse_correlation", (digits20, coeffs20, table)),
    ]


def check_agreement(name, args):
    ref = np.asarray(getattr(_kernels_py, name)(*args))
    got = np.asarray(getattr(_kernels, name)(*args))
    return float(np.max(np.abs(ref - got)))


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':42s} {'python [s]':>11s} {'compiled [s]':>13s} {'speedup':>8s} {'max diff':>9s}")
    for label, name, call_args in cases(rng):
        py = min(timeit.repeat(lambda: getattr(_kernels_py, name)(*call_args), number=1, repeat=args.repeat))
        if _kernels is None:
            print(f"{label:42s} {py:11.4f} {'n/a':>13s}")
            continue
        cy = min(timeit.repeat(lambda: getattr(_kernels, name)(*call_args), number=1, repeat=args.repeat))
        diff = check_agreement(name, call_args)
        print(f"{label:42s} {py:11.4f} {cy:13.4f} {py / cy:7.1f}x {diff:9.1e}")


if __name__ == "__main__":
    main()
