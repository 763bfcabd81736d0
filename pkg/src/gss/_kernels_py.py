"""Pure numpy implementations of the hot kernels.

Every function here has a twin of the same name and signature in the compiled
``_kernels`` extension. Pauli strings are passed as ``uint8`` digit arrays of
shape ``(n_terms, n_qubits)`` with digits 0..3 for I, X, Y, Z; site 0 is the
most significant bit of a computational basis index.
"""

import numpy as np

# Tr(M P) for a 2x2 block M flattened as (M00, M01, M10, M11), divided by 2.
_PAULI_TRANSFORM = 0.5 * np.array(
    [
        [1, 0, 0, 1],
        [0, 1, 1, 0],
        [0, 1j, -1j, 0],
        [1, 0, 0, -1],
    ],
    dtype=np.complex128,
)

_MINUS_I_POW = np.array([1, -1j, -1, 1j], dtype=np.complex128)


def _masks(digits):
    n_qubits = digits.shape[1]
    weights = np.left_shift(np.uint64(1), np.arange(n_qubits - 1, -1, -1, dtype=np.uint64))
    xbit = (digits == 1) | (digits == 2)
    zbit = (digits == 2) | (digits == 3)
    xmask = (xbit * weights).sum(axis=1, dtype=np.uint64)
    zmask = (zbit * weights).sum(axis=1, dtype=np.uint64)
    ny = (digits == 2).sum(axis=1)
    return xmask, zmask, ny


def pauli_to_dense(digits, coeffs):
    digits = np.ascontiguousarray(digits, dtype=np.uint8)
    coeffs = np.ascontiguousarray(coeffs, dtype=np.float64)
    n_qubits = digits.shape[1]
    dim = 1 << n_qubits
    out = np.zeros((dim, dim), dtype=np.complex128)
    if digits.shape[0] == 0:
        return out
    rows = np.arange(dim, dtype=np.uint64)
    xmask, zmask, ny = _masks(digits)
    for x, z, k, c in zip(xmask, zmask, ny, coeffs):
        parity = np.bitwise_count(rows & z) & 1
        signs = 1.0 - 2.0 * parity
        out[rows, rows ^ x] += (c * _MINUS_I_POW[k % 4]) * signs
    return out


def dense_to_pauli(mat):
    mat = np.asarray(mat, dtype=np.complex128)
    dim = mat.shape[0]
    n_qubits = dim.bit_length() - 1
    if n_qubits == 0:
        return mat.reshape(1).copy()
    axes = [ax for pair in zip(range(n_qubits), range(n_qubits, 2 * n_qubits)) for ax in pair]
    work = mat.reshape((2,) * (2 * n_qubits)).transpose(axes).reshape(dim * dim)
    for site in range(n_qubits):
        work = work.reshape(4**site, 4, 4 ** (n_qubits - site - 1))
        work = np.einsum("pq,aqb->apb", _PAULI_TRANSFORM, work)
    return work.reshape(dim * dim)


def sparse_correlation(digits, coeffs, table):
    digits = np.asarray(digits, dtype=np.intp)
    if digits.shape[0] == 0:
        return 0.0
    sites = np.arange(digits.shape[1])
    factors = np.asarray(table, dtype=np.float64)[sites, digits]
    return float(np.dot(np.asarray(coeffs, dtype=np.float64), factors.prod(axis=1)))
