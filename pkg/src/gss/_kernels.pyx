# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same contracts as ``gss._kernels_py``."""

import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef unsigned long long u64

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


def pauli_to_dense(digits, coeffs):
    cdef const unsigned char[:, ::1] dg = np.ascontiguousarray(digits, dtype=np.uint8)
    cdef const double[::1] cf = np.ascontiguousarray(coeffs, dtype=np.float64)
    cdef Py_ssize_t n_terms = dg.shape[0]
    cdef Py_ssize_t n_qubits = dg.shape[1]
    cdef Py_ssize_t dim = (<Py_ssize_t>1) << n_qubits
    out = np.zeros((dim, dim), dtype=np.complex128)
    cdef double complex[:, ::1] o = out
    cdef Py_ssize_t t, j, r
    cdef u64 x, z, bit
    cdef int ny
    cdef double complex phase
    with nogil:
        for t in range(n_terms):
            x = 0
            z = 0
            ny = 0
            for j in range(n_qubits):
                bit = (<u64>1) << (n_qubits - 1 - j)
                if dg[t, j] == 1:
                    x |= bit
                elif dg[t, j] == 2:
                    x |= bit
                    z |= bit
                    ny += 1
                elif dg[t, j] == 3:
                    z |= bit
            ny = ny % 4
            if ny == 0:
                phase = cf[t]
            elif ny == 1:
                phase = -1j * cf[t]
            elif ny == 2:
                phase = -cf[t]
            else:
                phase = 1j * cf[t]
            for r in range(dim):
                if __builtin_popcountll(<u64>r & z) & 1:
                    o[r, <Py_ssize_t>(<u64>r ^ x)] -= phase
                else:
                    o[r, <Py_ssize_t>(<u64>r ^ x)] += phase
    return out


cdef inline u64 _spread(u64 v) nogil:
    cdef u64 out = 0
    cdef int b = 0
    while v:
        if v & 1:
            out |= (<u64>1) << (2 * b)
        v >>= 1
        b += 1
    return out


def dense_to_pauli(mat):
    cdef const double complex[:, ::1] m = np.ascontiguousarray(mat, dtype=np.complex128)
    cdef Py_ssize_t dim = m.shape[0]
    cdef int n_qubits = 0
    while ((<Py_ssize_t>1) << n_qubits) < dim:
        n_qubits += 1
    out = np.empty(dim * dim, dtype=np.complex128)
    cdef double complex[::1] v = out
    cdef Py_ssize_t r, c, stride, base, off, i0
    cdef u64 sr
    cdef double complex a0, a1, a2, a3
    cdef int b
    with nogil:
        for r in range(dim):
            sr = _spread(<u64>r) << 1
            for c in range(dim):
                v[<Py_ssize_t>(sr | _spread(<u64>c))] = m[r, c]
        stride = 1
        for b in range(n_qubits):
            base = 0
            while base < dim * dim:
                for off in range(stride):
                    i0 = base + off
                    a0 = v[i0]
                    a1 = v[i0 + stride]
                    a2 = v[i0 + 2 * stride]
                    a3 = v[i0 + 3 * stride]
                    v[i0] = 0.5 * (a0 + a3)
                    v[i0 + stride] = 0.5 * (a1 + a2)
                    v[i0 + 2 * stride] = 0.5j * (a1 - a2)
                    v[i0 + 3 * stride] = 0.5 * (a0 - a3)
                base += 4 * stride
            stride *= 4
    return out


def sparse_correlation(digits, coeffs, table):
    cdef const unsigned char[:, ::1] dg = np.ascontiguousarray(digits, dtype=np.uint8)
    cdef const double[::1] cf = np.ascontiguousarray(coeffs, dtype=np.float64)
    cdef const double[:, ::1] tb = np.ascontiguousarray(table, dtype=np.float64)
    cdef Py_ssize_t t, j
    cdef double total = 0.0, prod
    with nogil:
        for t in range(dg.shape[0]):
            prod = cf[t]
            for j in range(dg.shape[1]):
                prod *= tb[j, dg[t, j]]
                if prod == 0.0:
                    break
            total += prod
    return total
