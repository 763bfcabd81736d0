import os

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gss import _kernels_py, kernels
from oracles import all_labels, operator_matrix, string_matrix

try:
    from gss import _kernels as compiled
except ImportError:
    compiled = None

needs_compiled = pytest.mark.skipif(compiled is None, reason="compiled extension not built")
BACKENDS = [
    pytest.param(_kernels_py, id="python"),
    pytest.param(compiled, id="compiled", marks=needs_compiled),
]


def random_terms(rng, n_qubits, n_terms):
    labels = rng.choice(all_labels(n_qubits), size=n_terms, replace=False)
    return {str(s): float(c) for s, c in zip(labels, rng.normal(size=n_terms))}


def pack(terms, n_qubits):
    labels = sorted(terms)
    digits = np.array([["IXYZ".index(ch) for ch in s] for s in labels], dtype=np.uint8).reshape(-1, n_qubits)
    return digits, np.array([terms[s] for s in labels])


@pytest.mark.parametrize("impl", BACKENDS)
@pytest.mark.parametrize("n_qubits", [1, 2, 3, 4])
def test_pauli_to_dense_matches_kron(impl, n_qubits):
    rng = np.random.default_rng(n_qubits)
    terms = random_terms(rng, n_qubits, min(4**n_qubits, 10))
    digits, coeffs = pack(terms, n_qubits)
    np.testing.assert_allclose(impl.pauli_to_dense(digits, coeffs), operator_matrix(terms, n_qubits), atol=1e-13)


@pytest.mark.parametrize("impl", BACKENDS)
@pytest.mark.parametrize("n_qubits", [1, 2, 3])
def test_dense_to_pauli_matches_trace_formula(impl, n_qubits):
    rng = np.random.default_rng(10 + n_qubits)
    dim = 2**n_qubits
    mat = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    labels = all_labels(n_qubits)
    expected = np.array([np.trace(mat @ string_matrix(s)) / dim for s in labels])
    np.testing.assert_allclose(impl.dense_to_pauli(mat), expected, atol=1e-13)


@pytest.mark.parametrize("impl", BACKENDS)
def test_sparse_correlation_small(impl):
    digits = np.array([[1, 1], [2, 3], [0, 1]], dtype=np.uint8)
    coeffs = np.array([0.5, -2.0, 7.0])
    table = np.array([[0.0, 0.3, 0.4, 0.5], [0.0, -1.0, 2.0, 3.0]])
    expected = 0.5 * 0.3 * -1.0 + -2.0 * 0.4 * 3.0 + 0.0
    assert impl.sparse_correlation(digits, coeffs, table) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize("impl", BACKENDS)
def test_empty_inputs(impl):
    digits = np.zeros((0, 3), dtype=np.uint8)
    assert not impl.pauli_to_dense(digits, np.zeros(0)).any()
    assert impl.sparse_correlation(digits, np.zeros(0), np.zeros((3, 4))) == 0.0


@needs_compiled
@settings(max_examples=40, deadline=None)
@given(
    n_qubits=st.integers(1, 5),
    seed=st.integers(0, 2**32 - 1),
)
def test_backends_agree(n_qubits, seed):
    rng = np.random.default_rng(seed)
    n_terms = int(rng.integers(1, min(4**n_qubits, 30) + 1))
    terms = random_terms(rng, n_qubits, n_terms)
    digits, coeffs = pack(terms, n_qubits)
    dense_c = compiled.pauli_to_dense(digits, coeffs)
    np.testing.assert_allclose(dense_c, _kernels_py.pauli_to_dense(digits, coeffs), atol=1e-12)
    np.testing.assert_allclose(compiled.dense_to_pauli(dense_c), _kernels_py.dense_to_pauli(dense_c), atol=1e-12)
    table = rng.normal(size=(n_qubits, 4))
    assert compiled.sparse_correlation(digits, coeffs, table) == pytest.approx(
        _kernels_py.sparse_correlation(digits, coeffs, table), rel=1e-12, abs=1e-12
    )


def test_backend_selected():
    forced = os.environ.get("GSS_PURE_PYTHON", "") not in ("", "0")
    expected = "python" if forced or compiled is None else "compiled"
    assert kernels.BACKEND == expected
