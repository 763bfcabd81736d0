"""Sparse Pauli-basis operator algebra.

A :class:`PauliOperator` stores a Hermitian operator on ``m`` qubits as a map
from Pauli strings (labels over ``"IXYZ"``, site 0 leftmost) to real
coefficients, ``A = sum_s c_s P_s``. Density operators therefore carry their
``1/2**m`` normalisation inside the coefficients.
"""

from __future__ import annotations

import json
import os
from functools import cached_property
from types import MappingProxyType
from typing import Iterable, Mapping

import numpy as np

from . import kernels

PAULI_LABELS = "IXYZ"
PRUNE_TOL = 1e-14
DEFAULT_DENSE_LIMIT = 12

SIGMA = np.array(
    [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=np.complex128,
)

_LABEL_INDEX = {ch: i for i, ch in enumerate(PAULI_LABELS)}
_CYCLIC = {(1, 2), (2, 3), (3, 1)}


class DenseLimitError(ValueError):
    """Raised when an operation would build a matrix above the dense qubit limit."""


def dense_limit() -> int:
    """Largest qubit count for which dense matrices are built (``GSS_DENSE_LIMIT``)."""
    raw = os.environ.get("GSS_DENSE_LIMIT")
    if raw is None or raw == "":
        return DEFAULT_DENSE_LIMIT
    try:
        limit = int(raw)
    except ValueError:
        raise ValueError(f"GSS_DENSE_LIMIT must be an integer, got {raw!r}") from None
    if limit < 1:
        raise ValueError(f"GSS_DENSE_LIMIT must be >= 1, got {limit}")
    return limit


def check_dense_size(n_qubits: int, limit: int | None = None) -> None:
    limit = dense_limit() if limit is None else limit
    if n_qubits > limit:
        raise DenseLimitError(
            f"{n_qubits} qubits exceeds the dense limit of {limit} (set GSS_DENSE_LIMIT to raise it)"
        )


def pauli_mul(a: int, b: int) -> tuple[complex, int]:
    """Return ``(phase, c)`` with ``sigma_a @ sigma_b == phase * sigma_c``."""
    if a not in (0, 1, 2, 3) or b not in (0, 1, 2, 3):
        raise ValueError(f"Pauli indices must be in 0..3, got {a}, {b}")
    if a == 0:
        return 1 + 0j, b
    if b == 0:
        return 1 + 0j, a
    if a == b:
        return 1 + 0j, 0
    phase = 1j if (a, b) in _CYCLIC else -1j
    return phase, 6 - a - b


def anticommutes(a: int, b: int) -> bool:
    return pauli_mul(a, b)[0] != pauli_mul(b, a)[0]


def label_to_indices(label: str) -> tuple[int, ...]:
    try:
        return tuple(_LABEL_INDEX[ch] for ch in label)
    except KeyError:
        raise ValueError(f"invalid Pauli label {label!r}; use characters from {PAULI_LABELS}") from None


def indices_to_label(indices: Iterable[int]) -> str:
    try:
        return "".join(PAULI_LABELS[i] for i in indices)
    except (IndexError, TypeError):
        raise ValueError(f"invalid Pauli indices {indices!r}") from None


class PauliOperator:
    """Real-coefficient expansion of a Hermitian operator in the Pauli-string basis.

    Instances are immutable. Coefficients with magnitude below ``prune`` are
    dropped on construction.

    Parameters
    ----------
    n_qubits : int
        Number of qubits, at least 1.
    terms : mapping of str to float, optional
        Pauli label to coefficient.
    prune : float
        Magnitude below which coefficients are discarded.
    """

    def __init__(self, n_qubits: int, terms: Mapping[str, float] | None = None, *, prune: float = PRUNE_TOL):
        n_qubits = int(n_qubits)
        if n_qubits < 1:
            raise ValueError(f"n_qubits must be >= 1, got {n_qubits}")
        clean = {}
        for label, coeff in (terms or {}).items():
            if len(label) != n_qubits:
                raise ValueError(f"label {label!r} has length {len(label)}, expected {n_qubits}")
            label_to_indices(label)
            value = float(coeff)
            if value != 0.0 and abs(value) >= prune:
                clean[label] = value
        self._n_qubits = n_qubits
        self._terms = clean

    @classmethod
    def from_terms(cls, n_qubits: int, pairs: Iterable[tuple[str, float]], *, prune: float = PRUNE_TOL) -> PauliOperator:
        """Build from ``(label, coeff)`` pairs, summing repeated labels."""
        acc: dict[str, float] = {}
        for label, coeff in pairs:
            acc[label] = acc.get(label, 0.0) + float(coeff)
        return cls(n_qubits, acc, prune=prune)

    @classmethod
    def from_label(cls, label: str, coeff: float = 1.0) -> PauliOperator:
        return cls(len(label), {label: coeff})

    @classmethod
    def identity(cls, n_qubits: int, coeff: float = 1.0) -> PauliOperator:
        return cls(n_qubits, {"I" * n_qubits: coeff})

    @classmethod
    def zero(cls, n_qubits: int) -> PauliOperator:
        return cls(n_qubits)

    @classmethod
    def maximally_mixed(cls, n_qubits: int) -> PauliOperator:
        return cls.identity(n_qubits, 1.0 / 2**n_qubits)

    @property
    def n_qubits(self) -> int:
        return self._n_qubits

    @property
    def terms(self) -> Mapping[str, float]:
        return MappingProxyType(self._terms)

    def coeff(self, label: str) -> float:
        return self._terms.get(label, 0.0)

    def trace(self) -> float:
        return 2.0**self._n_qubits * self.coeff("I" * self._n_qubits)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms)

    def items(self):
        return self._terms.items()

    @cached_property
    def _packed(self) -> tuple[np.ndarray, np.ndarray]:
        labels = sorted(self._terms)
        digits = np.array([label_to_indices(s) for s in labels], dtype=np.uint8).reshape(len(labels), self._n_qubits)
        coeffs = np.array([self._terms[s] for s in labels], dtype=np.float64)
        return digits, coeffs

    def _check_same_size(self, other: PauliOperator) -> None:
        if not isinstance(other, PauliOperator):
            raise TypeError(f"expected PauliOperator, got {type(other).__name__}")
        if other.n_qubits != self._n_qubits:
            raise ValueError(f"qubit count mismatch: {self._n_qubits} vs {other.n_qubits}")

    def __add__(self, other: PauliOperator) -> PauliOperator:
        if not isinstance(other, PauliOperator):
            return NotImplemented
        self._check_same_size(other)
        acc = dict(self._terms)
        for label, c in other._terms.items():
            acc[label] = acc.get(label, 0.0) + c
        return PauliOperator(self._n_qubits, acc)

    def __neg__(self) -> PauliOperator:
        return PauliOperator(self._n_qubits, {s: -c for s, c in self._terms.items()})

    def __sub__(self, other: PauliOperator) -> PauliOperator:
        if not isinstance(other, PauliOperator):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar: float) -> PauliOperator:
        if isinstance(scalar, PauliOperator) or isinstance(scalar, complex):
            return NotImplemented
        s = float(scalar)
        return PauliOperator(self._n_qubits, {k: s * c for k, c in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar: float) -> PauliOperator:
        s = float(scalar)
        return PauliOperator(self._n_qubits, {k: c / s for k, c in self._terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PauliOperator):
            return NotImplemented
        return self._n_qubits == other._n_qubits and self._terms == other._terms

    __hash__ = None  # type: ignore[assignment]

    def allclose(self, other: PauliOperator, atol: float = 1e-12) -> bool:
        """Coefficient-wise comparison over the union of both term sets."""
        self._check_same_size(other)
        keys = self._terms.keys() | other._terms.keys()
        return all(abs(self.coeff(k) - other.coeff(k)) <= atol for k in keys)

    def __repr__(self) -> str:
        body = ", ".join(f"{s}: {c:.6g}" for s, c in sorted(self._terms.items()))
        return f"PauliOperator({self._n_qubits}, {{{body}}})"

    def to_dict(self) -> dict:
        return {
            "n_qubits": self._n_qubits,
            "terms": [{"string": s, "coeff": c} for s, c in sorted(self._terms.items())],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> PauliOperator:
        try:
            n_qubits = int(data["n_qubits"])
            pairs = [(str(t["string"]), float(t["coeff"])) for t in data["terms"]]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed operator JSON: {exc}") from None
        return cls.from_terms(n_qubits, pairs, prune=0.0)

    def to_json(self, **kwargs) -> str:
        kwargs.setdefault("sort_keys", True)
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_json(cls, text: str) -> PauliOperator:
        return cls.from_dict(json.loads(text))


def conjugate_by_site_pauli(op: PauliOperator, site: int, k: int) -> PauliOperator:
    """Return ``U op U`` with ``U`` equal to ``sigma_k`` on ``site`` and identity elsewhere.

    Conjugation by a Pauli only flips the sign of the terms whose factor at
    ``site`` anticommutes with ``sigma_k``.
    """
    if not 0 <= site < op.n_qubits:
        raise ValueError(f"site {site} out of range for {op.n_qubits} qubits")
    if k not in (0, 1, 2, 3):
        raise ValueError(f"Pauli index must be in 0..3, got {k}")
    if k == 0:
        return op
    out = {}
    for label, c in op.items():
        out[label] = -c if anticommutes(_LABEL_INDEX[label[site]], k) else c
    return PauliOperator(op.n_qubits, out)


def tensor(a: PauliOperator, b: PauliOperator, *rest: PauliOperator) -> PauliOperator:
    """Tensor product ``a (x) b (x) ...``; ``a`` occupies the leftmost sites."""
    out = {sa + sb: ca * cb for sa, ca in a.items() for sb, cb in b.items()}
    result = PauliOperator(a.n_qubits + b.n_qubits, out)
    for extra in rest:
        result = tensor(result, extra)
    return result


def _validate_subset(op: PauliOperator, subset: Iterable[int]) -> tuple[int, ...]:
    sites = tuple(sorted(set(int(s) for s in subset)))
    for s in sites:
        if not 0 <= s < op.n_qubits:
            raise ValueError(f"site {s} out of range for {op.n_qubits} qubits")
    return sites


def partial_transpose(op: PauliOperator, subset: Iterable[int]) -> PauliOperator:
    """Partial transpose over the sites in ``subset``.

    Transposition fixes I, X, Z and maps Y to -Y, so a coefficient flips sign
    when its string has an odd number of Y factors inside ``subset``.
    """
    sites = _validate_subset(op, subset)
    if not sites:
        return op
    out = {}
    for label, c in op.items():
        ny = sum(1 for s in sites if label[s] == "Y")
        out[label] = -c if ny % 2 else c
    return PauliOperator(op.n_qubits, out)


def permute_sites(op: PauliOperator, perm: Iterable[int]) -> PauliOperator:
    """Relabel qubits so that new site ``i`` holds old site ``perm[i]``."""
    perm = tuple(perm)
    if sorted(perm) != list(range(op.n_qubits)):
        raise ValueError(f"{perm!r} is not a permutation of {op.n_qubits} sites")
    return PauliOperator(op.n_qubits, {"".join(s[p] for p in perm): c for s, c in op.items()})


def expectation(state: PauliOperator, observable: PauliOperator) -> float:
    """``Tr(state @ observable)`` from coefficient overlap, with no dense matrices."""
    state._check_same_size(observable)
    small, large = (state, observable) if len(state) <= len(observable) else (observable, state)
    total = sum(c * large.coeff(s) for s, c in small.items())
    return 2.0**state.n_qubits * total


def to_dense(op: PauliOperator, limit: int | None = None) -> np.ndarray:
    """Dense ``2**m x 2**m`` complex matrix of ``op``."""
    check_dense_size(op.n_qubits, limit)
    digits, coeffs = op._packed
    return kernels.pauli_to_dense(digits, coeffs)


def from_dense(mat: np.ndarray, tol: float = 1e-12, limit: int | None = None) -> PauliOperator:
    """Expand a Hermitian matrix in the Pauli basis, ``c_s = Tr(M P_s) / 2**m``.

    Coefficients below ``tol`` in magnitude are dropped.
    """
    mat = np.asarray(mat)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {mat.shape}")
    dim = mat.shape[0]
    if dim < 2 or dim & (dim - 1):
        raise ValueError(f"dimension {dim} is not a power of two >= 2")
    n_qubits = dim.bit_length() - 1
    check_dense_size(n_qubits, limit)
    mat = mat.astype(np.complex128, copy=False)
    skew = np.max(np.abs(mat - mat.conj().T))
    if skew > tol:
        raise ValueError(f"matrix is not Hermitian (max |M - M^H| = {skew:.3g})")
    flat = kernels.dense_to_pauli(mat)
    out = {}
    for idx in np.flatnonzero(np.abs(flat) >= tol):
        digits = np.unravel_index(idx, (4,) * n_qubits)
        out[indices_to_label(int(d) for d in digits)] = flat[idx].real
    return PauliOperator(n_qubits, out, prune=tol)
