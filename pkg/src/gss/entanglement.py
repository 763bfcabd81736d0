"""Spectra, partial-transpose spectra and bipartition PPT scans."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations, islice
from typing import Iterable

import numpy as np

from .pauli import PauliOperator, check_dense_size, partial_transpose, to_dense

PPT_TOL = 1e-10


@dataclass(frozen=True)
class CutReport:
    subset_size: int
    min_pt_eigenvalue: float
    is_ppt: bool
    representative_subset: tuple[int, ...]


def in_uniform_family(op: PauliOperator) -> bool:
    """True if ``op`` is supported on the identity and the three uniform strings only,
    on an even number of qubits (where those strings commute)."""
    m = op.n_qubits
    if m % 2:
        return False
    allowed = {ch * m for ch in "IXYZ"}
    return all(label in allowed for label in op)


def sector_spectrum(op: PauliOperator) -> list[tuple[float, int]]:
    """Eigenvalues with multiplicities for an operator in the uniform family.

    ``X^m``, ``Y^m`` and ``Z^m`` commute for even ``m`` and their product is
    ``i^m``, so the joint eigenvalues ``(s1, s2, s3)`` obey ``s1 s2 s3 = i^m``.
    Each of the four allowed sectors has dimension ``2^(m-2)``.
    """
    if not in_uniform_family(op):
        raise ValueError("sector_spectrum needs an operator on I and the uniform X/Y/Z strings of even length")
    m = op.n_qubits
    c0 = op.coeff("I" * m)
    cx, cy, cz = (op.coeff(ch * m) for ch in "XYZ")
    product = (-1) ** (m // 2)
    mult = 2 ** (m - 2)
    out = []
    for s1 in (1, -1):
        for s2 in (1, -1):
            s3 = product * s1 * s2
            out.append((c0 + s1 * cx + s2 * cy + s3 * cz, mult))
    out.sort(key=lambda pair: -pair[0])
    return out


def _dense_eigvalsh(op: PauliOperator) -> np.ndarray:
    check_dense_size(op.n_qubits)
    return np.linalg.eigvalsh(to_dense(op))[::-1]


def spectrum(op: PauliOperator, method: str = "auto") -> np.ndarray:
    """All eigenvalues of ``op`` in descending order.

    ``method`` is ``"dense"``, ``"sector"`` or ``"auto"`` (sector formula when
    the operator allows it, dense diagonalisation otherwise).
    """
    if method not in ("auto", "dense", "sector"):
        raise ValueError(f"unknown method {method!r}")
    if method == "dense" or (method == "auto" and not in_uniform_family(op)):
        return _dense_eigvalsh(op)
    pairs = sector_spectrum(op)
    return np.concatenate([np.full(mult, value) for value, mult in pairs])


def min_eigenvalue(op: PauliOperator, method: str = "auto") -> float:
    if method != "dense" and (method == "sector" or in_uniform_family(op)):
        return min(value for value, _ in sector_spectrum(op))
    return float(spectrum(op, "dense")[-1])


def pt_spectrum(op: PauliOperator, subset: Iterable[int], method: str = "auto") -> np.ndarray:
    """Descending eigenvalues of the partial transpose of ``op`` over ``subset``."""
    return spectrum(partial_transpose(op, subset), method)


def is_permutation_invariant(op: PauliOperator, atol: float = 0.0) -> bool:
    """Check invariance under every qubit permutation.

    Adjacent transpositions generate the symmetric group, so it is enough to
    compare each term with its images under those.
    """
    for label, c in op.items():
        for i in range(op.n_qubits - 1):
            if label[i] == label[i + 1]:
                continue
            swapped = label[:i] + label[i + 1] + label[i] + label[i + 2 :]
            if abs(op.coeff(swapped) - c) > atol:
                return False
    return True


def cut_scan(
    op: PauliOperator,
    tol: float = PPT_TOL,
    *,
    max_subsets: int = 256,
    method: str = "auto",
    workers: int | None = None,
) -> list[CutReport]:
    """PPT verdict for every bipartition size ``1 .. m-1``.

    Permutation-invariant inputs are probed on ``{0, ..., k-1}`` only. Other
    inputs are probed on up to ``max_subsets`` subsets per size, and the subset
    with the most negative partial-transpose eigenvalue is reported.
    """
    m = op.n_qubits
    if m < 2:
        raise ValueError("cut_scan needs at least 2 qubits")
    symmetric = is_permutation_invariant(op, atol=1e-15)
    jobs = []
    for k in range(1, m):
        if symmetric:
            subsets = [tuple(range(k))]
        else:
            subsets = list(islice(combinations(range(m), k), max_subsets))
        jobs.extend((k, s) for s in subsets)

    def evaluate(job):
        _, subset = job
        return min_eigenvalue(partial_transpose(op, subset), method)

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(evaluate, jobs))
    else:
        values = [evaluate(job) for job in jobs]

    best: dict[int, tuple[float, tuple[int, ...]]] = {}
    for (k, subset), value in zip(jobs, values):
        if k not in best or value < best[k][0]:
            best[k] = (value, subset)
    return [
        CutReport(k, best[k][0], best[k][0] >= -tol, best[k][1])
        for k in range(1, m)
    ]
