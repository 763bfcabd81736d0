"""Constructors for Bell states, (generalised) Smolin states and their noisy
and separable relatives, all in the sparse Pauli representation."""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .pauli import PauliOperator, conjugate_by_site_pauli, tensor

TRACE_TOL = 1e-13

_SQRT_HALF = 1.0 / np.sqrt(2.0)

# Bell basis indexed so that sigma_l on the second qubit maps index 0 to l.
BELL_KETS = np.array(
    [
        [0, _SQRT_HALF, -_SQRT_HALF, 0],  # psi^- = (|01> - |10>)/sqrt2
        [_SQRT_HALF, 0, 0, -_SQRT_HALF],  # phi^- = (|00> - |11>)/sqrt2
        [_SQRT_HALF, 0, 0, _SQRT_HALF],  # phi^+ = (|00> + |11>)/sqrt2
        [0, _SQRT_HALF, _SQRT_HALF, 0],  # psi^+ = (|01> + |10>)/sqrt2
    ],
    dtype=np.complex128,
)

# Diagonal of the correlation matrix t_ij = Tr(rho sigma_i (x) sigma_j) per Bell state.
_BELL_T = np.array(
    [
        [-1.0, -1.0, -1.0],
        [-1.0, 1.0, 1.0],
        [1.0, -1.0, 1.0],
        [1.0, 1.0, -1.0],
    ]
)


@dataclass(frozen=True)
class GssParams:
    """Size and noise weight of a (noisy) generalised Smolin state on ``2n`` qubits."""

    n: int
    p: float = 1.0

    def __post_init__(self):
        _check_n(self.n)
        _check_p(self.p)

    @property
    def n_qubits(self) -> int:
        return 2 * self.n


def _check_n(n: int) -> None:
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 1:
        raise ValueError(f"n must be an integer >= 1, got {n!r}")


def _check_p(p: float) -> None:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p!r}")


def _finalize(op: PauliOperator) -> PauliOperator:
    tr = op.trace()
    if os.environ.get("GSS_DEBUG", "") not in ("", "0"):
        return op / tr
    if abs(tr - 1.0) > TRACE_TOL:
        raise RuntimeError(f"constructed state has trace {tr!r}, expected 1")
    return op


def t_diagonal(l: int) -> np.ndarray:
    """Correlation-matrix diagonal of Bell state ``l``."""
    if l not in (0, 1, 2, 3):
        raise ValueError(f"Bell index must be in 0..3, got {l!r}")
    return _BELL_T[l].copy()


def uniform_correlations(op: PauliOperator) -> np.ndarray:
    """``[Tr(op X..X), Tr(op Y..Y), Tr(op Z..Z)]``, the uniform-string correlations."""
    m = op.n_qubits
    return np.array([2.0**m * op.coeff(ch * m) for ch in "XYZ"])


def bell_state(l: int) -> PauliOperator:
    """Density operator of Bell state ``l`` (0: psi^-, 1: phi^-, 2: phi^+, 3: psi^+)."""
    t = t_diagonal(l)
    terms = {"II": 0.25, "XX": 0.25 * t[0], "YY": 0.25 * t[1], "ZZ": 0.25 * t[2]}
    return _finalize(PauliOperator(2, terms))


def gss_recursive(n: int) -> PauliOperator:
    """Generalised Smolin state on ``2n`` qubits via the doubling recursion.

    Starting from the singlet, each step mixes the four Pauli-conjugated copies
    (conjugation on the last site) of the current state, each paired with the
    matching Bell state on two fresh qubits.
    """
    _check_n(n)
    singlet = bell_state(0)
    rho = singlet
    for _ in range(n - 1):
        last = rho.n_qubits - 1
        acc = PauliOperator.zero(rho.n_qubits + 2)
        for i in range(4):
            acc = acc + tensor(conjugate_by_site_pauli(rho, last, i), conjugate_by_site_pauli(singlet, 1, i))
        rho = acc * 0.25
    return _finalize(rho)


def gss_closed(n: int) -> PauliOperator:
    """Generalised Smolin state ``(I + (-1)^n sum_i sigma_i^{(x)2n}) / 2^{2n}``."""
    _check_n(n)
    return noisy_gss(n, 1.0)


def noisy_gss(n: int, p: float) -> PauliOperator:
    """Mixture ``(1-p) I/2^{2n} + p rho_{2n}`` of white noise and the GSS."""
    _check_n(n)
    _check_p(p)
    m = 2 * n
    norm = 1.0 / 2.0**m
    weight = p * (-1) ** n * norm
    terms = {"I" * m: norm}
    terms.update({ch * m: weight for ch in "XYZ"})
    return _finalize(PauliOperator(m, terms))


def projector(k: int, sign: int) -> PauliOperator:
    """Single-qubit projector ``(I + sign sigma_k)/2`` onto an eigenvector of ``sigma_k``."""
    if k not in (1, 2, 3):
        raise ValueError(f"k must be in 1..3, got {k!r}")
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")
    label = "XYZ"[k - 1]
    return PauliOperator(1, {"I": 0.5, label: 0.5 * sign})


def eta(k: int, n: int, sign: int) -> PauliOperator:
    """Fully separable state ``(I^{(x)n} + sign sigma_k^{(x)n}) / 2^n``.

    Built as an explicit mixture of products of ``sigma_k`` eigenprojectors,
    appending one qubit at a time.
    """
    _check_n(n)
    plus, minus = projector(k, 1), projector(k, -1)
    eta_plus, eta_minus = plus, minus
    for _ in range(n - 1):
        eta_plus, eta_minus = (
            0.5 * (tensor(eta_plus, plus) + tensor(eta_minus, minus)),
            0.5 * (tensor(eta_plus, minus) + tensor(eta_minus, plus)),
        )
    return _finalize(eta_plus if sign == 1 else eta_minus)


def separable_third(n: int) -> PauliOperator:
    """Separable decomposition of ``noisy_gss(n, 1/3)`` into products of eta states."""
    _check_n(n)
    acc = PauliOperator.zero(2 * n)
    for k in (1, 2, 3):
        ep, em = eta(k, n, 1), eta(k, n, -1)
        if n % 2:
            acc = acc + tensor(ep, em) + tensor(em, ep)
        else:
            acc = acc + tensor(em, em) + tensor(ep, ep)
    return _finalize(acc / 6.0)


def build(params: GssParams, form: str = "closed") -> PauliOperator:
    """Dispatch used by the CLI ``build`` command."""
    if form == "recursive":
        return gss_recursive(params.n)
    if form == "closed":
        return gss_closed(params.n)
    if form == "noisy":
        return noisy_gss(params.n, params.p)
    if form == "separable-third":
        return separable_third(params.n)
    raise ValueError(f"unknown form {form!r}")
