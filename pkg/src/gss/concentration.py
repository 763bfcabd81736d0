"""Remote information concentration through a generalised Smolin channel.

The telecloned qubit lives in the optimal cloning state on ``N = 2M - 1``
qubits (``M - 1`` ancillas followed by ``M`` clones). Each of those qubits is
Bell-measured together with one qubit of a ``2M``-qubit channel state; the
remaining channel qubit belongs to Charlie, who applies a Pauli correction
that depends on the ``N`` outcomes.

All quantities are computed exactly by enumerating the ``4**N`` outcomes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from math import comb

import numpy as np

from .pauli import SIGMA, PauliOperator, permute_sites, to_dense
from .states import BELL_KETS, gss_closed

DENSE_PROTOCOL_LIMIT = 3
PROBABILITY_FLOOR = 1e-12
NORM_TOL = 1e-12
CHANNEL_TOL = 1e-10

_BELL_MATRICES = BELL_KETS.reshape(4, 2, 2)


@dataclass(frozen=True)
class CloningParams:
    """Number of clones ``M`` and the input qubit ``a|0> + b|1>``."""

    M: int
    a: complex
    b: complex

    def __post_init__(self):
        if not isinstance(self.M, (int, np.integer)) or self.M < 2:
            raise ValueError(f"M must be an integer >= 2, got {self.M!r}")
        norm = abs(self.a) ** 2 + abs(self.b) ** 2
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"|a|^2 + |b|^2 = {norm!r}, expected 1")

    @property
    def n_measured(self) -> int:
        return 2 * self.M - 1

    def input_ket(self) -> np.ndarray:
        return np.array([self.a, self.b], dtype=np.complex128)


@dataclass
class Outcome:
    outcome: tuple[int, ...]
    probability: float
    corrected_state: np.ndarray | None
    fidelity: float | None


@dataclass
class ConcentrationResult:
    params: CloningParams
    outcomes: list[Outcome]
    average_state: np.ndarray
    reference_state: np.ndarray = field(repr=False)

    @property
    def total_probability(self) -> float:
        return float(sum(o.probability for o in self.outcomes))

    @property
    def min_fidelity(self) -> float:
        return min(o.fidelity for o in self.outcomes if o.fidelity is not None)

    @property
    def reference_deviation(self) -> float:
        return float(np.max(np.abs(self.average_state - self.reference_state)))

    def to_dict(self, emit: str = "summary") -> dict:
        if emit not in ("summary", "full"):
            raise ValueError(f"emit must be 'summary' or 'full', got {emit!r}")
        fids = [o.fidelity for o in self.outcomes if o.fidelity is not None]
        out = {
            "M": self.params.M,
            "input": _complex_to_json(self.params.input_ket()),
            "n_outcomes": len(self.outcomes),
            "total_probability": self.total_probability,
            "min_fidelity": min(fids) if fids else None,
            "max_fidelity": max(fids) if fids else None,
            "input_average_fidelity": fidelity(self.average_state, self.params.input_ket()),
            "average_state": _complex_to_json(self.average_state),
            "reference_state": _complex_to_json(self.reference_state),
            "reference_deviation": self.reference_deviation,
        }
        if emit == "full":
            out["outcomes"] = [
                {
                    "outcome": "".join(str(k) for k in o.outcome),
                    "probability": o.probability,
                    "fidelity": o.fidelity,
                    "corrected_state": None if o.corrected_state is None else _complex_to_json(o.corrected_state),
                }
                for o in self.outcomes
            ]
        return out


def _complex_to_json(arr: np.ndarray) -> dict:
    arr = np.asarray(arr)
    return {"re": arr.real.tolist(), "im": arr.imag.tolist()}


def symmetric_basis_state(M: int, j: int) -> np.ndarray:
    """Normalised equal superposition of all ``M``-bit strings with ``j`` ones."""
    if M < 1:
        raise ValueError(f"M must be >= 1, got {M}")
    if not 0 <= j <= M:
        raise ValueError(f"j must be in 0..{M}, got {j}")
    vec = np.zeros(2**M, dtype=np.complex128)
    amp = 1.0 / np.sqrt(comb(M, j))
    for ones in combinations(range(M), j):
        vec[sum(1 << (M - 1 - q) for q in ones)] = amp
    return vec


def cloning_amplitudes(M: int) -> np.ndarray:
    """``alpha_j = sqrt(2(M-j) / (M(M+1)))`` for ``j = 0 .. M-1``."""
    j = np.arange(M)
    return np.sqrt(2.0 * (M - j) / (M * (M + 1)))


def cloning_components(M: int) -> tuple[np.ndarray, np.ndarray]:
    """The two logical states ``|phi_0>``, ``|phi_1>`` of the optimal cloning state."""
    if M < 2:
        raise ValueError(f"M must be >= 2, got {M}")
    alpha = cloning_amplitudes(M)
    phi0 = sum(
        alpha[j] * np.kron(symmetric_basis_state(M - 1, j), symmetric_basis_state(M, j)) for j in range(M)
    )
    phi1 = sum(
        alpha[j] * np.kron(symmetric_basis_state(M - 1, M - 1 - j), symmetric_basis_state(M, M - j))
        for j in range(M)
    )
    return phi0, phi1


def cloning_state(params: CloningParams) -> np.ndarray:
    """``a|phi_0> + b|phi_1>`` on ``2M - 1`` qubits, ancillas first."""
    phi0, phi1 = cloning_components(params.M)
    return params.a * phi0 + params.b * phi1


def fidelity(rho: np.ndarray, psi: np.ndarray) -> float:
    """``<psi|rho|psi>`` for a qubit density matrix and a normalised ket."""
    rho = np.asarray(rho, dtype=np.complex128)
    psi = np.asarray(psi, dtype=np.complex128)
    if rho.shape != (2, 2) or psi.shape != (2,):
        raise ValueError(f"expected a 2x2 matrix and a 2-vector, got {rho.shape} and {psi.shape}")
    if abs(np.vdot(psi, psi).real - 1.0) > 1e-9:
        raise ValueError("ket is not normalised")
    if abs(np.trace(rho) - 1.0) > 1e-9 or np.max(np.abs(rho - rho.conj().T)) > 1e-9:
        raise ValueError("rho is not a unit-trace Hermitian matrix")
    return float(np.vdot(psi, rho @ psi).real)


def correction_unitary(M: int, outcome: tuple[int, ...]) -> np.ndarray:
    """Charlie's correction ``sigma_2^{(M+1) mod 2} sigma_{k_1} ... sigma_{k_N}``."""
    u = SIGMA[2].copy() if (M + 1) % 2 else np.eye(2, dtype=np.complex128)
    for k in outcome:
        u = u @ SIGMA[k]
    return u


def uniform_cloning_correlations(params: CloningParams) -> np.ndarray:
    """``[<X..X>, <Y..Y>, <Z..Z>]`` of the cloning state on its ``2M - 1`` qubits."""
    psi = cloning_state(params)
    n = params.n_measured
    out = []
    for ch in "XYZ":
        mat = to_dense(PauliOperator.from_label(ch * n))
        out.append(np.vdot(psi, mat @ psi).real)
    return np.array(out)


def averaged_output_formula(params: CloningParams) -> np.ndarray:
    """Closed-form outcome-averaged state of Charlie's qubit after correction."""
    lam0 = 1.0
    lam = uniform_cloning_correlations(params)
    bloch = np.einsum("i,ijk->jk", lam, SIGMA[1:])
    flip = SIGMA[2] if (params.M + 1) % 2 else np.eye(2)
    sign = (-1) ** (params.M + 1)
    return 0.5 * (lam0 * np.eye(2) + sign * flip @ bloch @ flip)


def _channel_matrix(channel: PauliOperator, M: int, charlie_site: int) -> np.ndarray:
    if channel.n_qubits != 2 * M:
        raise ValueError(f"channel has {channel.n_qubits} qubits, expected {2 * M}")
    if not 0 <= charlie_site < 2 * M:
        raise ValueError(f"charlie_site {charlie_site} out of range")
    order = [q for q in range(2 * M) if q != charlie_site] + [charlie_site]
    rho = to_dense(permute_sites(channel, order))
    if abs(np.trace(rho).real - 1.0) > CHANNEL_TOL:
        raise ValueError(f"channel trace is {np.trace(rho).real!r}, expected 1")
    if np.linalg.eigvalsh(rho)[0] < -CHANNEL_TOL:
        raise ValueError("channel is not positive semidefinite")
    return rho


def run_concentration(
    params: CloningParams,
    channel: PauliOperator | None = None,
    *,
    charlie_site: int | None = None,
    limit: int = DENSE_PROTOCOL_LIMIT,
) -> ConcentrationResult:
    """Enumerate all Bell-measurement outcomes and Charlie's corrected states.

    Protocol qubit ``i`` is measured jointly with channel qubit ``i`` in
    channel order with ``charlie_site`` removed; ``charlie_site`` defaults to
    the last channel qubit. ``channel`` defaults to ``gss_closed(M)``.
    """
    M = params.M
    if M > limit:
        raise ValueError(f"M = {M} exceeds the dense protocol limit {limit}")
    if channel is None:
        channel = gss_closed(M)
    if charlie_site is None:
        charlie_site = 2 * M - 1
    n = params.n_measured
    rho = _channel_matrix(channel, M, charlie_site).reshape(2**n, 2, 2**n, 2)
    psi = cloning_state(params)
    target = params.input_ket()

    outcomes = []
    average = np.zeros((2, 2), dtype=np.complex128)
    for ks in product(range(4), repeat=n):
        bell = _BELL_MATRICES[ks[0]]
        for k in ks[1:]:
            bell = np.kron(bell, _BELL_MATRICES[k])
        # <B| (|psi> (x) 1) = sum_y u[y] <y| on the channel qubits
        u = bell.conj().T @ psi
        charlie = np.einsum("y,ycze,z->ce", u, rho, u.conj())
        corr = correction_unitary(M, ks)
        corrected = corr @ charlie @ corr.conj().T
        prob = float(np.trace(corrected).real)
        average += corrected
        if prob < PROBABILITY_FLOOR:
            outcomes.append(Outcome(ks, prob, None, None))
            continue
        state = corrected / prob
        outcomes.append(Outcome(ks, prob, state, float(np.vdot(target, state @ target).real)))

    return ConcentrationResult(params, outcomes, average, averaged_output_formula(params))
