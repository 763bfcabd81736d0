"""Dichotomic observables, correlation functions and the CHSH-type expression
for ``2n`` parties."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .pauli import PauliOperator
from .states import noisy_gss

AXIS_TOL = 1e-9
CLASSICAL_BOUND = 2.0
TSIRELSON_BOUND = 2.0 * np.sqrt(2.0)


@dataclass(frozen=True)
class Axis:
    x: float
    y: float
    z: float

    def __post_init__(self):
        norm = np.sqrt(self.x**2 + self.y**2 + self.z**2)
        if abs(norm - 1.0) > AXIS_TOL:
            raise ValueError(f"axis ({self.x}, {self.y}, {self.z}) is not a unit vector (norm {norm:.12g})")

    @classmethod
    def from_vector(cls, v: Iterable[float], normalize: bool = False) -> Axis:
        v = np.asarray(list(v), dtype=float)
        if v.shape != (3,):
            raise ValueError(f"axis needs 3 components, got {v.shape}")
        if normalize:
            v = v / np.linalg.norm(v)
        return cls(float(v[0]), float(v[1]), float(v[2]))

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])


X_AXIS = Axis(1.0, 0.0, 0.0)
Y_AXIS = Axis(0.0, 1.0, 0.0)
Z_AXIS = Axis(0.0, 0.0, 1.0)


@dataclass(frozen=True)
class BellSettings:
    """Two measurement axes per party; ``per_site[j] = (axis for k=1, axis for k=2)``."""

    per_site: tuple[tuple[Axis, Axis], ...]

    def __post_init__(self):
        object.__setattr__(self, "per_site", tuple((a, b) for a, b in self.per_site))
        if not self.per_site:
            raise ValueError("settings need at least one site")

    def __len__(self) -> int:
        return len(self.per_site)

    def to_dict(self) -> dict:
        return {"settings": [[list(a.as_array()), list(b.as_array())] for a, b in self.per_site]}

    @classmethod
    def from_dict(cls, data) -> BellSettings:
        try:
            rows = data["settings"]
            return cls(tuple((Axis.from_vector(a), Axis.from_vector(b)) for a, b in rows))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed settings JSON: {exc}") from None

    @classmethod
    def from_json(cls, text: str) -> BellSettings:
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class SweepRow:
    p: float
    chsh_value: float
    violates: bool


def observable_from_axis(axis: Axis) -> PauliOperator:
    """Single-qubit observable ``x X + y Y + z Z`` with eigenvalues +-1."""
    return PauliOperator(1, {"X": axis.x, "Y": axis.y, "Z": axis.z})


def canonical_settings(n_qubits: int) -> BellSettings:
    """Settings that reach the maximal value on the generalised Smolin states:
    ``(x, y)`` on every site but the last, ``((x+y)/sqrt2, (x-y)/sqrt2)`` on the last."""
    if n_qubits < 2 or n_qubits % 2:
        raise ValueError(f"need an even qubit count >= 2, got {n_qubits}")
    h = 1.0 / np.sqrt(2.0)
    last = (Axis(h, h, 0.0), Axis(h, -h, 0.0))
    return BellSettings(tuple([(X_AXIS, Y_AXIS)] * (n_qubits - 1) + [last]))


def correlation(state: PauliOperator, axes: Sequence[Axis]) -> float:
    """``Tr(state  n_1.sigma (x) ... (x) n_m.sigma)``.

    The product observable has coefficient ``prod_j n_j[s_j]`` on string ``s``
    (zero if any factor is the identity), so only the state's stored strings
    are visited.
    """
    if len(axes) != state.n_qubits:
        raise ValueError(f"{len(axes)} axes given for {state.n_qubits} qubits")
    table = np.zeros((state.n_qubits, 4))
    for j, a in enumerate(axes):
        table[j, 1:] = (a.x, a.y, a.z)
    digits, coeffs = state._packed
    return 2.0**state.n_qubits * kernels.sparse_correlation(digits, coeffs, table)


def correlation_for_choice(state: PauliOperator, settings: BellSettings, choice: Sequence[int]) -> float:
    """Correlation with observable ``choice[j]`` (1 or 2) on site ``j``."""
    if len(choice) != len(settings):
        raise ValueError(f"choice has length {len(choice)}, settings have {len(settings)} sites")
    if any(k not in (1, 2) for k in choice):
        raise ValueError(f"choices must be 1 or 2, got {choice!r}")
    return correlation(state, [settings.per_site[j][k - 1] for j, k in enumerate(choice)])


def chsh_value(state: PauliOperator, settings: BellSettings) -> float:
    """``E(1..1,1) + E(1..1,2) + E(2..2,1) - E(2..2,2)``; classical bound 2."""
    if len(settings) != state.n_qubits:
        raise ValueError(f"settings have {len(settings)} sites, state has {state.n_qubits} qubits")
    rest = state.n_qubits - 1
    ones, twos = [1] * rest, [2] * rest
    return (
        correlation_for_choice(state, settings, ones + [1])
        + correlation_for_choice(state, settings, ones + [2])
        + correlation_for_choice(state, settings, twos + [1])
        - correlation_for_choice(state, settings, twos + [2])
    )


def violates(value: float) -> bool:
    return abs(value) > CLASSICAL_BOUND


def sweep(n: int, p_grid: Iterable[float]) -> list[SweepRow]:
    """CHSH value of ``noisy_gss(n, p)`` at canonical settings for each ``p``, sorted by ``p``."""
    grid = sorted(float(p) for p in p_grid)
    for p in grid:
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"grid value {p!r} outside [0, 1]")
    settings = canonical_settings(2 * n)
    rows = []
    for p in grid:
        value = chsh_value(noisy_gss(n, p), settings)
        rows.append(SweepRow(p, value, violates(value)))
    return rows
