"""Generalised Smolin states in the sparse Pauli representation."""

from .kernels import BACKEND
from .pauli import (
    DenseLimitError,
    PauliOperator,
    conjugate_by_site_pauli,
    expectation,
    from_dense,
    partial_transpose,
    pauli_mul,
    tensor,
    to_dense,
)
from .states import (
    GssParams,
    bell_state,
    eta,
    gss_closed,
    gss_recursive,
    noisy_gss,
    separable_third,
)
from .entanglement import CutReport, cut_scan, pt_spectrum, spectrum
from .bell import Axis, BellSettings, SweepRow, canonical_settings, chsh_value, correlation, sweep
from .concentration import CloningParams, ConcentrationResult, cloning_state, fidelity, run_concentration

__version__ = "0.1.0"
