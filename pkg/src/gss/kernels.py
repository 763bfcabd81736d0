"""Backend selection for the hot kernels.

The compiled extension is used when it imports; otherwise the numpy fallback
is used. Setting ``GSS_PURE_PYTHON=1`` forces the fallback.
"""

import os

from . import _kernels_py

if os.environ.get("GSS_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl
        BACKEND = "compiled"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

pauli_to_dense = _impl.pauli_to_dense
dense_to_pauli = _impl.dense_to_pauli
sparse_correlation = _impl.sparse_correlation

__all__ = ["BACKEND", "pauli_to_dense", "dense_to_pauli", "sparse_correlation"]
