"""Batch profile kernel over many states.

``profile_table(amps)`` maps an (N, 8) complex array of normalized states to
an (N, 18) float array with the columns in :data:`COLUMNS`. The compiled
Cython kernel is used when it was built; otherwise the numpy fallback.
"""
from __future__ import annotations

import numpy as np

from triresource.errors import NormalizationError
from triresource.kernels import _fallback

COLUMNS = (
    "ggm", "gmc", "fill", "coherence",
    "s_ab", "s_ac", "s_bc", "s_max",
    "a", "b", "c", "q",
    "p_a", "p_b", "p_c",
    "p_bc", "p_ac", "p_ab",
)
COL = {name: i for i, name in enumerate(COLUMNS)}

try:
    from triresource.kernels import _core
except ImportError:
    _core = None

BACKENDS = {"python": _fallback.profile_table}
if _core is not None:
    BACKENDS["cython"] = _core.profile_table

BACKEND = "cython" if _core is not None else "python"


def use_backend(name: str) -> None:
    """Select the kernel used by :func:`profile_table`."""
    global BACKEND
    if name not in BACKENDS:
        raise ValueError(f"backend {name!r} unavailable; have {sorted(BACKENDS)}")
    BACKEND = name


def profile_table(amps: np.ndarray, tol: float = 1e-12, backend: str | None = None) -> np.ndarray:
    amps = np.asarray(amps, dtype=np.complex128)
    if amps.ndim != 2 or amps.shape[1] != 8:
        raise ValueError(f"expected an (N, 8) amplitude array, got {amps.shape}")
    if amps.size:
        deviation = float(np.max(np.abs(np.sum(amps.real**2 + amps.imag**2, axis=1) - 1.0)))
        if not deviation <= tol:
            raise NormalizationError(deviation, tol)
    return BACKENDS[backend or BACKEND](amps, tol)
