"""Fixed-size linear algebra for three-qubit pure states.

Only what the measures need: one- and two-qubit marginals, purities,
closed-form 2x2 spectra and Pauli correlation matrices. Density matrices are
plain ``numpy`` complex arrays of shape (2, 2) or (4, 4).
"""
from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from triresource.config import DEFAULT_TOLERANCES, Tolerances, clamp
from triresource.errors import HermiticityError, NormalizationError, PositivityError

QUBITS = ("A", "B", "C")
PAIRS = ("AB", "AC", "BC")

PAULI = np.array(
    [
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)

# einsum subscripts on the (2,2,2) amplitude tensor, axes ordered A, B, C
_SINGLE = {"A": "abc,xbc->ax", "B": "abc,axc->bx", "C": "abc,abx->cx"}
_PAIR = {"AB": "abc,xyc->abxy", "AC": "abc,xbz->acxz", "BC": "abc,ayz->bcyz"}

# amplitude indices of the two rows of the 2x4 matrix psi[q | rest] for each qubit cut
CUT_ROWS = {
    "A": ((0, 1, 2, 3), (4, 5, 6, 7)),
    "B": ((0, 1, 4, 5), (2, 3, 6, 7)),
    "C": ((0, 2, 4, 6), (1, 3, 5, 7)),
}
COLUMN_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


class MarginalSpectrum(NamedTuple):
    major: float
    minor: float


def amplitude_tensor(state, tol: float = DEFAULT_TOLERANCES.structural) -> np.ndarray:
    """Return the amplitudes of ``state`` as a (2, 2, 2) tensor indexed [a, b, c].

    ``state`` may be a :class:`~triresource.states.PureState3` or any
    length-8 sequence; the latter must already be normalized.
    """
    amps = np.asarray(getattr(state, "amplitudes", state), dtype=complex).reshape(-1)
    if amps.shape != (8,):
        raise ValueError(f"expected 8 amplitudes, got {amps.size}")
    if not np.all(np.isfinite(amps)):
        raise ValueError("amplitudes must be finite")
    deviation = abs(float(np.vdot(amps, amps).real) - 1.0)
    if deviation > tol:
        raise NormalizationError(deviation, tol)
    return amps.reshape(2, 2, 2)


def partial_trace_single(state, keep: str) -> np.ndarray:
    """Reduced density matrix of one qubit (``keep`` in ``"ABC"``)."""
    psi = amplitude_tensor(state)
    return np.einsum(_SINGLE[keep], psi, psi.conj())


def partial_trace_pair(state, keep: str) -> np.ndarray:
    """Reduced 4x4 density matrix of a qubit pair, rows indexed ``2*first + second``."""
    psi = amplitude_tensor(state)
    return np.einsum(_PAIR[keep], psi, psi.conj()).reshape(4, 4)


def trace_out_second(rho4: np.ndarray) -> np.ndarray:
    return np.einsum("ijkj->ik", np.asarray(rho4).reshape(2, 2, 2, 2))


def trace_out_first(rho4: np.ndarray) -> np.ndarray:
    return np.einsum("ijil->jl", np.asarray(rho4).reshape(2, 2, 2, 2))


def check_density(rho: np.ndarray, tol: float = DEFAULT_TOLERANCES.structural) -> np.ndarray:
    """Validate Hermiticity, unit trace and (for 2x2) a non-negative determinant."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape not in ((2, 2), (4, 4)):
        raise ValueError(f"density matrix must be 2x2 or 4x4, got {rho.shape}")
    herm = float(np.max(np.abs(rho - rho.conj().T)))
    if herm > tol:
        raise HermiticityError(f"matrix not Hermitian: max |rho - rho^dag| = {herm:.3e}")
    trace_dev = abs(complex(np.trace(rho)) - 1.0)
    if trace_dev > tol:
        raise ValueError(f"trace deviates from 1 by {trace_dev:.3e}")
    if rho.shape == (2, 2) and det2(rho) < -tol:
        raise PositivityError(f"negative determinant {det2(rho)!r}")
    return rho


def det2(rho: np.ndarray) -> float:
    """Determinant of a 2x2 Hermitian matrix, real by construction."""
    return float(rho[0, 0].real * rho[1, 1].real - abs(rho[0, 1]) ** 2)


def cut_determinant(state, qubit: str) -> float:
    """``det(rho_q)`` from the amplitudes, as a sum of squared 2x2 minors.

    With ``M`` the 2x4 matrix of the ``q | rest`` cut, ``rho_q = M M^dag`` and
    Cauchy-Binet gives ``det(rho_q) = sum_{k<l} |M_0k M_1l - M_0l M_1k|^2``.
    Every term is non-negative, so product cuts come out at ~1e-32 instead of
    the ~1e-16 left by ``rho00 rho11 - |rho01|^2``.
    """
    amps = amplitude_tensor(state).reshape(8)
    r0, r1 = (amps[list(rows)] for rows in CUT_ROWS[qubit])
    return float(sum(abs(r0[k] * r1[l] - r0[l] * r1[k]) ** 2 for k, l in COLUMN_PAIRS))


def purity(rho: np.ndarray) -> float:
    """Tr(rho^2), computed as the squared Frobenius norm (exact for Hermitian rho)."""
    rho = np.asarray(rho)
    return float(np.sum(rho.real**2 + rho.imag**2))


def spectrum2(rho: np.ndarray, tol: float = DEFAULT_TOLERANCES.structural, det: float | None = None) -> MarginalSpectrum:
    """Eigenvalues of a 2x2 density matrix in closed form.

    ``lambda = (1 +- sqrt(1 - 4 det)) / 2``. For unit trace the radicand equals
    ``(rho00 - rho11)^2 + 4 |rho01|^2``, which is evaluated instead: it has no
    cancellation near the maximally mixed state, where ``1 - 4 det`` loses
    half the significant digits of the minor eigenvalue. The minor eigenvalue
    is then ``det / major``, accurate near zero as well. Pass ``det`` (e.g. from
    :func:`cut_determinant`) to override ``det2(rho)``.
    """
    det = clamp(det2(rho) if det is None else det, 0.0, 0.25, tol, "det(rho)", PositivityError)
    radicand = clamp(discriminant2(rho), 0.0, 1.0, tol, "1 - 4 det(rho)", PositivityError)
    major = 0.5 * (1.0 + math.sqrt(radicand))
    return MarginalSpectrum(major, det / major)


def discriminant2(rho: np.ndarray) -> float:
    diff = rho[0, 0].real - rho[1, 1].real
    return float(diff * diff + 4.0 * abs(rho[0, 1]) ** 2)


def correlation_matrix(rho4: np.ndarray, imag_tol: float = DEFAULT_TOLERANCES.derived) -> np.ndarray:
    """``t[i, j] = Tr(rho (sigma_i x sigma_j))`` for i, j over x, y, z."""
    rho4 = np.asarray(rho4).reshape(2, 2, 2, 2)
    # Tr(rho (P x R)) = sum rho[a b, c d] P[c, a] R[d, b]
    t = np.einsum("abcd,ica,jdb->ij", rho4, PAULI, PAULI)
    residue = float(np.max(np.abs(t.imag)))
    if residue > imag_tol:
        raise HermiticityError(f"Pauli trace has imaginary part {residue:.3e}")
    return t.real.copy()


def bloch_vector(rho2: np.ndarray) -> np.ndarray:
    """Local Bloch vector ``r_i = Tr(rho sigma_i)``."""
    return np.einsum("ab,iba->i", np.asarray(rho2), PAULI).real


def reduced_states(state, tolerances: Tolerances = DEFAULT_TOLERANCES) -> dict[str, np.ndarray]:
    """All three single-qubit and all three pair marginals keyed by label."""
    psi = amplitude_tensor(state, tolerances.structural)
    out = {q: np.einsum(_SINGLE[q], psi, psi.conj()) for q in QUBITS}
    out.update({p: np.einsum(_PAIR[p], psi, psi.conj()).reshape(4, 4) for p in PAIRS})
    return out
