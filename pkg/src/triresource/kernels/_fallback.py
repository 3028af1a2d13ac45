"""Vectorized numpy implementation of the batch profile kernel."""
from __future__ import annotations

import numpy as np

from triresource.errors import PositivityError, TriangleInequalityError
from triresource.linalg import COLUMN_PAIRS, CUT_ROWS, PAULI

_SINGLE = ("nabc,nxbc->nax", "nabc,naxc->nbx", "nabc,nabx->ncx")
_PAIR = ("nabc,nxyc->nabxy", "nabc,nxbz->nacxz", "nabc,nayz->nbcyz")
_K = np.array([k for k, _ in COLUMN_PAIRS])
_L = np.array([l for _, l in COLUMN_PAIRS])


def _cut_determinants(amps: np.ndarray) -> list[np.ndarray]:
    """Cauchy-Binet ``det(rho_q)`` per row for q = A, B, C."""
    out = []
    for q in "ABC":
        r0, r1 = (amps[:, list(rows)] for rows in CUT_ROWS[q])
        minors = r0[:, _K] * r1[:, _L] - r0[:, _L] * r1[:, _K]
        out.append(np.sum(minors.real**2 + minors.imag**2, axis=1))
    return out


def _clip(values: np.ndarray, lo: float, hi: float, tol: float, what: str, exc) -> np.ndarray:
    if values.size and (values.min() < lo - tol or values.max() > hi + tol):
        bad = float(values.min()) if values.min() < lo - tol else float(values.max())
        raise exc(f"{what} = {bad!r} outside [{lo}, {hi}] by more than {tol:g}")
    return np.clip(values, lo, hi)


def profile_table(amps: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    amps = np.ascontiguousarray(amps, dtype=np.complex128)
    n = amps.shape[0]
    psi = amps.reshape(n, 2, 2, 2)
    out = np.empty((n, 18))
    conj = psi.conj()

    singles = [np.einsum(s, psi, conj) for s in _SINGLE]
    dets = _cut_determinants(amps)
    coh = np.zeros(n)
    for k, rho in enumerate(singles):
        r00, r11, r01 = rho[:, 0, 0].real, rho[:, 1, 1].real, rho[:, 0, 1]
        absq = r01.real**2 + r01.imag**2
        out[:, 12 + k] = r00 * r00 + r11 * r11 + 2.0 * absq
        det = _clip(dets[k], 0.0, 0.25, tol, "det(rho)", PositivityError)
        out[:, 8 + k] = 4.0 * det
        # 1 - 4 det = 2 purity - 1, in cancellation-free form
        disc = _clip((r00 - r11) ** 2 + 4.0 * absq, 0.0, 1.0, tol, "1 - 4 det(rho)", PositivityError)
        coh += disc
        # minor eigenvalue det / major, stashed in the steering slots until those are filled
        out[:, 4 + k] = det / (0.5 * (1.0 + np.sqrt(disc)))
    out[:, 0] = out[:, 4:7].min(axis=1)
    out[:, 1] = np.sqrt(out[:, 8:11].min(axis=1))
    out[:, 3] = np.sqrt(coh / 3.0)

    a, b, c = out[:, 8], out[:, 9], out[:, 10]
    q = 0.5 * (a + b + c)
    out[:, 11] = q
    product = q.copy()
    for side in (a, b, c):
        product *= _clip(q - side, 0.0, np.inf, tol, "half-perimeter minus side", TriangleInequalityError)
    out[:, 2] = _clip((16.0 / 3.0 * product) ** 0.25, 0.0, 1.0, tol, "concurrence fill", TriangleInequalityError)

    for k, sub in enumerate(_PAIR):
        rho = np.einsum(sub, psi, conj)
        out[:, 17 - k] = np.sum(rho.real**2 + rho.imag**2, axis=(1, 2, 3, 4))
        t = np.einsum("nabcd,ica,jdb->nij", rho, PAULI, PAULI).real
        out[:, 4 + k] = np.sum(t * t, axis=(1, 2))
    out[:, 7] = out[:, 4:7].max(axis=1)
    return out
