# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled batch profile kernel. Same contract as ``_fallback.profile_table``."""
import numpy as np

from libc.math cimport sqrt, pow, INFINITY

from triresource.errors import PositivityError, TriangleInequalityError

# Pauli matrices as (column, value) per row: sigma[r, col[r]] = val[r]
cdef int PCOL[3][2]
cdef double complex PVAL[3][2]
PCOL[0][:] = [1, 0]
PCOL[1][:] = [1, 0]
PCOL[2][:] = [0, 1]
PVAL[0][0] = 1.0
PVAL[0][1] = 1.0
PVAL[1][0] = -1j
PVAL[1][1] = 1j
PVAL[2][0] = 1.0
PVAL[2][1] = -1.0

# bit shifts (A=2, B=1, C=0) of kept/kept/traced qubits for pairs AB, AC, BC
cdef int PSHIFT[3][3]
PSHIFT[0][:] = [2, 1, 0]
PSHIFT[1][:] = [2, 0, 1]
PSHIFT[2][:] = [1, 0, 2]

# amplitude indices of the rows of the 2x4 matrix psi[q | rest] for q = A, B, C
cdef int CUT[3][2][4]
CUT[0][0][:] = [0, 1, 2, 3]
CUT[0][1][:] = [4, 5, 6, 7]
CUT[1][0][:] = [0, 1, 4, 5]
CUT[1][1][:] = [2, 3, 6, 7]
CUT[2][0][:] = [0, 2, 4, 6]
CUT[2][1][:] = [1, 3, 5, 7]


cdef inline double absq(double complex z) noexcept nogil:
    return z.real * z.real + z.imag * z.imag


cdef inline double complex conj(double complex z) noexcept nogil:
    return z.real - 1j * z.imag


cdef void single_marginal(const double complex* psi, int shift, double complex rho[2][2]) noexcept nogil:
    cdef int i, j, r, c
    rho[0][0] = 0
    rho[0][1] = 0
    rho[1][0] = 0
    rho[1][1] = 0
    for i in range(8):
        r = (i >> shift) & 1
        for c in range(2):
            # j equals i except on the kept bit
            j = (i & ~(1 << shift)) | (c << shift)
            rho[r][c] = rho[r][c] + psi[i] * conj(psi[j])


cdef double cut_det(const double complex* psi, int q) noexcept nogil:
    """Cauchy-Binet det(rho_q): sum of squared 2x2 minors of the cut matrix."""
    cdef int k, l
    cdef double total = 0.0
    for k in range(4):
        for l in range(k + 1, 4):
            total += absq(psi[CUT[q][0][k]] * psi[CUT[q][1][l]] - psi[CUT[q][0][l]] * psi[CUT[q][1][k]])
    return total


cdef void pair_marginal(const double complex* psi, int sx, int sy, int sz, double complex rho[4][4]) noexcept nogil:
    cdef int r, c, z, i, j
    for r in range(4):
        for c in range(4):
            rho[r][c] = 0
    for z in range(2):
        for r in range(4):
            i = ((r >> 1) << sx) | ((r & 1) << sy) | (z << sz)
            for c in range(4):
                j = ((c >> 1) << sx) | ((c & 1) << sy) | (z << sz)
                rho[r][c] = rho[r][c] + psi[i] * conj(psi[j])


cdef double steering_value(double complex rho[4][4]) noexcept nogil:
    cdef int p, s, l1, l2, k
    cdef double complex tr
    cdef double total = 0.0
    for p in range(3):
        for s in range(3):
            tr = 0
            for l1 in range(2):
                for l2 in range(2):
                    k = 2 * PCOL[p][l1] + PCOL[s][l2]
                    tr = tr + PVAL[p][l1] * PVAL[s][l2] * rho[k][2 * l1 + l2]
            total += tr.real * tr.real
    return total


cdef inline double clip(double v, double lo, double hi, double tol, double* worst_lo, double* worst_hi) noexcept nogil:
    if v < lo:
        if lo - v > worst_lo[0]:
            worst_lo[0] = lo - v
        return lo
    if v > hi:
        if v - hi > worst_hi[0]:
            worst_hi[0] = v - hi
        return hi
    return v


def profile_table(amps, double tol=1e-12):
    cdef const double complex[:, ::1] a_view = np.ascontiguousarray(amps, dtype=np.complex128)
    cdef Py_ssize_t n = a_view.shape[0]
    out_arr = np.empty((n, 18), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef double complex rho2[2][2]
    cdef double complex rho4[4][4]
    cdef const double complex* psi
    cdef Py_ssize_t row
    cdef int k, r, c
    cdef double det, disc, pur, minor, ggm, smin, coh, q, prod, s, smax, p4
    cdef double sides[3]
    # worst excursions below/above each clamp window: det, discriminant, triangle, fill
    cdef double low[4]
    cdef double high[4]
    for k in range(4):
        low[k] = 0.0
        high[k] = 0.0

    with nogil:
        for row in range(n):
            psi = &a_view[row, 0]
            ggm = 1.0
            smin = 1.0
            coh = 0.0
            for k in range(3):
                single_marginal(psi, 2 - k, rho2)
                pur = rho2[0][0].real * rho2[0][0].real + rho2[1][1].real * rho2[1][1].real + 2.0 * absq(rho2[0][1])
                det = clip(cut_det(psi, k), 0.0, 0.25, tol, &low[0], &high[0])
                # 1 - 4 det = 2 purity - 1, in cancellation-free form
                disc = (rho2[0][0].real - rho2[1][1].real) ** 2 + 4.0 * absq(rho2[0][1])
                disc = clip(disc, 0.0, 1.0, tol, &low[1], &high[1])
                minor = det / (0.5 * (1.0 + sqrt(disc)))
                if minor < ggm:
                    ggm = minor
                coh += disc
                sides[k] = 4.0 * det
                if sides[k] < smin:
                    smin = sides[k]
                out[row, 8 + k] = sides[k]
                out[row, 12 + k] = pur
            out[row, 0] = ggm
            out[row, 1] = sqrt(smin)
            out[row, 3] = sqrt(coh / 3.0)
            q = 0.5 * (sides[0] + sides[1] + sides[2])
            out[row, 11] = q
            prod = q
            for k in range(3):
                prod *= clip(q - sides[k], 0.0, INFINITY, tol, &low[2], &high[2])
            out[row, 2] = clip(pow(16.0 / 3.0 * prod, 0.25), 0.0, 1.0, tol, &low[3], &high[3])

            smax = 0.0
            for k in range(3):
                pair_marginal(psi, PSHIFT[k][0], PSHIFT[k][1], PSHIFT[k][2], rho4)
                p4 = 0.0
                for r in range(4):
                    for c in range(4):
                        p4 += absq(rho4[r][c])
                out[row, 17 - k] = p4
                s = steering_value(rho4)
                out[row, 4 + k] = s
                if s > smax:
                    smax = s
            out[row, 7] = smax

    names = ("det(rho)", "1 - 4 det(rho)", "half-perimeter minus side", "concurrence fill")
    for k in range(4):
        if low[k] > tol or high[k] > tol:
            exc = TriangleInequalityError if k >= 2 else PositivityError
            raise exc(f"{names[k]} outside its range by {max(low[k], high[k]):.3e} > {tol:g}")
    return out_arr
