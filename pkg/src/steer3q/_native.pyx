# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementations of the hot kernels.

Function-for-function mirror of ``_fallback.py``; see that module for the
contracts.  Pauli convention matches :mod:`steer3q.bloch`.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs, sqrt

cnp.import_array()

ctypedef cnp.complex128_t cplx
ctypedef cnp.float64_t f64


def jacobi_eigh(a_in, bint want_vectors, double tol, int max_sweeps):
    a_arr = np.array(a_in, dtype=np.complex128, order="C")
    cdef cplx[:, ::1] a = a_arr
    cdef int n = a_arr.shape[0]
    v_arr = np.eye(n, dtype=np.complex128) if want_vectors else None
    cdef cplx[:, ::1] v
    if want_vectors:
        v = v_arr
    cdef int sweep, p, q, i
    cdef double r, tau, t, c, s, off, app, aqq
    cdef double complex apq, u, su, suc, tmp_p, tmp_q
    for sweep in range(max_sweeps):
        off = 0.0
        for p in range(n):
            for q in range(n):
                if p != q:
                    off += (a[p, q].real * a[p, q].real
                            + a[p, q].imag * a[p, q].imag)
        if sqrt(off) <= tol:
            return np.diag(a_arr).real.copy(), v_arr, sweep
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = sqrt(apq.real * apq.real + apq.imag * apq.imag)
                if r < 1e-300:
                    continue
                u = apq / r
                app = a[p, p].real
                aqq = a[q, q].real
                tau = (aqq - app) / (2.0 * r)
                if tau >= 0.0:
                    t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                su = s * u
                suc = s * u.conjugate()
                # columns p, q of a <- a G
                for i in range(n):
                    tmp_p = a[i, p]
                    tmp_q = a[i, q]
                    a[i, p] = c * tmp_p - suc * tmp_q
                    a[i, q] = su * tmp_p + c * tmp_q
                # rows p, q of a <- G^dagger a
                for i in range(n):
                    tmp_p = a[p, i]
                    tmp_q = a[q, i]
                    a[p, i] = c * tmp_p - su * tmp_q
                    a[q, i] = suc * tmp_p + c * tmp_q
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                if want_vectors:
                    for i in range(n):
                        tmp_p = v[i, p]
                        tmp_q = v[i, q]
                        v[i, p] = c * tmp_p - suc * tmp_q
                        v[i, q] = su * tmp_p + c * tmp_q
    off = 0.0
    for p in range(n):
        for q in range(n):
            if p != q:
                off += (a[p, q].real * a[p, q].real
                        + a[p, q].imag * a[p, q].imag)
    if sqrt(off) <= tol:
        return np.diag(a_arr).real.copy(), v_arr, max_sweeps
    return np.diag(a_arr).real.copy(), v_arr, -1


def ptrace(rho_in, int nq, keep):
    rho_arr = np.array(rho_in, dtype=np.complex128, order="C")
    cdef cplx[:, ::1] rho = rho_arr
    cdef int k = len(keep)
    cdef int nd = nq - k
    cdef int dk = 1 << k
    cdef int dd = 1 << nd
    cdef int[8] keep_shift, drop_shift
    cdef int i, j, q, pos
    pos = 0
    kept = set(keep)
    # bit position of qubit q in the big-endian index is nq-1-q
    for q in range(nq):
        if q in kept:
            keep_shift[pos] = nq - 1 - q
            pos += 1
    pos = 0
    for q in range(nq):
        if q not in kept:
            drop_shift[pos] = nq - 1 - q
            pos += 1
    out_arr = np.zeros((dk, dk), dtype=np.complex128)
    cdef cplx[:, ::1] out = out_arr
    cdef int d, row, col, base_r, base_c, b
    for i in range(dk):
        for j in range(dk):
            base_r = 0
            base_c = 0
            for b in range(k):
                if (i >> (k - 1 - b)) & 1:
                    base_r |= 1 << keep_shift[b]
                if (j >> (k - 1 - b)) & 1:
                    base_c |= 1 << keep_shift[b]
            for d in range(dd):
                row = base_r
                col = base_c
                for b in range(nd):
                    if (d >> b) & 1:
                        row |= 1 << drop_shift[b]
                        col |= 1 << drop_shift[b]
                out[i, j] += rho[row, col]
    return out_arr


cdef inline int _pauli_col(int p, int x):
    if p == 0 or p == 3:
        return x
    return 1 - x


cdef inline double complex _pauli_val(int p, int x):
    if p == 0:
        return 1.0
    if p == 1:
        return 1.0
    if p == 2:
        # sigma_y[0,1] = -i, sigma_y[1,0] = +i
        return -1.0j if x == 0 else 1.0j
    return 1.0 if x == 0 else -1.0


def bloch2(rho_in):
    rho_arr = np.array(rho_in, dtype=np.complex128, order="C")
    cdef cplx[:, ::1] rho = rho_arr
    cdef double[4][4] t
    cdef int pa, pb, x, y, row, col
    cdef double complex acc, va
    for pa in range(4):
        for pb in range(4):
            acc = 0.0
            for x in range(2):
                va = _pauli_val(pa, x)
                for y in range(2):
                    row = x * 2 + y
                    col = _pauli_col(pa, x) * 2 + _pauli_col(pb, y)
                    acc += va * _pauli_val(pb, y) * rho[col, row]
            t[pa][pb] = acc.real
    a = np.array([t[1][0], t[2][0], t[3][0]])
    b = np.array([t[0][1], t[0][2], t[0][3]])
    tmat = np.empty((3, 3))
    cdef f64[:, ::1] tv = tmat
    for pa in range(3):
        for pb in range(3):
            tv[pa, pb] = t[pa + 1][pb + 1]
    return a, b, tmat


def bloch3(rho_in):
    rho_arr = np.array(rho_in, dtype=np.complex128, order="C")
    cdef cplx[:, ::1] rho = rho_arr
    cdef double[4][4][4] t
    cdef int pa, pb, pc, x, y, z, row, col
    cdef double complex acc, va, vab
    for pa in range(4):
        for pb in range(4):
            for pc in range(4):
                acc = 0.0
                for x in range(2):
                    va = _pauli_val(pa, x)
                    for y in range(2):
                        vab = va * _pauli_val(pb, y)
                        for z in range(2):
                            row = x * 4 + y * 2 + z
                            col = (_pauli_col(pa, x) * 4
                                   + _pauli_col(pb, y) * 2
                                   + _pauli_col(pc, z))
                            acc += vab * _pauli_val(pc, z) * rho[col, row]
                t[pa][pb][pc] = acc.real
    a = np.array([t[1][0][0], t[2][0][0], t[3][0][0]])
    b = np.array([t[0][1][0], t[0][2][0], t[0][3][0]])
    c = np.array([t[0][0][1], t[0][0][2], t[0][0][3]])
    t_ab = np.empty((3, 3))
    t_ac = np.empty((3, 3))
    t_bc = np.empty((3, 3))
    t_abc = np.empty((3, 3, 3))
    cdef f64[:, ::1] vab_m = t_ab
    cdef f64[:, ::1] vac_m = t_ac
    cdef f64[:, ::1] vbc_m = t_bc
    cdef f64[:, :, ::1] v3 = t_abc
    for pa in range(3):
        for pb in range(3):
            vab_m[pa, pb] = t[pa + 1][pb + 1][0]
            vac_m[pa, pb] = t[pa + 1][0][pb + 1]
            vbc_m[pa, pb] = t[0][pa + 1][pb + 1]
            for pc in range(3):
                v3[pa, pb, pc] = t[pa + 1][pb + 1][pc + 1]
    return a, b, c, t_ab, t_ac, t_bc, t_abc


def cjwr_single(tmat_in, rot_in, int nset):
    cdef f64[:, :] tmat = np.array(tmat_in, dtype=np.float64)
    cdef f64[:, :] rot = np.array(rot_in, dtype=np.float64)
    cdef double total = 0.0, acc, comp
    cdef int k, i, j
    for k in range(nset):
        acc = 0.0
        for i in range(3):
            comp = 0.0
            for j in range(3):
                comp += tmat[i, j] * rot[j, k]
            acc += comp * comp
        total += sqrt(acc)
    return total / sqrt(<double> nset)


def cjwr_batch(tmat_in, rots_in, int nset):
    cdef f64[:, :] tmat = np.array(tmat_in, dtype=np.float64)
    rots_arr = np.array(rots_in, dtype=np.float64, order="C")
    cdef f64[:, :, ::1] rots = rots_arr
    cdef int m = rots_arr.shape[0]
    out_arr = np.empty(m)
    cdef f64[::1] out = out_arr
    cdef double total, acc, comp, rn
    cdef int w, k, i, j
    rn = sqrt(<double> nset)
    for w in range(m):
        total = 0.0
        for k in range(nset):
            acc = 0.0
            for i in range(3):
                comp = 0.0
                for j in range(3):
                    comp += tmat[i, j] * rots[w, j, k]
                acc += comp * comp
            total += sqrt(acc)
        out[w] = total / rn
    return out_arr
