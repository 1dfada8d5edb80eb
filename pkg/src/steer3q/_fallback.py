"""Pure-numpy implementations of the hot kernels.

Mirrors the compiled extension in ``_native.pyx`` function for function;
``backend.py`` picks whichever is available.  The Pauli convention (x, y, z
with standard phases) is the one documented in :mod:`steer3q.bloch`.
"""

import numpy as np

_SX = np.array([[0, 1], [1, 0]], dtype=complex)
_SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
_SZ = np.array([[1, 0], [0, -1]], dtype=complex)
_ID = np.eye(2, dtype=complex)
_P4 = (_ID, _SX, _SY, _SZ)

# cached kron bases: index 0 is the identity, 1..3 are x, y, z
_BASIS2 = np.stack([np.kron(a, b) for a in _P4 for b in _P4]).reshape(4, 4, 4, 4)
_BASIS3 = np.stack(
    [np.kron(np.kron(a, b), c) for a in _P4 for b in _P4 for c in _P4]
).reshape(4, 4, 4, 8, 8)


def jacobi_eigh(a, want_vectors, tol, max_sweeps):
    """Cyclic Jacobi diagonalization of a Hermitian matrix.

    Returns ``(w, v, sweeps)`` where ``w`` holds the (unsorted) eigenvalues,
    ``v`` the accumulated unitary (or None), and ``sweeps`` the number of
    sweeps used, or -1 if the off-diagonal norm never fell below ``tol``.
    """
    a = np.array(a, dtype=np.complex128)
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128) if want_vectors else None
    for sweep in range(max_sweeps):
        off = a - np.diag(np.diag(a))
        if np.sqrt(np.sum(off.real**2 + off.imag**2)) <= tol:
            return np.diag(a).real.copy(), v, sweep
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r < 1e-300:
                    continue
                u = apq / r
                tau = (a[q, q].real - a[p, p].real) / (2.0 * r)
                t = (1.0 if tau >= 0.0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                su = s * u
                suc = s * np.conj(u)
                # a <- G^dagger a G with G = I except G[pp]=G[qq]=c,
                # G[pq] = s*u, G[qp] = -s*conj(u)
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - suc * col_q
                a[:, q] = su * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - su * row_q
                a[q, :] = suc * row_p + c * row_q
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                if want_vectors:
                    vp = v[:, p].copy()
                    vq = v[:, q].copy()
                    v[:, p] = c * vp - suc * vq
                    v[:, q] = su * vp + c * vq
    off = a - np.diag(np.diag(a))
    if np.sqrt(np.sum(off.real**2 + off.imag**2)) <= tol:
        return np.diag(a).real.copy(), v, max_sweeps
    return np.diag(a).real.copy(), v, -1


def ptrace(rho, nq, keep):
    """Partial trace over the qubits not in ``keep`` (ascending indices).

    Qubit 0 is the most significant bit of the basis index (big-endian).
    """
    r = np.asarray(rho).reshape([2] * (2 * nq))
    drop = [q for q in range(nq) if q not in keep]
    for q in sorted(drop, reverse=True):
        half = r.ndim // 2
        r = np.trace(r, axis1=q, axis2=q + half)
    d = 2 ** len(keep)
    return np.ascontiguousarray(r.reshape(d, d))


def bloch2(rho):
    """Pauli coefficients of a two-qubit matrix: (a, b, T)."""
    t = np.einsum("xyij,ji->xy", _BASIS2, np.asarray(rho)).real
    return t[1:, 0].copy(), t[0, 1:].copy(), t[1:, 1:].copy()


def bloch3(rho):
    """Pauli coefficients of a three-qubit matrix.

    Returns (a, b, c, t_ab, t_ac, t_bc, t_abc).
    """
    t = np.einsum("xyzij,ji->xyz", _BASIS3, np.asarray(rho)).real
    return (
        t[1:, 0, 0].copy(),
        t[0, 1:, 0].copy(),
        t[0, 0, 1:].copy(),
        t[1:, 1:, 0].copy(),
        t[1:, 0, 1:].copy(),
        t[0, 1:, 1:].copy(),
        t[1:, 1:, 1:].copy(),
    )


def cjwr_single(tmat, rot, nset):
    """(1/sqrt(n)) * sum_k |T b_k| with b_k the first ``nset`` columns of ``rot``."""
    v = tmat @ rot[:, :nset]
    return float(np.sqrt((v * v).sum(axis=0)).sum() / np.sqrt(nset))


def cjwr_batch(tmat, rots, nset):
    """Vectorized ``cjwr_single`` over a stack of rotation matrices."""
    v = np.einsum("ij,mjk->mik", tmat, rots[:, :, :nset])
    return np.sqrt((v * v).sum(axis=1)).sum(axis=1) / np.sqrt(nset)
