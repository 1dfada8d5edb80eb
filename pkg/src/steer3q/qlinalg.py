"""Dense complex linear algebra for up to three qubits.

Carriers (``DensityMatrix``, ``PureState``) are immutable: arrays are
copied on construction and marked read-only, so values can be shared
freely between threads.

Conventions
-----------
* Subsystem ordering is big-endian: basis index ``b2 b1 b0`` means qubit
  A = ``b2``, B = ``b1``, C = ``b0``; kets read ``|abc>``.
* Eigenvalues come from cyclic Jacobi rotations (off-diagonal Frobenius
  norm below ``JACOBI_TOL``, at most ``JACOBI_MAX_SWEEPS`` sweeps); all
  matrices here are O(1)-scaled so the tolerance is absolute.
* Hermiticity/PSD validation uses a single module-level tolerance knob,
  default 1e-10 (`set_validation_tolerance`), never a per-call argument.
"""

from dataclasses import dataclass

import numpy as np

from . import backend
from .errors import (
    BadDimension,
    BadSubsystemSet,
    NoConvergence,
    NotHermitian,
    NotPositiveSemidefinite,
    NotPSD,
    NotNormalized,
    TraceNotOne,
)

ALLOWED_DIMS = (2, 3, 4, 8)
JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100

DEFAULT_VALIDATION_TOL = 1e-10
_validation_tol = DEFAULT_VALIDATION_TOL

_SUBSYSTEM_LETTERS = "ABC"


def set_validation_tolerance(tol: float) -> None:
    """Override the Hermiticity/trace/PSD validation tolerance (default 1e-10)."""
    global _validation_tol
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    _validation_tol = float(tol)


def validation_tolerance() -> float:
    return _validation_tol


def as_complex_matrix(entries) -> np.ndarray:
    """Validate and return a square complex matrix of an allowed dimension."""
    m = np.array(entries, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise BadDimension(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] not in ALLOWED_DIMS:
        raise BadDimension(f"dimension {m.shape[0]} not in {ALLOWED_DIMS}")
    if not np.all(np.isfinite(m.view(np.float64))):
        raise BadDimension("matrix contains non-finite entries")
    return m


def _freeze(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class DensityMatrix:
    """Validated (or explicitly trusted) quantum state on 1-3 qubits."""

    matrix: np.ndarray
    subsystem_count: int

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __repr__(self):
        return f"DensityMatrix(n={self.subsystem_count})"


@dataclass(frozen=True)
class PureState:
    """Normalized state vector on ``n`` qubits (big-endian amplitudes)."""

    amplitudes: np.ndarray
    n: int

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def density(self) -> DensityMatrix:
        rho = np.outer(self.amplitudes, self.amplitudes.conj())
        return DensityMatrix(_freeze(rho), self.n)

    def __repr__(self):
        return f"PureState(n={self.n})"


def pure_state(amplitudes, n: int | None = None) -> PureState:
    """Build a PureState, requiring squared norm 1 within 1e-12."""
    v = np.array(amplitudes, dtype=np.complex128).reshape(-1)
    if n is None:
        n = int(v.shape[0]).bit_length() - 1
    if v.shape[0] != 2**n:
        raise BadDimension(f"amplitude count {v.shape[0]} != 2^{n}")
    nrm2 = float(np.sum(v.real**2 + v.imag**2))
    if abs(nrm2 - 1.0) > 1e-12:
        raise NotNormalized(f"squared norm deviates from 1 by {abs(nrm2 - 1.0):.3e}")
    return PureState(_freeze(v), n)


def validate_density(matrix, n: int, *, check_psd: bool = True) -> DensityMatrix:
    """Validate Hermiticity, unit trace, and positivity of a candidate state.

    Diagnostics name the violated invariant together with its magnitude.
    ``check_psd=False`` admits Hermitian unit-trace carriers that are not
    states (used by the noisy-family constructors; see `families.make_named`).
    """
    tol = _validation_tol
    m = as_complex_matrix(matrix)
    if m.shape[0] != 2**n:
        raise BadDimension(f"matrix dimension {m.shape[0]} != 2^{n}")
    herm_dev = float(np.abs(m - m.conj().T).max())
    if herm_dev > tol:
        raise NotHermitian(f"max |rho - rho^dagger| = {herm_dev:.3e} > {tol:.1e}")
    tr_dev = abs(complex(np.trace(m)) - 1.0)
    if tr_dev > tol:
        raise TraceNotOne(f"|trace - 1| = {tr_dev:.3e} > {tol:.1e}")
    m = (m + m.conj().T) / 2.0
    if check_psd:
        w = hermitian_eigenvalues(m)
        if w[-1] < -tol:
            raise NotPositiveSemidefinite(f"min eigenvalue = {w[-1]:.3e} < -{tol:.1e}")
    return DensityMatrix(_freeze(m), n)


def density_from_pure(psi: PureState) -> DensityMatrix:
    return psi.density()


def _canonical_keep(keep, n: int) -> tuple:
    if isinstance(keep, str):
        try:
            idx = tuple(_SUBSYSTEM_LETTERS.index(ch) for ch in keep.upper())
        except ValueError:
            raise BadSubsystemSet(f"unknown subsystem letter in {keep!r}")
    else:
        idx = tuple(int(i) for i in keep)
    if len(set(idx)) != len(idx):
        raise BadSubsystemSet(f"duplicate subsystem in {keep!r}")
    if not idx or len(idx) >= n:
        raise BadSubsystemSet("keep set must be a nonempty proper subset")
    if any(i < 0 or i >= n for i in idx):
        raise BadSubsystemSet(f"subsystem index out of range for {n} qubits: {idx}")
    return tuple(sorted(idx))


def partial_trace(rho: DensityMatrix, keep) -> DensityMatrix:
    """Reduce to the kept subsystems (letters "A".."C" or indices 0..n-1)."""
    idx = _canonical_keep(keep, rho.subsystem_count)
    reduced = backend.ptrace(rho.matrix, rho.subsystem_count, idx)
    return DensityMatrix(_freeze(reduced), len(idx))


def hermitian_eigh(m, *, need_vectors: bool = True):
    """Jacobi eigendecomposition; eigenvalues descending, columns matched."""
    a = as_complex_matrix(m)
    herm_dev = float(np.abs(a - a.conj().T).max())
    if herm_dev > _validation_tol:
        raise NotHermitian(f"max |m - m^dagger| = {herm_dev:.3e}")
    w, v, sweeps = backend.jacobi_eigh(a, need_vectors, JACOBI_TOL, JACOBI_MAX_SWEEPS)
    if sweeps < 0:
        raise NoConvergence(f"Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps")
    order = np.argsort(-w, kind="stable")
    if need_vectors:
        return w[order], v[:, order]
    return w[order], None


def hermitian_eigenvalues(m) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, descending."""
    w, _ = hermitian_eigh(m, need_vectors=False)
    return w


def psd_sqrt(m) -> np.ndarray:
    """Hermitian PSD square root via the Jacobi eigendecomposition."""
    a = as_complex_matrix(m)
    w, v = hermitian_eigh(a)
    if w[-1] < -1e-9:
        raise NotPSD(f"min eigenvalue = {w[-1]:.3e} < -1e-9")
    root = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T
    return (root + root.conj().T) / 2.0


def purity(rho: DensityMatrix) -> float:
    m = rho.matrix
    return float(np.trace(m @ m).real)


def is_pure(rho: DensityMatrix, tol: float = 1e-9) -> bool:
    """Purity test used by the trade-off equality branch: Tr(rho^2) > 1 - tol."""
    return purity(rho) > 1.0 - tol
