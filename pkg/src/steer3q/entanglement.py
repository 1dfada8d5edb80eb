"""Bipartite and tripartite entanglement measures.

Concurrence follows Wootters: C = max(0, l1 - l2 - l3 - l4) with the l_i
the descending square roots of the eigenvalues of rho * rho_tilde,
rho_tilde = (sy x sy) rho* (sy x sy).  The l_i are obtained as the
singular values of B = sqrt(rho_tilde) sqrt(rho) through the Hermitian
block matrix [[0, B], [B^+, 0]] (its spectrum is +-l_i), which feeds the
same Jacobi eigensolver but avoids squaring, so near-zero l_i come out at
machine accuracy instead of sqrt(eps).  B^+ B equals the textbook
sqrt(rho) rho_tilde sqrt(rho), so the computed quantity is identical.
"""

from dataclasses import dataclass

import numpy as np

from .bloch import SIGMA_Y, decompose3
from .errors import BadDimension, NotNormalized
from .qlinalg import (
    DensityMatrix,
    PureState,
    hermitian_eigh,
    partial_trace,
    purity,
)

_YY = np.kron(SIGMA_Y, SIGMA_Y)

PAIRS = ("AB", "AC", "BC")
_COMPLEMENT = {"AB": "C", "AC": "B", "BC": "A"}


@dataclass(frozen=True)
class EntanglementReport:
    c2: dict            # pair -> squared concurrence
    tau: float | None   # residual tangle; None when undefined (mixed input)
    e_w: float          # min of the three squared concurrences


def spin_flipped(rho: DensityMatrix) -> np.ndarray:
    return _YY @ rho.matrix.conj() @ _YY


def concurrence(rho: DensityMatrix) -> float:
    if rho.subsystem_count != 2:
        raise BadDimension(f"expected a 2-qubit state, got {rho.subsystem_count}")
    w, v = hermitian_eigh(rho.matrix)
    root = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T
    root_tilde = _YY @ root.conj() @ _YY
    b = root_tilde @ root
    aug = np.zeros((8, 8), dtype=complex)
    aug[:4, 4:] = b
    aug[4:, :4] = b.conj().T
    lam, _ = hermitian_eigh(aug, need_vectors=False)
    # spectrum is symmetric +-l_i; the top four are the singular values
    return max(0.0, float(lam[0] - lam[1] - lam[2] - lam[3]))


def pure_bipartition_concurrence_sq(psi: PureState, single: str) -> float:
    """C^2 of the one-vs-two split: 2 (1 - Tr rho_i^2), equal to 1 - |v_i|^2."""
    _require_pure3(psi)
    if single not in ("A", "B", "C"):
        raise BadDimension(f"split must be one of A, B, C; got {single!r}")
    return 2.0 * (1.0 - purity(partial_trace(psi.density(), single)))


def _require_pure3(psi: PureState):
    if not isinstance(psi, PureState):
        raise NotNormalized("expected a PureState")
    if psi.n != 3:
        raise BadDimension(f"expected a 3-qubit pure state, got n={psi.n}")


def pairwise_concurrences_sq(rho: DensityMatrix) -> dict:
    return {pair: concurrence(partial_trace(rho, pair)) ** 2 for pair in PAIRS}


def pure_report(psi: PureState) -> EntanglementReport:
    """Squared concurrences, residual tangle, and W entanglement of a pure state.

    The tangle is evaluated through all three equivalent expressions
    tau = 1 - v_i^2 - C^2_ij - C^2_ik and required to agree within 1e-8.
    """
    _require_pure3(psi)
    rho = psi.density()
    c2 = pairwise_concurrences_sq(rho)
    d = decompose3(rho)
    taus = (
        1.0 - float(d.a @ d.a) - c2["AB"] - c2["AC"],
        1.0 - float(d.b @ d.b) - c2["AB"] - c2["BC"],
        1.0 - float(d.c @ d.c) - c2["AC"] - c2["BC"],
    )
    if max(taus) - min(taus) > 1e-8:
        raise NotNormalized(
            f"tangle expressions disagree by {max(taus) - min(taus):.3e}; "
            "input is not a normalized pure state"
        )
    return EntanglementReport(c2=c2, tau=sum(taus) / 3.0, e_w=min(c2.values()))


def pure_report_from_density(rho: DensityMatrix) -> EntanglementReport:
    """Density-matrix entry point; rejects mixed input (no convex-roof tangle)."""
    if rho.subsystem_count != 3:
        raise BadDimension(f"expected a 3-qubit state, got {rho.subsystem_count}")
    p = purity(rho)
    if p < 1.0 - 1e-9:
        raise NotNormalized(f"state is mixed (purity {p:.12f}); tangle undefined")
    w, v = hermitian_eigh(rho.matrix)
    return pure_report(PureState(np.ascontiguousarray(v[:, 0]), 3))


@dataclass(frozen=True)
class CkwRecord:
    pair_sums: dict     # shared qubit -> C^2_ik + C^2_jk
    total: float        # C^2_AB + C^2_AC + C^2_BC
    pair_margins: dict  # shared qubit -> 1 - sum
    total_margin: float  # 4/3 - total
    satisfied: bool


def ckw_check(psi: PureState) -> CkwRecord:
    """Pairwise squared-concurrence bounds: each shared-qubit sum <= 1, total <= 4/3."""
    _require_pure3(psi)
    c2 = pairwise_concurrences_sq(psi.density())
    sums = {
        "A": c2["AB"] + c2["AC"],
        "B": c2["AB"] + c2["BC"],
        "C": c2["AC"] + c2["BC"],
    }
    total = sum(c2.values())
    margins = {k: 1.0 - v for k, v in sums.items()}
    total_margin = 4.0 / 3.0 - total
    ok = all(m >= -1e-9 for m in margins.values()) and total_margin >= -1e-9
    return CkwRecord(
        pair_sums=sums,
        total=total,
        pair_margins=margins,
        total_margin=total_margin,
        satisfied=ok,
    )
