"""Pauli/Bloch tensor representation of two- and three-qubit states.

Pauli convention (used everywhere in the package, including the compiled
kernels): sigma_1 = x = [[0,1],[1,0]], sigma_2 = y = [[0,-i],[i,0]],
sigma_3 = z = [[1,0],[0,-1]].

Decomposition is a direct trace against the kron Pauli basis, term by
term; reconstruction is the inverse linear map and deliberately accepts
non-physical coefficient sets (no positivity check) so boundary cases can
be probed.  Validation is a separate, explicit step via
`qlinalg.validate_density`.
"""

from dataclasses import dataclass

import numpy as np

from . import backend
from .errors import BadDimension
from .qlinalg import DensityMatrix, partial_trace, purity

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)

_P4 = (np.eye(2, dtype=complex),) + PAULIS


@dataclass(frozen=True)
class TwoQubitBloch:
    a: np.ndarray      # local Bloch vector of the first qubit
    b: np.ndarray      # local Bloch vector of the second qubit
    t: np.ndarray      # 3x3 correlation matrix t_ij = Tr[rho s_i x s_j]


@dataclass(frozen=True)
class BlochDecomposition:
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    t_ab: np.ndarray
    t_ac: np.ndarray
    t_bc: np.ndarray
    t_abc: np.ndarray  # 3x3x3 three-body tensor


def decompose2(rho: DensityMatrix) -> TwoQubitBloch:
    if rho.subsystem_count != 2:
        raise BadDimension(f"expected a 2-qubit state, got {rho.subsystem_count}")
    a, b, t = backend.bloch2(rho.matrix)
    return TwoQubitBloch(a=a, b=b, t=t)


def decompose3(rho: DensityMatrix) -> BlochDecomposition:
    if rho.subsystem_count != 3:
        raise BadDimension(f"expected a 3-qubit state, got {rho.subsystem_count}")
    a, b, c, t_ab, t_ac, t_bc, t_abc = backend.bloch3(rho.matrix)
    return BlochDecomposition(a=a, b=b, c=c, t_ab=t_ab, t_ac=t_ac, t_bc=t_bc, t_abc=t_abc)


def reconstruct2(d: TwoQubitBloch) -> np.ndarray:
    m = np.eye(4, dtype=complex)
    for i in range(3):
        m += d.a[i] * np.kron(PAULIS[i], _P4[0])
        m += d.b[i] * np.kron(_P4[0], PAULIS[i])
        for j in range(3):
            m += d.t[i, j] * np.kron(PAULIS[i], PAULIS[j])
    return m / 4.0


def reconstruct3(d: BlochDecomposition) -> np.ndarray:
    """Inverse of `decompose3`; the result need not be a valid state."""
    eye = _P4[0]
    m = np.eye(8, dtype=complex)
    for i in range(3):
        si = PAULIS[i]
        m += d.a[i] * np.kron(np.kron(si, eye), eye)
        m += d.b[i] * np.kron(np.kron(eye, si), eye)
        m += d.c[i] * np.kron(np.kron(eye, eye), si)
        for j in range(3):
            sj = PAULIS[j]
            m += d.t_ab[i, j] * np.kron(np.kron(si, sj), eye)
            m += d.t_ac[i, j] * np.kron(np.kron(si, eye), sj)
            m += d.t_bc[i, j] * np.kron(np.kron(eye, si), sj)
            for k in range(3):
                m += d.t_abc[i, j, k] * np.kron(np.kron(si, sj), PAULIS[k])
    return m / 8.0


def purity_relations(rho: DensityMatrix) -> dict:
    """Both sides of Tr(rho_i^2) = (1+v_i^2)/2 and the paired two-qubit law.

    For each split i|jk the two-qubit side is
    Tr(rho_jk^2) = (1 + v_j^2 + v_k^2 + S_jk)/4 with S_jk = Tr[T^t T].
    """
    if rho.subsystem_count != 3:
        raise BadDimension(f"expected a 3-qubit state, got {rho.subsystem_count}")
    d = decompose3(rho)
    vecs = {"A": d.a, "B": d.b, "C": d.c}
    tees = {"BC": d.t_bc, "AC": d.t_ac, "AB": d.t_ab}
    out = {}
    for single, pair in (("A", "BC"), ("B", "AC"), ("C", "AB")):
        s_pair = float(np.sum(tees[pair] ** 2))
        v1, v2 = (vecs[q] for q in pair)
        out[single] = {
            "single_purity": purity(partial_trace(rho, single)),
            "single_formula": (1.0 + float(vecs[single] @ vecs[single])) / 2.0,
            "pair_purity": purity(partial_trace(rho, pair)),
            "pair_formula": (1.0 + float(v1 @ v1) + float(v2 @ v2) + s_pair) / 4.0,
        }
    return out
