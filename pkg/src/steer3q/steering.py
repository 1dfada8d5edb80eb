"""Three-setting linear steering quantities of two- and three-qubit states.

The central scalar is S = Tr[T^t T] of a two-qubit correlation matrix:
the reduced pair is steerable under three dichotomic settings per side
iff S > 1.  The analytic maxima of the n-setting linear functional
F_n = (1/sqrt(n)) |sum_k <A_k x B_k>| are sqrt of the sum of the two
largest eigenvalues of T^t T (n = 2) and sqrt(Tr[T^t T]) (n = 3); a
seeded rotation-search oracle maximizes F_n directly as an independent
cross-check of those formulas.

Steerability thresholds are strict, S > 1 + eps_steer (default 1e-9), so
boundary states such as W and GHZ classify as not steerable.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import backend
from .bloch import PAULIS, decompose2, decompose3
from .errors import BadDimension, BadSettings
from .qlinalg import DensityMatrix, hermitian_eigenvalues, is_pure, partial_trace, purity

PAIRS = ("AB", "AC", "BC")
DEFAULT_EPS_STEER = 1e-9

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class MeasurementSettings:
    """Directions for the n-setting CJWR functional.

    ``alice_axes`` are unit vectors; ``bob_axes`` must be orthonormal.
    """

    n: int
    alice_axes: np.ndarray  # (n, 3)
    bob_axes: np.ndarray    # (n, 3)


def measurement_settings(alice_axes, bob_axes) -> MeasurementSettings:
    a = np.array(alice_axes, dtype=float)
    b = np.array(bob_axes, dtype=float)
    if a.ndim != 2 or b.ndim != 2 or a.shape != b.shape or a.shape[1] != 3:
        raise BadSettings(f"axis arrays must both be (n, 3); got {a.shape} and {b.shape}")
    n = a.shape[0]
    if n not in (1, 2, 3):
        raise BadSettings(f"settings count must be 1, 2, or 3; got {n}")
    for k in range(n):
        if abs(a[k] @ a[k] - 1.0) > 1e-10:
            raise BadSettings(f"alice axis {k} is not unit norm")
    gram = b @ b.T
    if np.abs(gram - np.eye(n)).max() > 1e-10:
        raise BadSettings("bob axes are not orthonormal")
    a.flags.writeable = False
    b.flags.writeable = False
    return MeasurementSettings(n=n, alice_axes=a, bob_axes=b)


@dataclass(frozen=True)
class SteeringReport:
    s: dict                     # pair -> Tr[T^t T]
    f2max: dict                 # pair -> analytic two-setting maximum
    f3max: dict                 # pair -> analytic three-setting maximum
    horodecki: dict             # pair -> M (degree of CHSH violation)
    n_violation: dict           # pair -> max(0, S - 1)
    s_max: float
    s_total_max: float          # max over the three pairwise sums of S
    i_local: float              # a^2 + b^2 + c^2
    i_nonlocal: float           # max pairwise sum of the N_ij
    i_nonlocal_alt: float       # alternative reading: max pairwise sum of S_ij
    steerable_pairs: tuple
    graph_type: str             # no-edge | one-edge | two-edge


def _require_two_qubits(rho: DensityMatrix):
    if rho.subsystem_count != 2:
        raise BadDimension(f"expected a 2-qubit state, got {rho.subsystem_count}")


def _require_three_qubits(rho: DensityMatrix):
    if rho.subsystem_count != 3:
        raise BadDimension(f"expected a 3-qubit state, got {rho.subsystem_count}")


def correlation_matrix(rho: DensityMatrix) -> np.ndarray:
    _require_two_qubits(rho)
    return decompose2(rho).t


def s_param(rho: DensityMatrix) -> float:
    """S = Tr[T^t T]; the pair is three-setting steerable iff S > 1."""
    t = correlation_matrix(rho)
    return float(np.sum(t * t))


def _tt_eigenvalues(t: np.ndarray) -> np.ndarray:
    return hermitian_eigenvalues((t.T @ t).astype(complex))


def f_max(rho: DensityMatrix, n: int) -> float:
    """Analytic maximum of the n-setting functional over all directions."""
    t = correlation_matrix(rho)
    if n == 3:
        return math.sqrt(float(np.sum(t * t)))
    if n == 2:
        u = _tt_eigenvalues(t)
        return math.sqrt(max(0.0, float(u[0] + u[1])))
    raise BadDimension(f"settings count must be 2 or 3, got {n}")


def horodecki_M(rho: DensityMatrix) -> float:
    """Sum of the two largest eigenvalues of T^t T; M > 1 marks CHSH violation."""
    return f_max(rho, 2) ** 2


def cjwr_value(rho: DensityMatrix, mu: MeasurementSettings) -> float:
    """Direct evaluation of F_n = (1/sqrt(n)) |sum_k <A_k x B_k>| on rho.

    Works on the Hilbert-space operators rather than the correlation
    matrix, so it is an independent check of every T-based shortcut.
    """
    _require_two_qubits(rho)
    if not isinstance(mu, MeasurementSettings):
        raise BadSettings("expected MeasurementSettings")
    total = 0.0
    for k in range(mu.n):
        a_op = sum(mu.alice_axes[k][i] * PAULIS[i] for i in range(3))
        b_op = sum(mu.bob_axes[k][i] * PAULIS[i] for i in range(3))
        total += float(np.trace(rho.matrix @ np.kron(a_op, b_op)).real)
    return abs(total) / math.sqrt(mu.n)


# ---- brute-force oracle --------------------------------------------------

def _rot_axis(i: int, t: float) -> np.ndarray:
    c, s = math.cos(t), math.sin(t)
    if i == 0:
        return np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])
    if i == 1:
        return np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def _rot_zyz(a: float, b: float, c: float) -> np.ndarray:
    return _rot_axis(2, a) @ _rot_axis(1, b) @ _rot_axis(2, c)


def _golden_line(f, width, evals_left, tol):
    lo, hi = -width, width
    x1 = hi - _GOLDEN * (hi - lo)
    x2 = lo + _GOLDEN * (hi - lo)
    f1, f2 = f(x1), f(x2)
    used = 2
    while hi - lo > tol and used < evals_left:
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _GOLDEN * (hi - lo)
            f2 = f(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _GOLDEN * (hi - lo)
            f1 = f(x1)
        used += 1
    if f1 >= f2:
        return x1, f1, used
    return x2, f2, used


def _oracle_search(tmat: np.ndarray, n: int, budget: int, seed: int):
    """Maximize (1/sqrt(n)) sum_k |T b_k| over Bob frames.

    Random rotations (uniform via ZYZ angles with cos-uniform polar angle)
    seed a coordinate golden-section refinement in incremental rotations
    about the x/y/z axes; ``budget`` counts every rotation evaluated.
    For fixed Bob axes the optimal Alice axes are T b_k / |T b_k| term by
    term, so the inner maximization is exact and costs nothing.
    """
    if np.abs(tmat).max() < 1e-300:
        return 0.0, np.eye(3)
    rng = np.random.default_rng(seed)
    n_rand = max(1, int(budget * 0.3))
    angles = np.column_stack(
        [
            rng.uniform(0.0, 2.0 * math.pi, n_rand),
            np.arccos(rng.uniform(-1.0, 1.0, n_rand)),
            rng.uniform(0.0, 2.0 * math.pi, n_rand),
        ]
    )
    rots = np.empty((n_rand, 3, 3))
    for i in range(n_rand):
        rots[i] = _rot_zyz(*angles[i])
    vals = backend.cjwr_batch(tmat, rots, n)
    used = n_rand
    best_i = int(np.argmax(vals))
    best = float(vals[best_i])
    rot = rots[best_i]
    width = 0.5
    while used < budget - 6:
        gain = 0.0
        for axis in range(3):
            if used >= budget - 3:
                break

            def f(theta, _axis=axis):
                return backend.cjwr_single(tmat, rot @ _rot_axis(_axis, theta), n)

            theta_b, f_b, spent = _golden_line(
                f, width, budget - used, tol=max(1e-12, width * 5e-3)
            )
            used += spent
            if f_b > best:
                gain += f_b - best
                best = f_b
                rot = rot @ _rot_axis(axis, theta_b)
        if gain < 1e-14:
            width *= 0.5
        if width < 1e-10:
            width = 0.5
    return best, rot


def f_max_oracle(rho: DensityMatrix, n: int, budget: int, seed: int) -> float:
    """Best F_n found by seeded rotation search; never above the analytic max."""
    value, _ = f_max_oracle_detailed(rho, n, budget, seed)
    return value


def f_max_oracle_detailed(rho: DensityMatrix, n: int, budget: int, seed: int):
    """Like `f_max_oracle` but also returns the optimizing settings."""
    if n not in (2, 3):
        raise BadDimension(f"settings count must be 2 or 3, got {n}")
    if budget < 1:
        raise ValueError("budget must be >= 1")
    t = correlation_matrix(rho)
    value, rot = _oracle_search(t, n, budget, seed)
    bob = rot[:, :n].T.copy()
    alice = np.empty_like(bob)
    for k in range(n):
        tb = t @ bob[k]
        nrm = float(np.sqrt(tb @ tb))
        # degenerate T b_k contributes 0; any unit Alice axis will do
        alice[k] = tb / nrm if nrm > 1e-300 else np.array([0.0, 0.0, 1.0])
    return value, measurement_settings(alice, bob)


# ---- three-qubit reports -------------------------------------------------

def steering_report(rho: DensityMatrix, eps_steer: float = DEFAULT_EPS_STEER) -> SteeringReport:
    """All pairwise steering quantities of a three-qubit state.

    ``i_nonlocal`` uses N_ij = max(0, S_ij - 1) summed over the best pair
    of pairs; ``i_nonlocal_alt`` is the alternative reading that sums the
    raw S_ij instead (both are reported because the two figures disagree
    in general; the CLI prints them side by side).
    """
    _require_three_qubits(rho)
    if eps_steer < 0:
        raise ValueError("eps_steer must be >= 0")
    d = decompose3(rho)
    tees = {"AB": d.t_ab, "AC": d.t_ac, "BC": d.t_bc}
    s = {}
    f2 = {}
    f3 = {}
    m = {}
    nviol = {}
    for pair in PAIRS:
        t = tees[pair]
        s_val = float(np.sum(t * t))
        u = _tt_eigenvalues(t)
        s[pair] = s_val
        f3[pair] = math.sqrt(s_val)
        f2[pair] = math.sqrt(max(0.0, float(u[0] + u[1])))
        m[pair] = f2[pair] ** 2
        nviol[pair] = max(0.0, s_val - 1.0)
    pair_sums_s = (s["AB"] + s["AC"], s["AB"] + s["BC"], s["AC"] + s["BC"])
    pair_sums_n = (
        nviol["AB"] + nviol["AC"],
        nviol["AB"] + nviol["BC"],
        nviol["AC"] + nviol["BC"],
    )
    steerable = tuple(p for p in PAIRS if s[p] > 1.0 + eps_steer)
    graph = {0: "no-edge", 1: "one-edge", 2: "two-edge"}.get(len(steerable))
    if graph is None:
        # trade-off bound: three steerable pairs cannot occur for states
        graph = "two-edge"
    return SteeringReport(
        s=s,
        f2max=f2,
        f3max=f3,
        horodecki=m,
        n_violation=nviol,
        s_max=max(s.values()),
        s_total_max=max(pair_sums_s),
        i_local=float(d.a @ d.a + d.b @ d.b + d.c @ d.c),
        i_nonlocal=max(pair_sums_n),
        i_nonlocal_alt=max(pair_sums_s),
        steerable_pairs=steerable,
        graph_type=graph,
    )


@dataclass(frozen=True)
class TradeOffRecord:
    total: float
    is_pure: bool
    satisfied: bool


def trade_off_check(rho: DensityMatrix) -> TradeOffRecord:
    """S_AB + S_AC + S_BC <= 3, with equality required of pure states."""
    _require_three_qubits(rho)
    rep = steering_report(rho)
    total = sum(rep.s.values())
    pure = is_pure(rho)
    ok = total <= 3.0 + 1e-9
    if pure:
        ok = ok and abs(total - 3.0) <= 1e-9
    return TradeOffRecord(total=total, is_pure=pure, satisfied=ok)


@dataclass(frozen=True)
class F2MonogamyRecord:
    sums: dict        # shared vertex -> M_ij + M_ik
    satisfied: dict   # shared vertex -> sum <= 2 + 1e-9
    all_satisfied: bool


def f2_monogamy_check(rho: DensityMatrix) -> F2MonogamyRecord:
    """Two-setting monogamy: M(rho_ij) + M(rho_ik) <= 2 about each vertex."""
    _require_three_qubits(rho)
    m = {}
    for pair in PAIRS:
        m[pair] = horodecki_M(partial_trace(rho, pair))
    sums = {
        "A": m["AB"] + m["AC"],
        "B": m["AB"] + m["BC"],
        "C": m["AC"] + m["BC"],
    }
    satisfied = {k: v <= 2.0 + 1e-9 for k, v in sums.items()}
    return F2MonogamyRecord(sums=sums, satisfied=satisfied, all_satisfied=all(satisfied.values()))
