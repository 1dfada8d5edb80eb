"""Named states, the five-amplitude Schmidt form, classification, noise.

All kets are big-endian (|abc>), matching `steer3q.qlinalg`.

The Schmidt-form (GSD) closed expressions implemented here:

    S_AB = 1 + 8 l0^2 l3^2 - 4 l0^2 l2^2 - 4 l1^2 l4^2 - 4 l2^2 l3^2 + 8 l1 l2 l3 l4 cos(phi)
    S_AC = 1 + 8 l0^2 l2^2 - 4 l0^2 l3^2 - 4 l1^2 l4^2 - 4 l2^2 l3^2 + 8 l1 l2 l3 l4 cos(phi)
    S_BC = 1 - 4 l0^2 l2^2 - 4 l0^2 l3^2 + 8 l1^2 l4^2 + 8 l2^2 l3^2 - 16 l1 l2 l3 l4 cos(phi)

(the l0^2 in the first term of S_BC is required for the three expressions
to sum to 3 on pure states; see also the squared-concurrence forms below)

    C^2_AB = 4 l0^2 l3^2
    C^2_AC = 4 l0^2 l2^2
    C^2_BC = 4 l2^2 l3^2 + 4 l1^2 l4^2 - 8 l1 l2 l3 l4 cos(phi)
"""

import math
from dataclasses import dataclass

import numpy as np

from .entanglement import pure_report
from .errors import (
    BadParams,
    BadRank,
    NoNonMonogamyAtUnitVisibility,
    NotNormalizedParams,
    ParamOutOfRange,
    UnknownName,
)
from .qlinalg import (
    DensityMatrix,
    PureState,
    partial_trace,
    pure_state,
    purity,
    validate_density,
)
from .steering import DEFAULT_EPS_STEER, PAIRS, steering_report

SUBTYPE_NAMES = {
    "0-0": "fully-separable",
    "1-1": "biseparable",
    "2-0": "GHZ-like",
    "2-1": "extended-GHZ",
    "2-2": "star",
    "2-3": "W-like/generic",
}

DEFAULT_EPS_CLASS = 1e-7


# ---- parameterized Schmidt form -------------------------------------------

@dataclass(frozen=True)
class GSDParams:
    lambdas: tuple  # (l0, l1, l2, l3, l4), nonnegative, squares sum to 1
    phi: float      # phase in [0, pi]


def gsd_params(lambdas, phi: float = 0.0) -> GSDParams:
    ls = tuple(float(x) for x in lambdas)
    if len(ls) != 5:
        raise NotNormalizedParams(f"need 5 amplitudes, got {len(ls)}")
    if any(x < 0 for x in ls):
        raise NotNormalizedParams("amplitudes must be nonnegative")
    total = sum(x * x for x in ls)
    if abs(total - 1.0) > 1e-10:
        raise NotNormalizedParams(f"sum of squared amplitudes is {total!r}, not 1")
    if not 0.0 <= phi <= math.pi:
        raise NotNormalizedParams(f"phase {phi!r} outside [0, pi]")
    return GSDParams(lambdas=ls, phi=float(phi))


def gsd_state(p: GSDParams) -> PureState:
    """l0|000> + l1 e^{i phi}|100> + l2|101> + l3|110> + l4|111>."""
    l0, l1, l2, l3, l4 = p.lambdas
    v = np.zeros(8, dtype=complex)
    v[0b000] = l0
    v[0b100] = l1 * np.exp(1j * p.phi)
    v[0b101] = l2
    v[0b110] = l3
    v[0b111] = l4
    return pure_state(v, 3)


def gsd_s_formulas(p: GSDParams) -> tuple:
    l0, l1, l2, l3, l4 = p.lambdas
    cos = math.cos(p.phi)
    cross = l1 * l2 * l3 * l4 * cos
    s_ab = (
        1.0 + 8 * l0**2 * l3**2 - 4 * l0**2 * l2**2 - 4 * l1**2 * l4**2
        - 4 * l2**2 * l3**2 + 8 * cross
    )
    s_ac = (
        1.0 + 8 * l0**2 * l2**2 - 4 * l0**2 * l3**2 - 4 * l1**2 * l4**2
        - 4 * l2**2 * l3**2 + 8 * cross
    )
    s_bc = (
        1.0 - 4 * l0**2 * l2**2 - 4 * l0**2 * l3**2 + 8 * l1**2 * l4**2
        + 8 * l2**2 * l3**2 - 16 * cross
    )
    return s_ab, s_ac, s_bc


def gsd_concurrences(p: GSDParams) -> tuple:
    l0, l1, l2, l3, l4 = p.lambdas
    c2_ab = 4 * l0**2 * l3**2
    c2_ac = 4 * l0**2 * l2**2
    c2_bc = 4 * l2**2 * l3**2 + 4 * l1**2 * l4**2 - 8 * l1 * l2 * l3 * l4 * math.cos(p.phi)
    return c2_ab, c2_ac, c2_bc


def w_like_monogamy(p: GSDParams, eps_steer: float = DEFAULT_EPS_STEER) -> bool:
    """Harmonic-mean monogamy criterion for the l4 = 0 class.

    The pair (i, j) of {0, 2, 3} with complement k is steerable iff the
    harmonic mean H(l_i^2, l_j^2) exceeds l_k^2; monogamy holds iff at
    most one of the three conditions fires.  The comparison is carried
    with the same strictness as S > 1 + eps_steer, to which it is
    algebraically identical: S - 1 = 4 (l_i^2 + l_j^2)(H - l_k^2).
    """
    l0, l1, l2, l3, l4 = p.lambdas
    if l4 != 0.0:
        raise BadParams("criterion applies to the l4 = 0 class only")
    if l0 <= 0 or l2 <= 0 or l3 <= 0:
        raise BadParams("requires l0, l2, l3 > 0")
    sq = {0: l0 * l0, 2: l2 * l2, 3: l3 * l3}

    def harmonic(x, y):
        return 2.0 * x * y / (x + y)

    fired = 0
    for i, j, k in ((0, 3, 2), (0, 2, 3), (2, 3, 0)):
        excess = 4.0 * (sq[i] + sq[j]) * (harmonic(sq[i], sq[j]) - sq[k])
        if excess > eps_steer:
            fired += 1
    return fired <= 1


# ---- named states ----------------------------------------------------------

def _ket(*bits) -> np.ndarray:
    v = np.zeros(8, dtype=complex)
    v[bits[0] * 4 + bits[1] * 2 + bits[2]] = 1.0
    return v


def _bell_pair_embedded(pair: str) -> np.ndarray:
    """(|00>+|11>)/sqrt(2) on the named pair, |0> on the remaining qubit."""
    v = np.zeros(8, dtype=complex)
    v[0] = 1.0
    v[{"AB": 0b110, "AC": 0b101, "BC": 0b011}[pair]] = 1.0
    return v / math.sqrt(2.0)


def _check_range(name, value, lo, hi, *, open_lo=False, open_hi=False):
    bad_lo = value < lo or (open_lo and value == lo)
    bad_hi = value > hi or (open_hi and value == hi)
    if bad_lo or bad_hi:
        lb, rb = "(" if open_lo else "[", ")" if open_hi else "]"
        raise ParamOutOfRange(f"{name} = {value!r} outside {lb}{lo}, {hi}{rb}")


def _one_param(name, params):
    if len(params) != 1:
        raise ParamOutOfRange(f"{name!r} takes exactly one parameter, got {len(params)}")
    return float(params[0])


def make_named(name: str, params=()) -> PureState | DensityMatrix:
    """Construct a named state; see `FAMILY_NAMES` for the registry.

    Mixed families return a DensityMatrix, the rest a PureState.  Note
    the biseparable mixture "phi_b" has a negative component weight for
    eps > 1/8 and is then only a Hermitian unit-trace carrier, not a
    physical state; it is constructed without the positivity check so the
    documented eps range [0, 1] stays usable.
    """
    name = name.lower()
    sq2 = math.sqrt(2.0)
    if name == "ghz":
        return pure_state((_ket(0, 0, 0) + _ket(1, 1, 1)) / sq2)
    if name == "w":
        return pure_state((_ket(0, 0, 1) + _ket(0, 1, 0) + _ket(1, 0, 0)) / math.sqrt(3.0))
    if name == "product":
        return pure_state(_ket(0, 0, 0))
    if name == "psi_abc":
        return pure_state(0.5 * (_ket(1, 0, 0) + _ket(0, 1, 0) + sq2 * _ket(0, 0, 1)))
    if name == "psi_abc_gsd":
        # Schmidt-form twin of psi_abc (same invariants under local unitaries)
        return gsd_state(gsd_params((0.5, 0.0, 1.0 / sq2, 0.5, 0.0)))
    if name == "phi_con":
        return pure_state(
            (math.sqrt(3.0) / 2.0) * _ket(0, 0, 0)
            + (1.0 / (2.0 * sq2)) * (_ket(1, 0, 1) + _ket(1, 1, 0))
        )
    if name == "phi_m":
        m = _one_param(name, params)
        _check_range("m", m, 0.0, 1.0)
        v = _ket(0, 0, 0) + m * (_ket(1, 0, 1) + _ket(0, 1, 0)) + _ket(1, 1, 1)
        return pure_state(v / math.sqrt(2.0 + 2.0 * m * m))
    if name == "phi_q":
        q = _one_param(name, params)
        _check_range("q", q, 0.0, 1.0 / sq2, open_lo=True, open_hi=True)
        v = (
            (1.0 / sq2) * _ket(0, 0, 0)
            + math.sqrt(0.5 - q * q) * _ket(1, 0, 1)
            + q * _ket(1, 1, 1)
        )
        return pure_state(v)
    if name == "phi_b":
        eps = _one_param(name, params)
        _check_range("eps", eps, 0.0, 1.0)
        w_ab = 4.0 / 9.0 * (1.0 + eps)
        w_ac = 4.0 / 9.0 * (1.0 + eps)
        w_bc = 1.0 / 9.0 * (1.0 - 8.0 * eps)
        mat = np.zeros((8, 8), dtype=complex)
        for weight, pair in ((w_ab, "AB"), (w_ac, "AC"), (w_bc, "BC")):
            v = _bell_pair_embedded(pair)
            mat += weight * np.outer(v, v.conj())
        return validate_density(mat, 3, check_psd=eps <= 0.125)
    if name == "phi_eghz":
        if params:
            if len(params) != 2:
                raise ParamOutOfRange("phi_eghz takes (lambda0, lambda2)")
            l0, l2 = (float(x) for x in params)
        else:
            l0, l2 = 1.0 / sq2, 0.5
        rem = 1.0 - l0 * l0 - l2 * l2
        if l0 <= 0 or l2 <= 0 or rem <= 1e-12:
            raise ParamOutOfRange("phi_eghz needs l0, l2 > 0 with l0^2 + l2^2 < 1")
        return gsd_state(gsd_params((l0, 0.0, l2, 0.0, math.sqrt(rem))))
    if name == "bisep":
        theta = _one_param(name, params)
        _check_range("theta", theta, 0.0, math.pi / 2.0)
        v = math.cos(theta) * _ket(0, 0, 0) + math.sin(theta) * _ket(1, 1, 0)
        return pure_state(v)
    if name == "phi_star_v":
        return pure_state(
            0.5 * (_ket(0, 0, 0) + _ket(1, 0, 0) + _ket(1, 1, 0) + _ket(1, 1, 1))
        )
    if name == "phi_w_v":
        return pure_state(
            math.sqrt(2.0 / 3.0) * _ket(0, 0, 0)
            + math.sqrt(1.0 / 6.0) * (_ket(1, 0, 1) + _ket(1, 1, 0))
        )
    if name == "star_nonmonogamous":
        ls = (math.sqrt(11.0 / 64.0), math.sqrt(5.0 / 64.0), 0.0, 0.5, 1.0 / sq2)
        return gsd_state(gsd_params(ls))
    if name == "star_monogamous":
        ls = (math.sqrt(3.0 / 32.0), math.sqrt(5.0 / 32.0), 0.0, 0.5, 1.0 / sq2)
        return gsd_state(gsd_params(ls))
    if name == "wlike_example":
        s6 = 1.0 / math.sqrt(6.0)
        v = s6 * (_ket(0, 0, 0) + _ket(1, 0, 0) + _ket(1, 0, 1)) + (1.0 / sq2) * _ket(1, 1, 0)
        return pure_state(v)
    raise UnknownName(f"unknown state name {name!r}")


FAMILY_NAMES = (
    "ghz", "w", "product", "psi_abc", "psi_abc_gsd", "phi_con",
    "phi_m", "phi_q", "phi_b", "phi_eghz", "bisep",
    "phi_star_v", "phi_w_v",
    "star_nonmonogamous", "star_monogamous", "wlike_example",
)

PARAMETRIC_FAMILIES = {"phi_m": "m", "phi_q": "q", "phi_b": "eps", "bisep": "theta"}


# ---- classification --------------------------------------------------------

@dataclass(frozen=True)
class ClassificationResult:
    subtype: str            # "0-0" .. "2-3"
    subtype_name: str
    invariants: dict        # the quantities the decision was made from
    steering_graph: str
    monogamous: bool
    near_boundary: bool
    annotations: tuple


def classify(psi: PureState, eps_class: float = DEFAULT_EPS_CLASS) -> ClassificationResult:
    """Subtype of a pure three-qubit state from its entanglement pattern.

    Decided by the zero/nonzero pattern (threshold ``eps_class``) of the
    three pairwise squared concurrences and the tangle; invariants within
    a factor of two of the threshold set the ``near_boundary`` flag.
    Generic states with three nonzero concurrences and positive tangle
    fall outside the textbook list and are reported as subtype 2-3 with
    an annotation.
    """
    rep = pure_report(psi)
    srep = steering_report(psi.density())
    tau = rep.tau
    c2 = rep.c2
    nonzero = [p for p in PAIRS if c2[p] > eps_class]
    tau_pos = tau > eps_class
    count = len(nonzero)
    annotations = []
    if count == 3:
        subtype = "2-3"
        if tau_pos:
            annotations.append("tau>0: outside the l4=0 presentation of subtype 2-3")
    elif count == 2:
        subtype = "2-2"
        if not tau_pos:
            annotations.append("tau~0 with two nonzero concurrences: boundary case")
    elif count == 1:
        subtype = "2-1" if tau_pos else "1-1"
    else:
        subtype = "2-0" if tau_pos else "0-0"
    near = any(
        eps_class / 2.0 <= v <= 2.0 * eps_class
        for v in (tau, c2["AB"], c2["AC"], c2["BC"])
    )
    if near:
        annotations.append("an invariant sits within a factor of 2 of eps_class")
    d = psi.density()
    invariants = {
        "C2_AB": c2["AB"],
        "C2_AC": c2["AC"],
        "C2_BC": c2["BC"],
        "tau": tau,
        "purity_A": purity_of_single(d, "A"),
        "purity_B": purity_of_single(d, "B"),
        "purity_C": purity_of_single(d, "C"),
    }
    return ClassificationResult(
        subtype=subtype,
        subtype_name=SUBTYPE_NAMES[subtype],
        invariants=invariants,
        steering_graph=srep.graph_type,
        monogamous=len(srep.steerable_pairs) <= 1,
        near_boundary=near,
        annotations=tuple(annotations),
    )


def purity_of_single(rho: DensityMatrix, which: str) -> float:
    return purity(partial_trace(rho, which))


# ---- white noise and robustness -------------------------------------------

@dataclass(frozen=True)
class NoisyState:
    base: PureState
    visibility: float

    def density(self) -> DensityMatrix:
        return add_white_noise(self.base, self.visibility)


def add_white_noise(base: PureState, v: float) -> DensityMatrix:
    """v |psi><psi| + (1 - v) I/8; correlation matrices scale exactly by v."""
    if not 0.0 <= v <= 1.0:
        raise ParamOutOfRange(f"visibility {v!r} outside [0, 1]")
    if base.n != 3:
        raise BadParams("white-noise mixing implemented for 3 qubits")
    mat = v * base.density().matrix + (1.0 - v) * np.eye(8, dtype=complex) / 8.0
    mat.flags.writeable = False
    return DensityMatrix(mat, 3)


def _second_largest_s(rho: DensityMatrix) -> float:
    return sorted(steering_report(rho).s.values())[1]


def _require_two_steerable(base: PureState) -> float:
    s2 = _second_largest_s(base.density())
    if s2 <= 1.0 + DEFAULT_EPS_STEER:
        raise NoNonMonogamyAtUnitVisibility(
            f"second-largest S = {s2!r} at v = 1; need two steerable pairs"
        )
    return s2


def v_crit_numeric(base: PureState, tol: float = 1e-10) -> float:
    """Smallest visibility with two steerable pairs, by bisection.

    Each probe rebuilds the noisy state and recomputes S through the full
    matrix path (no scaling shortcut), so this is an independent oracle
    for the closed form 1/sqrt(second-largest S at v = 1).
    """
    _require_two_steerable(base)
    lo, hi = 0.0, 1.0
    while hi - lo > tol:
        mid = (lo + hi) / 2.0
        if _second_largest_s(add_white_noise(base, mid)) > 1.0:
            hi = mid
        else:
            lo = mid
    return (lo + hi) / 2.0


def v_crit_closed_quadratic(base: PureState) -> float:
    """1/sqrt(second-largest S at v = 1), from the exact v^2 scaling of S."""
    return 1.0 / math.sqrt(_require_two_steerable(base))


def v_crit_paper_linear(base: PureState) -> float:
    """1/(second-largest S at v = 1): the published reading, linear in v.

    Reproduces the published figures (0.8 for the symmetric star state,
    0.75 for the most robust l4 = 0 state) but contradicts the exact v^2
    scaling of S under white-noise mixing; report alongside the oracle.
    """
    return 1.0 / _require_two_steerable(base)


def star_vcrit_formula(p: GSDParams) -> float:
    """Published closed form for the star class (l2 = 0 presentation).

    max of 1/(1 + 8 l0^2 l3^2 - 4 l1^2 l4^2) and 1/(1 + 8 l1^2 l4^2 - 4 l0^2 l3^2);
    the printed version writes l2 where the state's nonzero amplitude is l3.
    """
    l0, l1, l2, l3, l4 = p.lambdas
    if l2 != 0.0:
        raise BadParams("star closed form applies to the l2 = 0 presentation")
    x = l0 * l0 * l3 * l3
    y = l1 * l1 * l4 * l4
    return max(1.0 / (1.0 + 8.0 * x - 4.0 * y), 1.0 / (1.0 + 8.0 * y - 4.0 * x))


def wclass_vcrit_formula(p: GSDParams) -> float:
    """Published closed form for the l4 = 0 class: min over pairs of max(w_i, w_j)."""
    l0, l1, l2, l3, l4 = p.lambdas
    if l4 != 0.0:
        raise BadParams("W-class closed form applies to the l4 = 0 presentation")
    a, b, c = l0 * l0, l2 * l2, l3 * l3
    w1 = 1.0 / (1.0 + 8.0 * a * c - 4.0 * a * b - 4.0 * b * c)
    w2 = 1.0 / (1.0 + 8.0 * a * b - 4.0 * a * c - 4.0 * b * c)
    w3 = 1.0 / (1.0 + 8.0 * b * c - 4.0 * a * b - 4.0 * a * c)
    return min(max(w1, w2), max(w1, w3), max(w2, w3))


def phi_b_steering_threshold(tol: float = 1e-9) -> float:
    """Mixing parameter where the biseparable family reaches two steerable pairs.

    Bisection on the second-largest S of the family against the closed
    form (16/27)(1+eps)^2 = 1, i.e. eps = 9/(4 sqrt(3)) - 1.
    """
    lo, hi = 0.0, 1.0

    def two_steerable(eps):
        rep = steering_report(make_named("phi_b", (eps,)))
        return sorted(rep.s.values())[1] > 1.0

    while hi - lo > tol:
        mid = (lo + hi) / 2.0
        if two_steerable(mid):
            hi = mid
        else:
            lo = mid
    return (lo + hi) / 2.0


# ---- random state sampling -------------------------------------------------

def _as_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def haar_random_pure(seed, n: int = 3) -> PureState:
    """Haar-uniform pure state: normalized complex Gaussian amplitudes."""
    rng = _as_rng(seed)
    v = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    v /= np.linalg.norm(v)
    return pure_state(v, n)


def random_mixed(seed, rank: int) -> DensityMatrix:
    """Rank-limited random 3-qubit state: trace an ancilla off a Haar pure state."""
    if not 1 <= rank <= 8:
        raise BadRank(f"rank {rank!r} outside [1, 8]")
    rng = _as_rng(seed)
    m = rng.normal(size=(8, rank)) + 1j * rng.normal(size=(8, rank))
    m /= np.linalg.norm(m)
    rho = m @ m.conj().T
    rho = (rho + rho.conj().T) / 2.0
    rho.flags.writeable = False
    return DensityMatrix(rho, 3)


_PERMS3 = ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0))


def _permute_qubits(v: np.ndarray, perm) -> np.ndarray:
    out = np.empty_like(v)
    for idx in range(8):
        bits = ((idx >> 2) & 1, (idx >> 1) & 1, idx & 1)
        src = (bits[perm[0]] << 2) | (bits[perm[1]] << 1) | bits[perm[2]]
        out[idx] = v[src]
    return out


def symmetrize(psi: PureState) -> PureState:
    """Project onto the permutation-symmetric subspace and renormalize."""
    if psi.n != 3:
        raise BadParams("symmetrization implemented for 3 qubits")
    acc = np.zeros(8, dtype=complex)
    for perm in _PERMS3:
        acc += _permute_qubits(psi.amplitudes, perm)
    nrm = np.linalg.norm(acc)
    if nrm < 1e-12:
        raise BadParams("state has no symmetric component")
    return pure_state(acc / nrm, 3)
