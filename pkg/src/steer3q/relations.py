"""Executable verifiers for the steering/entanglement trade-off relations.

Each ``check_*`` returns a `RelationRecord` with the left-hand side, the
bound, the margin (bound - lhs), and a pass flag at tolerance 1e-9; the
``inputs_digest`` ties the record to the exact input for replay.

Implication-style checks (threshold 4/9, the averaged-concurrence
equivalence, the entanglement detectors) use a dead band: a strict float
inequality only counts as established when it clears the boundary by
``DEAD_BAND`` (1e-7), far above eigenvalue noise and far below physically
meaningful differences.
"""

import hashlib
from dataclasses import dataclass

import numpy as np

from .bloch import decompose3
from .entanglement import pairwise_concurrences_sq, pure_report
from .errors import BadDimension, MixedStateWithoutTau, NotNormalized
from .qlinalg import DensityMatrix, PureState, is_pure
from .steering import PAIRS, steering_report

TOL = 1e-9
DEAD_BAND = 1e-7


@dataclass(frozen=True)
class RelationRecord:
    relation_id: str
    lhs: float
    bound: float
    margin: float
    satisfied: bool
    inputs_digest: str


def state_digest(state, label: str = "") -> str:
    """Short content hash of a state plus a free-form provenance label."""
    if isinstance(state, PureState):
        payload = b"pure:" + state.amplitudes.tobytes()
    elif isinstance(state, DensityMatrix):
        payload = b"density:" + state.matrix.tobytes()
    else:
        payload = repr(state).encode()
    if label:
        payload += b"|" + label.encode()
    return hashlib.sha256(payload).hexdigest()[:16]


def _record(relation_id, lhs, bound, digest) -> RelationRecord:
    margin = bound - lhs
    return RelationRecord(
        relation_id=relation_id,
        lhs=lhs,
        bound=bound,
        margin=margin,
        satisfied=margin >= -TOL,
        inputs_digest=digest,
    )


def _as_density(state) -> DensityMatrix:
    return state.density() if isinstance(state, PureState) else state


def _tau_of(state, tau) -> float:
    """Tangle of the input, or the caller-supplied closed-form value.

    Mixed states carry no computable tangle here (convex-roof evaluation
    is out of scope); callers verifying mixtures must pass the convexity
    upper bound sum_n p_n tau(psi_n), which only strengthens the bound.
    """
    if tau is not None:
        return float(tau)
    if isinstance(state, PureState):
        return pure_report(state).tau
    if is_pure(state):
        from .entanglement import pure_report_from_density

        return pure_report_from_density(state).tau
    raise MixedStateWithoutTau(
        "mixed state without a supplied closed-form tangle"
    )


def check_tau_smax(state, tau: float | None = None, label: str = "") -> RelationRecord:
    """Largest pairwise S plus twice the tangle stays at or below 3."""
    rho = _as_density(state)
    t = _tau_of(state, tau)
    rep = steering_report(rho)
    return _record("tau_smax", rep.s_max + 2.0 * t, 3.0, state_digest(state, label))


def check_tau_stotal(state, tau: float | None = None, label: str = "") -> RelationRecord:
    """Largest two-pair S total plus the tangle stays at or below 3."""
    rho = _as_density(state)
    t = _tau_of(state, tau)
    rep = steering_report(rho)
    return _record("tau_stotal", rep.s_total_max + t, 3.0, state_digest(state, label))


def _require_pure(psi):
    if not isinstance(psi, PureState):
        raise NotNormalized("this relation is defined for pure states only")
    if psi.n != 3:
        raise BadDimension(f"expected 3 qubits, got n={psi.n}")


def check_ew_stotal(psi: PureState, label: str = "") -> RelationRecord:
    """S_total^max + 3 E_W <= 10/3; saturated by the W state."""
    _require_pure(psi)
    rep = steering_report(psi.density())
    ent = pure_report(psi)
    return _record(
        "ew_stotal", rep.s_total_max + 3.0 * ent.e_w, 10.0 / 3.0, state_digest(psi, label)
    )


def check_bell_steering_tangle(psi: PureState, label: str = "") -> RelationRecord:
    """S^max + M^max + 3 tau <= 5; saturated by GHZ."""
    _require_pure(psi)
    rep = steering_report(psi.density())
    tau = pure_report(psi).tau
    m_max = max(rep.horodecki.values())
    return _record(
        "bell_steering_tangle", rep.s_max + m_max + 3.0 * tau, 5.0, state_digest(psi, label)
    )


def check_info_complementarity(rho, label: str = "") -> RelationRecord:
    """I_local + I_nonlocal <= 3 (N_ij = max(0, S_ij - 1) reading)."""
    dm = _as_density(rho)
    rep = steering_report(dm)
    return _record(
        "info_complementarity", rep.i_local + rep.i_nonlocal, 3.0, state_digest(rho, label)
    )


ALL_PURE_CHECKS = (
    check_tau_smax,
    check_tau_stotal,
    check_ew_stotal,
    check_bell_steering_tangle,
    check_info_complementarity,
)


# ---- concurrence / steerability implications -------------------------------

@dataclass(frozen=True)
class PairImplications:
    per_pair: dict          # pair -> flags and margins
    implications_ok: bool   # no implication violated beyond the dead band
    inputs_digest: str


def steerability_from_concurrence(psi: PureState) -> PairImplications:
    """Per-pair steerability flags with their concurrence-side equivalents.

    Checks, per pair ij with partner pairs ik and jk:
      * sufficiency: C^2_ij > 4/9 implies S_ij > 1;
      * equivalence: S_ij > 1 iff C^2_ij exceeds the mean of the other two;
      * necessity:   S_ij > 1 implies that mean is below 4/9.
    Implication failures only count beyond the dead band.
    """
    _require_pure(psi)
    rep = steering_report(psi.density())
    c2 = pairwise_concurrences_sq(psi.density())
    others = {"AB": ("AC", "BC"), "AC": ("AB", "BC"), "BC": ("AB", "AC")}
    per_pair = {}
    ok = True
    for pair in PAIRS:
        o1, o2 = others[pair]
        mean_rest = (c2[o1] + c2[o2]) / 2.0
        s_val = rep.s[pair]
        above_49 = c2[pair] > 4.0 / 9.0
        steerable = s_val > 1.0
        above_mean = c2[pair] > mean_rest
        if c2[pair] - 4.0 / 9.0 > DEAD_BAND and s_val < 1.0 - DEAD_BAND:
            ok = False
        if s_val - 1.0 > DEAD_BAND and c2[pair] - mean_rest < -DEAD_BAND:
            ok = False
        if c2[pair] - mean_rest > DEAD_BAND and s_val < 1.0 - DEAD_BAND:
            ok = False
        if s_val - 1.0 > DEAD_BAND and mean_rest - 4.0 / 9.0 > DEAD_BAND:
            ok = False
        per_pair[pair] = {
            "c2": c2[pair],
            "s": s_val,
            "c2_above_4_9": above_49,
            "steerable": steerable,
            "c2_above_mean_rest": above_mean,
            "mean_rest": mean_rest,
        }
    return PairImplications(per_pair=per_pair, implications_ok=ok, inputs_digest=state_digest(psi))


@dataclass(frozen=True)
class MonogamyChecks:
    corollary4_fires: bool   # >= 2 shared-qubit sums C^2_ik + C^2_jk >= 8/9
    corollary5_fires: bool   # >= 2 pairs with C^2 > 4/9
    monogamous: bool         # at most one steerable pair, by direct computation
    consistent: bool
    inputs_digest: str


def monogamy_sufficient_checks(psi: PureState) -> MonogamyChecks:
    """Evaluate both sufficient conditions against the actual monogamy status."""
    _require_pure(psi)
    rep = steering_report(psi.density())
    c2 = pairwise_concurrences_sq(psi.density())
    sums = (
        c2["AB"] + c2["AC"],
        c2["AB"] + c2["BC"],
        c2["AC"] + c2["BC"],
    )
    cor4 = sum(1 for v in sums if v >= 8.0 / 9.0) >= 2
    cor5 = sum(1 for v in c2.values() if v > 4.0 / 9.0) >= 2
    monogamous = len(rep.steerable_pairs) <= 1
    consistent = True
    # corollary 4 (sufficient for monogamy), with dead band on the premise
    if sum(1 for v in sums if v - 8.0 / 9.0 > DEAD_BAND) >= 2 and not monogamous:
        consistent = False
    # corollary 5 (sufficient for non-monogamy)
    if sum(1 for v in c2.values() if v - 4.0 / 9.0 > DEAD_BAND) >= 2 and monogamous:
        consistent = False
    return MonogamyChecks(
        corollary4_fires=cor4,
        corollary5_fires=cor5,
        monogamous=monogamous,
        consistent=consistent,
        inputs_digest=state_digest(psi),
    )


# ---- entanglement detectors -------------------------------------------------

def _bloch_norms_sq(psi: PureState):
    d = decompose3(psi.density())
    return float(d.a @ d.a), float(d.b @ d.b), float(d.c @ d.c)


def detect_entanglement_pure(psi: PureState) -> bool:
    """True when a Bloch-norm balance equality is broken (state is entangled).

    Fires only when some |v_i|^2 differs from the mean of the other two
    by more than the dead band; False ("inconclusive") carries no
    information, e.g. the W state is entangled yet balanced.
    """
    _require_pure(psi)
    a2, b2, c2 = _bloch_norms_sq(psi)
    return (
        abs(a2 - (b2 + c2) / 2.0) > DEAD_BAND
        or abs(b2 - (a2 + c2) / 2.0) > DEAD_BAND
        or abs(c2 - (a2 + b2) / 2.0) > DEAD_BAND
    )


def detect_genuine_pure(psi: PureState) -> bool:
    """True when two Bloch-norm conditions fire jointly (genuine entanglement).

    Each conjunction corresponds to two steerable reduced pairs, which a
    pure biseparable state cannot produce.
    """
    _require_pure(psi)
    a2, b2, c2 = _bloch_norms_sq(psi)
    gt_a = a2 - (b2 + c2) / 2.0 > DEAD_BAND   # S_BC > 1
    gt_b = b2 - (a2 + c2) / 2.0 > DEAD_BAND   # S_AC > 1
    gt_c = c2 - (a2 + b2) / 2.0 > DEAD_BAND   # S_AB > 1
    return (gt_a and gt_b) or (gt_a and gt_c) or (gt_b and gt_c)
