"""Seeded property suites behind ``steer3q verify``.

Every suite draws per-sample randomness from ``default_rng((tag, seed,
index))``, so results are independent of chunking and worker count; the
merge step uses only order-independent reductions (sums, min by
(margin, index), sorted index lists).  Margins fold the check tolerance
in: a sample passes iff its margin is >= 0.

Checks marked as boolean report margin +-1.
"""

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import families, relations, steering
from .bloch import decompose2, decompose3
from .entanglement import ckw_check, concurrence, pairwise_concurrences_sq, pure_report
from .errors import UnknownSuite
from .qlinalg import DensityMatrix, PureState, partial_trace, pure_state
from .steering import steering_report

_EQ_TOL = 1e-9
_ORDER_TOL = 1e-8
_GSD_TOL = 1e-8
_DEAD = relations.DEAD_BAND

_SUITE_TAGS = {
    "tradeoff": 101,
    "theorem1": 102,
    "ordering": 103,
    "implications": 104,
    "complementarity": 105,
    "f2monogamy": 106,
    "symmetric": 107,
    "pure2q": 108,
    "ckw": 109,
    "gsd": 110,
    "wlike": 111,
    "vscaling": 112,
    "oracle": 113,
    "phib": 114,
    "detectors": 115,
}

SUITE_NAMES = tuple(_SUITE_TAGS)


def _rng(name: str, seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng((_SUITE_TAGS[name], seed, index))


def _haar(rng, n: int = 3) -> PureState:
    v = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    v /= np.linalg.norm(v)
    return pure_state(v, n)


def _mixed(rng, rank: int, n: int = 3) -> DensityMatrix:
    m = rng.normal(size=(2**n, rank)) + 1j * rng.normal(size=(2**n, rank))
    m /= np.linalg.norm(m)
    rho = m @ m.conj().T
    rho = (rho + rho.conj().T) / 2.0
    rho.flags.writeable = False
    return DensityMatrix(rho, n)


# ---------------------------------------------------------------------------
# per-sample check functions; each returns [(check_id, margin), ...] and an
# optional list of (observation_id, value) pairs

def _sample_tradeoff(seed, index, samples):
    n_mixed = max(1, samples // 10)
    rng = _rng("tradeoff", seed, index)
    if index < samples:
        rep = steering_report(_haar(rng).density())
        total = sum(rep.s.values())
        return [("pure_sum_eq_3", _EQ_TOL - abs(total - 3.0))], []
    rank = 2 + (index - samples) // n_mixed
    rep = steering_report(_mixed(rng, rank))
    total = sum(rep.s.values())
    return [("mixed_sum_le_3", 3.0 + _EQ_TOL - total)], []


def _sample_theorem1(seed, index, samples):
    rng = _rng("theorem1", seed, index)
    checks = []
    if index < samples:
        psi = _haar(rng)
        rho = psi.density()
        rep = steering_report(rho)
        d = decompose3(rho)
        a2, b2, c2 = float(d.a @ d.a), float(d.b @ d.b), float(d.c @ d.c)
        # S_ij - 1 equals twice the Bloch excess of the complementary qubit
        errs = (
            abs(rep.s["AB"] - 1.0 - (2 * c2 - a2 - b2)),
            abs(rep.s["AC"] - 1.0 - (2 * b2 - a2 - c2)),
            abs(rep.s["BC"] - 1.0 - (2 * a2 - b2 - c2)),
        )
        checks.append(("pure_s_bloch_identity", _EQ_TOL - max(errs)))
        count = len(rep.steerable_pairs)
        checks.append(("steerable_pairs_le_2", 1.0 if count <= 2 else -1.0))
        second = sorted(rep.s.values())[1]
        if second > 1.0 + _DEAD:
            ok = rep.i_local < 1.0 + _EQ_TOL
            checks.append(("two_steerable_needs_local_lt_1", 1.0 if ok else -1.0))
    else:
        rep = steering_report(_mixed(rng, 2 + (index - samples) % 7))
        count = len(rep.steerable_pairs)
        checks.append(("steerable_pairs_le_2", 1.0 if count <= 2 else -1.0))
    return checks, []


def _sample_ordering(seed, index, samples):
    rng = _rng("ordering", seed, index)
    psi = _haar(rng)
    rep = steering_report(psi.density())
    c2 = pairwise_concurrences_sq(psi.density())
    pairs = ("AB", "AC", "BC")
    errs = []
    for i in range(3):
        for j in range(i + 1, 3):
            p, q = pairs[i], pairs[j]
            errs.append(abs((rep.s[p] - rep.s[q]) - 3.0 * (c2[p] - c2[q])))
    checks = [("difference_identity", _ORDER_TOL - max(errs))]
    gaps_s = [abs(rep.s[p] - rep.s[q]) for p, q in (("AB", "AC"), ("AB", "BC"), ("AC", "BC"))]
    gaps_c = [abs(c2[p] - c2[q]) for p, q in (("AB", "AC"), ("AB", "BC"), ("AC", "BC"))]
    if min(gaps_s) > _DEAD and min(gaps_c) > _DEAD:
        order_s = tuple(sorted(pairs, key=lambda p: rep.s[p]))
        order_c = tuple(sorted(pairs, key=lambda p: c2[p]))
        checks.append(("same_sort_order", 1.0 if order_s == order_c else -1.0))
    return checks, []


def _sample_implications(seed, index, samples):
    rng = _rng("implications", seed, index)
    psi = _haar(rng)
    imp = relations.steerability_from_concurrence(psi)
    mono = relations.monogamy_sufficient_checks(psi)
    return [
        ("implication_chains", 1.0 if imp.implications_ok else -1.0),
        ("corollaries_4_5", 1.0 if mono.consistent else -1.0),
    ], []


def _sample_complementarity(seed, index, samples):
    rng = _rng("complementarity", seed, index)
    checks = []
    obs = []
    if index < samples:
        psi = _haar(rng)
        rep = steering_report(psi.density())
        ent = pure_report(psi)
        tau = ent.tau
        checks.append(("tau_smax", 3.0 + _EQ_TOL - (rep.s_max + 2.0 * tau)))
        checks.append(("tau_stotal", 3.0 + _EQ_TOL - (rep.s_total_max + tau)))
        checks.append(
            ("ew_stotal", 10.0 / 3.0 + _EQ_TOL - (rep.s_total_max + 3.0 * ent.e_w))
        )
        m_max = max(rep.horodecki.values())
        checks.append(
            ("bell_steering_tangle", 5.0 + _EQ_TOL - (rep.s_max + m_max + 3.0 * tau))
        )
        checks.append(
            ("info_complementarity", 3.0 + _EQ_TOL - (rep.i_local + rep.i_nonlocal))
        )
        if len(rep.steerable_pairs) >= 2 and tau > 1e-6:
            obs.append(("max_tau_stotal_lhs_two_steerable", rep.s_total_max + tau))
    else:
        # convex mixtures of pure states; tangle replaced by its convexity
        # upper bound sum_n p_n tau_n, which only strengthens the bound
        k = int(rng.integers(2, 5))
        weights = rng.dirichlet(np.ones(k))
        mats = []
        tau_ub = 0.0
        for p in range(k):
            psi = _haar(rng)
            tau_ub += weights[p] * pure_report(psi).tau
            mats.append(weights[p] * psi.density().matrix)
        rho_m = np.sum(mats, axis=0)
        rho_m.flags.writeable = False
        rho = DensityMatrix(rho_m, 3)
        rep = steering_report(rho)
        checks.append(("tau_smax_mixed", 3.0 + _EQ_TOL - (rep.s_max + 2.0 * tau_ub)))
        checks.append(("tau_stotal_mixed", 3.0 + _EQ_TOL - (rep.s_total_max + tau_ub)))
        checks.append(
            ("info_complementarity_mixed", 3.0 + _EQ_TOL - (rep.i_local + rep.i_nonlocal))
        )
    return checks, obs


def _sample_f2monogamy(seed, index, samples):
    rng = _rng("f2monogamy", seed, index)
    if index < samples:
        rho = _haar(rng).density()
    else:
        rho = _mixed(rng, 2 + (index - samples) % 7)
    rec = steering.f2_monogamy_check(rho)
    return [("f2_sums_le_2", 2.0 + _EQ_TOL - max(rec.sums.values()))], []


def _sample_symmetric(seed, index, samples):
    rng = _rng("symmetric", seed, index)
    psi = families.symmetrize(_haar(rng))
    rep = steering_report(psi.density())
    return [("symmetric_s_le_1", 1.0 + _EQ_TOL - max(rep.s.values()))], []


def _sample_pure2q(seed, index, samples):
    rng = _rng("pure2q", seed, index)
    psi = _haar(rng, n=2)
    rho = psi.density()
    s = steering.s_param(rho)
    c = concurrence(rho)
    return [("s_eq_1_plus_2c2", _EQ_TOL - abs(s - 1.0 - 2.0 * c * c))], []


def _sample_ckw(seed, index, samples):
    rng = _rng("ckw", seed, index)
    rec = ckw_check(_haar(rng))
    return [
        ("pair_sums_le_1", min(rec.pair_margins.values()) + _EQ_TOL),
        ("total_le_4_3", rec.total_margin + _EQ_TOL),
    ], []


def _random_gsd(rng, l4_zero=False) -> families.GSDParams:
    ls = np.abs(rng.normal(size=5))
    if l4_zero:
        ls[4] = 0.0
        ls[[0, 2, 3]] += 1e-3  # keep the class constraints strictly positive
    ls /= math.sqrt(float(np.sum(ls * ls)))
    phi = float(rng.uniform(0.0, math.pi))
    return families.gsd_params(ls, phi)


def _sample_gsd(seed, index, samples):
    rng = _rng("gsd", seed, index)
    p = _random_gsd(rng)
    psi = families.gsd_state(p)
    rep = steering_report(psi.density())
    s_closed = families.gsd_s_formulas(p)
    s_direct = (rep.s["AB"], rep.s["AC"], rep.s["BC"])
    c_closed = families.gsd_concurrences(p)
    c2 = pairwise_concurrences_sq(psi.density())
    c_direct = (c2["AB"], c2["AC"], c2["BC"])
    return [
        ("s_formulas_match", _GSD_TOL - max(abs(x - y) for x, y in zip(s_closed, s_direct))),
        (
            "concurrence_formulas_match",
            _GSD_TOL - max(abs(x - y) for x, y in zip(c_closed, c_direct)),
        ),
    ], []


def _sample_wlike(seed, index, samples):
    rng = _rng("wlike", seed, index)
    p = _random_gsd(rng, l4_zero=True)
    flag = families.w_like_monogamy(p)
    rep = steering_report(families.gsd_state(p).density())
    direct = len(rep.steerable_pairs) <= 1
    return [("harmonic_mean_matches_direct", 1.0 if flag == direct else -1.0)], []


def _sample_vscaling(seed, index, samples):
    rng = _rng("vscaling", seed, index)
    psi = _haar(rng)
    v = float(rng.uniform(0.0, 1.0))
    base_rep = steering_report(psi.density())
    noisy = families.add_white_noise(psi, v)
    noisy_rep = steering_report(noisy)
    s_err = max(
        abs(noisy_rep.s[p] - v * v * base_rep.s[p]) for p in steering.PAIRS
    )
    d0 = decompose2(partial_trace(psi.density(), "AB"))
    d1 = decompose2(partial_trace(noisy, "AB"))
    t_err = float(np.abs(d1.t - v * d0.t).max())
    return [
        ("s_scaling_v2", 1e-10 - s_err),
        ("t_scaling_v", 1e-12 - t_err),
    ], []


def _sample_oracle(seed, index, samples, budget=5000):
    rng = _rng("oracle", seed, index)
    m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    rho_m = m @ m.conj().T
    rho_m /= np.trace(rho_m).real
    rho_m = (rho_m + rho_m.conj().T) / 2.0
    rho_m.flags.writeable = False
    rho = DensityMatrix(rho_m, 2)
    out = []
    for n in (3, 2):
        analytic = steering.f_max(rho, n)
        found = steering.f_max_oracle(rho, n, budget, int(index) * 7 + n)
        out.append((f"oracle_reaches_f{n}", 1e-4 - (analytic - found)))
        out.append((f"oracle_not_above_f{n}", _EQ_TOL - (found - analytic)))
    return out, []


def _sample_detectors(seed, index, samples):
    rng = _rng("detectors", seed, index)
    if index < samples:
        # random product state: detector must stay silent
        amps = [None] * 3
        for q in range(3):
            v = rng.normal(size=2) + 1j * rng.normal(size=2)
            amps[q] = v / np.linalg.norm(v)
        full = np.kron(np.kron(amps[0], amps[1]), amps[2])
        psi = pure_state(full, 3)
        ok = not relations.detect_entanglement_pure(psi)
        return [("no_detect_on_product", 1.0 if ok else -1.0)], []
    # random biseparable state in one of the three bipartitions
    slot = (index - samples) % 3
    pair = rng.normal(size=4) + 1j * rng.normal(size=4)
    pair /= np.linalg.norm(pair)
    single = rng.normal(size=2) + 1j * rng.normal(size=2)
    single /= np.linalg.norm(single)
    if slot == 0:  # AB | C
        full = np.kron(pair, single)
    elif slot == 1:  # AC | B: build on (A, C) then weave B in
        amps = np.zeros(8, dtype=complex)
        for a in range(2):
            for c in range(2):
                for b in range(2):
                    amps[a * 4 + b * 2 + c] = pair[a * 2 + c] * single[b]
        full = amps
    else:  # A | BC
        full = np.kron(single, pair)
    psi = pure_state(full, 3)
    ok = not relations.detect_genuine_pure(psi)
    return [("no_genuine_on_biseparable", 1.0 if ok else -1.0)], []


_SAMPLERS = {
    "tradeoff": (_sample_tradeoff, lambda n: n + 7 * max(1, n // 10)),
    "theorem1": (_sample_theorem1, lambda n: n + max(1, n // 10)),
    "ordering": (_sample_ordering, lambda n: n),
    "implications": (_sample_implications, lambda n: n),
    "complementarity": (_sample_complementarity, lambda n: n + max(1, n // 10)),
    "f2monogamy": (_sample_f2monogamy, lambda n: n + max(1, n // 10)),
    "symmetric": (_sample_symmetric, lambda n: n),
    "pure2q": (_sample_pure2q, lambda n: n),
    "ckw": (_sample_ckw, lambda n: n),
    "gsd": (_sample_gsd, lambda n: n),
    "wlike": (_sample_wlike, lambda n: n),
    "vscaling": (_sample_vscaling, lambda n: n),
    "oracle": (_sample_oracle, lambda n: n),
    "phib": (None, lambda n: 0),
    "detectors": (_sample_detectors, lambda n: n + n),
}


# ---------------------------------------------------------------------------
# named (once-per-suite) checks, run in the main process

def _named_checks(name: str):
    out = []  # (check_id, margin, note)
    if name == "theorem1":
        rep = steering_report(families.make_named("psi_abc").density())
        ok = len(rep.steerable_pairs) == 2
        out.append(("psi_abc_attains_two", 1.0 if ok else -1.0, ""))
    elif name == "complementarity":
        ghz = families.make_named("ghz")
        rec = relations.check_tau_smax(ghz)
        out.append(("ghz_saturates_tau_smax", _EQ_TOL - abs(rec.lhs - 3.0), ""))
        rec = relations.check_bell_steering_tangle(ghz)
        out.append(("ghz_saturates_bell_steering_tangle", _EQ_TOL - abs(rec.lhs - 5.0), ""))
        w = families.make_named("w")
        rec = relations.check_ew_stotal(w)
        out.append(("w_saturates_ew_stotal", _EQ_TOL - abs(rec.lhs - 10.0 / 3.0), ""))
    elif name == "f2monogamy":
        rec = steering.f2_monogamy_check(families.make_named("ghz").density())
        worst = max(abs(v - 2.0) for v in rec.sums.values())
        out.append(("ghz_at_boundary_2", _EQ_TOL - worst, ""))
    elif name == "ckw":
        rec = ckw_check(families.make_named("w"))
        out.append(("w_saturates_4_3", _EQ_TOL - abs(rec.total - 4.0 / 3.0), ""))
    elif name == "gsd":
        rep = steering_report(families.make_named("star_nonmonogamous").density())
        out.append(
            (
                "star_example_two_steerable",
                1.0 if len(rep.steerable_pairs) == 2 else -1.0,
                "",
            )
        )
        rep = steering_report(families.make_named("star_monogamous").density())
        out.append(
            (
                "star_example_one_steerable",
                1.0 if len(rep.steerable_pairs) == 1 else -1.0,
                "",
            )
        )
    elif name == "wlike":
        rep = steering_report(families.make_named("wlike_example").density())
        note = (
            "published label for this example says one steerable pair; computed "
            f"count is {len(rep.steerable_pairs)} (pairs {','.join(rep.steerable_pairs)}); "
            "reported, not asserted"
        )
        out.append(("wlike_example_report", 1.0, note))
        w_params = families.gsd_params(
            (1.0 / math.sqrt(3.0), 0.0, 1.0 / math.sqrt(3.0), 1.0 / math.sqrt(3.0), 0.0)
        )
        flag = families.w_like_monogamy(w_params)
        rep = steering_report(families.gsd_state(w_params).density())
        ok = flag and len(rep.steerable_pairs) == 0
        out.append(("w_state_boundary_monogamous", 1.0 if ok else -1.0, ""))
    elif name == "phib":
        closed = 9.0 / (4.0 * math.sqrt(3.0)) - 1.0
        found = families.phi_b_steering_threshold(tol=1e-9)
        out.append(("threshold_matches_closed_form", 1e-6 - abs(found - closed), ""))
        worst = 0.0
        for eps in (0.0, 0.25, 0.5, 0.75, 1.0):
            rep = steering_report(families.make_named("phi_b", (eps,)))
            worst = max(
                worst,
                abs(rep.s["AB"] - (16.0 / 27.0) * (1 + eps) ** 2),
                abs(rep.s["AC"] - (16.0 / 27.0) * (1 + eps) ** 2),
                abs(rep.s["BC"] - (1.0 / 27.0) * (1 - 8 * eps) ** 2),
            )
        out.append(("s_closed_forms", _EQ_TOL - worst, ""))
        below = steering_report(families.make_named("phi_b", (closed - 1e-3,)))
        above = steering_report(families.make_named("phi_b", (closed + 1e-3,)))
        ok = len(below.steerable_pairs) < 2 and len(above.steerable_pairs) == 2
        out.append(("count_reaches_two_at_threshold", 1.0 if ok else -1.0, ""))
    return out


# ---------------------------------------------------------------------------
# execution engine

@dataclass
class CheckResult:
    check_id: str
    total: int
    failures: int
    worst_margin: float
    worst_index: int
    failing: tuple
    note: str = ""


@dataclass
class SuiteResult:
    suite: str
    samples: int
    seed: int
    jobs: int
    checks: list
    observations: dict
    passed: bool


def _run_chunk(args):
    name, seed, lo, hi, samples = args
    fn = _SAMPLERS[name][0]
    agg = {}
    obs = {}
    for index in range(lo, hi):
        checks, observations = fn(seed, index, samples)
        for check_id, margin in checks:
            margin = float(margin)
            cur = agg.get(check_id)
            if cur is None:
                agg[check_id] = [1, 0 if margin >= 0 else 1, margin, index,
                                 [] if margin >= 0 else [index]]
            else:
                cur[0] += 1
                if margin < 0:
                    cur[1] += 1
                    if len(cur[4]) < 8:
                        cur[4].append(index)
                if margin < cur[2] or (margin == cur[2] and index < cur[3]):
                    cur[2] = margin
                    cur[3] = index
        for obs_id, value in observations:
            value = float(value)
            cur = obs.get(obs_id)
            if cur is None or value > cur[0] or (value == cur[0] and index < cur[1]):
                obs[obs_id] = [value, index]
    return agg, obs


def run_suite(name: str, samples: int, seed: int, jobs: int = 1, keep_going: bool = True) -> SuiteResult:
    if name not in _SAMPLERS:
        raise UnknownSuite(f"unknown suite {name!r}; known: {', '.join(SUITE_NAMES)}")
    sampler, total_fn = _SAMPLERS[name]
    total = total_fn(samples)
    agg = {}
    obs = {}
    if sampler is not None and total > 0:
        chunk = max(64, total // (max(1, jobs) * 8))
        ranges = [(lo, min(lo + chunk, total)) for lo in range(0, total, chunk)]
        args = [(name, seed, lo, hi, samples) for lo, hi in ranges]
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                partials = list(pool.map(_run_chunk, args))
        else:
            partials = [_run_chunk(a) for a in args]
        for part_agg, part_obs in partials:
            for check_id, (n, f, wm, wi, failing) in part_agg.items():
                cur = agg.get(check_id)
                if cur is None:
                    agg[check_id] = [n, f, wm, wi, list(failing)]
                else:
                    cur[0] += n
                    cur[1] += f
                    if wm < cur[2] or (wm == cur[2] and wi < cur[3]):
                        cur[2] = wm
                        cur[3] = wi
                    cur[4].extend(failing)
            for obs_id, (value, index) in part_obs.items():
                cur = obs.get(obs_id)
                if cur is None or value > cur[0] or (value == cur[0] and index < cur[1]):
                    obs[obs_id] = [value, index]
    checks = []
    for check_id in sorted(agg):
        n, f, wm, wi, failing = agg[check_id]
        checks.append(
            CheckResult(
                check_id=check_id,
                total=n,
                failures=f,
                worst_margin=wm,
                worst_index=wi,
                failing=tuple(sorted(failing)[:8]),
            )
        )
    for check_id, margin, note in _named_checks(name):
        checks.append(
            CheckResult(
                check_id=check_id,
                total=1,
                failures=0 if margin >= 0 else 1,
                worst_margin=float(margin),
                worst_index=-1,
                failing=() if margin >= 0 else (-1,),
                note=note,
            )
        )
    passed = all(c.failures == 0 for c in checks)
    return SuiteResult(
        suite=name,
        samples=samples,
        seed=seed,
        jobs=jobs,
        checks=checks,
        observations={k: {"value": v[0], "index": v[1]} for k, v in sorted(obs.items())},
        passed=passed,
    )


def suite_result_doc(result: SuiteResult) -> dict:
    return {
        "suite": result.suite,
        "samples": result.samples,
        "seed": result.seed,
        "checks": [
            {
                "check_id": c.check_id,
                "total": c.total,
                "failures": c.failures,
                "worst_margin": c.worst_margin,
                "worst_index": c.worst_index,
                "failing": list(c.failing),
                "note": c.note,
            }
            for c in result.checks
        ],
        "observations": result.observations,
        "passed": result.passed,
    }
