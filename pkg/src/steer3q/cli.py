"""Command-line front end.

    steer3q analyze    --input state.json [--format json|text] [--output F]
    steer3q classify   --input state.json [--format json|text]
    steer3q verify     --suite NAME --samples N --seed S --jobs J
    steer3q sweep      --family phi_m --range 0..1 --step 0.01 --output F.csv
    steer3q robustness --input state.json [--format json|text]
    steer3q oracle     --input state.json --pair AB --settings 3 --budget N

Exit codes: 0 success / all properties pass, 1 a verified property was
violated, 2 usage or input error.  Machine-readable output is canonical:
identical (input, flags, seed) produce byte-identical bytes, every float
is printed with 17 significant digits, and no timestamps are embedded.
The STEER3Q_TOLERANCE environment variable overrides the default 1e-9
input-validation tolerance.
"""

import argparse
import math
import os
import sys

from . import __version__, families, relations, serialize, stateio, verify
from .entanglement import pure_report
from .errors import Steer3qError
from .qlinalg import PureState, partial_trace, set_validation_tolerance
from .relations import state_digest
from .steering import f_max, f_max_oracle_detailed, steering_report

DEFAULT_TOLERANCE = 1e-9

SWEEP_COLUMNS = (
    "param", "s_ab", "s_ac", "s_bc", "s_max", "s_total_max",
    "c2_ab", "c2_ac", "c2_bc", "tau", "e_w",
    "tau_smax_lhs", "tau_smax_bound",
    "tau_stotal_lhs", "tau_stotal_bound",
    "ew_stotal_lhs", "ew_stotal_bound",
    "bell_steering_tangle_lhs", "bell_steering_tangle_bound",
    "info_complementarity_lhs", "info_complementarity_bound",
    "steerable_count",
)


def _tolerance(args) -> float:
    if args.tolerance is not None:
        return args.tolerance
    env = os.environ.get("STEER3Q_TOLERANCE")
    if env:
        try:
            return float(env)
        except ValueError:
            raise Steer3qError(f"STEER3Q_TOLERANCE is not a number: {env!r}")
    return DEFAULT_TOLERANCE


def _emit(text: str, output: str | None):
    if output:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _provenance(args, digest: str, tol: float) -> dict:
    return {
        "input_digest": digest,
        "seed": getattr(args, "seed", None),
        "tool_version": __version__,
        "tolerances": {
            "validation": tol,
            "steering_eps": 1e-9,
            "relation": relations.TOL,
        },
    }


def _steering_doc(rep) -> dict:
    return {
        "s": dict(rep.s),
        "f2max": dict(rep.f2max),
        "f3max": dict(rep.f3max),
        "horodecki": dict(rep.horodecki),
        "n_violation": dict(rep.n_violation),
        "s_max": rep.s_max,
        "s_total_max": rep.s_total_max,
        "i_local": rep.i_local,
        "i_nonlocal": rep.i_nonlocal,
        "i_nonlocal_alt_sum_s": rep.i_nonlocal_alt,
        "steerable_pairs": list(rep.steerable_pairs),
        "graph_type": rep.graph_type,
    }


def _relation_doc(rec) -> dict:
    return {
        "relation_id": rec.relation_id,
        "lhs": rec.lhs,
        "bound": rec.bound,
        "margin": rec.margin,
        "satisfied": rec.satisfied,
        "inputs_digest": rec.inputs_digest,
    }


def _classification_doc(res) -> dict:
    return {
        "subtype": res.subtype,
        "subtype_name": res.subtype_name,
        "invariants": dict(res.invariants),
        "steering_graph": res.steering_graph,
        "monogamous": res.monogamous,
        "near_boundary": res.near_boundary,
        "annotations": list(res.annotations),
    }


def cmd_analyze(args) -> int:
    tol = _tolerance(args)
    state, metadata = stateio.load_state(args.input, tol)
    rho = state.density() if isinstance(state, PureState) else state
    rep = steering_report(rho)
    doc = {
        "provenance": _provenance(args, state_digest(state, metadata), tol),
        "steering": _steering_doc(rep),
        "entanglement": None,
        "relations": [],
        "classification": None,
    }
    recs = [relations.check_info_complementarity(state)]
    if isinstance(state, PureState):
        ent = pure_report(state)
        doc["entanglement"] = {"c2": dict(ent.c2), "tau": ent.tau, "e_w": ent.e_w}
        recs = [
            relations.check_tau_smax(state),
            relations.check_tau_stotal(state),
            relations.check_ew_stotal(state),
            relations.check_bell_steering_tangle(state),
            relations.check_info_complementarity(state),
        ]
        doc["classification"] = _classification_doc(families.classify(state))
    doc["relations"] = [_relation_doc(r) for r in recs]
    if args.format == "json":
        _emit(serialize.dumps_canonical(doc), args.output)
    else:
        _emit(_analyze_text(doc, metadata), args.output)
    return 0


def _analyze_text(doc, metadata) -> str:
    lines = []
    push = lines.append
    push(f"steer3q analyze (input digest {doc['provenance']['input_digest']})")
    if metadata:
        push(f"label: {metadata}")
    st = doc["steering"]
    push("steering:")
    for pair in ("AB", "AC", "BC"):
        push(
            f"  S_{pair} = {st['s'][pair]:.12g}   f2max = {st['f2max'][pair]:.12g}"
            f"   f3max = {st['f3max'][pair]:.12g}   M = {st['horodecki'][pair]:.12g}"
        )
    push(f"  S_max = {st['s_max']:.12g}   S_total_max = {st['s_total_max']:.12g}")
    push(
        f"  I_local = {st['i_local']:.12g}   I_nonlocal = {st['i_nonlocal']:.12g}"
        f"   (alternative sum-of-S reading: {st['i_nonlocal_alt_sum_s']:.12g})"
    )
    pairs = ", ".join(st["steerable_pairs"]) or "none"
    push(f"  steerable pairs: {pairs}   graph: {st['graph_type']}")
    if doc["entanglement"]:
        ent = doc["entanglement"]
        push("entanglement:")
        push(
            f"  C2_AB = {ent['c2']['AB']:.12g}  C2_AC = {ent['c2']['AC']:.12g}"
            f"  C2_BC = {ent['c2']['BC']:.12g}"
        )
        push(f"  tau = {ent['tau']:.12g}  E_W = {ent['e_w']:.12g}")
    if doc["relations"]:
        push("relations:")
        for rec in doc["relations"]:
            flag = "ok " if rec["satisfied"] else "VIOLATED"
            push(
                f"  [{flag}] {rec['relation_id']}: lhs = {rec['lhs']:.12g}"
                f"  bound = {rec['bound']:.12g}  margin = {rec['margin']:.3e}"
            )
    if doc["classification"]:
        cl = doc["classification"]
        push(
            f"classification: subtype {cl['subtype']} ({cl['subtype_name']}), "
            f"graph {cl['steering_graph']}, "
            f"{'monogamous' if cl['monogamous'] else 'non-monogamous'}"
        )
        for note in cl["annotations"]:
            push(f"  note: {note}")
    return "\n".join(lines) + "\n"


def cmd_classify(args) -> int:
    tol = _tolerance(args)
    state, metadata = stateio.load_state(args.input, tol)
    if not isinstance(state, PureState):
        from .errors import MixedStateInput

        raise MixedStateInput("classification requires a pure-state input")
    res = families.classify(state)
    doc = {
        "provenance": _provenance(args, state_digest(state, metadata), tol),
        "classification": _classification_doc(res),
    }
    if args.format == "json":
        _emit(serialize.dumps_canonical(doc), args.output)
    else:
        cl = doc["classification"]
        lines = [
            f"subtype: {cl['subtype']} ({cl['subtype_name']})",
            f"steering graph: {cl['steering_graph']}",
            f"monogamous: {str(cl['monogamous']).lower()}",
        ]
        for key in sorted(cl["invariants"]):
            lines.append(f"  {key} = {cl['invariants'][key]:.12g}")
        for note in cl["annotations"]:
            lines.append(f"note: {note}")
        _emit("\n".join(lines) + "\n", args.output)
    return 0


def cmd_verify(args) -> int:
    names = verify.SUITE_NAMES if args.suite == "all" else (args.suite,)
    results = [verify.run_suite(n, args.samples, args.seed, args.jobs) for n in names]
    if args.format == "json":
        doc = {"suites": [verify.suite_result_doc(r) for r in results]}
        _emit(serialize.dumps_canonical(doc), args.output)
    else:
        lines = []
        for res in results:
            lines.append(f"suite {res.suite}: samples={res.samples} seed={res.seed}")
            for c in res.checks:
                status = "pass" if c.failures == 0 else "FAIL"
                line = (
                    f"  [{status}] {c.check_id}: {c.total - c.failures}/{c.total}"
                    f"  worst_margin={c.worst_margin:.3e}"
                )
                if c.worst_index >= 0:
                    line += f" @ sample {c.worst_index}"
                if c.failing:
                    line += f"  failing={list(c.failing)}"
                lines.append(line)
                if c.note:
                    lines.append(f"    note: {c.note}")
            for obs_id, obs in res.observations.items():
                lines.append(
                    f"  observed {obs_id} = {obs['value']:.12g} @ sample {obs['index']}"
                    " (logged, not asserted)"
                )
            lines.append(f"  result: {'PASS' if res.passed else 'FAIL'}")
        _emit("\n".join(lines) + "\n", args.output)
    return 0 if all(r.passed for r in results) else 1


def _parse_range(text: str):
    for sep in ("..", ":"):
        if sep in text:
            left, right = text.split(sep, 1)
            try:
                return float(left), float(right)
            except ValueError:
                break
    from .errors import BadRange

    raise BadRange(f"range must look like A..B, got {text!r}")


def cmd_sweep(args) -> int:
    from .errors import BadRange, UnknownFamily

    family = args.family
    if family not in families.PARAMETRIC_FAMILIES:
        raise UnknownFamily(
            f"unknown sweep family {family!r}; known: "
            + ", ".join(sorted(families.PARAMETRIC_FAMILIES))
        )
    lo, hi = _parse_range(args.range)
    step = args.step
    if step is None or step <= 0 or hi < lo:
        raise BadRange(f"bad range/step: {args.range!r} step {step!r}")
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    rows = [",".join(SWEEP_COLUMNS) + "\n"]
    for i in range(count):
        param = lo + i * step
        state = families.make_named(family, (param,))
        rows.append(serialize.csv_row(_sweep_row(param, state)))
    _emit("".join(rows), args.output)
    return 0


def _sweep_row(param, state):
    rho = state.density() if isinstance(state, PureState) else state
    rep = steering_report(rho)
    row = {
        "param": param,
        "s_ab": rep.s["AB"],
        "s_ac": rep.s["AC"],
        "s_bc": rep.s["BC"],
        "s_max": rep.s_max,
        "s_total_max": rep.s_total_max,
        "steerable_count": len(rep.steerable_pairs),
        "info_complementarity_lhs": rep.i_local + rep.i_nonlocal,
        "info_complementarity_bound": 3.0,
    }
    if isinstance(state, PureState):
        ent = pure_report(state)
        row.update(
            c2_ab=ent.c2["AB"], c2_ac=ent.c2["AC"], c2_bc=ent.c2["BC"],
            tau=ent.tau, e_w=ent.e_w,
        )
        row["tau_smax_lhs"] = rep.s_max + 2.0 * ent.tau
        row["tau_smax_bound"] = 3.0
        row["tau_stotal_lhs"] = rep.s_total_max + ent.tau
        row["tau_stotal_bound"] = 3.0
        row["ew_stotal_lhs"] = rep.s_total_max + 3.0 * ent.e_w
        row["ew_stotal_bound"] = 10.0 / 3.0
        m_max = max(rep.horodecki.values())
        row["bell_steering_tangle_lhs"] = rep.s_max + m_max + 3.0 * ent.tau
        row["bell_steering_tangle_bound"] = 5.0
    return [row.get(col) for col in SWEEP_COLUMNS]


def cmd_robustness(args) -> int:
    tol = _tolerance(args)
    state, metadata = stateio.load_state(args.input, tol)
    if not isinstance(state, PureState):
        from .errors import MixedStateInput

        raise MixedStateInput("robustness analysis requires a pure-state input")
    paper = families.v_crit_paper_linear(state)      # raises if not two steerable pairs
    oracle = families.v_crit_numeric(state)
    closed = families.v_crit_closed_quadratic(state)
    doc = {
        "provenance": _provenance(args, state_digest(state, metadata), tol),
        "v_crit_paper_formula": paper,
        "v_crit_bisection": oracle,
        "v_crit_closed_quadratic": closed,
        "difference_paper_vs_bisection": abs(paper - oracle),
        "note": (
            "the published formulas treat S as linear in the visibility, but "
            "Tr[T^t T] scales as v^2 under white-noise mixing; both figures "
            "are reported and neither is silently preferred"
        ),
    }
    if args.format == "json":
        _emit(serialize.dumps_canonical(doc), args.output)
    else:
        lines = [
            f"paper closed form (linear in v): {paper:.12g}",
            f"bisection oracle (exact scaling): {oracle:.12g}",
            f"closed form 1/sqrt(S_2):          {closed:.12g}",
            f"|paper - bisection| = {abs(paper - oracle):.12g}  <-- discrepancy flagged",
            doc["note"],
        ]
        _emit("\n".join(lines) + "\n", args.output)
    return 0


def cmd_oracle(args) -> int:
    tol = _tolerance(args)
    state, metadata = stateio.load_state(args.input, tol)
    rho = state.density() if isinstance(state, PureState) else state
    if rho.subsystem_count == 3:
        rho = partial_trace(rho, args.pair)
    value, settings = f_max_oracle_detailed(rho, args.settings, args.budget, args.seed)
    analytic = f_max(rho, args.settings)
    doc = {
        "provenance": _provenance(args, state_digest(state, metadata), tol),
        "pair": args.pair,
        "settings": args.settings,
        "budget": args.budget,
        "oracle_value": value,
        "analytic_value": analytic,
        "difference": analytic - value,
        "bob_axes": settings.bob_axes.tolist(),
        "alice_axes": settings.alice_axes.tolist(),
    }
    if args.format == "json":
        _emit(serialize.dumps_canonical(doc), args.output)
    else:
        _emit(
            f"oracle F_{args.settings} = {value:.12g}\n"
            f"analytic maximum = {analytic:.12g}\n"
            f"difference = {analytic - value:.3e}\n",
            args.output,
        )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="steer3q",
        description="steering shareability analysis of three-qubit states",
    )
    parser.add_argument("--version", action="version", version=f"steer3q {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, needs_input):
        if needs_input:
            p.add_argument("--input", required=True, help="state file (JSON)")
        p.add_argument("--format", choices=("json", "text"), default="text")
        p.add_argument("--output", default=None, help="write to file instead of stdout")
        p.add_argument("--tolerance", type=float, default=None,
                       help="input validation tolerance (default 1e-9 or STEER3Q_TOLERANCE)")
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("analyze", help="full steering/entanglement/relations report")
    common(p, needs_input=True)
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("classify", help="subtype classification of a pure state")
    common(p, needs_input=True)
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("verify", help="run a seeded property suite")
    p.add_argument("--suite", required=True,
                   help="suite name or 'all': " + ", ".join(verify.SUITE_NAMES))
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--jobs", type=int, default=1)
    common(p, needs_input=False)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("sweep", help="CSV sweep over a parametric family")
    p.add_argument("--family", required=True)
    p.add_argument("--range", required=True, help="A..B")
    p.add_argument("--step", type=float, required=True)
    common(p, needs_input=False)
    p.set_defaults(fn=cmd_sweep)

    p = sub.add_parser("robustness", help="white-noise critical visibility, both readings")
    common(p, needs_input=True)
    p.set_defaults(fn=cmd_robustness)

    p = sub.add_parser("oracle", help="rotation-search maximum vs analytic formula")
    p.add_argument("--pair", choices=("AB", "AC", "BC"), default="AB")
    p.add_argument("--settings", type=int, choices=(2, 3), default=3)
    p.add_argument("--budget", type=int, default=5000)
    common(p, needs_input=True)
    p.set_defaults(fn=cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        # the CLI validation tolerance (default 1e-9, overridable through
        # --tolerance or STEER3Q_TOLERANCE) also governs density validation
        # of file input
        set_validation_tolerance(_tolerance(args))
        return args.fn(args)
    except FileNotFoundError as exc:
        print(f"error: file not found: {exc.filename or exc}", file=sys.stderr)
        return 2
    except Steer3qError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
