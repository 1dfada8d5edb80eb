"""steer3q: shareability of three-setting linear steering on three qubits.

A small library plus CLI that computes the steering parameters of all
bipartite reductions of a three-qubit state, the entanglement measures
they trade off against, every complementarity relation connecting them,
subtype classification of pure states, and white-noise robustness — with
seeded brute-force oracles cross-checking each analytic maximum.
"""

__version__ = "0.1.0"

from .backend import backend_name
from .bloch import (
    BlochDecomposition,
    TwoQubitBloch,
    decompose2,
    decompose3,
    purity_relations,
    reconstruct2,
    reconstruct3,
)
from .entanglement import (
    EntanglementReport,
    ckw_check,
    concurrence,
    pure_bipartition_concurrence_sq,
    pure_report,
)
from .families import (
    ClassificationResult,
    GSDParams,
    NoisyState,
    add_white_noise,
    classify,
    gsd_concurrences,
    gsd_params,
    gsd_s_formulas,
    gsd_state,
    haar_random_pure,
    make_named,
    random_mixed,
    star_vcrit_formula,
    symmetrize,
    v_crit_closed_quadratic,
    v_crit_numeric,
    v_crit_paper_linear,
    w_like_monogamy,
    wclass_vcrit_formula,
)
from .qlinalg import (
    DensityMatrix,
    PureState,
    hermitian_eigenvalues,
    partial_trace,
    psd_sqrt,
    pure_state,
    purity,
    set_validation_tolerance,
    validate_density,
)
from .relations import (
    RelationRecord,
    check_bell_steering_tangle,
    check_ew_stotal,
    check_info_complementarity,
    check_tau_smax,
    check_tau_stotal,
    detect_entanglement_pure,
    detect_genuine_pure,
    monogamy_sufficient_checks,
    steerability_from_concurrence,
)
from .steering import (
    MeasurementSettings,
    SteeringReport,
    cjwr_value,
    f2_monogamy_check,
    f_max,
    f_max_oracle,
    horodecki_M,
    measurement_settings,
    s_param,
    steering_report,
    trade_off_check,
)
