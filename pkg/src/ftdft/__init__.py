"""How well the DFT approximates the Fourier transform.

Measure the l2 distance between exact samples of a Fourier transform and
the unitary DFT of matching time samples, choose step sizes that balance
the two aliasing sources from decay metadata, evaluate proved error
bounds, reconstruct the transform on the line by cardinal interpolation,
and run convergence sweeps to CSV/JSON.
"""

from .corpus import (
    DecaySpec,
    FunctionPair,
    PolyDecay,
    SubExpDecay,
    U_SUP,
    bspline_eval,
    corpus_get,
    corpus_list,
    envelope,
    envelope_tail_integral,
    fab_eval,
    fab_hat_eval,
    u_eval,
)
from .dft import (
    ErrorReport,
    SampledVector,
    SamplingPlan,
    decomposition_terms,
    dft_unitary,
    error_l2,
    error_sup,
    idft_unitary,
    logical_indices,
    periodize,
    periodize_tail_many,
    physical_index,
    poisson_check,
    sample,
    symmetry_pair,
)
from .errors import ConvergenceError
from .harness import (
    FIT_FLOOR,
    ConvergenceRun,
    ExperimentConfig,
    PlanRule,
    SweepRow,
    emit,
    emit_csv_text,
    emit_json_text,
    fit_slope,
    make_plan,
    parse_csv_text,
    parse_json_text,
    rule_predicted_rate,
    sweep,
)
from .interp import (
    Interpolant,
    InterpL2Result,
    Kernel,
    interp_eval,
    interp_l2_error,
    interp_sup_error,
    kernel_eval,
    make_interpolant,
)
from .planner import (
    BoundReport,
    PlanRequest,
    bound_total,
    lambert_w,
    plan_step,
    predicted_rate,
)
from .weights import (
    AmalgamNormEstimate,
    PolynomialWeight,
    SubExponentialWeight,
    WeightSpec,
    amalgam_norm,
    hurwitz_zeta_half,
    incomplete_gamma_upper,
    phi,
    phi_bound,
    weight_eval,
    weighted_norm_certificate,
)

__version__ = "0.1.0"

__all__ = [
    "AmalgamNormEstimate",
    "BoundReport",
    "ConvergenceError",
    "ConvergenceRun",
    "DecaySpec",
    "ErrorReport",
    "ExperimentConfig",
    "FIT_FLOOR",
    "FunctionPair",
    "Interpolant",
    "InterpL2Result",
    "Kernel",
    "PlanRequest",
    "PlanRule",
    "PolyDecay",
    "PolynomialWeight",
    "SampledVector",
    "SamplingPlan",
    "SubExpDecay",
    "SubExponentialWeight",
    "SweepRow",
    "U_SUP",
    "WeightSpec",
    "amalgam_norm",
    "bound_total",
    "bspline_eval",
    "corpus_get",
    "corpus_list",
    "decomposition_terms",
    "dft_unitary",
    "emit",
    "emit_csv_text",
    "emit_json_text",
    "envelope",
    "envelope_tail_integral",
    "error_l2",
    "error_sup",
    "fab_eval",
    "fab_hat_eval",
    "fit_slope",
    "hurwitz_zeta_half",
    "idft_unitary",
    "incomplete_gamma_upper",
    "interp_eval",
    "interp_l2_error",
    "interp_sup_error",
    "kernel_eval",
    "lambert_w",
    "logical_indices",
    "make_interpolant",
    "make_plan",
    "parse_csv_text",
    "parse_json_text",
    "periodize",
    "periodize_tail_many",
    "phi",
    "phi_bound",
    "physical_index",
    "plan_step",
    "poisson_check",
    "predicted_rate",
    "rule_predicted_rate",
    "sample",
    "symmetry_pair",
    "u_eval",
    "weight_eval",
    "weighted_norm_certificate",
]
