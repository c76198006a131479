"""Pseudo-spectral laboratory for internal-wave model hierarchies.

Layers:

- ``grid``: periodic grids, fields, Fourier multipliers, Sobolev norms
- ``symbols``: the model multiplier family and its expansion estimates
- ``models``: right-hand sides of the six evolution models
- ``stepping``: integrating-factor and ETD Runge-Kutta schemes
- ``dno``: two-layer Dirichlet-Neumann operators on straightened strips
- ``experiments``: convergence sweeps, rate fitting, CSV/JSON/SVG emission
"""

from .grid import (
    Field,
    Grid,
    NormSpec,
    apply_multiplier,
    dealias,
    dealias_mask,
    derivative,
    field_from_function,
    field_from_spectrum,
    field_from_values,
    make_grid,
    norm,
)
from .symbols import (
    EXPANSION_IDS,
    SYMBOL_TAGS,
    Params,
    coercivity_check,
    coercivity_constants,
    eval_symbol,
    expansion_gap,
    symbol_fn,
)
from .models import (
    MODEL_IDS,
    ModelSpec,
    State,
    bo_soliton,
    bo_soliton_speed,
    gaussian_bump,
    make_unidirectional_data,
    rhs_benjamin,
    rhs_bo,
    rhs_ilw,
    rhs_regbo_system,
    rhs_wb_equation,
    rhs_wb_system,
    u_from_v,
    v_from_u,
)
from .stepping import SCHEMES, StepperConfig, Trajectory, conserved, evolve, step
from .dno import (
    StripConfig,
    StripSolution,
    TailSymbol,
    TwoLayerOperator,
    dn_coupled,
    dn_minus,
    dn_plus,
    expansion_check,
    gminus_inverse,
    shape_derivative_check,
    symbolic_check,
    tail_symbol,
)
from .experiments import (
    CheckReport,
    CheckRow,
    ExperimentConfig,
    RateReport,
    build_initial_state,
    emit,
    fit_rate,
    load_config,
    run_compare,
    run_dno_validate,
    run_ilw_limit,
    run_multiplier_check,
    run_simulate,
)

__version__ = "0.1.0"

__all__ = [
    "Field",
    "Grid",
    "NormSpec",
    "apply_multiplier",
    "dealias",
    "dealias_mask",
    "derivative",
    "field_from_function",
    "field_from_spectrum",
    "field_from_values",
    "make_grid",
    "norm",
    "EXPANSION_IDS",
    "SYMBOL_TAGS",
    "Params",
    "coercivity_check",
    "coercivity_constants",
    "eval_symbol",
    "expansion_gap",
    "symbol_fn",
    "MODEL_IDS",
    "ModelSpec",
    "State",
    "bo_soliton",
    "bo_soliton_speed",
    "gaussian_bump",
    "make_unidirectional_data",
    "rhs_benjamin",
    "rhs_bo",
    "rhs_ilw",
    "rhs_regbo_system",
    "rhs_wb_equation",
    "rhs_wb_system",
    "u_from_v",
    "v_from_u",
    "SCHEMES",
    "StepperConfig",
    "Trajectory",
    "conserved",
    "evolve",
    "step",
    "StripConfig",
    "StripSolution",
    "TailSymbol",
    "TwoLayerOperator",
    "dn_coupled",
    "dn_minus",
    "dn_plus",
    "expansion_check",
    "gminus_inverse",
    "shape_derivative_check",
    "symbolic_check",
    "tail_symbol",
    "CheckReport",
    "CheckRow",
    "ExperimentConfig",
    "RateReport",
    "build_initial_state",
    "emit",
    "fit_rate",
    "load_config",
    "run_compare",
    "run_dno_validate",
    "run_ilw_limit",
    "run_multiplier_check",
    "run_simulate",
    "__version__",
]
