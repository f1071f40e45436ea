"""Time-fractional diffusion on the half line: special functions,
closed-form boundary-value solutions, and a finite-difference cross-check.
"""

from .kernels import (
    Diffusivity,
    SimilarityPoint,
    WrightProfile,
    boundary_kernel,
    get_profile,
    green_dirichlet,
    green_neumann,
    step_response,
)
from .oracle import OracleConfig, compare, default_config, fd_solve
from .problems import (
    ErrorReport,
    EvalGrid,
    FunctionSpec,
    ProblemFormatError,
    ProblemSpec,
    SolutionField,
    load_problem,
    loads_problem,
    problem_document,
)
from .quadrature import QuadResult, TailBound, integrate, integrate_to_infinity
from .solvers import (
    DEFAULT_SWEEP,
    alpha_sweep,
    heat_dirichlet_limit,
    heat_flux_limit,
    residual_check,
    solve_dirichlet,
    solve_flux,
    solve_neumann_zero,
    solve_problem,
)
from .specfun import (
    AccuracyError,
    AsymptoticParams,
    EvalPolicy,
    FractionalOrder,
    WrightIndex,
    caputo_l1,
    erf,
    erfc,
    l1_weights,
    mainardi,
    mainardi_deriv,
    recip_gamma,
    rl_integral,
    wright,
)

__version__ = "0.1.0"

__all__ = [
    "AccuracyError",
    "AsymptoticParams",
    "DEFAULT_SWEEP",
    "Diffusivity",
    "ErrorReport",
    "EvalGrid",
    "EvalPolicy",
    "FractionalOrder",
    "FunctionSpec",
    "OracleConfig",
    "ProblemFormatError",
    "ProblemSpec",
    "QuadResult",
    "SimilarityPoint",
    "SolutionField",
    "TailBound",
    "WrightIndex",
    "WrightProfile",
    "alpha_sweep",
    "boundary_kernel",
    "caputo_l1",
    "compare",
    "default_config",
    "erf",
    "erfc",
    "fd_solve",
    "get_profile",
    "green_dirichlet",
    "green_neumann",
    "heat_dirichlet_limit",
    "heat_flux_limit",
    "integrate",
    "integrate_to_infinity",
    "l1_weights",
    "load_problem",
    "loads_problem",
    "mainardi",
    "mainardi_deriv",
    "problem_document",
    "recip_gamma",
    "residual_check",
    "rl_integral",
    "solve_dirichlet",
    "solve_flux",
    "solve_neumann_zero",
    "solve_problem",
    "step_response",
    "wright",
    "__version__",
]
