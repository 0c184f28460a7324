"""Convex-concave min-max solvers (CEG, EG, OGDA, PP) and bound checks."""

from ._core import (
    Error,
    InputError,
    NumericError,
    UnsupportedError,
    ValidationError,
    FeasibleSet,
    SaddleProblem,
    RunTrace,
    GapReport,
    BoundCheck,
    project,
    diameter,
    zoo_names,
    zoo_problem,
    make_bilinear,
    make_quadratic_saddle,
    run,
    pp_oracle,
    ceg_inner,
    time_average,
    duality_gap,
    restricted_gap,
    operator_residual,
    regret_sum,
    verify_bounds,
    run_experiment,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
