"""Wasserstein scenario reduction."""

from ._core import (
    BoundReport,
    BudgetExceeded,
    ConvergenceError,
    Distribution,
    InvalidArgument,
    ReductionResult,
    ScenredError,
    a_priori_m,
    continuous_exact,
    continuous_polish,
    discrete_exact,
    dist_to_support,
    dupacova_greedy,
    export_milp,
    gen_adversarial,
    gen_kappa_tight,
    gen_worst_case,
    k_means,
    limit_bounds,
    local_search,
    normal_experiment,
    powered_distance,
    quantize,
    read_distribution,
    wasserstein,
    write_distribution,
)

__all__ = [name for name in dir() if not name.startswith("_")]
