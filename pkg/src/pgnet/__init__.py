"""Poisson-growth preferential attachment: simulation, theory, inference."""

from .backend import backend_name
from .errors import (
    ChainInitError,
    DegenerateTailError,
    EmptyTailError,
    EstimationError,
    GraphError,
    GraphFormatError,
    NumericError,
    ParamError,
    PgnetError,
)
from .estimate import (
    FitResult,
    average_distribution,
    empirical_variance,
    estimate_gamma_ml,
    fit_distribution,
    loglog_slope,
)
from .generate import (
    GrowthStep,
    RngSpec,
    attachment_weights,
    generate_ba,
    generate_pg,
    generate_pg_binomial,
    pg_step,
)
from .graph import (
    DegreeHistogram,
    MultiGraph,
    degree_histogram,
    read_graph,
    write_graph,
)
from .infer import (
    GraphChain,
    McmcChain,
    McmcConfig,
    ReplaySummary,
    check_order,
    degree_descending_order,
    identity_order,
    log_prob_network,
    mcmc_graph,
    mcmc_theta,
    replay,
    replay_summary,
)
from .params import ModelParams
from .theory import (
    ExpectedDistribution,
    TheoryPrediction,
    evolve_master_equation,
    predicted_gamma,
    solve_p0,
    tail_ratio,
    write_distribution_csv,
)

__version__ = "0.1.0"

__all__ = [
    "ChainInitError",
    "DegenerateTailError",
    "DegreeHistogram",
    "EmptyTailError",
    "EstimationError",
    "ExpectedDistribution",
    "FitResult",
    "GraphChain",
    "GraphError",
    "GraphFormatError",
    "GrowthStep",
    "McmcChain",
    "McmcConfig",
    "ModelParams",
    "MultiGraph",
    "NumericError",
    "ParamError",
    "PgnetError",
    "ReplaySummary",
    "RngSpec",
    "TheoryPrediction",
    "attachment_weights",
    "average_distribution",
    "backend_name",
    "check_order",
    "degree_descending_order",
    "degree_histogram",
    "empirical_variance",
    "estimate_gamma_ml",
    "evolve_master_equation",
    "fit_distribution",
    "generate_ba",
    "generate_pg",
    "generate_pg_binomial",
    "identity_order",
    "log_prob_network",
    "loglog_slope",
    "mcmc_graph",
    "mcmc_theta",
    "pg_step",
    "predicted_gamma",
    "read_graph",
    "replay",
    "replay_summary",
    "solve_p0",
    "tail_ratio",
    "write_distribution_csv",
    "write_graph",
]
