"""Ksi-centrality analytics for undirected networks."""

__version__ = "0.1.0"

from .calibration import (
    CalibrationCurve,
    build_curve,
    default_m_grid,
    invert,
    max_vertical_gap,
    sample_xi_hat,
)
from .centrality import (
    KSI,
    NORMALIZED_KSI,
    CentralityVector,
    average_ksi,
    average_normalized_ksi,
    centrality_all,
    ksi,
    ksi_matrix,
    normalized_ksi,
)
from .er_theory import (
    MonteCarloResult,
    expected_boundary_edges,
    expected_normalized_ksi,
    simulate_boundary_edges,
    simulate_normalized_ksi,
    sparse_asymptotic,
)
from .errors import (
    CalibrationError,
    ConvergenceError,
    DomainError,
    KsigraphError,
    ParseError,
)
from .fitting import (
    ARTIFICIAL_LIKE,
    REAL_LIKE,
    DistributionSummary,
    LogLinearFit,
    WeibullFit,
    classify,
    log_histogram_fit,
    qq_pairs,
    skewness,
    summarize,
    weibull_mle,
    weibull_quantile,
)
from .generators import (
    RNG_ALGORITHM,
    GeneratorSpec,
    barabasi_albert,
    bhl,
    build,
    erdos_renyi,
    fixture,
    watts_strogatz,
)
from .graph import (
    Graph,
    IngestOptions,
    IngestStats,
    boundary_edge_count,
    boundary_edge_counts,
    connected_components,
    induced_subgraph,
    is_connected,
    largest_connected_component,
    load_edge_list,
    load_edge_list_with_stats,
    parse_edge_list,
)
from .spectral import (
    BoundsReport,
    NodeBounds,
    algebraic_connectivity,
    cheeger_number,
    cheeger_number_reference,
    verify_bounds,
)

__all__ = [name for name in dir() if not name.startswith("_")]
