"""Exact tools for Kochen-Specker contextuality scenarios built from graphs:
colourability, extremal models, minimally indeterministic context sets and
noise-robust noncontextuality inequalities."""
from .colourability import (
    ColourabilityVerdict,
    ParityCertificate,
    find_ks_colouring,
    parity_verdict_2regular,
    parity_witness_general,
    verdict,
)
from .errors import (
    BudgetExceeded,
    EmptyHyperedgeError,
    InvalidArgument,
    KSContextError,
    NoCoverExists,
    UndefinedBeta,
)
from .extremal import (
    ExtremalModel,
    enumerate_extremal_models,
    enumerate_extremal_models_2reg,
    extremal_models,
    khypercycle_models_kmn,
    smallest_indeterministic_size,
    unique_model,
)
from .graphs import (
    EdgeSet,
    Graph,
    enumerate_minimal_edge_covers,
    enumerate_minimum_edge_covers,
    enumerate_perfect_matchings,
    is_edge_cover,
    line_graph,
    make_claw,
    make_complete,
    make_complete_bipartite,
    make_cycle,
)
from .misc import (
    ContextSet,
    MiscReport,
    enumerate_irr_miscs,
    irr_miscs_kmn,
    is_irr_misc,
    is_misc,
    sufficient_misc,
)
from .scenarios import ProbModel, Scenario, induced_subscenario, profile, validate
from .two_reg import TwoRegScenario, matching_scenario, scenarios_isomorphic, two_reg
from .witness import (
    DataTable,
    Inequality,
    NCModelAttempt,
    QDist,
    beta,
    build_saturating_nc_model,
    corr,
    evaluate,
    make_inequality,
    zeta,
)

__version__ = "0.1.0"
