"""hyperpred: hypergraph link prediction.

Resource-allocation similarity on hypergraphs, a generative hyperedge
predictor, candidate-set ranking, common-neighbors and Katz baselines,
and a cross-validation / temporal evaluation harness.
"""

from .hypergraph import (
    Hyperedge,
    Hypergraph,
    adjacency_clique,
    adjacency_ndp,
    build,
    restrict_to_largest_component,
)
from .similarity import (
    KATZ_BETA_GRID,
    ScoreMatrix,
    common_neighbors,
    katz,
    ra,
    ra_direct,
    ra_indirect,
    score_matrix,
)
from .predictor import (
    CandidateScore,
    DegreeDistribution,
    PredictionConfig,
    attachment_scores,
    fit_degree_distribution,
    generate_distractors,
    hyperedge_score,
    predict,
    predict_set,
    rank_candidates,
    sample_hyperedge,
)
from .evaluation import (
    EvalReport,
    MethodConfig,
    SplitPlan,
    auc,
    average_f1,
    make_kfold,
    make_temporal,
    paired_t_test,
    precision_at_l,
    prune_missing,
    run_experiment,
)
from .synthetic import SyntheticSpec, generate_synthetic_edges, synthetic_hypergraph
from .io import load, parse_edge_list, summary, write_edge_list, write_hyperedges, write_score_csv
from .rng import derive_rng, derive_seed

__version__ = "0.1.0"
