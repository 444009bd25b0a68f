"""Score-based Bayesian network structure learning for continuous data.

Thin Python layer over the C++ core: graphs, linear-Gaussian scores, the
hill-climbing / tabu / genetic searches, descendant-set AUROC evaluation and
the synthetic data generators.
"""

from bnsl._core import (  # noqa: F401
    ContextResult,
    CrossoverConflictPolicy,
    Dag,
    Dataset,
    ExhaustiveResult,
    GaConfig,
    GoldStandard,
    GroundTruth,
    HcConfig,
    InitConfig,
    InitPolicy,
    InsilicoFixture,
    LinearGaussianFit,
    Move,
    MoveKind,
    RowMeta,
    ScoreKind,
    Scorer,
    SearchResult,
    SearchTrace,
    TabuConfig,
    TraceRecord,
    auroc,
    crossover,
    crossover_at_point,
    decode,
    encode,
    evaluate_context,
    mutate,
    evolve,
    exhaustive_best,
    generate_insilico_like,
    hill_climb,
    load_dataset,
    load_gold,
    load_network,
    mean_rank,
    neighborhood,
    node_confidence,
    random_dag,
    save_adjacency,
    save_dataset,
    save_gold,
    save_network,
    simulate_linear_gaussian,
    tabu_search,
    would_create_cycle,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
