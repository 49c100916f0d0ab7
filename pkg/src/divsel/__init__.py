"""Diversity-guided parent selection for Pareto-archive evolutionary
optimisers on the OneMinMax and LOTZ bitstring benchmarks."""

from .archive import Archive, Individual, InsertOutcome
from .diversity import (
    INFINITY,
    DiversityMetric,
    MetricKind,
    ReferencePoint,
    RefSpec,
    cdc_scores,
    hvc_scores,
    hypervolume,
    scores,
)
from .engine import (
    DEFAULT_GENERATION_CAP,
    AlgorithmKind,
    Outcome,
    RunConfig,
    RunResult,
    mutate_global,
    mutate_local,
    run,
    step,
)
from .fitness import (
    BitString,
    Dominance,
    ObjectiveVector,
    Problem,
    ProblemKind,
    compare,
    evaluate,
    front_vectors,
    is_good,
    is_pareto_optimal,
    l_attribute,
)
from .harness import (
    AggregateStats,
    CellResult,
    ExperimentConfig,
    RunRecord,
    ScalingFit,
    SweepResult,
    aggregate,
    derive_seed,
    emit_csv,
    emit_table,
    fit_loglog,
    nmuar_asym_check,
    run_cell,
    run_experiment,
    run_tables,
    sweep,
)
from .selection import (
    RngStream,
    SelectionScheme,
    rank_by_score,
    rank_probabilities,
    select_parent,
)

__all__ = [
    "AggregateStats",
    "AlgorithmKind",
    "Archive",
    "BitString",
    "CellResult",
    "DEFAULT_GENERATION_CAP",
    "DiversityMetric",
    "Dominance",
    "ExperimentConfig",
    "INFINITY",
    "Individual",
    "InsertOutcome",
    "MetricKind",
    "ObjectiveVector",
    "Outcome",
    "Problem",
    "ProblemKind",
    "ReferencePoint",
    "RefSpec",
    "RngStream",
    "RunConfig",
    "RunRecord",
    "RunResult",
    "ScalingFit",
    "SelectionScheme",
    "SweepResult",
    "aggregate",
    "cdc_scores",
    "compare",
    "derive_seed",
    "emit_csv",
    "emit_table",
    "evaluate",
    "fit_loglog",
    "front_vectors",
    "hvc_scores",
    "hypervolume",
    "is_good",
    "is_pareto_optimal",
    "l_attribute",
    "mutate_global",
    "mutate_local",
    "nmuar_asym_check",
    "rank_by_score",
    "rank_probabilities",
    "run",
    "run_cell",
    "run_experiment",
    "run_tables",
    "scores",
    "select_parent",
    "step",
    "sweep",
]
