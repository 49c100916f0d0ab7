"""Experiment orchestration: seeded batches of runs, aggregate statistics,
CSV and markdown emission, scaling sweeps, and the forced-start stagnation
scenario.

Per-run seeds are a stable 64-bit hash of (master seed, configuration
fingerprint, run index), so results never depend on worker count,
scheduling, or how many other cells an invocation happens to contain.
"""

from __future__ import annotations

import hashlib
import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from statistics import fmean, pstdev
from typing import List, NamedTuple, Optional, Sequence, Tuple

from .diversity import DiversityMetric, MetricKind, RefSpec
from .engine import (
    DEFAULT_GENERATION_CAP,
    AlgorithmKind,
    Outcome,
    RunConfig,
    RunResult,
    run,
    validate_config,
)
from .fitness import Problem, ProblemKind
from .selection import SelectionScheme

CSV_HEADER = "run_id,algorithm,problem,n,scheme,metric,ref_r1,ref_r2,seed,outcome,generations"


@dataclass(frozen=True)
class ExperimentConfig:
    problem_kind: ProblemKind
    n: int
    algorithm: AlgorithmKind
    scheme: SelectionScheme
    metric: Optional[DiversityMetric]
    generation_cap: int = DEFAULT_GENERATION_CAP
    runs: int = 100
    master_seed: int = 1
    workers: int = 1
    n_sweep: Optional[Tuple[int, ...]] = None
    init_all_ones: bool = False

    def __post_init__(self) -> None:
        if self.runs < 1:
            raise ValueError("runs must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.n_sweep is not None:
            sizes = tuple(self.n_sweep)
            if not sizes or any(b <= a for a, b in zip(sizes, sizes[1:])):
                raise ValueError("n_sweep must be a strictly increasing size list")


@dataclass(frozen=True)
class AggregateStats:
    runs: int
    successes: int
    failure_rate: float
    mean_generations: Optional[float]
    std_generations: Optional[float]


class RunRecord(NamedTuple):
    run_id: int
    algorithm: str
    problem: str
    n: int
    scheme: str
    metric: str
    ref_r1: Optional[int]
    ref_r2: Optional[int]
    seed: int
    outcome: str
    generations: int


@dataclass(frozen=True)
class CellResult:
    records: Tuple[RunRecord, ...]
    stats: AggregateStats


@dataclass(frozen=True)
class ScalingFit:
    sizes: Tuple[int, ...]
    means: Tuple[float, ...]
    loglog_slope: float
    slope_stderr: float


@dataclass(frozen=True)
class SweepResult:
    per_size: Tuple[Tuple[int, AggregateStats], ...]
    fit: Optional[ScalingFit]
    records: Tuple[RunRecord, ...] = ()


def fingerprint(cfg: ExperimentConfig, n: int) -> str:
    metric = cfg.metric.token() if cfg.metric is not None else "none"
    return "|".join(
        (
            "v1",
            cfg.problem_kind.value,
            str(n),
            cfg.algorithm.value,
            cfg.scheme.value,
            metric,
            str(cfg.generation_cap),
            "ones" if cfg.init_all_ones else "rand",
        )
    )


def derive_seed(master_seed: int, fp: str, index: int) -> int:
    payload = f"{master_seed}:{fp}:{index}".encode("utf-8")
    return int.from_bytes(hashlib.blake2b(payload, digest_size=8).digest(), "big")


def _run_configs(cfg: ExperimentConfig, n: int) -> List[RunConfig]:
    fp = fingerprint(cfg, n)
    problem = Problem(cfg.problem_kind, n)
    base = RunConfig(
        problem=problem,
        algorithm=cfg.algorithm,
        scheme=cfg.scheme,
        metric=cfg.metric,
        seed=0,
        generation_cap=cfg.generation_cap,
        init_all_ones=cfg.init_all_ones,
    )
    validate_config(base)
    return [
        replace(base, seed=derive_seed(cfg.master_seed, fp, i)) for i in range(cfg.runs)
    ]


def _map_runs(
    configs: Sequence[RunConfig], workers: int, executor: Optional[ProcessPoolExecutor]
) -> List[RunResult]:
    if executor is not None:
        chunk = max(1, math.ceil(len(configs) / (workers * 8)))
        return list(executor.map(run, configs, chunksize=chunk))
    if workers > 1 and len(configs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunk = max(1, math.ceil(len(configs) / (workers * 8)))
            return list(pool.map(run, configs, chunksize=chunk))
    return [run(c) for c in configs]


def aggregate(results: Sequence[RunResult]) -> AggregateStats:
    """Mean/STD over successful runs only; capped runs are not measurements."""
    gens = [r.generations for r in results if r.outcome is Outcome.SUCCESS]
    successes = len(gens)
    runs = len(results)
    return AggregateStats(
        runs=runs,
        successes=successes,
        failure_rate=1.0 - successes / runs,
        mean_generations=fmean(gens) if successes else None,
        std_generations=pstdev(gens) if successes else None,
    )


def _records(
    cfg: ExperimentConfig, n: int, configs: Sequence[RunConfig], results: Sequence[RunResult]
) -> Tuple[RunRecord, ...]:
    if cfg.metric is None:
        metric_token, ref1, ref2 = "none", None, None
    elif cfg.metric.kind is MetricKind.CDC:
        metric_token, ref1, ref2 = "cdc", None, None
    else:
        ref = cfg.metric.ref.resolve(n)
        metric_token, ref1, ref2 = "hvc", ref.r1, ref.r2
    return tuple(
        RunRecord(
            run_id=i,
            algorithm=cfg.algorithm.value,
            problem=cfg.problem_kind.value,
            n=n,
            scheme=cfg.scheme.value,
            metric=metric_token,
            ref_r1=ref1,
            ref_r2=ref2,
            seed=rc.seed,
            outcome=res.outcome.value,
            generations=res.generations,
        )
        for i, (rc, res) in enumerate(zip(configs, results))
    )


def run_cell(
    cfg: ExperimentConfig,
    executor: Optional[ProcessPoolExecutor] = None,
    n: Optional[int] = None,
) -> CellResult:
    """Execute one experiment cell (``runs`` seeded runs of one configuration)."""
    n = cfg.n if n is None else n
    configs = _run_configs(cfg, n)
    results = _map_runs(configs, cfg.workers, executor)
    return CellResult(records=_records(cfg, n, configs, results), stats=aggregate(results))


def run_experiment(
    cfg: ExperimentConfig, executor: Optional[ProcessPoolExecutor] = None
) -> AggregateStats:
    return run_cell(cfg, executor).stats


def fit_loglog(sizes: Sequence[int], means: Sequence[float]) -> ScalingFit:
    """Least-squares slope of ln(mean) against ln(n)."""
    if len(sizes) != len(means) or len(sizes) < 2:
        raise ValueError("need at least two (n, mean) points to fit")
    xs = [math.log(s) for s in sizes]
    ys = [math.log(m) for m in means]
    xbar = fmean(xs)
    ybar = fmean(ys)
    sxx = sum((x - xbar) ** 2 for x in xs)
    slope = sum((x - xbar) * (y - ybar) for x, y in zip(xs, ys)) / sxx
    intercept = ybar - slope * xbar
    m = len(xs)
    if m > 2:
        ss_res = sum((y - intercept - slope * x) ** 2 for x, y in zip(xs, ys))
        stderr = math.sqrt(ss_res / (m - 2) / sxx)
    else:
        stderr = float("nan")
    return ScalingFit(
        sizes=tuple(sizes), means=tuple(means), loglog_slope=slope, slope_stderr=stderr
    )


def sweep(
    cfg: ExperimentConfig, executor: Optional[ProcessPoolExecutor] = None
) -> SweepResult:
    """Run the configuration across ``n_sweep`` and fit the log-log slope."""
    if not cfg.n_sweep:
        raise ValueError("sweep needs a non-empty n_sweep")
    per_size = []
    records: List[RunRecord] = []
    fit_sizes: List[int] = []
    fit_means: List[float] = []
    for n in cfg.n_sweep:
        result = run_cell(cfg, executor, n=n)
        records.extend(result.records)
        stats = result.stats
        per_size.append((n, stats))
        if stats.successes == 0:
            warnings.warn(
                f"n={n}: every run stagnated; size excluded from the scaling fit",
                stacklevel=2,
            )
        else:
            fit_sizes.append(n)
            fit_means.append(stats.mean_generations)
    fit = fit_loglog(fit_sizes, fit_means) if len(fit_sizes) >= 2 else None
    return SweepResult(per_size=tuple(per_size), fit=fit, records=tuple(records))


def nmuar_asym_check(
    n: int,
    seeds: Sequence[int],
    problem_kind: ProblemKind = ProblemKind.ONE_MIN_MAX,
    ref: Optional[RefSpec] = None,
    generation_cap: int = 100_000,
    workers: int = 1,
    executor: Optional[ProcessPoolExecutor] = None,
) -> float:
    """Fraction of forced-start runs that stagnate under NMUAR + HVC.

    Starts every run from the all-ones string. With the lopsided ``asym``
    anchor the all-ones extreme outscores its only neighbour, NMUAR then
    never selects the neighbour, and the run can never expand coverage.
    """
    if ref is None:
        ref = RefSpec.named("asym")
    configs = [
        RunConfig(
            problem=Problem(problem_kind, n),
            algorithm=AlgorithmKind.SEMO,
            scheme=SelectionScheme.NMUAR,
            metric=DiversityMetric.hvc(ref),
            seed=seed,
            generation_cap=generation_cap,
            init_all_ones=True,
        )
        for seed in seeds
    ]
    results = _map_runs(configs, workers, executor)
    stagnated = sum(1 for r in results if r.outcome is Outcome.STAGNATION)
    return stagnated / len(results)


# -- emission ----------------------------------------------------------------


def emit_csv(records: Sequence[RunRecord]) -> bytes:
    """UTF-8, LF-terminated CSV; empty reference columns for metric-free rows."""
    lines = [CSV_HEADER]
    for r in records:
        lines.append(
            ",".join(
                (
                    str(r.run_id),
                    r.algorithm,
                    r.problem,
                    str(r.n),
                    r.scheme,
                    r.metric,
                    "" if r.ref_r1 is None else str(r.ref_r1),
                    "" if r.ref_r2 is None else str(r.ref_r2),
                    str(r.seed),
                    r.outcome,
                    str(r.generations),
                )
            )
        )
    return ("\n".join(lines) + "\n").encode("utf-8")


def _cell_text(stats: Optional[AggregateStats]) -> tuple:
    if stats is None:
        return "-", "-"
    if stats.failure_rate > 0:
        return "Stagnation", "Stagnation"
    return f"{stats.mean_generations:.2e}", f"{stats.std_generations:.2e}"


def emit_table(
    title: str,
    row_labels: Sequence[str],
    col_labels: Sequence[str],
    cells: dict,
) -> str:
    """Markdown grid with a mean row and an STD row per configuration.

    ``cells`` maps (row_label, col_label) to AggregateStats; a failing
    cell renders as "Stagnation".
    """
    out = [f"### {title}", ""]
    out.append("| Algorithms | " + " | ".join(col_labels) + " |")
    out.append("|---" * (len(col_labels) + 1) + "|")
    for row in row_labels:
        means = []
        stds = []
        for col in col_labels:
            m, s = _cell_text(cells.get((row, col)))
            means.append(m)
            stds.append(s)
        out.append(f"| {row} | " + " | ".join(means) + " |")
        out.append("|  | " + " | ".join(stds) + " |")
    out.append("")
    return "\n".join(out)


# -- the full benchmark grid -------------------------------------------------

_GRID_SCHEMES = (
    SelectionScheme.HDC,
    SelectionScheme.NMUAR,
    SelectionScheme.EXPONENTIAL,
    SelectionScheme.HARMONIC,
    SelectionScheme.POWER_LAW,
    SelectionScheme.TOURNAMENT_MU,
)

_GRID_METRICS = (
    ("HVC(-1,-1)", DiversityMetric.hvc(RefSpec.named("unit"))),
    ("HVC(-n,-n)", DiversityMetric.hvc(RefSpec.named("n"))),
    ("CDC", DiversityMetric.cdc()),
)

_SCHEME_LABELS = {
    SelectionScheme.HDC: "HDC",
    SelectionScheme.NMUAR: "NMUAR",
    SelectionScheme.EXPONENTIAL: "exponential",
    SelectionScheme.HARMONIC: "harmonic",
    SelectionScheme.POWER_LAW: "power law",
    SelectionScheme.TOURNAMENT_MU: "tournament(mu)",
}


@dataclass(frozen=True)
class TablesResult:
    records: Tuple[RunRecord, ...]
    markdown: str


def run_tables(
    n: int = 100,
    runs: int = 100,
    generation_cap: int = DEFAULT_GENERATION_CAP,
    master_seed: int = 1,
    workers: int = 1,
) -> TablesResult:
    """Reproduce the whole benchmark grid: uniform baselines, both problems
    under every scored scheme x metric, and the max-L variant on LOTZ."""

    def cell(problem_kind, algorithm, scheme, metric):
        return ExperimentConfig(
            problem_kind=problem_kind,
            n=n,
            algorithm=algorithm,
            scheme=scheme,
            metric=metric,
            generation_cap=generation_cap,
            runs=runs,
            master_seed=master_seed,
            workers=workers,
        )

    all_records: List[RunRecord] = []
    sections: List[str] = []
    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        # baselines: uniform parent selection
        base_cells = {}
        for algo in (AlgorithmKind.SEMO, AlgorithmKind.GSEMO):
            for kind, col in (
                (ProblemKind.ONE_MIN_MAX, "OneMinMax"),
                (ProblemKind.LOTZ, "LOTZ"),
            ):
                res = run_cell(cell(kind, algo, SelectionScheme.UNIFORM, None), pool)
                all_records.extend(res.records)
                base_cells[(algo.value.upper(), col)] = res.stats
        sections.append(
            emit_table(
                "Uniform parent selection baselines",
                ["SEMO", "GSEMO"],
                ["OneMinMax", "LOTZ"],
                base_cells,
            )
        )

        for kind, label in (
            (ProblemKind.ONE_MIN_MAX, "OneMinMax"),
            (ProblemKind.LOTZ, "LOTZ"),
        ):
            cells = {}
            rows = []
            for scheme in _GRID_SCHEMES:
                for algo in (AlgorithmKind.SEMO, AlgorithmKind.GSEMO):
                    row = f"{algo.value.upper()} & {_SCHEME_LABELS[scheme]}"
                    rows.append(row)
                    for col, metric in _GRID_METRICS:
                        res = run_cell(cell(kind, algo, scheme, metric), pool)
                        all_records.extend(res.records)
                        cells[(row, col)] = res.stats
            sections.append(
                emit_table(
                    f"Diversity-based parent selection on {label}",
                    rows,
                    [c for c, _ in _GRID_METRICS],
                    cells,
                )
            )

        cells = {}
        rows = []
        for scheme in _GRID_SCHEMES:
            row = _SCHEME_LABELS[scheme]
            rows.append(row)
            for col, metric in _GRID_METRICS:
                res = run_cell(
                    cell(ProblemKind.LOTZ, AlgorithmKind.MODIFIED_GSEMO, scheme, metric),
                    pool,
                )
                all_records.extend(res.records)
                cells[(row, col)] = res.stats
        sections.append(
            emit_table(
                "Max-L restricted global variant on LOTZ",
                rows,
                [c for c, _ in _GRID_METRICS],
                cells,
            )
        )
    finally:
        if pool is not None:
            pool.shutdown()

    return TablesResult(records=tuple(all_records), markdown="\n".join(sections))
