"""Command-line entry point.

Subcommands:

* ``run``      one experiment cell (one configuration, many seeded runs)
* ``sweep``    the same cell across a list of problem sizes plus a
               log-log scaling fit
* ``tables``   the full benchmark grid
* ``scenario nmuar-asym``  forced-start stagnation check for NMUAR with
               an asymmetric hypervolume anchor

Exit codes: 0 success, 1 configuration error, 2 I/O error. Every flag
can also be set in an INI config file (section ``[experiment]``); flags
given on the command line win.
"""

from __future__ import annotations

import argparse
import configparser
import sys
from typing import List, Optional

from .diversity import DiversityMetric, RefSpec
from .engine import DEFAULT_GENERATION_CAP, AlgorithmKind
from .fitness import ProblemKind
from .harness import (
    ExperimentConfig,
    derive_seed,
    emit_csv,
    emit_table,
    nmuar_asym_check,
    run_cell,
    run_tables,
    sweep,
)
from .selection import SelectionScheme


class ConfigError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        raise ConfigError(message)


_CONFIG_KEYS = {
    "problem",
    "algo",
    "scheme",
    "metric",
    "ref",
    "n",
    "runs",
    "cap",
    "seed",
    "workers",
    "out",
    "format",
}

_PROBLEMS = {k.value: k for k in ProblemKind}
_ALGOS = {k.value: k for k in AlgorithmKind}
_SCHEMES = {s.value: s for s in SelectionScheme}


def _parse_ref(text: str) -> RefSpec:
    if "," in text:
        try:
            r1, r2 = (int(part.strip()) for part in text.split(","))
        except ValueError as exc:
            raise ConfigError(f"--ref expects a preset name or 'r1,r2': {text!r}") from exc
        return RefSpec.fixed(r1, r2)
    try:
        return RefSpec.named(text)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _parse_metric(metric: str, ref: Optional[str]) -> Optional[DiversityMetric]:
    if metric == "none":
        return None
    if metric == "cdc":
        return DiversityMetric.cdc()
    if metric == "hvc":
        return DiversityMetric.hvc(_parse_ref(ref if ref is not None else "unit"))
    raise ConfigError(f"unknown metric {metric!r}; choose hvc, cdc, or none")


def _parse_sizes(text: str) -> List[int]:
    try:
        return [int(part.strip()) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise ConfigError(f"--n expects an integer or comma list, got {text!r}") from exc


def _load_config_file(path: str) -> dict:
    parser = configparser.ConfigParser()
    read = parser.read(path)
    if not read:
        raise ConfigError(f"config file not found: {path}")
    if not parser.has_section("experiment"):
        raise ConfigError("config file must contain an [experiment] section")
    values = dict(parser.items("experiment"))
    unknown = set(values) - _CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    return values


def _add_common(p: argparse.ArgumentParser, default_runs: int = 100) -> None:
    p.add_argument("--config", help="INI file with an [experiment] section")
    p.add_argument("--problem", help="oneminmax or lotz")
    p.add_argument("--algo", help="semo, gsemo, or mgsemo")
    p.add_argument("--scheme", help=", ".join(_SCHEMES))
    p.add_argument("--metric", help="hvc, cdc, or none")
    p.add_argument("--ref", help="hvc anchor: unit, n, n2, asym, or 'r1,r2'")
    p.add_argument("--n", help="problem size (comma list for sweep)")
    p.add_argument("--runs", type=int, help=f"independent runs (default {default_runs})")
    p.add_argument("--cap", type=int, help="generation cap per run (default 10^6)")
    p.add_argument("--seed", type=int, help="master seed (default 1)")
    p.add_argument("--workers", type=int, help="parallel worker processes (default 1)")
    p.add_argument("--out", help="write per-run CSV to this path")
    p.add_argument("--format", dest="fmt", choices=("md", "csv"), help="stdout format")


def _merged(args: argparse.Namespace) -> dict:
    values = {}
    if getattr(args, "config", None):
        values.update(_load_config_file(args.config))
    overrides = {
        "problem": args.problem,
        "algo": args.algo,
        "scheme": args.scheme,
        "metric": args.metric,
        "ref": args.ref,
        "n": args.n,
        "runs": args.runs,
        "cap": args.cap,
        "seed": args.seed,
        "workers": args.workers,
        "out": args.out,
        "format": args.fmt,
    }
    values.update({k: v for k, v in overrides.items() if v is not None})
    return values


def _lookup(table: dict, value: str, flag: str):
    try:
        return table[value]
    except KeyError:
        raise ConfigError(f"{flag} must be one of {sorted(table)}, got {value!r}") from None


def _experiment_from(values: dict, sizes_allowed: bool) -> ExperimentConfig:
    problem = _lookup(_PROBLEMS, str(values.get("problem", "oneminmax")), "--problem")
    algo = _lookup(_ALGOS, str(values.get("algo", "semo")), "--algo")
    scheme = _lookup(_SCHEMES, str(values.get("scheme", "uniform")), "--scheme")
    default_metric = "none" if scheme is SelectionScheme.UNIFORM else "hvc"
    metric = _parse_metric(str(values.get("metric", default_metric)), values.get("ref"))
    sizes = _parse_sizes(str(values.get("n", "100")))
    if not sizes:
        raise ConfigError("--n must name at least one size")
    if len(sizes) > 1 and not sizes_allowed:
        raise ConfigError("this subcommand takes a single --n value")
    try:
        return ExperimentConfig(
            problem_kind=problem,
            n=sizes[0],
            algorithm=algo,
            scheme=scheme,
            metric=metric,
            generation_cap=int(values.get("cap", DEFAULT_GENERATION_CAP)),
            runs=int(values.get("runs", 100)),
            master_seed=int(values.get("seed", 1)),
            workers=int(values.get("workers", 1)),
            n_sweep=tuple(sizes) if len(sizes) > 1 else None,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _write_out(records, values: dict) -> None:
    out = values.get("out")
    payload = emit_csv(records)
    if out:
        with open(out, "wb") as fh:
            fh.write(payload)
    if values.get("format") == "csv" and not out:
        sys.stdout.write(payload.decode("utf-8"))


def _stats_lines(stats) -> List[str]:
    mean = "-" if stats.mean_generations is None else f"{stats.mean_generations:.2e}"
    std = "-" if stats.std_generations is None else f"{stats.std_generations:.2e}"
    return [
        f"runs={stats.runs} successes={stats.successes} "
        f"failure_rate={stats.failure_rate:.2f}",
        f"mean={mean} std={std}",
    ]


def _cmd_run(args) -> int:
    values = _merged(args)
    cfg = _experiment_from(values, sizes_allowed=False)
    result = run_cell(cfg)
    if values.get("format", "md") == "md":
        metric = cfg.metric.token() if cfg.metric else "none"
        print(
            f"problem={cfg.problem_kind.value} n={cfg.n} algo={cfg.algorithm.value} "
            f"scheme={cfg.scheme.value} metric={metric}"
        )
        for line in _stats_lines(result.stats):
            print(line)
    _write_out(result.records, values)
    return 0


def _cmd_sweep(args) -> int:
    values = _merged(args)
    cfg = _experiment_from(values, sizes_allowed=True)
    if cfg.n_sweep is None:
        raise ConfigError("sweep needs --n with a comma-separated size list")
    result = sweep(cfg)
    if values.get("format", "md") == "md":
        print("| n | runs | successes | failure | mean | std |")
        print("|---|---|---|---|---|---|")
        for n, stats in result.per_size:
            mean = "-" if stats.mean_generations is None else f"{stats.mean_generations:.3e}"
            std = "-" if stats.std_generations is None else f"{stats.std_generations:.3e}"
            print(
                f"| {n} | {stats.runs} | {stats.successes} "
                f"| {stats.failure_rate:.2f} | {mean} | {std} |"
            )
        if result.fit is not None:
            print(
                f"\nlog-log slope: {result.fit.loglog_slope:.3f} "
                f"(stderr {result.fit.slope_stderr:.3f})"
            )
        else:
            print("\nlog-log slope: not enough successful sizes to fit")
    _write_out(result.records, values)
    return 0


def _cmd_tables(args) -> int:
    values = _merged(args)
    for key in ("problem", "algo", "scheme", "metric", "ref"):
        if key in values:
            raise ConfigError(f"tables runs the whole grid; --{key} does not apply")
    sizes = _parse_sizes(str(values.get("n", "100")))
    if len(sizes) != 1:
        raise ConfigError("tables takes a single --n value")
    result = run_tables(
        n=sizes[0],
        runs=int(values.get("runs", 100)),
        generation_cap=int(values.get("cap", DEFAULT_GENERATION_CAP)),
        master_seed=int(values.get("seed", 1)),
        workers=int(values.get("workers", 1)),
    )
    if values.get("format", "md") == "md":
        print(result.markdown)
    _write_out(result.records, values)
    return 0


def _cmd_scenario(args) -> int:
    values = _merged(args)
    if args.name != "nmuar-asym":
        raise ConfigError(f"unknown scenario {args.name!r}")
    problem = _lookup(_PROBLEMS, str(values.get("problem", "oneminmax")), "--problem")
    sizes = _parse_sizes(str(values.get("n", "20")))
    n = sizes[0]
    runs = int(values.get("runs", 50))
    cap = int(values.get("cap", 100_000))
    master_seed = int(values.get("seed", 1))
    ref = _parse_ref(str(values.get("ref", "asym")))
    fp = f"nmuar-asym|{problem.value}|{n}|{ref.token()}|{cap}"
    seeds = [derive_seed(master_seed, fp, i) for i in range(runs)]
    fraction = nmuar_asym_check(
        n,
        seeds,
        problem_kind=problem,
        ref=ref,
        generation_cap=cap,
        workers=int(values.get("workers", 1)),
    )
    print(
        f"problem={problem.value} n={n} ref={ref.token()} runs={runs} cap={cap} "
        f"stagnation_fraction={fraction:.3f}"
    )
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="divsel", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one experiment cell")
    _add_common(p_run)
    p_run.set_defaults(func=_cmd_run)

    p_sweep = sub.add_parser("sweep", help="run a cell across problem sizes")
    _add_common(p_sweep)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_tables = sub.add_parser("tables", help="run the full benchmark grid")
    _add_common(p_tables)
    p_tables.set_defaults(func=_cmd_tables)

    p_scen = sub.add_parser("scenario", help="special stagnation scenarios")
    p_scen.add_argument("name", choices=("nmuar-asym",))
    _add_common(p_scen, default_runs=50)
    p_scen.set_defaults(func=_cmd_scenario)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
