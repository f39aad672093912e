"""Repeated-run experiment protocol: aggregation, relative tables, CSV export.

An experiment is `runs` independent solves of one algorithm on one instance,
with per-run seeds derived as master_seed + run index.  Aggregates use the
population standard deviation (divide by N).  Runs are independent, so they
may execute in a process pool; results are merged in run order and are
identical to sequential execution.
"""

from __future__ import annotations

import csv
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Callable, Mapping, Sequence

import numpy as np

from gridsched import baselines, fuzzy_de
from gridsched.baselines import GAConfig, PSOConfig, SAConfig
from gridsched.fuzzy_de import RunResult, SolverConfig
from gridsched.model import ConfigurationError, GridInstance

RUNS_CSV = "runs.csv"
TRACES_CSV = "traces.csv"
BASELINE_ALGORITHM = "Fuzzy DE"

AnyConfig = SolverConfig | GAConfig | SAConfig | PSOConfig


@dataclass(frozen=True)
class AlgorithmInfo:
    display: str
    solve: Callable[[GridInstance, AnyConfig], RunResult]
    config_type: type
    # CLI override name -> config field name, for fields this solver has.
    overrides: Mapping[str, str]


ALGORITHMS: dict[str, AlgorithmInfo] = {
    "ga": AlgorithmInfo(
        "GA",
        baselines.ga_solve,
        GAConfig,
        {"np": "population_size", "cr": "crossover_rate", "iters": "max_iterations"},
    ),
    "sa": AlgorithmInfo("SA", baselines.sa_solve, SAConfig, {}),
    "fuzzy-pso": AlgorithmInfo(
        "Fuzzy PSO",
        baselines.fuzzy_pso_solve,
        PSOConfig,
        {"np": "swarm_size", "iters": "max_iterations"},
    ),
    "de": AlgorithmInfo(
        "DE",
        baselines.crisp_de_solve,
        SolverConfig,
        {
            "np": "population_size",
            "f": "scaling_factor",
            "cr": "crossover_rate",
            "iters": "max_iterations",
        },
    ),
    "fuzzy-de": AlgorithmInfo(
        "Fuzzy DE",
        fuzzy_de.solve,
        SolverConfig,
        {
            "np": "population_size",
            "f": "scaling_factor",
            "cr": "crossover_rate",
            "iters": "max_iterations",
        },
    ),
}


@dataclass(frozen=True)
class SolverSpec:
    """A selectable algorithm plus its config; the seed is replaced per run."""

    algorithm: str
    config: AnyConfig

    def __post_init__(self) -> None:
        if self.algorithm not in ALGORITHMS:
            raise ConfigurationError(
                f"unknown algorithm {self.algorithm!r}; choose from {sorted(ALGORITHMS)}"
            )
        expected = ALGORITHMS[self.algorithm].config_type
        if not isinstance(self.config, expected):
            raise ConfigurationError(
                f"algorithm {self.algorithm!r} expects a {expected.__name__}, "
                f"got {type(self.config).__name__}"
            )

    @property
    def display(self) -> str:
        return ALGORITHMS[self.algorithm].display


def make_spec(algorithm: str, **overrides: float | int | None) -> SolverSpec:
    """Build a spec from defaults plus CLI-style overrides (np, f, cr, iters).

    Overrides that the chosen algorithm has no field for are ignored.
    """
    if algorithm not in ALGORITHMS:
        raise ConfigurationError(
            f"unknown algorithm {algorithm!r}; choose from {sorted(ALGORITHMS)}"
        )
    info = ALGORITHMS[algorithm]
    kwargs = {}
    for name, value in overrides.items():
        if value is None:
            continue
        if name == "seed":
            kwargs["seed"] = int(value)
        elif name in info.overrides:
            kwargs[info.overrides[name]] = value
    return SolverSpec(algorithm=algorithm, config=info.config_type(**kwargs))


def run_solver(instance: GridInstance, spec: SolverSpec, seed: int) -> RunResult:
    """Run one seeded solve of the selected algorithm."""
    config = replace(spec.config, seed=seed)
    return ALGORITHMS[spec.algorithm].solve(instance, config)


@dataclass(frozen=True)
class StatsSummary:
    """Aggregates over the runs of one (algorithm, instance) experiment."""

    algorithm: str
    instance: str
    runs: int
    mean_makespan: float
    stddev_makespan: float
    mean_wall_time: float
    per_run_makespans: tuple[float, ...]
    per_run_wall_times: tuple[float, ...]
    per_run_traces: tuple[tuple[float, ...], ...]


def _solve_task(args: tuple[GridInstance, SolverSpec, int]) -> RunResult:
    instance, spec, seed = args
    return run_solver(instance, spec, seed)


def run_experiment(
    instance: GridInstance,
    spec: SolverSpec,
    runs: int,
    master_seed: int,
    instance_name: str = "instance",
    workers: int = 1,
) -> StatsSummary:
    """Execute `runs` independent seeded solves and aggregate them."""
    if runs < 1:
        raise ConfigurationError(f"runs must be >= 1, got {runs}")
    tasks = [(instance, spec, master_seed + index) for index in range(runs)]
    results: list[RunResult] = []
    if workers <= 1 or runs == 1:
        for index, task in enumerate(tasks):
            try:
                results.append(_solve_task(task))
            except Exception as exc:
                raise RuntimeError(
                    f"{spec.display} run {index} (seed {task[2]}) failed: {exc}"
                ) from exc
    else:
        with ProcessPoolExecutor(max_workers=min(workers, runs)) as pool:
            futures = [pool.submit(_solve_task, task) for task in tasks]
            for index, future in enumerate(futures):
                try:
                    results.append(future.result())
                except Exception as exc:
                    raise RuntimeError(
                        f"{spec.display} run {index} (seed {tasks[index][2]}) failed: {exc}"
                    ) from exc
    makespans = np.array([r.best_makespan for r in results])
    wall_times = np.array([r.wall_time for r in results])
    return StatsSummary(
        algorithm=spec.display,
        instance=instance_name,
        runs=runs,
        mean_makespan=float(makespans.mean()),
        stddev_makespan=float(makespans.std()),
        mean_wall_time=float(wall_times.mean()),
        per_run_makespans=tuple(float(x) for x in makespans),
        per_run_wall_times=tuple(float(x) for x in wall_times),
        per_run_traces=tuple(r.trace for r in results),
    )


def default_workers(env: Mapping[str, str] | None = None) -> int:
    """Worker count for bench runs; GRIDSCHED_THREADS caps it, 0 means auto."""
    env = os.environ if env is None else env
    raw = env.get("GRIDSCHED_THREADS", "0")
    try:
        value = int(raw)
    except ValueError as exc:
        raise ConfigurationError(f"GRIDSCHED_THREADS must be an integer, got {raw!r}") from exc
    if value < 0:
        raise ConfigurationError(f"GRIDSCHED_THREADS must be >= 0, got {value}")
    if value == 0:
        return os.cpu_count() or 1
    return value


@dataclass(frozen=True)
class RelativeTable:
    """Mean-makespan deltas of every algorithm against the baseline row."""

    baseline: str
    instances: tuple[str, ...]
    deltas: dict[str, dict[str, float]]
    averages: dict[str, float]


def relative_performance(
    means: Mapping[str, Mapping[str, float]], baseline: str = BASELINE_ALGORITHM
) -> RelativeTable:
    """Per-instance mean differences vs the baseline, plus per-algorithm averages.

    The baseline's own row is included and is identically zero.
    """
    if baseline not in means:
        raise ConfigurationError(f"means table has no {baseline!r} row")
    if len(means) < 2:
        raise ConfigurationError("means table needs at least one non-baseline row")
    instances = tuple(means[baseline])
    deltas: dict[str, dict[str, float]] = {}
    averages: dict[str, float] = {}
    for algorithm, row in means.items():
        if set(row) != set(instances):
            raise ConfigurationError(
                f"row {algorithm!r} covers {sorted(row)}, expected {sorted(instances)}"
            )
        delta_row = {inst: row[inst] - means[baseline][inst] for inst in instances}
        deltas[algorithm] = delta_row
        averages[algorithm] = sum(delta_row.values()) / len(instances)
    return RelativeTable(baseline=baseline, instances=instances, deltas=deltas, averages=averages)


def export_csv(results: Sequence[StatsSummary], out_dir: str | Path) -> None:
    """Write runs.csv (one row per run) and traces.csv (one row per generation)."""
    if not results:
        raise ConfigurationError("no results to export")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / RUNS_CSV, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["run_id", "algorithm", "instance", "makespan", "wall_time_s"])
        for summary in results:
            for run_id, (makespan, wall) in enumerate(
                zip(summary.per_run_makespans, summary.per_run_wall_times)
            ):
                writer.writerow([run_id, summary.algorithm, summary.instance, repr(makespan), repr(wall)])
    with open(out / TRACES_CSV, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["algorithm", "instance", "generation", "best_makespan"])
        for summary in results:
            for trace in summary.per_run_traces:
                for generation, value in enumerate(trace):
                    writer.writerow([summary.algorithm, summary.instance, generation, repr(value)])


def summaries_to_means(results: Sequence[StatsSummary]) -> dict[str, dict[str, float]]:
    """Pivot summaries into {algorithm: {instance: mean makespan}}."""
    means: dict[str, dict[str, float]] = {}
    for summary in results:
        means.setdefault(summary.algorithm, {})[summary.instance] = summary.mean_makespan
    return means


def _format_table(title: str, header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    widths = [len(cell) for cell in header]
    for row in rows:
        for index, cell in enumerate(row):
            widths[index] = max(widths[index], len(cell))
    lines = [title]
    lines.append("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(header)).rstrip())
    for row in rows:
        lines.append("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip())
    return "\n".join(lines)


def _pivot(
    results: Sequence[StatsSummary], value: Callable[[StatsSummary], float]
) -> tuple[list[str], list[str], dict[tuple[str, str], float]]:
    algorithms: list[str] = []
    instances: list[str] = []
    cells: dict[tuple[str, str], float] = {}
    for summary in results:
        if summary.algorithm not in algorithms:
            algorithms.append(summary.algorithm)
        if summary.instance not in instances:
            instances.append(summary.instance)
        cells[(summary.algorithm, summary.instance)] = value(summary)
    return algorithms, instances, cells


def format_stat_table(
    results: Sequence[StatsSummary], which: str, display_names: Mapping[str, str] | None = None
) -> str:
    """Fixed-width table of means, stddevs, or mean wall times per algorithm/instance."""
    pickers: dict[str, tuple[str, Callable[[StatsSummary], float]]] = {
        "mean": ("Mean makespan", lambda s: s.mean_makespan),
        "stddev": ("Makespan standard deviation", lambda s: s.stddev_makespan),
        "time": ("Mean wall time (s)", lambda s: s.mean_wall_time),
    }
    title, picker = pickers[which]
    algorithms, instances, cells = _pivot(results, picker)
    runs = results[0].runs if results else 0
    header = ["Algorithm"] + [
        (display_names or {}).get(inst, inst) for inst in instances
    ]
    rows = [
        [alg] + [f"{cells[(alg, inst)]:.4f}" for inst in instances] for alg in algorithms
    ]
    return _format_table(f"{title} ({runs} runs)", header, rows)


def format_relative_table(
    table: RelativeTable, display_names: Mapping[str, str] | None = None
) -> str:
    """Fixed-width relative-performance table with the per-algorithm average column."""
    header = ["Algorithm"] + [
        (display_names or {}).get(inst, inst) for inst in table.instances
    ] + ["Average"]
    rows = []
    for algorithm, delta_row in table.deltas.items():
        rows.append(
            [algorithm]
            + [f"{delta_row[inst]:.5f}" for inst in table.instances]
            + [f"{table.averages[algorithm]:.5f}"]
        )
    return _format_table(f"Relative performance vs {table.baseline}", header, rows)
