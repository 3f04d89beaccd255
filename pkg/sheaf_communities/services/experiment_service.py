"""
Experiment service: seeded Monte Carlo sweeps, statistics and CSV output.

Every run draws from its own generator seeded with
``SeedSequence([master_seed, point_index, run_index])``, so a sweep gives the
same numbers whatever the number of worker processes.
"""

from __future__ import annotations

import logging
from collections import Counter
from functools import partial
from multiprocessing import Pool
from pathlib import Path
from typing import Dict, List, Optional, Sequence, TextIO, Tuple, Union

import numpy as np
import pandas as pd

from ..config import DynamicsConfig
from ..models import (
    Algorithm,
    BumpFunction,
    BumpKind,
    ConstantSheafParams,
    DetectionResult,
    DomainError,
    EvolutionStatus,
    ExperimentIOError,
    Graph,
    Partition,
    RunRecord,
    StoppingComparison,
    SweepConfig,
    SweepPointResult,
    SweepResult,
)
from ..utils.constants import CSV_STAT_COLUMNS
from ..utils.decorators import log_duration
from .detection_service import detect_constant, detect_deterministic, detect_nonconstant

logger = logging.getLogger(__name__)

RunTask = Tuple[int, int, Tuple[float, ...]]


def derive_rng(master_seed: int, point_index: int, run_index: int) -> np.random.Generator:
    """Independent generator for one run of a sweep."""
    return np.random.default_rng(np.random.SeedSequence([master_seed, point_index, run_index]))


def constant_params(point: Sequence[float], dynamics: DynamicsConfig) -> ConstantSheafParams:
    """Parameters for a ``(d, phi, n)`` grid point."""
    d, phi_index, n = point
    phi = BumpFunction(BumpKind.from_string(str(int(phi_index))), dynamics.threshold)
    return ConstantSheafParams.from_config(dynamics, n=int(n), d=float(d), phi=phi)


def run_algorithm(
    algorithm: Algorithm,
    graph: Graph,
    point: Sequence[float],
    rng: np.random.Generator,
    dynamics: DynamicsConfig,
) -> DetectionResult:
    """Run one detection for a grid point."""
    if algorithm is Algorithm.CONSTANT:
        return detect_constant(graph, constant_params(point, dynamics), rng)
    if algorithm is Algorithm.NONCONSTANT:
        return detect_nonconstant(graph, float(point[0]), rng)
    return detect_deterministic(graph, float(point[0]), float(point[1]))


def _execute_run(task: RunTask, algorithm: Algorithm, graph: Graph,
                 dynamics: DynamicsConfig, master_seed: int) -> RunRecord:
    point_index, run_index, point = task
    rng = derive_rng(master_seed, point_index, run_index)
    result = run_algorithm(algorithm, graph, point, rng, dynamics)
    if not result.converged:
        return RunRecord(point_index, run_index, EvolutionStatus.ABORTED)
    return RunRecord(
        point_index,
        run_index,
        EvolutionStatus.CONVERGED,
        cluster_count=result.cluster_count,
        modularity=result.modularity,
        partition_key=result.partition.canonical_key(),
    )


def error_radius(mean: float, sigma: float, aborts: int, runs: int) -> float:
    """Error bar ``sigma + (aborts / runs) * mean``.

    Raises:
        DomainError: If ``runs < 1`` or ``aborts`` is outside ``[0, runs]``
    """
    if runs < 1:
        raise DomainError(f"run count must be >= 1, got {runs}")
    if not 0 <= aborts <= runs:
        raise DomainError(f"abort count must lie in [0, {runs}], got {aborts}")
    return sigma + (aborts / runs) * mean


def _modal_key(keys: Sequence[Tuple[int, ...]]) -> Tuple[Tuple[int, ...], int]:
    counts = Counter(keys)
    # Counter preserves first-seen order, and max keeps the first maximum
    key = max(counts, key=counts.__getitem__)
    return key, counts[key]


def most_likely_partition_frequency(partitions: Sequence[Partition]) -> Tuple[Partition, float]:
    """Most frequent partition up to relabeling, with its relative frequency.

    Ties go to the partition seen first.

    Raises:
        DomainError: If ``partitions`` is empty
    """
    if not partitions:
        raise DomainError("no partitions to compare")
    key, count = _modal_key([p.canonical_key() for p in partitions])
    return Partition(key), count / len(partitions)


def summarize_point(parameters: Tuple[float, ...], runs: Sequence[RunRecord]) -> SweepPointResult:
    """Statistics over the converged runs of one grid point.

    Means and population standard deviations ignore aborted runs; the abort
    fraction enters the error radii and ``pmax`` is relative to all runs.
    """
    total = len(runs)
    converged = [r for r in runs if not r.aborted]
    aborts = total - len(converged)
    if not converged:
        return SweepPointResult(parameters=tuple(parameters), runs=tuple(runs), aborts=aborts)

    clusters = np.array([r.cluster_count for r in converged], dtype=float)
    qs = np.array([r.modularity for r in converged], dtype=float)
    mean_num, sigma_num = float(clusters.mean()), float(clusters.std(ddof=0))
    mean_q, sigma_q = float(qs.mean()), float(qs.std(ddof=0))
    key, count = _modal_key([r.partition_key for r in converged])
    return SweepPointResult(
        parameters=tuple(parameters),
        runs=tuple(runs),
        aborts=aborts,
        mean_cluster_count=mean_num,
        sigma_cluster_count=sigma_num,
        cluster_count_error=error_radius(mean_num, sigma_num, aborts, total),
        mean_modularity=mean_q,
        sigma_modularity=sigma_q,
        modularity_error=error_radius(mean_q, sigma_q, aborts, total),
        modal_partition=Partition(key),
        pmax=count / total,
    )


@log_duration()
def run_sweep(cfg: SweepConfig, workers: Optional[int] = None) -> SweepResult:
    """Run every grid point ``cfg.runs_per_point`` times.

    Args:
        cfg: Sweep configuration
        workers: Process count; defaults to ``cfg.dynamics.workers``

    Returns:
        Point results in grid order
    """
    workers = workers or cfg.dynamics.workers
    tasks: List[RunTask] = [
        (point_index, run_index, point)
        for point_index, point in enumerate(cfg.points)
        for run_index in range(cfg.runs_per_point)
    ]
    worker = partial(
        _execute_run,
        algorithm=cfg.algorithm,
        graph=cfg.graph,
        dynamics=cfg.dynamics,
        master_seed=cfg.master_seed,
    )
    logger.info(
        f"sweep {cfg.algorithm}: {len(cfg.points)} points x {cfg.runs_per_point} runs, {workers} worker(s)"
    )

    if workers > 1 and len(tasks) > 1:
        chunksize = max(1, len(tasks) // (workers * 4))
        with Pool(processes=workers) as pool:
            records = pool.map(worker, tasks, chunksize=chunksize)
    else:
        records = [worker(task) for task in tasks]

    grouped: Dict[int, List[RunRecord]] = {i: [] for i in range(len(cfg.points))}
    for record in records:
        grouped[record.point_index].append(record)

    points = []
    for index, point in enumerate(cfg.points):
        summary = summarize_point(point, grouped[index])
        if summary.flagged:
            logger.warning(f"every run aborted at {dict(zip(cfg.parameter_names, point))}")
        elif summary.aborts:
            logger.debug(f"{summary.aborts}/{summary.run_count} runs aborted at point {index}")
        points.append(summary)
    return SweepResult(config=cfg, points=tuple(points))


def sweep_dataframe(result: SweepResult) -> pd.DataFrame:
    """One row per grid point, grid parameters first."""
    columns = list(result.parameter_names) + CSV_STAT_COLUMNS
    rows = [point.to_row(result.parameter_names) for point in result.points]
    return pd.DataFrame(rows, columns=columns)


def write_csv(result: SweepResult, destination: Union[str, Path, TextIO]) -> None:
    """Write sweep statistics as CSV.

    Floats are written at full precision; flagged points leave their
    statistic cells empty.

    Raises:
        ExperimentIOError: If the destination cannot be written
    """
    frame = sweep_dataframe(result)
    try:
        if isinstance(destination, (str, Path)):
            frame.to_csv(destination, index=False, lineterminator="\n", na_rep="", encoding="utf-8")
        else:
            frame.to_csv(destination, index=False, lineterminator="\n", na_rep="")
    except OSError as e:
        raise ExperimentIOError(f"cannot write CSV to {destination}: {e}", original_error=e) from e
    logger.debug(f"wrote {len(frame)} rows")


@log_duration()
def compare_stopping_criteria(
    g: Graph,
    params: ConstantSheafParams,
    precise_eps: float = 0.001,
    runs: int = 100,
    master_seed: int = 0,
) -> StoppingComparison:
    """Rerun constant-sheaf detection with a finer consensus tolerance.

    Each pair of runs shares its initial opinions. A pair counts as agreeing
    when both converge to the same partition up to relabeling.

    Raises:
        DomainError: If ``runs < 1`` or ``precise_eps`` is out of range
    """
    if runs < 1:
        raise DomainError(f"run count must be >= 1, got {runs}")
    precise = ConstantSheafParams(
        n=params.n,
        d=params.d,
        phi=params.phi,
        eps=precise_eps,
        t_max=params.t_max,
        dt=params.dt,
        separation_tolerance=params.separation_tolerance,
    )

    aborted = agreeing = 0
    for run_index in range(runs):
        coarse_result = detect_constant(g, params, derive_rng(master_seed, 0, run_index))
        precise_result = detect_constant(g, precise, derive_rng(master_seed, 0, run_index))
        if not (coarse_result.converged and precise_result.converged):
            aborted += 1
            continue
        if coarse_result.partition.canonical_key() == precise_result.partition.canonical_key():
            agreeing += 1

    comparison = StoppingComparison(runs, params.eps, precise_eps, aborted, agreeing)
    logger.info(f"stopping criteria agree in {agreeing}/{comparison.compared} converged pairs")
    return comparison
