"""Paired Monte Carlo sweep runner."""
import math
import time
from collections.abc import Callable
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial

import numpy as np
from loguru import logger
from scipy import stats

from src.channel.sampler import sample_channel_set, trial_rng
from src.experiments.models import (
    PARAMETER_FIELDS,
    PowerRatio,
    StrategySpec,
    SweepParameter,
    SweepRow,
    SweepSpec,
)
from src.experiments.presets import continuous_or_discrete
from src.optimizer.base import ScenarioSolver
from src.optimizer.models import Scheme, Strategy
from src.optimizer.service import AlternatingSolver
from src.snr_terms.errors import ModelViolationError
from src.snr_terms.models import SystemParams


@dataclass(frozen=True)
class TrialOutcomes:
    """
    Per-trial results of a sweep, indexed [trial, value, strategy].

    Attributes:
        r_s: Secrecy rate (0 for infeasible trials)
        signal_power: Optimum data power m*² (0 for infeasible trials)
        feasible: Feasibility flags
    """

    r_s: np.ndarray
    signal_power: np.ndarray
    feasible: np.ndarray


def resolve_point(
    spec: SweepSpec,
    value: float,
    curve: StrategySpec,
) -> tuple[SystemParams, Strategy]:
    """
    Parameters and strategy for one (axis value, curve) pair.

    Raises:
        ValueError: If the axis value makes SystemParams or Strategy invalid
    """
    update: dict[str, float | int] = {"alpha": curve.alpha}
    strategy = curve.strategy
    field = PARAMETER_FIELDS.get(spec.swept_parameter)
    if field is not None:
        update[field] = value
    elif strategy.scheme == Scheme.PS and spec.swept_parameter == SweepParameter.DELTA_PHI:
        strategy = continuous_or_discrete(value)
    elif strategy.scheme == Scheme.PS and spec.swept_parameter == SweepParameter.PHI_A_FIXED:
        strategy = Strategy.fixed(value)

    params = SystemParams.model_validate({**spec.base_params.model_dump(), **update})
    return params, strategy


def _run_trial(
    spec: SweepSpec,
    points: list[list[tuple[SystemParams, Strategy]]],
    solver: ScenarioSolver,
    trial: int,
) -> np.ndarray:
    ch = sample_channel_set(spec.channel_params, trial_rng(spec.master_seed, trial))
    out = np.zeros((len(points), len(spec.strategies), 3))
    for i, row in enumerate(points):
        for j, (params, strategy) in enumerate(row):
            solution = solver.solve(ch, params, strategy)
            out[i, j] = (solution.r_s, solution.m_star**2 if solution.feasible else 0.0, solution.feasible)
    return out


def run_trials(
    spec: SweepSpec,
    solver: ScenarioSolver | None = None,
    workers: int = 1,
    progress: Callable[[int], None] | None = None,
) -> TrialOutcomes:
    """
    Solve every (trial, value, strategy) combination of a sweep.

    Trials are independent work items; results are gathered in trial order
    so the outcome does not depend on ``workers``.

    Args:
        spec: Sweep specification
        solver: Scenario solver (defaults to AlternatingSolver with the sweep's delta and max_iter)
        workers: Worker processes (1 runs in-process)
        progress: Called with the number of completed trials

    Returns:
        TrialOutcomes
    """
    solver = solver or AlternatingSolver(delta=spec.delta, max_iter=spec.max_iter)
    points = [[resolve_point(spec, value, curve) for curve in spec.strategies] for value in spec.values]
    work = partial(_run_trial, spec, points, solver)

    results: list[np.ndarray] = []
    if workers > 1:
        chunksize = max(1, spec.trials // (workers * 8))
        with ProcessPoolExecutor(max_workers=workers) as executor:
            for outcome in executor.map(work, range(spec.trials), chunksize=chunksize):
                results.append(outcome)
                if progress:
                    progress(len(results))
    else:
        for trial in range(spec.trials):
            results.append(work(trial))
            if progress:
                progress(len(results))

    stacked = np.stack(results)
    return TrialOutcomes(
        r_s=stacked[..., 0],
        signal_power=stacked[..., 1],
        feasible=stacked[..., 2].astype(bool),
    )


def _power_reference(spec: SweepSpec, params: SystemParams) -> float:
    return params.p_a if spec.power_ratio == PowerRatio.DAR else params.p_e


def summarize(spec: SweepSpec, outcomes: TrialOutcomes) -> list[SweepRow]:
    """Reduce per-trial outcomes to rows in (value × strategy) order."""
    rows: list[SweepRow] = []
    for i, value in enumerate(spec.values):
        for j, curve in enumerate(spec.strategies):
            params, _ = resolve_point(spec, value, curve)
            r_s = outcomes.r_s[:, i, j]
            feasible = outcomes.feasible[:, i, j]
            power = outcomes.signal_power[feasible, i, j]
            reference = _power_reference(spec, params)

            mean_power = float(power.mean()) if power.size else 0.0
            mean_ratio = float((power / reference).mean()) if power.size and reference > 0.0 else 0.0
            rows.append(
                SweepRow(
                    parameter_value=value,
                    strategy_label=curve.label,
                    mean_r_s=float(r_s.mean()),
                    mean_signal_power=mean_power,
                    mean_power_ratio=mean_ratio,
                    infeasible_fraction=float(1.0 - feasible.mean()),
                    trials=spec.trials,
                    stderr_r_s=float(stats.sem(r_s)) if spec.trials > 1 else 0.0,
                )
            )
    return rows


def run_sweep(
    spec: SweepSpec,
    solver: ScenarioSolver | None = None,
    workers: int = 1,
    progress: Callable[[int], None] | None = None,
) -> list[SweepRow]:
    """
    Run a paired Monte Carlo sweep.

    Each trial samples one channel block from (master_seed, trial index)
    and reuses it for every parameter value and strategy. Infeasible
    solutions count as zero secrecy and raise the infeasible fraction.

    Args:
        spec: Sweep specification
        solver: Scenario solver (defaults to AlternatingSolver)
        workers: Worker processes
        progress: Called with the number of completed trials

    Returns:
        SweepRows in (parameter value × strategy) order

    Raises:
        ValueError: If an axis value is invalid for the parameters
        RuntimeError: If a trial fails unexpectedly
    """
    started = time.perf_counter()
    try:
        outcomes = run_trials(spec, solver=solver, workers=workers, progress=progress)
    except (ValueError, ModelViolationError):
        raise
    except Exception as e:
        logger.error(f"Sweep {spec.name} failed: {e}")
        raise RuntimeError(f"Sweep {spec.name} failed: {e}") from e

    rows = summarize(spec, outcomes)
    telemetry = {
        "sweep": spec.name,
        "parameter": spec.swept_parameter.value,
        "trials": spec.trials,
        "rows": len(rows),
        "infeasible_solves": int((~outcomes.feasible).sum()),
        "workers": workers,
        "duration_s": round(time.perf_counter() - started, 3),
    }
    logger.bind(**telemetry).info("sweep-summary")
    return rows


def periodicity_deviation(rows: list[SweepRow], strategy_label: str | None = None) -> float:
    """
    max over φ of |T(φ) − T(φ + π)| for a fixed-phase curve.

    Only phases whose half-turn partner is also on the axis contribute;
    returns 0.0 when no pair exists.
    """
    label = strategy_label or rows[0].strategy_label
    curve = {row.parameter_value: row.mean_r_s for row in rows if row.strategy_label == label}
    phases = sorted(curve)
    deviation = 0.0
    for phase in phases:
        partner = (phase + math.pi) % (2.0 * math.pi)
        match = next((q for q in phases if math.isclose(q, partner, abs_tol=1e-9)), None)
        if match is not None:
            deviation = max(deviation, abs(curve[phase] - curve[match]))
    return deviation
