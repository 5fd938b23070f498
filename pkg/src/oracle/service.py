"""Paired analytic vs brute-force audits."""
import time

from loguru import logger

from src.channel.models import ChannelParams, ChannelSet
from src.channel.sampler import sample_channel_set, trial_rng
from src.optimizer.base import ScenarioSolver
from src.optimizer.models import Strategy
from src.optimizer.service import AlternatingSolver
from src.oracle.grid_search import GridSearchSolver, grid_search
from src.oracle.models import AuditRecord, GridSpec, OracleAuditReport
from src.snr_terms.models import SystemParams


class OracleAuditService:
    """
    Runs the analytic solver and the brute-force oracle on the same seeded
    scenarios and reports how far apart their secrecy rates are.

    Example Usage:
        service = OracleAuditService(reference=GridSearchSolver(GridSpec(m_points=2_000)))
        report = service.audit(
            params=SystemParams(),
            channel_params=ChannelParams(),
            strategy=Strategy.continuous(),
            n_scenarios=100,
            master_seed=1,
        )
        print(report.max_abs_diff, report.offending_seeds)
    """

    def __init__(
        self,
        analytic: ScenarioSolver | None = None,
        reference: ScenarioSolver | None = None,
    ):
        """
        Initialize the audit service.

        Args:
            analytic: Solver under test (defaults to AlternatingSolver())
            reference: Reference solver (defaults to GridSearchSolver())
        """
        self.analytic = analytic or AlternatingSolver()
        self.reference = reference or GridSearchSolver()

    def audit(
        self,
        params: SystemParams,
        channel_params: ChannelParams,
        strategy: Strategy,
        n_scenarios: int,
        master_seed: int,
        tolerance: float = 1e-3,
    ) -> OracleAuditReport:
        """
        Compare both solvers on ``n_scenarios`` seeded scenarios.

        Args:
            params: System parameters shared by every scenario
            channel_params: Fading and geometry parameters
            strategy: Strategy solved by both sides
            n_scenarios: Number of scenarios (trial indices 0..n−1)
            master_seed: Seed the per-trial generators derive from
            tolerance: |Δr_s| above which a scenario counts as a disagreement

        Returns:
            OracleAuditReport

        Raises:
            ValueError: If n_scenarios < 1
        """
        if n_scenarios < 1:
            raise ValueError(f"n_scenarios must be at least 1, got {n_scenarios}")

        started = time.perf_counter()
        records: list[AuditRecord] = []
        for trial in range(n_scenarios):
            ch = sample_channel_set(channel_params, trial_rng(master_seed, trial))
            analytic = self.analytic.solve(ch, params, strategy)
            reference = self.reference.solve(ch, params, strategy)
            if analytic.feasible != reference.feasible:
                logger.warning(
                    f"Feasibility disagreement on trial {trial}: "
                    f"analytic={analytic.feasible}, reference={reference.feasible}"
                )
            records.append(
                AuditRecord(
                    trial=trial,
                    analytic_r_s=analytic.r_s,
                    reference_r_s=reference.r_s,
                    abs_diff=abs(analytic.r_s - reference.r_s),
                    analytic_feasible=analytic.feasible,
                    reference_feasible=reference.feasible,
                )
            )

        diffs = [record.abs_diff for record in records]
        offending = [f"{master_seed}:{r.trial}" for r in records if r.abs_diff > tolerance]
        report = OracleAuditReport(
            master_seed=master_seed,
            scenarios=n_scenarios,
            tolerance=tolerance,
            max_abs_diff=max(diffs),
            mean_abs_diff=sum(diffs) / len(diffs),
            disagreements=len(offending),
            offending_seeds=offending,
            feasibility_disagreements=sum(
                r.analytic_feasible != r.reference_feasible for r in records
            ),
            records=records,
        )

        telemetry = {
            "scenarios": n_scenarios,
            "strategy": strategy.label,
            "max_abs_diff": report.max_abs_diff,
            "disagreements": report.disagreements,
            "feasibility_disagreements": report.feasibility_disagreements,
            "duration_s": round(time.perf_counter() - started, 3),
        }
        logger.bind(**telemetry).info("oracle-audit")
        return report


def refinement_changes(
    ch: ChannelSet,
    p: SystemParams,
    s: Strategy,
    g: GridSpec,
) -> tuple[float, float]:
    """
    Change of the oracle optimum over two successive grid doublings.

    Returns:
        (|r(2g) − r(g)|, |r(4g) − r(2g)|); a converging grid makes the
        second change no larger than the first
    """
    coarse = grid_search(ch, p, s, g).r_s
    middle = grid_search(ch, p, s, g.refined(2)).r_s
    fine = grid_search(ch, p, s, g.refined(4)).r_s
    return abs(middle - coarse), abs(fine - middle)
