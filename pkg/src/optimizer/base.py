"""Base protocol for scenario solvers."""
from typing import Protocol

from src.channel.models import ChannelSet
from src.optimizer.models import Solution, Strategy
from src.snr_terms.models import SystemParams


class ScenarioSolver(Protocol):
    """
    Protocol for anything that optimises one channel block under a strategy.

    Implemented by the analytic AlternatingSolver and by the brute-force
    GridSearchSolver, so sweeps and audits can take either one without
    inheriting from a common base.

    Example:
        class MySolver:  # No inheritance needed!
            def solve(self, ch, p, strategy) -> Solution:
                ...

        rows = run_sweep(spec, solver=MySolver())
    """

    def solve(self, ch: ChannelSet, p: SystemParams, strategy: Strategy) -> Solution:
        """
        Optimise (m, n, φ_A) for one scenario.

        Args:
            ch: Channel block
            p: System parameters (alpha already resolved)
            strategy: Transmission strategy

        Returns:
            Solution; infeasible scenarios return feasible=False with r_s = 0

        Raises:
            ModelViolationError: If the reported SNRs cannot be evaluated
        """
        ...
