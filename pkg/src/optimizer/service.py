"""Joint alternating solver over power split and controller phase."""
import math

from loguru import logger

from src.channel.models import ChannelSet, wrap_phase
from src.optimizer.models import PhaseMode, PowerAllocation, Scheme, Solution, Strategy
from src.optimizer.phase_control import (
    optimal_phase_continuous,
    optimal_phase_discrete,
    phase_alignment,
)
from src.optimizer.power_allocation import n_from_m, optimize_m
from src.snr_terms.errors import ModelViolationError
from src.snr_terms.models import SnrTerms, SystemParams
from src.snr_terms.service import compute_terms, gamma_a, gamma_e, gamma_p, security_rate

DEFAULT_DELTA = 1e-6
DEFAULT_MAX_ITER = 20


class AlternatingSolver:
    """
    Analytic solver for one scenario.

    PS with continuous phase is decoupled: the phase is fully aligned
    (cos(φ_A + φ₁) = 1) and the power split is optimised once. PS with a
    discrete phase grid alternates between the power split and the best grid
    phase until the secrecy rate gains at most ``delta`` bits. The AN baseline
    drops pseudo-decoding (θ = 0) and the coherent cross term.

    Example Usage:
        solver = AlternatingSolver(delta=1e-6, max_iter=20)
        rng = trial_rng(master_seed=1, trial_index=0)
        ch = sample_channel_set(ChannelParams(), rng)

        solution = solver.solve(ch, SystemParams(), Strategy.discrete(math.pi / 8))
        print(solution.r_s, solution.iterations)
    """

    def __init__(self, delta: float = DEFAULT_DELTA, max_iter: int = DEFAULT_MAX_ITER):
        """
        Initialize the solver.

        Args:
            delta: Convergence threshold on the secrecy rate, bits/s/Hz
            max_iter: Maximum alternating rounds

        Raises:
            ValueError: If delta is negative or max_iter < 1
        """
        if not delta >= 0.0:
            raise ValueError(f"delta must be nonnegative, got {delta}")
        if max_iter < 1:
            raise ValueError(f"max_iter must be at least 1, got {max_iter}")
        self.delta = delta
        self.max_iter = max_iter

    def solve(self, ch: ChannelSet, p: SystemParams, strategy: Strategy) -> Solution:
        """
        Optimise (m, n, φ_A) for one channel block.

        Args:
            ch: Channel block
            p: System parameters
            strategy: Transmission strategy

        Returns:
            Solution with the final operating point and its objective trace

        Raises:
            ModelViolationError: If the primary SNR cannot be evaluated at the optimum
        """
        if strategy.scheme == Scheme.AN:
            return self._solve_baseline(ch, p)

        t = compute_terms(ch, p)
        if strategy.phase_mode == PhaseMode.CONTINUOUS:
            allocation = optimize_m(t, p, 1.0)
            if not allocation.feasible:
                return Solution.infeasible(phi1=t.phi1)
            return _assemble(t, p, allocation, optimal_phase_continuous(t))

        if strategy.phase_mode == PhaseMode.DISCRETE:
            return self._solve_discrete(t, p, strategy.delta_phi)

        phase = strategy.fixed_phase if strategy.phase_mode == PhaseMode.FIXED else 0.0
        allocation = optimize_m(t, p, phase_alignment(t, phase))
        if not allocation.feasible:
            return Solution.infeasible(phi1=t.phi1)
        return _assemble(t, p, allocation, wrap_phase(phase))

    def _solve_baseline(self, ch: ChannelSet, p: SystemParams) -> Solution:
        t = compute_terms(ch, p.model_copy(update={"theta": 0.0}))
        allocation = optimize_m(t, p, 0.0)
        if not allocation.feasible:
            return Solution.infeasible(phi1=t.phi1)
        return _assemble(t, p, allocation, 0.0, suppression=False)

    def _solve_discrete(self, t: SnrTerms, p: SystemParams, delta_phi: float) -> Solution:
        # full alignment bounds every grid phase, so it seeds the first round
        allocation = optimize_m(t, p, 1.0)
        if not allocation.feasible:
            return Solution.infeasible(phi1=t.phi1)

        best: Solution | None = None
        trace: list[float] = []
        m = allocation.m_star
        for _ in range(self.max_iter):
            phase = optimal_phase_discrete(t, delta_phi, m, n_from_m(t, p, m))
            allocation = optimize_m(t, p, phase_alignment(t, phase))
            if not allocation.feasible:
                break
            candidate = _assemble(t, p, allocation, phase)
            if best is not None and candidate.r_s < best.r_s:
                break
            gain = math.inf if best is None else candidate.r_s - best.r_s
            best = candidate
            trace.append(candidate.r_s)
            m = allocation.m_star
            if gain <= self.delta:
                break

        if best is None:
            return Solution.infeasible(phi1=t.phi1)
        logger.debug(f"Discrete phase solve converged in {len(trace)} rounds")
        return best.model_copy(update={"iterations": len(trace), "objective_trace": trace})


def _assemble(
    t: SnrTerms,
    p: SystemParams,
    allocation: PowerAllocation,
    phi_a: float,
    suppression: bool = True,
) -> Solution:
    """Evaluate SNRs and the secrecy rate at an optimised power split."""
    m = allocation.m_star
    n = n_from_m(t, p, m)
    violated = False
    try:
        snr_a = gamma_a(t, m)
    except ModelViolationError:
        snr_a, violated = math.inf, True
    try:
        snr_e = gamma_e(t, m)
    except ModelViolationError:
        snr_e, violated = math.inf, True
    if violated:
        logger.warning(f"Nonpositive SNR denominator at m={m:.6g}; scoring zero secrecy")
    r_s = 0.0 if violated else security_rate(snr_a, snr_e)

    return Solution(
        feasible=True,
        m_star=m,
        n_star=n,
        phi_a_star=phi_a,
        gamma_p=gamma_p(t, m, n, phi_a, suppression=suppression),
        gamma_a=snr_a,
        gamma_e=snr_e,
        r_s=r_s,
        iterations=1,
        case_label=allocation.case_label,
        candidates_evaluated=allocation.candidates_evaluated,
        objective_trace=[r_s],
        phi1=t.phi1,
    )


def solve(
    ch: ChannelSet,
    p: SystemParams,
    s: Strategy,
    delta: float = DEFAULT_DELTA,
    max_iter: int = DEFAULT_MAX_ITER,
) -> Solution:
    """Solve one scenario with a fresh AlternatingSolver."""
    return AlternatingSolver(delta=delta, max_iter=max_iter).solve(ch, p, s)
