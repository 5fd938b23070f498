"""Exhaustive search over the data amplitude and controller phase grids."""
import math

import numpy as np

from src.channel.models import ChannelSet
from src.optimizer.models import CaseLabel, PhaseMode, Scheme, Solution, Strategy
from src.oracle.models import GridSpec
from src.oracle.phasor import phasor_snr
from src.snr_terms.models import SystemParams

_BISECTION_STEPS = 60


def _phase_grid(strategy: Strategy, g: GridSpec) -> np.ndarray:
    if strategy.scheme == Scheme.AN or strategy.phase_mode == PhaseMode.NONE:
        return np.zeros(1)
    if strategy.phase_mode == PhaseMode.FIXED:
        return np.array([strategy.fixed_phase % (2.0 * math.pi)])
    if strategy.phase_mode == PhaseMode.DISCRETE:
        count = max(1, math.ceil(2.0 * math.pi / strategy.delta_phi - 1e-9))
        return np.arange(count) * strategy.delta_phi
    return np.arange(g.phase_points) * (2.0 * math.pi / g.phase_points)


def _margin(gamma_a: np.ndarray, gamma_e: np.ndarray) -> np.ndarray:
    """log2(1 + γ_A) − log2(1 + γ_E); −inf where either SNR is unbounded."""
    finite = np.isfinite(gamma_a) & np.isfinite(gamma_e)
    with np.errstate(invalid="ignore"):
        margin = np.log2(1.0 + gamma_a) - np.log2(1.0 + gamma_e)
    return np.where(finite, margin, -np.inf)


class GridSearchSolver:
    """
    Brute-force reference solver.

    Scores every (m, φ_A) grid point with the phasor SNRs, keeps points
    meeting the primary SNR threshold, and returns the best one; ties go to
    the smaller m, then the smaller phase. The AN amount follows the power
    budget, n = √((P_A − m²)/σ²_N).

    Example Usage:
        oracle = GridSearchSolver(GridSpec(m_points=2_000, phase_points=360))
        reference = oracle.solve(ch, SystemParams(), Strategy.continuous())
    """

    def __init__(self, grid: GridSpec | None = None):
        """
        Initialize the oracle.

        Args:
            grid: Search resolution (defaults to GridSpec())
        """
        self.grid = grid or GridSpec()

    def solve(self, ch: ChannelSet, p: SystemParams, strategy: Strategy) -> Solution:
        """Search the grid for the best feasible operating point."""
        return grid_search(ch, p, strategy, self.grid)


def grid_search(ch: ChannelSet, p: SystemParams, s: Strategy, g: GridSpec) -> Solution:
    """
    Exhaustively evaluate the secrecy rate over the m grid × phase grid.

    Args:
        ch: Channel block
        p: System parameters
        s: Strategy (selects the phase grid and the AN model)
        g: Grid resolution

    Returns:
        Best grid Solution, or an infeasible Solution when no grid point
        meets the primary SNR threshold
    """
    baseline = s.scheme == Scheme.AN
    params = p.model_copy(update={"theta": 0.0}) if baseline else p
    coherent = not baseline
    noise_power = ch.h_ea.magnitude**2 * params.p_e + params.sigma2_a

    if noise_power > 0.0:
        m_grid = np.linspace(0.0, math.sqrt(params.p_a), g.m_points)
    else:
        m_grid = np.array([math.sqrt(params.p_a)])

    def amplitudes(m: np.ndarray) -> np.ndarray:
        if noise_power <= 0.0:
            return np.zeros_like(m)
        return np.sqrt(np.maximum(params.p_a - m**2, 0.0) / noise_power)

    def feasible(m, phase) -> np.ndarray:
        gp, _, _ = phasor_snr(ch, params, m, amplitudes(np.asarray(m)), phase, coherent_suppression=coherent)
        return np.asarray(gp) >= params.gamma_th_p

    n_grid = amplitudes(m_grid)
    _, gamma_a, gamma_e = phasor_snr(ch, params, m_grid, n_grid, 0.0, coherent_suppression=coherent)
    margin = _margin(np.asarray(gamma_a), np.asarray(gamma_e))

    best: tuple[float, float, float] | None = None  # (margin, m, phase)
    for phase in _phase_grid(s, g):
        gamma_p, _, _ = phasor_snr(ch, params, m_grid, n_grid, phase, coherent_suppression=coherent)
        mask = np.asarray(gamma_p) >= params.gamma_th_p

        points: list[tuple[float, float]] = []
        indices = np.flatnonzero(mask)
        if indices.size:
            j = indices[np.argmax(margin[indices])]
            points.append((float(margin[j]), float(m_grid[j])))

        if g.clamp_to_feasible and m_grid.size > 1:
            for i in np.flatnonzero(mask[:-1] != mask[1:]):
                lo, hi = float(m_grid[i]), float(m_grid[i + 1])
                good, bad = (lo, hi) if mask[i] else (hi, lo)
                for _ in range(_BISECTION_STEPS):
                    mid = 0.5 * (good + bad)
                    if feasible(mid, phase):
                        good = mid
                    else:
                        bad = mid
                _, ga, ge = phasor_snr(ch, params, good, amplitudes(np.asarray(good)), phase, coherent_suppression=coherent)
                points.append((float(_margin(np.asarray(ga), np.asarray(ge))), good))

        for score, m in points:
            candidate = (score, m, float(phase))
            if best is None or score > best[0] or (score == best[0] and (m, phase) < (best[1], best[2])):
                best = candidate

    if best is None:
        return Solution.infeasible()

    score, m_star, phi_star = best
    n_star = float(amplitudes(np.asarray(m_star)))
    gp, ga, ge = phasor_snr(ch, params, m_star, n_star, phi_star, coherent_suppression=coherent)
    return Solution(
        feasible=True,
        m_star=m_star,
        n_star=n_star,
        phi_a_star=phi_star,
        gamma_p=gp,
        gamma_a=ga,
        gamma_e=ge,
        r_s=max(0.0, score) if math.isfinite(score) else 0.0,
        iterations=1,
        case_label=CaseLabel.GRID_SEARCH,
        objective_trace=[max(0.0, score) if math.isfinite(score) else 0.0],
    )
