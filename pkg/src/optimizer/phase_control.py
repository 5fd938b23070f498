"""Controller phase selection for forward noise suppression."""
import math

from src.channel.models import wrap_phase
from src.optimizer.models import TWO_PI
from src.snr_terms.models import SnrTerms


def phase_alignment(t: SnrTerms, phi_a: float) -> float:
    """cos(φ_A + φ₁), the weight of the suppression cross term."""
    return math.cos(phi_a + t.phi1)


def optimal_phase_continuous(t: SnrTerms) -> float:
    """Phase φ_A = −φ₁ that fully aligns the forwarded attack copy, in [0, 2π)."""
    return wrap_phase(-t.phi1)


def discrete_grid(delta_phi: float) -> list[float]:
    """
    Available phases {k·Δφ : k·Δφ < 2π}.

    Raises:
        ValueError: If delta_phi lies outside (0, 2π]
    """
    if not 0.0 < delta_phi <= TWO_PI:
        raise ValueError(f"delta_phi must lie in (0, 2π], got {delta_phi}")
    grid = [0.0]
    k = 1
    while k * delta_phi < TWO_PI - 1e-9:
        grid.append(k * delta_phi)
        k += 1
    return grid


def _primary_denominator(t: SnrTerms, n: float, phi_a: float) -> float:
    return (t.u2 + t.g2) + n * n * (t.v2 + t.j2) - 2.0 * n * t.u * t.v * phase_alignment(t, phi_a)


def optimal_phase_discrete(t: SnrTerms, delta_phi: float, m: float, n: float) -> float:
    """
    Best grid phase at a fixed power split.

    Only the two grid neighbours of −φ₁ can minimise the primary-SNR
    denominator; the smaller denominator wins and ties go to the smaller
    angle. ``m`` does not enter the comparison but is kept so callers pass
    the full operating point.

    Args:
        t: Closed-form terms
        delta_phi: Grid step in (0, 2π]
        m: Data amplitude
        n: AN amplitude

    Returns:
        Chosen grid phase in [0, 2π)
    """
    grid = discrete_grid(delta_phi)
    target = optimal_phase_continuous(t)

    k_lo = 0
    for k, angle in enumerate(grid):
        if angle <= target:
            k_lo = k
    lower = grid[k_lo]
    upper = grid[k_lo + 1] if k_lo + 1 < len(grid) else grid[0]

    if lower == upper:
        return lower
    den_lower = _primary_denominator(t, n, lower)
    den_upper = _primary_denominator(t, n, upper)
    if den_lower < den_upper:
        return lower
    if den_upper < den_lower:
        return upper
    return min(lower, upper)
