"""Feasible region and data/AN power split at a fixed phase alignment."""
import math

import numpy as np
from loguru import logger

from src.optimizer.models import CaseLabel, Interval, PowerAllocation, StationaryCandidates
from src.snr_terms.models import SnrTerms, SystemParams

# Centered finite-difference step relative to max(1, m).
_FD_STEP = 1e-6
_FD_TOLERANCE = 1e-6
_ROOT_IMAG_TOLERANCE = 1e-9
_SNAP_TOLERANCE = 1e-12


def m_from_n(t: SnrTerms, p: SystemParams, n: float) -> float:
    """Data amplitude left by the power budget: m = √(P_A − n²σ²_N)."""
    return math.sqrt(max(p.p_a - n * n * t.sigma2_n, 0.0))


def n_from_m(t: SnrTerms, p: SystemParams, m: float) -> float:
    """AN amplitude filling the rest of the budget: n = √((P_A − m²)/σ²_N)."""
    if t.sigma2_n <= 0.0:
        return 0.0
    return math.sqrt(max(p.p_a - m * m, 0.0) / t.sigma2_n)


def _nonpositive_set(qa: float, qb: float, qc: float, upper: float) -> tuple[float, float] | None:
    """Part of [0, upper] where qa·n² + qb·n + qc <= 0, assuming qa >= 0."""
    if qa > 0.0:
        disc = qb * qb - 4.0 * qa * qc
        if disc < 0.0:
            return None
        root = math.sqrt(disc)
        q = -0.5 * (qb + math.copysign(root, qb))
        if q == 0.0:
            lo = hi = 0.0
        else:
            lo, hi = sorted((q / qa, qc / q))
    elif qb == 0.0:
        if qc > 0.0:
            return None
        lo, hi = 0.0, upper
    elif qb > 0.0:
        lo, hi = 0.0, -qc / qb
    else:
        lo, hi = -qc / qb, upper

    lo = max(lo, 0.0)
    if hi >= upper * (1.0 - _SNAP_TOLERANCE):
        hi = upper
    if lo > hi:
        return None
    return lo, hi


def feasible_m_interval(t: SnrTerms, p: SystemParams, phi: float) -> Interval | None:
    """
    Data amplitudes meeting the primary SNR threshold under the power budget.

    Solves, in the AN amplitude n,
        n²[γ_th(V²+J²) + σ²_N·T²] − 2n·γ_th·U·V·phi + [γ_th(U²+G²) − P_A·T²] <= 0
    on 0 <= n <= √(P_A/σ²_N) and maps the n-interval to m = √(P_A − n²σ²_N).

    Args:
        t: Closed-form terms
        p: System parameters
        phi: Phase alignment cos(φ_A + φ₁), in [−1, 1]

    Returns:
        Interval [m_c1, m_c2], or None when no amplitude is feasible

    Raises:
        ValueError: If phi lies outside [−1, 1]
    """
    if not -1.0 <= phi <= 1.0:
        raise ValueError(f"Phase alignment must lie in [-1, 1], got {phi}")

    gamma_th = p.gamma_th_p
    qc = gamma_th * (t.u2 + t.g2) - p.p_a * t.t2

    if t.sigma2_n <= 0.0:
        # no AN is available: the whole budget goes to data
        return Interval(lo=math.sqrt(p.p_a), hi=math.sqrt(p.p_a)) if qc <= 0.0 else None

    qa = gamma_th * (t.v2 + t.j2) + t.sigma2_n * t.t2
    qb = -2.0 * gamma_th * t.u * t.v * phi
    n_max = math.sqrt(p.p_a / t.sigma2_n)

    n_range = _nonpositive_set(qa, qb, qc, n_max)
    if n_range is None:
        return None
    n_lo, n_hi = n_range
    return Interval(lo=m_from_n(t, p, n_hi), hi=m_from_n(t, p, n_lo))


def secrecy_objective(t: SnrTerms, m: float) -> float:
    """
    f(m) = [(M + Qm²)/(L + Rm²)]·[(C + Dm²)/(A + Bm²)] = (1 + γ_A)/(1 + γ_E).

    Returns 0 where a denominator is not positive (zero secrecy).
    """
    u = m * m
    access = t.l_term + t.r_term * u
    eaves = t.c_den + t.d_den * u
    if access <= 0.0 or eaves <= 0.0:
        return 0.0
    return (t.m_agg + t.q_agg * u) / access * eaves / (t.a_agg + t.b_agg * u)


def printed_coefficients(t: SnrTerms) -> tuple[float, float, float]:
    """Coefficients (a, b, c) of the stationary-point quadratic in published form."""
    M, Q, A, B = t.m_agg, t.q_agg, t.a_agg, t.b_agg
    L, R, C, D = t.l_term, t.r_term, t.c_den, t.d_den
    lq_mr = L * Q - M * R
    ad_bc = A * D - B * C
    a = ad_bc * Q * R + (B * D + D * D) * lq_mr
    b = 2.0 * ((A + C) * D * L * Q - (B + D) * C * M * R)
    c = A * C * lq_mr + ad_bc * L * M + C * C * lq_mr
    return a, b, c


def derived_coefficients(t: SnrTerms) -> tuple[float, float, float]:
    """Coefficients (k2, k1, k0) of the numerator of df/du, u = m²."""
    M, Q, A, B = t.m_agg, t.q_agg, t.a_agg, t.b_agg
    L, R, C, D = t.l_term, t.r_term, t.c_den, t.d_den
    ql_mr = Q * L - M * R
    da_bc = D * A - B * C
    k2 = ql_mr * D * B + da_bc * Q * R
    k1 = ql_mr * (C * B + D * A) + da_bc * (M * R + Q * L)
    k0 = ql_mr * C * A + da_bc * M * L
    return k2, k1, k0


def _real_roots(coefficients: tuple[float, float, float]) -> list[float]:
    roots = np.roots(coefficients)
    return [
        float(r.real)
        for r in roots
        if abs(r.imag) <= _ROOT_IMAG_TOLERANCE * max(1.0, abs(r.real))
    ]


def _is_stationary(t: SnrTerms, m: float) -> bool:
    h = _FD_STEP * max(1.0, m)
    slope = (secrecy_objective(t, m + h) - secrecy_objective(t, m - h)) / (2.0 * h)
    return abs(slope) <= _FD_TOLERANCE * (1.0 + abs(secrecy_objective(t, m)))


def _verify(t: SnrTerms, raw: list[float], m_max: float | None) -> list[float]:
    verified: list[float] = []
    for m in sorted(raw):
        if m_max is not None and m > m_max:
            continue
        if not _is_stationary(t, m):
            continue
        if verified and m - verified[-1] <= 1e-9 * max(1.0, m):
            continue
        verified.append(m)
    return verified


def stationary_candidates(t: SnrTerms, m_max: float | None = None) -> StationaryCandidates:
    """
    Stationary amplitudes of the secrecy objective f.

    Roots are collected from the published quadratic read in m, the same
    quadratic read in u = m², and the exact derivative numerator in u; each
    candidate must pass a centered finite-difference check
    |df/dm| <= 1e−6·(1 + |f|).

    Args:
        t: Closed-form terms
        m_max: Discard candidates above this amplitude (typically √P_A)

    Returns:
        StationaryCandidates with verified values sorted ascending
    """
    printed = printed_coefficients(t)
    derived = derived_coefficients(t)
    degenerate = all(k == 0.0 for k in derived)
    if degenerate:
        return StationaryCandidates(values=[], degenerate=True, printed=printed, derived=derived)

    printed_roots = _real_roots(printed)
    from_printed = [r for r in printed_roots if r >= 0.0]
    from_printed += [math.sqrt(u) for u in printed_roots if u >= 0.0]
    from_derived = [math.sqrt(u) for u in _real_roots(derived) if u >= 0.0]

    return StationaryCandidates(
        values=_verify(t, from_printed + from_derived, m_max),
        printed_values=_verify(t, from_printed, m_max),
        degenerate=False,
        printed=printed,
        derived=derived,
    )


def _printed_matches(candidates: StationaryCandidates) -> bool:
    """True when the printed quadratic alone recovers every verified extremum."""
    if len(candidates.printed_values) != len(candidates.values):
        return False
    return all(
        abs(a - b) <= 1e-6 * max(1.0, b)
        for a, b in zip(candidates.printed_values, candidates.values)
    )


def case_label(t: SnrTerms, candidates: StationaryCandidates, interval: Interval) -> CaseLabel:
    """
    Classify the objective by the sign and root reality of the printed quadratic.

    Falls back to BOUNDARY_ONLY when the objective is constant, when the
    printed roots do not reproduce the verified extrema, or when the sign
    they imply disagrees with the objective's direction on the interval.
    """
    if candidates.degenerate or not _printed_matches(candidates):
        return CaseLabel.BOUNDARY_ONLY

    a, b, c = candidates.printed
    if a != 0.0:
        has_real_roots = b * b - 4.0 * a * c >= 0.0
    else:
        has_real_roots = b != 0.0
    if has_real_roots:
        return CaseLabel.CASE3 if a > 0.0 else CaseLabel.CASE4

    # no real root: the quadratic keeps the sign of a (or of c when a = b = 0)
    sign = a if a != 0.0 else c
    if sign == 0.0:
        return CaseLabel.BOUNDARY_ONLY
    rising = secrecy_objective(t, interval.hi) >= secrecy_objective(t, interval.lo)
    if sign > 0.0 and rising:
        return CaseLabel.CASE1
    if sign < 0.0 and not rising:
        return CaseLabel.CASE2
    return CaseLabel.BOUNDARY_ONLY


def optimize_m(t: SnrTerms, p: SystemParams, phi: float) -> PowerAllocation:
    """
    Maximise the secrecy objective over the feasible amplitude interval.

    Evaluates f at the interval ends and at the stationary candidates
    strictly inside, keeping the first maximum in ascending m (ties go to
    the smaller data amplitude, i.e. more AN power).

    Args:
        t: Closed-form terms
        p: System parameters
        phi: Phase alignment cos(φ_A + φ₁)

    Returns:
        PowerAllocation with the optimum amplitude and case label
    """
    interval = feasible_m_interval(t, p, phi)
    if interval is None:
        return PowerAllocation(feasible=False, case_label=CaseLabel.INFEASIBLE)

    if interval.is_degenerate:
        return PowerAllocation(
            feasible=True,
            m_star=interval.lo,
            objective=secrecy_objective(t, interval.lo),
            case_label=CaseLabel.BOUNDARY_ONLY,
            interval=interval,
            candidates_evaluated=[interval.lo],
        )

    candidates = stationary_candidates(t, m_max=math.sqrt(p.p_a))
    inside = [m for m in candidates.values if interval.lo < m < interval.hi]
    points = [interval.lo, *inside, interval.hi]

    best_m, best_f = points[0], secrecy_objective(t, points[0])
    for m in points[1:]:
        value = secrecy_objective(t, m)
        if value > best_f:
            best_m, best_f = m, value

    label = case_label(t, candidates, interval)

    logger.debug(
        "m* = {} on [{}, {}], {} interior candidates, {}",
        best_m, interval.lo, interval.hi, len(inside), label.value,
    )
    return PowerAllocation(
        feasible=True,
        m_star=best_m,
        objective=best_f,
        case_label=label,
        interval=interval,
        candidates_evaluated=points,
    )
