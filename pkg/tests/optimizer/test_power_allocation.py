"""Tests for the feasible region and power split."""
import math

import numpy as np
import pytest

from src.optimizer.models import CaseLabel
from src.optimizer.power_allocation import (
    derived_coefficients,
    feasible_m_interval,
    m_from_n,
    n_from_m,
    optimize_m,
    printed_coefficients,
    secrecy_objective,
    stationary_candidates,
)
from src.snr_terms.models import SnrTerms, SystemParams
from src.snr_terms.service import compute_terms, gamma_p_aligned


def crafted_terms(**overrides) -> SnrTerms:
    """Terms whose objective rises then falls on u = m² ∈ [0, 2]."""
    values = dict(
        t2=1.0, u2=0.0, v2=0.0, j2=0.0, g2=1.0, phi1=0.0,
        m_hat=1.0, q_hat=4.0, l_term=1.0, r_term=0.0,
        a_hat=0.0, b_hat=1.0, c_den=1.0, d_den=-0.4, sigma2_n=1.0,
    )
    values.update(overrides)
    return SnrTerms(**values)


# Interior maximum of (2 + 4u)(1 − 0.4u)/(1 + 0.6u): root of 0.96u² + 3.2u − 2.
INTERIOR_U = (-3.2 + math.sqrt(3.2**2 + 4 * 0.96 * 2.0)) / (2 * 0.96)


def local_extrema(t: SnrTerms, upper: float, points: int = 100_000) -> list[float]:
    grid = np.linspace(0.0, upper, points)
    values = np.array([secrecy_objective(t, float(m)) for m in grid])
    diffs = np.diff(values)
    # steps within rounding of the objective carry no sign
    tolerance = 1e-11 * float(np.max(np.abs(values)))
    extrema = []
    last_sign, last_index = 0.0, 0
    for i, step in enumerate(diffs):
        if abs(step) <= tolerance:
            continue
        sign = float(np.sign(step))
        if last_sign != 0.0 and sign != last_sign:
            # the turn lies between grid[last_index + 1] and grid[i]
            extrema.append(float(grid[(last_index + 1 + i) // 2]))
        last_sign, last_index = sign, i
    return extrema


class TestBudgetMaps:
    """Tests for m_from_n and n_from_m."""

    def test_maps_invert_each_other(self, scenario, system_params):
        t = compute_terms(scenario(0), system_params)
        n = n_from_m(t, system_params, 0.5)
        assert m_from_n(t, system_params, n) == pytest.approx(0.5, rel=1e-12)

    def test_power_budget_is_spent(self, scenario, system_params):
        t = compute_terms(scenario(0), system_params)
        n = n_from_m(t, system_params, 0.7)
        assert 0.7**2 + n * n * t.sigma2_n == pytest.approx(system_params.p_a, rel=1e-12)

    def test_without_noise_variance_there_is_no_an(self):
        assert n_from_m(crafted_terms(sigma2_n=0.0), SystemParams(), 0.5) == 0.0


class TestFeasibleInterval:
    """Tests for feasible_m_interval."""

    def test_zero_threshold_admits_the_whole_simplex(self, scenario):
        # Given: γ_th = 0
        p = SystemParams(gamma_th_p=0.0)
        t = compute_terms(scenario(0), p)

        # When: the interval is computed
        interval = feasible_m_interval(t, p, 1.0)

        # Then: it is [0, √P_A]
        assert interval is not None
        assert interval.lo == pytest.approx(0.0, abs=1e-6)
        assert interval.hi == pytest.approx(math.sqrt(p.p_a), rel=1e-12)

    def test_positive_constant_without_suppression_is_infeasible(self):
        # Given: P_A·T² < γ_th(U² + G²) and U·V·phi <= 0
        t = crafted_terms(t2=1.0, u2=1.0, v2=1.0, g2=1.0)
        p = SystemParams(p_a=1.0, gamma_th_p=10.0)

        # When/Then: no amplitude is feasible
        assert feasible_m_interval(t, p, -1.0) is None
        assert feasible_m_interval(t, p, 0.0) is None

    def test_alignment_outside_unit_range_raises_value_error(self):
        with pytest.raises(ValueError, match=r"Phase alignment must lie in \[-1, 1\]"):
            feasible_m_interval(crafted_terms(), SystemParams(), 1.5)

    def test_without_noise_variance_only_full_data_power(self):
        t = crafted_terms(sigma2_n=0.0)
        interval = feasible_m_interval(t, SystemParams(p_a=2.0, gamma_th_p=0.5), 1.0)
        assert interval is not None
        assert interval.lo == interval.hi == math.sqrt(2.0)

    def test_every_sampled_amplitude_meets_threshold(self, scenario, system_params):
        # Given: feasible default scenarios
        found = 0
        for trial in range(200):
            t = compute_terms(scenario(trial), system_params)
            interval = feasible_m_interval(t, system_params, 1.0)
            if interval is None:
                continue
            found += 1

            # When: 10^3 amplitudes across the interval are checked
            for m in np.linspace(interval.lo, interval.hi, 1000):
                n = n_from_m(t, system_params, float(m))

                # Then: each meets the primary SNR threshold
                snr = gamma_p_aligned(t, float(m), n, 1.0)
                assert snr >= system_params.gamma_th_p * (1.0 - 1e-7)
            if found >= 20:
                break
        assert found > 0

    def test_interval_grows_with_alignment(self, scenario, system_params):
        # Given: alignments φ <= φ′
        alignments = [-1.0, -0.5, 0.0, 0.5, 1.0]
        for trial in range(50):
            t = compute_terms(scenario(trial), system_params)
            intervals = [feasible_m_interval(t, system_params, phi) for phi in alignments]

            # Then: each interval is contained in the next
            for smaller, larger in zip(intervals, intervals[1:]):
                if smaller is None:
                    continue
                assert larger is not None
                assert larger.lo <= smaller.lo + 1e-9
                assert smaller.hi <= larger.hi + 1e-9


class TestStationaryCandidates:
    """Tests for stationary_candidates."""

    def test_interior_maximum_is_found(self):
        # Given: an objective with a single interior maximum
        t = crafted_terms()

        # When: candidates are computed on [0, √2]
        candidates = stationary_candidates(t, m_max=math.sqrt(2.0))

        # Then: the verified set is exactly that maximum
        assert candidates.values == pytest.approx([math.sqrt(INTERIOR_U)], abs=1e-9)
        assert not candidates.degenerate

    def test_derived_coefficients_match_hand_expansion(self):
        # Given: the crafted terms, whose derivative numerator is −0.96u² − 3.2u + 2
        k2, k1, k0 = derived_coefficients(crafted_terms())
        assert (k2, k1, k0) == pytest.approx((-0.96, -3.2, 2.0))

    def test_candidates_match_dense_scan_extrema(self, scenario, system_params):
        for trial in range(10):
            # Given: a random scenario
            t = compute_terms(scenario(trial), system_params)
            upper = math.sqrt(system_params.p_a)

            # When: both the candidates and a dense scan are computed
            candidates = stationary_candidates(t, m_max=upper).values
            scanned = local_extrema(t, upper)

            # Then: every scanned extremum has a matching candidate
            for m in scanned:
                assert any(abs(m - c) <= 1e-4 for c in candidates), (trial, m, candidates)

    def test_monotone_objective_has_no_candidates(self):
        # Given: Q·R = 0 and B̂ = D = 0, so f is monotone in m²
        t = crafted_terms(q_hat=1.0, r_term=0.0, a_hat=1.0, b_hat=0.0, d_den=0.0)

        # When/Then: no stationary point exists
        assert stationary_candidates(t).values == []

    def test_constant_objective_is_degenerate(self):
        # Given: Q = R = B = D = 0
        t = crafted_terms(q_hat=0.0, r_term=0.0, b_hat=0.0, d_den=0.0)

        # When: candidates are computed
        candidates = stationary_candidates(t)

        # Then: the list is empty and flagged degenerate
        assert candidates.values == []
        assert candidates.degenerate

    def test_candidates_above_budget_are_discarded(self):
        candidates = stationary_candidates(crafted_terms(), m_max=0.5)
        assert candidates.values == []

    def test_printed_coefficients_are_reported(self):
        t = crafted_terms()
        assert stationary_candidates(t).printed == printed_coefficients(t)


class TestOptimizeM:
    """Tests for optimize_m."""

    def test_interior_maximum_found_only_by_exact_derivative(self):
        # Given: an objective whose single interior maximum the printed
        # quadratic misses in both readings
        t = crafted_terms()
        p = SystemParams(p_a=2.0, gamma_th_p=0.0)

        # When: the amplitude is optimised
        allocation = optimize_m(t, p, 1.0)

        # Then: the interior point still wins but no shape case is claimed
        assert allocation.feasible
        assert allocation.m_star == pytest.approx(math.sqrt(INTERIOR_U), abs=1e-9)
        assert allocation.case_label == CaseLabel.BOUNDARY_ONLY
        assert allocation.objective == pytest.approx(secrecy_objective(t, allocation.m_star))
        candidates = stationary_candidates(t, m_max=math.sqrt(2.0))
        assert candidates.printed_values == []
        assert candidates.values == pytest.approx([math.sqrt(INTERIOR_U)], abs=1e-9)

    def test_rising_objective_picks_full_data_power(self):
        t = crafted_terms(q_hat=1.0, r_term=0.0, a_hat=1.0, b_hat=0.0, d_den=0.0)
        allocation = optimize_m(t, SystemParams(p_a=2.0, gamma_th_p=0.0), 1.0)
        assert allocation.m_star == pytest.approx(math.sqrt(2.0))
        assert allocation.case_label == CaseLabel.CASE1

    def test_falling_objective_picks_least_data_power(self):
        # Given: f = 2/(1 + m²), printed quadratic (0, 0, −2)
        t = crafted_terms(q_hat=0.0, r_term=0.0, a_hat=0.0, b_hat=1.0, d_den=0.0)
        assert printed_coefficients(t) == (0.0, 0.0, -2.0)

        # When: the amplitude is optimised
        allocation = optimize_m(t, SystemParams(p_a=2.0, gamma_th_p=0.0), 1.0)

        # Then: the lower end wins under Case2
        assert allocation.m_star == allocation.interval.lo
        assert allocation.case_label == CaseLabel.CASE2

    def test_printed_quadratic_with_real_roots_and_negative_lead(self):
        # Given: M = L and Q = R, so L·Q = M·R and the printed quadratic
        # −u²/16 + u/2 − 1 equals the exact derivative numerator
        # (double root at u = 4, outside the budget)
        t = crafted_terms(m_hat=0.0, q_hat=0.0, r_term=-0.25, b_hat=1.0, d_den=-0.5)
        assert printed_coefficients(t) == (-0.0625, 0.5, -1.0)
        assert derived_coefficients(t) == (-0.0625, 0.5, -1.0)

        # When: the amplitude is optimised
        allocation = optimize_m(t, SystemParams(p_a=2.0, gamma_th_p=0.0), 1.0)

        # Then: Case4 is reported and the falling objective ends at m_c1
        assert allocation.case_label == CaseLabel.CASE4
        assert allocation.m_star == allocation.interval.lo

    def test_case_labels_require_printed_roots_to_match(self, scenario, system_params):
        upper = math.sqrt(system_params.p_a)
        for trial in range(100):
            # Given: a random scenario at full alignment
            t = compute_terms(scenario(trial), system_params)
            allocation = optimize_m(t, system_params, 1.0)
            if not allocation.feasible or allocation.interval.is_degenerate:
                continue
            candidates = stationary_candidates(t, m_max=upper)
            matches = candidates.printed_values == pytest.approx(candidates.values, abs=1e-6)

            # Then: a shape case is claimed only when the printed roots
            # reproduce every verified extremum
            if allocation.case_label != CaseLabel.BOUNDARY_ONLY:
                assert matches, trial
            if not matches:
                assert allocation.case_label == CaseLabel.BOUNDARY_ONLY, trial

    def test_constant_objective_ties_go_to_smaller_amplitude(self):
        # Given: a constant objective
        t = crafted_terms(q_hat=0.0, r_term=0.0, b_hat=0.0, d_den=0.0)

        # When: the amplitude is optimised
        allocation = optimize_m(t, SystemParams(p_a=2.0, gamma_th_p=0.0), 1.0)

        # Then: the lower end (more AN power) wins
        assert allocation.m_star == allocation.interval.lo
        assert allocation.case_label == CaseLabel.BOUNDARY_ONLY

    def test_infeasible_threshold(self, scenario):
        p = SystemParams(gamma_th_p=1e15)
        allocation = optimize_m(compute_terms(scenario(0), p), p, 1.0)
        assert not allocation.feasible
        assert allocation.case_label == CaseLabel.INFEASIBLE

    def test_optimum_beats_dense_scan_of_interval(self, scenario, system_params):
        for trial in range(20):
            t = compute_terms(scenario(trial), system_params)
            allocation = optimize_m(t, system_params, 1.0)
            if not allocation.feasible:
                continue
            interval = allocation.interval
            scan = max(secrecy_objective(t, float(m)) for m in np.linspace(interval.lo, interval.hi, 5000))
            assert allocation.objective >= scan * (1.0 - 1e-9)
