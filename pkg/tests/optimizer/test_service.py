"""Tests for the alternating solver."""
import math

import pytest

from src.optimizer.models import CaseLabel, PhaseMode, Strategy
from src.optimizer.phase_control import phase_alignment
from src.optimizer.power_allocation import optimize_m
from src.optimizer.service import AlternatingSolver, solve
from src.snr_terms.models import SystemParams
from src.snr_terms.service import compute_terms


@pytest.fixture
def solver() -> AlternatingSolver:
    return AlternatingSolver()


class TestSolverConstruction:
    """Validation tests for AlternatingSolver."""

    def test_negative_delta_raises_value_error(self):
        with pytest.raises(ValueError, match="delta must be nonnegative"):
            AlternatingSolver(delta=-1.0)

    def test_zero_rounds_raises_value_error(self):
        with pytest.raises(ValueError, match="max_iter must be at least 1"):
            AlternatingSolver(max_iter=0)


class TestContinuousPhase:
    """Tests for PS with continuous phase control."""

    def test_single_round_at_full_alignment(self, solver, scenario, system_params):
        for trial in range(50):
            # Given: a random scenario
            ch = scenario(trial)

            # When: it is solved with continuous phase control
            solution = solver.solve(ch, system_params, Strategy.continuous())
            if not solution.feasible:
                continue

            # Then: one round, the forwarded attack copy is fully aligned,
            # the budget is spent and the threshold is met
            t = compute_terms(ch, system_params)
            assert solution.iterations == 1
            assert phase_alignment(t, solution.phi_a_star) == pytest.approx(1.0, abs=1e-12)
            spent = solution.m_star**2 + solution.n_star**2 * t.sigma2_n
            assert spent == pytest.approx(system_params.p_a, rel=1e-9)
            assert solution.gamma_p >= system_params.gamma_th_p * (1.0 - 1e-7)

    def test_unreachable_threshold_is_infeasible(self, solver, scenario):
        # Given: a primary SNR threshold no split can reach
        p = SystemParams(gamma_th_p=1e15)

        # When: the scenario is solved
        solution = solver.solve(scenario(0), p, Strategy.continuous())

        # Then: it is reported infeasible with zero secrecy
        assert not solution.feasible
        assert solution.r_s == 0.0
        assert solution.case_label == CaseLabel.INFEASIBLE


class TestStrategyOrdering:
    """Per-scenario ordering between strategies."""

    def test_suppression_never_loses_to_conventional_an(self, solver, scenario, system_params):
        for trial in range(300):
            ch = scenario(trial)
            ps = solver.solve(ch, system_params, Strategy.continuous())
            an = solver.solve(ch, system_params, Strategy.baseline())
            assert ps.r_s >= an.r_s - 1e-9, trial

    def test_finer_phase_grid_never_loses(self, solver, scenario, system_params):
        for trial in range(100):
            # Given: the nested grids π/2 ⊂ π/4
            ch = scenario(trial)

            # When: both are solved
            coarse = solver.solve(ch, system_params, Strategy.discrete(math.pi / 2))
            fine = solver.solve(ch, system_params, Strategy.discrete(math.pi / 4))

            # Then: the finer grid is at least as good
            assert fine.r_s >= coarse.r_s - 1e-9, trial

    def test_continuous_bounds_every_discrete_grid(self, solver, scenario, system_params):
        for trial in range(100):
            ch = scenario(trial)
            continuous = solver.solve(ch, system_params, Strategy.continuous())
            discrete = solver.solve(ch, system_params, Strategy.discrete(math.pi / 8))
            assert continuous.r_s >= discrete.r_s - 1e-9, trial


class TestDiscretePhase:
    """Tests for the alternating discrete-phase loop."""

    def test_full_turn_grid_matches_no_phase_control(self, solver, scenario, system_params):
        for trial in range(50):
            # Given: Δφ = 2π, whose only grid phase is 0
            ch = scenario(trial)

            # When: it is solved alongside phase_mode none
            discrete = solver.solve(ch, system_params, Strategy.discrete(2.0 * math.pi))
            held = solver.solve(ch, system_params, Strategy(phase_mode=PhaseMode.NONE))

            # Then: the operating points are identical
            assert discrete.feasible == held.feasible
            assert discrete.r_s == held.r_s
            assert discrete.m_star == held.m_star
            assert discrete.phi_a_star == held.phi_a_star == 0.0

    def test_objective_trace_is_nondecreasing(self, scenario, system_params):
        solver = AlternatingSolver(delta=0.0, max_iter=5)
        for trial in range(50):
            solution = solver.solve(scenario(trial), system_params, Strategy.discrete(math.pi / 8))
            if not solution.feasible:
                continue
            trace = solution.objective_trace
            assert all(b >= a for a, b in zip(trace, trace[1:]))
            assert 1 <= len(trace) <= 5
            assert solution.iterations == len(trace)
            assert solution.r_s == trace[-1]

    def test_chosen_phase_lies_on_the_grid(self, solver, scenario, system_params):
        step = math.pi / 4
        for trial in range(20):
            solution = solver.solve(scenario(trial), system_params, Strategy.discrete(step))
            if solution.feasible:
                k = solution.phi_a_star / step
                assert k == pytest.approx(round(k), abs=1e-9)


class TestFixedAndBaseline:
    """Tests for held phases and the AN baseline."""

    def test_fixed_phase_is_reported_wrapped(self, solver, scenario, system_params):
        solution = solver.solve(scenario(0), system_params, Strategy.fixed(-math.pi / 2))
        if solution.feasible:
            assert solution.phi_a_star == pytest.approx(1.5 * math.pi)

    def test_baseline_uses_no_pseudo_decoding_and_no_cross_term(self, solver, scenario, system_params):
        for trial in range(20):
            # Given: a random scenario
            ch = scenario(trial)

            # When: the AN baseline is solved and compared with a manual θ = 0 split
            solution = solver.solve(ch, system_params, Strategy.baseline())
            t = compute_terms(ch, system_params.model_copy(update={"theta": 0.0}))
            allocation = optimize_m(t, system_params, 0.0)

            # Then: both agree and the controller phase stays at 0
            assert solution.feasible == allocation.feasible
            if solution.feasible:
                assert solution.m_star == allocation.m_star
                assert solution.phi_a_star == 0.0

    def test_module_solve_matches_solver(self, solver, scenario, system_params):
        ch = scenario(3)
        strategy = Strategy.discrete(math.pi / 8)
        assert solve(ch, system_params, strategy) == solver.solve(ch, system_params, strategy)
