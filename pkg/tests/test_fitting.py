import math
import unittest

import numpy as np

from tests.fixtures import torus_arc_rows, tube_rows
from vesselforge.errors import ConfigError, FitError, SingularSystemError
from vesselforge.fitting import (
    Criterion,
    EndConstraint,
    FitConfig,
    FitResult,
    PenalizedSystem,
    Strategy,
    aic_control_count,
    criterion_value,
    fit_vessel,
    penalty_matrix,
    rmse_control_count,
    roughness,
    select_lambda,
    solve_constrained,
    solve_penalized,
)
from vesselforge.fitting.criteria import score
from vesselforge.fitting.strategies import strategy_manager
from vesselforge.spline import chord_length_parametrize


def noisy(rows: np.ndarray, sigma: float = 0.02, seed: int = 0) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return rows + rng.normal(0.0, sigma, rows.shape)


class TestPenalty(unittest.TestCase):
    @classmethod
    def setUpClass(self):
        print("\n** Testing Fitting Penalty **")

    def test_penalty_matrix(self):
        # Test symmetry and the linear null space
        delta = penalty_matrix(6)
        np.testing.assert_allclose(delta, delta.T)
        np.testing.assert_allclose(delta @ np.arange(6.0), 0.0, atol=1e-12)
        np.testing.assert_allclose(delta @ np.ones(6), 0.0, atol=1e-12)
        with self.assertRaises(FitError):
            penalty_matrix(2)

    def test_roughness(self):
        # Test squared second differences
        self.assertEqual(roughness(np.arange(5.0)[:, None]), 0.0)
        self.assertEqual(roughness(np.array([[0.0], [1.0], [0.0]])), 4.0)

    def test_underdetermined(self):
        # Test lambda = 0 with fewer points than control points
        data = tube_rows(length=2.0, spacing=0.5)
        t = chord_length_parametrize(data)
        with self.assertRaises(SingularSystemError):
            solve_penalized(data, t, 8, 0.0)
        # the penalty regularizes the same system
        self.assertEqual(solve_penalized(data, t, 8, 1.0).shape, (8, 4))

    def test_smoothing_limits(self):
        # Test a huge lambda flattens the control polygon
        data = noisy(torus_arc_rows())
        t = chord_length_parametrize(data)
        rough = solve_penalized(data, t, 12, 1e-6)
        smooth = solve_penalized(data, t, 12, 1e8)
        self.assertLess(roughness(smooth), 1e-3 * roughness(rough))

    def test_trace(self):
        # Test the effective degrees of freedom drop from n towards 2
        data = noisy(torus_arc_rows())
        system = PenalizedSystem(data, chord_length_parametrize(data), 10)
        self.assertAlmostEqual(system.trace(0.0), 10.0)
        self.assertLess(system.trace(1e9), 2.01)
        self.assertAlmostEqual(float(np.sum(system.hat_diagonal(1.0))), system.trace(1.0), places=8)

    def test_constrained(self):
        # Test end points and tangent directions are met exactly
        data = noisy(torus_arc_rows())
        system = PenalizedSystem(data, chord_length_parametrize(data), 10)
        start = EndConstraint(np.array([10.0, 0.0, 0.0, 1.0]), np.array([0.0, 1.0, 0.0, 0.0]))
        end = EndConstraint(np.array([0.0, 10.0, 0.0, 1.0]), np.array([-1.0, 0.0, 0.0, 0.0]))
        control, alpha, beta = solve_constrained(system, 1e-3, (start, end))
        np.testing.assert_allclose(control[0], start.point)
        np.testing.assert_allclose(control[-1], end.point)
        np.testing.assert_allclose(control[1] - control[0], alpha * start.tangent, atol=1e-12)
        np.testing.assert_allclose(control[-1] - control[-2], beta * end.tangent, atol=1e-12)
        self.assertGreater(alpha, 0.0)
        self.assertGreater(beta, 0.0)

    def test_constraint_validation(self):
        # Test zero tangents are rejected
        with self.assertRaises(FitError):
            EndConstraint(np.zeros(4), np.zeros(4))


class TestCriteria(unittest.TestCase):
    @classmethod
    def setUpClass(self):
        print("\n** Testing Fitting Criteria **")

    def test_score_formulas(self):
        # Test the closed forms of each criterion
        m, sse, trace = 50, 2.0, 6.0
        base = m * math.log(sse / m)
        self.assertAlmostEqual(score("AIC", sse, trace, m), base + 2 * trace)
        self.assertAlmostEqual(score("BIC", sse, trace, m), base + math.log(m) * trace)
        self.assertAlmostEqual(score("AICc", sse, trace, m), base + 2 * trace + 2 * trace * (trace + 1) / (m - trace - 1))
        self.assertAlmostEqual(score("GCV", sse, trace, m), m * sse / (m - trace) ** 2)

    def test_degenerate(self):
        # Test an exact fit is flagged instead of raising
        value = score(Criterion.AIC, 0.0, 4.0, 10)
        self.assertTrue(value.degenerate)
        self.assertEqual(float(value), -math.inf)

    def test_criterion_value(self):
        # Test every criterion is finite on noisy data
        data = noisy(torus_arc_rows())
        t = chord_length_parametrize(data)
        for kind in Criterion:
            value = criterion_value(kind, data, t, 10, 1.0)
            self.assertTrue(math.isfinite(value), kind)
            self.assertFalse(value.degenerate)

    def test_select_lambda(self):
        # Test the selection stays in the grid range and records a trace
        data = noisy(torus_arc_rows())
        system = PenalizedSystem(data, chord_length_parametrize(data), 20)
        grid = np.logspace(-6, 6, 13)
        lam, value, trace = select_lambda(system, "AIC", grid, refine=False)
        self.assertIn(lam, grid.tolist())
        self.assertEqual(len(trace), 13)
        self.assertEqual(float(value), min(v for _, v in trace))
        refined, refined_value, _ = select_lambda(system, "AIC", grid, refine=True)
        self.assertLessEqual(float(refined_value), float(value))
        self.assertTrue(grid[0] <= refined <= grid[-1])


class TestControlCount(unittest.TestCase):
    @classmethod
    def setUpClass(self):
        print("\n** Testing Fitting ControlCount **")

    def test_rmse_count_straight(self):
        # Test a straight tube needs the minimum count
        data = tube_rows()
        t = chord_length_parametrize(data)
        self.assertEqual(rmse_control_count(data, t, 0.1, 1e-3, 200), 4)

    def test_rmse_count_grows(self):
        # Test tighter thresholds need more control points
        data = torus_arc_rows(angle=np.pi, count=80)
        t = chord_length_parametrize(data)
        loose = rmse_control_count(data, t, 0.1, 1e-3, 200)
        tight = rmse_control_count(data, t, 1e-4, 1e-3, 200)
        self.assertGreater(tight, loose)

    def test_rmse_count_unreachable(self):
        # Test an unreachable threshold falls back to a solvable count
        data = noisy(tube_rows(length=10.0))
        t = chord_length_parametrize(data)
        n = rmse_control_count(data, t, 1e-9, 1e-9, 200)
        self.assertTrue(4 <= n <= len(data))
        self.assertEqual(solve_penalized(data, t, n, 0.0).shape, (n, 4))

    def test_aic_count_range(self):
        # Test the AIC count stays admissible
        data = noisy(torus_arc_rows())
        n = aic_control_count(data, chord_length_parametrize(data), 200)
        self.assertTrue(4 <= n <= len(data) - 1)


class TestFitVessel(unittest.TestCase):
    @classmethod
    def setUpClass(self):
        print("\n** Testing Fitting FitVessel **")

    def test_strategies(self):
        # Test every strategy follows a noisy arc and the smoothed ones keep its shape
        truth = torus_arc_rows()
        data = noisy(truth, sigma=0.01)
        errors = {}
        for strategy in Strategy:
            result = fit_vessel(data, FitConfig(strategy=strategy))
            self.assertEqual(result.strategy, strategy.value)
            self.assertGreaterEqual(result.n_control, 4)
            self.assertLess(result.rmse_spatial, 0.1, strategy)
            errors[strategy] = abs(result.spline.length - np.pi * 5.0)
            if strategy is not Strategy.GNP:
                # the unpenalized radius threshold drives GNP towards interpolating the noise
                self.assertLess(errors[strategy], 0.2, strategy)
                np.testing.assert_allclose(result.spline.radius(0.5), 1.0, atol=0.05)
        self.assertGreaterEqual(errors[Strategy.GNP], errors[Strategy.SRP_AIC])

    def test_separate_radius(self):
        # Test the split strategy records its own radius fit
        data = noisy(torus_arc_rows(), sigma=0.01)
        result = fit_vessel(data, FitConfig(strategy="SRP_AIC"))
        self.assertIsNotNone(result.n_control_radius)
        self.assertGreater(result.lambda_radius, 0.0)

    def test_constraints(self):
        # Test constrained fits honour both ends
        data = noisy(torus_arc_rows(), sigma=0.01)
        start = EndConstraint(np.array([10.0, 0.0, 0.0, 1.0]), np.array([0.0, 1.0, 0.0, 0.0]))
        end = EndConstraint(np.array([0.0, 10.0, 0.0, 1.0]), np.array([-1.0, 0.0, 0.0, 0.0]))
        for strategy in Strategy:
            spline = fit_vessel(data, FitConfig(strategy=strategy), (start, end)).spline
            np.testing.assert_allclose(spline(0.0), start.point, atol=1e-9)
            np.testing.assert_allclose(spline(1.0), end.point, atol=1e-9)
            np.testing.assert_allclose(spline.tangent(0.0), [0.0, 1.0, 0.0], atol=1e-6)
            np.testing.assert_allclose(spline.tangent(1.0), [-1.0, 0.0, 0.0], atol=1e-6)

    def test_too_few_points(self):
        # Test the minimum sample count
        with self.assertRaises(FitError):
            fit_vessel(tube_rows(length=1.0, spacing=0.5))
        with self.assertRaises(FitError):
            fit_vessel(np.zeros((10, 3)))

    def test_result_dict(self):
        # Test the result survives dict conversion
        result = fit_vessel(tube_rows(), FitConfig(strategy="GNP"))
        again = FitResult.from_dict(result.to_dict())
        self.assertEqual(again.spline, result.spline)
        self.assertEqual(again.strategy, "GNP")

    def test_config_validation(self):
        # Test invalid options
        with self.assertRaises(ConfigError):
            FitConfig(strategy="SPLINE")
        with self.assertRaises(ConfigError):
            FitConfig(criterion="HQ")
        with self.assertRaises(ConfigError):
            FitConfig(lambda_grid=())
        with self.assertRaises(ConfigError):
            strategy_manager.get_strategy("SPLINE", FitConfig())
        self.assertEqual(FitConfig().replace(strategy="GNP").strategy, Strategy.GNP)


if __name__ == "__main__":
    unittest.main()
