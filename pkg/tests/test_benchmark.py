import json
import os
import unittest
from pathlib import Path

import numpy as np

from tests.fixtures import temp_dir
from vesselforge.benchmark import (
    GROUND_TRUTHS,
    METRIC_NAMES,
    BenchmarkGrid,
    DistortionSpec,
    NoiseMode,
    distort,
    ground_truth,
    matched_metrics,
    run_benchmark,
)
from vesselforge.benchmark.runner import run_seed, strategy_ordering
from vesselforge.errors import ConfigError
from vesselforge.fitting import FitConfig

SLOW = bool(os.environ.get("VESSELFORGE_SLOW"))


class TestGroundTruth(unittest.TestCase):
    @classmethod
    def setUpClass(self):
        print("\n** Testing Benchmark GroundTruth **")

    def test_truths(self):
        # Test the four regimes and their sizes
        self.assertEqual(sorted(GROUND_TRUTHS), ["helix", "s_curve", "tapered_tube", "torus_arc_bump"])
        tube = ground_truth("tapered_tube")
        self.assertAlmostEqual(tube.length, 40.0, delta=1e-3)
        np.testing.assert_allclose(tube(0.0), [0, 0, 0, 2.0], atol=1e-9)
        np.testing.assert_allclose(tube(1.0), [40, 0, 0, 1.2], atol=1e-9)
        self.assertAlmostEqual(ground_truth("torus_arc_bump").length, 0.75 * np.pi * 15.0, delta=1e-2)

    def test_unknown(self):
        # Test an unknown truth name
        with self.assertRaises(KeyError):
            ground_truth("spiral")


class TestDistortion(unittest.TestCase):
    @classmethod
    def setUpClass(self):
        print("\n** Testing Benchmark Distortion **")
        self.truth = ground_truth("tapered_tube")

    def test_validation(self):
        # Test only the selected noise channel may be set
        with self.assertRaises(ConfigError):
            DistortionSpec(4.0, 0.1, 0.1)
        with self.assertRaises(ConfigError):
            DistortionSpec(4.0, 0.0, 0.1, mode="radius_only")
        with self.assertRaises(ConfigError):
            DistortionSpec(0.0)
        with self.assertRaises(ConfigError):
            DistortionSpec(4.0, mode="both")
        self.assertIs(DistortionSpec(4.0, 0.0, 0.1, mode="spatial_only").mode, NoiseMode.SPATIAL_ONLY)

    def test_radius_only(self):
        # Test positions stay exact and the sample count follows the density
        points = distort(self.truth, DistortionSpec(4.0, 0.1, seed=3))
        self.assertEqual(len(points), 160)
        np.testing.assert_allclose(points[:, 1:3], 0.0, atol=1e-9)
        self.assertTrue(np.all(np.diff(points[:, 0]) > 0))
        self.assertGreater(np.std(points[:, 3] - (2.0 - 0.02 * points[:, 0])), 0.05)

    def test_spatial_only(self):
        # Test radii stay exact and offsets are normal to the axis
        points = distort(self.truth, DistortionSpec(4.0, 0.0, 0.1, seed=3, mode="spatial_only"))
        np.testing.assert_allclose(points[:, 3], 2.0 - 0.02 * np.linspace(0, 40, 160), atol=1e-6)
        clean = distort(self.truth, DistortionSpec(4.0, seed=3))
        np.testing.assert_allclose(points[:, 0], clean[:, 0], atol=1e-9)
        self.assertGreater(float(np.max(np.abs(points[:, 1:3]))), 0.0)

    def test_deterministic(self):
        # Test the same seed gives the same samples
        spec = DistortionSpec(10.0, 0.0, 0.3, seed=11, mode="spatial_only")
        np.testing.assert_array_equal(distort(self.truth, spec), distort(self.truth, spec))
        other = DistortionSpec(10.0, 0.0, 0.3, seed=12, mode="spatial_only")
        self.assertFalse(np.array_equal(distort(self.truth, spec), distort(self.truth, other)))

    def test_too_sparse(self):
        # Test a density leaving fewer than two points
        with self.assertRaises(ConfigError):
            distort(self.truth, DistortionSpec(0.01))


class TestMetrics(unittest.TestCase):
    @classmethod
    def setUpClass(self):
        print("\n** Testing Benchmark Metrics **")

    def test_identical(self):
        # Test a curve matched onto itself
        truth = ground_truth("s_curve")
        metrics = matched_metrics(truth, truth, samples=200)
        for name in METRIC_NAMES:
            self.assertLess(getattr(metrics, name), 1e-4, name)

    def test_offset(self):
        # Test a shifted radius shows in the radius error only
        truth = ground_truth("tapered_tube")
        shifted = type(truth)(truth.control_points + [0.0, 0.0, 0.0, 0.1])
        metrics = matched_metrics(truth, shifted, samples=200)
        self.assertAlmostEqual(metrics.RMSE_radius, 0.1, places=6)
        self.assertLess(metrics.RMSE_spatial, 1e-6)
        self.assertEqual(sorted(metrics.to_dict()), sorted(METRIC_NAMES))


class TestRunner(unittest.TestCase):
    @classmethod
    def setUpClass(self):
        print("\n** Testing Benchmark Runner **")
        self.grid = BenchmarkGrid(
            truths=("tapered_tube",),
            densities=(4.0,),
            coefficients=(0.05,),
            repeats=1,
            strategies=("GNP", "SRP_AIC"),
            criteria=("BIC",),
            seed=7,
        )
        self.result = run_benchmark(self.grid, FitConfig(refine_lambda=False))

    def test_datasets(self):
        # Test the factorial design and its seeds
        grid = BenchmarkGrid(truths=("helix", "s_curve"), densities=(2.0, 4.0), coefficients=(0.1,), repeats=2)
        datasets = grid.datasets()
        self.assertEqual(len(datasets), 2 * 2 * 2 * 1 * 2)
        self.assertEqual([d[0] for d in datasets], list(range(16)))
        self.assertEqual(len({d[2].seed for d in datasets}), 16)
        self.assertEqual(run_seed(0, 5), run_seed(0, 5))

    def test_table(self):
        # Test one row per fit, all successful
        table = self.result.table
        self.assertEqual(len(table), 2 * 3)
        self.assertEqual(set(table["status"]), {"ok"})
        self.assertEqual(set(table["study"]), {"strategies", "criteria"})
        self.assertEqual(set(table[table["study"] == "criteria"]["criterion"]), {"BIC"})
        for name in METRIC_NAMES:
            self.assertTrue(np.all(np.isfinite(table[name])), name)
        smoothed = table[table["strategy"] == "SRP_AIC"]
        self.assertTrue(np.all(smoothed["RMSE_spatial"] < 0.5))

    def test_summary(self):
        # Test grouped means and failure counts
        summary = self.result.summary()
        self.assertEqual(len(summary), 2 * 3)
        self.assertEqual(set(summary["n_failed"]), {0})
        ordering = strategy_ordering(summary, "spatial_only", "RMSE_spatial")
        self.assertEqual(sorted(ordering), ["GNP", "SRP_AIC"])

    def test_save(self):
        # Test the written files
        with temp_dir() as tmp:
            written = self.result.save(tmp, plot_data=True)
            names = {p.name for p in written}
            manifest = json.loads((Path(tmp) / "manifest.json").read_text(encoding="UTF-8"))
            plot = (Path(tmp) / "plot" / "spatial_only_GNP.dat").read_text(encoding="UTF-8")
        self.assertTrue({"results.csv", "summary.csv", "manifest.json"} <= names)
        self.assertEqual(len(manifest["runs"]), 2)
        self.assertEqual(manifest["grid"]["seed"], 7)
        self.assertTrue(plot.startswith("# density coefficient"))

    def test_custom_truth(self):
        # Test a caller-supplied truth replaces the built-in one
        grid = BenchmarkGrid(
            truths=("straight",), densities=(4.0,), coefficients=(0.05,), repeats=1,
            modes=("radius_only",), strategies=("GNP",),
        )
        result = run_benchmark(grid, truths={"straight": ground_truth("tapered_tube")})
        self.assertEqual(list(result.table["truth"]), ["straight"])


@unittest.skipUnless(SLOW, "set VESSELFORGE_SLOW=1 to run the full benchmark")
class TestStrategyOrdering(unittest.TestCase):
    @classmethod
    def setUpClass(self):
        print("\n** Testing Benchmark StrategyOrdering **")
        self.summary = run_benchmark(BenchmarkGrid(), jobs=0).summary()
        self.strategies = self.summary[self.summary["study"] == "strategies"]

    def metric(self, mode: str, metric: str):
        return self.strategies[self.strategies["mode"] == mode].set_index("strategy")[metric]

    def test_penalized_beats_unpenalized(self):
        # Test smoothing helps on noisy centerlines
        for mode in ("spatial_only", "radius_only"):
            metric = "RMSE_spatial" if mode == "spatial_only" else "RMSE_radius"
            values = self.metric(mode, metric)
            self.assertLess(values["SRP_AIC"], values["GNP"], mode)

    def test_curvature_ordering(self):
        # Test the curvature error ordering under radius noise
        curv = self.metric("radius_only", "RMSEcurv")
        self.assertLessEqual(curv["SRP_AIC"], curv["GP_AIC"])
        self.assertLess(curv["GP_AIC"], curv["GNP_AIC"])
        self.assertLess(curv["GNP_AIC"], curv["GNP"])
        self.assertLessEqual(10.0 * curv["SRP_AIC"], curv["GNP_AIC"])
        self.assertEqual(strategy_ordering(self.summary, "radius_only", "RMSEcurv")[-2:], ["GNP_AIC", "GNP"])

    def test_derivative_error(self):
        # Test penalized fits keep a third of the unpenalized tangent error under spatial noise
        der = self.metric("spatial_only", "RMSEder_spatial")
        penalized = (der["GP_AIC"] + der["SRP_AIC"]) / 2.0
        unpenalized = (der["GNP"] + der["GNP_AIC"]) / 2.0
        self.assertLessEqual(3.0 * penalized, unpenalized)


if __name__ == "__main__":
    unittest.main()
