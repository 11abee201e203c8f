from vesselforge.benchmark.distortion import DistortionSpec, NoiseMode, distort
from vesselforge.benchmark.ground_truth import GROUND_TRUTHS, ground_truth, ground_truths
from vesselforge.benchmark.metrics import METRIC_NAMES, MetricSet, matched_metrics
from vesselforge.benchmark.runner import BenchmarkGrid, BenchmarkResult, run_benchmark

__all__ = [
    "BenchmarkGrid",
    "BenchmarkResult",
    "DistortionSpec",
    "GROUND_TRUTHS",
    "METRIC_NAMES",
    "MetricSet",
    "NoiseMode",
    "distort",
    "ground_truth",
    "ground_truths",
    "matched_metrics",
    "run_benchmark",
]
