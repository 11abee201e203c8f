# -*- coding: utf-8 -*-
"""Full-factorial fitting benchmark on distorted ground truths."""

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Tuple, Union

import numpy as np
import pandas as pd

from vesselforge.benchmark.distortion import DistortionSpec, NoiseMode, distort, sample_parameters
from vesselforge.benchmark.ground_truth import GROUND_TRUTHS, ground_truth
from vesselforge.benchmark.metrics import METRIC_NAMES, matched_metrics
from vesselforge.errors import VesselForgeError, failure_reason
from vesselforge.fitting.fit import fit_vessel
from vesselforge.fitting.types import Criterion, FitConfig, Strategy
from vesselforge.spline.bspline import Spline4
from vesselforge.utils.atomic import atomic_write_text
from vesselforge.utils.logger import get_logger
from vesselforge.utils.parallel import parallel_map

DENSITIES = (2.0, 4.0, 10.0, 16.0, 20.0)
NOISE_COEFFICIENTS = (0.01, 0.05, 0.1, 0.3, 0.5)
STRATEGY_STUDY, CRITERIA_STUDY = "strategies", "criteria"
GROUP_COLUMNS = ["study", "mode", "strategy", "criterion"]


def run_seed(base: int, index: int) -> int:
    """Seed of run ``index``, independent of scheduling."""
    return int(np.random.SeedSequence([base, index]).generate_state(1)[0])


@dataclass(frozen=True)
class BenchmarkGrid:
    """Factorial design: truths x densities x modes x coefficients x repeats.

    ``criteria`` adds a selection-criterion study: every dataset is also
    fitted with ``SRP_AIC`` under each listed criterion.
    """

    truths: Tuple[str, ...] = tuple(GROUND_TRUTHS)
    densities: Tuple[float, ...] = DENSITIES
    coefficients: Tuple[float, ...] = NOISE_COEFFICIENTS
    modes: Tuple[NoiseMode, ...] = (NoiseMode.RADIUS_ONLY, NoiseMode.SPATIAL_ONLY)
    repeats: int = 3
    strategies: Tuple[Strategy, ...] = tuple(Strategy)
    criteria: Tuple[Criterion, ...] = ()
    seed: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "modes", tuple(NoiseMode(m) for m in self.modes))
        object.__setattr__(self, "strategies", tuple(Strategy(s) for s in self.strategies))
        object.__setattr__(self, "criteria", tuple(Criterion(c) for c in self.criteria))

    def datasets(self) -> List[Tuple[int, str, DistortionSpec, int]]:
        """``(index, truth, spec, repeat)`` of every distorted dataset, in a fixed order."""
        out = []
        for truth in self.truths:
            for density in self.densities:
                for mode in self.modes:
                    for coefficient in self.coefficients:
                        for repeat in range(self.repeats):
                            index = len(out)
                            radius = coefficient if mode is NoiseMode.RADIUS_ONLY else 0.0
                            spatial = coefficient if mode is NoiseMode.SPATIAL_ONLY else 0.0
                            spec = DistortionSpec(density, radius, spatial, run_seed(self.seed, index), mode)
                            out.append((index, truth, spec, repeat))
        return out

    def to_dict(self) -> Dict[str, Any]:
        return {
            "truths": list(self.truths),
            "densities": list(self.densities),
            "coefficients": list(self.coefficients),
            "modes": [m.value for m in self.modes],
            "repeats": self.repeats,
            "strategies": [s.value for s in self.strategies],
            "criteria": [c.value for c in self.criteria],
            "seed": self.seed,
        }


def raw_error(truth: Spline4, spec: DistortionSpec, points: np.ndarray) -> float:
    """RMS distance of the distorted samples to the truth at their own parameters."""
    exact = truth(sample_parameters(truth, spec.target_density))
    return float(np.sqrt(np.mean(np.sum((points - exact) ** 2, axis=1))))


def _fit_row(truth: Spline4, points: np.ndarray, config: FitConfig, base: Dict[str, Any]) -> Dict[str, Any]:
    row = dict(base, strategy=config.strategy.value, criterion=config.criterion.value)
    try:
        result = fit_vessel(points, config)
        row.update(matched_metrics(truth, result.spline).to_dict())
        row.update(status="ok", reason="", n_control=result.n_control)
    except VesselForgeError as e:
        row.update({name: np.nan for name in METRIC_NAMES}, status="failed", reason=failure_reason(e), n_control=0)
    return row


def run_dataset(job: Tuple[int, str, Spline4, DistortionSpec, int, FitConfig, Tuple, Tuple]) -> List[Dict[str, Any]]:
    """Distort one truth and fit it with every strategy (and criterion)."""
    index, name, truth, spec, repeat, config, strategies, criteria = job
    points = distort(truth, spec)
    base = {
        "run": index,
        "truth": name,
        "density": spec.target_density,
        "mode": spec.mode.value,
        "coefficient": spec.coefficient,
        "repeat": repeat,
        "seed": spec.seed,
        "points": len(points),
        "raw_error": raw_error(truth, spec, points),
    }
    rows = [
        _fit_row(truth, points, config.replace(strategy=s), dict(base, study=STRATEGY_STUDY)) for s in strategies
    ]
    rows += [
        _fit_row(truth, points, config.replace(strategy=Strategy.SRP_AIC, criterion=c), dict(base, study=CRITERIA_STUDY))
        for c in criteria
    ]
    return rows


@dataclass
class BenchmarkResult:
    table: pd.DataFrame
    manifest: Dict[str, Any] = field(default_factory=dict)

    def summary(self) -> pd.DataFrame:
        """Mean metrics per study, mode, strategy and criterion over successful fits."""
        if self.table.empty:
            return pd.DataFrame(columns=GROUP_COLUMNS + list(METRIC_NAMES) + ["n_ok", "n_failed"])
        ok = self.table[self.table["status"] == "ok"]
        means = ok.groupby(GROUP_COLUMNS)[list(METRIC_NAMES)].mean()
        counts = self.table.assign(ok=self.table["status"] == "ok").groupby(GROUP_COLUMNS)["ok"].agg(["sum", "count"])
        counts = counts.rename(columns={"sum": "n_ok"})
        counts["n_failed"] = counts.pop("count") - counts["n_ok"]
        return means.join(counts, how="outer").reset_index()

    def plot_tables(self) -> Dict[str, str]:
        """Whitespace-separated per-strategy tables of mean metrics against density and noise."""
        out: Dict[str, str] = {}
        ok = self.table[(self.table["status"] == "ok") & (self.table["study"] == STRATEGY_STUDY)]
        for (mode, strategy), frame in ok.groupby(["mode", "strategy"]):
            means = frame.groupby(["density", "coefficient"])[list(METRIC_NAMES)].mean().reset_index()
            text = "# " + " ".join(means.columns) + "\n"
            text += means.to_csv(sep=" ", index=False, header=False, float_format="%.10g")
            out[f"{mode}_{strategy}.dat"] = text
        return out

    def save(self, directory: Union[str, Path], plot_data: bool = False) -> List[Path]:
        directory = Path(directory)
        written = []
        for name, text in (
            ("results.csv", self.table.to_csv(index=False, float_format="%.10g")),
            ("summary.csv", self.summary().to_csv(index=False, float_format="%.10g")),
            ("manifest.json", json.dumps(self.manifest, indent=2) + "\n"),
        ):
            atomic_write_text(directory / name, text)
            written.append(directory / name)
        if plot_data:
            for name, text in self.plot_tables().items():
                atomic_write_text(directory / "plot" / name, text)
                written.append(directory / "plot" / name)
        return written


def run_benchmark(
    grid: Optional[BenchmarkGrid] = None,
    config: Optional[FitConfig] = None,
    truths: Optional[Mapping[str, Spline4]] = None,
    jobs: int = 1,
    logger: Optional[logging.Logger] = None,
) -> BenchmarkResult:
    """Run every dataset of ``grid`` and collect one row per fit.

    ``truths`` overrides the built-in analytic ground truths by name.
    Failed fits are kept in the table with ``status == "failed"``.
    """
    grid = grid or BenchmarkGrid()
    config = config or FitConfig()
    logger = logger or get_logger("benchmark")
    datasets = grid.datasets()
    lookup = {name: ground_truth(name) for name in grid.truths if name not in (truths or {})}
    lookup.update(truths or {})
    jobs_list = [
        (index, name, lookup[name], spec, repeat, config, grid.strategies, grid.criteria)
        for index, name, spec, repeat in datasets
    ]
    logger.info("benchmark: %d datasets, %d strategies", len(jobs_list), len(grid.strategies))
    rows = [row for chunk in parallel_map(run_dataset, jobs_list, jobs=jobs, desc="benchmark") for row in chunk]
    table = pd.DataFrame(rows)
    failed = int((table["status"] != "ok").sum()) if not table.empty else 0
    if failed:
        logger.warning("benchmark: %d of %d fits failed", failed, len(table))
    manifest = {
        "grid": grid.to_dict(),
        "fit": config.to_dict(),
        "runs": [dict(run=i, truth=name, repeat=r, **spec.to_dict()) for i, name, spec, r in datasets],
    }
    return BenchmarkResult(table, manifest)


def strategy_ordering(summary: pd.DataFrame, mode: str, metric: str, study: str = STRATEGY_STUDY) -> List[str]:
    """Strategies sorted by mean ``metric`` for one noise mode, best first."""
    frame = summary[(summary["mode"] == mode) & (summary["study"] == study)]
    return list(frame.sort_values(metric)["strategy"])
