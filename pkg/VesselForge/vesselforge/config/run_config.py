# -*- coding: utf-8 -*-
"""Run configuration: bundled defaults, a user YAML file and CLI overrides."""

import logging
from numbers import Number
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional

from ruamel.yaml import YAMLError

from vesselforge.benchmark.runner import BenchmarkGrid
from vesselforge.config.basic_config import BasicConfig, to_plain, yaml
from vesselforge.errors import ConfigError
from vesselforge.fitting.types import FitConfig, default_lambda_grid
from vesselforge.mesher.params import MeshParams
from vesselforge.model.types import ModelOptions

DEFAULT_CONFIG_PATH = Path(__file__).parent / "defaults" / "default_config.yml"
EXPORT_FORMATS = ("vtk", "obj", "json")


def bundled_defaults() -> Dict[str, Any]:
    """The default configuration shipped with the package."""
    with DEFAULT_CONFIG_PATH.open("r", encoding="UTF-8") as f:
        return to_plain(yaml.load(f))


class RunConfig(BasicConfig):
    """
    Configuration of one command run.

    Values come from the bundled defaults, then the optional YAML file at
    ``path``, then :meth:`apply_overrides`. Typed option objects are built
    on demand and every invalid value raises :class:`ConfigError` naming
    its key path, e.g. ``mesh.N``.
    """

    def __init__(self, path: Optional[str] = None, logger: Optional[logging.Logger] = None) -> None:
        self.logger = logger
        super().__init__(path, bundled_defaults(), yaml_format=True)

    def load(self) -> None:
        self.validate_syntax()
        super().load()
        self.check_types()

    def validate_syntax(self) -> None:
        """Report YAML syntax errors with their line and column."""
        if self.path is None or not self.path.is_file():
            if self.path is not None:
                raise ConfigError(f"config file not found: {self.path}")
            return
        try:
            with self.path.open("r", encoding="UTF-8") as f:
                yaml.load(f)
        except YAMLError as e:
            mark = getattr(e, "problem_mark", None)
            if mark is not None:
                msg = f"{self.path}: YAML syntax error at line {mark.line + 1}, column {mark.column + 1}: {e}"
            else:
                msg = f"{self.path}: YAML syntax error, check indentation and colons: {e}"
            raise ConfigError(msg) from None

    def check_types(self) -> None:
        """Compare every value with the type of its bundled default."""
        unknown: List[str] = []
        _check_section(self, self.default_content, "", unknown)
        if unknown and self.logger:
            self.logger.warning("unknown config keys ignored: %s", ", ".join(unknown))

    def apply_overrides(self, overrides: Mapping[str, Any]) -> None:
        """Set dotted key paths, skipping ``None`` values (flags not given)."""
        for key, value in overrides.items():
            if value is None:
                continue
            path = key.split(".")
            if not _has_path(self.default_content, path):
                raise ConfigError(f"{key}: unknown configuration key")
            self.set_keys(path, value)
        self.check_types()

    def _build(self, section: str, factory, **kwargs):
        try:
            return factory(**kwargs)
        except ConfigError as e:
            raise ConfigError(f"{section}: {e}") from None
        except (TypeError, ValueError) as e:
            raise ConfigError(f"{section}: {e}") from None

    def to_fit_config(self) -> FitConfig:
        fit = self["fit"]
        grid = self._build(
            "fit.lambda_*", default_lambda_grid,
            lo=float(fit["lambda_min"]), hi=float(fit["lambda_max"]), count=int(fit["lambda_count"]),
        )
        return self._build(
            "fit", FitConfig,
            strategy=fit["strategy"],
            rmse_threshold_spatial=float(fit["rmse_threshold_spatial"]),
            rmse_threshold_radius=float(fit["rmse_threshold_radius"]),
            lambda_grid=grid,
            criterion=fit["criterion"],
            refine_lambda=bool(fit["refine_lambda"]),
            max_control_points=int(fit["max_control_points"]),
        )

    def to_model_options(self) -> ModelOptions:
        model = self["model"]
        rounding = model["rounding_radius"]
        return self._build(
            "model", ModelOptions,
            rounding_radius=None if rounding is None else float(rounding),
            linear_radius=bool(model["linear_radius"]),
            planarity_tolerance=float(model["planarity_tolerance"]),
            apex_samples=int(model["apex_samples"]),
        )

    def to_mesh_params(self) -> MeshParams:
        mesh = self["mesh"]
        apex = mesh["apex_radius"]
        return self._build(
            "mesh", MeshParams,
            N=int(mesh["N"]),
            d=float(mesh["d"]),
            relax_iters=int(mesh["relax_iters"]),
            relax_factor=float(mesh["relax_factor"]),
            apex_R=None if apex is None else float(apex),
            smooth_apex=bool(mesh["smooth_apex"]),
            ogrid=tuple(mesh["ogrid"]),
            layers=tuple(mesh["layers"]),
            init_mode=mesh["init_mode"],
        )

    def to_benchmark_grid(self) -> BenchmarkGrid:
        bench = self["benchmark"]
        if int(bench["repeats"]) < 1:
            raise ConfigError("benchmark.repeats must be at least 1")
        if any(not float(v) > 0 for v in bench["densities"]):
            raise ConfigError("benchmark.densities must be positive")
        return self._build(
            "benchmark", BenchmarkGrid,
            densities=tuple(float(v) for v in bench["densities"]),
            coefficients=tuple(float(v) for v in bench["noise"]),
            modes=tuple(bench["modes"]),
            repeats=int(bench["repeats"]),
            strategies=tuple(bench["strategies"]),
            criteria=tuple(bench["criteria"]),
            seed=self.seed,
        )

    @property
    def max_miss_fraction(self) -> float:
        value = float(self.get_keys(["deform", "max_miss_fraction"]))
        if not 0 <= value <= 1:
            raise ConfigError(f"deform.max_miss_fraction must lie in [0, 1], got {value}")
        return value

    @property
    def seed(self) -> int:
        return int(self.get_keys(["run", "seed"]))

    @property
    def jobs(self) -> int:
        jobs = int(self.get_keys(["run", "jobs"]))
        if jobs < 0:
            raise ConfigError(f"run.jobs must be >= 0, got {jobs}")
        return jobs

    @property
    def formats(self) -> List[str]:
        formats = self.get_keys(["run", "formats"])
        bad = [f for f in formats if f not in EXPORT_FORMATS]
        if bad:
            raise ConfigError(f"run.formats: unknown format(s) {bad}, expected {list(EXPORT_FORMATS)}")
        return list(formats)

    @property
    def output(self) -> Path:
        return Path(self.get_keys(["run", "output"]))

    @property
    def resample_density(self) -> Optional[float]:
        value = self.get_keys(["run", "resample_density"])
        if value is None:
            return None
        if not float(value) > 0:
            raise ConfigError(f"run.resample_density must be positive, got {value}")
        return float(value)

    def resolved(self) -> Dict[str, Any]:
        """Plain copy of the effective configuration, for run manifests."""
        return to_plain(dict(self))


def _check_section(data: Mapping[str, Any], defaults: Mapping[str, Any], prefix: str, unknown: List[str]) -> None:
    for key, value in data.items():
        path = f"{prefix}{key}"
        if key not in defaults:
            unknown.append(path)
            continue
        expected = defaults[key]
        if isinstance(expected, dict):
            if not isinstance(value, dict):
                raise ConfigError(f"{path}: expected a mapping, got {type(value).__name__}")
            _check_section(value, expected, path + ".", unknown)
        elif isinstance(expected, bool):
            if not isinstance(value, bool):
                raise ConfigError(f"{path}: expected true or false, got {value!r}")
        elif isinstance(expected, Number) or expected is None:
            if value is None and expected is None:
                continue
            if isinstance(value, bool) or not isinstance(value, Number):
                raise ConfigError(f"{path}: expected a number, got {value!r}")
        elif isinstance(expected, list):
            if not isinstance(value, list):
                raise ConfigError(f"{path}: expected a list, got {value!r}")
        elif isinstance(expected, str) and not isinstance(value, str):
            raise ConfigError(f"{path}: expected a string, got {value!r}")


def _has_path(defaults: Mapping[str, Any], path: List[str]) -> bool:
    node: Any = defaults
    for key in path:
        if not isinstance(node, Mapping) or key not in node:
            return False
        node = node[key]
    return True
