# -*- coding: utf-8 -*-
from dataclasses import dataclass
from typing import Any, Optional, Tuple

from vesselforge.errors import ConfigError

INIT_MODES = ("linear", "normal_preserving")


@dataclass(frozen=True)
class MeshParams:
    """Meshing parameters.

    Attributes
    ----------
    N : int
        Nodes per cross section, a multiple of 4 (of 8 for furcations).
    d : float
        Section spacing as a fraction of the local mean radius.
    relax_iters : int
        Relaxation iterations on furcation surfaces.
    relax_factor : float
        Fraction of the Laplacian displacement applied per iteration.
    apex_R : float, optional
        Apex smoothing radius; the furcation's rounding radius when None.
    smooth_apex : bool
        Whether apex smoothing runs at all.
    ogrid : Tuple[float, float, float]
        Boundary, intermediate and core fractions of the section radius.
    layers : Tuple[int, int]
        Boundary and intermediate layer counts.
    init_mode : str
        Trajectory initialisation, ``"linear"`` or ``"normal_preserving"``.
    """

    N: int = 24
    d: float = 0.2
    relax_iters: int = 5
    relax_factor: float = 0.8
    apex_R: Optional[float] = None
    smooth_apex: bool = True
    ogrid: Tuple[float, float, float] = (0.2, 0.3, 0.5)
    layers: Tuple[int, int] = (10, 10)
    init_mode: str = "normal_preserving"

    def __post_init__(self) -> None:
        object.__setattr__(self, "ogrid", tuple(float(v) for v in self.ogrid))
        object.__setattr__(self, "layers", tuple(int(v) for v in self.layers))
        if self.N < 4 or self.N % 4:
            raise ConfigError(f"N must be a positive multiple of 4, got {self.N}")
        if len(self.ogrid) != 3 or min(self.ogrid) <= 0 or abs(sum(self.ogrid) - 1.0) > 1e-12:
            raise ConfigError(f"ogrid fractions must be positive and sum to 1, got {self.ogrid}")
        if len(self.layers) != 2 or min(self.layers) < 1:
            raise ConfigError(f"layer counts must be at least 1, got {self.layers}")
        if not self.d > 0:
            raise ConfigError("d must be positive")
        if self.relax_iters < 0 or not 0 < self.relax_factor <= 1:
            raise ConfigError("relax_iters must be >= 0 and relax_factor in (0, 1]")
        if self.apex_R is not None and self.apex_R < 0:
            raise ConfigError("apex_R must be nonnegative")
        if self.init_mode not in INIT_MODES:
            raise ConfigError(f"init_mode must be one of {INIT_MODES}, got {self.init_mode!r}")

    @property
    def alpha(self) -> float:
        return self.ogrid[0]

    @property
    def beta(self) -> float:
        return self.ogrid[1]

    @property
    def gamma(self) -> float:
        return self.ogrid[2]

    @property
    def n_alpha(self) -> int:
        return self.layers[0]

    @property
    def n_beta(self) -> int:
        return self.layers[1]

    @property
    def splittable(self) -> bool:
        """Whether sections can be split in two half grids (``N % 8 == 0``)."""
        return self.N % 8 == 0

    def replace(self, **changes: Any) -> "MeshParams":
        values = {k: getattr(self, k) for k in self.__dataclass_fields__}
        values.update(changes)
        return MeshParams(**values)
