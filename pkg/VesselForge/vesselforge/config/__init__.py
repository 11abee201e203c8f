# -*- coding: utf-8 -*-
"""Configuration classes for VesselForge."""

from vesselforge.config.basic_config import BasicConfig
from vesselforge.config.run_config import RunConfig, bundled_defaults

__all__ = [
    "BasicConfig",
    "RunConfig",
    "bundled_defaults",
]
