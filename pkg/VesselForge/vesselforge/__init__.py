# -*- coding: utf-8 -*-
"""VesselForge: vascular network models and structured hexahedral meshes from centerlines."""

__version__ = "1.0.0"
