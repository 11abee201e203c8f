# -*- coding: utf-8 -*-
"""Meshing of a whole network model: furcations first, then vessels."""

import logging
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

from vesselforge.errors import VesselForgeError, failure_reason
from vesselforge.mesher.apex import smooth_apex
from vesselforge.mesher.furcation_surface import INLET, mesh_furcation_surface
from vesselforge.mesher.ogrid import HexMesh, build_ogrid_volume
from vesselforge.mesher.params import MeshParams
from vesselforge.mesher.relaxation import relax_surface
from vesselforge.mesher.separation import decompose_furcation
from vesselforge.mesher.surface import SectionRef, StructuredSurfaceMesh
from vesselforge.mesher.vessel_surface import mesh_vessel_surface
from vesselforge.model.types import FailureRecord, FurcationModel, NetworkModel
from vesselforge.spline.bspline import Spline4
from vesselforge.utils.logger import get_logger
from vesselforge.utils.parallel import parallel_map


@dataclass
class NetworkMesh:
    """Merged surface, optional volume and the failures of a network run.

    ``flagged`` lists, per junction, the ``(patch, section)`` pairs whose
    nodes are not angularly monotone after projection.
    """

    surface: StructuredSurfaceMesh
    volume: Optional[HexMesh] = None
    failures: List[FailureRecord] = field(default_factory=list)
    vessels: List[int] = field(default_factory=list)
    furcations: List[int] = field(default_factory=list)
    flagged: Dict[int, List[Tuple[int, int]]] = field(default_factory=dict)
    timings: Dict[str, float] = field(default_factory=dict)


def mesh_furcation(
    model: FurcationModel, params: Optional[MeshParams] = None, logger: Optional[logging.Logger] = None
) -> StructuredSurfaceMesh:
    """Decompose, mesh, relax and smooth one furcation."""
    params = params or MeshParams()
    sep = decompose_furcation(model, params)
    mesh = mesh_furcation_surface(model, sep, params)
    mesh = relax_surface(mesh, sep.surface, params, logger)
    if params.smooth_apex:
        R = params.apex_R if params.apex_R is not None else model.rounding_radius
        mesh = smooth_apex(mesh, sep, R, logger)
    return mesh


def end_sections(mesh: StructuredSurfaceMesh) -> Dict[object, SectionRef]:
    """End sections of a furcation mesh by role: ``"inlet"`` or the outlet index."""
    refs = {}
    for index, patch in enumerate(mesh.patches):
        position = 0 if patch.role == INLET else len(patch.sections) - 1
        refs[patch.role] = mesh.section_ref(index, position)
    return refs


def _furcation_job(job: Tuple[FurcationModel, MeshParams]) -> Union[StructuredSurfaceMesh, FailureRecord]:
    model, params = job
    try:
        return mesh_furcation(model, params)
    except VesselForgeError as e:
        return FailureRecord("furcation", model.junction, failure_reason(e), str(e))


def _vessel_job(
    job: Tuple[int, Spline4, Optional[SectionRef], Optional[SectionRef], MeshParams]
) -> Union[StructuredSurfaceMesh, FailureRecord]:
    index, spline, start, end, params = job
    try:
        return mesh_vessel_surface(spline, params, end_alignment=end, start_alignment=start, label=index)
    except VesselForgeError as e:
        return FailureRecord("vessel", index, failure_reason(e), str(e))


def mesh_network(
    model: NetworkModel,
    params: Optional[MeshParams] = None,
    jobs: int = 1,
    surface_only: bool = False,
    logger: Optional[logging.Logger] = None,
) -> NetworkMesh:
    """Mesh every furcation and vessel of a network model.

    Vessels reuse the end sections of their meshed furcations, so joints
    share nodes. Sub-meshes are merged vessels first, by branch id, then
    furcations by junction id. Failures of single pieces are recorded and
    do not stop the run; the failures of ``model`` are carried over.
    """
    params = params or MeshParams()
    logger = logger or get_logger("mesher")
    result = NetworkMesh(surface=StructuredSurfaceMesh(params.N), failures=list(model.failures))
    started = time.perf_counter()

    junctions = sorted(model.furcations)
    outcomes = parallel_map(
        _furcation_job,
        [(model.furcations[j], params) for j in junctions],
        jobs=jobs,
        desc="furcation meshes" if jobs != 1 else None,
    )
    furcation_meshes: Dict[int, StructuredSurfaceMesh] = {}
    for junction, outcome in zip(junctions, outcomes):
        if isinstance(outcome, FailureRecord):
            logger.warning("furcation %d meshing failed: %s", junction, outcome.detail or outcome.reason)
            result.failures.append(outcome)
            continue
        furcation_meshes[junction] = outcome
        if outcome.flags:
            logger.warning("furcation %d: %d section(s) fold over after projection", junction, len(outcome.flags))
            result.flagged[junction] = list(outcome.flags)
    refs = {j: end_sections(m) for j, m in furcation_meshes.items()}

    vessel_jobs = []
    for index in sorted(model.vessels):
        start_joint, end_joint = model.joints.get(index, (None, None))
        start = refs.get(start_joint.junction, {}).get(start_joint.role) if start_joint else None
        end = refs.get(end_joint.junction, {}).get(end_joint.role) if end_joint else None
        vessel_jobs.append((index, model.vessels[index], start, end, params))
    outcomes = parallel_map(_vessel_job, vessel_jobs, jobs=jobs, desc="vessel meshes" if jobs != 1 else None)

    for (index, *_), outcome in zip(vessel_jobs, outcomes):
        if isinstance(outcome, FailureRecord):
            logger.warning("vessel %d meshing failed: %s", index, outcome.detail or outcome.reason)
            result.failures.append(outcome)
            continue
        result.surface.merge(outcome)
        result.vessels.append(index)
    for junction in junctions:
        if junction in furcation_meshes:
            result.surface.merge(furcation_meshes[junction])
            result.furcations.append(junction)
    result.surface.flags = []
    result.timings["surface"] = time.perf_counter() - started

    if not surface_only:
        started = time.perf_counter()
        result.volume = build_ogrid_volume(result.surface, params)
        result.timings["volume"] = time.perf_counter() - started
        logger.info("volume: %d hexahedra, %d vertices", result.volume.cell_count, result.volume.vertex_count)
    logger.info(
        "mesh: %d/%d furcations, %d/%d vessels",
        len(result.furcations), len(junctions), len(result.vessels), len(model.vessels),
    )
    return result
