# -*- coding: utf-8 -*-
"""Assembly of the full network model: furcations first, then vessels."""

import logging
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from vesselforge.centerline.network import CenterlineNetwork, extract_branches
from vesselforge.centerline.types import Branch
from vesselforge.errors import FitError, VesselForgeError, failure_reason
from vesselforge.fitting.fit import fit_vessel
from vesselforge.fitting.types import EndConstraint, FitConfig
from vesselforge.model.furcation import build_nfurcation
from vesselforge.model.types import CrossSection, FailureRecord, FurcationModel, ModelOptions, NetworkModel, VesselJoint
from vesselforge.spline.bspline import Spline4
from vesselforge.utils.logger import get_logger
from vesselforge.utils.parallel import parallel_map

MIN_VESSEL_POINTS = 6


def section_constraint(section: CrossSection) -> EndConstraint:
    """End constraint matching a section: centre and radius, normal direction."""
    return EndConstraint(section.xyzr(), np.append(section.normal, 0.0))


def resample_polyline(rows: np.ndarray, count: int) -> np.ndarray:
    """``count`` rows evenly spaced along the spatial polyline, all columns interpolated."""
    steps = np.linalg.norm(np.diff(rows[:, :3], axis=0), axis=1)
    s = np.concatenate([[0.0], np.cumsum(steps)])
    targets = np.linspace(0.0, s[-1], count)
    return np.column_stack([np.interp(targets, s, rows[:, c]) for c in range(rows.shape[1])])


def vessel_data(
    rows: np.ndarray, start: Optional[CrossSection], end: Optional[CrossSection]
) -> np.ndarray:
    """Raw samples of a vessel between its joint section planes.

    Points upstream of the start plane or downstream of the end plane are
    dropped and the section centres become the first and last samples.
    Short results are resampled along the polyline.

    Raises
    ------
    FitError
        The two sections leave no room for the vessel.
    """
    rows = np.asarray(rows, dtype=float)
    keep = np.ones(len(rows), dtype=bool)
    if start is not None:
        keep &= (rows[:, :3] - start.center) @ start.normal > 0
    if end is not None:
        keep &= (rows[:, :3] - end.center) @ end.normal < 0
    if start is not None and end is not None and (end.center - start.center) @ start.normal <= 0:
        raise FitError("joint sections overlap, no room for the vessel")
    kept = rows[keep]
    parts = []
    if start is not None:
        parts.append(start.xyzr()[None, :])
    parts.append(kept)
    if end is not None:
        parts.append(end.xyzr()[None, :])
    data = np.vstack(parts)
    if len(data) < 2:
        raise FitError("vessel has no samples between its joint sections")
    if len(data) < MIN_VESSEL_POINTS:
        data = resample_polyline(data, MIN_VESSEL_POINTS)
    return data


def _furcation_job(job: Tuple[CenterlineNetwork, int, FitConfig, ModelOptions, List[Branch]]) -> Union[FurcationModel, FailureRecord]:
    net, junction, config, options, branches = job
    try:
        return build_nfurcation(net, junction, config, options, branches)
    except VesselForgeError as e:
        return FailureRecord("furcation", junction, failure_reason(e), str(e))


def _vessel_job(job: Tuple[int, np.ndarray, Optional[CrossSection], Optional[CrossSection], FitConfig]) -> Union[Spline4, FailureRecord]:
    index, rows, start, end, config = job
    try:
        data = vessel_data(rows, start, end)
        constraints = (
            None if start is None else section_constraint(start),
            None if end is None else section_constraint(end),
        )
        return fit_vessel(data, config, constraints if start is not None or end is not None else None).spline
    except VesselForgeError as e:
        return FailureRecord("vessel", index, failure_reason(e), str(e))


def assemble_network(
    net: CenterlineNetwork,
    config: Optional[FitConfig] = None,
    options: Optional[ModelOptions] = None,
    jobs: int = 1,
    logger: Optional[logging.Logger] = None,
) -> NetworkModel:
    """Build the network model.

    Furcations are estimated independently, then every vessel is fitted
    with end constraints taken from the sections of its neighbouring
    furcations. Failures are collected in ``NetworkModel.failures`` and do
    not stop the rest of the network.
    """
    config = config or FitConfig()
    options = options or ModelOptions()
    logger = logger or get_logger("model")
    branches = extract_branches(net)
    junctions = sorted({b.inlet_junction for b in branches if b.inlet_junction is not None})
    model = NetworkModel(branch_count=len(branches), junction_count=len(junctions), point_count=len(net))

    results = parallel_map(
        _furcation_job,
        [(net, j, config, options, branches) for j in junctions],
        jobs=jobs,
        desc="furcations" if jobs != 1 else None,
    )
    for junction, result in zip(junctions, results):
        if isinstance(result, FailureRecord):
            logger.warning("furcation %d failed: %s", junction, result.detail or result.reason)
            model.failures.append(result)
        else:
            model.furcations[junction] = result

    vessel_jobs = []
    for branch in branches:
        start = end = None
        start_joint = end_joint = None
        upstream = model.furcations.get(branch.inlet_junction) if branch.inlet_junction is not None else None
        downstream = model.furcations.get(branch.outlet_junction) if branch.outlet_junction is not None else None
        if upstream is not None:
            role = upstream.outlet_index(branch.index)
            start, start_joint = upstream.outlets[role], VesselJoint(upstream.junction, role)
        if downstream is not None:
            end, end_joint = downstream.inlet, VesselJoint(downstream.junction, "inlet")
        model.joints[branch.index] = (start_joint, end_joint)
        vessel_jobs.append((branch.index, net.xyzr(branch.point_ids), start, end, config))

    results = parallel_map(_vessel_job, vessel_jobs, jobs=jobs, desc="vessels" if jobs != 1 else None)
    for (index, *_), result in zip(vessel_jobs, results):
        if isinstance(result, FailureRecord):
            logger.warning("vessel %d failed: %s", index, result.detail or result.reason)
            model.failures.append(result)
            model.joints.pop(index, None)
        else:
            model.vessels[index] = result
    logger.info(
        "model: %d/%d furcations, %d/%d vessels",
        len(model.furcations), len(junctions), len(model.vessels), len(branches),
    )
    return model


def failed_ids(model: NetworkModel, kind: str) -> Dict[int, str]:
    return {f.id: f.reason for f in model.failures if f.kind == kind}
