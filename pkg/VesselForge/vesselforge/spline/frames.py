# -*- coding: utf-8 -*-
"""Rotation-minimizing frames by the double reflection method."""

import numpy as np


def perpendicular(vector: np.ndarray) -> np.ndarray:
    """A unit vector orthogonal to ``vector``, chosen by global axis order."""
    vector = np.asarray(vector, dtype=float)
    vector = vector / np.linalg.norm(vector)
    axis = np.eye(3)[int(np.argmin(np.abs(vector)))]
    out = axis - (axis @ vector) * vector
    return out / np.linalg.norm(out)


def rotation_minimizing_frames(
    positions: np.ndarray, tangents: np.ndarray, reference: np.ndarray
) -> np.ndarray:
    """Transport ``reference`` along the sampled curve without twist.

    Parameters
    ----------
    positions : np.ndarray
        ``(k, 3)`` curve samples.
    tangents : np.ndarray
        ``(k, 3)`` unit tangents at the samples.
    reference : np.ndarray
        Initial normal vector, projected onto the first normal plane.

    Returns
    -------
    np.ndarray
        ``(k, 3)`` unit reference vectors, each orthogonal to its tangent.
    """
    positions = np.asarray(positions, dtype=float)
    tangents = np.asarray(tangents, dtype=float)
    frames = np.empty_like(tangents)
    r = np.asarray(reference, dtype=float)
    r = r - (r @ tangents[0]) * tangents[0]
    frames[0] = r / np.linalg.norm(r)
    for i in range(len(positions) - 1):
        v1 = positions[i + 1] - positions[i]
        c1 = v1 @ v1
        if c1 < 1e-24:
            frames[i + 1] = frames[i]
            continue
        r_l = frames[i] - (2.0 / c1) * (v1 @ frames[i]) * v1
        t_l = tangents[i] - (2.0 / c1) * (v1 @ tangents[i]) * v1
        v2 = tangents[i + 1] - t_l
        c2 = v2 @ v2
        r_next = r_l - (2.0 / c2) * (v2 @ r_l) * v2 if c2 > 1e-24 else r_l
        r_next = r_next - (r_next @ tangents[i + 1]) * tangents[i + 1]
        frames[i + 1] = r_next / np.linalg.norm(r_next)
    return frames


def signed_angle(a: np.ndarray, b: np.ndarray, axis: np.ndarray) -> float:
    """Angle from ``a`` to ``b`` about ``axis`` (right-hand rule), in (-pi, pi]."""
    return float(np.arctan2(np.cross(a, b) @ axis, a @ b))
