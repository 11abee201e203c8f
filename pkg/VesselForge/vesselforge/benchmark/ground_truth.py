# -*- coding: utf-8 -*-
"""Analytic ground-truth vessels.

Four regimes: a straight tapered tube, a planar S-curve, a 3D helix and a
torus arc with a local radius bump. Each curve is sampled densely and
least-squares fitted by a cubic spline with many control points, which is
then taken as the exact truth.
"""

from functools import lru_cache
from typing import Callable, Dict

import numpy as np

from vesselforge.spline.bspline import Spline4, chord_length_parametrize, design_matrix

SAMPLES = 2000
CONTROL_POINTS = 40


def spline_through(samples: np.ndarray, n: int = CONTROL_POINTS) -> Spline4:
    """Least-squares cubic spline of dense ``(m, 4)`` samples."""
    t = chord_length_parametrize(samples)
    basis = design_matrix(t, n)
    control, *_ = np.linalg.lstsq(basis, samples, rcond=None)
    control[0], control[-1] = samples[0], samples[-1]
    return Spline4(control)


def tapered_tube() -> np.ndarray:
    s = np.linspace(0.0, 1.0, SAMPLES)
    return np.column_stack([40.0 * s, np.zeros_like(s), np.zeros_like(s), 2.0 - 0.8 * s])


def s_curve() -> np.ndarray:
    s = np.linspace(0.0, 1.0, SAMPLES)
    return np.column_stack([40.0 * s, 6.0 * np.sin(2.0 * np.pi * s), np.zeros_like(s), np.full_like(s, 1.5)])


def helix() -> np.ndarray:
    theta = np.linspace(0.0, 4.0 * np.pi, SAMPLES)
    return np.column_stack([8.0 * np.cos(theta), 8.0 * np.sin(theta), 3.0 * theta / np.pi, np.full_like(theta, 1.0)])


def torus_arc_bump() -> np.ndarray:
    theta = np.linspace(0.0, 0.75 * np.pi, SAMPLES)
    radius = 1.5 + 0.6 * np.exp(-(((theta - 0.375 * np.pi) / 0.25) ** 2))
    return np.column_stack([15.0 * np.cos(theta), 15.0 * np.sin(theta), np.zeros_like(theta), radius])


GROUND_TRUTHS: Dict[str, Callable[[], np.ndarray]] = {
    "tapered_tube": tapered_tube,
    "s_curve": s_curve,
    "helix": helix,
    "torus_arc_bump": torus_arc_bump,
}


@lru_cache(maxsize=None)
def ground_truth(name: str) -> Spline4:
    if name not in GROUND_TRUTHS:
        raise KeyError(f"unknown ground truth {name!r}, expected one of {sorted(GROUND_TRUTHS)}")
    return spline_through(GROUND_TRUTHS[name]())


def ground_truths() -> Dict[str, Spline4]:
    return {name: ground_truth(name) for name in GROUND_TRUTHS}
