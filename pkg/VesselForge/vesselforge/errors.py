# -*- coding: utf-8 -*-
"""Exception hierarchy shared by every VesselForge package."""

from typing import Optional


class VesselForgeError(Exception):
    """Base class of all errors raised by VesselForge."""


class ConfigError(VesselForgeError):
    """Invalid configuration value or unreadable configuration file."""


class CenterlineFormatError(VesselForgeError):
    """Malformed centerline input.

    Parameters
    ----------
    message : str
        Human readable reason.
    line : int, optional
        1-based line number in the source text.
    """

    def __init__(self, message: str, line: Optional[int] = None) -> None:
        self.line = line
        if line is not None:
            message = f"{message} at line {line}"
        super().__init__(message)


class TopologyError(VesselForgeError):
    """Query or edit that does not fit the network topology."""


class SplineError(VesselForgeError):
    """Invalid spline evaluation request."""


class FitError(VesselForgeError):
    """A fitting strategy could not produce a model."""


class SingularSystemError(FitError):
    """The least-squares system is rank deficient."""


class FurcationError(VesselForgeError):
    """Furcation parameter estimation failed.

    Parameters
    ----------
    reason : str
        Short failure reason reported in failure tables, e.g. ``"no apex"``.
    detail : str, optional
        Additional context for the log.
    """

    def __init__(self, reason: str, detail: str = "") -> None:
        self.reason = reason
        super().__init__(f"{reason}: {detail}" if detail else reason)


class UnsupportedTopologyError(FurcationError):
    """Non-planar n-furcation beyond the planarity tolerance."""

    def __init__(self, detail: str = "") -> None:
        super().__init__("unsupported topology", detail)


class DecompositionError(FurcationError):
    """Separation geometry of a furcation could not be built."""

    def __init__(self, detail: str = "") -> None:
        super().__init__("decomposition failure", detail)


class MeshingError(VesselForgeError):
    """Surface or volume meshing failed."""

    def __init__(self, reason: str, detail: str = "") -> None:
        self.reason = reason
        super().__init__(f"{reason}: {detail}" if detail else reason)


class FoldOverError(MeshingError):
    """Sections of a vessel would intersect each other."""

    def __init__(self, detail: str = "") -> None:
        super().__init__("too high curvature", detail)


class ConsistencyError(MeshingError):
    """Internal mesh consistency check failed."""

    def __init__(self, detail: str = "") -> None:
        super().__init__("internal consistency error", detail)


class DeformError(VesselForgeError):
    """Surface deformation failed."""


class EditError(VesselForgeError):
    """Centerline edit operation rejected."""


def failure_reason(error: BaseException) -> str:
    """Return the short reason string used in failure reports."""
    return getattr(error, "reason", None) or str(error) or type(error).__name__
