"""
Exception hierarchy shared by every lab module
"""
from typing import Any, Dict, List, Optional


class LabError(Exception):
    """Base class for failures raised by the lab."""


class EncodingError(LabError, ValueError):
    """A vertex token does not match its family's canonical form."""


class MalformedInputError(LabError, ValueError):
    """Input paths, sets or files are structurally invalid."""


class BudgetExceededError(LabError, RuntimeError):
    def __init__(self, message: str, attained_radius: int, vertex_count: int):
        super().__init__(message)
        self.attained_radius = attained_radius
        self.vertex_count = vertex_count


class OutOfBallError(LabError, ValueError):
    def __init__(self, vertex: Any, radius: int):
        super().__init__(f"vertex {vertex!r} is not inside the ball of radius {radius}")
        self.vertex = vertex
        self.radius = radius


class NoPathError(LabError, RuntimeError):
    """Two vertices are disconnected inside the materialized region."""


class SphericalTilingError(LabError, ValueError):
    """The {p,q} pair describes a finite (spherical) tiling."""


class TilingConstructionError(LabError, RuntimeError):
    """The concentric layer construction produced an inconsistent face."""


class UnsupportedDirectionError(LabError, ValueError):
    """The family has no axis with the requested name."""


class DomainError(LabError, ValueError):
    """A numeric parameter is outside its mathematical domain."""


class TableExhaustedError(LabError, ValueError):
    """A growth table is too short to answer the query."""


class MarginError(LabError, ValueError):
    """A set or path reaches the ball boundary where interior placement is required."""


class NotEnclosedError(MarginError):
    """A component touches the ball boundary and has no finite depth there."""


class PreconditionError(LabError, ValueError):
    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.details = details or {}


class HypothesisError(LabError, ValueError):
    """A numbered scenario hypothesis failed its finite-scale audit."""

    def __init__(self, clause: int, reason: str, report: Optional[List[Dict[str, Any]]] = None):
        super().__init__(f"hypothesis clause {clause} failed: {reason}")
        self.clause = clause
        self.reason = reason
        self.report = report or []


class SizingError(LabError, ValueError):
    def __init__(self, message: str, minimal_halflength: int):
        super().__init__(f"{message} (minimal feasible halflength: {minimal_halflength})")
        self.minimal_halflength = minimal_halflength


class ExtractionError(LabError, RuntimeError):
    def __init__(self, message: str, scan_log: Optional[List[str]] = None):
        super().__init__(message)
        self.scan_log = scan_log or []
