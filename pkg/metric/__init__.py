"""
Metric: ball distances, geodesics, axes and quasi-geodesic certificates
"""
from .axes import axis_segment, default_axis, tiling_axis
from .certify import (
    CERTIFIED,
    INDETERMINATE,
    VIOLATED,
    QGCertificate,
    QGIndeterminate,
    QGViolation,
    as_rational,
    certify_quasi_geodesic,
    loop_best_lambda,
    path_best_lambda,
)
from .distances import BallMetric, DistanceWitness, bfs_from, dist, geodesic_between, hausdorff, metric_for
from .paths import LOOP, SEGMENT, PathRecord, join_paths

__all__ = [
    "CERTIFIED",
    "INDETERMINATE",
    "LOOP",
    "SEGMENT",
    "VIOLATED",
    "BallMetric",
    "DistanceWitness",
    "PathRecord",
    "QGCertificate",
    "QGIndeterminate",
    "QGViolation",
    "as_rational",
    "axis_segment",
    "bfs_from",
    "certify_quasi_geodesic",
    "default_axis",
    "dist",
    "geodesic_between",
    "hausdorff",
    "join_paths",
    "loop_best_lambda",
    "metric_for",
    "path_best_lambda",
    "tiling_axis",
]
