"""
Command-line surface: run configuration, subcommands, hyperbolicity and classification
"""
from .classify import EUCLIDEAN, HYPERBOLIC, INDETERMINATE, UBQ_FAILS, ClassificationVerdict, classify, decide
from .config import RunConfig
from .hyperbolicity import (
    GROWING,
    PLATEAU,
    HyperbolicityReport,
    classify_delta_trend,
    default_ladder,
    four_point_delta,
    hyperbolicity_estimate,
)
from .main import build_parser, main

__all__ = [
    "EUCLIDEAN",
    "GROWING",
    "HYPERBOLIC",
    "INDETERMINATE",
    "PLATEAU",
    "UBQ_FAILS",
    "ClassificationVerdict",
    "HyperbolicityReport",
    "RunConfig",
    "build_parser",
    "classify",
    "classify_delta_trend",
    "decide",
    "default_ladder",
    "four_point_delta",
    "hyperbolicity_estimate",
    "main",
]
