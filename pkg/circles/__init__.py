"""
Quasi-circles: certification, search, jurisdiction and truncated circles
"""
from .constants import DerivedConstants, QuadrilateralReport, derived_constants, quadrilateral_circle_check
from .jurisdiction import (
    BOUNDED,
    GROWING,
    VACUOUS,
    JurisdictionReport,
    JurisdictionSweep,
    classify_trend,
    depth,
    jurisdiction,
    limited_jurisdiction_sweep,
)
from .loops import (
    QuasiCircle,
    certify_quasi_circle,
    loop_key,
    rectangle_loop,
    search_quasi_circles,
    square_interior,
    square_loop,
)
from .truncated import (
    ENCLOSED,
    OPEN,
    VACUOUS_FAIL,
    EnclosureReport,
    TruncatedQuasiCircle,
    chord_extraction,
    loop_enclosure_scenario,
)

__all__ = [
    "BOUNDED",
    "ENCLOSED",
    "GROWING",
    "OPEN",
    "VACUOUS",
    "VACUOUS_FAIL",
    "DerivedConstants",
    "EnclosureReport",
    "JurisdictionReport",
    "JurisdictionSweep",
    "QuadrilateralReport",
    "QuasiCircle",
    "TruncatedQuasiCircle",
    "certify_quasi_circle",
    "chord_extraction",
    "classify_trend",
    "depth",
    "derived_constants",
    "jurisdiction",
    "limited_jurisdiction_sweep",
    "loop_key",
    "loop_enclosure_scenario",
    "quadrilateral_circle_check",
    "rectangle_loop",
    "search_quasi_circles",
    "square_interior",
    "square_loop",
]
