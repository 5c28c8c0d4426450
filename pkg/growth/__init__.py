"""
Growth functions, isoperimetry and quadratic-growth certificates
"""
from .isoperimetry import (
    IsoperimetricSample,
    IsoperimetrySummary,
    isoperimetry_sweep,
    random_connected_sets,
    varopoulos_check,
    vertex_boundary,
)
from .quadratic import (
    HYPOTHESES_MET,
    HYPOTHESES_UNMET,
    CrossingAudit,
    QuadGrowthCertificate,
    lemma66_harness,
    quad_growth_certificate,
)
from .tables import ExponentFit, GrowthTable, closed_form, fit_exponent, growth_table, inverse_growth_phi

__all__ = [
    "HYPOTHESES_MET",
    "HYPOTHESES_UNMET",
    "CrossingAudit",
    "ExponentFit",
    "GrowthTable",
    "IsoperimetricSample",
    "IsoperimetrySummary",
    "QuadGrowthCertificate",
    "closed_form",
    "fit_exponent",
    "growth_table",
    "inverse_growth_phi",
    "isoperimetry_sweep",
    "lemma66_harness",
    "quad_growth_certificate",
    "random_connected_sets",
    "varopoulos_check",
    "vertex_boundary",
]
