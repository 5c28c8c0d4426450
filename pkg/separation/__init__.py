"""
Separation: tubular neighborhoods, complement components, UBQ probes and witnesses
"""
from .components import ComponentReport, Decomposition, TubularNbhd, complement_components, decompose, tubular_neighborhood
from .probes import (
    CONSISTENT,
    GEODESIC_ONLY,
    INDETERMINATE,
    QUASI_GEODESIC,
    SAMPLED,
    TOO_FEW,
    TOO_MANY,
    SigmaSweep,
    UbqProbeReport,
    anchored_sides,
    ends_probe,
    sampled_segment,
    sigma_sweep,
    ubq_probe,
)
from .witnesses import (
    ChordReport,
    ProtectionReport,
    WitnessAbsence,
    WitnessPair,
    chord_witness_check,
    find_witness_pair,
    witness_protection_demo,
)

__all__ = [
    "CONSISTENT",
    "GEODESIC_ONLY",
    "INDETERMINATE",
    "QUASI_GEODESIC",
    "SAMPLED",
    "TOO_FEW",
    "TOO_MANY",
    "ChordReport",
    "ComponentReport",
    "Decomposition",
    "ProtectionReport",
    "SigmaSweep",
    "TubularNbhd",
    "UbqProbeReport",
    "WitnessAbsence",
    "WitnessPair",
    "anchored_sides",
    "chord_witness_check",
    "complement_components",
    "decompose",
    "ends_probe",
    "find_witness_pair",
    "sampled_segment",
    "sigma_sweep",
    "tubular_neighborhood",
    "ubq_probe",
    "witness_protection_demo",
]
