"""
Classification pipeline: UBQ sweep, growth exponent and hyperbolicity trend
mapped to a label by a fixed decision table.

    ubq-fails               some sigma gives wide_count != 2 at the largest R, D = R // 3
    euclidean-plane-like    otherwise, slope in [1.7, 2.3] and delta trend growing
    hyperbolic-plane-like   otherwise, delta trend plateau and growth superpolynomial
    indeterminate           everything else
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Mapping, Optional

from config.settings import family_defaults
from graphs.ball import materialize_ball
from graphs.errors import LabError
from graphs.oracles import parse_family
from growth.tables import growth_table
from metric.axes import default_axis
from separation.probes import sigma_sweep

from .hyperbolicity import GROWING, PLATEAU, hyperbolicity_estimate

logger = logging.getLogger(__name__)

EUCLIDEAN = "euclidean-plane-like"
HYPERBOLIC = "hyperbolic-plane-like"
UBQ_FAILS = "ubq-fails"
INDETERMINATE = "indeterminate"
LABELS = (EUCLIDEAN, HYPERBOLIC, UBQ_FAILS, INDETERMINATE)

SLOPE_WINDOW = (1.7, 2.3)


@dataclass
class ClassificationVerdict:
    family: str
    label: str
    explanation: str
    evidence: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "family": self.family,
            "label": self.label,
            "explanation": self.explanation,
            "evidence": self.evidence,
        }


def decide(wide_counts: Optional[Dict[int, int]], slope: Optional[float], superpolynomial: bool, delta_trend: str):
    """
    Apply the decision table

    Args:
        wide_counts: sigma -> wide count at the largest R, or None when no probe ran
        slope: Growth exponent fit, or None
        superpolynomial: Growth ratio flag
        delta_trend: 'growing', 'plateau' or 'indeterminate'

    Returns:
        (label, explanation); every input combination gets exactly one label
    """
    if wide_counts:
        bad = {s: k for s, k in wide_counts.items() if k != 2}
        if bad:
            return UBQ_FAILS, f"wide_count != 2 for sigma {sorted(bad)}: {bad}"
    probe = "UBQ consistent" if wide_counts else "no UBQ probe available"
    if slope is not None and SLOPE_WINDOW[0] <= slope <= SLOPE_WINDOW[1] and delta_trend == GROWING:
        return EUCLIDEAN, f"{probe}; growth exponent {slope:.3f} and delta growing"
    if delta_trend == PLATEAU and superpolynomial:
        return HYPERBOLIC, f"{probe}; delta plateau and superpolynomial growth"
    slope_text = "no exponent fit" if slope is None else f"exponent {slope:.3f}"
    growth_text = "superpolynomial" if superpolynomial else "not superpolynomial"
    return INDETERMINATE, f"{probe}; {slope_text} ({growth_text}) with delta trend {delta_trend}"


def classify(
    family: str,
    config: Optional[Mapping[str, Any]] = None,
    seed: int = 0,
    samples: Optional[int] = None,
) -> ClassificationVerdict:
    """
    Run the three probes for a family and label it

    Args:
        family: Family spec accepted by parse_family
        config: Overrides of the family defaults (R, N, hyper_R, fit_window, sigmas)
        seed: Seed for the hyperbolicity samples
        samples: Vertices per hyperbolicity rung

    Returns:
        ClassificationVerdict with the evidence bundle
    """
    oracle = parse_family(family)
    settings = family_defaults(family)
    settings.update({k: v for k, v in (config or {}).items() if v is not None})
    R, N, hyper_R = int(settings["R"]), int(settings["N"]), int(settings["hyper_R"])
    sigmas = [int(s) for s in settings["sigmas"]]
    evidence: Dict[str, Any] = {}

    wide_counts = None
    try:
        sweep = sigma_sweep(oracle, default_axis(oracle), sigmas, R // 3, R)
        wide_counts = dict(zip(sigmas, sweep.wide_counts))
        evidence["ubq"] = {
            "R": R,
            "D": R // 3,
            "wide_counts": {str(s): k for s, k in wide_counts.items()},
            "verdicts": [r.verdict for r in sweep.reports],
        }
    except LabError as e:
        logger.warning("%s: UBQ sweep unavailable (%s)", oracle.family, e)
        evidence["ubq"] = {"R": R, "unavailable": str(e)}

    table = growth_table(oracle, N, window=tuple(settings["fit_window"]))
    fit = table.fit
    evidence["growth"] = {"N": N, "attained": table.attained, "fit": fit.to_dict() if fit else None}

    ball = materialize_ball(oracle, oracle.base, hyper_R)
    kwargs = {"seed": seed} if samples is None else {"seed": seed, "sample_count": samples}
    hyper = hyperbolicity_estimate(ball, **kwargs)
    evidence["hyperbolicity"] = hyper.to_dict()

    label, explanation = decide(
        wide_counts,
        fit.slope if fit else None,
        bool(fit and fit.superpolynomial),
        hyper.trend,
    )
    logger.info("%s classified as %s: %s", oracle.family, label, explanation)
    return ClassificationVerdict(oracle.family, label, explanation, evidence)
