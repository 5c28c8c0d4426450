"""
Lab settings: ball budget, run-config files, family defaults, logging
"""
import logging
import os
from typing import Any, Dict

BUDGET_ENV_VAR = "COARSE_PLANE_BUDGET"
DEFAULT_BALL_BUDGET = 20_000_000

LOG_FORMAT = "[%(levelname)s] %(name)s: %(message)s"

# Desk-scale defaults used by the classification pipeline and the CLI when a
# flag is left unset. Radii keep every probe within a few seconds.
FAMILY_DEFAULTS: Dict[str, Dict[str, Any]] = {
    "z1": {"R": 30, "N": 30, "hyper_R": 30, "fit_window": (8, 30), "sigmas": [1]},
    "z2": {"R": 60, "N": 40, "hyper_R": 40, "fit_window": (10, 40), "sigmas": [1, 2]},
    "z3": {"R": 25, "N": 15, "hyper_R": 16, "fit_window": (4, 15), "sigmas": [2]},
    "zd": {"R": 12, "N": 8, "hyper_R": 10, "fit_window": (2, 8), "sigmas": [1]},
    "heisenberg": {"R": 10, "N": 10, "hyper_R": 10, "fit_window": (4, 10), "sigmas": [1]},
    "tree": {"R": 12, "N": 15, "hyper_R": 12, "fit_window": (4, 15), "sigmas": [1]},
    "free": {"R": 8, "N": 8, "hyper_R": 8, "fit_window": (2, 8), "sigmas": [1]},
    "tiling": {"R": 6, "N": 6, "hyper_R": 6, "fit_window": (2, 6), "sigmas": [1]},
    "edges": {"R": 10, "N": 10, "hyper_R": 10, "fit_window": (2, 10), "sigmas": [1]},
}


def get_ball_budget() -> int:
    """
    Get the per-ball vertex budget from the environment

    Returns:
        Maximum number of vertices a materialized ball may hold
    """
    raw = os.getenv(BUDGET_ENV_VAR)
    if raw is None or not raw.strip():
        return DEFAULT_BALL_BUDGET
    try:
        budget = int(raw.strip().replace("_", ""))
    except ValueError:
        raise ValueError(f"{BUDGET_ENV_VAR} must be a positive integer, got {raw!r}")
    if budget <= 0:
        raise ValueError(f"{BUDGET_ENV_VAR} must be a positive integer, got {raw!r}")
    return budget


def set_ball_budget_env(budget: int):
    """
    Helper function to export the ball budget for the current process

    Args:
        budget: Maximum vertex count per materialized ball
    """
    if budget <= 0:
        raise ValueError(f"budget must be positive, got {budget}")
    os.environ[BUDGET_ENV_VAR] = str(budget)
    logging.getLogger(__name__).info("%s set to %d", BUDGET_ENV_VAR, budget)


def load_config_file(path: str) -> Dict[str, str]:
    """
    Read a flat key=value run-config file

    Args:
        path: File path; '#' starts a comment, blank lines are skipped

    Returns:
        Mapping of normalised keys (dashes become underscores) to raw strings
    """
    values: Dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.split("#", 1)[0].strip()
            if not text:
                continue
            if "=" not in text:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {text!r}")
            key, value = text.split("=", 1)
            key = key.strip().lstrip("-").replace("-", "_")
            if not key:
                raise ValueError(f"{path}:{lineno}: empty key")
            values[key] = value.strip()
    return values


def family_defaults(family: str) -> Dict[str, Any]:
    """Defaults for a family spec such as 'z2', 't3', 'tiling:4,5'."""
    name = family.strip().lower()
    if name in FAMILY_DEFAULTS:
        return dict(FAMILY_DEFAULTS[name])
    if name.startswith("z") and name[1:].isdigit():
        return dict(FAMILY_DEFAULTS["zd"])
    if name in ("h3", "heis"):
        return dict(FAMILY_DEFAULTS["heisenberg"])
    if name.startswith("tree:") or (name.startswith("t") and name[1:].isdigit()):
        return dict(FAMILY_DEFAULTS["tree"])
    if name.startswith("free"):
        return dict(FAMILY_DEFAULTS["free"])
    if name.startswith("tiling:") or name.startswith("{"):
        return dict(FAMILY_DEFAULTS["tiling"])
    if name.startswith("edges:"):
        return dict(FAMILY_DEFAULTS["edges"])
    raise ValueError(f"unknown family {family!r}")


def configure_logging(level: str = "INFO"):
    """Route every module logger through one bracketed-level handler."""
    numeric = getattr(logging, str(level).upper(), None)
    if not isinstance(numeric, int):
        raise ValueError(f"unknown log level {level!r}")
    logging.basicConfig(level=numeric, format=LOG_FORMAT, force=True)
