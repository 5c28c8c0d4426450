"""
Configuration module for the coarse-plane lab
"""
from .settings import (
    BUDGET_ENV_VAR,
    DEFAULT_BALL_BUDGET,
    configure_logging,
    family_defaults,
    get_ball_budget,
    load_config_file,
    set_ball_budget_env,
)

__all__ = [
    "BUDGET_ENV_VAR",
    "DEFAULT_BALL_BUDGET",
    "configure_logging",
    "family_defaults",
    "get_ball_budget",
    "load_config_file",
    "set_ball_budget_env",
]
