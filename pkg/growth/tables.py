"""
Growth tables, exponent fits and the inverse growth function
"""
import logging
import math
from bisect import bisect_right
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
import pandas as pd
from sklearn.linear_model import LinearRegression

from config.settings import get_ball_budget
from graphs.errors import TableExhaustedError
from graphs.oracles import GraphOracle

logger = logging.getLogger(__name__)

SUPERPOLY_RATIO = 1.75


@dataclass(frozen=True)
class ExponentFit:
    window: Tuple[int, int]
    slope: float
    intercept: float
    residual: float
    superpolynomial: bool
    tail_ratios: Tuple[float, ...] = ()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "window": list(self.window),
            "slope": round(self.slope, 6),
            "intercept": round(self.intercept, 6),
            "residual": round(self.residual, 6),
            "superpolynomial": self.superpolynomial,
            "tail_ratios": [round(r, 6) for r in self.tail_ratios],
        }


@dataclass
class GrowthTable:
    """
    Vertex counts of balls around the base vertex, values[n] = |B(base, n)|.

    ``requested`` is the depth asked for; when the vertex budget ran out
    the table stops at ``attained`` and ``complete`` is False.
    """

    family: str
    values: List[int]
    requested: int
    fit: Optional[ExponentFit] = None
    warnings: List[str] = field(default_factory=list)

    @property
    def attained(self) -> int:
        return len(self.values) - 1

    @property
    def complete(self) -> bool:
        return self.attained >= self.requested

    @property
    def strictly_increasing(self) -> bool:
        return all(a < b for a, b in zip(self.values, self.values[1:]))

    def __getitem__(self, n: int) -> int:
        return self.values[n]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"n": range(len(self.values)), "count": self.values})

    def to_dict(self) -> Dict[str, Any]:
        return {
            "family": self.family,
            "requested": self.requested,
            "attained": self.attained,
            "complete": self.complete,
            "values": list(self.values),
            "fit": self.fit.to_dict() if self.fit else None,
            "warnings": list(self.warnings),
        }


def _shell_counts(oracle: GraphOracle, N: int, budget: int) -> Tuple[List[int], bool]:
    """Breadth-first shell sizes up to N; stops at the last complete shell when the budget is hit."""
    base = oracle.base
    seen = {base}
    frontier = deque([base])
    shells = [1]
    for n in range(1, N + 1):
        nxt = deque()
        for v in frontier:
            for w in oracle.neighbors_within(v, N):
                if w not in seen:
                    if len(seen) >= budget:
                        return shells, False
                    seen.add(w)
                    nxt.append(w)
        shells.append(len(nxt))
        frontier = nxt
    return shells, True


def fit_exponent(values: List[int], window: Tuple[int, int]) -> Optional[ExponentFit]:
    """
    Least-squares slope of log G(n) against log n over the window

    The super-polynomial flag is raised when every ratio G(n+1)/G(n) in the
    second half of the window is at least 1.75.

    Returns:
        ExponentFit, or None when the window holds fewer than two points
    """
    n1 = max(1, window[0])
    n2 = min(window[1], len(values) - 1)
    if n2 - n1 < 1:
        return None
    ns = np.arange(n1, n2 + 1)
    X = np.log(ns).reshape(-1, 1)
    y = np.log(np.asarray(values[n1:n2 + 1], dtype=float))
    model = LinearRegression().fit(X, y)
    residual = float(np.sqrt(np.mean((model.predict(X) - y) ** 2)))
    half = (n1 + n2) // 2
    ratios = tuple(values[n + 1] / values[n] for n in range(half, n2))
    superpolynomial = bool(ratios) and min(ratios) >= SUPERPOLY_RATIO
    return ExponentFit((n1, n2), float(model.coef_[0]), float(model.intercept_), residual, superpolynomial, ratios)


def growth_table(
    oracle: GraphOracle,
    N: int,
    window: Optional[Tuple[int, int]] = None,
    budget: Optional[int] = None,
) -> GrowthTable:
    """
    Exact ball sizes |B(base, n)| for n = 0..N

    Args:
        oracle: Family oracle
        N: Largest radius
        window: Fit window (defaults to [max(1, N // 4), N])
        budget: Vertex cap; defaults to COARSE_PLANE_BUDGET

    Returns:
        GrowthTable; partial (complete=False) when the budget ran out
    """
    if N < 0:
        raise ValueError(f"N must be >= 0, got {N}")
    budget = get_ball_budget() if budget is None else budget
    shells, finished = _shell_counts(oracle, N, budget)
    values = list(np.cumsum(shells).tolist())
    table = GrowthTable(oracle.family, values, N)
    if not finished:
        msg = f"budget of {budget} vertices reached; table stops at n={table.attained}"
        table.warnings.append(msg)
        logger.warning("%s growth: %s", oracle.family, msg)
    if not table.strictly_increasing:
        table.warnings.append("growth stalls: the graph looks finite at this depth")
        logger.warning("%s growth table is not strictly increasing", oracle.family)
    window = window if window is not None else (max(1, N // 4), N)
    table.fit = fit_exponent(values, window)
    if table.fit is not None:
        logger.info(
            "%s growth to n=%d: slope %.3f over %s (superpolynomial=%s)",
            oracle.family, table.attained, table.fit.slope, table.fit.window, table.fit.superpolynomial,
        )
    return table


def inverse_growth_phi(table: GrowthTable, lam: int) -> int:
    """
    phi(lam) = min{n : G(n) > lam}

    Raises:
        TableExhaustedError: lam >= G(N) for the last tabulated N
    """
    if lam >= table.values[-1]:
        raise TableExhaustedError(
            f"phi({lam}) needs G(n) > {lam} but the {table.family} table ends at G({table.attained}) = {table.values[-1]}"
        )
    return bisect_right(table.values, lam)


def closed_form(family: str, n: int) -> Optional[int]:
    """Known ball sizes used as cross-checks; None for families without one."""
    if family == "z1":
        return 2 * n + 1
    if family == "z2":
        return 2 * n * n + 2 * n + 1
    if family.startswith("tree:"):
        k = int(family.split(":", 1)[1])
        if k == 2:
            return 2 * n + 1
        return 1 + k * ((k - 1) ** n - 1) // (k - 2)
    if family.startswith("free:"):
        r = int(family.split(":", 1)[1])
        k = 2 * r
        if k == 2:
            return 2 * n + 1
        return 1 + k * ((k - 1) ** n - 1) // (k - 2)
    return None


def log_log_points(table: GrowthTable) -> Tuple[List[float], List[float]]:
    ns = list(range(1, len(table.values)))
    return [math.log(n) for n in ns], [math.log(table.values[n]) for n in ns]
