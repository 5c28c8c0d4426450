import base64
import io
import logging
import os
from typing import Optional, Union

import matplotlib

matplotlib.use("Agg")  # headless
import matplotlib.pyplot as plt
import numpy as np
import seaborn as sns

from circles.jurisdiction import JurisdictionSweep
from growth.tables import GrowthTable, log_log_points

logger = logging.getLogger(__name__)

plt.style.use("seaborn-v0_8")
sns.set_palette("husl")


def _emit(fig, path: Optional[Union[str, os.PathLike]]) -> str:
    """Save to ``path`` and return it, or return a PNG data URI."""
    if path is not None:
        fig.savefig(path, format="png", dpi=150, bbox_inches="tight")
        plt.close(fig)
        logger.info("chart written to %s", path)
        return str(path)
    buf = io.BytesIO()
    fig.savefig(buf, format="png", dpi=150, bbox_inches="tight")
    buf.seek(0)
    plt.close(fig)
    return f"data:image/png;base64,{base64.b64encode(buf.getvalue()).decode()}"


def growth_chart(table: GrowthTable, path: Optional[Union[str, os.PathLike]] = None) -> str:
    """
    Log-log plot of |B(n)| with the fitted slope drawn over the fit window

    Returns:
        The file path written, a base64 data URI, or "" when the table has
        fewer than two radii
    """
    xs, ys = log_log_points(table)
    if not xs:
        return ""
    fig, ax = plt.subplots(figsize=(8, 6))
    ax.plot(xs, ys, marker="o", linewidth=1.5, markersize=4, label="log |B(n)|")
    fit = table.fit
    if fit is not None:
        lo, hi = fit.window
        fx = np.log(np.arange(lo, hi + 1))
        ax.plot(fx, fit.intercept + fit.slope * fx, linestyle="--", linewidth=2,
                label=f"slope {fit.slope:.3f}" + (" (superpolynomial)" if fit.superpolynomial else ""))
    ax.set_xlabel("log n")
    ax.set_ylabel("log |B(n)|")
    ax.set_title(f"Growth of {table.family}", fontsize=14, fontweight="bold")
    ax.legend()
    return _emit(fig, path)


def jurisdiction_chart(sweep: JurisdictionSweep, path: Optional[Union[str, os.PathLike]] = None) -> str:
    """Bar chart of max jurisdiction per loop-length bucket; empty buckets show as gaps."""
    if not sweep.rows:
        return ""
    df = sweep.to_frame()
    fig, ax = plt.subplots(figsize=(10, 6))
    sns.barplot(x="bucket", y="max_jur", data=df, ax=ax)
    for i, count in enumerate(df["count"]):
        ax.annotate(f"n={count}", (i, 0), ha="center", va="bottom", fontsize=9)
    ax.set_xlabel("loop length")
    ax.set_ylabel(f"max Jur (delta={sweep.delta})")
    ax.set_title(f"Jurisdiction of {sweep.family}: {sweep.trend}", fontsize=14, fontweight="bold")
    return _emit(fig, path)
