import logging
import os
from typing import List, Union

import pandas as pd

from circles.jurisdiction import JurisdictionSweep
from graphs.errors import MalformedInputError
from growth.tables import GrowthTable

logger = logging.getLogger(__name__)

GROWTH_COLUMNS = ["n", "count"]
JURISDICTION_COLUMNS = ["bucket", "count", "max_jur"]


def growth_csv(table: GrowthTable, path: Union[str, os.PathLike, None] = None) -> str:
    """Write (or return) the growth table as CSV with columns n, count."""
    text = table.to_frame().to_csv(index=False, lineterminator="\n")
    if path is not None:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        logger.info("growth table for %s written to %s", table.family, path)
    return text


def jurisdiction_csv(sweep: JurisdictionSweep, path: Union[str, os.PathLike, None] = None) -> str:
    """Write (or return) the sweep as CSV with columns bucket, count, max_jur."""
    text = sweep.to_frame().to_csv(index=False, lineterminator="\n")
    if path is not None:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        logger.info("jurisdiction sweep for %s written to %s", sweep.family, path)
    return text


def _read(source, columns: List[str]) -> pd.DataFrame:
    if not os.path.exists(source):
        raise FileNotFoundError(f"CSV not found at {source}")
    df = pd.read_csv(source)
    missing = [c for c in columns if c not in df.columns]
    if missing:
        raise MalformedInputError(f"{source}: missing columns {missing}")
    return df[columns]


def read_growth_csv(source, family: str = "edges") -> GrowthTable:
    """
    Load a growth table written by growth_csv

    Raises:
        MalformedInputError: columns missing, or n is not 0, 1, 2, ... in order
    """
    df = _read(source, GROWTH_COLUMNS)
    if df["n"].tolist() != list(range(len(df))):
        raise MalformedInputError(f"{source}: n must run 0..{len(df) - 1}")
    values = [int(v) for v in df["count"]]
    return GrowthTable(family, values, len(values) - 1)


def read_jurisdiction_csv(source) -> pd.DataFrame:
    df = _read(source, JURISDICTION_COLUMNS)
    df = df.astype({"bucket": str})
    return df
