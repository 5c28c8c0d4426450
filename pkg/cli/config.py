from fractions import Fraction
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from graphs.oracles import parse_family

FORMATS = ("json", "csv", "dot")
# formats other than json each command can emit
EXTRA_FORMATS = {
    "growth": ("csv",),
    "jurisdiction": ("csv",),
    "ubq": ("dot",),
    "circles": ("dot",),
}
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")

DEFAULT_BUCKETS = [(8, 12), (13, 20), (21, 28), (29, 40)]


def parse_int_list(value) -> List[int]:
    if isinstance(value, (list, tuple)):
        return [int(v) for v in value]
    return [int(v) for v in str(value).replace(" ", "").split(",") if v]


def parse_range(text: str) -> Tuple[int, int]:
    lo, sep, hi = str(text).strip().partition("-")
    if not sep:
        raise ValueError(f"expected lo-hi, got {text!r}")
    lo, hi = int(lo), int(hi)
    if lo > hi or lo < 0:
        raise ValueError(f"bad range {text!r}")
    return lo, hi


class RunConfig(BaseModel):
    """Validated parameters of one CLI run; built before any computation starts."""

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    command: str
    family: str = "z2"
    sigma: Optional[List[int]] = None
    R: Optional[int] = None
    D: Optional[int] = None
    lam: Optional[str] = None
    c: str = "0"
    delta: int = 1
    N: Optional[int] = None
    seed: int = 0
    samples: Optional[int] = None
    budget: Optional[int] = None
    axis: Optional[str] = None
    buckets: Optional[List[Tuple[int, int]]] = None
    length: Optional[Tuple[int, int]] = None
    fixture: Optional[str] = None
    out: Optional[str] = None
    format: str = "json"
    plot: Optional[str] = None
    strict: bool = False
    no_meta: bool = False
    log_level: str = "INFO"

    @field_validator("family")
    @classmethod
    def _known_family(cls, v: str) -> str:
        try:
            parse_family(v)
        except OSError as e:
            raise ValueError(f"cannot read edge list: {e}")
        return v

    @field_validator("sigma", mode="before")
    @classmethod
    def _sigma_list(cls, v):
        if v is None:
            return None
        values = parse_int_list(v)
        if not values or min(values) < 0:
            raise ValueError("sigma must be a non-empty list of non-negative integers")
        return values

    @field_validator("buckets", mode="before")
    @classmethod
    def _bucket_list(cls, v):
        if v is None or isinstance(v, list):
            return v
        return [parse_range(part) for part in str(v).split(",") if part.strip()]

    @field_validator("length", mode="before")
    @classmethod
    def _length_range(cls, v):
        if v is None or isinstance(v, tuple):
            return v
        return parse_range(v)

    @field_validator("lam", "c", mode="before")
    @classmethod
    def _rational(cls, v) -> Optional[str]:
        if v is None:
            return None
        try:
            return str(Fraction(str(v)))
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"not a rational number: {v!r}")

    @field_validator("R", "N", "budget", "samples", "delta", "D")
    @classmethod
    def _non_negative(cls, v):
        if v is not None and v < 0:
            raise ValueError("must be >= 0")
        return v

    @field_validator("log_level")
    @classmethod
    def _level(cls, v: str) -> str:
        if v.upper() not in LOG_LEVELS:
            raise ValueError(f"log level must be one of {', '.join(LOG_LEVELS)}")
        return v.upper()

    @model_validator(mode="after")
    def _check(self) -> "RunConfig":
        if self.lam is not None and Fraction(self.lam) < 1:
            raise ValueError(f"lambda must be >= 1, got {self.lam}")
        if Fraction(self.c) < 0:
            raise ValueError(f"c must be >= 0, got {self.c}")
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {', '.join(FORMATS)}")
        if self.format != "json" and self.format not in EXTRA_FORMATS.get(self.command, ()):
            raise ValueError(f"{self.command} cannot write {self.format}")
        if self.format == "dot" and not self.out:
            raise ValueError("dot output needs --out")
        return self

    def echo(self) -> dict:
        """Config block for the report: set fields only, paths and logging left out."""
        skip = {"command", "out", "plot", "log_level", "no_meta", "strict"}
        data = self.model_dump(exclude_none=True, exclude=skip)
        if "lam" in data:
            data["lambda"] = data.pop("lam")
        if "buckets" in data:
            data["buckets"] = [list(b) for b in data["buckets"]]
        if "length" in data:
            data["length"] = list(data["length"])
        return data
