"""Run configuration: one flat record, file plus flag overrides.

A run is parameterized by a small JSON object; command-line flags
override individual fields. The canonical serialization of the merged
record is hashed into every output manifest so a result can always be
traced back to the exact settings that produced it.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
from dataclasses import dataclass
from datetime import date
from pathlib import Path
from typing import Any, Mapping

from .errors import ConfigError

__all__ = ["RunConfig", "load_config", "config_hash"]


@dataclass(frozen=True)
class RunConfig:
    """Settings shared across pipeline stages.

    Attributes
    ----------
    training_cutoff : str
        ISO date; section-weight fitting may only see events strictly
        before this day.
    winsor_lower, winsor_upper : float
        Pooled percentile clips applied to the earnings-surprise scale.
    min_month_obs : int
        Cross-sections smaller than this are skipped in monthly stats.
    extreme_threshold : float
        |net| cutoff for the extreme-fraction aggregation.
    horizons : tuple of int
        Event-window lengths (trading days) materialized at ingest.
    benchmark : str
        Ticker used as the abnormal-return benchmark.
    extra_analyst_firms : tuple of str
        Additions to the built-in sell-side employer list used when
        classifying speakers.
    """

    training_cutoff: str = "2023-01-01"
    winsor_lower: float = 1.0
    winsor_upper: float = 99.0
    min_month_obs: int = 20
    extreme_threshold: float = 0.5
    horizons: tuple[int, ...] = tuple(range(1, 22))
    benchmark: str = "MKT"
    extra_analyst_firms: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        try:
            date.fromisoformat(self.training_cutoff)
        except ValueError as exc:
            raise ConfigError(
                f"training_cutoff must be an ISO date, got "
                f"{self.training_cutoff!r}") from exc
        if not 0.0 <= self.winsor_lower < self.winsor_upper <= 100.0:
            raise ConfigError(
                f"winsor percentiles must satisfy 0 <= lower < upper <= "
                f"100, got ({self.winsor_lower}, {self.winsor_upper})")
        if self.min_month_obs < 2:
            raise ConfigError(
                f"min_month_obs must be >= 2, got {self.min_month_obs}")
        if not 0.0 < self.extreme_threshold <= 1.0:
            raise ConfigError(
                f"extreme_threshold must be in (0, 1], got "
                f"{self.extreme_threshold}")
        if not self.horizons or any(
                not isinstance(h, int) or h < 1 for h in self.horizons):
            raise ConfigError("horizons must be a nonempty tuple of ints >= 1")
        if len(set(self.horizons)) != len(self.horizons):
            raise ConfigError("horizons must not repeat")
        if not self.benchmark:
            raise ConfigError("benchmark ticker must be nonempty")

    @property
    def cutoff_date(self) -> date:
        return date.fromisoformat(self.training_cutoff)

    def replace(self, **overrides: Any) -> "RunConfig":
        """New config with the given fields replaced; None values are
        ignored so absent CLI flags fall through to the file values."""
        live = {k: v for k, v in overrides.items() if v is not None}
        unknown = set(live) - {f.name for f in dataclasses.fields(self)}
        if unknown:
            raise ConfigError(
                f"unknown config fields: {sorted(unknown)}")
        return dataclasses.replace(self, **live)

    def to_dict(self) -> dict[str, Any]:
        out = dataclasses.asdict(self)
        out["horizons"] = list(self.horizons)
        out["extra_analyst_firms"] = list(self.extra_analyst_firms)
        return out


def load_config(path: str | Path | None) -> RunConfig:
    """Read a JSON config file; unknown keys are an error, absent keys
    keep their defaults. ``None`` returns the all-defaults config."""
    if path is None:
        return RunConfig()
    path = Path(path)
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise ConfigError(f"config file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file is not valid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise ConfigError("config file must hold a JSON object")
    known = {f.name for f in dataclasses.fields(RunConfig)}
    unknown = set(payload) - known
    if unknown:
        raise ConfigError(f"unknown config fields: {sorted(unknown)}")
    if "horizons" in payload:
        value = payload["horizons"]
        if not isinstance(value, list):
            raise ConfigError("horizons must be a JSON array of ints")
        payload["horizons"] = tuple(value)
    if "extra_analyst_firms" in payload:
        value = payload["extra_analyst_firms"]
        if not isinstance(value, list) or not all(
                isinstance(v, str) for v in value):
            raise ConfigError(
                "extra_analyst_firms must be a JSON array of strings")
        payload["extra_analyst_firms"] = tuple(value)
    try:
        return RunConfig(**payload)
    except TypeError as exc:
        raise ConfigError(f"bad config value: {exc}") from exc


def config_hash(config: RunConfig) -> str:
    """SHA-256 of the canonical JSON serialization."""
    canonical = json.dumps(config.to_dict(), sort_keys=True,
                           separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()
