"""The call-level observation table every statistical procedure consumes.

One row per earnings call. Columns follow a fixed naming scheme:

    identity   call_id, ticker, event_date (ISO), event_month (YYYY-MM),
               timing ("AMC"/"BMO")
    returns    ret_1d, ret_5d, ... (``ret_{h}d`` per horizon h)
    signals    m1..m5, lm_m1..lm_m5, sue, and per-role means
               tau_analyst / tau_cfo / tau_executive / tau_other
               (lm_tau_* for the dictionary variants)

Dates are kept as ISO strings so the table round-trips through CSV with
byte-stable formatting.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import pandas as pd

from .errors import DataError

__all__ = ["Panel", "IDENTITY_COLUMNS", "return_column", "CSV_FLOAT_FORMAT"]

IDENTITY_COLUMNS = ("call_id", "ticker", "event_date", "event_month", "timing")

#: Pinned CSV float formatting; part of the byte-stability contract.
CSV_FLOAT_FORMAT = "%.12g"


def return_column(horizon: int) -> str:
    return f"ret_{horizon}d"


@dataclass
class Panel:
    """Thin validated wrapper around the observation DataFrame."""

    frame: pd.DataFrame

    def __post_init__(self) -> None:
        missing = [c for c in IDENTITY_COLUMNS if c not in self.frame.columns]
        if missing:
            raise DataError(f"panel is missing identity columns: {missing}")
        dupes = self.frame.duplicated(subset=["ticker", "call_id"])
        if bool(dupes.any()):
            first = self.frame.loc[dupes, ["ticker", "call_id"]].iloc[0]
            raise DataError(
                "panel keys must be unique; duplicate (ticker, call_id) = "
                f"({first['ticker']}, {first['call_id']})")

    def __len__(self) -> int:
        return len(self.frame)

    @property
    def months(self) -> list[str]:
        return sorted(self.frame["event_month"].unique())

    def month_groups(self) -> Iterable[tuple[str, pd.DataFrame]]:
        """Monthly cross-sections in chronological order."""
        grouped = self.frame.groupby("event_month", sort=True)
        for month, block in grouped:
            yield str(month), block

    def canonical(self) -> "Panel":
        """Deterministic row order: (event_date, ticker, call_id)."""
        frame = self.frame.sort_values(
            ["event_date", "ticker", "call_id"], kind="mergesort")
        return Panel(frame.reset_index(drop=True))

    def restrict_before(self, cutoff_iso: str) -> "Panel":
        """Rows dated strictly before the ISO cutoff date."""
        mask = self.frame["event_date"] < cutoff_iso
        return Panel(self.frame.loc[mask].reset_index(drop=True))

    def to_csv(self, path: str) -> None:
        self.frame.to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT,
                          lineterminator="\n")

    @classmethod
    def from_csv(cls, path: str) -> "Panel":
        frame = pd.read_csv(
            path,
            dtype={"call_id": str, "ticker": str, "event_date": str,
                   "event_month": str, "timing": str},
        )
        return cls(frame)
