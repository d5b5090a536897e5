"""Event-window returns, earnings surprises, and factor alignment.

Window conventions, all offsets in trading days relative to the event
day t (the call date, rolled forward to the next trading day when it
falls on a non-trading day, in which case the call is treated as
before-open on that day):

    AMC  close(t-1) -> close(t+h)
    BMO  close(t-1) -> close(t+h-1)

so the 1-day AMC window is close(t-1) -> close(t+1) and the 1-day BMO
window is close(t-1) -> close(t). Trading days are exactly the dates
present in the price series.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass, replace
from datetime import date
from typing import Sequence

import numpy as np
import pandas as pd

from .errors import DataError

__all__ = [
    "PriceSeries",
    "EventReturn",
    "SueRecord",
    "event_return",
    "event_return_detail",
    "event_windows",
    "compute_sue",
    "winsorize_sue",
    "percentile_nearest",
    "winsorize",
    "compound_monthly",
    "load_prices",
    "load_earnings",
    "load_factors_daily",
]


@dataclass(frozen=True)
class PriceSeries:
    """Adjusted closes for one ticker on strictly increasing dates."""

    ticker: str
    dates: tuple[date, ...]
    closes: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.dates) != len(self.closes):
            raise DataError(f"{self.ticker}: dates/closes length mismatch")
        for prev, cur in zip(self.dates, self.dates[1:]):
            if cur <= prev:
                raise DataError(
                    f"{self.ticker}: dates not strictly increasing at {cur}")
        for d, c in zip(self.dates, self.closes):
            if not (c > 0.0) or math.isnan(c):
                raise DataError(
                    f"{self.ticker}: non-positive close {c} on {d}")

    def __len__(self) -> int:
        return len(self.dates)

    def locate(self, day: date) -> int | None:
        """Index of the exact trading day, or None."""
        i = bisect_left(self.dates, day)
        if i < len(self.dates) and self.dates[i] == day:
            return i
        return None

    def next_trading_index(self, day: date) -> int | None:
        """Index of the first trading day >= day, or None past the end."""
        i = bisect_left(self.dates, day)
        return i if i < len(self.dates) else None


@dataclass(frozen=True)
class EventReturn:
    """Return windows of one call at the two headline horizons."""

    call_id: str
    r_1d: float
    r_5d: float
    window_start: date | None
    window_end_1d: date | None
    window_end_5d: date | None
    timing: str


def _window_indices(prices: PriceSeries, call_date: date, timing: str,
                    horizon: int) -> tuple[int, int] | str:
    """Resolve (start, end) indices or return a reason string."""
    if horizon < 1:
        raise ValueError(f"horizon must be >= 1, got {horizon}")
    if timing not in ("AMC", "BMO"):
        raise ValueError(f"timing must be 'AMC' or 'BMO', got {timing!r}")
    t = prices.locate(call_date)
    if t is None:
        # Non-trading call date: roll forward, treat as before-open.
        t = prices.next_trading_index(call_date)
        if t is None:
            return "call date beyond price history"
        timing = "BMO"
    start = t - 1
    end = t + horizon if timing == "AMC" else t + horizon - 1
    if start < 0:
        return "no pre-event close"
    if end >= len(prices):
        return "insufficient post-event history"
    return start, end


def event_return_detail(prices: PriceSeries, call_date: date, timing: str,
                        horizon: int) -> tuple[float, str | None]:
    """Window return plus a reason string when the value is missing."""
    resolved = _window_indices(prices, call_date, timing, horizon)
    if isinstance(resolved, str):
        return math.nan, resolved
    start, end = resolved
    return prices.closes[end] / prices.closes[start] - 1.0, None


def event_return(prices: PriceSeries, call_date: date, timing: str,
                 horizon: int) -> float:
    """Simple window return; NaN when the window cannot be resolved."""
    return event_return_detail(prices, call_date, timing, horizon)[0]


def event_windows(prices: PriceSeries, call_id: str, call_date: date,
                  timing: str) -> EventReturn:
    """The 1-day and 5-day windows of one call as a single record."""
    r1, _ = event_return_detail(prices, call_date, timing, 1)
    r5, _ = event_return_detail(prices, call_date, timing, 5)
    w1 = _window_indices(prices, call_date, timing, 1)
    w5 = _window_indices(prices, call_date, timing, 5)
    start = prices.dates[w1[0]] if isinstance(w1, tuple) else None
    end1 = prices.dates[w1[1]] if isinstance(w1, tuple) else None
    end5 = prices.dates[w5[1]] if isinstance(w5, tuple) else None
    return EventReturn(call_id=call_id, r_1d=r1, r_5d=r5, window_start=start,
                       window_end_1d=end1, window_end_5d=end5, timing=timing)


@dataclass(frozen=True)
class SueRecord:
    """Standardized unexpected earnings for one firm-quarter."""

    ticker: str
    fiscal_quarter: str
    surprise: float
    sigma: float
    sue_raw: float
    sue_winsorized: float
    n_history: int
    reason: str | None = None


def compute_sue(
    history: Sequence[tuple[float, float]],
    current: tuple[float, float],
    *,
    ticker: str = "",
    fiscal_quarter: str = "",
) -> SueRecord:
    """Surprise / expanding-window sigma of prior surprises.

    ``history`` is the chronologically ordered (actual, estimate) pairs
    strictly before the current quarter. Sigma is the sample (n-1)
    standard deviation over the full expanding window and requires at
    least four prior observations; fewer priors, or a degenerate sigma,
    yield a missing sue_raw with the reason recorded.
    """
    surprise = current[0] - current[1]
    n_history = len(history)
    if n_history < 4:
        return SueRecord(ticker=ticker, fiscal_quarter=fiscal_quarter,
                         surprise=surprise, sigma=math.nan, sue_raw=math.nan,
                         sue_winsorized=math.nan, n_history=n_history,
                         reason="insufficient history")
    prior = [a - e for a, e in history]
    mean = sum(prior) / n_history
    var = sum((s - mean) ** 2 for s in prior) / (n_history - 1)
    sigma = math.sqrt(var)
    if sigma == 0.0:
        return SueRecord(ticker=ticker, fiscal_quarter=fiscal_quarter,
                         surprise=surprise, sigma=0.0, sue_raw=math.nan,
                         sue_winsorized=math.nan, n_history=n_history,
                         reason="degenerate variance")
    return SueRecord(ticker=ticker, fiscal_quarter=fiscal_quarter,
                     surprise=surprise, sigma=sigma,
                     sue_raw=surprise / sigma, sue_winsorized=math.nan,
                     n_history=n_history)


def percentile_nearest(sorted_values: Sequence[float], pct: float) -> float:
    """The order statistic closest to the requested percentile rank.

    rank = pct/100 * (n-1), rounded half-to-even to an index. Selecting
    an actual order statistic (rather than interpolating between two)
    makes winsorization exactly idempotent.
    """
    n = len(sorted_values)
    if n == 0:
        raise ValueError("percentile of empty list")
    idx = int(round(pct / 100.0 * (n - 1)))
    return sorted_values[min(max(idx, 0), n - 1)]


def winsorize(values: Sequence[float], lower_pct: float = 1.0,
              upper_pct: float = 99.0) -> np.ndarray:
    """Clip values to [P_lower, P_upper] of their own distribution.

    Order and length are preserved; NaNs pass through untouched and are
    ignored when locating the percentiles. Idempotent by construction.
    """
    arr = np.asarray(values, dtype=float)
    finite = np.sort(arr[np.isfinite(arr)])
    if finite.size == 0:
        return arr.copy()
    lo = percentile_nearest(finite, lower_pct)
    hi = percentile_nearest(finite, upper_pct)
    out = arr.copy()
    mask = np.isfinite(arr)
    out[mask] = np.clip(arr[mask], lo, hi)
    return out


def winsorize_sue(records: Sequence[SueRecord], lower_pct: float = 1.0,
                  upper_pct: float = 99.0) -> list[SueRecord]:
    """Fill sue_winsorized over the pooled cross-section of sue_raw."""
    raw = [r.sue_raw for r in records]
    clipped = winsorize(raw, lower_pct, upper_pct)
    return [replace(r, sue_winsorized=c) for r, c in zip(records, clipped)]


FACTOR_COLUMNS = ("MktRF", "SMB", "HML", "RMW", "CMA", "RF")


def compound_monthly(daily: pd.DataFrame) -> pd.DataFrame:
    """Compound daily factor rows to calendar months.

    Expects a ``date`` column (ISO strings or datetimes) plus value
    columns in decimals; each month's value per column is the product of
    (1 + daily) minus 1. Months with no rows are simply absent. Duplicate
    dates are an error.
    """
    if "date" not in daily.columns:
        raise DataError("daily factor frame needs a 'date' column")
    if daily["date"].duplicated().any():
        dupe = daily.loc[daily["date"].duplicated(), "date"].iloc[0]
        raise DataError(f"duplicate factor date {dupe}")
    frame = daily.sort_values("date", kind="mergesort")
    months = pd.to_datetime(frame["date"]).dt.strftime("%Y-%m")
    value_cols = [c for c in frame.columns if c != "date"]
    grouped = (frame[value_cols].astype(float)
               .add(1.0)
               .groupby(months.to_numpy())
               .prod()
               .sub(1.0))
    grouped.index.name = "month"
    return grouped.sort_index()


def _parse_date(token: str) -> date:
    token = str(token).strip()
    if len(token) == 8 and token.isdigit():
        return date(int(token[:4]), int(token[4:6]), int(token[6:8]))
    return date.fromisoformat(token)


def load_prices(path: str) -> dict[str, PriceSeries]:
    """Read {ticker, date, close} rows into per-ticker series."""
    frame = pd.read_csv(path, dtype={"ticker": str})
    for col in ("ticker", "date", "close"):
        if col not in frame.columns:
            raise DataError(f"{path}: prices file missing column {col!r}")
    out: dict[str, PriceSeries] = {}
    for ticker, block in frame.groupby("ticker", sort=True):
        # parse before sorting so the two accepted date formats can mix
        rows = sorted((_parse_date(d), float(c))
                      for d, c in zip(block["date"], block["close"]))
        out[str(ticker)] = PriceSeries(
            ticker=str(ticker),
            dates=tuple(r[0] for r in rows),
            closes=tuple(r[1] for r in rows))
    return out


def load_earnings(path: str) -> pd.DataFrame:
    """Read the quarterly earnings file, sorted per ticker by quarter."""
    frame = pd.read_csv(path, dtype={"ticker": str})
    required = ("ticker", "fiscal_quarter_end", "report_date",
                "eps_actual", "eps_estimate")
    for col in required:
        if col not in frame.columns:
            raise DataError(f"{path}: earnings file missing column {col!r}")
    return frame.sort_values(["ticker", "fiscal_quarter_end"],
                             kind="mergesort").reset_index(drop=True)


def load_factors_daily(path: str) -> pd.DataFrame:
    """Read the daily factor file; values arrive in percent and are
    converted to decimals here (the standard distribution convention)."""
    frame = pd.read_csv(path)
    if "date" not in frame.columns:
        raise DataError(f"{path}: factors file missing column 'date'")
    missing = [c for c in FACTOR_COLUMNS if c not in frame.columns]
    if missing:
        raise DataError(f"{path}: factors file missing columns {missing}")
    out = pd.DataFrame({"date": [_parse_date(d).isoformat()
                                 for d in frame["date"]]})
    for col in FACTOR_COLUMNS:
        out[col] = frame[col].astype(float) / 100.0
    return out
