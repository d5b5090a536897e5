"""The statistical engine.

Rank correlation, monthly IC series, Fama-MacBeth cross-sections, factor
time-series alpha, quintile and double sorts, cumulative abnormal return
paths, and horizon-decay curves. Everything is deterministic given
identical input bytes: ties break on stable keys, reductions run in a
fixed order, and there is no unseeded randomness anywhere.

Two different Newey-West bandwidth rules coexist on purpose: monthly IC
and Fama-MacBeth mean series use min{3, floor(0.75 * M^(1/3))}, while
factor regressions use floor(0.75 * T^(1/3)) with no cap. The two rules
come from different procedures and must not be conflated.
"""

from __future__ import annotations

import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from datetime import date
from typing import Callable, Iterable, Mapping, Sequence, TypeVar

import numpy as np
import pandas as pd
from scipy import linalg as sla
from scipy.stats import rankdata

from .errors import (AlignmentError, ConfigError, DataError, DegenerateError,
                     SingularityError)
from .market import PriceSeries
from .panel import Panel, return_column

__all__ = [
    "spearman",
    "nw_bandwidth_ic",
    "nw_bandwidth_regression",
    "NwMean",
    "newey_west_mean",
    "ICSeries",
    "monthly_ic",
    "FmResult",
    "fama_macbeth",
    "OlsResult",
    "ols",
    "Ff5Result",
    "ff5_alpha",
    "FACTOR_NAMES",
    "assign_buckets",
    "BucketStat",
    "SortResult",
    "quintile_sort",
    "DoubleSortResult",
    "double_sort",
    "portfolio_monthly_returns",
    "CarResult",
    "car_profile",
    "DecayResult",
    "decay_profile",
]

log = logging.getLogger(__name__)

_T = TypeVar("_T")
_R = TypeVar("_R")

FACTOR_NAMES = ("MktRF", "SMB", "HML", "RMW", "CMA")


def _thread_count() -> int:
    raw = os.environ.get("CALLTONE_THREADS")
    if not raw:
        return 1
    try:
        n = int(raw)
    except ValueError as exc:
        raise ConfigError(
            f"CALLTONE_THREADS must be an integer, got {raw!r}") from exc
    if n < 1:
        raise ConfigError(f"CALLTONE_THREADS must be >= 1, got {n}")
    return n


def _ordered_map(fn: Callable[[_T], _R], items: Iterable[_T]) -> list[_R]:
    """Map over independent work units, preserving input order.

    Honors the CALLTONE_THREADS override; results combine in input order
    either way, so threading never changes output bytes.
    """
    pending = list(items)
    workers = _thread_count()
    if workers <= 1 or len(pending) < 2:
        return [fn(item) for item in pending]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, pending))


def _normal_p(t: float) -> float:
    """Two-sided p-value under the normal approximation."""
    if math.isnan(t):
        return math.nan
    if math.isinf(t):
        return 0.0
    return math.erfc(abs(t) / math.sqrt(2.0))


def spearman(x: Sequence[float], y: Sequence[float]) -> float:
    """Rank correlation: Pearson correlation of average ranks.

    Pairs with a missing side are dropped listwise; ties receive average
    ranks. Returns NaN when fewer than two complete pairs remain or when
    either rank vector has zero variance.
    """
    ax = np.asarray(x, dtype=float)
    ay = np.asarray(y, dtype=float)
    if ax.shape != ay.shape:
        raise ValueError("x and y must have equal length")
    mask = np.isfinite(ax) & np.isfinite(ay)
    ax, ay = ax[mask], ay[mask]
    if ax.size < 2:
        return math.nan
    rx = rankdata(ax, method="average")
    ry = rankdata(ay, method="average")
    dx = rx - rx.mean()
    dy = ry - ry.mean()
    sxx = float(dx @ dx)
    syy = float(dy @ dy)
    if sxx == 0.0 or syy == 0.0:
        return math.nan
    return float((dx @ dy) / math.sqrt(sxx * syy))


def nw_bandwidth_ic(n_months: int) -> int:
    """Lag rule for monthly mean series: min{3, floor(0.75 * M^(1/3))}."""
    return min(3, math.floor(0.75 * n_months ** (1.0 / 3.0)))


def nw_bandwidth_regression(n_obs: int) -> int:
    """Lag rule for time-series regressions: floor(0.75 * T^(1/3)),
    deliberately uncapped."""
    return math.floor(0.75 * n_obs ** (1.0 / 3.0))


@dataclass(frozen=True)
class NwMean:
    """HAC-robust inference on the mean of a (possibly autocorrelated)
    series."""

    mean: float
    t_stat: float
    p_value: float
    lag: int
    n: int
    degenerate: bool = False


def newey_west_mean(series: Sequence[float],
                    lag: int | None = None) -> NwMean:
    """Bartlett-kernel HAC mean test.

    Var(mean) = (gamma_0 + 2 * sum_{l<=L} (1 - l/(L+1)) * gamma_l)/(M-1),
    with autocovariances computed around the sample mean. The M/(M-1)
    small-sample factor makes the L = 0 case coincide exactly with the
    classical one-sample t. A zero-variance series yields an infinite-t
    sentinel with the ``degenerate`` flag set, never a silent division.
    """
    arr = np.asarray(series, dtype=float)
    m = arr.size
    if m < 2:
        raise DegenerateError(f"need at least 2 observations, got {m}")
    if not np.all(np.isfinite(arr)):
        raise DataError("newey_west_mean requires a fully finite series")
    if lag is None:
        lag = nw_bandwidth_ic(m)
    if lag < 0 or lag >= m:
        raise ValueError(f"lag must be in [0, {m - 1}], got {lag}")
    mean = float(arr.mean())
    resid = arr - mean
    gamma0 = float(resid @ resid) / m
    s = gamma0
    for ell in range(1, lag + 1):
        weight = 1.0 - ell / (lag + 1.0)
        gamma = float(resid[ell:] @ resid[:-ell]) / m
        s += 2.0 * weight * gamma
    if s <= 0.0:
        t = math.inf if mean > 0 else (-math.inf if mean < 0 else math.nan)
        return NwMean(mean=mean, t_stat=t, p_value=_normal_p(t), lag=lag,
                      n=m, degenerate=True)
    var_mean = s / (m - 1)
    t = mean / math.sqrt(var_mean)
    return NwMean(mean=mean, t_stat=t, p_value=_normal_p(t), lag=lag, n=m)


@dataclass(frozen=True)
class ICSeries:
    """Monthly rank-correlation series with HAC inference on its mean."""

    signal: str
    horizon: int
    months: tuple[str, ...]
    ics: tuple[float, ...]
    ns: tuple[int, ...]
    mean_ic: float
    t_nw: float
    p_value: float
    lag: int

    @property
    def n_months(self) -> int:
        return len(self.months)


def monthly_ic(panel: Panel, signal: str, horizon: int = 1,
               *, min_obs: int = 20) -> ICSeries:
    """Per-month Spearman IC over months with at least ``min_obs``
    complete observations, then a Newey-West mean test on the series."""
    ret_col = return_column(horizon)
    if signal not in panel.frame.columns:
        raise ConfigError(f"panel has no signal column {signal!r}")
    if ret_col not in panel.frame.columns:
        raise ConfigError(f"panel has no return column {ret_col!r}")

    groups = list(panel.month_groups())

    def one_month(item: tuple[str, pd.DataFrame]):
        month, block = item
        x = block[signal].to_numpy(dtype=float)
        y = block[ret_col].to_numpy(dtype=float)
        mask = np.isfinite(x) & np.isfinite(y)
        n = int(mask.sum())
        if n < min_obs:
            return None
        ic = spearman(x[mask], y[mask])
        if math.isnan(ic):
            log.info("monthly_ic: %s skipped (zero rank variance)", month)
            return None
        return month, ic, n

    rows = [r for r in _ordered_map(one_month, groups) if r is not None]
    if not rows:
        raise DegenerateError(
            f"no qualifying months for signal {signal!r} at horizon "
            f"{horizon} (min_obs={min_obs})")
    months = tuple(r[0] for r in rows)
    ics = tuple(r[1] for r in rows)
    ns = tuple(r[2] for r in rows)
    if len(ics) == 1:
        return ICSeries(signal=signal, horizon=horizon, months=months,
                        ics=ics, ns=ns, mean_ic=ics[0], t_nw=math.nan,
                        p_value=math.nan, lag=0)
    nw = newey_west_mean(ics)
    return ICSeries(signal=signal, horizon=horizon, months=months, ics=ics,
                    ns=ns, mean_ic=nw.mean, t_nw=nw.t_stat,
                    p_value=nw.p_value, lag=nw.lag)


@dataclass(frozen=True)
class OlsResult:
    coefficients: np.ndarray
    residuals: np.ndarray
    r_squared: float


def ols(y: Sequence[float], X: np.ndarray,
        column_names: Sequence[str] | None = None) -> OlsResult:
    """Least squares via QR with column pivoting.

    The design must include its own intercept column. Rank deficiency
    raises SingularityError naming the offending column.
    """
    yv = np.asarray(y, dtype=float)
    Xm = np.asarray(X, dtype=float)
    if Xm.ndim != 2:
        raise ValueError("X must be 2-dimensional")
    n, k = Xm.shape
    names = (list(column_names) if column_names is not None
             else [f"x{j}" for j in range(k)])
    if len(names) != k:
        raise ValueError("column_names length must match design width")
    if n < k:
        raise SingularityError(
            f"design has {n} rows but {k} columns; system underdetermined")
    q, r, piv = sla.qr(Xm, mode="economic", pivoting=True)
    diag = np.abs(np.diag(r))
    tol = max(n, k) * np.finfo(float).eps * (diag[0] if diag.size else 0.0)
    deficient = np.nonzero(diag <= tol)[0]
    if diag.size == 0 or deficient.size:
        j = int(piv[deficient[0]]) if deficient.size else 0
        raise SingularityError(
            f"design matrix is rank deficient; offending column "
            f"{names[j]!r}")
    b_piv = sla.solve_triangular(r, q.T @ yv)
    coef = np.empty(k, dtype=float)
    coef[piv] = b_piv
    resid = yv - Xm @ coef
    ssr = float(resid @ resid)
    centered = yv - yv.mean()
    sst = float(centered @ centered)
    if sst > 0.0:
        r2 = 1.0 - ssr / sst
    else:
        r2 = 1.0 if ssr <= 1e-30 else 0.0
    r2 = min(1.0, max(0.0, r2))
    return OlsResult(coefficients=coef, residuals=resid, r_squared=r2)


@dataclass(frozen=True)
class FmEstimate:
    gamma_bar: float
    t_nw: float
    p_value: float


@dataclass(frozen=True)
class FmResult:
    """Time-series averages of monthly cross-sectional slopes."""

    regressors: tuple[str, ...]
    estimates: Mapping[str, FmEstimate]
    n_months: int
    lag: int
    skipped: tuple[tuple[str, str], ...]


def fama_macbeth(panel: Panel, regressors: Sequence[str],
                 horizon: int = 1) -> FmResult:
    """Monthly cross-sectional OLS with z-scored regressors.

    Within each month the regressors are standardized to mean 0 and
    sample standard deviation 1; the dependent return is left in its raw
    units, so slopes read as return per one cross-sectional standard
    deviation. Months that are too small, contain a constant regressor,
    or have a singular design are skipped with a log entry.
    """
    regressors = list(regressors)
    if not regressors:
        raise ConfigError("fama_macbeth needs at least one regressor")
    ret_col = return_column(horizon)
    for col in (*regressors, ret_col):
        if col not in panel.frame.columns:
            raise ConfigError(f"panel has no column {col!r}")

    def one_month(item: tuple[str, pd.DataFrame]):
        month, block = item
        cols = block[[*regressors, ret_col]].astype(float)
        cols = cols.dropna()
        n = len(cols)
        if n <= len(regressors) + 1:
            return month, None, f"{n} observations after listwise deletion"
        y = cols[ret_col].to_numpy()
        z_cols = []
        for name in regressors:
            v = cols[name].to_numpy()
            sd = v.std(ddof=1)
            if sd == 0.0 or math.isnan(sd):
                return month, None, f"constant regressor {name!r}"
            z_cols.append((v - v.mean()) / sd)
        design = np.column_stack([np.ones(n), *z_cols])
        try:
            fit = ols(y, design, ["const", *regressors])
        except SingularityError as exc:
            return month, None, str(exc)
        return month, fit.coefficients[1:], ""

    outcomes = _ordered_map(one_month, list(panel.month_groups()))
    slopes: list[np.ndarray] = []
    skipped: list[tuple[str, str]] = []
    for month, coefs, reason in outcomes:
        if coefs is None:
            log.info("fama_macbeth: %s skipped (%s)", month, reason)
            skipped.append((month, reason))
        else:
            slopes.append(coefs)
    if not slopes:
        raise DegenerateError("every month was skipped; nothing to average")
    stacked = np.vstack(slopes)
    m = stacked.shape[0]
    estimates: dict[str, FmEstimate] = {}
    if m == 1:
        lag = 0
        for j, name in enumerate(regressors):
            estimates[name] = FmEstimate(gamma_bar=float(stacked[0, j]),
                                         t_nw=math.nan, p_value=math.nan)
    else:
        lag = nw_bandwidth_ic(m)
        for j, name in enumerate(regressors):
            nw = newey_west_mean(stacked[:, j])
            estimates[name] = FmEstimate(gamma_bar=nw.mean, t_nw=nw.t_stat,
                                         p_value=nw.p_value)
    return FmResult(regressors=tuple(regressors), estimates=estimates,
                    n_months=m, lag=lag, skipped=tuple(skipped))


@dataclass(frozen=True)
class Ff5Result:
    """Five-factor time-series regression of monthly excess returns."""

    alpha_monthly: float
    loadings: Mapping[str, float]
    t_stats: Mapping[str, float]
    p_values: Mapping[str, float]
    r_squared: float
    n_months: int
    lag: int


def ff5_alpha(portfolio: pd.Series, factors: pd.DataFrame) -> Ff5Result:
    """Regress monthly portfolio excess returns on the five factors.

    ``portfolio`` is indexed by month string and must already be in
    excess-of-riskfree form (a long-short spread needs no adjustment; a
    long-only leg should arrive with RF subtracted). ``factors`` is
    indexed by month with the factor columns in decimals. Standard
    errors use the HAC sandwich with the uncapped regression lag rule.
    """
    if "month" in getattr(factors, "columns", ()):
        factors = factors.set_index("month")
    months = sorted(str(m) for m in portfolio.index)
    fac_index = set(str(m) for m in factors.index)
    gaps = [m for m in months if m not in fac_index]
    if gaps:
        shown = ", ".join(gaps[:12])
        more = "" if len(gaps) <= 12 else f" (+{len(gaps) - 12} more)"
        raise AlignmentError(
            f"factor series lacks {len(gaps)} portfolio months: "
            f"{shown}{more}")
    t_obs = len(months)
    if t_obs < 12:
        raise DegenerateError(
            f"need at least 12 aligned months, got {t_obs}")
    y = portfolio.loc[months].to_numpy(dtype=float)
    fac = factors.loc[months, list(FACTOR_NAMES)].to_numpy(dtype=float)
    design = np.column_stack([np.ones(t_obs), fac])
    names = ["alpha", *FACTOR_NAMES]
    fit = ols(y, design, names)
    lag = nw_bandwidth_regression(t_obs)

    # HAC sandwich on the score series u_t = x_t * e_t.
    scores = design * fit.residuals[:, None]
    s_mat = scores.T @ scores / t_obs
    for ell in range(1, lag + 1):
        weight = 1.0 - ell / (lag + 1.0)
        gamma = scores[ell:].T @ scores[:-ell] / t_obs
        s_mat += weight * (gamma + gamma.T)
    q_mat = design.T @ design / t_obs
    inner = np.linalg.solve(q_mat, s_mat)
    cov = np.linalg.solve(q_mat, inner.T).T / t_obs
    se = np.sqrt(np.diag(cov))
    with np.errstate(divide="ignore", invalid="ignore"):
        tvals = np.where(se > 0, fit.coefficients / se, math.inf)
    t_stats = {name: float(t) for name, t in zip(names, tvals)}
    return Ff5Result(
        alpha_monthly=float(fit.coefficients[0]),
        loadings={name: float(c)
                  for name, c in zip(FACTOR_NAMES, fit.coefficients[1:])},
        t_stats=t_stats,
        p_values={name: _normal_p(t) for name, t in t_stats.items()},
        r_squared=fit.r_squared,
        n_months=t_obs,
        lag=lag,
    )


def assign_buckets(frame: pd.DataFrame, signal: str, k: int,
                   tie_cols: Sequence[str] = ("ticker", "call_id")) -> pd.Series:
    """Rank rows by signal and cut into k near-equal buckets (1..k).

    Sizes differ by at most one. Ties in the signal break on the stable
    secondary keys, so assignment is deterministic given input bytes.
    bucket(r) = ceil(k * (r-1) / (N-1)) for rank r in 1..N, floored at 1.
    """
    n = len(frame)
    if n < k:
        raise DegenerateError(f"cannot cut {n} rows into {k} buckets")
    order = frame.sort_values([signal, *tie_cols], kind="mergesort").index
    buckets = pd.Series(0, index=frame.index, dtype=int)
    if n == 1:
        buckets.loc[order[0]] = 1
        return buckets
    for rank, idx in enumerate(order, start=1):
        b = (k * (rank - 1) + n - 2) // (n - 1)  # ceil(k(r-1)/(N-1))
        buckets.loc[idx] = max(1, b)
    return buckets


@dataclass(frozen=True)
class BucketStat:
    bucket: int
    n: int
    mean_signal: float
    mean_return: float
    sd_return: float
    t_stat: float


@dataclass(frozen=True)
class SortResult:
    signal: str
    horizon: int
    group_by: str
    buckets: tuple[BucketStat, ...]
    spread_q5_q1: float
    spread_t: float
    monotone: bool
    n_total: int
    skipped_groups: tuple[tuple[str, str], ...] = ()


def _sort_frame(frames: Sequence[tuple[str, pd.DataFrame]], signal: str,
                ret_col: str, k: int, group_by: str,
                horizon: int) -> SortResult:
    assigned: list[pd.DataFrame] = []
    skipped: list[tuple[str, str]] = []
    for label, block in frames:
        if len(block) < k:
            log.info("sort: group %s skipped (%d rows < %d buckets)",
                     label, len(block), k)
            skipped.append((label, f"{len(block)} rows < {k} buckets"))
            continue
        buckets = assign_buckets(block, signal, k)
        assigned.append(block.assign(_bucket=buckets))
    if not assigned:
        raise DegenerateError("every sort group was too small")
    pool = pd.concat(assigned, axis=0)
    stats: list[BucketStat] = []
    for b in range(1, k + 1):
        rows = pool[pool["_bucket"] == b]
        n = len(rows)
        rets = rows[ret_col].to_numpy(dtype=float)
        sigs = rows[signal].to_numpy(dtype=float)
        mean_ret = float(rets.mean()) if n else math.nan
        sd_ret = float(rets.std(ddof=1)) if n > 1 else math.nan
        if n > 1 and sd_ret > 0:
            t = mean_ret / (sd_ret / math.sqrt(n))
        else:
            t = math.nan
        stats.append(BucketStat(bucket=b, n=n,
                                mean_signal=float(sigs.mean()) if n else math.nan,
                                mean_return=mean_ret, sd_return=sd_ret,
                                t_stat=t))
    top, bot = stats[-1], stats[0]
    spread = top.mean_return - bot.mean_return
    if (top.n > 1 and bot.n > 1 and not math.isnan(top.sd_return)
            and not math.isnan(bot.sd_return)):
        se = math.sqrt(top.sd_return ** 2 / top.n
                       + bot.sd_return ** 2 / bot.n)
        spread_t = spread / se if se > 0 else math.nan
    else:
        spread_t = math.nan
    means = [s.mean_return for s in stats]
    monotone = all(b > a for a, b in zip(means, means[1:]))
    return SortResult(signal=signal, horizon=horizon, group_by=group_by,
                      buckets=tuple(stats), spread_q5_q1=spread,
                      spread_t=spread_t, monotone=monotone,
                      n_total=len(pool), skipped_groups=tuple(skipped))


def quintile_sort(panel: Panel, signal: str, group_by: str = "pooled",
                  horizon: int = 1, k: int = 5) -> SortResult:
    """Sort calls into k signal buckets and report bucket-level returns.

    group_by "pooled" ranks the full sample at once (the headline-table
    convention); "month" ranks within each event month (the portfolio
    convention) and pools the assigned rows for the stats. The spread is
    mean(top) - mean(bottom) with an unequal-variance two-sample t.
    """
    if group_by not in ("pooled", "month"):
        raise ConfigError(f"group_by must be 'pooled' or 'month', "
                          f"got {group_by!r}")
    ret_col = return_column(horizon)
    for col in (signal, ret_col):
        if col not in panel.frame.columns:
            raise ConfigError(f"panel has no column {col!r}")
    frame = panel.frame.dropna(subset=[signal, ret_col])
    if group_by == "pooled":
        frames = [("pooled", frame)]
    else:
        frames = [(m, b) for m, b in frame.groupby("event_month", sort=True)]
    return _sort_frame(frames, signal, ret_col, k, group_by, horizon)


@dataclass(frozen=True)
class DoubleSortResult:
    signal: str
    outer: str
    horizon: int
    tercile_ns: tuple[int, ...]
    terciles: Mapping[int, SortResult]


def double_sort(panel: Panel, signal: str, horizon: int = 1,
                *, outer_col: str = "sue", outer_k: int = 3,
                inner_k: int = 5) -> DoubleSortResult:
    """Outer sort on the control variable, inner signal sort per cell.

    Terciles are cut over the pooled sample; within each tercile the
    rows are sorted into signal quintiles exactly as in
    :func:`quintile_sort`, which shows whether the signal spread
    survives conditioning on the control.
    """
    ret_col = return_column(horizon)
    for col in (signal, outer_col, ret_col):
        if col not in panel.frame.columns:
            raise ConfigError(f"panel has no column {col!r}")
    frame = panel.frame.dropna(subset=[signal, outer_col, ret_col])
    outer = assign_buckets(frame, outer_col, outer_k)
    terciles: dict[int, SortResult] = {}
    ns: list[int] = []
    for t in range(1, outer_k + 1):
        block = frame[outer == t]
        ns.append(len(block))
        terciles[t] = _sort_frame([(f"tercile{t}", block)], signal, ret_col,
                                  inner_k, "pooled", horizon)
    return DoubleSortResult(signal=signal, outer=outer_col, horizon=horizon,
                            tercile_ns=tuple(ns), terciles=terciles)


def portfolio_monthly_returns(panel: Panel, signal: str, horizon: int = 1,
                              k: int = 5, *, long_bucket: int | None = None,
                              short_bucket: int | None = 1,
                              min_obs: int = 5) -> pd.Series:
    """Monthly long-short (or long-only) event-return series.

    Calls are sorted into k signal buckets within each event month; the
    month's portfolio return is the mean event-window return of the long
    bucket minus that of the short bucket (omit the short side by
    passing ``short_bucket=None``). Months with fewer than ``min_obs``
    usable calls are skipped with a log entry, so the output can span
    fewer months than the panel.
    """
    if long_bucket is None:
        long_bucket = k
    ret_col = return_column(horizon)
    frame = panel.frame.dropna(subset=[signal, ret_col])
    out: dict[str, float] = {}
    for month, block in frame.groupby("event_month", sort=True):
        if len(block) < max(k, min_obs):
            log.info("portfolio: %s skipped (%d usable calls)",
                     month, len(block))
            continue
        buckets = assign_buckets(block, signal, k)
        long_ret = block.loc[buckets == long_bucket, ret_col].mean()
        if short_bucket is None:
            out[str(month)] = float(long_ret)
        else:
            short_ret = block.loc[buckets == short_bucket, ret_col].mean()
            out[str(month)] = float(long_ret - short_ret)
    if not out:
        raise DegenerateError("no month had enough calls for a portfolio")
    return pd.Series(out).sort_index()


@dataclass(frozen=True)
class CarResult:
    """Average cumulative abnormal return paths by signal bucket."""

    signal: str
    horizon_days: int
    days: tuple[int, ...]
    paths: Mapping[int, tuple[float, ...]]
    ns: Mapping[int, int]
    spread_path: tuple[float, ...]
    excluded: Mapping[str, int]


def car_profile(panel: Panel, prices: Mapping[str, PriceSeries],
                benchmark: PriceSeries, signal: str,
                horizon_days: int = 30, k: int = 5) -> CarResult:
    """Post-event abnormal return accumulation by signal bucket.

    Day 0 anchors at the last close the market set before it could react
    (close(t) for after-close calls, close(t-1) for before-open calls);
    CAR(0) = 0 and each subsequent day adds stock return minus benchmark
    return on the stock's own trading dates. Events whose stock or
    benchmark series cannot cover the window are excluded with a
    counted reason.
    """
    frame = panel.frame.dropna(subset=[signal])
    if len(frame) < k:
        raise DegenerateError(
            f"only {len(frame)} rows with signal {signal!r}")
    buckets = assign_buckets(frame, signal, k)
    sums: dict[int, np.ndarray] = {
        b: np.zeros(horizon_days + 1) for b in range(1, k + 1)}
    counts: dict[int, int] = {b: 0 for b in range(1, k + 1)}
    excluded: dict[str, int] = {}

    def exclude(reason: str) -> None:
        excluded[reason] = excluded.get(reason, 0) + 1

    for idx, row in frame.iterrows():
        series = prices.get(row["ticker"])
        if series is None:
            exclude("no price series")
            continue
        event_day = date.fromisoformat(row["event_date"])
        timing = row["timing"]
        t = series.locate(event_day)
        if t is None:
            t = series.next_trading_index(event_day)
            timing = "BMO"
            if t is None:
                exclude("event beyond price history")
                continue
        anchor = t if timing == "AMC" else t - 1
        if anchor < 0:
            exclude("no pre-event close")
            continue
        if anchor + horizon_days >= len(series):
            exclude("insufficient stock history")
            continue
        window_dates = series.dates[anchor:anchor + horizon_days + 1]
        bench_idx = [benchmark.locate(d) for d in window_dates]
        if any(i is None for i in bench_idx):
            exclude("missing benchmark days")
            continue
        stock = np.asarray(
            series.closes[anchor:anchor + horizon_days + 1], dtype=float)
        bench = np.asarray([benchmark.closes[i] for i in bench_idx],
                           dtype=float)
        abnormal = (stock[1:] / stock[:-1]) - (bench[1:] / bench[:-1])
        path = np.concatenate([[0.0], np.cumsum(abnormal)])
        b = int(buckets.loc[idx])
        sums[b] += path
        counts[b] += 1

    if all(c == 0 for c in counts.values()):
        raise DegenerateError("every event was excluded from the CAR window")
    paths: dict[int, tuple[float, ...]] = {}
    for b in range(1, k + 1):
        if counts[b] == 0:
            paths[b] = tuple(math.nan for _ in range(horizon_days + 1))
        else:
            paths[b] = tuple(float(v) for v in sums[b] / counts[b])
    spread = tuple(hi - lo for hi, lo in zip(paths[k], paths[1]))
    return CarResult(signal=signal, horizon_days=horizon_days,
                     days=tuple(range(horizon_days + 1)), paths=paths,
                     ns=counts, spread_path=spread, excluded=excluded)


@dataclass(frozen=True)
class DecayPoint:
    horizon: int
    mean_ic: float
    t_nw: float
    n_months: int


@dataclass(frozen=True)
class DecayResult:
    signal: str
    points: tuple[DecayPoint, ...]
    half_life: int | None


def decay_profile(panel: Panel, signal: str,
                  horizons: Sequence[int] = tuple(range(1, 22)),
                  *, min_obs: int = 20) -> DecayResult:
    """Mean monthly IC across return horizons, plus the half-life: the
    first horizon whose mean IC drops below half the 1-day value."""
    horizons = sorted(set(int(h) for h in horizons))
    missing = [h for h in horizons
               if return_column(h) not in panel.frame.columns]
    if missing:
        raise ConfigError(
            f"panel lacks return columns for horizons {missing}")
    points = []
    for h in horizons:
        series = monthly_ic(panel, signal, horizon=h, min_obs=min_obs)
        points.append(DecayPoint(horizon=h, mean_ic=series.mean_ic,
                                 t_nw=series.t_nw,
                                 n_months=series.n_months))
    half_life: int | None = None
    if horizons and horizons[0] == 1:
        base = points[0].mean_ic
        if base > 0:
            for point in points:
                if point.mean_ic < base / 2.0:
                    half_life = point.horizon
                    break
    return DecayResult(signal=signal, points=tuple(points),
                       half_life=half_life)
