"""Synthetic panels with known ground truth.

Estimator tests need data whose true parameters are known in advance.
This module builds them two ways. Copula mode draws one latent factor
per call and makes every sentiment column a monotone affine clone of
it, so the population rank correlation between any signal and any
return horizon is set exactly by construction: a bivariate-normal pair
with Pearson r has Spearman (6/pi)*asin(r/2), hence targeting Spearman
rho means mixing with r = 2*sin(pi*rho/6). Linear mode instead builds
returns from month-standardized regressors with chosen slopes, which is
the recovery target for cross-sectional regressions.

Everything is driven by one ``numpy.random.default_rng`` (PCG64) per
emission, keyed off the config seed, with a fixed draw order, so a seed
pins every output byte.

:func:`emit_ingestion_corpus` goes one step further and renders a full
fake quarter-by-quarter world (transcripts, sentence scores, prices,
earnings, daily factors) whose price paths reproduce the intended
event-window returns, for exercising the command-line pipeline
end to end.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from datetime import date, timedelta
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np
import pandas as pd

from .aggregate import role_mean_column
from .errors import ConfigError
from .panel import IDENTITY_COLUMNS, Panel, return_column
from .transcript import DOWNSTREAM_ROLES, SpeakerRole, parse_transcript, segment_call

__all__ = [
    "DEFAULT_SIGNAL_MOMENTS",
    "DEFAULT_RETURN_MOMENTS",
    "DEFAULT_SUE_MOMENTS",
    "DEFAULT_ROLE_PRESENCE",
    "DEFAULT_ROLE_STRENGTHS",
    "SynthConfig",
    "GroundTruth",
    "generate_panel",
    "generate_ff5",
    "emit_ingestion_corpus",
    "spearman_from_pearson",
    "pearson_from_spearman",
]

SIGNAL_COLUMNS = ("m1", "m2", "m3", "m4", "m5")
NULL_COLUMN = "m_null"

DEFAULT_SIGNAL_MOMENTS: Mapping[str, tuple[float, float]] = {
    "m1": (0.263, 0.085),
    "m2": (0.417, 0.133),
    "m3": (0.261, 0.094),
    "m4": (0.192, 0.072),
    "m5": (0.107, 0.062),
}

DEFAULT_RETURN_MOMENTS: Mapping[int, tuple[float, float]] = {
    1: (0.003, 0.068),
    5: (0.006, 0.097),
}

DEFAULT_SUE_MOMENTS = (0.991, 1.607)

DEFAULT_ROLE_PRESENCE: Mapping[str, float] = {
    "analyst": 0.99,
    "cfo": 0.97,
    "executive": 0.98,
    "other": 0.36,
}

DEFAULT_ROLE_STRENGTHS: Mapping[str, float] = {
    "analyst": 0.90,
    "cfo": 0.55,
    "executive": 0.30,
    "other": 0.10,
}

_FF5_FACTOR_MOMENTS: Mapping[str, tuple[float, float]] = {
    "MktRF": (0.006, 0.045),
    "SMB": (0.002, 0.030),
    "HML": (0.002, 0.030),
    "RMW": (0.003, 0.022),
    "CMA": (0.002, 0.020),
}

# Latent loading of the earnings-surprise column on the call factor;
# small on purpose so double sorts have independent variation to chew on.
_SUE_RHO = 0.15

# Per-horizon rank-correlation decay factor in copula mode. 0.82**(h-1)
# crosses one half between h=4 (0.551) and h=5 (0.452), so the intended
# half-life of the default curve is 5 days.
_DECAY_FACTOR = 0.82


def spearman_from_pearson(r: float) -> float:
    """Population Spearman of a bivariate normal pair with Pearson r."""
    return (6.0 / math.pi) * math.asin(r / 2.0)


def pearson_from_spearman(rho: float) -> float:
    """Pearson r that yields Spearman rho under a bivariate normal."""
    return 2.0 * math.sin(math.pi * rho / 6.0)


def _month_label(start: str, offset: int) -> str:
    year, month = (int(part) for part in start.split("-"))
    total = year * 12 + (month - 1) + offset
    y, m = divmod(total, 12)
    return f"{y:04d}-{m + 1:02d}"


def _role_key(role: SpeakerRole) -> str:
    return role.value.lower()


@dataclass(frozen=True)
class SynthConfig:
    """Recipe for one synthetic world.

    Parameters
    ----------
    seed : int
        Root seed; every emission derives its own PCG64 stream from it.
    n_months, calls_per_month : int
        Panel shape. The default 117 x 140 matches the scale the
        estimators are expected to face.
    start_month : str
        First event month as "YYYY-MM".
    target_ic : float, optional
        Copula mode: intended mean monthly rank correlation between the
        sentiment columns and the 1-day return. Defaults to 0.12 when
        neither mode is specified. Mutually exclusive with ``fm_slopes``.
    horizon_rhos : mapping, optional
        Copula mode override of the per-horizon rank-correlation curve;
        horizons absent from the mapping fall back to the default decay.
    fm_slopes : mapping, optional
        Linear mode: regressor name to true slope, in return units per
        cross-sectional standard deviation. Mutually exclusive with
        ``target_ic``.
    noise_sd : float
        Linear-mode residual standard deviation of the 1-day return.
    ff5_alpha_monthly, ff5_loadings, ff5_noise_sd
        True intercept, factor loadings, and residual scale used by
        :func:`generate_ff5`.
    role_presence, role_strengths : mapping
        Per-role probability that a call has that section at all, and
        the role latent's loading on the call factor.
    signal_moments, return_moments, sue_moments
        Marginal (mean, sd) targets. Return horizons beyond the pinned
        ones get linearly interpolated means and variances, extended
        proportionally to the horizon past the last pin.
    amc_share : float
        Fraction of calls released after the close.
    horizons : sequence of int
        Return horizons materialized as ``ret_{h}d`` columns.
    """

    seed: int = 7
    n_months: int = 117
    calls_per_month: int = 140
    start_month: str = "2015-01"
    target_ic: float | None = None
    horizon_rhos: Mapping[int, float] | None = None
    fm_slopes: Mapping[str, float] | None = None
    noise_sd: float = 0.05
    ff5_alpha_monthly: float = 0.0
    ff5_loadings: tuple[float, float, float, float, float] = (
        1.0, 0.3, -0.2, 0.1, 0.0)
    ff5_noise_sd: float = 0.02
    role_presence: Mapping[str, float] = field(
        default_factory=lambda: dict(DEFAULT_ROLE_PRESENCE))
    role_strengths: Mapping[str, float] = field(
        default_factory=lambda: dict(DEFAULT_ROLE_STRENGTHS))
    signal_moments: Mapping[str, tuple[float, float]] = field(
        default_factory=lambda: dict(DEFAULT_SIGNAL_MOMENTS))
    return_moments: Mapping[int, tuple[float, float]] = field(
        default_factory=lambda: dict(DEFAULT_RETURN_MOMENTS))
    sue_moments: tuple[float, float] = DEFAULT_SUE_MOMENTS
    amc_share: float = 0.85
    horizons: tuple[int, ...] = tuple(range(1, 22))

    def __post_init__(self) -> None:
        if self.n_months < 1:
            raise ConfigError(f"n_months must be >= 1, got {self.n_months}")
        if self.calls_per_month < 2:
            raise ConfigError(
                f"calls_per_month must be >= 2, got {self.calls_per_month}")
        parts = self.start_month.split("-")
        if len(parts) != 2 or not all(p.isdigit() for p in parts) \
                or not 1 <= int(parts[1]) <= 12:
            raise ConfigError(
                f"start_month must be 'YYYY-MM', got {self.start_month!r}")
        if self.target_ic is not None and self.fm_slopes is not None:
            raise ConfigError(
                "target_ic and fm_slopes are mutually exclusive; pick the "
                "copula mode or the linear mode, not both")
        if self.target_ic is not None and abs(self.target_ic) > 0.95:
            raise ConfigError(
                f"|target_ic| must be <= 0.95, got {self.target_ic}")
        if self.horizon_rhos is not None:
            for h, rho in self.horizon_rhos.items():
                if abs(rho) > 0.95:
                    raise ConfigError(
                        f"|horizon_rhos[{h}]| must be <= 0.95, got {rho}")
        if self.fm_slopes is not None:
            if not self.fm_slopes:
                raise ConfigError("fm_slopes must name at least one regressor")
            for name, slope in self.fm_slopes.items():
                if not name or not isinstance(name, str):
                    raise ConfigError("fm_slopes keys must be nonempty names")
                if not math.isfinite(slope):
                    raise ConfigError(
                        f"fm_slopes[{name!r}] must be finite, got {slope}")
        if not self.noise_sd > 0:
            raise ConfigError(f"noise_sd must be > 0, got {self.noise_sd}")
        if not self.ff5_noise_sd > 0:
            raise ConfigError(
                f"ff5_noise_sd must be > 0, got {self.ff5_noise_sd}")
        if len(self.ff5_loadings) != 5:
            raise ConfigError("ff5_loadings must have exactly 5 entries")
        for key in ("analyst", "cfo", "executive", "other"):
            p = self.role_presence.get(key)
            if p is None or not 0.0 <= p <= 1.0:
                raise ConfigError(
                    f"role_presence[{key!r}] must be in [0, 1], got {p}")
            a = self.role_strengths.get(key)
            if a is None or not 0.0 <= a < 1.0:
                raise ConfigError(
                    f"role_strengths[{key!r}] must be in [0, 1), got {a}")
        for name, (_, sd) in self.signal_moments.items():
            if not sd > 0:
                raise ConfigError(
                    f"signal_moments[{name!r}] sd must be > 0, got {sd}")
        if 1 not in self.return_moments:
            raise ConfigError("return_moments must pin horizon 1")
        for h, (_, sd) in self.return_moments.items():
            if h < 1 or not sd > 0:
                raise ConfigError(
                    f"return_moments[{h}] must have horizon >= 1 and sd > 0")
        if not self.sue_moments[1] > 0:
            raise ConfigError(
                f"sue sd must be > 0, got {self.sue_moments[1]}")
        if not 0.0 <= self.amc_share <= 1.0:
            raise ConfigError(
                f"amc_share must be in [0, 1], got {self.amc_share}")
        if not self.horizons or any(h < 1 for h in self.horizons):
            raise ConfigError("horizons must be a nonempty set of ints >= 1")

    @property
    def mode(self) -> str:
        return "fm_linear" if self.fm_slopes is not None else "copula"

    @property
    def effective_target_ic(self) -> float:
        return 0.12 if self.target_ic is None else self.target_ic

    def spearman_for_horizon(self, horizon: int) -> float:
        if self.horizon_rhos is not None and horizon in self.horizon_rhos:
            return self.horizon_rhos[horizon]
        return self.effective_target_ic * _DECAY_FACTOR ** (horizon - 1)

    def return_moment(self, horizon: int) -> tuple[float, float]:
        """Marginal (mean, sd) of the h-day return, interpolating in
        variance between pinned horizons and extending proportionally to
        h beyond the last pin."""
        if horizon in self.return_moments:
            return self.return_moments[horizon]
        pins = sorted(self.return_moments)
        means = np.array([self.return_moments[h][0] for h in pins])
        variances = np.array([self.return_moments[h][1] ** 2 for h in pins])
        last = pins[-1]
        if horizon > last:
            scale = horizon / last
            return (float(means[-1] * scale),
                    float(math.sqrt(variances[-1] * scale)))
        mean = float(np.interp(horizon, pins, means))
        var = float(np.interp(horizon, pins, variances))
        return mean, math.sqrt(var)


@dataclass(frozen=True)
class GroundTruth:
    """What the generator actually planted, for tests to assert against."""

    seed: int
    rng: str
    mode: str
    n_months: int
    calls_per_month: int
    spearman_by_horizon: Mapping[int, float]
    pearson_by_horizon: Mapping[int, float]
    role_loadings: Mapping[str, float]
    implied_role_spearman: Mapping[str, float]
    fm_slopes: Mapping[str, float] | None
    noise_sd: float | None
    null_column: str = NULL_COLUMN

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "rng": self.rng,
            "mode": self.mode,
            "n_months": self.n_months,
            "calls_per_month": self.calls_per_month,
            "spearman_by_horizon": {
                str(h): v for h, v in self.spearman_by_horizon.items()},
            "pearson_by_horizon": {
                str(h): v for h, v in self.pearson_by_horizon.items()},
            "role_loadings": dict(self.role_loadings),
            "implied_role_spearman": dict(self.implied_role_spearman),
            "fm_slopes": None if self.fm_slopes is None
            else dict(self.fm_slopes),
            "noise_sd": self.noise_sd,
            "null_column": self.null_column,
        }


def _truth_for(cfg: SynthConfig) -> GroundTruth:
    if cfg.mode == "fm_linear":
        return GroundTruth(
            seed=cfg.seed, rng="PCG64", mode="fm_linear",
            n_months=cfg.n_months, calls_per_month=cfg.calls_per_month,
            spearman_by_horizon={}, pearson_by_horizon={},
            role_loadings={}, implied_role_spearman={},
            fm_slopes=dict(cfg.fm_slopes or {}), noise_sd=cfg.noise_sd)
    spearmans = {h: cfg.spearman_for_horizon(h) for h in sorted(cfg.horizons)}
    pearsons = {h: pearson_from_spearman(rho) for h, rho in spearmans.items()}
    r1 = pearsons[min(pearsons)]
    loadings = {key: cfg.role_strengths[key]
                for key in ("analyst", "cfo", "executive", "other")}
    implied = {key: spearman_from_pearson(a * r1)
               for key, a in loadings.items()}
    return GroundTruth(
        seed=cfg.seed, rng="PCG64", mode="copula",
        n_months=cfg.n_months, calls_per_month=cfg.calls_per_month,
        spearman_by_horizon=spearmans, pearson_by_horizon=pearsons,
        role_loadings=loadings, implied_role_spearman=implied,
        fm_slopes=None, noise_sd=None)


def _mix(z: np.ndarray, r: float, noise: np.ndarray) -> np.ndarray:
    """Gaussian mixture with exact Pearson correlation r against z."""
    return r * z + math.sqrt(1.0 - r * r) * noise


def generate_panel(cfg: SynthConfig) -> tuple[Panel, GroundTruth]:
    """Draw a full event panel with known population parameters.

    Copula mode emits the five sentiment columns (clones of one latent),
    an independent ``m_null`` placebo column, per-role section means
    ``tau_*`` with configured presence gaps, an earnings-surprise
    column, and one return column per configured horizon. Linear mode
    emits the ``fm_slopes`` regressors plus the 1-day return they
    generate. Identity columns are deterministic functions of month and
    slot; all randomness flows through one seeded PCG64 stream in a
    fixed draw order.
    """
    rng = np.random.default_rng([cfg.seed, 0])
    truth = _truth_for(cfg)
    n = cfg.calls_per_month
    blocks: list[pd.DataFrame] = []
    for mi in range(cfg.n_months):
        label = _month_label(cfg.start_month, mi)
        cols: dict[str, object] = {
            "call_id": [f"C{mi:03d}-{i:04d}" for i in range(n)],
            "ticker": [f"S{i:04d}" for i in range(n)],
            "event_date": [f"{label}-{3 + (i * 37) % 25:02d}"
                           for i in range(n)],
            "event_month": [label] * n,
        }
        if cfg.mode == "copula":
            z0 = rng.standard_normal(n)
            rets = {}
            for h in sorted(cfg.horizons):
                r = truth.pearson_by_horizon[h]
                mixed = _mix(z0, r, rng.standard_normal(n))
                mu, sd = cfg.return_moment(h)
                rets[h] = mu + sd * mixed
            latents = {}
            for role in DOWNSTREAM_ROLES:
                key = _role_key(role)
                latents[key] = _mix(z0, cfg.role_strengths[key],
                                    rng.standard_normal(n))
            present = {key: rng.random(n) < cfg.role_presence[key]
                       for key in ("analyst", "cfo", "executive", "other")}
            null_col = rng.standard_normal(n)
            sue_lat = _mix(z0, _SUE_RHO, rng.standard_normal(n))
            timing_u = rng.random(n)

            for name in SIGNAL_COLUMNS[:4]:
                mu, sd = cfg.signal_moments[name]
                cols[name] = mu + sd * z0
            mu5, sd5 = cfg.signal_moments["m5"]
            m5 = mu5 + sd5 * latents["analyst"]
            cols["m5"] = np.where(present["analyst"], m5, np.nan)
            cols[NULL_COLUMN] = null_col
            for role in DOWNSTREAM_ROLES:
                key = _role_key(role)
                cols[role_mean_column(role)] = np.where(
                    present[key], latents[key], np.nan)
            sue_mu, sue_sd = cfg.sue_moments
            cols["sue"] = sue_mu + sue_sd * sue_lat
            cols["timing"] = np.where(timing_u < cfg.amc_share,
                                      "AMC", "BMO")
            for h in sorted(cfg.horizons):
                cols[return_column(h)] = rets[h]
        else:
            names = sorted(cfg.fm_slopes or {})
            raw = {}
            for name in names:
                mu, sd = cfg.signal_moments.get(name, (0.0, 1.0))
                raw[name] = mu + sd * rng.standard_normal(n)
            eps = rng.standard_normal(n)
            timing_u = rng.random(n)
            y = cfg.noise_sd * eps
            for name in names:
                v = raw[name]
                z = (v - v.mean()) / v.std(ddof=1)
                y = y + cfg.fm_slopes[name] * z  # type: ignore[index]
            for name in names:
                cols[name] = raw[name]
            cols["timing"] = np.where(timing_u < cfg.amc_share,
                                      "AMC", "BMO")
            cols[return_column(1)] = y
        blocks.append(pd.DataFrame(cols))
    frame = pd.concat(blocks, ignore_index=True)
    ordered = [c for c in IDENTITY_COLUMNS if c in frame.columns]
    ordered += [c for c in frame.columns if c not in ordered]
    return Panel(frame[ordered]), truth


def generate_ff5(cfg: SynthConfig) -> tuple[pd.Series, pd.DataFrame, dict]:
    """Monthly excess-return series with factor structure planted.

    Returns (portfolio, factors, truth): the portfolio is alpha plus the
    configured loadings applied to independently drawn factors plus
    Gaussian noise; factors come back indexed by month with an RF column
    of zeros so the frame satisfies the daily-factor column contract.
    """
    rng = np.random.default_rng([cfg.seed, 1])
    months = [_month_label(cfg.start_month, mi) for mi in range(cfg.n_months)]
    t = len(months)
    fac_cols = {}
    for name, (mu, sd) in _FF5_FACTOR_MOMENTS.items():
        fac_cols[name] = mu + sd * rng.standard_normal(t)
    noise = rng.standard_normal(t)
    y = cfg.ff5_alpha_monthly + cfg.ff5_noise_sd * noise
    for load, name in zip(cfg.ff5_loadings, _FF5_FACTOR_MOMENTS):
        y = y + load * fac_cols[name]
    factors = pd.DataFrame(fac_cols, index=pd.Index(months, name="month"))
    factors["RF"] = 0.0
    portfolio = pd.Series(y, index=pd.Index(months, name="month"))
    truth = {
        "alpha_monthly": cfg.ff5_alpha_monthly,
        "loadings": {name: load for load, name
                     in zip(cfg.ff5_loadings, _FF5_FACTOR_MOMENTS)},
        "noise_sd": cfg.ff5_noise_sd,
        "n_months": t,
        "rng": "PCG64",
        "seed": cfg.seed,
    }
    return portfolio, factors, truth


# --- full ingestion corpus ------------------------------------------------

_POS_TEMPLATE = ("In {month} we delivered strong results and improved "
                 "margins across segment {i}.")
_NEG_TEMPLATE = ("In {month} we saw weak demand and a decline in segment "
                 "{i} on negative trends.")

_SPEAKERS = {
    "executive": ("Alex Morgan", "Chief Executive Officer", 2),
    "cfo": ("Jamie Lee", "Chief Financial Officer", 2),
    "analyst": ("Sam Rivera", "Analyst, Goldman Sachs", 2),
    "other": ("Chris Park", "Head of Investor Relations", 1),
}


def _weekday_calendar(first: date, last: date) -> list[date]:
    days = []
    d = first
    while d <= last:
        if d.weekday() < 5:
            days.append(d)
        d += timedelta(days=1)
    return days


def _sentence_probs(net: float, neu: float) -> tuple[float, float, float]:
    p_pos = (1.0 - neu) * (1.0 + net) / 2.0
    p_neg = (1.0 - neu) - p_pos
    return p_pos, p_neg, neu


def emit_ingestion_corpus(cfg: SynthConfig, outdir: str | Path) -> dict[str, Path]:
    """Write a complete fake data vendor drop for pipeline runs.

    Produces transcripts.jsonl, scores.jsonl (with its count header),
    prices.csv, earnings.csv, factors_daily.csv, and groundtruth.json in
    ``outdir``. Price paths are constructed so the event-window return
    at every configured horizon equals the drawn return for that call;
    a flat benchmark ticker "MKT" is included. Tickers rotate in three
    monthly cohorts so each one reports quarterly, and every ticker gets
    eight pre-sample earnings reports so surprise scaling is defined
    from the first event on. Copula mode only.
    """
    if cfg.mode != "copula":
        raise ConfigError("emit_ingestion_corpus requires copula mode")
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng([cfg.seed, 2])
    earn_rng = np.random.default_rng([cfg.seed, 3])
    fac_rng = np.random.default_rng([cfg.seed, 4])
    truth = _truth_for(cfg)
    n = cfg.calls_per_month
    n_tickers = 3 * n
    horizons = sorted(cfg.horizons)
    max_h = horizons[-1]

    first_month = _month_label(cfg.start_month, 0)
    last_month = _month_label(cfg.start_month, cfg.n_months - 1)
    first_day = date.fromisoformat(first_month + "-01") - timedelta(days=90)
    last_day = date.fromisoformat(
        _month_label(last_month, 1) + "-01") + timedelta(days=45)
    calendar = _weekday_calendar(first_day, last_day)
    cal_index = {d: i for i, d in enumerate(calendar)}
    month_days: dict[str, list[date]] = {}
    for d in calendar:
        month_days.setdefault(f"{d.year:04d}-{d.month:02d}", []).append(d)

    transcripts: list[dict] = []
    score_rows: list[dict] = []
    # price factors: multiplicative daily move per ticker, default 1.0
    factors_by_ticker = {
        ti: np.ones(len(calendar)) for ti in range(n_tickers)}
    earnings_rows: list[dict] = []
    prior_surprises: dict[int, list[float]] = {}

    for mi in range(cfg.n_months):
        label = _month_label(cfg.start_month, mi)
        days = month_days[label]
        cohort = mi % 3
        z0 = rng.standard_normal(n)
        # clip deep in the left tail so pinned price paths stay positive
        rets = {h: np.maximum(
            cfg.return_moment(h)[0] + cfg.return_moment(h)[1] * _mix(
                z0, truth.pearson_by_horizon[h], rng.standard_normal(n)),
            -0.95)
            for h in horizons}
        latents = {key: _mix(z0, cfg.role_strengths[key],
                             rng.standard_normal(n))
                   for key in ("analyst", "cfo", "executive", "other")}
        present = {key: rng.random(n) < cfg.role_presence[key]
                   for key in ("cfo", "analyst", "other")}
        present["executive"] = np.ones(n, dtype=bool)
        timing_u = rng.random(n)
        sue_lat = _mix(z0, _SUE_RHO, rng.standard_normal(n))

        for i in range(n):
            ticker_idx = cohort * n + i
            ticker = f"S{ticker_idx:04d}"
            call_id = f"C{mi:03d}-{i:04d}"
            event_day = days[(i * 7) % len(days)]
            timing = "AMC" if timing_u[i] < cfg.amc_share else "BMO"
            clock = "21:05:00" if timing == "AMC" else "11:30:00"

            turns = [{"name": "Operator", "title": "",
                      "text": f"Good day and welcome to the {ticker} "
                              f"earnings conference call."}]
            nets: list[float] = []
            for key in ("executive", "cfo", "analyst", "other"):
                if not present[key][i]:
                    continue
                name, title, n_sent = _SPEAKERS[key]
                sentences = []
                for s in range(n_sent):
                    net = float(np.clip(
                        0.5 * latents[key][i] + 0.3 * rng.standard_normal(),
                        -0.9, 0.9))
                    nets.append(net)
                    template = _POS_TEMPLATE if net >= 0 else _NEG_TEMPLATE
                    sentences.append(template.format(month=label, i=s + 1))
                turns.append({"name": name, "title": title,
                              "text": " ".join(sentences)})
            record = {
                "call_id": call_id,
                "ticker": ticker,
                "call_datetime": f"{event_day.isoformat()}T{clock}+00:00",
                "timing": timing,
                "turns": turns,
            }
            transcripts.append(record)

            meta, parsed_turns = parse_transcript(record)
            raw_sentences = segment_call(meta, parsed_turns)
            assert len(raw_sentences) == len(nets)
            for sent, net in zip(raw_sentences, nets):
                neu = 0.15 + 0.2 * rng.random()
                p_pos, p_neg, p_neu = _sentence_probs(net, neu)
                digest = hashlib.sha256(
                    sent.text.encode("utf-8")).hexdigest()[:16]
                score_rows.append({
                    "call_id": call_id,
                    "role": sent.role.value,
                    "text_hash": digest,
                    "p_pos": p_pos,
                    "p_neg": p_neg,
                    "p_neu": p_neu,
                })

            # price pinning: daily multiplicative moves around the event.
            # Days between configured horizons interpolate between the
            # pinned cumulative returns; np.interp is exact at the pins.
            t = cal_index[event_day]
            pin_days = [0] + horizons
            pin_rets = [0.0] + [float(rets[h][i]) for h in horizons]
            r = np.interp(np.arange(max_h + 1), pin_days, pin_rets)
            fac = factors_by_ticker[ticker_idx]
            if timing == "AMC":
                for j in range(1, max_h + 1):
                    fac[t + j] = (1.0 + r[j]) / (1.0 + r[j - 1])
            else:
                for j in range(0, max_h):
                    fac[t + j] = (1.0 + r[j + 1]) / (1.0 + r[j])

            # earnings: scale the surprise so SUE equals the intended draw
            history = prior_surprises.get(ticker_idx)
            if history is None:
                history = [float(v) for v in earn_rng.normal(0.0, 0.05, 8)]
                prior_surprises[ticker_idx] = history
                base = event_day - timedelta(days=91 * 8)
                for q, prior in enumerate(history):
                    rep = base + timedelta(days=91 * q)
                    earnings_rows.append({
                        "ticker": ticker,
                        "fiscal_quarter_end": (
                            rep - timedelta(days=35)).isoformat(),
                        "report_date": rep.isoformat(),
                        "eps_actual": 1.0 + prior,
                        "eps_estimate": 1.0,
                    })
            sigma = float(np.std(history, ddof=1))
            intent = cfg.sue_moments[0] + cfg.sue_moments[1] * float(
                sue_lat[i])
            surprise = intent * sigma
            earnings_rows.append({
                "ticker": ticker,
                "fiscal_quarter_end": (
                    event_day - timedelta(days=35)).isoformat(),
                "report_date": event_day.isoformat(),
                "eps_actual": 1.0 + surprise,
                "eps_estimate": 1.0,
            })
            history.append(surprise)

    paths: dict[str, Path] = {}

    tpath = outdir / "transcripts.jsonl"
    with open(tpath, "w", encoding="utf-8") as fh:
        for record in transcripts:
            fh.write(json.dumps(record, sort_keys=True) + "\n")
    paths["transcripts"] = tpath

    spath = outdir / "scores.jsonl"
    with open(spath, "w", encoding="utf-8") as fh:
        header = {"model": "synthetic-scorer", "revision": "v1",
                  "count": len(score_rows)}
        fh.write(json.dumps(header, sort_keys=True) + "\n")
        for row in score_rows:
            fh.write(json.dumps(row, sort_keys=True) + "\n")
    paths["scores"] = spath

    price_frames = []
    for ti in range(n_tickers):
        closes = (50.0 + ti % 100) * np.cumprod(factors_by_ticker[ti])
        price_frames.append(pd.DataFrame({
            "ticker": f"S{ti:04d}",
            "date": [d.isoformat() for d in calendar],
            "close": closes,
        }))
    price_frames.append(pd.DataFrame({
        "ticker": "MKT",
        "date": [d.isoformat() for d in calendar],
        "close": 100.0,
    }))
    ppath = outdir / "prices.csv"
    pd.concat(price_frames, ignore_index=True).to_csv(
        ppath, index=False, lineterminator="\n")
    paths["prices"] = ppath

    epath = outdir / "earnings.csv"
    pd.DataFrame(earnings_rows).to_csv(epath, index=False,
                                       lineterminator="\n")
    paths["earnings"] = epath

    fpath = outdir / "factors_daily.csv"
    fac_frame = pd.DataFrame({
        "date": [d.isoformat() for d in calendar],
        "MktRF": 0.02 + 0.9 * fac_rng.standard_normal(len(calendar)),
        "SMB": 0.01 + 0.5 * fac_rng.standard_normal(len(calendar)),
        "HML": 0.01 + 0.5 * fac_rng.standard_normal(len(calendar)),
        "RMW": 0.01 + 0.4 * fac_rng.standard_normal(len(calendar)),
        "CMA": 0.01 + 0.3 * fac_rng.standard_normal(len(calendar)),
        "RF": 0.01,
    })
    fac_frame.to_csv(fpath, index=False, lineterminator="\n")
    paths["factors"] = fpath

    gpath = outdir / "groundtruth.json"
    payload = truth.to_dict()
    payload["n_transcripts"] = len(transcripts)
    payload["n_score_rows"] = len(score_rows)
    payload["n_tickers"] = n_tickers
    payload["benchmark"] = "MKT"
    with open(gpath, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
    paths["groundtruth"] = gpath
    return paths
