"""Byte-stable report emission.

Every analysis result is written twice: a JSON document with sorted
keys for machines, and an aligned fixed-format text table for eyes.
Neither contains a timestamp; given identical inputs and config, both
are byte-identical across runs and machines. Wall-clock provenance
lives only in the per-stage manifest.
"""

from __future__ import annotations

import hashlib
import json
import math
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Mapping, Sequence

from . import __version__
from .econ import (CarResult, DecayResult, DoubleSortResult, Ff5Result,
                   FmResult, ICSeries, SortResult)

__all__ = [
    "write_json",
    "write_text",
    "write_manifest",
    "sha256_file",
    "ic_payload",
    "ic_table",
    "fm_payload",
    "fm_table",
    "ff5_payload",
    "ff5_table",
    "sort_payload",
    "sort_table",
    "double_sort_payload",
    "double_sort_table",
    "car_payload",
    "car_table",
    "decay_payload",
    "decay_table",
]


def _clean(value: Any) -> Any:
    """Replace non-finite floats with None so the JSON stays strict."""
    if isinstance(value, float):
        return value if math.isfinite(value) else None
    if isinstance(value, dict):
        return {k: _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    return value


def write_json(payload: Mapping[str, Any], path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    text = json.dumps(_clean(dict(payload)), indent=2, sort_keys=True)
    path.write_text(text + "\n", encoding="utf-8")
    return path


def write_text(text: str, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    return path


def sha256_file(path: str | Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


def write_manifest(outdir: str | Path, subcommand: str,
                   inputs: Mapping[str, str | Path],
                   config_digest: str,
                   outputs: Sequence[str | Path] = ()) -> Path:
    """Provenance record for one pipeline stage.

    The manifest is the one artifact allowed to carry a timestamp; the
    data outputs themselves must stay byte-stable across reruns.
    """
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    payload = {
        "subcommand": subcommand,
        "tool": "calltone",
        "version": __version__,
        "config_hash": config_digest,
        "created_utc": datetime.now(timezone.utc).isoformat(
            timespec="seconds"),
        "inputs": {
            name: {"path": str(p), "sha256": sha256_file(p)}
            for name, p in sorted(inputs.items())
        },
        "outputs": [str(p) for p in outputs],
    }
    path = outdir / f"manifest_{subcommand}.json"
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n",
                    encoding="utf-8")
    return path


def _fmt(value: float, places: int = 4) -> str:
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return "--"
    if isinstance(value, float) and math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:.{places}f}"


def _table(headers: Sequence[str], rows: Sequence[Sequence[str]],
           title: str | None = None) -> str:
    widths = [len(h) for h in headers]
    for row in rows:
        for j, cell in enumerate(row):
            widths[j] = max(widths[j], len(cell))
    lines = []
    if title:
        lines.append(title)
    lines.append("  ".join(h.rjust(w) for h, w in zip(headers, widths)))
    lines.append("  ".join("-" * w for w in widths))
    for row in rows:
        lines.append("  ".join(c.rjust(w) for c, w in zip(row, widths)))
    return "\n".join(lines) + "\n"


# --- per-analysis payloads and tables --------------------------------------

def ic_payload(series: Sequence[ICSeries]) -> dict[str, Any]:
    return {
        "analysis": "monthly_ic",
        "signals": {
            s.signal: {
                "horizon": s.horizon,
                "mean_ic": s.mean_ic,
                "t_nw": s.t_nw,
                "p_value": s.p_value,
                "lag": s.lag,
                "n_months": s.n_months,
                "months": list(s.months),
                "ics": list(s.ics),
                "ns": list(s.ns),
            }
            for s in series
        },
    }


def ic_table(series: Sequence[ICSeries]) -> str:
    rows = [[s.signal, str(s.horizon), _fmt(s.mean_ic), _fmt(s.t_nw, 2),
             _fmt(s.p_value), str(s.lag), str(s.n_months)]
            for s in series]
    return _table(
        ["signal", "h", "mean IC", "t(NW)", "p", "lag", "months"], rows,
        title="Monthly rank correlation with forward returns")


def fm_payload(result: FmResult, horizon: int) -> dict[str, Any]:
    return {
        "analysis": "fama_macbeth",
        "horizon": horizon,
        "n_months": result.n_months,
        "lag": result.lag,
        "estimates": {
            name: {"gamma_bar": est.gamma_bar, "t_nw": est.t_nw,
                   "p_value": est.p_value}
            for name, est in result.estimates.items()
        },
        "skipped_months": [
            {"month": month, "reason": reason}
            for month, reason in result.skipped
        ],
    }


def fm_table(result: FmResult) -> str:
    rows = [[name, _fmt(est.gamma_bar, 6), _fmt(est.t_nw, 2),
             _fmt(est.p_value)]
            for name, est in result.estimates.items()]
    title = (f"Cross-sectional slopes, averaged over {result.n_months} "
             f"months (lag {result.lag})")
    return _table(["regressor", "gamma", "t(NW)", "p"], rows, title=title)


def ff5_payload(result: Ff5Result, signal: str) -> dict[str, Any]:
    return {
        "analysis": "ff5_alpha",
        "signal": signal,
        "alpha_monthly": result.alpha_monthly,
        "loadings": dict(result.loadings),
        "t_stats": dict(result.t_stats),
        "p_values": dict(result.p_values),
        "r_squared": result.r_squared,
        "n_months": result.n_months,
        "lag": result.lag,
    }


def ff5_table(result: Ff5Result, signal: str) -> str:
    rows = [["alpha", _fmt(result.alpha_monthly, 6),
             _fmt(result.t_stats["alpha"], 2),
             _fmt(result.p_values["alpha"])]]
    for name, value in result.loadings.items():
        rows.append([name, _fmt(value, 4), _fmt(result.t_stats[name], 2),
                     _fmt(result.p_values[name])])
    title = (f"Factor regression of the {signal} long-short portfolio "
             f"({result.n_months} months, lag {result.lag}, "
             f"R2 {result.r_squared:.3f})")
    return _table(["term", "coef", "t(HAC)", "p"], rows, title=title)


def sort_payload(result: SortResult) -> dict[str, Any]:
    return {
        "analysis": "quintile_sort",
        "signal": result.signal,
        "horizon": result.horizon,
        "group_by": result.group_by,
        "n_total": result.n_total,
        "buckets": [
            {"bucket": b.bucket, "n": b.n, "mean_signal": b.mean_signal,
             "mean_return": b.mean_return, "sd_return": b.sd_return,
             "t_stat": b.t_stat}
            for b in result.buckets
        ],
        "spread": {"mean": result.spread_q5_q1, "t_stat": result.spread_t},
        "monotone": result.monotone,
        "skipped_groups": [
            {"group": g, "reason": r} for g, r in result.skipped_groups
        ],
    }


def sort_table(result: SortResult) -> str:
    rows = [[str(b.bucket), str(b.n), _fmt(b.mean_signal),
             _fmt(b.mean_return), _fmt(b.sd_return), _fmt(b.t_stat, 2)]
            for b in result.buckets]
    rows.append(["spread", "", "", _fmt(result.spread_q5_q1),
                 "", _fmt(result.spread_t, 2)])
    title = (f"{result.signal} sorted {result.group_by}, "
             f"{result.horizon}-day returns, N={result.n_total}, "
             f"monotone={'yes' if result.monotone else 'no'}")
    return _table(["bucket", "n", "signal", "return", "sd", "t"], rows,
                  title=title)


def double_sort_payload(result: DoubleSortResult) -> dict[str, Any]:
    return {
        "analysis": "double_sort",
        "signal": result.signal,
        "outer": result.outer,
        "horizon": result.horizon,
        "tercile_ns": list(result.tercile_ns),
        "terciles": {
            str(t): sort_payload(inner)
            for t, inner in result.terciles.items()
        },
    }


def double_sort_table(result: DoubleSortResult) -> str:
    parts = [f"{result.signal} quintiles within {result.outer} terciles\n"]
    for t in sorted(result.terciles):
        inner = result.terciles[t]
        rows = [[str(b.bucket), str(b.n), _fmt(b.mean_return),
                 _fmt(b.t_stat, 2)] for b in inner.buckets]
        rows.append(["spread", "", _fmt(inner.spread_q5_q1),
                     _fmt(inner.spread_t, 2)])
        parts.append(_table(["bucket", "n", "return", "t"], rows,
                            title=f"tercile {t} "
                                  f"(n={result.tercile_ns[t - 1]})"))
    return "\n".join(parts)


def car_payload(result: CarResult) -> dict[str, Any]:
    return {
        "analysis": "car_profile",
        "signal": result.signal,
        "horizon_days": result.horizon_days,
        "days": list(result.days),
        "paths": {str(b): list(path) for b, path in result.paths.items()},
        "ns": {str(b): n for b, n in result.ns.items()},
        "spread_path": list(result.spread_path),
        "excluded": dict(result.excluded),
    }


def car_table(result: CarResult) -> str:
    buckets = sorted(result.paths)
    headers = ["day", *[f"q{b}" for b in buckets], "spread"]
    marks = sorted({0, 1, 2, 3, 5, 10, 15, 20, 25, 30,
                    result.horizon_days} & set(result.days))
    rows = []
    for d in marks:
        row = [str(d)]
        row += [_fmt(result.paths[b][d]) for b in buckets]
        row.append(_fmt(result.spread_path[d]))
        rows.append(row)
    excl = sum(result.excluded.values())
    title = (f"Mean cumulative abnormal returns by {result.signal} bucket "
             f"({excl} events excluded)")
    return _table(headers, rows, title=title)


def decay_payload(result: DecayResult) -> dict[str, Any]:
    return {
        "analysis": "decay_profile",
        "signal": result.signal,
        "half_life": result.half_life,
        "points": [
            {"horizon": p.horizon, "mean_ic": p.mean_ic, "t_nw": p.t_nw,
             "n_months": p.n_months}
            for p in result.points
        ],
    }


def decay_table(result: DecayResult) -> str:
    rows = [[str(p.horizon), _fmt(p.mean_ic), _fmt(p.t_nw, 2),
             str(p.n_months)] for p in result.points]
    half = "none" if result.half_life is None else str(result.half_life)
    title = (f"IC decay for {result.signal} "
             f"(half-life: {half} trading days)")
    return _table(["h", "mean IC", "t(NW)", "months"], rows, title=title)
