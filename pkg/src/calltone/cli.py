"""Command-line pipeline.

Subcommands map one-to-one onto pipeline stages: ingest parses raw
vendor files into the sentence table and the event panel, fit-weights
trains section weights on pre-cutoff data, signals materializes the
call-level columns, and the remaining verbs are analyses over the
finished panel. Every stage writes a manifest recording input hashes,
the config hash, and the tool version; manifests are the only outputs
that carry a timestamp.

Exit codes: 0 success, 2 configuration or usage error, 3 malformed or
inconsistent input data, 4 degenerate statistical situation, 5 temporal
leak into the training window.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import math
import sys
from pathlib import Path
from typing import Sequence

import numpy as np
import pandas as pd

from . import __version__
from .aggregate import (SectionWeights, SentenceScore, call_sentiment,
                        fit_ic_weights, role_mean_column)
from .config import RunConfig, config_hash, load_config
from .econ import (car_profile, decay_profile, double_sort, fama_macbeth,
                   ff5_alpha, monthly_ic, portfolio_monthly_returns,
                   quintile_sort)
from .errors import (CalltoneError, ConfigError, DataError, DegenerateError,
                     FitError)
from .lexicon import lm_score, lm_sentence_probabilities, load_reference_lexicon
from .market import (_parse_date, compound_monthly, compute_sue, event_return,
                     load_earnings, load_factors_daily, load_prices, winsorize)
from .panel import Panel, return_column
from .reports import (car_payload, car_table, decay_payload, decay_table,
                      double_sort_payload, double_sort_table, ff5_payload,
                      ff5_table, fm_payload, fm_table, ic_payload, ic_table,
                      sort_payload, sort_table, write_json, write_manifest,
                      write_text)
from .synth import SynthConfig, emit_ingestion_corpus, generate_panel
from .transcript import (DEFAULT_SELL_SIDE_FIRMS, DOWNSTREAM_ROLES,
                         SpeakerRole, load_transcripts, segment_call)

log = logging.getLogger(__name__)

SIGNAL_CANDIDATES = ("m1", "m2", "m3", "m4", "m5",
                     "lm_m1", "lm_m2", "lm_m3", "lm_m4", "lm_m5")


def _text_hash(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]


def _analyst_firms(cfg: RunConfig) -> tuple[str, ...]:
    extra = tuple(f.lower() for f in cfg.extra_analyst_firms)
    return (*DEFAULT_SELL_SIDE_FIRMS, *extra)


def _load_scores_file(path: str) -> dict[str, list[tuple[int, dict]]]:
    """Parse the scores file: one JSON header line, then one JSON row
    per scored sentence, grouped by call in file order."""
    by_call: dict[str, list[tuple[int, dict]]] = {}
    n_rows = 0
    with open(path, encoding="utf-8") as fh:
        first = fh.readline()
        if not first.strip():
            raise DataError("scores file is empty", path=path, line=1)
        try:
            header = json.loads(first)
        except json.JSONDecodeError as exc:
            raise DataError(f"bad scores header: {exc}",
                            path=path, line=1) from exc
        for key in ("model", "revision", "count"):
            if not isinstance(header, dict) or key not in header:
                raise DataError(f"scores header lacks {key!r}",
                                path=path, line=1)
        for lineno, line in enumerate(fh, start=2):
            if not line.strip():
                continue
            try:
                row = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DataError(f"bad scores row: {exc}",
                                path=path, line=lineno) from exc
            for key in ("call_id", "role", "text_hash",
                        "p_pos", "p_neg", "p_neu"):
                if key not in row:
                    raise DataError(f"scores row lacks {key!r}",
                                    path=path, line=lineno)
            n_rows += 1
            by_call.setdefault(str(row["call_id"]), []).append((lineno, row))
    declared = header["count"]
    if declared != n_rows:
        raise DataError(
            f"scores header declares {declared} rows, file has {n_rows}",
            path=path)
    return by_call


def _simplex_from(tau: float, conf: float) -> tuple[float, float, float]:
    """Invert (net, confidence) back to probabilities, absorbing the
    hair of negative mass the 12-digit CSV round trip can introduce."""
    p_neu = 1.0 - conf
    p_pos = (conf + tau) / 2.0
    p_neg = (conf - tau) / 2.0
    cleaned = []
    for p in (p_pos, p_neg, p_neu):
        if -1e-9 < p < 0.0:
            p = 0.0
        cleaned.append(p)
    return cleaned[0], cleaned[1], cleaned[2]


def _manifest_inputs(**named: str | None) -> dict[str, str]:
    return {name: path for name, path in named.items() if path}


def _stage_ingest(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    firms = _analyst_firms(cfg)
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    lexicon = load_reference_lexicon()
    prices = load_prices(args.prices) if args.prices else {}
    earnings = load_earnings(args.earnings) if args.earnings else None

    by_ticker: dict[str, list[tuple[str, float, float]]] = {}
    if earnings is not None:
        for _, row in earnings.iterrows():
            key = (str(row["ticker"]), _parse_date(
                str(row["report_date"])).isoformat())
            by_ticker.setdefault(key[0], []).append(
                (key[1], float(row["eps_actual"]), float(row["eps_estimate"])))
        for ticker in by_ticker:
            by_ticker[ticker].sort(key=lambda r: r[0])
            dates = [r[0] for r in by_ticker[ticker]]
            if len(set(dates)) != len(dates):
                raise DataError(
                    f"earnings file repeats a report date for {ticker}")

    scores_by_call = _load_scores_file(args.scores)

    sent_rows: list[dict] = []
    panel_rows: list[dict] = []
    seen_calls: set[str] = set()
    for meta, turns in load_transcripts(args.transcripts,
                                        analyst_firms=firms):
        seen_calls.add(meta.call_id)
        sentences = segment_call(meta, turns)
        scored = scores_by_call.get(meta.call_id, [])
        if len(scored) != len(sentences):
            raise DataError(
                f"call {meta.call_id}: segmentation yields "
                f"{len(sentences)} sentences but scores file carries "
                f"{len(scored)} rows")
        for sent, (lineno, row) in zip(sentences, scored):
            if str(row["role"]) != sent.role.value:
                raise DataError(
                    f"call {meta.call_id}: scores row names role "
                    f"{row['role']!r}, segmentation says "
                    f"{sent.role.value!r}", path=args.scores, line=lineno)
            expected = _text_hash(sent.text)
            if str(row["text_hash"]) != expected:
                raise DataError(
                    f"call {meta.call_id}: text hash mismatch "
                    f"({row['text_hash']!r} != {expected!r}); transcript "
                    f"and scores were built from different text",
                    path=args.scores, line=lineno)
            try:
                score = SentenceScore(
                    call_id=meta.call_id, role=sent.role,
                    p_pos=float(row["p_pos"]), p_neg=float(row["p_neg"]),
                    p_neu=float(row["p_neu"]))
            except ValueError as exc:
                raise DataError(f"call {meta.call_id}: {exc}",
                                path=args.scores, line=lineno) from exc
            lm = lm_score(sent.text, lexicon)
            lm_pos, lm_neg, _ = lm_sentence_probabilities(lm)
            sent_rows.append({
                "call_id": meta.call_id,
                "role": sent.role.value,
                "tau": score.net,
                "conf": score.confidence,
                "lm_tau": lm_pos - lm_neg,
                "lm_conf": lm_pos + lm_neg,
            })

        event_date = meta.call_date.isoformat()
        row: dict = {
            "call_id": meta.call_id,
            "ticker": meta.ticker,
            "event_date": event_date,
            "event_month": event_date[:7],
            "timing": meta.timing,
            "n_sentences": len(sentences),
        }
        series = prices.get(meta.ticker)
        for h in cfg.horizons:
            if series is None:
                row[return_column(h)] = math.nan
            else:
                row[return_column(h)] = event_return(
                    series, meta.call_date, meta.timing, h)
        sue_raw = math.nan
        reports = by_ticker.get(meta.ticker, [])
        current = [r for r in reports if r[0] == event_date]
        if current:
            history = [(a, e) for d, a, e in reports if d < event_date]
            record = compute_sue(history, (current[0][1], current[0][2]),
                                 ticker=meta.ticker,
                                 fiscal_quarter=current[0][0])
            sue_raw = record.sue_raw
            if record.reason:
                log.info("ingest: %s sue missing (%s)",
                         meta.call_id, record.reason)
        else:
            log.info("ingest: %s has no earnings row dated %s",
                     meta.call_id, event_date)
        row["sue_raw"] = sue_raw
        panel_rows.append(row)

    orphans = sorted(set(scores_by_call) - seen_calls)
    if orphans:
        raise DataError(
            f"scores file carries {len(orphans)} call ids absent from the "
            f"transcripts, first {orphans[0]!r}")

    frame = pd.DataFrame(panel_rows)
    raw = frame["sue_raw"].to_numpy(dtype=float)
    frame["sue"] = winsorize(raw, cfg.winsor_lower, cfg.winsor_upper)
    panel = Panel(frame).canonical()

    sent_path = outdir / "sentences.csv"
    pd.DataFrame(sent_rows).to_csv(sent_path, index=False,
                                   float_format="%.12g",
                                   lineterminator="\n")
    panel_path = outdir / "panel_base.csv"
    panel.to_csv(panel_path)
    write_manifest(outdir, "ingest",
                   _manifest_inputs(transcripts=args.transcripts,
                                    scores=args.scores, prices=args.prices,
                                    earnings=args.earnings,
                                    config=args.config),
                   config_hash(cfg), [sent_path, panel_path])
    return 0


def _read_sentences(path: str) -> pd.DataFrame:
    frame = pd.read_csv(path, dtype={"call_id": str, "role": str})
    needed = ("call_id", "role", "tau", "conf", "lm_tau", "lm_conf")
    missing = [c for c in needed if c not in frame.columns]
    if missing:
        raise DataError(f"{path}: sentence table missing columns {missing}")
    return frame


def _role_mean_frame(sentences: pd.DataFrame, value_col: str,
                     prefix: str) -> pd.DataFrame:
    pivot = sentences.pivot_table(index="call_id", columns="role",
                                  values=value_col, aggfunc="mean")
    out = pd.DataFrame(index=pivot.index)
    for role in DOWNSTREAM_ROLES:
        col = role_mean_column(role, prefix)
        if role.value in pivot.columns:
            out[col] = pivot[role.value]
        else:
            out[col] = np.nan
    return out.reset_index()


def _stage_fit_weights(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    outdir = Path(args.out)
    sentences = _read_sentences(args.sentences)
    panel = Panel.from_csv(args.panel)
    merged = panel.frame.merge(
        _role_mean_frame(sentences, "tau", "tau"), on="call_id", how="left")
    merged = merged.merge(
        _role_mean_frame(sentences, "lm_tau", "lm_tau"),
        on="call_id", how="left")
    training = Panel(merged).restrict_before(cfg.training_cutoff)
    if len(training) == 0:
        raise FitError(
            f"no events dated before the training cutoff "
            f"{cfg.training_cutoff}")
    fb = fit_ic_weights(training, training_cutoff=cfg.cutoff_date,
                        horizon=args.horizon, prefix="tau")
    lm = fit_ic_weights(training, training_cutoff=cfg.cutoff_date,
                        horizon=args.horizon, prefix="lm_tau")
    wpath = write_json({"finbert": fb.to_dict(), "lm": lm.to_dict()},
                       outdir / "weights.json")
    write_manifest(outdir, "fit-weights",
                   _manifest_inputs(sentences=args.sentences,
                                    panel=args.panel, config=args.config),
                   config_hash(cfg), [wpath])
    return 0


def _load_weights(path: str) -> tuple[SectionWeights, SectionWeights]:
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise ConfigError(f"weights file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise DataError(f"weights file is not valid JSON: {exc}",
                        path=path) from exc
    for key in ("finbert", "lm"):
        if key not in payload:
            raise DataError(f"weights file lacks the {key!r} block",
                            path=path)
    return (SectionWeights.from_dict(payload["finbert"]),
            SectionWeights.from_dict(payload["lm"]))


def _scores_for_call(block: pd.DataFrame, call_id: str, tau_col: str,
                     conf_col: str) -> list[SentenceScore]:
    scores = []
    for _, row in block.iterrows():
        p_pos, p_neg, p_neu = _simplex_from(float(row[tau_col]),
                                            float(row[conf_col]))
        try:
            scores.append(SentenceScore(call_id=call_id,
                                        role=SpeakerRole(row["role"]),
                                        p_pos=p_pos, p_neg=p_neg,
                                        p_neu=p_neu))
        except ValueError as exc:
            raise DataError(
                f"sentence table row for call {call_id}: {exc}") from exc
    return scores


def _stage_signals(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    outdir = Path(args.out)
    sentences = _read_sentences(args.sentences)
    panel = Panel.from_csv(args.panel)
    fb_weights, lm_weights = _load_weights(args.weights)
    rows = []
    for call_id, block in sentences.groupby("call_id", sort=True):
        fb = call_sentiment(str(call_id),
                            _scores_for_call(block, str(call_id),
                                             "tau", "conf"),
                            fb_weights,
                            extreme_threshold=cfg.extreme_threshold)
        lm = call_sentiment(str(call_id),
                            _scores_for_call(block, str(call_id),
                                             "lm_tau", "lm_conf"),
                            lm_weights,
                            extreme_threshold=cfg.extreme_threshold)
        rows.append({
            "call_id": str(call_id),
            "m1": fb.m1_simple, "m2": fb.m2_conf_weighted,
            "m3": fb.m3_extreme, "m4": fb.m4_section_weighted,
            "m5": fb.m5_analyst,
            "lm_m1": lm.m1_simple, "lm_m2": lm.m2_conf_weighted,
            "lm_m3": lm.m3_extreme, "lm_m4": lm.m4_section_weighted,
            "lm_m5": lm.m5_analyst,
        })
    signal_frame = pd.DataFrame(rows)
    merged = panel.frame.merge(signal_frame, on="call_id", how="left")
    out_panel = Panel(merged).canonical()
    ppath = outdir / "panel_signals.csv"
    out_panel.to_csv(ppath)
    write_manifest(outdir, "signals",
                   _manifest_inputs(sentences=args.sentences,
                                    panel=args.panel, weights=args.weights,
                                    config=args.config),
                   config_hash(cfg), [ppath])
    return 0


def _signal_list(args: argparse.Namespace, panel: Panel) -> list[str]:
    if args.signals:
        return [s.strip() for s in args.signals.split(",") if s.strip()]
    present = [s for s in SIGNAL_CANDIDATES if s in panel.frame.columns]
    if not present:
        raise ConfigError("panel carries none of the standard signal "
                          "columns; pass --signals explicitly")
    return present


def _stage_ic(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    outdir = Path(args.out)
    panel = Panel.from_csv(args.panel)
    explicit = bool(args.signals)
    series = []
    for signal in _signal_list(args, panel):
        try:
            series.append(monthly_ic(panel, signal, horizon=args.horizon,
                                     min_obs=cfg.min_month_obs))
        except DegenerateError:
            # requested by name: fail loudly; default sweep: skip the
            # signals this panel cannot support
            if explicit:
                raise
            log.info("ic: skipping degenerate signal %s", signal)
    if not series:
        raise DegenerateError("no signal produced a qualifying IC series")
    write_json(ic_payload(series), outdir / "ic.json")
    write_text(ic_table(series), outdir / "ic.txt")
    write_manifest(outdir, "ic",
                   _manifest_inputs(panel=args.panel, config=args.config),
                   config_hash(cfg),
                   [outdir / "ic.json", outdir / "ic.txt"])
    return 0


def _stage_fm(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    outdir = Path(args.out)
    panel = Panel.from_csv(args.panel)
    regressors = [r.strip() for r in args.regressors.split(",") if r.strip()]
    result = fama_macbeth(panel, regressors, horizon=args.horizon)
    write_json(fm_payload(result, args.horizon), outdir / "fm.json")
    write_text(fm_table(result), outdir / "fm.txt")
    write_manifest(outdir, "fm",
                   _manifest_inputs(panel=args.panel, config=args.config),
                   config_hash(cfg),
                   [outdir / "fm.json", outdir / "fm.txt"])
    return 0


def _stage_ff5(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    outdir = Path(args.out)
    panel = Panel.from_csv(args.panel)
    portfolio = portfolio_monthly_returns(panel, args.signal,
                                          horizon=args.horizon, k=args.k)
    monthly = compound_monthly(load_factors_daily(args.factors))
    result = ff5_alpha(portfolio, monthly)
    write_json(ff5_payload(result, args.signal), outdir / "ff5.json")
    write_text(ff5_table(result, args.signal), outdir / "ff5.txt")
    write_manifest(outdir, "ff5",
                   _manifest_inputs(panel=args.panel, factors=args.factors,
                                    config=args.config),
                   config_hash(cfg),
                   [outdir / "ff5.json", outdir / "ff5.txt"])
    return 0


def _stage_sorts(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    outdir = Path(args.out)
    panel = Panel.from_csv(args.panel)
    result = quintile_sort(panel, args.signal, group_by=args.group_by,
                           horizon=args.horizon, k=args.k)
    write_json(sort_payload(result), outdir / "sorts.json")
    write_text(sort_table(result), outdir / "sorts.txt")
    write_manifest(outdir, "sorts",
                   _manifest_inputs(panel=args.panel, config=args.config),
                   config_hash(cfg),
                   [outdir / "sorts.json", outdir / "sorts.txt"])
    return 0


def _stage_doublesort(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    outdir = Path(args.out)
    panel = Panel.from_csv(args.panel)
    result = double_sort(panel, args.signal, horizon=args.horizon,
                         outer_col=args.outer)
    write_json(double_sort_payload(result), outdir / "doublesort.json")
    write_text(double_sort_table(result), outdir / "doublesort.txt")
    write_manifest(outdir, "doublesort",
                   _manifest_inputs(panel=args.panel, config=args.config),
                   config_hash(cfg),
                   [outdir / "doublesort.json", outdir / "doublesort.txt"])
    return 0


def _stage_car(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    outdir = Path(args.out)
    panel = Panel.from_csv(args.panel)
    prices = load_prices(args.prices)
    bench_ticker = args.benchmark or cfg.benchmark
    benchmark = prices.get(bench_ticker)
    if benchmark is None:
        raise DataError(
            f"benchmark ticker {bench_ticker!r} absent from price file")
    result = car_profile(panel, prices, benchmark, args.signal,
                         horizon_days=args.days, k=args.k)
    write_json(car_payload(result), outdir / "car.json")
    write_text(car_table(result), outdir / "car.txt")
    write_manifest(outdir, "car",
                   _manifest_inputs(panel=args.panel, prices=args.prices,
                                    config=args.config),
                   config_hash(cfg),
                   [outdir / "car.json", outdir / "car.txt"])
    return 0


def _stage_decay(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    outdir = Path(args.out)
    panel = Panel.from_csv(args.panel)
    result = decay_profile(panel, args.signal, horizons=cfg.horizons,
                           min_obs=cfg.min_month_obs)
    write_json(decay_payload(result), outdir / "decay.json")
    write_text(decay_table(result), outdir / "decay.txt")
    write_manifest(outdir, "decay",
                   _manifest_inputs(panel=args.panel, config=args.config),
                   config_hash(cfg),
                   [outdir / "decay.json", outdir / "decay.txt"])
    return 0


_REPORT_SECTIONS = ("ic", "fm", "ff5", "sorts", "doublesort", "car", "decay")


def _stage_report(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    indir = Path(args.dir)
    outdir = Path(args.out) if args.out else indir
    parts = []
    found: dict[str, str] = {}
    for name in _REPORT_SECTIONS:
        path = indir / f"{name}.txt"
        if path.exists():
            found[name] = str(path)
            parts.append(path.read_text(encoding="utf-8"))
    if not parts:
        raise DataError(f"{indir} holds no analysis tables to combine")
    banner = f"calltone {__version__} analysis report\n\n"
    rpath = write_text(banner + "\n".join(parts), outdir / "report.txt")
    write_manifest(outdir, "report", found, config_hash(cfg), [rpath])
    return 0


def _stage_synth(args: argparse.Namespace) -> int:
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    synth_cfg = SynthConfig(seed=args.seed, n_months=args.n_months,
                            calls_per_month=args.calls_per_month,
                            start_month=args.start_month,
                            target_ic=args.target_ic)
    panel, truth = generate_panel(synth_cfg)
    outputs = []
    ppath = outdir / "panel.csv"
    panel.canonical().to_csv(ppath)
    outputs.append(ppath)
    outputs.append(write_json(truth.to_dict(),
                              outdir / "groundtruth_panel.json"))
    if args.corpus:
        outputs.extend(emit_ingestion_corpus(synth_cfg, outdir).values())
    write_manifest(outdir, "synth", {},
                   config_hash(RunConfig()), outputs)
    return 0


def _add_common(parser: argparse.ArgumentParser, *, out_required: bool = True,
                panel: bool = False) -> None:
    parser.add_argument("--config", help="JSON run-config file")
    parser.add_argument("--out", required=out_required,
                        help="output directory")
    if panel:
        parser.add_argument("--panel", required=True,
                            help="panel CSV with signals and returns")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="calltone",
        description="Speaker-aware earnings-call sentiment pipeline.")
    parser.add_argument("--version", action="version",
                        version=f"calltone {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true",
                        help="log skipped months and exclusions")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("ingest", help="parse transcripts, validate scores, "
                       "build the sentence table and event panel")
    p.add_argument("--transcripts", required=True)
    p.add_argument("--scores", required=True)
    p.add_argument("--prices")
    p.add_argument("--earnings")
    _add_common(p)
    p.set_defaults(func=_stage_ingest)

    p = sub.add_parser("fit-weights", help="train section weights on "
                       "pre-cutoff events")
    p.add_argument("--sentences", required=True)
    p.add_argument("--panel", required=True)
    p.add_argument("--horizon", type=int, default=1)
    _add_common(p)
    p.set_defaults(func=_stage_fit_weights)

    p = sub.add_parser("signals", help="aggregate sentences into call-level "
                       "signal columns")
    p.add_argument("--sentences", required=True)
    p.add_argument("--panel", required=True)
    p.add_argument("--weights", required=True)
    _add_common(p)
    p.set_defaults(func=_stage_signals)

    p = sub.add_parser("ic", help="monthly rank correlation per signal")
    p.add_argument("--signals", help="comma-separated signal columns")
    p.add_argument("--horizon", type=int, default=1)
    _add_common(p, panel=True)
    p.set_defaults(func=_stage_ic)

    p = sub.add_parser("fm", help="cross-sectional regressions, "
                       "time-series averaged")
    p.add_argument("--regressors", default="m1,sue")
    p.add_argument("--horizon", type=int, default=1)
    _add_common(p, panel=True)
    p.set_defaults(func=_stage_fm)

    p = sub.add_parser("ff5", help="factor regression of the long-short "
                       "portfolio")
    p.add_argument("--factors", required=True, help="daily factor CSV")
    p.add_argument("--signal", default="m1")
    p.add_argument("--horizon", type=int, default=1)
    p.add_argument("--k", type=int, default=5)
    _add_common(p, panel=True)
    p.set_defaults(func=_stage_ff5)

    p = sub.add_parser("sorts", help="signal-sorted bucket returns")
    p.add_argument("--signal", default="m1")
    p.add_argument("--group-by", choices=("pooled", "month"),
                   default="pooled")
    p.add_argument("--horizon", type=int, default=1)
    p.add_argument("--k", type=int, default=5)
    _add_common(p, panel=True)
    p.set_defaults(func=_stage_sorts)

    p = sub.add_parser("doublesort", help="signal quintiles within "
                       "control terciles")
    p.add_argument("--signal", default="m1")
    p.add_argument("--outer", default="sue")
    p.add_argument("--horizon", type=int, default=1)
    _add_common(p, panel=True)
    p.set_defaults(func=_stage_doublesort)

    p = sub.add_parser("car", help="cumulative abnormal return paths "
                       "by signal bucket")
    p.add_argument("--prices", required=True)
    p.add_argument("--benchmark", help="benchmark ticker "
                   "(default from config)")
    p.add_argument("--signal", default="m1")
    p.add_argument("--days", type=int, default=30)
    p.add_argument("--k", type=int, default=5)
    _add_common(p, panel=True)
    p.set_defaults(func=_stage_car)

    p = sub.add_parser("decay", help="IC by horizon and signal half-life")
    p.add_argument("--signal", default="m1")
    _add_common(p, panel=True)
    p.set_defaults(func=_stage_decay)

    p = sub.add_parser("report", help="combine analysis tables into one "
                       "text report")
    p.add_argument("--dir", required=True,
                   help="directory holding the analysis outputs")
    p.add_argument("--config", help="JSON run-config file")
    p.add_argument("--out", help="output directory (default: --dir)")
    p.set_defaults(func=_stage_report)

    p = sub.add_parser("synth", help="generate a synthetic panel and "
                       "optional raw-file corpus")
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--n-months", type=int, default=12)
    p.add_argument("--calls-per-month", type=int, default=40)
    p.add_argument("--start-month", default="2015-01")
    p.add_argument("--target-ic", type=float, default=None)
    p.add_argument("--corpus", action="store_true",
                   help="also emit transcripts, scores, prices, earnings, "
                        "and daily factors")
    _add_common(p)
    p.set_defaults(func=_stage_synth)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except CalltoneError as exc:
        print(f"calltone: error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
