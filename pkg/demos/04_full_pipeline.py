"""Walkthrough: the full command-line pipeline on an emitted corpus.

Drives the same entry points the installed `calltone` command exposes:
generate a synthetic ingestion corpus (transcripts, sentence scores,
prices, earnings), validate and ingest it, train section weights
before a cutoff, aggregate sentences into call-level signals, run the
rank-correlation and sort analyses, and combine the tables into one
report. Every artifact lands in a temp directory that is printed at
the end; run manifests record the sha256 of each input consumed.
"""

from __future__ import annotations

import json
import tempfile
from pathlib import Path

from calltone.cli import main as calltone

CUTOFF = "2019-09-01"


def run(*args: str) -> None:
    argv = [str(a) for a in args]
    print(f"$ calltone {' '.join(argv)}")
    rc = calltone(argv)
    if rc != 0:
        raise SystemExit(f"stage failed with exit code {rc}")


def main() -> None:
    root = Path(tempfile.mkdtemp(prefix="calltone-demo4-"))
    corpus, work = root / "corpus", root / "work"

    run("synth", "--seed", "21", "--n-months", "14",
        "--calls-per-month", "30", "--start-month", "2019-01",
        "--target-ic", "0.15", "--corpus", "--out", corpus)

    cfg = root / "run.json"
    cfg.write_text(json.dumps({"training_cutoff": CUTOFF,
                               "min_month_obs": 10}))

    run("ingest", "--transcripts", corpus / "transcripts.jsonl",
        "--scores", corpus / "scores.jsonl",
        "--prices", corpus / "prices.csv",
        "--earnings", corpus / "earnings.csv",
        "--config", cfg, "--out", work)
    run("fit-weights", "--sentences", work / "sentences.csv",
        "--panel", work / "panel_base.csv",
        "--config", cfg, "--out", work)
    run("signals", "--sentences", work / "sentences.csv",
        "--panel", work / "panel_base.csv",
        "--weights", work / "weights.json",
        "--config", cfg, "--out", work)
    run("ic", "--panel", work / "panel_signals.csv",
        "--config", cfg, "--out", work)
    run("sorts", "--panel", work / "panel_signals.csv",
        "--config", cfg, "--out", work)
    run("report", "--dir", work, "--config", cfg)

    weights = json.loads((work / "weights.json").read_text())
    print("\nfitted role weights (scored route):")
    for role, entry in weights["finbert"]["roles"].items():
        print(f"  {role:9s} {entry['weight']:.3f}")

    print("\n" + (work / "report.txt").read_text())
    print(f"artifacts under {root}")


if __name__ == "__main__":
    main()
