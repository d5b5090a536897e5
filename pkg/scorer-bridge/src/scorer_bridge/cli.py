"""Command-line driver: score a transcript file into the ingestion format."""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Sequence

from . import __version__
from .emit import ScoredSentenceRecord, text_hash, write_scores
from .errors import BridgeError
from .transcripts import read_calls, segment

log = logging.getLogger("scorer_bridge")


def _score_file(args: argparse.Namespace) -> int:
    from .model import SentenceClassifier

    classifier = SentenceClassifier(args.model, device=args.device)
    sentences = []
    for call in read_calls(args.transcripts):
        sentences.extend(segment(call))

    records = []
    for start in range(0, len(sentences), args.batch_size):
        chunk = sentences[start:start + args.batch_size]
        probs = classifier.score_batch([s.text for s in chunk])
        for sent, (p_pos, p_neg, p_neu) in zip(chunk, probs):
            records.append(ScoredSentenceRecord(
                call_id=sent.call_id, role=sent.role,
                text_hash=text_hash(sent.text),
                p_pos=p_pos, p_neg=p_neg, p_neu=p_neu))

    revision = args.revision or classifier.revision
    out = write_scores(args.out, records,
                       model=classifier.name, revision=revision)
    if classifier.n_truncated:
        log.warning("%d sentence(s) exceeded the token limit and were "
                    "truncated", classifier.n_truncated)
    print(f"wrote {len(records)} scores for {len(sentences)} sentences "
          f"to {out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scorer-bridge",
        description="Score earnings-call sentences with a local "
                    "three-class sentiment model.")
    parser.add_argument("--version", action="version",
                        version=f"scorer-bridge {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("score", help="segment transcripts and emit the "
                       "scored-sentence file")
    p.add_argument("--transcripts", required=True,
                   help="JSONL transcript file")
    p.add_argument("--model", required=True,
                   help="directory holding tokenizer and model files")
    p.add_argument("--out", required=True, help="output scores file")
    p.add_argument("--batch-size", type=int, default=32)
    p.add_argument("--device", default="cpu")
    p.add_argument("--revision",
                   help="override the recorded model revision")
    p.set_defaults(func=_score_file)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(message)s")
    args = build_parser().parse_args(argv)
    if getattr(args, "batch_size", 1) < 1:
        print("scorer-bridge: error: --batch-size must be >= 1",
              file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except BridgeError as exc:
        print(f"scorer-bridge: error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
