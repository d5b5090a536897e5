"""Score-record construction and file emission.

The output format is the ingestion handshake: a JSON header line
carrying model identity and the exact row count, then one JSON row per
sentence with the sentence's truncated SHA-256 so the consumer can
prove the scores were computed on the text it re-segments.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

__all__ = ["ScoredSentenceRecord", "text_hash", "write_scores"]

_SIMPLEX_TOL = 1e-6


def text_hash(text: str) -> str:
    """First 16 hex digits of the sentence's SHA-256."""
    return hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]


@dataclass(frozen=True)
class ScoredSentenceRecord:
    """One scored sentence, in input order."""

    call_id: str
    role: str
    text_hash: str
    p_pos: float
    p_neg: float
    p_neu: float

    def __post_init__(self) -> None:
        for name in ("p_pos", "p_neg", "p_neu"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"{name} outside [0, 1]: {p}")
        total = self.p_pos + self.p_neg + self.p_neu
        if abs(total - 1.0) > _SIMPLEX_TOL:
            raise ValueError(f"probabilities sum to {total}, not 1")

    def to_json(self) -> str:
        return json.dumps({
            "call_id": self.call_id,
            "role": self.role,
            "text_hash": self.text_hash,
            "p_pos": self.p_pos,
            "p_neg": self.p_neg,
            "p_neu": self.p_neu,
        }, sort_keys=True)


def write_scores(path: str | Path,
                 records: Iterable[ScoredSentenceRecord],
                 *, model: str, revision: str) -> Path:
    """Write header plus rows; the header count equals the rows written.

    Records are materialized first so a failed iteration never leaves a
    half-written file behind.
    """
    rows = [record.to_json() for record in records]
    header = json.dumps({"model": model, "revision": revision,
                         "count": len(rows)}, sort_keys=True)
    out = Path(path)
    out.write_text("\n".join([header, *rows]) + "\n", encoding="utf-8")
    return out
