"""Classifier loading and batched sentence inference.

The heavy dependencies (torch, transformers) are imported lazily so
that segmentation, validation, and emission stay importable without
them. Inference runs in eval mode with gradients off; given one model
revision the scores are deterministic.
"""

from __future__ import annotations

import hashlib
import logging
from pathlib import Path
from typing import Sequence

from .errors import ModelError

__all__ = ["SentenceClassifier", "model_revision"]

log = logging.getLogger("scorer_bridge")

#: FinBERT's positional limit; longer sentences are truncated (counted
#: and logged, never dropped).
MAX_TOKENS = 512

_LABEL_KEYS = {"positive": "p_pos", "negative": "p_neg", "neutral": "p_neu"}


def model_revision(model_dir: str | Path) -> str:
    """Short content fingerprint of a model directory.

    Hashes file names and sizes rather than weight bytes; enough to
    distinguish revisions without reading gigabytes.
    """
    root = Path(model_dir)
    digest = hashlib.sha256()
    for file in sorted(root.rglob("*")):
        if file.is_file():
            digest.update(file.relative_to(root).as_posix().encode())
            digest.update(str(file.stat().st_size).encode())
    return digest.hexdigest()[:12]


class SentenceClassifier:
    """A locally stored three-class sentiment model.

    Parameters
    ----------
    model_dir:
        Directory holding the tokenizer and model files.
    device:
        Torch device string, default "cpu".

    Raises
    ------
    ModelError
        When the directory cannot be loaded or the model's labels are
        not the expected positive/negative/neutral triple.
    """

    def __init__(self, model_dir: str | Path, *, device: str = "cpu") -> None:
        try:
            import torch
            from transformers import (AutoModelForSequenceClassification,
                                      AutoTokenizer)
        except ImportError as exc:  # pragma: no cover - env dependent
            raise ModelError(f"inference stack unavailable: {exc}") from exc

        path = Path(model_dir)
        if not path.is_dir():
            raise ModelError(f"model directory not found: {path}")
        try:
            self.tokenizer = AutoTokenizer.from_pretrained(str(path))
            self.model = AutoModelForSequenceClassification.from_pretrained(
                str(path))
        except Exception as exc:
            raise ModelError(f"cannot load model from {path}: {exc}") from exc

        id2label = getattr(self.model.config, "id2label", {}) or {}
        mapping: dict[str, int] = {}
        for idx, label in id2label.items():
            key = _LABEL_KEYS.get(str(label).strip().lower())
            if key is not None:
                mapping[key] = int(idx)
        if sorted(mapping) != ["p_neg", "p_neu", "p_pos"]:
            raise ModelError(
                f"model labels {dict(id2label)!r} are not a "
                "positive/negative/neutral triple")
        self._index = mapping
        self._torch = torch
        self.device = device
        self.name = path.name
        self.revision = model_revision(path)
        self.model.to(device)
        self.model.eval()
        self.n_truncated = 0

    def _count_truncated(self, texts: Sequence[str]) -> int:
        encoded = self.tokenizer(list(texts), truncation=False,
                                 padding=False)["input_ids"]
        return sum(1 for ids in encoded if len(ids) > MAX_TOKENS)

    def score_batch(self,
                    texts: Sequence[str]) -> list[tuple[float, float, float]]:
        """Probabilities (p_pos, p_neg, p_neu) per sentence, in order.

        Each triple is renormalized onto the simplex after softmax so
        downstream validation at 1e-6 can never fail on float drift.
        """
        if not texts:
            return []
        torch = self._torch
        truncated = self._count_truncated(texts)
        if truncated:
            self.n_truncated += truncated
            log.info("truncated %d sentence(s) beyond %d tokens",
                     truncated, MAX_TOKENS)
        batch = self.tokenizer(list(texts), padding=True, truncation=True,
                               max_length=MAX_TOKENS, return_tensors="pt")
        batch = {k: v.to(self.device) for k, v in batch.items()}
        with torch.no_grad():
            logits = self.model(**batch).logits
        probs = torch.softmax(logits.float(), dim=-1).cpu().numpy()
        out = []
        for row in probs:
            p_pos = float(row[self._index["p_pos"]])
            p_neg = float(row[self._index["p_neg"]])
            p_neu = float(row[self._index["p_neu"]])
            total = p_pos + p_neg + p_neu
            out.append((p_pos / total, p_neg / total, p_neu / total))
        return out
