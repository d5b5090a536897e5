"""Dictionary tone scoring against frozen positive/negative word lists.

The shipped lists are plain text, one lowercase term per line, pinned by
sha256 checksums; the reference lists carry exactly 347 positive and
2,345 negative terms. Scoring is deliberately context-blind: no negation
handling, no n-grams. Sentence tone is (n_pos - n_neg) / n_words.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass
from importlib import resources
from typing import Sequence

from .errors import ConfigError, DataError
from .transcript import RawSentence

__all__ = [
    "Lexicon",
    "LmScore",
    "tokenize",
    "load_lexicon",
    "load_reference_lexicon",
    "lm_score",
    "lm_sentence_probabilities",
    "lm_call_aggregates",
]

REFERENCE_POSITIVE_COUNT = 347
REFERENCE_NEGATIVE_COUNT = 2345

# Maximal runs of ASCII letters, with apostrophes kept only between
# letters; digits and all other punctuation separate tokens.
_TOKEN_RE = re.compile(r"[a-z]+(?:'[a-z]+)*")


def tokenize(text: str) -> list[str]:
    """Lowercase word tokens of a sentence.

    >>> tokenize("Revenue grew 15% YoY.")
    ['revenue', 'grew', 'yoy']
    """
    return _TOKEN_RE.findall(text.lower())


@dataclass(frozen=True)
class Lexicon:
    positive_terms: frozenset[str]
    negative_terms: frozenset[str]

    def __post_init__(self) -> None:
        overlap = self.positive_terms & self.negative_terms
        if overlap:
            sample = ", ".join(sorted(overlap)[:5])
            raise ConfigError(
                f"word lists overlap on {len(overlap)} terms (e.g. {sample})")


@dataclass(frozen=True)
class LmScore:
    n_pos: int
    n_neg: int
    n_words: int
    tone: float


def _read_terms(path: str) -> frozenset[str]:
    terms: set[str] = set()
    with open(path, encoding="utf-8") as handle:
        for raw in handle:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            terms.add(line.lower())
    return frozenset(terms)


def load_lexicon(positive_path: str, negative_path: str) -> Lexicon:
    """Load user-supplied word lists (UTF-8, one term per line, ``#``
    comments and blank lines ignored)."""
    return Lexicon(positive_terms=_read_terms(positive_path),
                   negative_terms=_read_terms(negative_path))


def load_reference_lexicon() -> Lexicon:
    """Load the packaged word lists, verifying checksums and counts."""
    root = resources.files("calltone").joinpath("data")
    sums = json.loads(root.joinpath("lm_checksums.json").read_text("utf-8"))
    terms: dict[str, frozenset[str]] = {}
    for name in ("lm_positive.txt", "lm_negative.txt"):
        blob = root.joinpath(name).read_bytes()
        digest = hashlib.sha256(blob).hexdigest()
        if digest != sums[name]:
            raise DataError(f"checksum mismatch for packaged list {name}: "
                            f"{digest} != {sums[name]}")
        terms[name] = frozenset(
            line.strip().lower()
            for line in blob.decode("utf-8").splitlines()
            if line.strip() and not line.startswith("#"))
    lex = Lexicon(positive_terms=terms["lm_positive.txt"],
                  negative_terms=terms["lm_negative.txt"])
    if len(lex.positive_terms) != REFERENCE_POSITIVE_COUNT:
        raise DataError(f"reference positive list has "
                        f"{len(lex.positive_terms)} terms, "
                        f"expected {REFERENCE_POSITIVE_COUNT}")
    if len(lex.negative_terms) != REFERENCE_NEGATIVE_COUNT:
        raise DataError(f"reference negative list has "
                        f"{len(lex.negative_terms)} terms, "
                        f"expected {REFERENCE_NEGATIVE_COUNT}")
    return lex


def lm_score(sentence: str, lexicon: Lexicon) -> LmScore:
    """Count dictionary hits over the sentence's tokens.

    tone = (n_pos - n_neg) / n_words, and 0.0 for a wordless sentence.
    """
    tokens = tokenize(sentence)
    n_words = len(tokens)
    n_pos = sum(1 for t in tokens if t in lexicon.positive_terms)
    n_neg = sum(1 for t in tokens if t in lexicon.negative_terms)
    tone = (n_pos - n_neg) / n_words if n_words else 0.0
    return LmScore(n_pos=n_pos, n_neg=n_neg, n_words=n_words, tone=tone)


def lm_sentence_probabilities(score: LmScore) -> tuple[float, float, float]:
    """Map dictionary counts onto the (p_pos, p_neg, p_neu) simplex.

    p_pos = n_pos/n_words and p_neg = n_neg/n_words, so the derived net
    score equals the dictionary tone exactly and the derived confidence
    is the dictionary hit rate. A wordless sentence is fully neutral.
    This embedding is what lets every aggregation formula run unchanged
    on dictionary scores.
    """
    if score.n_words == 0:
        return 0.0, 0.0, 1.0
    p_pos = score.n_pos / score.n_words
    p_neg = score.n_neg / score.n_words
    return p_pos, p_neg, 1.0 - p_pos - p_neg


def lm_call_aggregates(
    sentences: Sequence[tuple[RawSentence, LmScore]],
    method: str,
    weights: "SectionWeights | None" = None,
    *,
    extreme_threshold: float = 0.5,
) -> float:
    """One call-level dictionary signal, method in {"m1", ..., "m5"}.

    Applies the identical aggregation formulas used for model scores,
    with the sentence net score replaced by dictionary tone (via
    :func:`lm_sentence_probabilities`). Returns NaN for missing results
    (e.g. "m5" on a call with no analyst sentences) -- never 0.0.
    """
    from .aggregate import (SectionWeights, SentenceScore, agg_analyst_only,
                            agg_confidence_weighted, agg_extreme_fraction,
                            agg_section_weighted, agg_simple_mean,
                            category_means)

    scores = []
    for raw, lm in sentences:
        p_pos, p_neg, p_neu = lm_sentence_probabilities(lm)
        scores.append(SentenceScore(call_id=raw.call_id, role=raw.role,
                                    p_pos=p_pos, p_neg=p_neg, p_neu=p_neu))
    if method == "m1":
        return agg_simple_mean(scores)
    if method == "m2":
        return agg_confidence_weighted(scores)
    if method == "m3":
        return agg_extreme_fraction(scores, threshold=extreme_threshold)
    if method == "m4":
        if weights is None:
            raise ConfigError("method 'm4' requires fitted section weights")
        return agg_section_weighted(category_means(scores), weights)
    if method == "m5":
        return agg_analyst_only(scores)
    raise ConfigError(f"unknown aggregation method {method!r}")
