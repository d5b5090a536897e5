"""Transcript parsing, speaker-role classification, sentence segmentation.

The ingestion format is newline-delimited JSON, one call per line:

    {"call_id": ..., "ticker": ..., "call_datetime": ISO-8601 with offset,
     "timing": "AMC" | "BMO", "turns": [{"name", "title", "text"}, ...]}

Roles are resolved from the speaker's title (and name, for the operator)
with a frozen keyword configuration; sentences are produced by a
deterministic rule-based splitter so the whole stage is bit-reproducible.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from datetime import date, datetime
from enum import Enum
from typing import Iterator, Sequence

from .errors import EmptyTranscriptError, ParseError

__all__ = [
    "SpeakerRole",
    "SpeakerTurn",
    "RawSentence",
    "CallMeta",
    "DEFAULT_SELL_SIDE_FIRMS",
    "classify_speaker",
    "parse_transcript",
    "load_transcripts",
    "segment_sentences",
    "segment_call",
]


class SpeakerRole(Enum):
    ANALYST = "Analyst"
    CFO = "CFO"
    EXECUTIVE = "Executive"
    OTHER = "Other"
    OPERATOR = "Operator"


#: Roles that survive into downstream sentence sets.
DOWNSTREAM_ROLES = (
    SpeakerRole.ANALYST,
    SpeakerRole.CFO,
    SpeakerRole.EXECUTIVE,
    SpeakerRole.OTHER,
)

#: Default sell-side firm cues for analyst detection. The published
#: methodology names no list, so this one is explicitly user-extensible:
#: pass your own iterable to ``classify_speaker`` / ``parse_transcript``.
DEFAULT_SELL_SIDE_FIRMS: tuple[str, ...] = (
    "goldman sachs",
    "morgan stanley",
    "j.p. morgan",
    "jp morgan",
    "jpmorgan",
    "bank of america",
    "merrill lynch",
    "citigroup",
    "barclays",
    "credit suisse",
    "ubs",
    "deutsche bank",
    "wells fargo",
    "jefferies",
    "raymond james",
    "piper sandler",
    "stifel",
    "evercore",
    "bernstein",
    "wolfe research",
    "rbc capital",
    "bmo capital",
    "cowen",
    "oppenheimer",
    "needham",
    "william blair",
    "keybanc",
    "truist",
    "mizuho",
    "nomura",
    "macquarie",
    "baird",
    "canaccord",
    "guggenheim",
    "hsbc",
    "scotiabank",
)

# Title keyword cues, frozen configuration. Multi-word cues match as
# substrings; acronym cues match as whole words only, because e.g.
# "director" contains "cto" and "coordinator" contains "coo".
_CFO_PHRASES = ("chief financial officer", "treasurer")
_CFO_ACRONYMS = ("cfo",)
_EXEC_PHRASES = ("chief executive", "president", "chairman", "managing director")
_EXEC_ACRONYMS = ("ceo", "coo", "cto")

_WORD_RE = re.compile(r"[a-z0-9]+")


@dataclass(frozen=True)
class SpeakerTurn:
    """One uninterrupted statement by a single speaker."""

    speaker_name: str
    speaker_title: str
    role: SpeakerRole
    text: str
    sequence_index: int

    def __post_init__(self) -> None:
        if self.sequence_index < 0:
            raise ValueError("sequence_index must be non-negative")


@dataclass(frozen=True)
class RawSentence:
    """A filtered sentence attributed to a call and a speaker role."""

    call_id: str
    role: SpeakerRole
    text: str
    char_length: int

    def __post_init__(self) -> None:
        if self.role is SpeakerRole.OPERATOR:
            raise ValueError("operator sentences are never emitted")
        if self.char_length < 10:
            raise ValueError("sentences under 10 characters are filtered")
        if self.char_length != len(self.text):
            raise ValueError("char_length must equal len(text)")


@dataclass(frozen=True)
class CallMeta:
    """Identity block of one transcript record."""

    call_id: str
    ticker: str
    call_datetime: datetime
    timing: str  # "AMC" | "BMO"

    @property
    def call_date(self) -> date:
        return self.call_datetime.date()


def classify_speaker(
    name: str,
    title: str,
    *,
    analyst_firms: Sequence[str] = DEFAULT_SELL_SIDE_FIRMS,
) -> SpeakerRole:
    """Map a speaker's name/title strings to a role.

    Matching is case-insensitive. Precedence on multi-cue titles is
    Operator > Analyst > CFO > Executive > Other, so "President & CFO"
    resolves to CFO. Unmatched input falls through to Other.
    """
    low_name = name.strip().lower()
    low_title = title.strip().lower()
    if low_name == "operator" or low_title == "operator":
        return SpeakerRole.OPERATOR
    if "analyst" in low_title or any(f in low_title for f in analyst_firms):
        return SpeakerRole.ANALYST
    words = set(_WORD_RE.findall(low_title))
    if any(p in low_title for p in _CFO_PHRASES) or words & set(_CFO_ACRONYMS):
        return SpeakerRole.CFO
    if any(p in low_title for p in _EXEC_PHRASES) or words & set(_EXEC_ACRONYMS):
        return SpeakerRole.EXECUTIVE
    return SpeakerRole.OTHER


_REQUIRED_FIELDS = ("call_id", "ticker", "call_datetime", "timing", "turns")


def parse_transcript(
    record: dict,
    *,
    path: str | None = None,
    line: int | None = None,
    analyst_firms: Sequence[str] = DEFAULT_SELL_SIDE_FIRMS,
) -> tuple[CallMeta, list[SpeakerTurn]]:
    """Validate one transcript record and classify its turns.

    Returns the call identity and the turns in document order. Missing
    speaker name or title degrades to the empty string (classification
    then falls through its keyword cues); missing turn text is an error.

    Raises
    ------
    ParseError
        On any schema violation, with file/line context when available.
    EmptyTranscriptError
        When the record carries zero turns.
    """

    def fail(msg: str) -> ParseError:
        return ParseError(msg, path=path, line=line)

    if not isinstance(record, dict):
        raise fail("transcript record must be a JSON object")
    for field in _REQUIRED_FIELDS:
        if field not in record:
            raise fail(f"missing required field {field!r}")
    call_id = record["call_id"]
    ticker = record["ticker"]
    if not isinstance(call_id, str) or not call_id:
        raise fail("call_id must be a non-empty string")
    if not isinstance(ticker, str) or not ticker:
        raise fail("ticker must be a non-empty string")
    raw_dt = record["call_datetime"]
    if not isinstance(raw_dt, str):
        raise fail("call_datetime must be an ISO-8601 string")
    try:
        call_dt = datetime.fromisoformat(raw_dt)
    except ValueError as exc:
        raise fail(f"call_datetime not ISO-8601: {raw_dt!r} ({exc})") from exc
    if call_dt.tzinfo is None:
        raise fail("call_datetime must carry a timezone offset")
    timing = record["timing"]
    if timing not in ("AMC", "BMO"):
        raise fail(f"timing must be 'AMC' or 'BMO', got {timing!r}")
    turns_raw = record["turns"]
    if not isinstance(turns_raw, list):
        raise fail("turns must be an array")
    if not turns_raw:
        raise EmptyTranscriptError(
            f"empty transcript: call {call_id!r} has no turns",
            path=path, line=line,
        )

    meta = CallMeta(call_id=call_id, ticker=ticker,
                    call_datetime=call_dt, timing=timing)
    turns: list[SpeakerTurn] = []
    for idx, item in enumerate(turns_raw):
        if not isinstance(item, dict):
            raise fail(f"turn {idx} must be an object")
        name = item.get("name", "")
        title = item.get("title", "")
        if name is None:
            name = ""
        if title is None:
            title = ""
        if not isinstance(name, str) or not isinstance(title, str):
            raise fail(f"turn {idx}: name/title must be strings")
        text = item.get("text")
        if not isinstance(text, str):
            raise fail(f"turn {idx}: missing or non-string text")
        role = classify_speaker(name, title, analyst_firms=analyst_firms)
        turns.append(SpeakerTurn(speaker_name=name, speaker_title=title,
                                 role=role, text=text, sequence_index=idx))
    return meta, turns


def load_transcripts(
    path: str,
    *,
    analyst_firms: Sequence[str] = DEFAULT_SELL_SIDE_FIRMS,
) -> Iterator[tuple[CallMeta, list[SpeakerTurn]]]:
    """Stream transcript records from a JSONL file.

    Duplicate call_ids across the file are rejected.
    """
    seen: set[str] = set()
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            if not raw.strip():
                continue
            try:
                record = json.loads(raw)
            except json.JSONDecodeError as exc:
                raise ParseError(f"invalid JSON: {exc.msg}",
                                 path=path, line=lineno) from exc
            meta, turns = parse_transcript(
                record, path=path, line=lineno, analyst_firms=analyst_firms)
            if meta.call_id in seen:
                raise ParseError(f"duplicate call_id {meta.call_id!r}",
                                 path=path, line=lineno)
            seen.add(meta.call_id)
            yield meta, turns


# Sentence boundaries are the two-character sequences below plus end of
# text. A boundary after "." is suppressed when the candidate sentence
# ends with one of the frozen abbreviations (matched case-sensitively).
_BOUNDARIES = (". ", "? ", "! ")
_ABBREVIATIONS = ("Inc.", "Corp.", "Mr.", "Ms.",
                  "Q1.", "Q2.", "Q3.", "Q4.", "U.S.")
_MIN_SENTENCE_CHARS = 10


def _split_text(text: str) -> list[str]:
    """Split raw turn text into candidate sentences (unfiltered)."""
    pieces: list[str] = []
    start = 0
    pos = 0
    n = len(text)
    while pos < n - 1:
        pair = text[pos:pos + 2]
        if pair in _BOUNDARIES:
            candidate = text[start:pos + 1]
            if pair == ". " and candidate.rstrip().endswith(_ABBREVIATIONS):
                pos += 1
                continue
            pieces.append(candidate)
            start = pos + 2
            pos = start
            continue
        pos += 1
    tail = text[start:]
    if tail.strip():
        pieces.append(tail)
    return pieces


def segment_sentences(turn: SpeakerTurn, call_id: str) -> list[RawSentence]:
    """Segment one turn into filtered sentences carrying the turn's role.

    Operator turns yield nothing. Surviving sentences are stripped of
    leading/trailing whitespace; the 10-character minimum counts interior
    whitespace and punctuation after that strip.
    """
    if turn.role is SpeakerRole.OPERATOR:
        return []
    out: list[RawSentence] = []
    for piece in _split_text(turn.text):
        stripped = piece.strip()
        if len(stripped) < _MIN_SENTENCE_CHARS:
            continue
        out.append(RawSentence(call_id=call_id, role=turn.role,
                               text=stripped, char_length=len(stripped)))
    return out


def segment_call(meta: CallMeta,
                 turns: Sequence[SpeakerTurn]) -> list[RawSentence]:
    """All surviving sentences of a call, in document order."""
    out: list[RawSentence] = []
    for turn in turns:
        out.extend(segment_sentences(turn, meta.call_id))
    return out
