"""Transcript reading, speaker roles, and sentence segmentation.

This mirrors the downstream pipeline's frozen rules exactly; the
conformance tests hold the two implementations equal sentence by
sentence. Any change here that is not also a change there will be
rejected at ingestion time through the text-hash handshake, so drift
fails loudly rather than silently.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from datetime import datetime
from typing import Iterator, Sequence

from .errors import InputError

__all__ = [
    "Sentence",
    "Call",
    "ROLE_OPERATOR",
    "SELL_SIDE_FIRMS",
    "resolve_role",
    "read_calls",
    "split_sentences",
    "segment",
]

ROLE_ANALYST = "Analyst"
ROLE_CFO = "CFO"
ROLE_EXECUTIVE = "Executive"
ROLE_OTHER = "Other"
ROLE_OPERATOR = "Operator"

# Sell-side firm cues for analyst detection; the downstream pipeline
# ships the same frozen list.
SELL_SIDE_FIRMS: tuple[str, ...] = (
    "goldman sachs", "morgan stanley", "j.p. morgan", "jp morgan",
    "jpmorgan", "bank of america", "merrill lynch", "citigroup",
    "barclays", "credit suisse", "ubs", "deutsche bank", "wells fargo",
    "jefferies", "raymond james", "piper sandler", "stifel", "evercore",
    "bernstein", "wolfe research", "rbc capital", "bmo capital", "cowen",
    "oppenheimer", "needham", "william blair", "keybanc", "truist",
    "mizuho", "nomura", "macquarie", "baird", "canaccord", "guggenheim",
    "hsbc", "scotiabank",
)

# Phrase cues match as substrings; acronym cues only as whole words
# ("director" contains "cto", "coordinator" contains "coo").
_CFO_PHRASES = ("chief financial officer", "treasurer")
_CFO_ACRONYMS = frozenset({"cfo"})
_EXEC_PHRASES = ("chief executive", "president", "chairman",
                 "managing director")
_EXEC_ACRONYMS = frozenset({"ceo", "coo", "cto"})

_TITLE_WORD_RE = re.compile(r"[a-z0-9]+")

_BOUNDARIES = (". ", "? ", "! ")
_ABBREVIATIONS = ("Inc.", "Corp.", "Mr.", "Ms.",
                  "Q1.", "Q2.", "Q3.", "Q4.", "U.S.")
_MIN_CHARS = 10


@dataclass(frozen=True)
class Sentence:
    """One surviving sentence with its call and speaker-role labels."""

    call_id: str
    role: str
    text: str


@dataclass(frozen=True)
class Call:
    """One transcript record reduced to what scoring needs."""

    call_id: str
    turns: tuple[tuple[str, str], ...]  # (role, text) in document order


def resolve_role(name: str, title: str,
                 extra_firms: Sequence[str] = ()) -> str:
    """Classify a speaker. Precedence: Operator, Analyst, CFO,
    Executive, then Other as the fallthrough."""
    name_l = name.strip().lower()
    title_l = title.strip().lower()
    if name_l == "operator" or title_l == "operator":
        return ROLE_OPERATOR
    firms = (*SELL_SIDE_FIRMS, *[f.lower() for f in extra_firms])
    if "analyst" in title_l or any(firm in title_l for firm in firms):
        return ROLE_ANALYST
    title_words = frozenset(_TITLE_WORD_RE.findall(title_l))
    if (any(cue in title_l for cue in _CFO_PHRASES)
            or title_words & _CFO_ACRONYMS):
        return ROLE_CFO
    if (any(cue in title_l for cue in _EXEC_PHRASES)
            or title_words & _EXEC_ACRONYMS):
        return ROLE_EXECUTIVE
    return ROLE_OTHER


def _parse_record(record: object, path: str, line: int,
                  extra_firms: Sequence[str]) -> Call:
    def bad(msg: str) -> InputError:
        return InputError(msg, path=path, line=line)

    if not isinstance(record, dict):
        raise bad("transcript record must be a JSON object")
    for field in ("call_id", "ticker", "call_datetime", "timing", "turns"):
        if field not in record:
            raise bad(f"missing required field {field!r}")
    call_id = record["call_id"]
    if not isinstance(call_id, str) or not call_id:
        raise bad("call_id must be a non-empty string")
    if not isinstance(record["ticker"], str) or not record["ticker"]:
        raise bad("ticker must be a non-empty string")
    raw_dt = record["call_datetime"]
    try:
        parsed = datetime.fromisoformat(raw_dt)
    except (TypeError, ValueError) as exc:
        raise bad(f"call_datetime not ISO-8601: {raw_dt!r}") from exc
    if parsed.tzinfo is None:
        raise bad("call_datetime must carry a timezone offset")
    if record["timing"] not in ("AMC", "BMO"):
        raise bad(f"timing must be 'AMC' or 'BMO', got {record['timing']!r}")
    turns_raw = record["turns"]
    if not isinstance(turns_raw, list):
        raise bad("turns must be an array")
    if not turns_raw:
        raise bad(f"empty transcript: call {call_id!r} has no turns")

    turns: list[tuple[str, str]] = []
    for idx, item in enumerate(turns_raw):
        if not isinstance(item, dict):
            raise bad(f"turn {idx} must be an object")
        name = item.get("name", "")
        title = item.get("title", "")
        if name is None:
            name = ""
        if title is None:
            title = ""
        if not isinstance(name, str) or not isinstance(title, str):
            raise bad(f"turn {idx}: name/title must be strings")
        text = item.get("text")
        if not isinstance(text, str):
            raise bad(f"turn {idx}: missing or non-string text")
        turns.append((resolve_role(name, title, extra_firms), text))
    return Call(call_id=call_id, turns=tuple(turns))


def read_calls(path: str,
               extra_firms: Sequence[str] = ()) -> Iterator[Call]:
    """Stream calls from a JSONL transcript file; duplicate call ids
    are a schema violation."""
    seen: set[str] = set()
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            if not raw.strip():
                continue
            try:
                record = json.loads(raw)
            except json.JSONDecodeError as exc:
                raise InputError(f"invalid JSON: {exc.msg}",
                                 path=path, line=lineno) from exc
            call = _parse_record(record, path, lineno, extra_firms)
            if call.call_id in seen:
                raise InputError(f"duplicate call_id {call.call_id!r}",
                                 path=path, line=lineno)
            seen.add(call.call_id)
            yield call


def split_sentences(text: str) -> list[str]:
    """Candidate sentences of one turn, before length filtering.

    A boundary is ". ", "? ", or "! ", plus end of text; a period
    boundary is suppressed when the candidate so far ends with a frozen
    abbreviation (case-sensitive), in which case scanning resumes one
    character later so the abbreviation stays inside its sentence.
    """
    pieces: list[str] = []
    seg_start = 0
    scan = 0
    n = len(text)
    while True:
        hit: tuple[int, str] | None = None
        for pair in _BOUNDARIES:
            idx = text.find(pair, scan, n)
            if idx != -1 and (hit is None or idx < hit[0]):
                hit = (idx, pair)
        if hit is None:
            break
        idx, pair = hit
        candidate = text[seg_start:idx + 1]
        if pair == ". " and candidate.rstrip().endswith(_ABBREVIATIONS):
            scan = idx + 1
            continue
        pieces.append(candidate)
        seg_start = idx + 2
        scan = seg_start
    tail = text[seg_start:]
    if tail.strip():
        pieces.append(tail)
    return pieces


def segment(call: Call) -> list[Sentence]:
    """Surviving sentences of one call, in document order.

    Operator turns are dropped whole; every other candidate is
    whitespace-stripped and kept when at least 10 characters remain.
    """
    out: list[Sentence] = []
    for role, text in call.turns:
        if role == ROLE_OPERATOR:
            continue
        for piece in split_sentences(text):
            stripped = piece.strip()
            if len(stripped) >= _MIN_CHARS:
                out.append(Sentence(call_id=call.call_id, role=role,
                                    text=stripped))
    return out
