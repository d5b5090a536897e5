"""Speaker classification, record parsing, and sentence segmentation."""

from __future__ import annotations

import json
from datetime import date, datetime

import pytest
from hypothesis import given
from hypothesis import strategies as st

from calltone.errors import EmptyTranscriptError, ParseError
from calltone.transcript import (
    CallMeta,
    RawSentence,
    SpeakerRole,
    SpeakerTurn,
    classify_speaker,
    load_transcripts,
    parse_transcript,
    segment_call,
    segment_sentences,
)


def _turn(text: str, role: SpeakerRole = SpeakerRole.EXECUTIVE,
          idx: int = 0) -> SpeakerTurn:
    return SpeakerTurn(speaker_name="A. Name", speaker_title="x", role=role,
                       text=text, sequence_index=idx)


def _record(**overrides) -> dict:
    base = {
        "call_id": "CALL-1",
        "ticker": "ACME",
        "call_datetime": "2024-02-01T16:30:00-05:00",
        "timing": "AMC",
        "turns": [
            {"name": "Operator", "title": "", "text": "Welcome everyone."},
            {"name": "Pat Doe", "title": "Chief Executive Officer",
             "text": "Revenue grew nicely. Margins rose again."},
            {"name": "Lee Roe", "title": "Analyst, Example Capital",
             "text": "Great quarter indeed."},
        ],
    }
    base.update(overrides)
    return base


class TestClassifySpeaker:
    def test_operator_matches_on_exact_name_or_title(self):
        assert classify_speaker("Operator", "") is SpeakerRole.OPERATOR
        assert classify_speaker("", "operator") is SpeakerRole.OPERATOR
        assert classify_speaker(" OPERATOR ", "") is SpeakerRole.OPERATOR

    def test_operator_is_equality_not_substring(self):
        got = classify_speaker("Operator Assistant", "Floor support")
        assert got is SpeakerRole.OTHER

    def test_analyst_by_title_keyword(self):
        assert classify_speaker("J", "Senior Analyst") is SpeakerRole.ANALYST
        assert classify_speaker("J", "Research analyst, tech"
                                ) is SpeakerRole.ANALYST

    def test_analyst_by_firm_name(self):
        assert classify_speaker("J", "Goldman Sachs") is SpeakerRole.ANALYST
        assert classify_speaker("J", "Equity Research, Morgan Stanley"
                                ) is SpeakerRole.ANALYST

    def test_analyst_firm_list_is_extensible(self):
        title = "Acme Securities"
        assert classify_speaker("J", title) is SpeakerRole.OTHER
        got = classify_speaker("J", title,
                               analyst_firms=("acme securities",))
        assert got is SpeakerRole.ANALYST

    def test_cfo_cues(self):
        assert classify_speaker("J", "Chief Financial Officer"
                                ) is SpeakerRole.CFO
        assert classify_speaker("J", "EVP and Treasurer") is SpeakerRole.CFO
        assert classify_speaker("J", "CFO") is SpeakerRole.CFO

    def test_executive_cues(self):
        for title in ("Chief Executive Officer", "President", "Chairman",
                      "Managing Director", "CEO", "COO", "CTO"):
            assert classify_speaker("J", title) is SpeakerRole.EXECUTIVE, title

    def test_acronyms_match_whole_words_only(self):
        # "Director" contains "cto", "Coordinator" contains "coo"
        assert classify_speaker("J", "Director") is SpeakerRole.OTHER
        assert classify_speaker("J", "Event Coordinator") is SpeakerRole.OTHER
        assert classify_speaker("J", "Sector Lead") is SpeakerRole.OTHER

    def test_precedence_on_combined_titles(self):
        assert classify_speaker("J", "President & CFO") is SpeakerRole.CFO
        assert classify_speaker("J", "Analyst and CFO") is SpeakerRole.ANALYST
        assert classify_speaker("Operator", "Senior Analyst"
                                ) is SpeakerRole.OPERATOR

    def test_unmatched_falls_through_to_other(self):
        assert classify_speaker("J", "VP Investor Relations"
                                ) is SpeakerRole.OTHER
        assert classify_speaker("", "") is SpeakerRole.OTHER

    def test_case_insensitive(self):
        assert classify_speaker("J", "cHiEf FiNaNcIaL oFfIcEr"
                                ) is SpeakerRole.CFO


class TestParseTranscript:
    def test_valid_record(self):
        meta, turns = parse_transcript(_record())
        assert meta.call_id == "CALL-1"
        assert meta.ticker == "ACME"
        assert meta.timing == "AMC"
        assert meta.call_date == date(2024, 2, 1)
        assert [t.role for t in turns] == [SpeakerRole.OPERATOR,
                                           SpeakerRole.EXECUTIVE,
                                           SpeakerRole.ANALYST]
        assert [t.sequence_index for t in turns] == [0, 1, 2]

    @pytest.mark.parametrize("field", ["call_id", "ticker", "call_datetime",
                                       "timing", "turns"])
    def test_missing_field(self, field):
        record = _record()
        del record[field]
        with pytest.raises(ParseError, match=field):
            parse_transcript(record)

    def test_naive_datetime_rejected(self):
        record = _record(call_datetime="2024-02-01T16:30:00")
        with pytest.raises(ParseError, match="timezone"):
            parse_transcript(record)

    def test_bad_timing_rejected(self):
        with pytest.raises(ParseError, match="timing"):
            parse_transcript(_record(timing="after-close"))

    def test_empty_turns_is_its_own_error(self):
        with pytest.raises(EmptyTranscriptError):
            parse_transcript(_record(turns=[]))
        assert issubclass(EmptyTranscriptError, ParseError)

    def test_turn_without_text_rejected(self):
        record = _record(turns=[{"name": "X", "title": "CEO"}])
        with pytest.raises(ParseError, match="text"):
            parse_transcript(record)

    def test_missing_name_and_title_degrade_to_other(self):
        record = _record(turns=[{"text": "Long enough sentence here."}])
        _, turns = parse_transcript(record)
        assert turns[0].role is SpeakerRole.OTHER
        assert turns[0].speaker_name == ""

    def test_error_carries_path_and_line(self):
        with pytest.raises(ParseError) as info:
            parse_transcript(_record(timing="bad"), path="feed.jsonl", line=7)
        assert str(info.value).startswith("feed.jsonl:7: ")
        assert info.value.path == "feed.jsonl"
        assert info.value.line == 7

    def test_extra_analyst_firms_reach_classification(self):
        record = _record(turns=[{"name": "Q", "title": "Boutique Partners",
                                 "text": "A question from the floor."}])
        _, plain = parse_transcript(record)
        assert plain[0].role is SpeakerRole.OTHER
        _, custom = parse_transcript(
            record, analyst_firms=("boutique partners",))
        assert custom[0].role is SpeakerRole.ANALYST


class TestLoadTranscripts:
    def test_streams_records_and_skips_blank_lines(self, tmp_path):
        path = tmp_path / "calls.jsonl"
        lines = [json.dumps(_record()), "",
                 json.dumps(_record(call_id="CALL-2"))]
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        loaded = list(load_transcripts(str(path)))
        assert [meta.call_id for meta, _ in loaded] == ["CALL-1", "CALL-2"]

    def test_duplicate_call_id_rejected_with_line(self, tmp_path):
        path = tmp_path / "calls.jsonl"
        payload = json.dumps(_record())
        path.write_text(payload + "\n" + payload + "\n", encoding="utf-8")
        with pytest.raises(ParseError, match="duplicate call_id") as info:
            list(load_transcripts(str(path)))
        assert info.value.line == 2

    def test_invalid_json_rejected(self, tmp_path):
        path = tmp_path / "calls.jsonl"
        path.write_text("{not json}\n", encoding="utf-8")
        with pytest.raises(ParseError, match="invalid JSON"):
            list(load_transcripts(str(path)))


class TestSegmentation:
    def test_boundaries_and_document_order(self):
        turn = _turn("Revenue grew nicely. Margins rose again? "
                     "Excellent! Costs fell further.")
        texts = [s.text for s in segment_sentences(turn, "c1")]
        assert texts == ["Revenue grew nicely.", "Margins rose again?",
                         "Excellent!", "Costs fell further."]

    def test_minimum_length_after_strip(self):
        turn = _turn("Thanks. We delivered strong growth.   ok.   ")
        texts = [s.text for s in segment_sentences(turn, "c1")]
        assert texts == ["We delivered strong growth."]

    def test_ten_characters_survive_exactly(self):
        # "Thank you." is exactly ten characters, so it stays
        turn = _turn("Thank you. Good morning everyone.")
        texts = [s.text for s in segment_sentences(turn, "c1")]
        assert texts == ["Thank you.", "Good morning everyone."]

    @pytest.mark.parametrize("text", [
        "Mr. Smith will answer that question.",
        "We acquired Acme Inc. last October.",
        "Our U.S. segment grew twelve percent.",
        "That lands in Q1. next fiscal year.",
    ])
    def test_abbreviations_do_not_split(self, text):
        turn = _turn(text)
        assert [s.text for s in segment_sentences(turn, "c1")] == [text]

    def test_abbreviation_guard_is_case_sensitive(self):
        turn = _turn("we discussed inc. matters today.")
        texts = [s.text for s in segment_sentences(turn, "c1")]
        assert texts == ["we discussed inc.", "matters today."]

    def test_operator_turns_yield_nothing(self):
        turn = _turn("Welcome to the quarterly earnings call.",
                     role=SpeakerRole.OPERATOR)
        assert segment_sentences(turn, "c1") == []

    def test_unterminated_tail_is_kept(self):
        turn = _turn("First sentence here. and then a trailing fragment")
        texts = [s.text for s in segment_sentences(turn, "c1")]
        assert texts == ["First sentence here.", "and then a trailing fragment"]

    def test_segment_call_attributes_roles(self):
        meta = CallMeta(
            call_id="c9", ticker="T",
            call_datetime=datetime.fromisoformat("2024-02-01T08:00:00+00:00"),
            timing="BMO")
        turns = [
            _turn("Welcome to the call everyone.", SpeakerRole.OPERATOR, 0),
            _turn("We had a strong quarter. Margins improved well.",
                  SpeakerRole.CFO, 1),
            _turn("Could you quantify the margin bridge?",
                  SpeakerRole.ANALYST, 2),
        ]
        sentences = segment_call(meta, turns)
        assert [s.role for s in sentences] == [SpeakerRole.CFO,
                                               SpeakerRole.CFO,
                                               SpeakerRole.ANALYST]
        assert all(s.call_id == "c9" for s in sentences)

    def test_raw_sentence_validation(self):
        with pytest.raises(ValueError):
            RawSentence(call_id="c", role=SpeakerRole.OPERATOR,
                        text="0123456789", char_length=10)
        with pytest.raises(ValueError):
            RawSentence(call_id="c", role=SpeakerRole.CFO,
                        text="too short", char_length=9)
        with pytest.raises(ValueError):
            RawSentence(call_id="c", role=SpeakerRole.CFO,
                        text="0123456789", char_length=11)

    @given(st.text(alphabet=st.characters(blacklist_categories=("Cs",)),
                   max_size=400))
    def test_segmentation_invariants(self, text):
        turn = _turn(text)
        for sentence in segment_sentences(turn, "c1"):
            assert sentence.text == sentence.text.strip()
            assert len(sentence.text) >= 10
            assert sentence.char_length == len(sentence.text)
            assert sentence.role is SpeakerRole.EXECUTIVE

    @given(st.lists(st.sampled_from(
        ["Revenue grew nicely", "Margins were weaker", "Costs fell a lot",
         "Guidance holds firm"]), min_size=1, max_size=6))
    def test_period_joined_sentences_round_trip(self, parts):
        text = ". ".join(parts) + "."
        turn = _turn(text)
        got = [s.text for s in segment_sentences(turn, "c1")]
        assert got == [p + "." for p in parts]
