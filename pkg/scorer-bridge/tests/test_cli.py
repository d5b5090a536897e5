"""End-to-end command-line runs on the fixture corpus with a tiny model."""

from __future__ import annotations

import csv
import importlib.util
import json
from pathlib import Path

import pytest

from scorer_bridge import __version__, cli
from scorer_bridge.model import model_revision

HAVE_PRIMARY = importlib.util.find_spec("calltone") is not None


def _read_scores(path: Path) -> tuple[dict, list[dict]]:
    lines = path.read_text(encoding="utf-8").splitlines()
    return json.loads(lines[0]), [json.loads(line) for line in lines[1:]]


def _flatten(expected: dict) -> list[tuple[str, str, str]]:
    rows = []
    for call_id, sentences in expected.items():
        rows.extend((call_id, s["role"], s["hash"]) for s in sentences)
    return rows


@pytest.fixture(scope="module")
def scored(tmp_path_factory: pytest.TempPathFactory, corpus_path: Path,
           tiny_model_dir: Path) -> Path:
    out = tmp_path_factory.mktemp("scored") / "scores.jsonl"
    rc = cli.main(["score", "--transcripts", str(corpus_path),
                   "--model", str(tiny_model_dir), "--out", str(out)])
    assert rc == 0
    return out


class TestScoreCommand:
    def test_header_identity(self, scored: Path, tiny_model_dir: Path,
                             expected_segmentation: dict) -> None:
        header, rows = _read_scores(scored)
        n_expected = sum(len(v) for v in expected_segmentation.values())
        assert header == {
            "model": tiny_model_dir.name,
            "revision": model_revision(tiny_model_dir),
            "count": n_expected,
        }
        assert len(rows) == n_expected

    def test_rows_follow_input_order(self, scored: Path,
                                     expected_segmentation: dict) -> None:
        _, rows = _read_scores(scored)
        got = [(r["call_id"], r["role"], r["text_hash"]) for r in rows]
        assert got == _flatten(expected_segmentation)

    def test_rows_are_simplex(self, scored: Path) -> None:
        _, rows = _read_scores(scored)
        for row in rows:
            total = row["p_pos"] + row["p_neg"] + row["p_neu"]
            assert abs(total - 1.0) <= 1e-6
            for key in ("p_pos", "p_neg", "p_neu"):
                assert 0.0 <= row[key] <= 1.0

    def test_progress_message(self, capsys: pytest.CaptureFixture,
                              corpus_path: Path, tiny_model_dir: Path,
                              tmp_path: Path) -> None:
        out = tmp_path / "scores.jsonl"
        rc = cli.main(["score", "--transcripts", str(corpus_path),
                       "--model", str(tiny_model_dir), "--out", str(out)])
        assert rc == 0
        stdout = capsys.readouterr().out
        assert f"wrote 14 scores for 14 sentences to {out}" in stdout

    def test_empty_transcripts(self, tmp_path: Path,
                               tiny_model_dir: Path) -> None:
        src = tmp_path / "empty.jsonl"
        src.write_text("")
        out = tmp_path / "scores.jsonl"
        rc = cli.main(["score", "--transcripts", str(src),
                       "--model", str(tiny_model_dir), "--out", str(out)])
        assert rc == 0
        header, rows = _read_scores(out)
        assert header["count"] == 0
        assert rows == []

    def test_revision_override(self, corpus_path: Path,
                               tiny_model_dir: Path,
                               tmp_path: Path) -> None:
        out = tmp_path / "scores.jsonl"
        rc = cli.main(["score", "--transcripts", str(corpus_path),
                       "--model", str(tiny_model_dir), "--out", str(out),
                       "--revision", "pinned-r1"])
        assert rc == 0
        header, _ = _read_scores(out)
        assert header["revision"] == "pinned-r1"

    def test_batch_size_only_moves_padding(self, corpus_path: Path,
                                           tiny_model_dir: Path,
                                           tmp_path: Path) -> None:
        # identity fields must be exact; probabilities only approx,
        # since padding width changes the reduction order
        outs = []
        for size in ("1", "32"):
            out = tmp_path / f"scores_{size}.jsonl"
            rc = cli.main(["score", "--transcripts", str(corpus_path),
                           "--model", str(tiny_model_dir),
                           "--out", str(out), "--batch-size", size])
            assert rc == 0
            outs.append(_read_scores(out)[1])
        small, large = outs
        assert len(small) == len(large)
        for a, b in zip(small, large):
            assert (a["call_id"], a["role"], a["text_hash"]) == \
                (b["call_id"], b["role"], b["text_hash"])
            for key in ("p_pos", "p_neg", "p_neu"):
                assert a[key] == pytest.approx(b[key], abs=1e-5)


class TestFailurePaths:
    def test_schema_violation_exits_3(self, tmp_path: Path,
                                      tiny_model_dir: Path,
                                      capsys: pytest.CaptureFixture) -> None:
        src = tmp_path / "bad.jsonl"
        src.write_text(json.dumps({
            "call_id": "X", "ticker": "X",
            "call_datetime": "2020-01-01T09:00:00+00:00",
            "turns": [{"name": "A", "title": "CFO", "text": "Hello."}],
        }) + "\n")
        rc = cli.main(["score", "--transcripts", str(src),
                       "--model", str(tiny_model_dir),
                       "--out", str(tmp_path / "scores.jsonl")])
        assert rc == 3
        err = capsys.readouterr().err
        # the framework may emit progress noise first; the diagnostic
        # itself must be a prefixed line of its own
        assert any(line.startswith("scorer-bridge: error:")
                   for line in err.splitlines())
        assert "missing required field 'timing'" in err

    def test_missing_model_exits_2(self, corpus_path: Path, tmp_path: Path,
                                   capsys: pytest.CaptureFixture) -> None:
        rc = cli.main(["score", "--transcripts", str(corpus_path),
                       "--model", str(tmp_path / "no-model"),
                       "--out", str(tmp_path / "scores.jsonl")])
        assert rc == 2
        err = capsys.readouterr().err
        assert "model directory not found" in err

    def test_model_loads_before_transcripts_are_read(
            self, tmp_path: Path,
            capsys: pytest.CaptureFixture) -> None:
        # a bad model must fail even when the transcripts are also bad
        src = tmp_path / "bad.jsonl"
        src.write_text("not json\n")
        rc = cli.main(["score", "--transcripts", str(src),
                       "--model", str(tmp_path / "no-model"),
                       "--out", str(tmp_path / "scores.jsonl")])
        assert rc == 2
        assert "model directory not found" in capsys.readouterr().err

    def test_batch_size_zero_rejected(self, corpus_path: Path,
                                      tiny_model_dir: Path, tmp_path: Path,
                                      capsys: pytest.CaptureFixture) -> None:
        rc = cli.main(["score", "--transcripts", str(corpus_path),
                       "--model", str(tiny_model_dir),
                       "--out", str(tmp_path / "scores.jsonl"),
                       "--batch-size", "0"])
        assert rc == 2
        err = capsys.readouterr().err
        assert "--batch-size must be >= 1" in err

    def test_missing_required_arguments(self) -> None:
        with pytest.raises(SystemExit) as excinfo:
            cli.main(["score"])
        assert excinfo.value.code == 2

    def test_subcommand_required(self) -> None:
        with pytest.raises(SystemExit) as excinfo:
            cli.main([])
        assert excinfo.value.code == 2

    def test_version(self, capsys: pytest.CaptureFixture) -> None:
        with pytest.raises(SystemExit) as excinfo:
            cli.main(["--version"])
        assert excinfo.value.code == 0
        assert capsys.readouterr().out.strip() == \
            f"scorer-bridge {__version__}"


@pytest.mark.skipif(not HAVE_PRIMARY,
                    reason="downstream pipeline not installed")
class TestIngestionHandshake:
    """The consumer re-segments and re-hashes; acceptance proves the
    two implementations agree on every sentence."""

    def test_downstream_ingest_accepts_output(self, scored: Path,
                                              corpus_path: Path,
                                              tmp_path: Path) -> None:
        from calltone import cli as downstream_cli

        rc = downstream_cli.main([
            "ingest", "--transcripts", str(corpus_path),
            "--scores", str(scored), "--out", str(tmp_path)])
        assert rc == 0

        _, bridge_rows = _read_scores(scored)
        with open(tmp_path / "sentences.csv", newline="",
                  encoding="utf-8") as handle:
            ingested = list(csv.DictReader(handle))
        assert len(ingested) == len(bridge_rows)
        for ours, theirs in zip(bridge_rows, ingested):
            assert theirs["call_id"] == ours["call_id"]
            assert theirs["role"] == ours["role"]
            net = ours["p_pos"] - ours["p_neg"]
            assert float(theirs["tau"]) == pytest.approx(net, abs=1e-9)
            confidence = 1.0 - ours["p_neu"]
            assert float(theirs["conf"]) == pytest.approx(confidence,
                                                          abs=1e-9)
