"""Classifier wrapper: loading, label mapping, inference invariants.

Runs against a tiny randomly initialized model so the real tokenizer
and forward pass are exercised without reference weights.
"""

from __future__ import annotations

import logging
from pathlib import Path

import pytest

from scorer_bridge.errors import ModelError
from scorer_bridge.model import MAX_TOKENS, SentenceClassifier, model_revision

SENTENCES = [
    "Revenue growth was strong and demand improved.",
    "Margin was soft and churn was up.",
    "The quarter was in line with plan.",
]


@pytest.fixture(scope="module")
def classifier(tiny_model_dir: Path) -> SentenceClassifier:
    return SentenceClassifier(tiny_model_dir)


class TestLoading:
    def test_missing_directory(self, tmp_path: Path) -> None:
        with pytest.raises(ModelError, match="not found"):
            SentenceClassifier(tmp_path / "absent")

    def test_unusable_labels(self, unusable_label_model_dir: Path) -> None:
        with pytest.raises(ModelError, match="triple"):
            SentenceClassifier(unusable_label_model_dir)

    def test_label_indices_resolved_by_name(self, classifier,
                                            permuted_label_model_dir: Path) -> None:
        assert classifier._index == {"p_pos": 0, "p_neg": 1, "p_neu": 2}
        permuted = SentenceClassifier(permuted_label_model_dir)
        assert permuted._index == {"p_neu": 0, "p_pos": 1, "p_neg": 2}

    def test_identity_fields(self, classifier,
                             tiny_model_dir: Path) -> None:
        assert classifier.name == tiny_model_dir.name
        assert len(classifier.revision) == 12

    def test_revision_tracks_content(self, tmp_path: Path) -> None:
        root = tmp_path / "weights"
        root.mkdir()
        (root / "model.bin").write_bytes(b"x" * 10)
        first = model_revision(root)
        assert len(first) == 12
        assert int(first, 16) >= 0
        assert model_revision(root) == first
        (root / "model.bin").write_bytes(b"x" * 11)
        assert model_revision(root) != first
        (root / "model.bin").write_bytes(b"x" * 10)
        (root / "extra.json").write_text("{}")
        assert model_revision(root) != first


class TestScoring:
    def test_simplex_per_sentence(self, classifier) -> None:
        for p_pos, p_neg, p_neu in classifier.score_batch(SENTENCES):
            assert 0.0 <= p_pos <= 1.0
            assert 0.0 <= p_neg <= 1.0
            assert 0.0 <= p_neu <= 1.0
            assert p_pos + p_neg + p_neu == pytest.approx(1.0, abs=1e-12)

    def test_order_preserved_and_deterministic(self, classifier) -> None:
        first = classifier.score_batch(SENTENCES)
        second = classifier.score_batch(SENTENCES)
        assert first == second
        assert len(first) == len(SENTENCES)

    def test_batch_composition_does_not_move_scores(self, classifier) -> None:
        # padding changes tensor shapes, so only near-equality is promised
        together = classifier.score_batch(SENTENCES)
        alone = [classifier.score_batch([s])[0] for s in SENTENCES]
        for a, b in zip(together, alone):
            assert a == pytest.approx(b, abs=1e-5)

    def test_empty_batch(self, classifier) -> None:
        assert classifier.score_batch([]) == []

    def test_truncation_counted_and_logged(
            self, classifier, caplog: pytest.LogCaptureFixture) -> None:
        before = classifier.n_truncated
        long_sentence = "demand " * (MAX_TOKENS + 100)
        with caplog.at_level(logging.INFO, logger="scorer_bridge"):
            probs = classifier.score_batch([long_sentence, "Short one here."])
        assert classifier.n_truncated == before + 1
        assert any("truncated 1 sentence" in m for m in caplog.messages)
        assert len(probs) == 2
        assert sum(probs[0]) == pytest.approx(1.0, abs=1e-12)
