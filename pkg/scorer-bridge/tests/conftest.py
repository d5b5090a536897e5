"""Shared fixtures: the conformance corpus and a tiny local model.

The tiny model is a randomly initialized three-class BERT small enough
to build in-process; it exercises the real tokenizer/inference path
without shipping weights. Tests that need the published reference
weights skip unless FINBERT_MODEL_DIR points at them.
"""

from __future__ import annotations

import json
from pathlib import Path

import pytest

DATA = Path(__file__).parent / "data"

_VOCAB = [
    "[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]",
    "the", "a", "and", "of", "to", "in", "we", "was", "were", "is",
    "revenue", "growth", "margin", "demand", "quarter", "strong",
    "soft", "down", "up", "record", "decline", "improved", "confident",
    "churn", "retention", "cash", "great", "##s", "##ed", "##ing", ".",
    ",", "!", "?", "%",
]


@pytest.fixture(scope="session")
def corpus_path() -> Path:
    return DATA / "transcripts.jsonl"


@pytest.fixture(scope="session")
def expected_segmentation() -> dict:
    return json.loads((DATA / "expected_segmentation.json").read_text())


def _write_tokenizer(target: Path) -> None:
    from transformers import BertTokenizer

    vocab = target / "vocab.txt"
    vocab.write_text("\n".join(_VOCAB) + "\n")
    BertTokenizer(str(vocab)).save_pretrained(str(target))


def _write_model(target: Path, id2label: dict[int, str], seed: int) -> None:
    import torch
    from transformers import BertConfig, BertForSequenceClassification

    torch.manual_seed(seed)
    config = BertConfig(
        vocab_size=len(_VOCAB), hidden_size=32, num_hidden_layers=2,
        num_attention_heads=2, intermediate_size=64,
        max_position_embeddings=512, num_labels=3,
        id2label=id2label,
        label2id={v: k for k, v in id2label.items()})
    BertForSequenceClassification(config).save_pretrained(str(target))


@pytest.fixture(scope="session")
def tiny_model_dir(tmp_path_factory: pytest.TempPathFactory) -> Path:
    target = tmp_path_factory.mktemp("tiny-model")
    _write_tokenizer(target)
    _write_model(target, {0: "positive", 1: "negative", 2: "neutral"},
                 seed=0)
    return target


@pytest.fixture(scope="session")
def permuted_label_model_dir(
        tmp_path_factory: pytest.TempPathFactory) -> Path:
    # finbert-tone style labels: capitalized, different index order
    target = tmp_path_factory.mktemp("tiny-model-permuted")
    _write_tokenizer(target)
    _write_model(target, {0: "Neutral", 1: "Positive", 2: "Negative"},
                 seed=1)
    return target


@pytest.fixture(scope="session")
def unusable_label_model_dir(
        tmp_path_factory: pytest.TempPathFactory) -> Path:
    target = tmp_path_factory.mktemp("tiny-model-unlabeled")
    _write_tokenizer(target)
    _write_model(target, {0: "LABEL_0", 1: "LABEL_1", 2: "LABEL_2"},
                 seed=2)
    return target
