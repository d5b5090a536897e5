"""Shared fixtures and the acceptance-criteria summary hook."""

from __future__ import annotations

import math

import numpy as np
import pytest

from calltone.aggregate import SentenceScore
from calltone.transcript import SpeakerRole

_ACCEPTANCE_FILE = "test_acceptance.py"
_acceptance_results: dict[str, str] = {}


def pytest_runtest_logreport(report: pytest.TestReport) -> None:
    if _ACCEPTANCE_FILE not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "setup" and report.skipped:
        _acceptance_results[name] = "SKIP"
    elif report.when == "call":
        _acceptance_results[name] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter, exitstatus, config) -> None:
    if not _acceptance_results:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for name in sorted(_acceptance_results):
        terminalreporter.write_line(f"{name}: {_acceptance_results[name]}")


def make_score(net: float, neu: float = 0.2,
               role: SpeakerRole = SpeakerRole.EXECUTIVE,
               call_id: str = "c1") -> SentenceScore:
    """Sentence score with the requested net tone and neutral mass."""
    p_pos = (1.0 - neu + net) / 2.0
    p_neg = (1.0 - neu - net) / 2.0
    return SentenceScore(call_id=call_id, role=role, p_pos=p_pos,
                         p_neg=p_neg, p_neu=neu)


@pytest.fixture
def score_factory():
    return make_score


@pytest.fixture
def rng():
    return np.random.default_rng(20260816)
