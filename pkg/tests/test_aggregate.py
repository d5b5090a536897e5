"""Call-level aggregation formulas and section-weight fitting."""

from __future__ import annotations

import math
from datetime import date

import numpy as np
import pandas as pd
import pytest
from hypothesis import given
from hypothesis import strategies as st

from calltone.aggregate import (
    SectionWeights,
    SentenceScore,
    agg_analyst_only,
    agg_confidence_weighted,
    agg_extreme_fraction,
    agg_section_weighted,
    agg_simple_mean,
    call_sentiment,
    category_means,
    fit_ic_weights,
    role_mean_column,
    weights_from_ics,
)
from calltone.errors import FitError, TemporalLeakError
from calltone.panel import Panel
from calltone.transcript import DOWNSTREAM_ROLES, SpeakerRole

from conftest import make_score


class TestSentenceScore:
    def test_net_and_confidence(self):
        s = SentenceScore(call_id="c", role=SpeakerRole.CFO,
                          p_pos=0.6, p_neg=0.1, p_neu=0.3)
        assert s.net == 0.5
        assert s.confidence == 0.7

    def test_range_violations_rejected(self):
        with pytest.raises(ValueError, match="outside"):
            SentenceScore(call_id="c", role=SpeakerRole.CFO,
                          p_pos=1.2, p_neg=-0.2, p_neu=0.0)

    def test_simplex_violation_rejected(self):
        with pytest.raises(ValueError, match="sum"):
            SentenceScore(call_id="c", role=SpeakerRole.CFO,
                          p_pos=0.5, p_neg=0.5, p_neu=0.5)

    def test_tiny_float_slack_tolerated(self):
        s = SentenceScore(call_id="c", role=SpeakerRole.CFO,
                          p_pos=0.3, p_neg=0.3, p_neu=0.4 + 1e-9)
        assert abs(s.net) < 1e-12


class TestPlainAggregations:
    def test_simple_mean(self):
        scores = [make_score(0.5), make_score(-0.25), make_score(0.0)]
        assert abs(agg_simple_mean(scores) - (0.25 / 3)) < 1e-15

    def test_confidence_weighted_hand_value(self):
        # nets 0.6 and -0.3 with confidences 1.0 and 0.5:
        # (1.0*0.6 + 0.5*-0.3) / 1.5 = 0.3
        scores = [make_score(0.6, neu=0.0), make_score(-0.3, neu=0.5)]
        assert abs(agg_confidence_weighted(scores) - 0.3) < 1e-15

    def test_confidence_weighted_all_neutral_is_missing(self):
        scores = [make_score(0.0, neu=1.0), make_score(0.0, neu=1.0)]
        assert math.isnan(agg_confidence_weighted(scores))

    def test_extreme_fraction_counts_both_tails(self):
        scores = [make_score(0.9, neu=0.0), make_score(-0.8, neu=0.0),
                  make_score(-0.7, neu=0.0), make_score(0.1)]
        assert agg_extreme_fraction(scores) == (1 - 2) / 4

    def test_extreme_fraction_threshold_is_strict(self):
        scores = [make_score(0.5, neu=0.5), make_score(-0.5, neu=0.5)]
        assert agg_extreme_fraction(scores) == 0.0

    def test_extreme_fraction_custom_threshold(self):
        scores = [make_score(0.4, neu=0.0), make_score(-0.1)]
        assert agg_extreme_fraction(scores, threshold=0.3) == 0.5

    def test_empty_input_is_missing(self):
        assert math.isnan(agg_simple_mean([]))
        assert math.isnan(agg_confidence_weighted([]))
        assert math.isnan(agg_extreme_fraction([]))
        assert math.isnan(agg_analyst_only([]))

    def test_analyst_only_filters_roles(self):
        scores = [make_score(0.5, role=SpeakerRole.ANALYST),
                  make_score(0.1, role=SpeakerRole.ANALYST),
                  make_score(-0.9, neu=0.0, role=SpeakerRole.CFO)]
        assert abs(agg_analyst_only(scores) - 0.3) < 1e-15

    def test_category_means_cover_all_roles(self):
        scores = [make_score(0.4, role=SpeakerRole.CFO)]
        means = category_means(scores)
        assert set(means) == set(DOWNSTREAM_ROLES)
        assert abs(means[SpeakerRole.CFO] - 0.4) < 1e-15
        assert math.isnan(means[SpeakerRole.ANALYST])


def _weights(analyst: float = 0.5, cfo: float = 0.3, executive: float = 0.15,
             other: float = 0.05) -> SectionWeights:
    weights = {SpeakerRole.ANALYST: analyst, SpeakerRole.CFO: cfo,
               SpeakerRole.EXECUTIVE: executive, SpeakerRole.OTHER: other}
    ics = {role: (w if w > 0 else math.nan)
           for role, w in weights.items()}
    ns = {role: 10 for role in weights}
    return SectionWeights(weights=weights, ics=ics, ns=ns,
                          training_cutoff=date(2023, 1, 1))


class TestSectionWeighted:
    def test_hand_value(self):
        # w = (.5, .3) over present roles, means (0.2, -0.1):
        # (.5*.2 + .3*-.1) / .8 = 0.0875
        means = {SpeakerRole.ANALYST: 0.2, SpeakerRole.CFO: -0.1}
        got = agg_section_weighted(means, _weights())
        assert abs(got - 0.0875) < 1e-15

    def test_absent_roles_renormalize(self):
        means = {SpeakerRole.OTHER: 0.6}
        assert abs(agg_section_weighted(means, _weights()) - 0.6) < 1e-15

    def test_zero_weight_roles_cannot_carry_the_call(self):
        w = _weights(analyst=0.7, cfo=0.3, executive=0.0, other=0.0)
        means = {SpeakerRole.EXECUTIVE: 0.4, SpeakerRole.OTHER: -0.2}
        assert math.isnan(agg_section_weighted(means, w))

    def test_call_sentiment_m4_missing_without_weights(self):
        scores = [make_score(0.2), make_score(-0.2)]
        result = call_sentiment("c1", scores)
        assert math.isnan(result.m4_section_weighted)
        assert result.n_sentences == 2

    def test_call_sentiment_carries_role_means(self):
        scores = [make_score(0.2, role=SpeakerRole.ANALYST),
                  make_score(0.4, role=SpeakerRole.ANALYST)]
        result = call_sentiment("c1", scores, _weights())
        assert abs(result.role_means[SpeakerRole.ANALYST] - 0.3) < 1e-14
        assert abs(result.m4_section_weighted - 0.3) < 1e-14
        assert abs(result.m5_analyst - 0.3) < 1e-14


class TestWeightsFromIcs:
    def test_normalizes_positive_ics(self):
        ics = {SpeakerRole.ANALYST: 0.12, SpeakerRole.CFO: 0.04,
               SpeakerRole.EXECUTIVE: math.nan, SpeakerRole.OTHER: -0.02}
        weights = weights_from_ics(ics)
        assert abs(weights[SpeakerRole.ANALYST] - 0.75) < 1e-15
        assert abs(weights[SpeakerRole.CFO] - 0.25) < 1e-15
        assert weights[SpeakerRole.EXECUTIVE] == 0.0
        assert weights[SpeakerRole.OTHER] == 0.0

    def test_no_positive_ic_is_a_fit_error(self):
        ics = {role: -0.01 for role in DOWNSTREAM_ROLES}
        with pytest.raises(FitError, match="positive"):
            weights_from_ics(ics)

    @given(st.lists(st.floats(min_value=-0.5, max_value=0.5,
                              allow_nan=False), min_size=4, max_size=4))
    def test_weights_sum_to_one_when_any_ic_positive(self, raw):
        ics = dict(zip(DOWNSTREAM_ROLES, raw))
        if not any(v > 0 for v in raw):
            with pytest.raises(FitError):
                weights_from_ics(ics)
            return
        weights = weights_from_ics(ics)
        assert abs(sum(weights.values()) - 1.0) < 1e-12
        for role in DOWNSTREAM_ROLES:
            expected_zero = not (ics[role] > 0)
            assert (weights[role] == 0.0) == expected_zero


class TestSectionWeightsContainer:
    def test_round_trip_through_json_file(self, tmp_path):
        original = _weights()
        path = tmp_path / "weights.json"
        original.save(str(path))
        loaded = SectionWeights.load(str(path))
        assert loaded == original

    def test_nan_ic_survives_round_trip(self, tmp_path):
        w = _weights(analyst=0.6, cfo=0.4, executive=0.0, other=0.0)
        path = tmp_path / "weights.json"
        w.save(str(path))
        loaded = SectionWeights.load(str(path))
        assert math.isnan(loaded.ics[SpeakerRole.EXECUTIVE])
        assert loaded.weights == w.weights

    def test_weights_must_sum_to_one(self):
        bad = {SpeakerRole.ANALYST: 0.5, SpeakerRole.CFO: 0.3,
               SpeakerRole.EXECUTIVE: 0.1, SpeakerRole.OTHER: 0.0}
        ics = {role: 0.1 for role in DOWNSTREAM_ROLES}
        ns = {role: 5 for role in DOWNSTREAM_ROLES}
        with pytest.raises(FitError, match="sum"):
            SectionWeights(weights=bad, ics=ics, ns=ns,
                           training_cutoff=date(2023, 1, 1))

    def test_weight_without_positive_ic_rejected(self):
        weights = {SpeakerRole.ANALYST: 0.5, SpeakerRole.CFO: 0.5,
                   SpeakerRole.EXECUTIVE: 0.0, SpeakerRole.OTHER: 0.0}
        ics = {SpeakerRole.ANALYST: 0.1, SpeakerRole.CFO: -0.1,
               SpeakerRole.EXECUTIVE: math.nan, SpeakerRole.OTHER: math.nan}
        ns = {role: 5 for role in DOWNSTREAM_ROLES}
        with pytest.raises(FitError, match="non-positive"):
            SectionWeights(weights=weights, ics=ics, ns=ns,
                           training_cutoff=date(2023, 1, 1))


def _training_panel() -> Panel:
    """Five training calls; the analyst column tracks the return, the
    cfo column anti-tracks it, the executive column is absent once."""
    frame = pd.DataFrame({
        "call_id": [f"c{i}" for i in range(5)],
        "ticker": [f"T{i}" for i in range(5)],
        "event_date": ["2022-01-10", "2022-02-10", "2022-03-10",
                       "2022-04-11", "2022-05-10"],
        "event_month": ["2022-01", "2022-02", "2022-03",
                        "2022-04", "2022-05"],
        "timing": ["AMC"] * 5,
        "ret_1d": [0.01, 0.02, 0.03, 0.04, 0.05],
        "tau_analyst": [0.1, 0.2, 0.3, 0.4, 0.5],
        "tau_cfo": [0.5, 0.4, 0.3, 0.2, 0.1],
        "tau_executive": [0.2, math.nan, math.nan, math.nan, math.nan],
        "tau_other": [math.nan] * 5,
    })
    return Panel(frame)


class TestFitIcWeights:
    def test_per_role_ics_and_counts(self):
        fitted = fit_ic_weights(_training_panel(),
                                training_cutoff=date(2022, 6, 1))
        assert fitted.ics[SpeakerRole.ANALYST] == pytest.approx(1.0)
        assert fitted.ics[SpeakerRole.CFO] == pytest.approx(-1.0)
        assert math.isnan(fitted.ics[SpeakerRole.EXECUTIVE])  # 1 pair
        assert math.isnan(fitted.ics[SpeakerRole.OTHER])      # 0 pairs
        assert fitted.ns == {SpeakerRole.ANALYST: 5, SpeakerRole.CFO: 5,
                             SpeakerRole.EXECUTIVE: 1, SpeakerRole.OTHER: 0}
        assert fitted.weights[SpeakerRole.ANALYST] == 1.0
        assert fitted.weights[SpeakerRole.CFO] == 0.0
        assert fitted.training_cutoff == date(2022, 6, 1)

    def test_rows_at_cutoff_leak(self):
        with pytest.raises(TemporalLeakError, match="2022-05-10"):
            fit_ic_weights(_training_panel(),
                           training_cutoff=date(2022, 5, 10))

    def test_rows_after_cutoff_leak_with_count(self):
        with pytest.raises(TemporalLeakError, match="2 rows"):
            fit_ic_weights(_training_panel(),
                           training_cutoff=date(2022, 4, 1))

    def test_missing_returns_shrink_the_sample(self):
        panel = _training_panel()
        panel.frame.loc[0, "ret_1d"] = math.nan
        fitted = fit_ic_weights(panel, training_cutoff=date(2022, 6, 1))
        assert fitted.ns[SpeakerRole.ANALYST] == 4

    def test_empty_panel_rejected(self):
        empty = Panel(_training_panel().frame.iloc[:0])
        with pytest.raises(FitError, match="empty"):
            fit_ic_weights(empty, training_cutoff=date(2022, 6, 1))

    def test_custom_prefix_reads_other_columns(self):
        panel = _training_panel()
        frame = panel.frame.rename(columns={
            role_mean_column(r): role_mean_column(r, "lm_tau")
            for r in DOWNSTREAM_ROLES})
        fitted = fit_ic_weights(Panel(frame),
                                training_cutoff=date(2022, 6, 1),
                                prefix="lm_tau")
        assert fitted.weights[SpeakerRole.ANALYST] == 1.0

    def test_role_mean_column_names(self):
        assert role_mean_column(SpeakerRole.ANALYST) == "tau_analyst"
        assert role_mean_column(SpeakerRole.CFO, "lm_tau") == "lm_tau_cfo"
