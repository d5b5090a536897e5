"""Call-level sentiment aggregation.

Five signals per call, computed from sentence probability triples:

    m1  simple mean of net scores
    m2  confidence-weighted mean
    m3  extreme-sentence fraction (strict 0.5 thresholds)
    m4  section-weighted mean of per-role averages
    m5  analyst-sentence mean

Missing results propagate as NaN, never as 0.0: a call with no analyst
sentences has no m5, and a call where no positively-weighted role speaks
has no m4. Section weights are fitted once on pre-cutoff data and frozen.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from datetime import date
from typing import Mapping, Sequence

from .errors import FitError, TemporalLeakError
from .transcript import DOWNSTREAM_ROLES, SpeakerRole

__all__ = [
    "SentenceScore",
    "SectionWeights",
    "CallSentiment",
    "agg_simple_mean",
    "agg_confidence_weighted",
    "agg_extreme_fraction",
    "category_means",
    "agg_section_weighted",
    "agg_analyst_only",
    "call_sentiment",
    "weights_from_ics",
    "fit_ic_weights",
    "role_mean_column",
]

_SIMPLEX_TOL = 1e-6


@dataclass(frozen=True)
class SentenceScore:
    """Probability triple for one scored sentence."""

    call_id: str
    role: SpeakerRole
    p_pos: float
    p_neg: float
    p_neu: float

    def __post_init__(self) -> None:
        for name in ("p_pos", "p_neg", "p_neu"):
            p = getattr(self, name)
            if not (-_SIMPLEX_TOL <= p <= 1.0 + _SIMPLEX_TOL):
                raise ValueError(f"{name}={p} outside [0, 1]")
        total = self.p_pos + self.p_neg + self.p_neu
        if abs(total - 1.0) > _SIMPLEX_TOL:
            raise ValueError(f"probabilities sum to {total}, not 1")

    @property
    def net(self) -> float:
        """Net sentiment in [-1, 1]."""
        return self.p_pos - self.p_neg

    @property
    def confidence(self) -> float:
        """Non-neutral probability mass in [0, 1]."""
        return 1.0 - self.p_neu


def agg_simple_mean(scores: Sequence[SentenceScore]) -> float:
    if not scores:
        return math.nan
    return sum(s.net for s in scores) / len(scores)


def agg_confidence_weighted(scores: Sequence[SentenceScore]) -> float:
    total = sum(s.confidence for s in scores)
    if not scores or total == 0.0:
        return math.nan
    return sum(s.confidence * s.net for s in scores) / total


def agg_extreme_fraction(scores: Sequence[SentenceScore],
                         *, threshold: float = 0.5) -> float:
    """(#strongly positive - #strongly negative) / N.

    Thresholds are strict: a sentence at exactly +-threshold counts as
    not extreme.
    """
    if not scores:
        return math.nan
    n_up = sum(1 for s in scores if s.net > threshold)
    n_dn = sum(1 for s in scores if s.net < -threshold)
    return (n_up - n_dn) / len(scores)


def category_means(
    scores: Sequence[SentenceScore],
) -> dict[SpeakerRole, float]:
    """Mean net score per role; roles absent from the call map to NaN."""
    sums: dict[SpeakerRole, float] = {}
    counts: dict[SpeakerRole, int] = {}
    for s in scores:
        sums[s.role] = sums.get(s.role, 0.0) + s.net
        counts[s.role] = counts.get(s.role, 0) + 1
    return {role: (sums[role] / counts[role] if role in counts else math.nan)
            for role in DOWNSTREAM_ROLES}


def agg_analyst_only(scores: Sequence[SentenceScore]) -> float:
    analyst = [s for s in scores if s.role is SpeakerRole.ANALYST]
    if not analyst:
        return math.nan
    return sum(s.net for s in analyst) / len(analyst)


@dataclass(frozen=True)
class SectionWeights:
    """Frozen per-role weights with their training-period provenance.

    Weights are proportional to each role's positive training IC and sum
    to one; a role whose IC is zero, negative, or unavailable carries
    weight exactly 0. The cutoff is immutable after the fit.
    """

    weights: Mapping[SpeakerRole, float]
    ics: Mapping[SpeakerRole, float]
    ns: Mapping[SpeakerRole, int]
    training_cutoff: date
    horizon: int = 1

    def __post_init__(self) -> None:
        positive_total = 0.0
        for role in DOWNSTREAM_ROLES:
            w = self.weights[role]
            ic = self.ics[role]
            if not 0.0 <= w <= 1.0:
                raise FitError(f"weight for {role.value} outside [0,1]: {w}")
            if (math.isnan(ic) or ic <= 0.0) and w != 0.0:
                raise FitError(
                    f"{role.value} has non-positive IC but weight {w}")
            positive_total += w
        if abs(positive_total - 1.0) > 1e-9:
            raise FitError(f"weights sum to {positive_total}, not 1")

    def to_dict(self) -> dict:
        def clean(x: float) -> float | None:
            return None if isinstance(x, float) and math.isnan(x) else x

        return {
            "training_cutoff": self.training_cutoff.isoformat(),
            "horizon": self.horizon,
            "roles": {
                role.value: {
                    "weight": self.weights[role],
                    "ic": clean(self.ics[role]),
                    "n": self.ns[role],
                }
                for role in DOWNSTREAM_ROLES
            },
        }

    @classmethod
    def from_dict(cls, payload: Mapping) -> "SectionWeights":
        roles = payload["roles"]
        weights, ics, ns = {}, {}, {}
        for role in DOWNSTREAM_ROLES:
            entry = roles[role.value]
            weights[role] = float(entry["weight"])
            ic = entry["ic"]
            ics[role] = math.nan if ic is None else float(ic)
            ns[role] = int(entry["n"])
        return cls(weights=weights, ics=ics, ns=ns,
                   training_cutoff=date.fromisoformat(
                       payload["training_cutoff"]),
                   horizon=int(payload.get("horizon", 1)))

    def save(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as handle:
            json.dump(self.to_dict(), handle, indent=2, sort_keys=True)
            handle.write("\n")

    @classmethod
    def load(cls, path: str) -> "SectionWeights":
        with open(path, encoding="utf-8") as handle:
            return cls.from_dict(json.load(handle))


def agg_section_weighted(per_role_means: Mapping[SpeakerRole, float],
                         weights: SectionWeights) -> float:
    """Weighted mean of role averages, renormalized over present roles.

    A role is "present" when its mean is non-missing; the denominator
    drops absent roles so the weights of the speakers who actually talked
    are rescaled to sum to one. Missing when no positively-weighted role
    is present.
    """
    num = 0.0
    den = 0.0
    for role in DOWNSTREAM_ROLES:
        mean = per_role_means.get(role, math.nan)
        if math.isnan(mean):
            continue
        w = weights.weights[role]
        num += w * mean
        den += w
    if den == 0.0:
        return math.nan
    return num / den


@dataclass(frozen=True)
class CallSentiment:
    """All five aggregates for one call."""

    call_id: str
    m1_simple: float
    m2_conf_weighted: float
    m3_extreme: float
    m4_section_weighted: float
    m5_analyst: float
    n_sentences: int
    role_means: Mapping[SpeakerRole, float] = field(default_factory=dict)


def call_sentiment(
    call_id: str,
    scores: Sequence[SentenceScore],
    weights: SectionWeights | None = None,
    *,
    extreme_threshold: float = 0.5,
) -> CallSentiment:
    """Compute every aggregate at once; m4 is missing without weights."""
    means = category_means(scores)
    m4 = agg_section_weighted(means, weights) if weights else math.nan
    return CallSentiment(
        call_id=call_id,
        m1_simple=agg_simple_mean(scores),
        m2_conf_weighted=agg_confidence_weighted(scores),
        m3_extreme=agg_extreme_fraction(scores, threshold=extreme_threshold),
        m4_section_weighted=m4,
        m5_analyst=agg_analyst_only(scores),
        n_sentences=len(scores),
        role_means=means,
    )


def weights_from_ics(
    ics: Mapping[SpeakerRole, float],
) -> dict[SpeakerRole, float]:
    """Normalize training ICs into weights.

    w_g = IC_g / sum of positive ICs for roles with IC_g > 0, else 0.
    Raises FitError when no role has a positive IC.
    """
    positive = {role: ic for role, ic in ics.items()
                if not math.isnan(ic) and ic > 0.0}
    if not positive:
        raise FitError("no speaker role has a positive training IC; "
                       "no admissible weights exist")
    total = sum(positive.values())
    return {role: (positive[role] / total if role in positive else 0.0)
            for role in DOWNSTREAM_ROLES}


def role_mean_column(role: SpeakerRole, prefix: str = "tau") -> str:
    """Panel column holding a role's per-call mean net score."""
    return f"{prefix}_{role.value.lower()}"


def fit_ic_weights(
    training_panel: "Panel",
    *,
    training_cutoff: date,
    horizon: int = 1,
    prefix: str = "tau",
) -> SectionWeights:
    """Fit section weights from per-role training ICs.

    Each role's IC is the rank correlation between its per-call mean net
    score and the post-event return, computed over the calls where that
    role is present -- so N differs by role. The panel must contain only
    observations dated strictly before ``training_cutoff``; anything at
    or past the cutoff raises TemporalLeakError. A role with fewer than
    two usable pairs contributes no IC and therefore weight 0.
    """
    from .econ import spearman
    from .panel import Panel  # noqa: F401  (type only; avoids cycle at import)

    frame = training_panel.frame
    if len(frame) == 0:
        raise FitError("training panel is empty")
    event_dates = frame["event_date"]
    offending = event_dates >= training_cutoff.isoformat()
    if bool(offending.any()):
        worst = event_dates[offending].max()
        raise TemporalLeakError(
            f"training panel contains {int(offending.sum())} rows at or "
            f"after cutoff {training_cutoff.isoformat()} (latest {worst})")

    ret = frame[f"ret_{horizon}d"].to_numpy(dtype=float)
    ics: dict[SpeakerRole, float] = {}
    ns: dict[SpeakerRole, int] = {}
    for role in DOWNSTREAM_ROLES:
        col = role_mean_column(role, prefix)
        if col in frame.columns:
            series = frame[col].to_numpy(dtype=float)
        else:
            series = [math.nan] * len(frame)
        pairs = [(s, r) for s, r in zip(series, ret)
                 if not (math.isnan(s) or math.isnan(r))]
        ns[role] = len(pairs)
        if len(pairs) < 2:
            ics[role] = math.nan
            continue
        ics[role] = spearman([p[0] for p in pairs], [p[1] for p in pairs])
    weights = weights_from_ics(ics)
    return SectionWeights(weights=weights, ics=ics, ns=ns,
                          training_cutoff=training_cutoff, horizon=horizon)
