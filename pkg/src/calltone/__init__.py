"""Speaker-aware sentiment signals from earnings-call transcripts.

The package turns raw call transcripts plus sentence-level sentiment
probabilities into call-level signals, links them to event-window
returns and earnings surprises, and runs the standard asset-pricing
diagnostics on the result: monthly rank correlations, cross-sectional
regressions, factor alphas, portfolio sorts, abnormal-return paths, and
horizon decay. A seeded synthetic generator with known ground truth
backs the whole chain.
"""

from .aggregate import (CallSentiment, SectionWeights, SentenceScore,
                        call_sentiment, fit_ic_weights, weights_from_ics)
from .config import RunConfig, config_hash, load_config
from .econ import (CarResult, DecayResult, DoubleSortResult, Ff5Result,
                   FmResult, ICSeries, NwMean, SortResult, car_profile,
                   decay_profile, double_sort, fama_macbeth, ff5_alpha,
                   monthly_ic, newey_west_mean, ols, quintile_sort, spearman)
from .errors import (AlignmentError, CalltoneError, ConfigError, DataError,
                     DegenerateError, EmptyTranscriptError, FitError,
                     ParseError, SingularityError, TemporalLeakError)
from .lexicon import Lexicon, lm_score, load_reference_lexicon, tokenize
from .market import (EventReturn, PriceSeries, SueRecord, compound_monthly,
                     compute_sue, event_windows, winsorize)
from .panel import Panel
from .synth import SynthConfig, emit_ingestion_corpus, generate_ff5, generate_panel
from .transcript import (SpeakerRole, SpeakerTurn, classify_speaker,
                         load_transcripts, parse_transcript, segment_call)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "AlignmentError",
    "CalltoneError",
    "CallSentiment",
    "CarResult",
    "ConfigError",
    "DataError",
    "DecayResult",
    "DegenerateError",
    "DoubleSortResult",
    "EmptyTranscriptError",
    "EventReturn",
    "Ff5Result",
    "FitError",
    "FmResult",
    "ICSeries",
    "Lexicon",
    "NwMean",
    "Panel",
    "ParseError",
    "PriceSeries",
    "RunConfig",
    "SectionWeights",
    "SentenceScore",
    "SingularityError",
    "SortResult",
    "SpeakerRole",
    "SpeakerTurn",
    "SueRecord",
    "SynthConfig",
    "TemporalLeakError",
    "call_sentiment",
    "car_profile",
    "classify_speaker",
    "compound_monthly",
    "compute_sue",
    "config_hash",
    "decay_profile",
    "double_sort",
    "emit_ingestion_corpus",
    "event_windows",
    "fama_macbeth",
    "ff5_alpha",
    "fit_ic_weights",
    "generate_ff5",
    "generate_panel",
    "lm_score",
    "load_config",
    "load_reference_lexicon",
    "load_transcripts",
    "monthly_ic",
    "newey_west_mean",
    "ols",
    "parse_transcript",
    "quintile_sort",
    "segment_call",
    "spearman",
    "tokenize",
    "weights_from_ics",
    "winsorize",
]
