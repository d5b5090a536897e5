"""Walkthrough: from raw transcript text to per-role sentence tone.

Builds a two-call transcript file in a temp directory, parses it,
classifies each speaker, segments prepared remarks and Q&A into
sentences, and scores every sentence against the bundled word lists.
Prints the per-role tone means that later feed the call-level signals.
"""

from __future__ import annotations

import json
import statistics
import tempfile
from collections import defaultdict
from pathlib import Path

from calltone.lexicon import lm_score, load_reference_lexicon
from calltone.transcript import load_transcripts, segment_call

CALLS = [
    {
        "call_id": "DEMO-0001",
        "ticker": "ACME",
        "call_datetime": "2023-02-07T16:30:00-05:00",
        "timing": "AMC",
        "turns": [
            {"name": "Operator", "title": "",
             "text": "Good afternoon and welcome to the Acme fourth "
                     "quarter earnings conference call."},
            {"name": "Dana Smith", "title": "Chief Executive Officer",
             "text": "Thank you. We delivered record revenue and strong "
                     "profitable growth this quarter. Margins improved "
                     "despite adverse currency headwinds."},
            {"name": "Lee Wong", "title": "Chief Financial Officer",
             "text": "Operating cash flow declined due to a one-time "
                     "litigation charge. We expect a challenging first "
                     "half before demand recovers."},
            {"name": "Pat Jones", "title": "Analyst, Big Bank",
             "text": "Congratulations on the great quarter. Could you "
                     "quantify the headwind from the litigation loss?"},
        ],
    },
    {
        "call_id": "DEMO-0002",
        "ticker": "ACME",
        "call_datetime": "2023-05-04T08:00:00-04:00",
        "timing": "BMO",
        "turns": [
            {"name": "Dana Smith", "title": "Chief Executive Officer",
             "text": "Demand weakened further and we recorded an "
                     "impairment. We are confident the restructuring "
                     "positions us for success."},
        ],
    },
]


def main() -> None:
    workdir = Path(tempfile.mkdtemp(prefix="calltone-demo1-"))
    path = workdir / "transcripts.jsonl"
    path.write_text("\n".join(json.dumps(c) for c in CALLS) + "\n")

    lexicon = load_reference_lexicon()
    tones = defaultdict(list)
    n_sentences = 0

    for meta, turns in load_transcripts(str(path)):
        sentences = segment_call(meta, turns)
        n_sentences += len(sentences)
        print(f"\n{meta.call_id} ({meta.ticker}, {meta.call_date}, "
              f"{meta.timing}): {len(sentences)} sentences")
        for sent in sentences:
            counts = lm_score(sent.text, lexicon)
            tone = ((counts.n_pos - counts.n_neg) / counts.n_words
                    if counts.n_words else 0.0)
            tones[sent.role.value].append(tone)
            flag = "+" if tone > 0 else ("-" if tone < 0 else " ")
            print(f"  [{sent.role.value:9s}] {flag} {sent.text[:64]}")

    print(f"\nper-role mean tone over {n_sentences} sentences")
    for role, values in sorted(tones.items()):
        print(f"  {role:9s} {statistics.mean(values):+.4f}  (n={len(values)})")


if __name__ == "__main__":
    main()
