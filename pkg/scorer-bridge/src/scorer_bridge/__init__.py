"""Batch FinBERT scoring of earnings-call sentences.

Reads the transcript interchange format, segments each call with the
same frozen rules the downstream pipeline applies, scores every
surviving sentence with a locally stored classifier, and writes the
newline-delimited score file the pipeline ingests. Segmentation is
re-implemented here on purpose: the two implementations are held equal
by conformance tests, not by a shared import, so this package installs
without the analysis stack.
"""

__version__ = "0.1.0"
