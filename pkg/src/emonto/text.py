"""Text normalization shared by the lexicon, matcher, and providers.

One rule everywhere: lowercase, punctuation becomes whitespace, runs of
whitespace collapse to single spaces. Multiword phrases keep their internal
spaces so "Ill Temper" and "ill-temper" normalize to the same phrase.
"""

from __future__ import annotations

import re

_PUNCT = re.compile(r"[^\w\s]|_", re.UNICODE)


def normalize_tokens(text: str) -> list[str]:
    """Split text into normalized word tokens."""
    return _PUNCT.sub(" ", text.lower()).split()


def normalize_phrase(text: str) -> str:
    """Normalize a word or multiword phrase to its canonical matching form."""
    return " ".join(normalize_tokens(text))
