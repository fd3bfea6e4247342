"""Cosine-similarity substrate with pluggable embedding providers.

The neural embedder is deliberately not part of this package. Anything with
an ``embed(text)`` method can act as a provider; two file-backed providers
ship here: a dense vector table and a recorded pairwise-score table (the
latter bypasses vectors entirely and is what keeps tests deterministic).
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Mapping, Sequence

from .errors import LoadError, NotFoundError, SimilarityError
from .text import normalize_phrase


def cosine(u: Sequence[float], v: Sequence[float]) -> float:
    """Cosine similarity of two equal-dimension, non-zero vectors."""
    if len(u) != len(v):
        raise SimilarityError(f"dimension mismatch: {len(u)} vs {len(v)}")
    dot = sum(a * b for a, b in zip(u, v))
    norm_u = math.sqrt(sum(a * a for a in u))
    norm_v = math.sqrt(sum(b * b for b in v))
    if norm_u == 0.0 or norm_v == 0.0:
        raise SimilarityError("cosine of a zero vector is undefined")
    return dot / (norm_u * norm_v)


class VectorTableProvider:
    """Embedding provider backed by a `text<TAB>v1 v2 ... vd` file.

    Lookups are keyed on the normalized phrase, so "Ill Temper" and
    "ill temper" resolve to the same vector. All vectors must share one
    dimension.
    """

    def __init__(self, table: Mapping[str, Sequence[float]]):
        self._table: dict[str, tuple[float, ...]] = {}
        dimension = None
        for text, values in table.items():
            vector = tuple(float(x) for x in values)
            if dimension is None:
                dimension = len(vector)
            elif len(vector) != dimension:
                raise LoadError(
                    f"vector for {text!r} has dimension {len(vector)}, "
                    f"expected {dimension}"
                )
            self._table[normalize_phrase(text)] = vector
        self.dimension = dimension

    @classmethod
    def from_file(cls, path: str | Path) -> "VectorTableProvider":
        table = {}
        for lineno, line in enumerate(
            Path(path).read_text(encoding="utf-8").splitlines(), start=1
        ):
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise LoadError(f"line {lineno}: expected `text<TAB>floats`")
            try:
                table[parts[0]] = [float(x) for x in parts[1].split()]
            except ValueError:
                raise LoadError(f"line {lineno}: bad float in vector") from None
        return cls(table)

    def embed(self, text: str) -> tuple[float, ...]:
        key = normalize_phrase(text)
        try:
            return self._table[key]
        except KeyError:
            raise NotFoundError(f"no vector for {text!r}") from None


class RecordedScoreProvider:
    """Provider that returns stored pairwise scores instead of vectors.

    Keys are unordered, so the provider is symmetric by construction.
    """

    def __init__(self, scores: Mapping[tuple[str, str], float]):
        self._scores = {
            self._key(a, b): float(score) for (a, b), score in scores.items()
        }

    @staticmethod
    def _key(a: str, b: str) -> tuple[str, str]:
        return tuple(sorted((normalize_phrase(a), normalize_phrase(b))))

    @classmethod
    def from_file(cls, path: str | Path) -> "RecordedScoreProvider":
        scores = {}
        for lineno, line in enumerate(
            Path(path).read_text(encoding="utf-8").splitlines(), start=1
        ):
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise LoadError(
                    f"line {lineno}: expected `textA<TAB>textB<TAB>score`"
                )
            try:
                scores[(parts[0], parts[1])] = float(parts[2])
            except ValueError:
                raise LoadError(f"line {lineno}: bad score") from None
        return cls(scores)

    def score(self, a: str, b: str) -> float:
        try:
            return self._scores[self._key(a, b)]
        except KeyError:
            raise NotFoundError(f"no recorded score for ({a!r}, {b!r})") from None


def pair_score(provider, a: str, b: str) -> float:
    """Similarity of two texts under a provider.

    Recorded-score providers answer from their table; embedding providers
    answer with the cosine of the two embeddings. Symmetric either way.
    """
    score = getattr(provider, "score", None)
    if score is not None:
        return score(a, b)
    return cosine(provider.embed(a), provider.embed(b))
