"""Lexicon-based emotion detection, featurization, and response guidance."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import BuildError, GuidanceError
from .hierarchy import EmotionHierarchy, Tier
from .owl import Ontology
from .query import query_opposites
from .text import normalize_phrase, normalize_tokens
from .vocabulary import RefinedVocabulary, merged_vocabulary

POSITIVE_PRIMARIES = ("Joy", "Love")
NEGATIVE_PRIMARIES = ("Anger", "Fear", "Sadness")
# Surprise is deliberately in neither set: it carries no fixed valence.


class FeatureMode(enum.Enum):
    TONE = "tone"      # one feature per emotion in the hierarchy
    P_TONE = "p-tone"  # one feature per primary emotion, merged vocabularies


@dataclass(frozen=True)
class TermMatch:
    term: str
    emotion: str


@dataclass
class DetectionResult:
    sentence: str
    matched_terms: list[TermMatch]
    label: str | None


@dataclass
class FeatureVector:
    counts: list[int]
    mode: FeatureMode


@dataclass
class GuidanceResult:
    source: str
    target: str
    addends: list[str]


class _PhraseIndex:
    """Longest-phrase-first matcher over a term -> emotion map.

    Longer phrases consume their word span first, so "ill temper" never
    also counts as a match of a shorter contained term. Matching is
    deterministic: longest span first, then left to right.
    """

    def __init__(self, owner_by_term: dict[str, str]):
        self._by_length: dict[int, dict[str, str]] = {}
        for term, owner in owner_by_term.items():
            words = len(term.split())
            self._by_length.setdefault(words, {})[term] = owner
        self._lengths = sorted(self._by_length, reverse=True)

    def match(self, text: str) -> list[TermMatch]:
        tokens = normalize_tokens(text)
        consumed = [False] * len(tokens)
        found: list[tuple[int, TermMatch]] = []
        for length in self._lengths:
            table = self._by_length[length]
            for start in range(0, len(tokens) - length + 1):
                if any(consumed[start:start + length]):
                    continue
                phrase = " ".join(tokens[start:start + length])
                owner = table.get(phrase)
                if owner is None:
                    continue
                for i in range(start, start + length):
                    consumed[i] = True
                found.append((start, TermMatch(phrase, owner)))
        return [match for _, match in sorted(found, key=lambda item: item[0])]


def _tier_term_map(
    hierarchy: EmotionHierarchy, rv: RefinedVocabulary, tier: Tier
) -> dict[str, str]:
    """term -> emotion over the merged vocabularies of one tier."""
    owner: dict[str, str] = {}
    for name in hierarchy.names:
        if hierarchy.tier_of(name) is not tier:
            continue
        for term in merged_vocabulary(hierarchy, rv, name):
            owner.setdefault(term, name)
    return owner


def _own_term_map(
    hierarchy: EmotionHierarchy, rv: RefinedVocabulary
) -> dict[str, str]:
    """term -> emotion over each emotion's own vocabulary plus its name."""
    owner: dict[str, str] = {}
    for name in hierarchy.names:
        for term in rv.terms(name):
            owner.setdefault(term, name)
    for name in hierarchy.names:
        owner[normalize_phrase(name)] = name  # canonical names take precedence
    return owner


class EmotionDetector:
    """Reusable detector for one ontology and tier (index built once)."""

    def __init__(self, ontology: Ontology, tier: Tier = Tier.PRIMARY):
        self._hierarchy = ontology.hierarchy
        self.tier = tier
        self._index = _PhraseIndex(
            _tier_term_map(ontology.hierarchy, ontology.vocabulary, tier)
        )

    def detect(self, sentence: str) -> DetectionResult:
        matches = self._index.match(sentence)
        if not matches:
            return DetectionResult(sentence, [], None)
        counts: dict[str, int] = {}
        for match in matches:
            counts[match.emotion] = counts.get(match.emotion, 0) + 1
        best = max(counts.values())
        label = min(
            (e for e, c in counts.items() if c == best),
            key=self._hierarchy.doc_index,
        )
        return DetectionResult(sentence, matches, label)


def detect_emotion(
    ontology: Ontology, sentence: str, tier: Tier = Tier.PRIMARY
) -> DetectionResult:
    """Label a sentence with the tier emotion whose vocabulary matches most.

    Ties break toward document order; a sentence with no vocabulary match
    gets no label.
    """
    return EmotionDetector(ontology, tier).detect(sentence)


class Featurizer:
    """Reusable per-text emotion-count featurizer for one ontology and mode."""

    def __init__(self, ontology: Ontology, mode: FeatureMode):
        self.mode = mode
        hierarchy = ontology.hierarchy
        if mode is FeatureMode.TONE:
            self.names = list(hierarchy.names)
            self._index = _PhraseIndex(
                _own_term_map(hierarchy, ontology.vocabulary)
            )
        else:
            self.names = list(hierarchy.primaries)
            self._index = _PhraseIndex(
                _tier_term_map(hierarchy, ontology.vocabulary, Tier.PRIMARY)
            )
        self._positions = {name: i for i, name in enumerate(self.names)}

    def vector(self, text: str) -> FeatureVector:
        counts = [0] * len(self.names)
        for match in self._index.match(text):
            counts[self._positions[match.emotion]] += 1
        return FeatureVector(counts, self.mode)


def featurize(ontology: Ontology, text: str, mode: FeatureMode) -> FeatureVector:
    """Occurrence counts of each emotion's vocabulary in the text.

    TONE mode counts against every emotion's own vocabulary (one feature
    per emotion, document order); P-TONE counts against the primary
    emotions' merged vocabularies, which equals the TONE vector folded by
    ancestry.
    """
    return Featurizer(ontology, mode).vector(text)


def feature_names(ontology: Ontology, mode: FeatureMode) -> list[str]:
    """Column names of a feature vector, in index order."""
    if mode is FeatureMode.TONE:
        return list(ontology.hierarchy.names)
    return list(ontology.hierarchy.primaries)


class LexiconClassifier:
    """Primary-emotion classifier backed by the detection pipeline.

    Usable wherever a classifier oracle is needed (e.g. the leads-to
    builder); raises when the lexicon has nothing to say about a text.
    """

    def __init__(self, hierarchy: EmotionHierarchy, vocabulary: RefinedVocabulary):
        self._detector = EmotionDetector(
            Ontology(hierarchy, vocabulary, [], [], []), Tier.PRIMARY
        )

    def classify(self, text: str) -> str:
        result = self._detector.detect(text)
        if result.label is None:
            raise BuildError(f"lexicon matches nothing in {text!r}")
        return result.label


def _polarity(hierarchy: EmotionHierarchy, name: str) -> str:
    root = hierarchy.root_of(name)
    if root in POSITIVE_PRIMARIES:
        return "positive"
    if root in NEGATIVE_PRIMARIES:
        return "negative"
    return "neutral"


def empathetic_guidance(ontology: Ontology, detected: str) -> GuidanceResult:
    """How to answer a negative primary emotion.

    The target is the first positive emotion among the opposites of the
    detected emotion; the addends are the emotions that lead the detected
    emotion to a positive primary. Paths that lead to negative emotions
    are ignored.
    """
    hierarchy = ontology.hierarchy
    node = hierarchy.node(detected)
    if node.tier is not Tier.PRIMARY or node.name not in NEGATIVE_PRIMARIES:
        raise GuidanceError(
            f"guidance needs a negative primary emotion, got {node.name!r}"
        )
    opposites = query_opposites(ontology, node.name).emotions
    target = next(
        (e for e in opposites if _polarity(hierarchy, e) == "positive"), None
    )
    if target is None:
        raise GuidanceError(f"no positive opposite recorded for {node.name!r}")
    addends = []
    for triple in ontology.triples:
        if triple.base == node.name and triple.result in POSITIVE_PRIMARIES:
            if triple.addend not in addends:
                addends.append(triple.addend)
    return GuidanceResult(node.name, target, addends)
