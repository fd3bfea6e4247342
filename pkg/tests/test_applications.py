from __future__ import annotations

import random

import pytest

from emonto.applications import (
    EmotionDetector,
    FeatureMode,
    Featurizer,
    LexiconClassifier,
    detect_emotion,
    empathetic_guidance,
    feature_names,
    featurize,
)
from emonto.errors import BuildError, GuidanceError
from emonto.hierarchy import Tier

# filler words that appear in no vocabulary phrase
FILLERS = ["quarterly", "budget", "committee", "rescheduled", "thursday"]


def planted_text(rng, terms):
    """Interleave vocabulary terms with inert filler words."""
    words = []
    for term in terms:
        words.append(rng.choice(FILLERS))
        words.append(term)
    words.append(rng.choice(FILLERS))
    return " ".join(words)


class TestDetectEmotion:
    def test_guilty_maps_to_sadness_at_primary_tier(self, ontology):
        result = detect_emotion(ontology, "I feel very guilty")
        assert result.label == "Sadness"
        assert [m.term for m in result.matched_terms] == ["guilty"]

    def test_no_lexicon_words_gives_no_label(self, ontology):
        result = detect_emotion(ontology, "The spreadsheet compiles nightly.")
        assert result.label is None
        assert result.matched_terms == []

    def test_canonical_primary_name_detects_itself(self, ontology):
        assert detect_emotion(ontology, "I am full of joy").label == "Joy"

    def test_case_invariant(self, ontology):
        sentence = "I Feel VERY Guilty!"
        assert detect_emotion(ontology, sentence).label == "Sadness"

    def test_tier_changes_granularity(self, ontology):
        sentence = "I feel very guilty"
        assert detect_emotion(ontology, sentence, Tier.PRIMARY).label == "Sadness"
        assert detect_emotion(ontology, sentence, Tier.SECONDARY).label == "Shame"
        assert detect_emotion(ontology, sentence, Tier.TERTIARY).label == "Guilt"

    def test_multiword_phrase_not_double_counted(self, ontology):
        result = detect_emotion(ontology, "such an ill temper today")
        assert [m.term for m in result.matched_terms] == ["ill temper"]
        assert result.label == "Anger"

    def test_most_matches_wins(self, ontology):
        result = detect_emotion(
            ontology, "gloomy and melancholy, but with a little joy"
        )
        assert result.label == "Sadness"

    def test_tie_breaks_by_document_order(self, ontology):
        # one Anger-tree term and one Fear-tree term; Anger precedes Fear
        result = detect_emotion(ontology, "full of spite and dread")
        counts = {}
        for match in result.matched_terms:
            counts[match.emotion] = counts.get(match.emotion, 0) + 1
        assert counts == {"Anger": 1, "Fear": 1}
        assert result.label == "Anger"

    def test_label_only_with_matches(self, ontology):
        detector = EmotionDetector(ontology, Tier.PRIMARY)
        for sentence in ["", "   ", "12345 67890"]:
            result = detector.detect(sentence)
            assert (result.label is None) == (not result.matched_terms)


class TestFeaturize:
    def test_empty_text_gives_zero_vector(self, ontology):
        fv = featurize(ontology, "", FeatureMode.TONE)
        assert fv.counts == [0] * 144

    def test_mode_lengths_and_names(self, ontology):
        assert len(feature_names(ontology, FeatureMode.TONE)) == 144
        assert feature_names(ontology, FeatureMode.P_TONE) == [
            "Anger", "Fear", "Joy", "Love", "Sadness", "Surprise",
        ]
        assert len(featurize(ontology, "x", FeatureMode.P_TONE).counts) == 6

    def test_single_tertiary_term_gives_single_one(self, ontology):
        fv = featurize(ontology, "nothing but willies here", FeatureMode.TONE)
        names = feature_names(ontology, FeatureMode.TONE)
        assert sum(fv.counts) == 1
        assert fv.counts[names.index("Nervousness")] == 1

    def test_counts_are_occurrences(self, ontology):
        fv = featurize(ontology, "guilty guilty guilty", FeatureMode.TONE)
        names = feature_names(ontology, FeatureMode.TONE)
        assert fv.counts[names.index("Guilt")] == 3

    def test_conservation_and_fold_on_randomized_texts(self, ontology):
        rng = random.Random(20240809)
        vocabulary_terms = sorted(ontology.vocabulary.all_terms())
        tone = Featurizer(ontology, FeatureMode.TONE)
        p_tone = Featurizer(ontology, FeatureMode.P_TONE)
        tone_names = feature_names(ontology, FeatureMode.TONE)
        primaries = feature_names(ontology, FeatureMode.P_TONE)

        # independent ancestry fold: walk parent links of the raw node table
        parent = {
            node.name: node.parent for node in ontology.hierarchy
        }

        def root_of(name):
            while parent[name] is not None:
                name = parent[name]
            return name

        for _ in range(100):
            terms = [
                rng.choice(vocabulary_terms) for _ in range(rng.randint(1, 8))
            ]
            text = planted_text(rng, terms)
            tone_vector = tone.vector(text)
            assert sum(tone_vector.counts) == len(terms)  # conservation
            folded = {name: 0 for name in primaries}
            for name, count in zip(tone_names, tone_vector.counts):
                folded[root_of(name)] += count
            assert p_tone.vector(text).counts == [folded[p] for p in primaries]


class TestLexiconClassifier:
    def test_returns_primary_label(self, ontology):
        clf = LexiconClassifier(ontology.hierarchy, ontology.vocabulary)
        assert clf.classify("I am very happy today") == "Joy"

    def test_raises_on_unmatched_text(self, ontology):
        clf = LexiconClassifier(ontology.hierarchy, ontology.vocabulary)
        with pytest.raises(BuildError):
            clf.classify("entirely procedural prose")

    def test_deterministic(self, ontology):
        clf = LexiconClassifier(ontology.hierarchy, ontology.vocabulary)
        text = "I am very scared. I feel infatuation"
        assert clf.classify(text) == clf.classify(text)


class TestEmpatheticGuidance:
    def test_anger_adds_compassion(self, ontology):
        result = empathetic_guidance(ontology, "Anger")
        assert result.addends == ["Compassion"]
        assert result.target == "Joy"

    def test_sadness_targets_joy(self, ontology):
        result = empathetic_guidance(ontology, "Sadness")
        assert result.target == "Joy"

    def test_target_is_an_opposite(self, ontology):
        from emonto.query import query_opposites

        for emotion in ("Anger", "Fear", "Sadness"):
            result = empathetic_guidance(ontology, emotion)
            assert result.target in query_opposites(ontology, emotion).emotions

    def test_addends_lead_to_positive_primaries(self, ontology):
        result = empathetic_guidance(ontology, "Sadness")
        by_pair = {
            (t.base, t.addend): t.result for t in ontology.triples
        }
        for addend in result.addends:
            assert by_pair[("Sadness", addend)] in ("Joy", "Love")

    def test_empty_triples_still_resolves_target(self, ontology):
        from emonto.owl import Ontology

        stripped = Ontology(
            ontology.hierarchy,
            ontology.vocabulary,
            ontology.opposites,
            ontology.compositions,
            [],
            ontology.disjoint_pairs,
        )
        result = empathetic_guidance(stripped, "Anger")
        assert result.addends == []
        assert result.target == "Joy"

    @pytest.mark.parametrize("emotion", ["Joy", "Love", "Surprise", "Gloom"])
    def test_non_negative_or_non_primary_rejected(self, ontology, emotion):
        with pytest.raises(GuidanceError):
            empathetic_guidance(ontology, emotion)
