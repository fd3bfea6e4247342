"""emonto: a three-tier emotion ontology toolkit.

Builds Parrott-style emotion hierarchies with mutually exclusive
per-emotion vocabularies and three derived dependency relations,
serializes them to OWL 2 XML, answers structural queries over them, and
applies them to lexicon-based emotion detection and featurization.
"""

from . import errors
from .applications import (
    DetectionResult,
    EmotionDetector,
    FeatureMode,
    FeatureVector,
    Featurizer,
    GuidanceResult,
    LexiconClassifier,
    TermMatch,
    detect_emotion,
    empathetic_guidance,
    feature_names,
    featurize,
)
from .build import BuildConfig, BuildReport, run_build
from .dependencies import (
    CompositionEdge,
    OppositeEdge,
    PlusLeadsToTriple,
    RecordedClassifier,
    apply_suppressions,
    build_compositions,
    build_opposites,
    build_plus_leads_to,
    default_statements,
    load_adjectives,
    load_suppressions,
)
from .hierarchy import (
    CANONICAL_PRIMARIES,
    EmotionHierarchy,
    EmotionNode,
    Tier,
    load_canonical,
    load_hierarchy,
)
from .owl import Ontology, parse, serialize
from .query import (
    ConsistencyReport,
    QueryResult,
    Violation,
    check_consistency,
    query_components,
    query_leads_to,
    query_opposites,
    run_query,
)
from .similarity import (
    RecordedScoreProvider,
    VectorTableProvider,
    cosine,
    pair_score,
)
from .vocabulary import (
    AnnotationDecision,
    FileLexicon,
    OverlapRecord,
    PseudoVocabulary,
    RefinedVocabulary,
    apply_decisions,
    build_pseudo_vocabulary,
    find_overlaps,
    load_decisions,
    majority_vote,
    merged_vocabulary,
    score_overlaps,
    write_overlap_worksheet,
)

__version__ = "0.1.0"

__all__ = [
    "AnnotationDecision",
    "BuildConfig",
    "BuildReport",
    "CANONICAL_PRIMARIES",
    "CompositionEdge",
    "ConsistencyReport",
    "DetectionResult",
    "EmotionDetector",
    "EmotionHierarchy",
    "EmotionNode",
    "FeatureMode",
    "FeatureVector",
    "Featurizer",
    "FileLexicon",
    "GuidanceResult",
    "LexiconClassifier",
    "Ontology",
    "OppositeEdge",
    "OverlapRecord",
    "PlusLeadsToTriple",
    "PseudoVocabulary",
    "QueryResult",
    "RecordedClassifier",
    "RecordedScoreProvider",
    "RefinedVocabulary",
    "TermMatch",
    "Tier",
    "VectorTableProvider",
    "Violation",
    "apply_decisions",
    "apply_suppressions",
    "build_compositions",
    "build_opposites",
    "build_plus_leads_to",
    "build_pseudo_vocabulary",
    "check_consistency",
    "cosine",
    "default_statements",
    "detect_emotion",
    "empathetic_guidance",
    "errors",
    "feature_names",
    "featurize",
    "find_overlaps",
    "load_adjectives",
    "load_canonical",
    "load_decisions",
    "load_hierarchy",
    "load_suppressions",
    "majority_vote",
    "merged_vocabulary",
    "pair_score",
    "parse",
    "query_components",
    "query_leads_to",
    "query_opposites",
    "run_build",
    "run_query",
    "score_overlaps",
    "serialize",
    "write_overlap_worksheet",
]
