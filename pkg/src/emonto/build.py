"""End-to-end build pipeline: lexicon in, consistent OWL document out."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .applications import LexiconClassifier
from .dependencies import (
    RecordedClassifier,
    apply_suppressions,
    build_compositions,
    build_opposites,
    build_plus_leads_to,
    default_statements,
    load_suppressions,
)
from .errors import EmontoError
from .hierarchy import data_path, load_hierarchy
from .owl import DEFAULT_IRI_PREFIX, Ontology, serialize
from .similarity import RecordedScoreProvider, VectorTableProvider
from .vocabulary import (
    AnnotationDecision,
    FileLexicon,
    apply_decisions,
    build_pseudo_vocabulary,
    find_overlaps,
    load_decisions,
    majority_vote,
    score_overlaps,
)

LEXICON_FILE = "lexicon.tsv"
DECISIONS_FILE = "decisions.tsv"
SCORES_FILE = "recorded_scores.tsv"
CLASSIFIER_FILE = "recorded_classifier.tsv"
SUPPRESSIONS_FILE = "suppressions.tsv"


@dataclass
class BuildConfig:
    """Input locations and switches for one ontology build.

    Unset paths fall back to the bundled data set. `decisions` takes one
    file (final decisions) or three (per-verifier, resolved by majority).
    """

    hierarchy: Path | None = None
    lexicon: Path | None = None
    decisions: tuple[Path, ...] = ()
    adjectives: Path | None = None
    scores: Path | None = None
    vectors: Path | None = None
    classifier_table: Path | None = None
    suppressions: Path | None = None
    auto_accept_suggestions: bool = False
    iri_prefix: str = DEFAULT_IRI_PREFIX

    def resolved(self) -> "BuildConfig":
        return BuildConfig(
            hierarchy=self.hierarchy or data_path("hierarchy.tsv"),
            lexicon=self.lexicon or data_path(LEXICON_FILE),
            decisions=self.decisions or (data_path(DECISIONS_FILE),),
            adjectives=self.adjectives,
            scores=self.scores or data_path(SCORES_FILE),
            vectors=self.vectors,
            classifier_table=(
                self.classifier_table
                if self.classifier_table is not None
                else data_path(CLASSIFIER_FILE)
            ),
            suppressions=(
                self.suppressions
                if self.suppressions is not None
                else data_path(SUPPRESSIONS_FILE)
            ),
            auto_accept_suggestions=self.auto_accept_suggestions,
            iri_prefix=self.iri_prefix,
        )


@dataclass
class BuildReport:
    emotions: int = 0
    vocabulary_terms: int = 0
    overlaps: int = 0
    opposite_edges: int = 0
    dropped_antonyms: int = 0
    composition_edges: int = 0
    triples: int = 0
    suppressed: int = 0
    warnings: list[str] = field(default_factory=list)

    def lines(self) -> list[str]:
        out = [
            f"emotions: {self.emotions}",
            f"vocabulary terms: {self.vocabulary_terms}",
            f"overlaps resolved: {self.overlaps}",
            f"opposite edges: {self.opposite_edges} "
            f"(dropped antonyms: {self.dropped_antonyms})",
            f"composition edges: {self.composition_edges}",
            f"plus-leads-to triples: {self.triples} "
            f"(suppressed: {self.suppressed})",
        ]
        out.extend(f"warning: {w}" for w in self.warnings)
        return out


class BuildStageError(EmontoError):
    """Wraps the failing stage's name around the underlying cause."""

    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"[{stage}] {cause}")
        self.stage = stage
        self.cause = cause


def _stage(name: str, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except BuildStageError:
        raise
    except Exception as exc:
        raise BuildStageError(name, exc) from exc


def _make_provider(config: BuildConfig):
    if config.vectors is not None:
        return VectorTableProvider.from_file(config.vectors)
    return RecordedScoreProvider.from_file(config.scores)


def _make_decisions(config: BuildConfig, scored) -> list[AnnotationDecision]:
    if config.auto_accept_suggestions:
        return [
            AnnotationDecision(r.term, r.suggested, "auto") for r in scored
        ]
    files = config.decisions
    if len(files) == 1:
        return load_decisions(files[0])
    if len(files) == 3:
        return majority_vote([load_decisions(path) for path in files])
    raise EmontoError(
        f"expected one decision file or three verifier files, got {len(files)}"
    )


def run_build(config: BuildConfig) -> tuple[Ontology, BuildReport, str]:
    """Run the whole pipeline; returns (ontology, report, owl document)."""
    config = config.resolved()
    report = BuildReport()

    for label, path in (
        ("hierarchy", config.hierarchy),
        ("lexicon", config.lexicon),
        ("scores" if config.vectors is None else "vectors",
         config.vectors or config.scores),
    ):
        if not Path(path).is_file():
            raise BuildStageError(label, FileNotFoundError(f"no such file: {path}"))

    hierarchy = _stage("hierarchy", load_hierarchy, config.hierarchy)
    report.emotions = len(hierarchy)

    lexicon = _stage("lexicon", FileLexicon.from_file, config.lexicon)
    pseudo = _stage("vocabulary", build_pseudo_vocabulary, hierarchy, lexicon)
    report.warnings.extend(pseudo.warnings)

    overlaps = _stage("overlaps", find_overlaps, pseudo)
    report.overlaps = len(overlaps)
    provider = _stage("similarity", _make_provider, config)
    scored = _stage("overlaps", score_overlaps, overlaps, provider)

    decisions = _stage("decisions", _make_decisions, config, scored)
    refined = _stage(
        "decisions",
        apply_decisions,
        pseudo,
        decisions,
        lexicon.definitions_for(hierarchy),
    )
    report.vocabulary_terms = len(refined.all_terms())

    drop_log: list[tuple[str, str]] = []
    opposites = _stage(
        "opposites", build_opposites, hierarchy, refined, lexicon, drop_log
    )
    report.opposite_edges = len(opposites)
    report.dropped_antonyms = len(drop_log)

    compositions = _stage("compositions", build_compositions, hierarchy)
    report.composition_edges = len(compositions)

    statements = _stage("statements", default_statements, hierarchy, config.adjectives)
    fallback = LexiconClassifier(hierarchy, refined)
    if config.classifier_table is not None and Path(config.classifier_table).is_file():
        classifier = RecordedClassifier.from_file(
            config.classifier_table, fallback=fallback
        )
    else:
        classifier = fallback
    triples = _stage(
        "leads-to", build_plus_leads_to, hierarchy, statements, classifier
    )
    if config.suppressions is not None and Path(config.suppressions).is_file():
        suppressed = _stage("suppressions", load_suppressions, config.suppressions)
        kept = apply_suppressions(triples, suppressed)
        report.suppressed = len(triples) - len(kept)
        triples = kept
    report.triples = len(triples)

    ontology = Ontology.assemble(
        hierarchy, refined, opposites, compositions, triples,
        iri_prefix=config.iri_prefix,
    )
    document = _stage("serialize", serialize, ontology)
    return ontology, report, document


def load_config_file(path: str | Path) -> dict[str, str]:
    """Read a flat `key=value` config file mirroring BuildConfig fields."""
    values: dict[str, str] = {}
    for lineno, line in enumerate(
        Path(path).read_text(encoding="utf-8").splitlines(), start=1
    ):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        if "=" not in line:
            raise EmontoError(f"config line {lineno}: expected key=value")
        key, _, value = line.partition("=")
        values[key.strip()] = value.strip()
    return values
