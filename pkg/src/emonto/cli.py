"""Command-line interface: build, validate, query, detect, featurize, guide.

Exit codes: 0 success / consistent; 1 consistency violations found;
2 usage or input error; 3 OWL parse error.
"""

from __future__ import annotations

import csv
import sys
from pathlib import Path

import click

from .applications import (
    EmotionDetector,
    FeatureMode,
    Featurizer,
    empathetic_guidance,
    feature_names,
)
from .build import BuildConfig, load_config_file, run_build
from .errors import EmontoError, OwlParseError, QuerySyntaxError
from .hierarchy import Tier
from .owl import parse
from .query import check_consistency, run_query

EXIT_VIOLATIONS = 1
EXIT_INPUT = 2
EXIT_PARSE = 3


def _fail(code: int, message: str):
    click.echo(message, err=True)
    sys.exit(code)


def _load_ontology(owl_path: Path):
    try:
        text = owl_path.read_text(encoding="utf-8")
    except OSError as exc:
        _fail(EXIT_INPUT, f"cannot read {owl_path}: {exc}")
    try:
        return parse(text)
    except OwlParseError as exc:
        where = f" (line {exc.line})" if exc.line else ""
        _fail(EXIT_PARSE, f"parse error in {owl_path}{where}: {exc}")


def _read_lines(path: Path) -> list[str]:
    try:
        return path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        _fail(EXIT_INPUT, f"cannot read {path}: {exc}")


@click.group()
def main():
    """Emotion ontology toolkit: build it, check it, query it, apply it."""


@main.command()
@click.option("--config", "config_path", type=click.Path(exists=True, path_type=Path),
              default=None, help="Flat key=value file prefilling the options below.")
@click.option("--hierarchy", type=click.Path(path_type=Path), default=None,
              help="Hierarchy file (default: bundled canonical data).")
@click.option("--lexicon", type=click.Path(path_type=Path), default=None,
              help="Lexicon file with def/syn/ant records.")
@click.option("--decisions", multiple=True, type=click.Path(path_type=Path),
              help="Decision file; pass three times for majority voting.")
@click.option("--adjectives", type=click.Path(path_type=Path), default=None,
              help="Statement adjective table.")
@click.option("--scores", type=click.Path(path_type=Path), default=None,
              help="Recorded pairwise-score file for overlap scoring.")
@click.option("--vectors", type=click.Path(path_type=Path), default=None,
              help="Embedding vector table (alternative to --scores).")
@click.option("--classifier-table", type=click.Path(path_type=Path), default=None,
              help="Recorded classifier table for the leads-to build.")
@click.option("--suppressions", type=click.Path(path_type=Path), default=None,
              help="Triples rejected by verification.")
@click.option("--auto-accept-suggestions", is_flag=True,
              help="Resolve overlaps by similarity argmax instead of decisions.")
@click.option("--iri-prefix", default=None, help="Ontology IRI prefix.")
@click.option("--out", "-o", type=click.Path(path_type=Path),
              default=Path("ontology.owl"), show_default=True,
              help="Output OWL file.")
def build(config_path, hierarchy, lexicon, decisions, adjectives, scores,
          vectors, classifier_table, suppressions, auto_accept_suggestions,
          iri_prefix, out):
    """Build the ontology from its inputs and write the OWL document."""
    settings: dict[str, str] = {}
    if config_path is not None:
        try:
            settings = load_config_file(config_path)
        except EmontoError as exc:
            _fail(EXIT_INPUT, f"bad config file: {exc}")

    def pick(option, key):
        if option is not None:
            return option
        value = settings.get(key)
        return Path(value) if value else None

    if scores is not None and vectors is not None:
        _fail(EXIT_INPUT, "--scores and --vectors are mutually exclusive")

    decision_paths = tuple(decisions)
    if not decision_paths and settings.get("decisions"):
        decision_paths = tuple(
            Path(p.strip()) for p in settings["decisions"].split(",") if p.strip()
        )
    config = BuildConfig(
        hierarchy=pick(hierarchy, "hierarchy"),
        lexicon=pick(lexicon, "lexicon"),
        decisions=decision_paths,
        adjectives=pick(adjectives, "adjectives"),
        scores=pick(scores, "scores"),
        vectors=pick(vectors, "vectors"),
        classifier_table=pick(classifier_table, "classifier_table"),
        suppressions=pick(suppressions, "suppressions"),
        auto_accept_suggestions=(
            auto_accept_suggestions
            or settings.get("auto_accept_suggestions", "").lower()
            in ("1", "true", "yes")
        ),
        iri_prefix=iri_prefix or settings.get("iri_prefix") or BuildConfig.iri_prefix,
    )
    try:
        _, report, document = run_build(config)
    except EmontoError as exc:
        _fail(EXIT_INPUT, f"build failed {exc}")
    out.write_text(document, encoding="utf-8")
    for line in report.lines():
        click.echo(line)
    click.echo(f"wrote: {out}")


@main.command()
@click.argument("owl_path", type=click.Path(exists=True, path_type=Path))
def validate(owl_path):
    """Parse an OWL file and run the consistency rules against it."""
    ontology = _load_ontology(owl_path)
    report = check_consistency(ontology)
    if report.ok:
        click.echo("consistent")
        return
    for violation in report.violations:
        click.echo(f"{violation.rule}: {violation.message}")
    sys.exit(EXIT_VIOLATIONS)


@main.command()
@click.argument("owl_path", type=click.Path(exists=True, path_type=Path))
@click.argument("query_text")
def query(owl_path, query_text):
    """Run a query such as 'opposite(Joy)' or 'leadsTo(Anger + Compassion)'."""
    ontology = _load_ontology(owl_path)
    try:
        result = run_query(ontology, query_text)
    except (QuerySyntaxError, EmontoError) as exc:
        _fail(EXIT_INPUT, str(exc))
    for emotion in result.emotions:
        click.echo(emotion)


@main.command()
@click.argument("owl_path", type=click.Path(exists=True, path_type=Path))
@click.argument("sentences_path", type=click.Path(exists=True, path_type=Path))
@click.option("--tier", type=click.Choice([t.value for t in Tier]),
              default=Tier.PRIMARY.value, show_default=True,
              help="Tier whose merged vocabularies drive the match.")
def detect(owl_path, sentences_path, tier):
    """Label each input sentence (one per line); CSV on stdout."""
    ontology = _load_ontology(owl_path)
    detector = EmotionDetector(ontology, Tier(tier))
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["sentence_index", "label", "matched_terms"])
    for index, sentence in enumerate(_read_lines(sentences_path)):
        result = detector.detect(sentence)
        matched = ";".join(f"{m.term}={m.emotion}" for m in result.matched_terms)
        writer.writerow([index, result.label or "NONE", matched])


@main.command()
@click.argument("owl_path", type=click.Path(exists=True, path_type=Path))
@click.argument("texts_path", type=click.Path(exists=True, path_type=Path))
@click.option("--mode", type=click.Choice([m.value for m in FeatureMode]),
              default=FeatureMode.TONE.value, show_default=True,
              help="Feature space: every emotion, or primaries only.")
def featurize(owl_path, texts_path, mode):
    """Emotion-occurrence feature vectors (one CSV row per input line)."""
    ontology = _load_ontology(owl_path)
    feature_mode = FeatureMode(mode)
    featurizer = Featurizer(ontology, feature_mode)
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(feature_names(ontology, feature_mode))
    for text in _read_lines(texts_path):
        writer.writerow(featurizer.vector(text).counts)


@main.command()
@click.argument("owl_path", type=click.Path(exists=True, path_type=Path))
@click.argument("emotion")
def guide(owl_path, emotion):
    """Empathetic-response guidance for a detected negative emotion."""
    ontology = _load_ontology(owl_path)
    try:
        result = empathetic_guidance(ontology, emotion)
    except EmontoError as exc:
        _fail(EXIT_INPUT, str(exc))
    click.echo(f"target: {result.target}")
    for addend in result.addends:
        click.echo(f"add: {addend}")


if __name__ == "__main__":
    main()
