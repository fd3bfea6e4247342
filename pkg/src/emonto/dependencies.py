"""Automatic construction of the three dependency relations.

* opposite edges: antonym lookup, resolved against emotion names first and
  vocabulary membership second;
* composition edges: one edge per (parent, direct child) pair of the tree;
* plus-leads-to triples: classify the concatenation of two template
  statements and keep the result when it differs from the base emotion.

Builders are pure functions of their inputs; repeated invocation yields
identical lists.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Protocol, Sequence

from .errors import BuildError, EmontoError, LoadError, NotFoundError
from .hierarchy import EmotionHierarchy, Tier, data_path
from .text import normalize_phrase
from .vocabulary import RefinedVocabulary

ADJECTIVES_FILE = "adjectives.tsv"

# Statement concatenation separator; recorded-classifier tables key on the
# exact concatenated string, so this must never change silently.
STATEMENT_SEPARATOR = ". "


@dataclass(frozen=True)
class OppositeEdge:
    """Directed contrast link; the symmetric closure lives in the query layer."""

    source: str
    target: str


@dataclass(frozen=True)
class CompositionEdge:
    """A parent emotion is composed of each of its direct children."""

    parent: str
    child: str


@dataclass(frozen=True)
class PlusLeadsToTriple:
    """base (primary) plus addend (non-primary) leads to result (primary)."""

    base: str
    addend: str
    result: str


StatementTemplates = dict[str, str]


class EmotionClassifier(Protocol):
    def classify(self, text: str) -> str:
        """Primary emotion name for a piece of text; deterministic."""


class RecordedClassifier:
    """Classifier answering from a `text<TAB>primary-emotion` table.

    Table keys are exact strings (no normalization). Unknown inputs go to
    the fallback classifier when one is given, otherwise raise.
    """

    def __init__(self, table: Mapping[str, str], fallback=None):
        self._table = dict(table)
        self._fallback = fallback

    @classmethod
    def from_file(cls, path: str | Path, fallback=None) -> "RecordedClassifier":
        table = {}
        for lineno, line in enumerate(
            Path(path).read_text(encoding="utf-8").splitlines(), start=1
        ):
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise LoadError(
                    f"line {lineno}: expected `text<TAB>primary-emotion`"
                )
            table[parts[0]] = parts[1].strip()
        return cls(table, fallback)

    def classify(self, text: str) -> str:
        label = self._table.get(text)
        if label is not None:
            return label
        if self._fallback is not None:
            return self._fallback.classify(text)
        raise NotFoundError(f"no recorded classification for {text!r}")


def load_adjectives(path: str | Path) -> dict[str, str]:
    """Load the `emotion<TAB>adjective` statement table."""
    table = {}
    for lineno, line in enumerate(
        Path(path).read_text(encoding="utf-8").splitlines(), start=1
    ):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise LoadError(f"line {lineno}: expected `emotion<TAB>adjective`")
        table[parts[0].strip().lower()] = parts[1].strip()
    return table


def default_statements(
    hierarchy: EmotionHierarchy,
    adjectives: Mapping[str, str] | str | Path | None = None,
) -> StatementTemplates:
    """First-person statement for every emotion.

    Emotions with an adjective in the table read "I am very <adjective>";
    the rest fall back to "I feel <name>". `adjectives` may be a mapping, a
    path, or None for the bundled table.
    """
    if adjectives is None:
        adjectives = load_adjectives(data_path(ADJECTIVES_FILE))
    elif isinstance(adjectives, (str, Path)):
        adjectives = load_adjectives(adjectives)
    else:
        adjectives = {k.lower(): v for k, v in adjectives.items()}
    statements: StatementTemplates = {}
    for name in hierarchy.names:
        adjective = adjectives.get(name.lower())
        if adjective:
            statements[name] = f"I am very {adjective}"
        else:
            statements[name] = f"I feel {name.lower()}"
    return statements


def build_opposites(
    hierarchy: EmotionHierarchy,
    rv: RefinedVocabulary,
    source,
    drop_log: list[tuple[str, str]] | None = None,
) -> list[OppositeEdge]:
    """Derive opposite edges from each emotion's antonyms.

    An antonym that names another emotion links directly; otherwise an
    antonym found in some emotion's vocabulary links to that emotion;
    anything else is dropped (and recorded in `drop_log` when given).
    Edges stay directed and de-duplicated; bidirectionality arises only
    when both directions are derived.
    """
    names = {normalize_phrase(name): name for name in hierarchy.names}
    edges: list[OppositeEdge] = []
    seen: set[tuple[str, str]] = set()
    for name in hierarchy.names:
        for raw in source.antonyms_of(name):
            term = normalize_phrase(raw)
            if not term:
                continue
            resolved = None
            named = names.get(term)
            if named is not None and named != name:
                resolved = named
            else:
                owner = rv.owner_of(term)
                if owner is not None and owner != name:
                    resolved = owner
            if resolved is None:
                if drop_log is not None:
                    drop_log.append((name, raw))
                continue
            key = (name, resolved)
            if key not in seen:
                seen.add(key)
                edges.append(OppositeEdge(name, resolved))
    return edges


def build_compositions(hierarchy: EmotionHierarchy) -> list[CompositionEdge]:
    """One edge per (parent, direct child) pair, in deterministic pre-order.

    Tertiary emotions have no children and contribute nothing.
    """
    edges = []
    for name in hierarchy.names:
        if hierarchy.tier_of(name) is Tier.TERTIARY:
            continue
        for child in hierarchy.children(name):
            edges.append(CompositionEdge(parent=name, child=child))
    return edges


def build_plus_leads_to(
    hierarchy: EmotionHierarchy,
    statements: Mapping[str, str],
    classifier: EmotionClassifier,
) -> list[PlusLeadsToTriple]:
    """Sweep primary x non-primary statement pairs through the classifier.

    For each primary emotion i and non-primary j, the concatenation of
    their statements is classified; when the detected primary differs from
    i, the triple (i, j, detected) is emitted. Iteration follows document
    order, so the output is deterministic.
    """
    primaries = hierarchy.primaries
    primary_lookup = {p.lower(): p for p in primaries}
    non_primaries = [
        name for name in hierarchy.names
        if hierarchy.tier_of(name) is not Tier.PRIMARY
    ]
    triples = []
    for base in primaries:
        for addend in non_primaries:
            try:
                combined = statements[base] + STATEMENT_SEPARATOR + statements[addend]
            except KeyError as missing:
                raise BuildError(f"no statement for emotion {missing}") from None
            try:
                detected = classifier.classify(combined)
            except EmontoError as exc:
                raise BuildError(
                    f"classifier failed on {combined!r}: {exc}"
                ) from exc
            resolved = primary_lookup.get(detected.lower())
            if resolved is None:
                raise BuildError(
                    f"classifier returned non-primary {detected!r} "
                    f"for {combined!r}"
                )
            if resolved != base:
                triples.append(PlusLeadsToTriple(base, addend, resolved))
    return triples


def load_suppressions(path: str | Path) -> set[tuple[str, str, str]]:
    """Load rejected triples: `base<TAB>addend<TAB>result` records."""
    suppressed = set()
    for lineno, line in enumerate(
        Path(path).read_text(encoding="utf-8").splitlines(), start=1
    ):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise LoadError(
                f"line {lineno}: expected `base<TAB>addend<TAB>result`"
            )
        suppressed.add(tuple(p.strip().lower() for p in parts))
    return suppressed


def apply_suppressions(
    triples: Sequence[PlusLeadsToTriple],
    suppressed: set[tuple[str, str, str]],
) -> list[PlusLeadsToTriple]:
    """Drop triples rejected by the second-level human verification."""
    return [
        t for t in triples
        if (t.base.lower(), t.addend.lower(), t.result.lower()) not in suppressed
    ]
