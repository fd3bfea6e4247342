"""Per-emotion vocabularies: collection, overlap resolution, refinement.

The raw synonym lists (the pseudo-vocabulary) may share terms between
emotions. Overlapping terms are resolved to exactly one emotion, either by
similarity-scored suggestions or by explicit annotator decisions, giving a
refined vocabulary that is globally mutually exclusive.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .errors import (
    DecisionError,
    EmontoError,
    IncompleteDecisionError,
    LoadError,
    NotFoundError,
    StaleDecisionError,
    UnresolvedTermError,
)
from .hierarchy import EmotionHierarchy
from .similarity import pair_score
from .text import normalize_phrase


class FileLexicon:
    """Synonym/antonym/definition source backed by a single lexicon file.

    File format, one record per line: `emotion<TAB>kind<TAB>text` with
    kind in {def, syn, ant}; '#' lines are comments. Lookups are
    case-insensitive; emotions without a record yield empty results.
    """

    def __init__(self, definitions=None, synonyms=None, antonyms=None):
        self._definitions: dict[str, str] = dict(definitions or {})
        self._synonyms: dict[str, list[str]] = {
            k: list(v) for k, v in (synonyms or {}).items()
        }
        self._antonyms: dict[str, list[str]] = {
            k: list(v) for k, v in (antonyms or {}).items()
        }

    @classmethod
    def from_file(cls, path: str | Path) -> "FileLexicon":
        definitions: dict[str, str] = {}
        synonyms: dict[str, list[str]] = {}
        antonyms: dict[str, list[str]] = {}
        for lineno, line in enumerate(
            Path(path).read_text(encoding="utf-8").splitlines(), start=1
        ):
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            parts = line.split("\t", 2)
            if len(parts) != 3:
                raise LoadError(
                    f"line {lineno}: expected `emotion<TAB>kind<TAB>text`"
                )
            emotion, kind, text = (p.strip() for p in parts)
            key = emotion.lower()
            if kind == "def":
                if text:
                    definitions[key] = text
            elif kind == "syn":
                synonyms.setdefault(key, []).append(text)
            elif kind == "ant":
                antonyms.setdefault(key, []).append(text)
            else:
                raise LoadError(f"line {lineno}: unknown kind {kind!r}")
        return cls(definitions, synonyms, antonyms)

    def synonyms_of(self, emotion: str) -> list[str]:
        return list(self._synonyms.get(emotion.lower(), []))

    def antonyms_of(self, emotion: str) -> list[str]:
        return list(self._antonyms.get(emotion.lower(), []))

    def definition_of(self, emotion: str) -> str | None:
        return self._definitions.get(emotion.lower())

    def definitions_for(self, hierarchy: EmotionHierarchy) -> dict[str, str]:
        """Definitions keyed by canonical name, for the given hierarchy."""
        out = {}
        for name in hierarchy.names:
            definition = self.definition_of(name)
            if definition:
                out[name] = definition
        return out


@dataclass
class PseudoVocabulary:
    """Raw per-emotion term lists; a term may appear under several emotions."""

    entries: dict[str, list[str]]
    warnings: list[str] = field(default_factory=list)


@dataclass(frozen=True)
class OverlapRecord:
    """One term that appears under at least two candidate emotions."""

    term: str
    candidates: tuple[str, ...]
    scores: dict[str, float] | None = None
    suggested: str | None = None
    tie: bool = False


@dataclass(frozen=True)
class AnnotationDecision:
    """An annotator's (or verifier majority's) placement of one term."""

    term: str
    assigned_to: str
    decider: str


class RefinedVocabulary:
    """Mutually exclusive term sets per emotion, plus definitions.

    The constructor stores what it is given; builders are responsible for
    exclusivity and the consistency checker reports violations on foreign
    data (e.g. a parsed document). `owner_of` assumes exclusivity and
    returns the first owner in entry order.
    """

    def __init__(
        self,
        entries: Mapping[str, Iterable[str]],
        definitions: Mapping[str, str] | None = None,
    ):
        self._entries: dict[str, frozenset[str]] = {
            emotion: frozenset(terms) for emotion, terms in entries.items()
        }
        self.definitions: dict[str, str] = dict(definitions or {})
        self._owner: dict[str, str] = {}
        for emotion, terms in self._entries.items():
            for term in terms:
                self._owner.setdefault(term, emotion)

    @property
    def entries(self) -> dict[str, frozenset[str]]:
        return dict(self._entries)

    def terms(self, emotion: str) -> frozenset[str]:
        return self._entries.get(emotion, frozenset())

    def owner_of(self, term: str) -> str | None:
        return self._owner.get(normalize_phrase(term))

    def all_terms(self) -> frozenset[str]:
        return frozenset(self._owner)

    def exclusivity_violations(self) -> list[tuple[str, list[str]]]:
        """Terms owned by more than one emotion, with their owners."""
        owners: dict[str, list[str]] = {}
        for emotion, terms in self._entries.items():
            for term in terms:
                owners.setdefault(term, []).append(emotion)
        return [(t, es) for t, es in sorted(owners.items()) if len(es) > 1]

    def __eq__(self, other) -> bool:
        if not isinstance(other, RefinedVocabulary):
            return NotImplemented
        mine = {k: v for k, v in self._entries.items() if v}
        theirs = {k: v for k, v in other._entries.items() if v}
        return mine == theirs and self.definitions == other.definitions


def build_pseudo_vocabulary(
    hierarchy: EmotionHierarchy, source
) -> PseudoVocabulary:
    """Collect raw synonyms for every emotion of the hierarchy.

    Terms are normalized (lowercase, collapsed whitespace) and de-duplicated
    within one emotion; duplicates across emotions are kept on purpose.
    Emotions the source cannot resolve get an empty list plus a warning.
    """
    entries: dict[str, list[str]] = {}
    warnings: list[str] = []
    for name in hierarchy.names:
        raw = source.synonyms_of(name)
        seen: set[str] = set()
        terms: list[str] = []
        for item in raw:
            term = normalize_phrase(item)
            if term and term not in seen:
                seen.add(term)
                terms.append(term)
        if not terms:
            warnings.append(f"no synonyms for {name!r}")
        entries[name] = terms
    return PseudoVocabulary(entries, warnings)


def find_overlaps(pv: PseudoVocabulary) -> list[OverlapRecord]:
    """All terms appearing under two or more emotions, sorted by term.

    A term equal to some emotion's canonical name counts as overlapping
    with that emotion even if it is not in its list; this is what lets
    antonym resolution treat emotion names as first-class matches.
    """
    order = {emotion: i for i, emotion in enumerate(pv.entries)}
    name_owner = {normalize_phrase(emotion): emotion for emotion in pv.entries}
    candidates: dict[str, list[str]] = {}
    for emotion, terms in pv.entries.items():
        for term in terms:
            candidates.setdefault(term, []).append(emotion)
    records = []
    for term in sorted(candidates):
        found = candidates[term]
        named = name_owner.get(term)
        if named is not None and named not in found:
            found = sorted(found + [named], key=order.__getitem__)
        if len(found) >= 2:
            records.append(OverlapRecord(term, tuple(found)))
    return records


def score_overlaps(
    records: Sequence[OverlapRecord], provider
) -> list[OverlapRecord]:
    """Attach similarity scores and an argmax suggestion to each record.

    Ties keep the first candidate (candidates are already in document
    order) and are flagged on the record.
    """
    scored = []
    for record in records:
        scores = {
            candidate: pair_score(provider, record.term, candidate)
            for candidate in record.candidates
        }
        best = max(scores.values())
        winners = [c for c in record.candidates if scores[c] == best]
        scored.append(
            replace(
                record,
                scores=scores,
                suggested=winners[0],
                tie=len(winners) > 1,
            )
        )
    return scored


def majority_vote(
    decisions_by_verifier: Sequence[Sequence[AnnotationDecision]],
) -> list[AnnotationDecision]:
    """Resolve three verifiers' decisions by 2-of-3 majority.

    Raises UnresolvedTermError listing every term on which all three
    verifiers disagree.
    """
    if len(decisions_by_verifier) != 3:
        raise DecisionError(
            f"majority vote needs exactly 3 verifier lists, "
            f"got {len(decisions_by_verifier)}"
        )
    tables: list[dict[str, str]] = []
    for verdicts in decisions_by_verifier:
        table: dict[str, str] = {}
        for decision in verdicts:
            term = normalize_phrase(decision.term)
            if term in table:
                raise DecisionError(f"verifier decided {term!r} twice")
            table[term] = decision.assigned_to
        tables.append(table)
    term_sets = [set(t) for t in tables]
    if not term_sets[0] == term_sets[1] == term_sets[2]:
        missing = sorted(set.union(*term_sets) - set.intersection(*term_sets))
        raise DecisionError(f"verifiers did not all decide: {missing}")

    unresolved = []
    result = []
    for term in sorted(term_sets[0]):
        votes = [table[term] for table in tables]
        winner = next((v for v in votes if votes.count(v) >= 2), None)
        if winner is None:
            unresolved.append(term)
        else:
            result.append(AnnotationDecision(term, winner, "majority"))
    if unresolved:
        raise UnresolvedTermError(
            f"no majority for term(s): {', '.join(unresolved)}"
        )
    return result


def apply_decisions(
    pv: PseudoVocabulary,
    decisions: Sequence[AnnotationDecision],
    definitions: Mapping[str, str] | None = None,
) -> RefinedVocabulary:
    """Resolve every overlap per the decisions and build the final vocabulary.

    Every overlapping term must be decided exactly once, onto one of its
    candidates. A term equal to an emotion's canonical name must be assigned
    to that emotion, which removes it from the word lists entirely (the name
    already stands for it); this keeps re-running overlap detection on the
    result a fixpoint. No term survives under its own emotion's name.
    """
    records = {record.term: record for record in find_overlaps(pv)}
    name_owner = {normalize_phrase(e): e for e in pv.entries}

    decided: dict[str, str] = {}
    for decision in decisions:
        term = normalize_phrase(decision.term)
        if term in decided:
            raise DecisionError(f"duplicate decision for {term!r}")
        record = records.get(term)
        if record is None:
            raise StaleDecisionError(f"{term!r} is not an overlapping term")
        if decision.assigned_to not in pv.entries:
            raise StaleDecisionError(
                f"{term!r} assigned to unknown emotion {decision.assigned_to!r}"
            )
        if decision.assigned_to not in record.candidates:
            raise StaleDecisionError(
                f"{term!r} assigned to {decision.assigned_to!r}, which is not "
                f"among its candidates {record.candidates}"
            )
        named = name_owner.get(term)
        if named is not None and decision.assigned_to != named:
            raise DecisionError(
                f"{term!r} is the canonical name of {named!r} and cannot be "
                f"kept as a word of {decision.assigned_to!r}"
            )
        decided[term] = decision.assigned_to

    undecided = sorted(set(records) - set(decided))
    if undecided:
        raise IncompleteDecisionError(
            f"no decision for overlapping term(s): {', '.join(undecided)}"
        )

    entries: dict[str, list[str]] = {}
    for emotion, terms in pv.entries.items():
        own_name = normalize_phrase(emotion)
        kept = []
        for term in terms:
            if term == own_name or term in name_owner:
                continue
            if term in decided and decided[term] != emotion:
                continue
            kept.append(term)
        entries[emotion] = kept

    defs: dict[str, str] = {}
    if definitions:
        lookup = {e.lower(): e for e in pv.entries}
        for key, value in definitions.items():
            canonical = lookup.get(key.lower())
            if canonical is not None and value:
                defs[canonical] = value

    refined = RefinedVocabulary(entries, defs)
    conflicts = refined.exclusivity_violations()
    if conflicts:
        raise EmontoError(f"exclusivity broken after decisions: {conflicts}")
    return refined


def merged_vocabulary(
    hierarchy: EmotionHierarchy, rv: RefinedVocabulary, emotion: str
) -> frozenset[str]:
    """An emotion's vocabulary united with all of its descendants'.

    The canonical names of the emotion and its descendants (lowercased)
    are part of the merge, so every emotion matches at least itself.
    """
    canonical = hierarchy.node(emotion).name
    members = [canonical] + hierarchy.descendants(canonical)
    merged: set[str] = {normalize_phrase(name) for name in members}
    for name in members:
        merged.update(rv.terms(name))
    return frozenset(merged)


def load_decisions(path: str | Path) -> list[AnnotationDecision]:
    """Load a decision file: `term<TAB>emotion<TAB>decider` records."""
    decisions = []
    for lineno, line in enumerate(
        Path(path).read_text(encoding="utf-8").splitlines(), start=1
    ):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise LoadError(f"line {lineno}: expected `term<TAB>emotion<TAB>decider`")
        decisions.append(AnnotationDecision(*(p.strip() for p in parts)))
    return decisions


def write_overlap_worksheet(records: Sequence[OverlapRecord], fp) -> None:
    """Write the annotator worksheet CSV: term,candidates,scores,suggested."""
    writer = csv.writer(fp, lineterminator="\n")
    writer.writerow(["term", "candidates", "scores", "suggested"])
    for record in records:
        scores = ""
        if record.scores is not None:
            scores = ";".join(
                f"{record.scores[c]:g}" for c in record.candidates
            )
        writer.writerow(
            [
                record.term,
                ";".join(record.candidates),
                scores,
                record.suggested or "",
            ]
        )
