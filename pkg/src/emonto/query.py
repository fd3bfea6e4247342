"""Closed-form queries over the ontology's relations, plus consistency rules.

The ontology is a tree with three materialized relations, so the queries a
description-logic reasoner would answer here are evaluated directly over
the edge lists. Consistency is a fixed rule set R1-R7 covering the shape of
the hierarchy, vocabulary exclusivity, and dependency well-formedness.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import NotFoundError, QuerySyntaxError
from .hierarchy import Tier
from .owl import Ontology


@dataclass
class QueryResult:
    emotions: list[str]
    query_echo: str


@dataclass(frozen=True)
class Violation:
    rule: str
    names: tuple[str, ...]
    message: str


@dataclass
class ConsistencyReport:
    violations: list[Violation]

    @property
    def ok(self) -> bool:
        return not self.violations


def query_opposites(ontology: Ontology, emotion: str) -> QueryResult:
    """All emotions opposite to `emotion` under the symmetric closure."""
    name = ontology.hierarchy.node(emotion).name
    found = set()
    for edge in ontology.opposites:
        if edge.source == name:
            found.add(edge.target)
        elif edge.target == name:
            found.add(edge.source)
    ordered = sorted(found, key=ontology.hierarchy.doc_index)
    return QueryResult(ordered, f"opposite({name})")


def query_components(
    ontology: Ontology, emotion: str, transitive: bool = False
) -> QueryResult:
    """Direct composition children, or the full subtree when transitive."""
    name = ontology.hierarchy.node(emotion).name
    if transitive:
        return QueryResult(
            ontology.hierarchy.descendants(name),
            f"components({name}, transitive)",
        )
    children = [e.child for e in ontology.compositions if e.parent == name]
    return QueryResult(children, f"components({name})")


def query_leads_to(ontology: Ontology, base: str, addend: str) -> QueryResult:
    """Results of combining `base` with `addend` (at most one by build)."""
    base_name = ontology.hierarchy.node(base).name
    addend_name = ontology.hierarchy.node(addend).name
    results = [
        t.result
        for t in ontology.triples
        if t.base == base_name and t.addend == addend_name
    ]
    return QueryResult(results, f"leadsTo({base_name} + {addend_name})")


_OPPOSITE_RE = re.compile(r"^opposite\s*\(\s*([^(),+]+?)\s*\)$", re.IGNORECASE)
_COMPONENTS_RE = re.compile(
    r"^components\s*\(\s*([^(),+]+?)\s*(?:,\s*(transitive)\s*)?\)$", re.IGNORECASE
)
_LEADS_TO_RE = re.compile(
    r"^leadsto\s*\(\s*([^(),+]+?)\s*\+\s*([^(),+]+?)\s*\)$", re.IGNORECASE
)


def run_query(ontology: Ontology, text: str) -> QueryResult:
    """Evaluate a textual query.

    Supported forms: `opposite(<Emotion>)`, `components(<Emotion>[, transitive])`
    and `leadsTo(<Emotion> + <Emotion>)`; names are case-insensitive.
    """
    query = text.strip()
    match = _OPPOSITE_RE.match(query)
    if match:
        return query_opposites(ontology, match.group(1))
    match = _COMPONENTS_RE.match(query)
    if match:
        return query_components(
            ontology, match.group(1), transitive=match.group(2) is not None
        )
    match = _LEADS_TO_RE.match(query)
    if match:
        return query_leads_to(ontology, match.group(1), match.group(2))
    raise QuerySyntaxError(
        f"cannot parse query {text!r}; expected opposite(E), "
        f"components(E[, transitive]) or leadsTo(E1 + E2)"
    )


def check_consistency(ontology: Ontology) -> ConsistencyReport:
    """Evaluate the structural rule set; violations are reported, not raised.

    R1 acyclic is-a; R2 exactly one parent per non-primary emotion;
    R3 exactly six primary emotions; R4 vocabulary mutual exclusivity;
    R5 dependency endpoints exist; R6 no disjoint pair in an is-a relation;
    R7 every leads-to result is primary.
    """
    h = ontology.hierarchy
    violations: list[Violation] = []

    seen_cycles: set[frozenset[str]] = set()
    for node in h:
        chain: list[str] = []
        current: str | None = node.name
        while current is not None and current in h:
            if current in chain:
                cycle = tuple(chain[chain.index(current):])
                key = frozenset(n.lower() for n in cycle)
                if key not in seen_cycles:
                    seen_cycles.add(key)
                    violations.append(
                        Violation(
                            "R1",
                            cycle,
                            "is-a cycle: " + " -> ".join(cycle + (cycle[0],)),
                        )
                    )
                break
            chain.append(current)
            current = h.node(current).parent

    link_counts: dict[str, int] = {}
    for child, _ in h.parent_links:
        link_counts[child.lower()] = link_counts.get(child.lower(), 0) + 1
    for node in h:
        count = link_counts.get(node.name.lower(), 0)
        if node.tier is not Tier.PRIMARY and count != 1:
            violations.append(
                Violation(
                    "R2",
                    (node.name,),
                    f"{node.name} is {node.tier.value} but has {count} parents",
                )
            )

    primaries = h.primaries
    if len(primaries) != 6:
        violations.append(
            Violation(
                "R3",
                primaries,
                f"expected exactly 6 primary emotions, found {len(primaries)}",
            )
        )

    for term, owners in ontology.vocabulary.exclusivity_violations():
        violations.append(
            Violation(
                "R4",
                tuple(owners),
                f"term {term!r} appears under {', '.join(owners)}",
            )
        )

    def endpoint(name: str, relation: str) -> bool:
        if name in h:
            return True
        violations.append(
            Violation(
                "R5", (name,), f"{relation} references unknown emotion {name!r}"
            )
        )
        return False

    for edge in ontology.opposites:
        endpoint(edge.source, "isOppositeOf")
        endpoint(edge.target, "isOppositeOf")
    for edge in ontology.compositions:
        endpoint(edge.parent, "isComposedOf")
        endpoint(edge.child, "isComposedOf")
    for triple in ontology.triples:
        endpoint(triple.base, "plus-LeadsTo")
        endpoint(triple.addend, "plus-LeadsTo")
        exists = endpoint(triple.result, "plus-LeadsTo")
        if exists and h.tier_of(triple.result) is not Tier.PRIMARY:
            violations.append(
                Violation(
                    "R7",
                    (triple.base, triple.addend, triple.result),
                    f"leads-to result {triple.result!r} is not a primary emotion",
                )
            )

    for a, b in ontology.disjoint_pairs:
        if a not in h or b not in h:
            continue  # already an R5 case for opposites-derived pairs
        if _safe_is_a(h, a, b) or _safe_is_a(h, b, a):
            violations.append(
                Violation(
                    "R6",
                    (a, b),
                    f"disjoint classes {a!r} and {b!r} are in an is-a relation",
                )
            )

    return ConsistencyReport(violations)


def _safe_is_a(hierarchy, a: str, b: str) -> bool:
    try:
        return hierarchy.is_a(a, b)
    except NotFoundError:
        return False
