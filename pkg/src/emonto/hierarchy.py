"""The three-tier emotion hierarchy and its subsumption semantics.

The canonical data set follows Parrott's grouping of emotions: six primary
emotions, each refined into secondary and tertiary emotions, 144 nodes in
total. The hierarchy is immutable after construction and safe to share
across threads.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import LoadError, NotFoundError

CANONICAL_PRIMARIES = ("Anger", "Fear", "Joy", "Love", "Sadness", "Surprise")
CANONICAL_NODE_COUNT = 144

HIERARCHY_FILE = "hierarchy.tsv"


def data_path(name: str) -> Path:
    """Path of a bundled data file (requires a regular, non-zip install)."""
    return Path(str(resources.files("emonto").joinpath("data", name)))


class Tier(enum.Enum):
    PRIMARY = "primary"
    SECONDARY = "secondary"
    TERTIARY = "tertiary"

    @classmethod
    def parse(cls, text: str) -> "Tier":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise LoadError(f"unknown tier {text!r}") from None

    @property
    def depth(self) -> int:
        return ("primary", "secondary", "tertiary").index(self.value)


@dataclass(frozen=True)
class EmotionNode:
    """One emotion: canonical name, tier, optional definition and parent."""

    name: str
    tier: Tier
    definition: str = ""
    parent: str | None = None


class EmotionHierarchy:
    """An ordered forest of emotion nodes with case-insensitive lookup.

    Node order is the document order of the source data file; every
    list-returning accessor is deterministic. `parent_links` retains the raw
    (child, parent) pairs so consistency checking can see duplicate parents
    that the per-node `parent` field cannot represent.
    """

    def __init__(self, nodes, parent_links=None):
        self._nodes: dict[str, EmotionNode] = {}
        self._order: list[str] = []
        for node in nodes:
            key = node.name.lower()
            if key in self._nodes:
                raise LoadError(f"duplicate emotion name {node.name!r}")
            self._nodes[key] = node
            self._order.append(node.name)
        if parent_links is None:
            parent_links = [(n.name, n.parent) for n in self if n.parent]
        self.parent_links: list[tuple[str, str]] = list(parent_links)
        self._children: dict[str, list[str]] = {n.name.lower(): [] for n in self}
        for child, parent in self.parent_links:
            bucket = self._children.get(parent.lower())
            if bucket is not None and child not in bucket:
                bucket.append(child)
        self._index = {name.lower(): i for i, name in enumerate(self._order)}

    def __iter__(self):
        return (self._nodes[name.lower()] for name in self._order)

    def __len__(self) -> int:
        return len(self._order)

    def __contains__(self, name: str) -> bool:
        return name.lower() in self._nodes

    def __eq__(self, other) -> bool:
        if not isinstance(other, EmotionHierarchy):
            return NotImplemented
        return self._shape() == other._shape()

    def _shape(self):
        return [(n.name, n.tier.value, n.parent) for n in self]

    @property
    def names(self) -> tuple[str, ...]:
        """All canonical names in document order."""
        return tuple(self._order)

    @property
    def primaries(self) -> tuple[str, ...]:
        return tuple(n.name for n in self if n.tier is Tier.PRIMARY)

    @property
    def roots(self) -> tuple[str, ...]:
        return tuple(n.name for n in self if n.parent is None)

    def node(self, name: str) -> EmotionNode:
        try:
            return self._nodes[name.lower()]
        except KeyError:
            raise NotFoundError(f"unknown emotion {name!r}") from None

    def doc_index(self, name: str) -> int:
        """Position of an emotion in document order; used for tie-breaking."""
        try:
            return self._index[name.lower()]
        except KeyError:
            raise NotFoundError(f"unknown emotion {name!r}") from None

    def tier_of(self, name: str) -> Tier:
        return self.node(name).tier

    def parent_of(self, name: str) -> str | None:
        return self.node(name).parent

    def children(self, name: str) -> list[str]:
        self.node(name)
        return list(self._children[name.lower()])

    def ancestors(self, name: str) -> list[str]:
        """Strict ancestors from parent up to the root; cycle-safe."""
        out: list[str] = []
        seen = {name.lower()}
        current = self.node(name).parent
        while current is not None and current.lower() not in seen:
            out.append(self.node(current).name)
            seen.add(current.lower())
            current = self.node(current).parent
        return out

    def root_of(self, name: str) -> str:
        """The top-level emotion above `name` (itself, for a root)."""
        chain = self.ancestors(name)
        return chain[-1] if chain else self.node(name).name

    def is_a(self, a: str, b: str, strict: bool = False) -> bool:
        """Subsumption: a is-a b iff b is a (reflexive) ancestor of a.

        With strict=True the reflexive case is excluded.
        """
        node_a = self.node(a)
        node_b = self.node(b)
        if node_a.name == node_b.name:
            return not strict
        return node_b.name in self.ancestors(node_a.name)

    def descendants(self, name: str) -> list[str]:
        """All strict descendants in deterministic pre-order."""
        self.node(name)
        out: list[str] = []
        seen = {name.lower()}
        stack = list(reversed(self._children[name.lower()]))
        while stack:
            current = stack.pop()
            if current.lower() in seen:
                continue
            seen.add(current.lower())
            out.append(self.node(current).name)
            stack.extend(reversed(self._children[current.lower()]))
        return out


def _parse_record(line: str, lineno: int) -> tuple[str, str, str, str]:
    parts = line.split("\t", 3)
    if len(parts) != 4:
        raise LoadError(f"line {lineno}: expected 4 tab-separated fields")
    return tuple(part.strip() for part in parts)  # type: ignore[return-value]


def load_hierarchy(path: str | Path) -> EmotionHierarchy:
    """Load a hierarchy file: `tier<TAB>name<TAB>parent-or-"-"<TAB>definition`.

    '#' lines are comments. Validates the tier/parent rules (primary nodes
    have no parent, each other node's parent sits exactly one tier up) and
    raises LoadError naming the offending node.
    """
    records = []
    text = Path(path).read_text(encoding="utf-8")
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        tier_text, name, parent, definition = _parse_record(line, lineno)
        if not name:
            raise LoadError(f"line {lineno}: empty emotion name")
        records.append((Tier.parse(tier_text), name, parent, definition))

    by_name = {name.lower(): (tier, name) for tier, name, _, _ in records}
    nodes = []
    for tier, name, parent, definition in records:
        if tier is Tier.PRIMARY:
            if parent != "-":
                raise LoadError(f"primary emotion {name!r} must not have a parent")
            parent_name = None
        else:
            if parent == "-":
                raise LoadError(f"{tier.value} emotion {name!r} needs a parent")
            entry = by_name.get(parent.lower())
            if entry is None:
                raise LoadError(f"{name!r} refers to unknown parent {parent!r}")
            parent_tier, parent_name = entry
            if parent_tier.depth != tier.depth - 1:
                raise LoadError(
                    f"{name!r} ({tier.value}) cannot have {parent_name!r} "
                    f"({parent_tier.value}) as parent"
                )
        nodes.append(EmotionNode(name, tier, definition, parent_name))
    return EmotionHierarchy(nodes)


def load_canonical() -> EmotionHierarchy:
    """Load the bundled canonical hierarchy and check its global shape."""
    hierarchy = load_hierarchy(data_path(HIERARCHY_FILE))
    if hierarchy.primaries != CANONICAL_PRIMARIES:
        raise LoadError(
            f"canonical data must have the six primary emotions "
            f"{CANONICAL_PRIMARIES}, got {hierarchy.primaries}"
        )
    if len(hierarchy) != CANONICAL_NODE_COUNT:
        raise LoadError(
            f"canonical data must have {CANONICAL_NODE_COUNT} emotions, "
            f"got {len(hierarchy)}"
        )
    return hierarchy
