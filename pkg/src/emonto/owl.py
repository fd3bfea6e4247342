"""OWL 2 XML serialization of the full ontology, and its inverse.

Only the constructs the ontology actually uses are supported: class
Declarations, SubClassOf, DisjointClasses, definition and rdfs:label
AnnotationAssertions, and EquivalentClasses blocks for the three dependency
relations. Output is in a fixed canonical form (4-space indentation, LF
line endings, stable attribute order) so that serialization is
deterministic and re-serialization of a parsed document is byte-identical.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from xml.sax.saxutils import escape

from .dependencies import CompositionEdge, OppositeEdge, PlusLeadsToTriple
from .errors import OwlParseError, OwlReferenceError, OwlTierError, SerializationError
from .hierarchy import EmotionHierarchy, EmotionNode, Tier
from .text import normalize_phrase
from .vocabulary import RefinedVocabulary

OWL_NAMESPACE = "http://www.w3.org/2002/07/owl#"
XSD_PREFIX = "http://www.w3.org/2001/XMLSchema#"
RDFS_PREFIX = "http://www.w3.org/2000/01/rdf-schema#"
DEFAULT_IRI_PREFIX = "http://www.semanticweb.org/ontologies/emotions"

_HEADER = (
    '<?xml version="1.0"?>\n'
    "<!DOCTYPE Ontology [\n"
    f'    <!ENTITY xsd "{XSD_PREFIX}">\n'
    f'    <!ENTITY rdfs "{RDFS_PREFIX}">\n'
    "]>\n"
)

# Elements of foreign documents we read over without complaint.
_IGNORED_TOP_LEVEL = {"Prefix"}
_IGNORED_DECLARATIONS = {"ObjectProperty", "AnnotationProperty", "Datatype", "NamedIndividual"}


@dataclass
class Ontology:
    """Hierarchy + vocabulary + dependencies: the unit serialized to OWL.

    `disjoint_pairs` is materialized at assembly (by default one unordered
    pair per primary-to-primary opposite edge) and stored so a parsed
    document keeps exactly the pairs it declared.
    """

    hierarchy: EmotionHierarchy
    vocabulary: RefinedVocabulary
    opposites: list[OppositeEdge]
    compositions: list[CompositionEdge]
    triples: list[PlusLeadsToTriple]
    disjoint_pairs: list[tuple[str, str]] = field(default_factory=list)
    iri_prefix: str = DEFAULT_IRI_PREFIX

    @classmethod
    def assemble(
        cls,
        hierarchy: EmotionHierarchy,
        vocabulary: RefinedVocabulary,
        opposites: list[OppositeEdge],
        compositions: list[CompositionEdge],
        triples: list[PlusLeadsToTriple],
        iri_prefix: str = DEFAULT_IRI_PREFIX,
        disjoint_mode: str = "opposites",
    ) -> "Ontology":
        pairs = derive_disjoint_pairs(hierarchy, opposites, disjoint_mode)
        return cls(
            hierarchy, vocabulary, opposites, compositions, triples,
            pairs, iri_prefix,
        )


def derive_disjoint_pairs(
    hierarchy: EmotionHierarchy,
    opposites: list[OppositeEdge],
    mode: str = "opposites",
) -> list[tuple[str, str]]:
    """Unordered primary-level disjointness pairs.

    mode "opposites": one pair per primary-to-primary opposite edge;
    mode "all-primaries": every pair of primary emotions.
    """
    if mode == "all-primaries":
        primaries = hierarchy.primaries
        return [
            (primaries[i], primaries[j])
            for i in range(len(primaries))
            for j in range(i + 1, len(primaries))
        ]
    if mode != "opposites":
        raise ValueError(f"unknown disjoint mode {mode!r}")
    pairs = []
    seen = set()
    for edge in opposites:
        if edge.source not in hierarchy or edge.target not in hierarchy:
            continue
        if (
            hierarchy.tier_of(edge.source) is Tier.PRIMARY
            and hierarchy.tier_of(edge.target) is Tier.PRIMARY
        ):
            key = frozenset((edge.source.lower(), edge.target.lower()))
            if key not in seen:
                seen.add(key)
                pairs.append((edge.source, edge.target))
    return pairs


def iri_local(name: str) -> str:
    """PascalCase IRI fragment for an emotion name ("Ill Temper" -> "IllTemper")."""
    return "".join(part[:1].upper() + part[1:] for part in name.split())


def serialize(ontology: Ontology) -> str:
    """Render the ontology in canonical OWL 2 XML form."""
    h = ontology.hierarchy
    for edge in ontology.opposites:
        _require(h, edge.source, "isOppositeOf")
        _require(h, edge.target, "isOppositeOf")
    for edge in ontology.compositions:
        _require(h, edge.parent, "isComposedOf")
        _require(h, edge.child, "isComposedOf")
    for triple in ontology.triples:
        _require(h, triple.base, "plus-LeadsTo")
        _require(h, triple.addend, "plus-LeadsTo")
        _require(h, triple.result, "plus-LeadsTo")
    for a, b in ontology.disjoint_pairs:
        _require(h, a, "DisjointClasses")
        _require(h, b, "DisjointClasses")

    out: list[str] = [_HEADER]
    prefix = escape(ontology.iri_prefix, {'"': "&quot;"})
    out.append(
        f'<Ontology xmlns="{OWL_NAMESPACE}" ontologyIRI="{prefix}">\n'
    )

    for name in h.names:
        out.append("    <Declaration>\n")
        out.append(f'        <Class IRI="#{iri_local(name)}"/>\n')
        out.append("    </Declaration>\n")

    for child, parent in h.parent_links:
        out.append("    <SubClassOf>\n")
        out.append(f'        <Class IRI="#{iri_local(child)}"/>\n')
        out.append(f'        <Class IRI="#{iri_local(parent)}"/>\n')
        out.append("    </SubClassOf>\n")

    for a, b in ontology.disjoint_pairs:
        out.append("    <DisjointClasses>\n")
        out.append(f'        <Class IRI="#{iri_local(a)}"/>\n')
        out.append(f'        <Class IRI="#{iri_local(b)}"/>\n')
        out.append("    </DisjointClasses>\n")

    definitions = ontology.vocabulary.definitions
    for name in h.names:
        definition = definitions.get(name)
        if definition is None:
            continue
        out.append("    <AnnotationAssertion>\n")
        out.append('        <AnnotationProperty IRI="#definition"/>\n')
        out.append(f"        <IRI>#{iri_local(name)}</IRI>\n")
        out.append(
            f'        <Literal datatypeIRI="&xsd;string">'
            f"{escape(definition)}</Literal>\n"
        )
        out.append("    </AnnotationAssertion>\n")

    for name in h.names:
        for term in sorted(ontology.vocabulary.terms(name)):
            out.append("    <AnnotationAssertion>\n")
            out.append('        <AnnotationProperty abbreviatedIRI="rdfs:label"/>\n')
            out.append(f"        <IRI>#{iri_local(name)}</IRI>\n")
            out.append(
                f'        <Literal datatypeIRI="&rdfs;Literal">'
                f"{escape(term)}</Literal>\n"
            )
            out.append("    </AnnotationAssertion>\n")

    for edge in ontology.compositions:
        out.extend(
            _some_values_block("isComposedOf", outer=edge.parent, inner=edge.child)
        )
    for edge in ontology.opposites:
        out.extend(
            _some_values_block("isOppositeOf", outer=edge.target, inner=edge.source)
        )
    for triple in ontology.triples:
        out.extend(_cardinality_block("Plus", outer=triple.addend, inner=triple.base))
        out.extend(
            _cardinality_block("LeadsTo", outer=triple.result, inner=triple.addend)
        )

    out.append("</Ontology>\n")
    return "".join(out)


def _require(hierarchy: EmotionHierarchy, name: str, where: str) -> None:
    if name not in hierarchy:
        raise SerializationError(
            f"{where} references unknown emotion {name!r}"
        )


def _some_values_block(prop: str, outer: str, inner: str) -> list[str]:
    return [
        "    <EquivalentClasses>\n",
        f'        <Class IRI="#{iri_local(outer)}"/>\n',
        "        <ObjectSomeValuesFrom>\n",
        f'            <ObjectProperty IRI="#{prop}"/>\n',
        f'            <Class IRI="#{iri_local(inner)}"/>\n',
        "        </ObjectSomeValuesFrom>\n",
        "    </EquivalentClasses>\n",
    ]


def _cardinality_block(prop: str, outer: str, inner: str) -> list[str]:
    return [
        "    <EquivalentClasses>\n",
        f'        <Class IRI="#{iri_local(outer)}"/>\n',
        '        <ObjectExactCardinality cardinality="1">\n',
        f'            <ObjectProperty IRI="#{prop}"/>\n',
        f'            <Class IRI="#{iri_local(inner)}"/>\n',
        "        </ObjectExactCardinality>\n",
        "    </EquivalentClasses>\n",
    ]


def _local_tag(element: ET.Element) -> str:
    tag = element.tag
    return tag.rsplit("}", 1)[-1] if "}" in tag else tag


def _iri_name(iri: str) -> str:
    return iri.rsplit("#", 1)[-1] if "#" in iri else iri


def _class_name(element: ET.Element) -> str:
    iri = element.get("IRI")
    if iri is None:
        raise OwlParseError(f"<{_local_tag(element)}> without IRI attribute")
    return _iri_name(iri)


class _DocumentReader:
    """Accumulates the raw facts of one OWL document before assembly."""

    def __init__(self):
        self.declared: list[str] = []
        self.subclass_pairs: list[tuple[str, str]] = []
        self.disjoint_pairs: list[tuple[str, str]] = []
        self.definitions: dict[str, str] = {}
        self.labels: dict[str, list[str]] = {}
        self.compositions: list[CompositionEdge] = []
        self.opposites: list[OppositeEdge] = []
        self.plus_pairs: list[tuple[str, str]] = []  # (base, addend)
        self.leads_pairs: list[tuple[str, str]] = []  # (result, addend)

    def read(self, root: ET.Element) -> None:
        for element in root:
            tag = _local_tag(element)
            if tag in _IGNORED_TOP_LEVEL:
                continue
            handler = getattr(self, f"_read_{tag.lower()}", None)
            if handler is None:
                raise OwlParseError(f"unsupported element <{tag}>")
            handler(element)

    def _read_declaration(self, element: ET.Element) -> None:
        for child in element:
            tag = _local_tag(child)
            if tag == "Class":
                name = _class_name(child)
                if name not in self.declared:
                    self.declared.append(name)
            elif tag not in _IGNORED_DECLARATIONS:
                raise OwlParseError(f"unsupported declaration of <{tag}>")

    def _read_subclassof(self, element: ET.Element) -> None:
        classes = [c for c in element if _local_tag(c) == "Class"]
        if len(classes) != 2:
            raise OwlParseError("<SubClassOf> needs exactly two <Class> children")
        self.subclass_pairs.append(
            (_class_name(classes[0]), _class_name(classes[1]))
        )

    def _read_disjointclasses(self, element: ET.Element) -> None:
        names = [_class_name(c) for c in element if _local_tag(c) == "Class"]
        if len(names) < 2:
            raise OwlParseError("<DisjointClasses> needs at least two classes")
        for i in range(len(names)):
            for j in range(i + 1, len(names)):
                self.disjoint_pairs.append((names[i], names[j]))

    def _read_annotationassertion(self, element: ET.Element) -> None:
        children = list(element)
        if len(children) != 3:
            raise OwlParseError("<AnnotationAssertion> needs three children")
        prop, subject, literal = children
        if _local_tag(prop) != "AnnotationProperty" or _local_tag(subject) != "IRI":
            raise OwlParseError("malformed <AnnotationAssertion>")
        name = _iri_name((subject.text or "").strip())
        text = literal.text or ""
        if prop.get("IRI") == "#definition":
            self.definitions[name] = text
        elif prop.get("abbreviatedIRI") == "rdfs:label":
            term = normalize_phrase(text)
            if term:
                self.labels.setdefault(name, []).append(term)
        # other annotation properties (comments etc.) are ignored

    def _read_equivalentclasses(self, element: ET.Element) -> None:
        children = list(element)
        if len(children) != 2 or _local_tag(children[0]) != "Class":
            raise OwlParseError("unsupported <EquivalentClasses> shape")
        outer = _class_name(children[0])
        restriction = children[1]
        shape = _local_tag(restriction)
        parts = list(restriction)
        if (
            len(parts) != 2
            or _local_tag(parts[0]) != "ObjectProperty"
            or _local_tag(parts[1]) != "Class"
        ):
            raise OwlParseError("unsupported restriction inside <EquivalentClasses>")
        prop = _iri_name(parts[0].get("IRI") or "")
        inner = _class_name(parts[1])
        if shape == "ObjectSomeValuesFrom" and prop == "isComposedOf":
            self.compositions.append(CompositionEdge(parent=outer, child=inner))
        elif shape == "ObjectSomeValuesFrom" and prop == "isOppositeOf":
            self.opposites.append(OppositeEdge(source=inner, target=outer))
        elif shape == "ObjectExactCardinality" and prop == "Plus":
            self.plus_pairs.append((inner, outer))
        elif shape == "ObjectExactCardinality" and prop == "LeadsTo":
            self.leads_pairs.append((outer, inner))
        else:
            raise OwlParseError(
                f"unsupported dependency {prop!r} in <{shape}>"
            )


def parse(document: str) -> Ontology:
    """Reconstruct an Ontology from its OWL 2 XML form.

    Tiers are inferred from SubClassOf depth below the roots. Classes that
    cannot be reached from any root (cyclic subclass chains) default to
    tertiary so that the consistency checker can still inspect the result.
    """
    try:
        root = ET.fromstring(document)
    except ET.ParseError as exc:
        line = exc.position[0] if exc.position else None
        raise OwlParseError(f"malformed XML: {exc.msg}", line=line) from exc

    reader = _DocumentReader()
    reader.read(root)

    declared = set(reader.declared)

    def check_declared(name: str, context: str) -> None:
        if name not in declared:
            raise OwlReferenceError(
                f"{context} references undeclared class {name!r}"
            )

    for child, parent in reader.subclass_pairs:
        check_declared(child, "SubClassOf")
        check_declared(parent, "SubClassOf")
    for a, b in reader.disjoint_pairs:
        check_declared(a, "DisjointClasses")
        check_declared(b, "DisjointClasses")
    for name in list(reader.definitions) + list(reader.labels):
        check_declared(name, "AnnotationAssertion")
    for edge in reader.compositions:
        check_declared(edge.parent, "EquivalentClasses")
        check_declared(edge.child, "EquivalentClasses")
    for edge in reader.opposites:
        check_declared(edge.source, "EquivalentClasses")
        check_declared(edge.target, "EquivalentClasses")
    for base, addend in reader.plus_pairs:
        check_declared(base, "EquivalentClasses")
        check_declared(addend, "EquivalentClasses")
    for result, addend in reader.leads_pairs:
        check_declared(result, "EquivalentClasses")
        check_declared(addend, "EquivalentClasses")

    first_parent: dict[str, str] = {}
    for child, parent in reader.subclass_pairs:
        first_parent.setdefault(child, parent)

    depths: dict[str, int | None] = {}

    def depth_of(name: str) -> int | None:
        if name in depths:
            return depths[name]
        chain = []
        current: str | None = name
        walking = set()
        while current is not None and current not in depths:
            if current in walking:
                for member in chain:
                    depths[member] = None
                break
            walking.add(current)
            chain.append(current)
            current = first_parent.get(current)
        else:
            base = -1 if current is None else depths[current]
            for offset, member in enumerate(reversed(chain), start=1):
                if base is None:
                    depths[member] = None
                else:
                    depths[member] = base + offset
        return depths[name]

    tiers = (Tier.PRIMARY, Tier.SECONDARY, Tier.TERTIARY)
    nodes = []
    for name in reader.declared:
        depth = depth_of(name)
        if depth is not None and depth >= len(tiers):
            raise OwlTierError(
                f"class {name!r} sits {depth + 1} levels deep; only three "
                f"tiers are supported"
            )
        tier = tiers[depth] if depth is not None else Tier.TERTIARY
        nodes.append(
            EmotionNode(
                name,
                tier,
                definition=reader.definitions.get(name, ""),
                parent=first_parent.get(name),
            )
        )

    hierarchy = EmotionHierarchy(nodes, parent_links=reader.subclass_pairs)

    entries: dict[str, list[str]] = {name: [] for name in reader.declared}
    for name, terms in reader.labels.items():
        entries[name] = terms
    vocabulary = RefinedVocabulary(entries, reader.definitions)

    pending = list(enumerate(reader.plus_pairs))
    triples_with_position: list[tuple[int, PlusLeadsToTriple]] = []
    for result, addend in reader.leads_pairs:
        match = next(
            (item for item in pending if item[1][1] == addend), None
        )
        if match is None:
            raise OwlParseError(
                f"LeadsTo({result}, {addend}) has no matching Plus block"
            )
        pending.remove(match)
        position, (base, _) = match
        triples_with_position.append(
            (position, PlusLeadsToTriple(base, addend, result))
        )
    if pending:
        base, addend = pending[0][1]
        raise OwlParseError(
            f"Plus({addend}, {base}) has no matching LeadsTo block"
        )
    triples = [t for _, t in sorted(triples_with_position, key=lambda x: x[0])]

    return Ontology(
        hierarchy,
        vocabulary,
        reader.opposites,
        reader.compositions,
        triples,
        reader.disjoint_pairs,
        iri_prefix=root.get("ontologyIRI", DEFAULT_IRI_PREFIX),
    )
