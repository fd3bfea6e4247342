from __future__ import annotations

import xml.etree.ElementTree as ET

import pytest

from emonto.dependencies import CompositionEdge, OppositeEdge, PlusLeadsToTriple
from emonto.errors import (
    OwlParseError,
    OwlReferenceError,
    OwlTierError,
    SerializationError,
)
from emonto.hierarchy import Tier
from emonto.owl import Ontology, derive_disjoint_pairs, parse, serialize
from emonto.vocabulary import RefinedVocabulary

from .conftest import make_hierarchy

ENTITY_HEADER = (
    "<!DOCTYPE wrapper [\n"
    '    <!ENTITY xsd "http://www.w3.org/2001/XMLSchema#">\n'
    '    <!ENTITY rdfs "http://www.w3.org/2000/01/rdf-schema#">\n'
    "]>\n"
)


def _local(tag):
    return tag.rsplit("}", 1)[-1] if "}" in tag else tag


def _norm_text(text):
    return " ".join((text or "").split())


def _element_equal(a, b):
    if _local(a.tag) != _local(b.tag) or a.attrib != b.attrib:
        return False
    if _norm_text(a.text) != _norm_text(b.text):
        return False
    if len(a) != len(b):
        return False
    return all(_element_equal(x, y) for x, y in zip(a, b))


def assert_document_contains(document: str, fragment: str):
    """The document must contain the fragment element, whitespace aside."""
    root = ET.fromstring(document)
    wanted = ET.fromstring(f"{ENTITY_HEADER}<wrapper>{fragment}</wrapper>")[0]
    assert any(
        _element_equal(element, wanted) for element in root.iter()
    ), f"fragment not found:\n{fragment}"


def tiny_ontology():
    hierarchy = make_hierarchy(
        [
            ("primary", "Fear", None),
            ("secondary", "Nervousness", "Fear"),
            ("tertiary", "Uneasiness", "Nervousness"),
            ("primary", "Joy", None),
            ("secondary", "Cheerfulness", "Joy"),
        ]
    )
    vocabulary = RefinedVocabulary(
        {
            "Nervousness": ["touchiness", "willies"],
            "Cheerfulness": ["cheerful"],
        },
        {"Nervousness": "the quality or state of being nervous"},
    )
    return Ontology.assemble(
        hierarchy,
        vocabulary,
        [OppositeEdge("Joy", "Fear")],
        [
            CompositionEdge("Fear", "Nervousness"),
            CompositionEdge("Nervousness", "Uneasiness"),
            CompositionEdge("Joy", "Cheerfulness"),
        ],
        [PlusLeadsToTriple("Fear", "Cheerfulness", "Joy")],
    )


class TestGoldenFragments:
    """The serialized canonical ontology carries the published block shapes."""

    def test_class_declarations(self, owl_doc):
        assert_document_contains(
            owl_doc, '<Declaration>\n    <Class IRI="#Fear"/>\n</Declaration>'
        )
        assert_document_contains(
            owl_doc, '<Declaration>\n    <Class IRI="#Nervousness"/>\n</Declaration>'
        )

    def test_subclass_blocks(self, owl_doc):
        assert_document_contains(
            owl_doc,
            "<SubClassOf>\n"
            '    <Class IRI="#Nervousness"/>\n'
            '    <Class IRI="#Fear"/>\n'
            "</SubClassOf>",
        )
        assert_document_contains(
            owl_doc,
            "<SubClassOf>\n"
            '    <Class IRI="#Uneasiness"/>\n'
            '    <Class IRI="#Nervousness"/>\n'
            "</SubClassOf>",
        )

    def test_disjoint_classes_block(self, owl_doc):
        assert_document_contains(
            owl_doc,
            "<DisjointClasses>\n"
            '    <Class IRI="#Joy"/>\n'
            '    <Class IRI="#Sadness"/>\n'
            "</DisjointClasses>",
        )

    def test_definition_annotation(self, owl_doc):
        assert_document_contains(
            owl_doc,
            "<AnnotationAssertion>\n"
            '    <AnnotationProperty IRI="#definition"/>\n'
            "    <IRI>#Nervousness</IRI>\n"
            '    <Literal datatypeIRI="&xsd;string">the\n'
            "    quality or state of being nervous</Literal>\n"
            "</AnnotationAssertion>",
        )

    @pytest.mark.parametrize(
        "term", ["touchiness", "trembles", "tremulousness", "willies"]
    )
    def test_vocabulary_labels(self, owl_doc, term):
        assert_document_contains(
            owl_doc,
            "<AnnotationAssertion>\n"
            '    <AnnotationProperty abbreviatedIRI="rdfs:label"/>\n'
            "    <IRI>#Nervousness</IRI>\n"
            f'    <Literal datatypeIRI="&rdfs;Literal">{term}</Literal>\n'
            "</AnnotationAssertion>",
        )

    def test_plus_and_leads_to_blocks(self, owl_doc):
        assert_document_contains(
            owl_doc,
            "<EquivalentClasses>\n"
            '    <Class IRI="#Compassion"/>\n'
            '    <ObjectExactCardinality cardinality="1">\n'
            '        <ObjectProperty IRI="#Plus"/>\n'
            '        <Class IRI="#Anger"/>\n'
            "    </ObjectExactCardinality>\n"
            "</EquivalentClasses>",
        )
        assert_document_contains(
            owl_doc,
            "<EquivalentClasses>\n"
            '    <Class IRI="#Joy"/>\n'
            '    <ObjectExactCardinality cardinality="1">\n'
            '        <ObjectProperty IRI="#LeadsTo"/>\n'
            '        <Class IRI="#Compassion"/>\n'
            "    </ObjectExactCardinality>\n"
            "</EquivalentClasses>",
        )

    def test_is_composed_of_blocks(self, owl_doc):
        for child in ("Horror", "Nervousness"):
            assert_document_contains(
                owl_doc,
                "<EquivalentClasses>\n"
                '    <Class IRI="#Fear"/>\n'
                "    <ObjectSomeValuesFrom>\n"
                '        <ObjectProperty IRI="#isComposedOf"/>\n'
                f'        <Class IRI="#{child}"/>\n'
                "    </ObjectSomeValuesFrom>\n"
                "</EquivalentClasses>",
            )

    def test_is_opposite_of_block(self, owl_doc):
        assert_document_contains(
            owl_doc,
            "<EquivalentClasses>\n"
            '    <Class IRI="#Sadness"/>\n'
            "    <ObjectSomeValuesFrom>\n"
            '        <ObjectProperty IRI="#isOppositeOf"/>\n'
            '        <Class IRI="#Joy"/>\n'
            "    </ObjectSomeValuesFrom>\n"
            "</EquivalentClasses>",
        )

    def test_entity_attribute_form_is_literal(self, owl_doc):
        assert 'datatypeIRI="&xsd;string"' in owl_doc
        assert 'datatypeIRI="&rdfs;Literal"' in owl_doc


class TestRoundTrip:
    def test_canonical_round_trip_structural_equality(self, ontology, owl_doc):
        assert parse(owl_doc) == ontology

    def test_reserialization_is_byte_identical(self, owl_doc):
        assert serialize(parse(owl_doc)) == owl_doc

    def test_tiny_ontology_round_trip(self):
        ontology = tiny_ontology()
        assert parse(serialize(ontology)) == ontology

    def test_iri_prefix_round_trips(self):
        ontology = tiny_ontology()
        ontology.iri_prefix = "http://example.org/custom"
        assert parse(serialize(ontology)).iri_prefix == "http://example.org/custom"


class TestParse:
    def test_three_class_chain(self):
        document = """<Ontology xmlns="http://www.w3.org/2002/07/owl#">
            <Declaration><Class IRI="#Fear"/></Declaration>
            <Declaration><Class IRI="#Nervousness"/></Declaration>
            <Declaration><Class IRI="#Uneasiness"/></Declaration>
            <SubClassOf><Class IRI="#Nervousness"/><Class IRI="#Fear"/></SubClassOf>
            <SubClassOf><Class IRI="#Uneasiness"/><Class IRI="#Nervousness"/></SubClassOf>
        </Ontology>"""
        ontology = parse(document)
        h = ontology.hierarchy
        assert h.parent_of("Uneasiness") == "Nervousness"
        assert h.parent_of("Nervousness") == "Fear"
        assert h.tier_of("Fear") is Tier.PRIMARY
        assert h.tier_of("Nervousness") is Tier.SECONDARY
        assert h.tier_of("Uneasiness") is Tier.TERTIARY

    def test_malformed_xml_reports_line(self):
        with pytest.raises(OwlParseError) as excinfo:
            parse("<Ontology>\n<Declaration>\n")
        assert excinfo.value.line is not None

    def test_undeclared_subclass_reference(self):
        document = """<Ontology xmlns="http://www.w3.org/2002/07/owl#">
            <Declaration><Class IRI="#A"/></Declaration>
            <SubClassOf><Class IRI="#B"/><Class IRI="#A"/></SubClassOf>
        </Ontology>"""
        with pytest.raises(OwlReferenceError, match="B"):
            parse(document)

    def test_depth_beyond_three_tiers_rejected(self):
        document = """<Ontology xmlns="http://www.w3.org/2002/07/owl#">
            <Declaration><Class IRI="#A"/></Declaration>
            <Declaration><Class IRI="#B"/></Declaration>
            <Declaration><Class IRI="#C"/></Declaration>
            <Declaration><Class IRI="#D"/></Declaration>
            <SubClassOf><Class IRI="#B"/><Class IRI="#A"/></SubClassOf>
            <SubClassOf><Class IRI="#C"/><Class IRI="#B"/></SubClassOf>
            <SubClassOf><Class IRI="#D"/><Class IRI="#C"/></SubClassOf>
        </Ontology>"""
        with pytest.raises(OwlTierError, match="D"):
            parse(document)

    def test_unknown_element_rejected(self):
        document = """<Ontology xmlns="http://www.w3.org/2002/07/owl#">
            <Mystery/>
        </Ontology>"""
        with pytest.raises(OwlParseError, match="Mystery"):
            parse(document)

    def test_orphan_plus_block_rejected(self):
        document = """<Ontology xmlns="http://www.w3.org/2002/07/owl#">
            <Declaration><Class IRI="#A"/></Declaration>
            <Declaration><Class IRI="#B"/></Declaration>
            <EquivalentClasses>
                <Class IRI="#B"/>
                <ObjectExactCardinality cardinality="1">
                    <ObjectProperty IRI="#Plus"/>
                    <Class IRI="#A"/>
                </ObjectExactCardinality>
            </EquivalentClasses>
        </Ontology>"""
        with pytest.raises(OwlParseError, match="Plus"):
            parse(document)

    def test_prefix_elements_tolerated(self):
        document = """<Ontology xmlns="http://www.w3.org/2002/07/owl#">
            <Prefix name="" IRI="http://example.org/"/>
            <Declaration><Class IRI="#A"/></Declaration>
        </Ontology>"""
        assert parse(document).hierarchy.names == ("A",)


class TestSerializeErrors:
    def test_dangling_opposite_endpoint(self):
        ontology = tiny_ontology()
        ontology.opposites.append(OppositeEdge("Joy", "Boredom"))
        with pytest.raises(SerializationError, match="Boredom"):
            serialize(ontology)

    def test_dangling_triple_endpoint(self):
        ontology = tiny_ontology()
        ontology.triples.append(PlusLeadsToTriple("Fear", "Cheerfulness", "Glee"))
        with pytest.raises(SerializationError, match="Glee"):
            serialize(ontology)


class TestDisjointPairs:
    def test_only_primary_pairs_derived(self):
        ontology = tiny_ontology()
        pairs = derive_disjoint_pairs(
            ontology.hierarchy,
            [OppositeEdge("Joy", "Fear"), OppositeEdge("Joy", "Nervousness")],
        )
        assert pairs == [("Joy", "Fear")]

    def test_unordered_deduplication(self):
        ontology = tiny_ontology()
        pairs = derive_disjoint_pairs(
            ontology.hierarchy,
            [OppositeEdge("Joy", "Fear"), OppositeEdge("Fear", "Joy")],
        )
        assert pairs == [("Joy", "Fear")]

    def test_all_primaries_mode(self, hierarchy):
        pairs = derive_disjoint_pairs(hierarchy, [], mode="all-primaries")
        assert len(pairs) == 15  # C(6, 2)

    def test_canonical_pairs(self, ontology):
        assert ("Joy", "Sadness") in ontology.disjoint_pairs
        for a, b in ontology.disjoint_pairs:
            assert ontology.hierarchy.tier_of(a) is Tier.PRIMARY
            assert ontology.hierarchy.tier_of(b) is Tier.PRIMARY
