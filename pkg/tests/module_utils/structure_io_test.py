# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""
Unit tests for the structure_io module.
"""

import pytest

from src.module_utils.construct import powerset_family
from src.module_utils.enums import SizeLimitError, StructureError
from src.module_utils.structure_io import (
    format_documents,
    format_family,
    format_odp,
    parse_structure,
    parse_structures,
    split_documents,
)

CHAIN = """odp v1
name chain   # two elements
elements 2
leq
11
01
perp 1 0
delta
0 1
1 0
labels zero one
"""


class TestParseOdp:
    """
    Test class for the odp v1 reader.
    """

    def test_parse_chain(self):
        """
        Every section is read, comments are ignored.
        """
        structure = parse_structure(CHAIN)
        assert structure.mode == "odp"
        assert structure.name == "chain"
        assert structure.poset.size == 2
        assert structure.poset.labels == ("zero", "one")
        assert structure.poset.perp == (1, 0)
        assert structure.delta.apply(0, 1) == 1
        assert structure.family is None

    def test_delta_and_labels_are_optional(self):
        """
        A bare orthoposet parses without a Δ table.
        """
        structure = parse_structure("odp v1\nelements 1\nleq\n1\nperp 0\n")
        assert structure.delta is None
        assert structure.poset.labels == ("0",)

    def test_written_document_reads_back(self, powerset2):
        """
        format_odp writes what parse_structure reads.
        """
        poset, delta = powerset2
        structure = parse_structure(format_odp(poset, delta, "square"))
        assert structure.name == "square"
        assert (structure.poset.leq == poset.leq).all()
        assert structure.poset.perp == poset.perp
        assert (structure.delta.table == delta.table).all()
        assert structure.poset.labels == poset.labels

    @pytest.mark.parametrize(
        "text, message",
        [
            ("odp v1\nleq\n", "before 'elements'"),
            ("odp v1\nelements 2\nleq\n11\n", "needs 2 rows"),
            ("odp v1\nelements 2\nleq\n12\n01\nperp 1 0\n", "'0'/'1'"),
            ("odp v1\nelements 2\nleq\n11\n01\n", "missing 'perp'"),
            ("odp v1\nelements 2\nelements 2\n", "duplicate section"),
            ("odp v1\nelements two\n", "must be an integer"),
            ("odp v1\nelements 0\n", "at least 1"),
            ("odp v1\nelements 1\ncolors red\n", "unknown section"),
            ("odp v1\nelements 2\nleq\n11\n01\nperp 1 0\ndelta\n0 1\n1\n", "2 entries"),
            ("graph v2\n", "expected 'odp v1' or 'family v1'"),
            ("# nothing here\n", "no structure"),
        ],
    )
    def test_malformed_documents(self, text, message):
        """
        Structural problems are reported with their line.
        """
        with pytest.raises(StructureError, match=message):
            parse_structures(text)

    def test_element_cap(self):
        """
        The cap is checked on the element count, before the matrix is read.
        """
        with pytest.raises(SizeLimitError):
            parse_structures("odp v1\nelements 600\n")
        with pytest.raises(SizeLimitError):
            parse_structures(CHAIN, max_elements=1)


class TestParseFamily:
    """
    Test class for the family v1 reader.
    """

    def test_parse_family(self):
        """
        A family document induces its ODP.
        """
        structure = parse_structure("family v1\nname pair\nuniverse 2\n00\n11\n")
        assert structure.mode == "family"
        assert structure.name == "pair"
        assert structure.family.members == (0, 3)
        assert structure.poset.labels == ("{}", "{0,1}")
        assert structure.delta.apply(1, 1) == 0

    def test_written_family_reads_back(self):
        """
        format_family writes what parse_structure reads.
        """
        family = powerset_family(2)
        text = format_family(family, "p2")
        assert text == "family v1\nname p2\nuniverse 2\n00\n10\n01\n11\n"
        assert parse_structure(text).family == family

    @pytest.mark.parametrize(
        "text, message",
        [
            ("family v1\n00\n", "expected 'universe <n>'"),
            ("family v1\nuniverse 2\n0\n", "2-character"),
            ("family v1\nuniverse 2\n11\n11\n", "twice"),
            ("family v1\nuniverse 2\n00\n10\n11\n", "symmetric difference"),
            ("family v1\nname x\n", "missing 'universe'"),
            ("family v1\nuniverse 2\nname x\n00\n", "line 3: 'name' must come before 'universe'"),
            ("family v1\nname x\nname y\nuniverse 2\n", "line 3: duplicate section 'name'"),
            ("family v1\nuniverse 2\nuniverse 2\n", "line 3: duplicate section 'universe'"),
        ],
    )
    def test_malformed_families(self, text, message):
        """
        Bad members and families that are not Δ-closed are rejected.
        """
        with pytest.raises(StructureError, match=message):
            parse_structures(text)


class TestStreams:
    """
    Test class for multi-document streams.
    """

    def test_split_documents(self):
        """
        Separator lines split, comment-only documents vanish.
        """
        documents = split_documents("a\n---\n# only a comment\n---\nb\nc\n")
        assert documents == [[(1, "a")], [(5, "b"), (6, "c")]]

    def test_parse_several(self):
        """
        Documents of both kinds can share a stream.
        """
        text = format_documents([CHAIN, format_family(powerset_family(1))])
        structures = parse_structures(text)
        assert [structure.mode for structure in structures] == ["odp", "family"]

    def test_parse_structure_wants_one(self):
        """
        parse_structure refuses streams with several documents.
        """
        with pytest.raises(StructureError, match="expected one structure"):
            parse_structure(format_documents([CHAIN, CHAIN]))
