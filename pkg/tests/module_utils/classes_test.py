# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""
Unit tests for the classes module.
"""

import pytest

from src.module_utils.classes import (
    ClassReport,
    classify,
    compatibility_matrix,
    compatible,
    distributivity_witness,
    in_class_R,
    in_class_S,
    in_class_T,
    lattice_witness,
    zero_meet_matrix,
)
from src.module_utils.construct import powerset_odp, product_odp
from src.module_utils.enums import ConsistencyError
from src.module_utils.frink import enumerate_maximal_ideals
from src.module_utils.odp import DeltaTable
from src.module_utils.orthoposet import FinOrthoPoset


class TestClassPredicates:
    """
    Test class for the R, S and T predicates.
    """

    def test_zero_meet(self, even4):
        """
        Distinct atoms of MO3 meet in zero, an atom does not meet itself in zero.
        """
        zero = zero_meet_matrix(even4[0])
        assert zero[1, 2]
        assert not zero[1, 1]

    def test_even4_is_not_in_R(self, even4):
        """
        {0,1} ∧ {0,2} = 0 but {0,1} is not below {1,3}.
        """
        membership = in_class_R(*even4)
        assert not membership.holds
        assert membership.witness == (1, 2)

    def test_even4_is_not_in_T(self, even4):
        """
        {0,1} meets both {0,2} and {1,3} in zero without being zero.
        """
        membership = in_class_T(*even4)
        assert not membership.holds
        assert membership.witness == (1, 2)

    def test_even4_is_not_in_S(self, even4):
        """
        The first maximal ideal misses the pair ({0,2}, {1,3}).
        """
        membership = in_class_S(*even4)
        assert not membership.holds
        assert membership.witness.ideal.elements == [0, 1]
        assert membership.witness.pair == (2, 5)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_powersets_are_in_every_class(self, n):
        """
        Boolean algebras belong to R, S and T.
        """
        poset, delta = powerset_odp(n)
        assert in_class_R(poset, delta).holds
        assert in_class_S(poset, delta).holds
        assert in_class_T(poset, delta).holds
        assert in_class_R(poset, delta).witness is None

    def test_t_readings_must_agree(self):
        """
        A non-orthoposet can make the two readings of the T implication disagree.
        """
        poset = FinOrthoPoset([[True, False], [False, True]], [0, 1])
        with pytest.raises(ConsistencyError, match="readings disagree"):
            in_class_T(poset, DeltaTable([[0, 1], [1, 0]]))


class TestCompatibility:
    """
    Test class for compatibility.
    """

    def test_boolean_algebra_is_fully_compatible(self, powerset3):
        """
        Every pair of a Boolean algebra is compatible.
        """
        assert compatibility_matrix(powerset3[0]).all()

    def test_distinct_atoms_of_mo3(self, even4):
        """
        {0,1} and {0,2} are not compatible, an element and its complement are.
        """
        poset, delta = even4
        assert not compatible(poset, delta, 1, 2)
        assert compatible(poset, delta, 1, 6)
        assert compatible(poset, delta, 0, 3)

    def test_matrix_is_symmetric(self, even4):
        """
        Compatibility is a symmetric relation.
        """
        matrix = compatibility_matrix(even4[0])
        assert (matrix == matrix.T).all()

    def test_rejects_bad_index(self, even4):
        """
        Indices are validated.
        """
        with pytest.raises(IndexError):
            compatible(*even4, 0, 8)


class TestClassify:
    """
    Test class for the classification report.
    """

    def test_even4_report(self, even4):
        """
        MO3 is a lattice outside every class.
        """
        report = classify(*even4, name="even-4")
        data = report.to_dict()
        assert list(data) == [
            "name",
            "elements",
            "in_R",
            "in_S",
            "in_T",
            "is_lattice",
            "is_boolean",
            "ideal_count",
            "selective_count",
            "witnesses",
        ]
        assert (report.in_R, report.in_S, report.in_T) == (False, False, False)
        assert report.is_lattice and not report.is_boolean
        assert (report.ideal_count, report.selective_count) == (6, 0)
        assert data["witnesses"]["in_R"] == ["{0,1}", "{0,2}"]
        assert data["witnesses"]["in_T"] == ["{0,1}", "{0,2}"]
        assert data["witnesses"]["in_S"] == {"ideal": ["{}", "{0,1}"], "pair": ["{0,2}", "{1,3}"]}
        assert report.chain_violations() == []

    def test_powerset_report(self, powerset3):
        """
        A Boolean algebra has no witnesses.
        """
        report = classify(*powerset3)
        assert report.in_R and report.in_S and report.in_T
        assert report.is_boolean
        assert (report.ideal_count, report.selective_count) == (3, 3)
        assert report.witnesses == {}

    def test_precomputed_ideals(self, even4):
        """
        Ideals passed in are used instead of a fresh enumeration.
        """
        poset, delta = even4
        ideals = enumerate_maximal_ideals(poset)
        assert classify(poset, delta, ideals=ideals[:2]).ideal_count == 2

    def test_budget_exhaustion_leaves_s_unknown(self, even4):
        """
        in_S and the counts are unknown when the search runs out of nodes.
        """
        report = classify(*even4, node_budget=1)
        assert report.in_S is None
        assert report.ideal_count is None
        assert report.to_dict()["selective_count"] is None

    def test_product_keeps_lattice(self, powerset2, even4):
        """
        A product of lattices is a lattice with a distributivity failure from the MO3 factor.
        """
        poset, delta = product_odp(*powerset2, *even4)
        assert lattice_witness(poset) is None
        assert distributivity_witness(poset) is not None
        assert not classify(poset, delta).in_R


class TestClassReport:
    """
    Test class for the report helpers.
    """

    @pytest.fixture
    def report(self):
        """
        A report that breaks R => S.

        :return: Class report
        :rtype: ClassReport
        """
        return ClassReport("broken", 4, True, False, True, True, True, 2, 1)

    def test_chain_violations(self, report):
        """
        in_R without in_S is reported.
        """
        assert report.chain_violations() == ["in_R => in_S"]

    def test_unknown_s_skips_its_links(self):
        """
        With in_S unknown only R => T is checked.
        """
        report = ClassReport("x", 4, True, None, False, True, False, None, None)
        assert report.chain_violations() == ["in_R => in_T"]

    def test_mismatches(self, report):
        """
        Only differing fields are listed, booleans in lower case.
        """
        assert report.mismatches({"in_R": True, "in_S": True, "ideal_count": 2}) == [
            "in_S: expected true, got false"
        ]
        assert report.mismatches({"selective_count": None}) == [
            "selective_count: expected unknown, got 1"
        ]
