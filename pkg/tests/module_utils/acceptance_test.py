# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""
Unit tests for the acceptance module.
"""

import random

import pytest

from src.module_utils.acceptance import (
    FAILURE_LIMIT,
    INSTANCE_PROPERTIES,
    PropertyTally,
    check_epset_oracles,
    check_goldens,
    check_infinite_families,
    check_instance,
    new_tally,
    random_epset,
)
from src.module_utils.construct import CorpusInstance, product_odp
from src.module_utils.odp import DeltaTable


class TestPropertyTally:
    """
    Test class for PropertyTally.
    """

    def test_record_and_skip(self):
        """
        Failures are counted and described, skips do not fail.
        """
        tally = new_tally(1)
        assert tally.name == "odp axioms"
        tally.record(True, "a")
        tally.record(False, "b", "associativity")
        tally.skip(2)
        assert (tally.checked, tally.failed, tally.skipped) == (2, 1, 2)
        assert tally.failures == ["b: associativity"]
        assert not tally.passed

    def test_failure_list_is_bounded(self):
        """
        Only the first failures are kept, across merges too.
        """
        first, second = new_tally(2), new_tally(2)
        for index in range(FAILURE_LIMIT):
            first.record(False, f"x{index}")
        second.record(False, "y")
        first.merge(second)
        assert first.failed == FAILURE_LIMIT + 1
        assert len(first.failures) == FAILURE_LIMIT

    def test_to_dict(self):
        """
        The document form carries the verdict.
        """
        data = PropertyTally(9, "lattices in T are Boolean", checked=3).to_dict()
        assert data["passed"] is True
        assert list(data) == [
            "number",
            "name",
            "passed",
            "checked",
            "failed",
            "skipped",
            "failures",
        ]


class TestCheckInstance:
    """
    Test class for the per-instance properties.
    """

    def test_powerset_passes_everything(self, powerset3):
        """
        2^3 passes every instance property, including the representation.
        """
        tallies = check_instance(CorpusInstance("powerset-3", *powerset3))
        assert sorted(tallies) == sorted(INSTANCE_PROPERTIES)
        assert all(tally.passed for tally in tallies.values())
        assert tallies[10].checked == 1
        assert tallies[11].checked == 2
        assert tallies[9].checked == 1

    def test_even4_passes_without_r_checks(self, even4):
        """
        MO3 is outside R, so the representation is not checked.
        """
        tallies = check_instance(CorpusInstance("even-4", *even4))
        assert all(tally.passed for tally in tallies.values())
        assert tallies[10].checked == 0
        assert tallies[9].checked == 0
        assert tallies[4].checked == 1

    def test_product_instance(self, powerset2, even4):
        """
        Products pass as well; brute force is skipped above twelve elements.
        """
        tallies = check_instance(CorpusInstance("p2*e4", *product_odp(*powerset2, *even4)))
        assert all(tally.passed for tally in tallies.values())
        assert tallies[4].checked == 0

    def test_broken_instance_skips_the_rest(self, powerset2):
        """
        An instance that fails the axioms is not checked further.
        """
        poset, delta = powerset2
        table = delta.table.tolist()
        table[1][3] = 1
        tallies = check_instance(CorpusInstance("broken", poset, DeltaTable(table)))
        assert not tallies[1].passed
        assert tallies[2].skipped == 1 and tallies[2].checked == 0

    def test_budget_exhaustion_fails_the_chain(self, even4):
        """
        An unknown in_S cannot confirm the class chain.
        """
        tallies = check_instance(CorpusInstance("even-4", *even4), node_budget=1)
        assert tallies[4].skipped == 1
        assert not tallies[7].passed
        assert tallies[7].failures == ["even-4: in_S unknown"]


class TestGlobalProperties:
    """
    Test class for the properties that run once per corpus-check.
    """

    def test_infinite_families(self):
        """
        R is proven, T refuted, and the T scan witness is genuine.
        """
        tally = check_infinite_families()
        assert tally.passed, tally.failures
        assert tally.checked == 5

    def test_goldens(self):
        """
        even-4 and the power sets classify as expected.
        """
        tallies = check_goldens()
        assert tallies[13].passed, tallies[13].failures
        assert tallies[13].checked == 6
        assert tallies[10].passed

    def test_epset_oracles(self, mocker):
        """
        Set operations and zero-meet decisions agree with their oracles.
        """
        mocker.patch("src.module_utils.acceptance.EPSET_PAIRS", 100)
        mocker.patch("src.module_utils.acceptance.ORACLE_SAMPLES", 5)
        tally = check_epset_oracles(seed=3)
        assert tally.passed, tally.failures
        assert tally.checked == 100 + 2 * (8 + 3 * 5)

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_random_epset_is_reproducible(self, seed):
        """
        The same seed draws the same set.
        """
        assert random_epset(random.Random(seed)) == random_epset(random.Random(seed))
