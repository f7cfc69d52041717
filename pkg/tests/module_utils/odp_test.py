# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""
Unit tests for the odp module.
"""

import pytest

from src.module_utils.construct import benzene_orthoposet, mo_orthoposet, product_odp
from src.module_utils.enums import StructureError
from src.module_utils.odp import (
    DeltaTable,
    check_orthomodularity,
    delta_identities_report,
    verify_odp,
)


def _edited(delta, row, column, value):
    table = delta.table.tolist()
    table[row][column] = value
    return DeltaTable(table)


class TestDeltaTable:
    """
    Test class for the DeltaTable container.
    """

    def test_apply(self, powerset2):
        """
        Δ on 2^2 is symmetric difference of the member sets.
        """
        _, delta = powerset2
        assert delta.apply(1, 2) == 3
        assert delta.apply(3, 1) == 2
        assert delta.size == 4

    def test_rejects_out_of_range_entries(self):
        """
        Entries must be element indices.
        """
        with pytest.raises(StructureError, match="indices"):
            DeltaTable([[0, 2], [1, 0]])

    def test_rejects_non_square(self):
        """
        The table must be square.
        """
        with pytest.raises(StructureError):
            DeltaTable([[0, 1]])

    def test_is_read_only(self, powerset2):
        """
        The table cannot be modified in place.
        """
        _, delta = powerset2
        with pytest.raises(ValueError):
            delta.table[0, 0] = 1


class TestVerifyOdp:
    """
    Test class for the ODP axiom checker.
    """

    def test_set_families_are_odps(self, powerset3, even4):
        """
        Every Δ-closed family yields an ODP.
        """
        for poset, delta in (powerset3, even4):
            assert verify_odp(poset, delta).is_empty()

    def test_products_are_odps(self, powerset2, even4):
        """
        The componentwise product of two ODPs is an ODP.
        """
        poset, delta = product_odp(*powerset2, *even4)
        assert poset.size == 32
        assert verify_odp(poset, delta).is_empty()

    def test_complement_axiom_violation(self, powerset2):
        """
        x Δ 1 must be the complement of x.
        """
        poset, delta = powerset2
        report = verify_odp(poset, _edited(delta, 1, 3, 1))
        assert "top_complement" in report.axioms()
        assert report.first("top_complement").witness == (1,)

    def test_bounded_axiom_violation(self, powerset2):
        """
        {0} Δ {0} sent to the top escapes the common upper bound {0}.
        """
        poset, delta = powerset2
        report = verify_odp(poset, _edited(delta, 1, 1, 3))
        assert "upper_bound" in report.axioms()
        assert report.first("upper_bound").witness == (1, 1, 1)

    def test_size_mismatch(self, powerset2, even4):
        """
        A table of the wrong size is a structure error.
        """
        with pytest.raises(StructureError, match="size"):
            verify_odp(powerset2[0], even4[1])

    def test_sampling_above_cap(self, powerset3):
        """
        Above the element cap the triple checks are sampled and flagged.
        """
        poset, delta = powerset3
        report = verify_odp(poset, delta, max_elements=4, sample_triples=500, seed=7)
        assert report.is_empty()
        assert report.sampled
        assert report.facts == {"sampled_triples": 500, "seed": 7}


class TestDerivedLaws:
    """
    Test class for orthomodularity and the Δ identities.
    """

    def test_orthomodular_families(self, even4):
        """
        Every ODP is orthomodular.
        """
        poset, delta = even4
        assert check_orthomodularity(poset, delta).is_empty()

    def test_mo2_without_delta(self):
        """
        The law can be checked on a bare orthoposet.
        """
        assert check_orthomodularity(mo_orthoposet(2)).is_empty()

    def test_benzene_is_not_orthomodular(self):
        """
        a <= b but b != a ∨ (b ∧ a^⊥) in the benzene ring.
        """
        report = check_orthomodularity(benzene_orthoposet())
        assert report.subject == "orthomodularity"
        assert report.first("orthomodular").witness == (1, 2)

    def test_identities_hold(self, even4):
        """
        x Δ x = 0 and 0 is a two-sided identity; Δ on sets is commutative.
        """
        poset, delta = even4
        report = delta_identities_report(poset, delta)
        assert report.is_empty()
        assert report.facts["commutative"] is True
        assert "noncommuting_pair" not in report.facts

    def test_noncommuting_pair_is_recorded(self, powerset2):
        """
        An asymmetric table records the first pair that does not commute.
        """
        poset, delta = powerset2
        report = delta_identities_report(poset, _edited(delta, 1, 2, 0))
        assert report.facts["commutative"] is False
        assert report.facts["noncommuting_pair"] == [1, 2]
