# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""
Unit tests for the construct module.
"""

import pytest

from src.module_utils.construct import (
    SetFamily,
    benzene_orthoposet,
    delta_closure_family,
    enumerate_delta_subgroups,
    even_sets_family,
    even_sets_odp,
    frozen_corpus,
    incompatibility_degree,
    mo_orthoposet,
    powerset_family,
    powerset_odp,
    product_odp,
    representation,
    subset_label,
)
from src.module_utils.enums import SizeLimitError, StructureError
from src.module_utils.odp import verify_odp
from src.module_utils.orthoposet import is_lattice, lower_bounds, meet, verify_orthoposet


class TestSetFamily:
    """
    Test class for SetFamily and its induced ODP.
    """

    def test_labels(self):
        """
        Labels list the members without spaces.
        """
        assert subset_label(0b101) == "{0,2}"
        assert subset_label(0) == "{}"

    def test_members_are_sorted_and_unique(self):
        """
        Members are stored once, in ascending mask order.
        """
        family = SetFamily(2, [3, 0, 3])
        assert family.members == (0, 3)
        assert family.to_bitstrings() == ["00", "11"]
        assert family.is_delta_closed()

    def test_member_outside_universe(self):
        """
        A member mask beyond the universe is rejected.
        """
        with pytest.raises(StructureError, match="outside the universe"):
            SetFamily(2, [0, 4])

    def test_to_odp_requires_closure(self):
        """
        {∅, {0}, {0,1}} is not closed under symmetric difference.
        """
        with pytest.raises(StructureError, match="symmetric difference"):
            SetFamily(2, [0, 1, 3]).to_odp()

    def test_to_odp_orders_by_inclusion(self):
        """
        The induced order is inclusion, perp the set complement.
        """
        poset, delta = SetFamily(2, [0, 1, 2, 3]).to_odp()
        assert poset.leq[1, 3] and not poset.leq[1, 2]
        assert poset.perp == (3, 2, 1, 0)
        assert delta.apply(1, 3) == 2

    def test_even4_indices(self):
        """
        The even subsets of {0,1,2,3} in ascending mask order.
        """
        poset, _ = even_sets_odp(4)
        assert poset.labels == (
            "{}",
            "{0,1}",
            "{0,2}",
            "{1,2}",
            "{0,3}",
            "{1,3}",
            "{2,3}",
            "{0,1,2,3}",
        )
        assert poset.perp == (7, 6, 5, 4, 3, 2, 1, 0)


class TestGenerators:
    """
    Test class for the family generators.
    """

    def test_powerset_family(self):
        """
        2^n has 2^n members.
        """
        assert len(powerset_family(3)) == 8

    @pytest.mark.parametrize("n", [0, -1])
    def test_powerset_rejects_small_n(self, n):
        """
        n must be at least 1.
        """
        with pytest.raises(ValueError):
            powerset_family(n)

    @pytest.mark.parametrize("two_k", [0, 3, 5])
    def test_even_sets_rejects_odd(self, two_k):
        """
        The universe size must be even and positive.
        """
        with pytest.raises(ValueError):
            even_sets_family(two_k)

    def test_size_cap_checked_before_building(self):
        """
        2^10 exceeds the default cap.
        """
        with pytest.raises(SizeLimitError):
            powerset_odp(10)
        with pytest.raises(SizeLimitError):
            even_sets_odp(12)

    def test_even6(self):
        """
        Even subsets of a 6-element set form an ODP with 32 elements.
        """
        poset, delta = even_sets_odp(6)
        assert poset.size == 32
        assert verify_odp(poset, delta).is_empty()

    def test_even6_is_not_a_lattice(self):
        """
        {0,1,2,3} and {0,1,2,4} share the lower bounds {}, {0,1}, {0,2} and {1,2}, none greatest.
        """
        poset, _ = even_sets_odp(6)
        index = {mask: i for i, mask in enumerate(even_sets_family(6).members)}
        a, b = index[0b001111], index[0b010111]
        assert lower_bounds(poset, a, b) == frozenset(
            index[mask] for mask in (0, 0b000011, 0b000101, 0b000110)
        )
        assert meet(poset, a, b) is None
        assert not is_lattice(poset)

    def test_delta_closure_is_a_span(self):
        """
        The closure of {0} in 2^3 is {∅, {0}, {1,2}, {0,1,2}}.
        """
        family = delta_closure_family(3, [0b001])
        assert family.members == (0, 1, 6, 7)
        assert family.is_delta_closed()

    def test_delta_closure_rejects_bad_generator(self):
        """
        Generators must be subsets of the universe.
        """
        with pytest.raises(StructureError):
            delta_closure_family(2, [8])

    @pytest.mark.parametrize("n, count", [(1, 1), (2, 2), (3, 5)])
    def test_subgroup_counts(self, n, count):
        """
        Subspaces of GF(2)^n containing the all-ones vector.
        """
        families = list(enumerate_delta_subgroups(n))
        assert len(families) == count
        assert all(family.is_delta_closed() for family in families)
        assert families[-1] == powerset_family(n)

    def test_subgroup_range(self):
        """
        The enumeration is limited to small universes.
        """
        with pytest.raises(ValueError):
            list(enumerate_delta_subgroups(6))


class TestProduct:
    """
    Test class for the product construction.
    """

    def test_product_indices(self, powerset2):
        """
        The pair (i, j) is element i * m2 + j.
        """
        poset, delta = product_odp(*powerset2, *powerset2)
        assert poset.size == 16
        assert poset.label(6) == "({0},{1})"
        assert poset.perp[6] == 2 * 4 + 1
        assert delta.apply(5, 10) == 15
        assert verify_odp(poset, delta).is_empty()

    def test_product_size_cap(self, powerset3):
        """
        The product respects the element cap.
        """
        with pytest.raises(SizeLimitError):
            product_odp(*powerset3, *powerset3, max_elements=32)


class TestOrthoposets:
    """
    Test class for the fixed orthoposets.
    """

    def test_mo2(self):
        """
        MO2 has six elements, the atoms paired by perp.
        """
        poset = mo_orthoposet(2)
        assert poset.labels == ("0", "x1", "x1'", "x2", "x2'", "1")
        assert poset.perp == (5, 2, 1, 4, 3, 0)
        assert verify_orthoposet(poset).is_empty()

    def test_mo_rejects_zero(self):
        """
        MO_n needs at least one pair of atoms.
        """
        with pytest.raises(ValueError):
            mo_orthoposet(0)

    def test_benzene(self):
        """
        The benzene ring is a six-element chain pair.
        """
        poset = benzene_orthoposet()
        assert poset.size == 6
        assert poset.leq[1, 2] and not poset.leq[1, 3]


class TestCorpus:
    """
    Test class for the frozen corpus.
    """

    @pytest.fixture(scope="class")
    def base_corpus(self):
        """
        The corpus without products.

        :return: Base instances
        :rtype: list
        """
        return frozen_corpus(include_products=False)

    def test_base_size_and_names(self, base_corpus):
        """
        Twenty-five base families, named after their construction.
        """
        names = [instance.name for instance in base_corpus]
        assert len(names) == 25
        assert names[0] == "powerset-1"
        assert {"powerset-2", "powerset-3", "powerset-4", "even-4", "even-6"} <= set(names)
        assert len(set(names)) == len(names)

    def test_base_instances_are_odps(self, base_corpus):
        """
        Every base instance verifies.
        """
        for instance in base_corpus:
            assert verify_odp(instance.poset, instance.delta).is_empty(), instance.name


class TestRepresentation:
    """
    Test class for the set representation.
    """

    def test_powerset_embeds(self, powerset3):
        """
        A Boolean algebra embeds with every flag set.
        """
        result = representation(*powerset3)
        data = result.to_dict()
        assert data["points"] == 3
        assert data["order_embedding"] and data["perp_ok"] and data["delta_ok"]
        assert data["embedding"]["{}"] == "000"
        assert data["embedding"]["{0,1,2}"] == "111"

    def test_even4_is_degenerate(self, even4):
        """
        Without selective ideals the embedding is empty and every flag is false.
        """
        result = representation(*even4)
        assert result.points == []
        assert not (result.order_embedding or result.perp_ok or result.delta_ok)
        assert result.embedding_bitstrings() == [""] * 8

    def test_incompatibility_degree(self, even4, powerset3):
        """
        MO3 has twelve incompatible pairs, a Boolean algebra none.
        """
        assert incompatibility_degree(powerset3[0]) == 0
        assert incompatibility_degree(even4[0]) == 12
