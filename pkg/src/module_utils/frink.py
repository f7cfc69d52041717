# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""
Frink ideals on finite ODPs: cone and closure operators, ideal predicates,
selectivity, maximality, greedy extension and exhaustive enumeration.

On a finite poset the condition "J^↑↓ ⊆ I for every finite J ⊆ I" reduces to
I^↑↓ ⊆ I, because the cone operators are monotone. The membership condition
is read as "0 ∈ I" (the literal "1 ∈ I" would force I to be the whole poset).
Maximal always means maximal among proper Frink ideals.
"""

import logging
from typing import FrozenSet, Iterable, List, Union

from src.module_utils.constants import BRUTE_FORCE_MAX_ELEMENTS, DEFAULT_NODE_BUDGET
from src.module_utils.enums import BudgetExceededError, StructureError
from src.module_utils.odp import DeltaTable
from src.module_utils.orthoposet import FinOrthoPoset, mask_of, members

logger = logging.getLogger("odp-lab")


class IdealSet:
    """
    A subset of the elements of a poset, stored as a bitmask, with Frink-closure semantics.

    :param poset: The poset the members belong to
    :type poset: FinOrthoPoset
    :param mask: Member bitmask over element indices
    :type mask: int
    """

    def __init__(self, poset: FinOrthoPoset, mask: int):
        self.poset = poset
        self.mask = mask

    @classmethod
    def of(cls, poset: FinOrthoPoset, elements: Iterable[int]) -> "IdealSet":
        """
        :param poset: The poset the members belong to
        :type poset: FinOrthoPoset
        :param elements: Member indices
        :type elements: Iterable[int]
        :return: The set with exactly these members
        :rtype: IdealSet
        """
        elements = list(elements)
        poset.check_index(*elements)
        return cls(poset, mask_of(elements))

    @property
    def elements(self) -> List[int]:
        """
        :return: Member indices in ascending order
        :rtype: List[int]
        """
        return members(self.mask)

    def __contains__(self, index: int) -> bool:
        return bool(self.mask >> index & 1)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IdealSet):
            return NotImplemented
        return self.poset is other.poset and self.mask == other.mask

    def __hash__(self) -> int:
        return hash((id(self.poset), self.mask))

    def __repr__(self) -> str:
        return "{" + ", ".join(self.poset.label(i) for i in self.elements) + "}"

    def contains_bottom(self) -> bool:
        """
        :return: True iff the bottom element is a member
        :rtype: bool
        """
        return self.poset.bottom in self

    def sort_key(self):
        """
        :return: Canonical ordering key (lexicographic on the sorted member list)
        :rtype: Tuple[int, ...]
        """
        return tuple(self.elements)

    def to_bitstring(self) -> str:
        """
        :return: One character per element index, '1' for members
        :rtype: str
        """
        return "".join("1" if i in self else "0" for i in range(self.poset.size))


ElementSet = Union[IdealSet, Iterable[int]]


def _as_mask(p: FinOrthoPoset, elements: ElementSet) -> int:
    if isinstance(elements, IdealSet):
        return elements.mask
    return IdealSet.of(p, elements).mask


def _up_mask(p: FinOrthoPoset, mask: int) -> int:
    result = p.full_mask
    for a in members(mask):
        result &= p.up_masks[a]
    return result


def _down_mask(p: FinOrthoPoset, mask: int) -> int:
    result = p.full_mask
    for a in members(mask):
        result &= p.down_masks[a]
    return result


def _closure_once_mask(p: FinOrthoPoset, mask: int) -> int:
    return mask | _down_mask(p, _up_mask(p, mask))


def _generated_mask(p: FinOrthoPoset, mask: int) -> int:
    current = mask | 1 << p.bottom
    for _ in range(p.size + 1):
        closed = _closure_once_mask(p, current)
        if closed == current:
            return current
        current = closed
    return current


def _is_proper_mask(p: FinOrthoPoset, mask: int) -> bool:
    return not mask >> p.top & 1


def _is_frink_mask(p: FinOrthoPoset, mask: int) -> bool:
    return bool(mask >> p.bottom & 1) and _closure_once_mask(p, mask) == mask


def _is_maximal_mask(p: FinOrthoPoset, mask: int) -> bool:
    outside = p.full_mask & ~mask
    return all(
        not _is_proper_mask(p, _generated_mask(p, mask | 1 << a)) for a in members(outside)
    )


def up_set(p: FinOrthoPoset, elements: ElementSet) -> FrozenSet[int]:
    """
    A^↑ = {x : y <= x for every y in A}; the upper cone of the empty set is everything.

    :param p: Poset
    :type p: FinOrthoPoset
    :param elements: The set A
    :type elements: ElementSet
    :return: Upper cone of A
    :rtype: FrozenSet[int]
    """
    return frozenset(members(_up_mask(p, _as_mask(p, elements))))


def down_set(p: FinOrthoPoset, elements: ElementSet) -> FrozenSet[int]:
    """
    A^↓ = {x : x <= y for every y in A}.

    :param p: Poset
    :type p: FinOrthoPoset
    :param elements: The set A
    :type elements: ElementSet
    :return: Lower cone of A
    :rtype: FrozenSet[int]
    """
    return frozenset(members(_down_mask(p, _as_mask(p, elements))))


def closure_once(p: FinOrthoPoset, elements: ElementSet) -> FrozenSet[int]:
    """
    A ∪ A^↑↓. For finite posets J ⊆ A implies J^↑↓ ⊆ A^↑↓, so the single
    worst case J = A covers every finite subset.

    :param p: Poset
    :type p: FinOrthoPoset
    :param elements: The set A
    :type elements: ElementSet
    :return: A ∪ A^↑↓
    :rtype: FrozenSet[int]
    """
    return frozenset(members(_closure_once_mask(p, _as_mask(p, elements))))


def generated_ideal(p: FinOrthoPoset, elements: ElementSet) -> IdealSet:
    """
    Least Frink ideal containing A ∪ {0}: fixpoint of closure_once.

    :param p: Poset
    :type p: FinOrthoPoset
    :param elements: Generators
    :type elements: ElementSet
    :return: The generated ideal, possibly improper
    :rtype: IdealSet
    """
    return IdealSet(p, _generated_mask(p, _as_mask(p, elements)))


def is_frink_ideal(p: FinOrthoPoset, ideal: ElementSet) -> bool:
    """
    :param p: Poset
    :type p: FinOrthoPoset
    :param ideal: Candidate set
    :type ideal: ElementSet
    :return: True iff 0 ∈ I and closure_once(I) ⊆ I
    :rtype: bool
    """
    return _is_frink_mask(p, _as_mask(p, ideal))


def is_proper(ideal: IdealSet) -> bool:
    """
    :param ideal: Ideal
    :type ideal: IdealSet
    :return: True iff the top element is not a member
    :rtype: bool
    """
    return _is_proper_mask(ideal.poset, ideal.mask)


def is_selective(p: FinOrthoPoset, ideal: ElementSet) -> bool:
    """
    :param p: Orthoposet
    :type p: FinOrthoPoset
    :param ideal: Frink ideal
    :type ideal: ElementSet
    :return: True iff every pair {x, x^⊥} meets I in exactly one element
    :rtype: bool
    """
    return _first_unrepresented(p, _as_mask(p, ideal)) is None


def _first_unrepresented(p: FinOrthoPoset, mask: int):
    for x in range(p.size):
        if bin(mask & (1 << x | 1 << p.perp[x])).count("1") != 1:
            return x
    return None


def unrepresented_pair(p: FinOrthoPoset, ideal: ElementSet):
    """
    :param p: Orthoposet
    :type p: FinOrthoPoset
    :param ideal: Frink ideal
    :type ideal: ElementSet
    :return: The first pair (x, x^⊥) that I does not meet in exactly one element, or None
    :rtype: Optional[Tuple[int, int]]
    """
    x = _first_unrepresented(p, _as_mask(p, ideal))
    return None if x is None else (x, p.perp[x])


def _require_proper_ideal(p: FinOrthoPoset, mask: int) -> None:
    if not _is_frink_mask(p, mask):
        raise ValueError("input is not a Frink ideal")
    if not _is_proper_mask(p, mask):
        raise ValueError("input is an improper ideal")


def is_maximal(p: FinOrthoPoset, ideal: ElementSet) -> bool:
    """
    :param p: Poset
    :type p: FinOrthoPoset
    :param ideal: Proper Frink ideal
    :type ideal: ElementSet
    :raises ValueError: If the input is not a proper Frink ideal
    :return: True iff adding any non-member generates the whole poset
    :rtype: bool
    """
    mask = _as_mask(p, ideal)
    _require_proper_ideal(p, mask)
    return _is_maximal_mask(p, mask)


def extend_to_maximal(p: FinOrthoPoset, ideal: ElementSet) -> IdealSet:
    """
    Greedy extension: scan elements in ascending index order, add a whenever the
    ideal generated by I ∪ {a} stays proper, repeat until nothing changes.

    :param p: Poset
    :type p: FinOrthoPoset
    :param ideal: Proper Frink ideal
    :type ideal: ElementSet
    :raises ValueError: If the input is not a proper Frink ideal
    :return: A maximal proper Frink ideal containing the input
    :rtype: IdealSet
    """
    mask = _as_mask(p, ideal)
    _require_proper_ideal(p, mask)
    changed = True
    while changed:
        changed = False
        for a in range(p.size):
            if mask >> a & 1:
                continue
            candidate = _generated_mask(p, mask | 1 << a)
            if _is_proper_mask(p, candidate):
                mask = candidate
                changed = True
    return IdealSet(p, mask)


def _search_ideals(p: FinOrthoPoset, node_budget: int, maximal_only: bool) -> List[IdealSet]:
    """
    Include/exclude DFS over element indices. Every node holds a closed ideal
    together with its upper cone; including a element closes the ideal again,
    and branches that reach the top or swallow an excluded element are pruned.
    Each proper Frink ideal is reached by exactly one leaf.
    """
    top_bit = 1 << p.top
    start = _generated_mask(p, 0)
    if not _is_proper_mask(p, start):
        return []
    found = []
    nodes = 0
    stack = [(0, start, _up_mask(p, start), 0)]
    while stack:
        position, ideal, upper, excluded = stack.pop()
        nodes += 1
        if nodes > node_budget:
            raise BudgetExceededError(
                f"ideal enumeration exceeded the node budget of {node_budget}; result incomplete"
            )
        while position < p.size and ideal >> position & 1:
            position += 1
        if position == p.size:
            # the only upper bound of I ∪ {a} being 1 means I ∪ {a} generates everything
            if not maximal_only or all(
                upper & p.up_masks[a] == top_bit for a in members(p.full_mask & ~ideal)
            ):
                found.append(IdealSet(p, ideal))
            continue
        stack.append((position + 1, ideal, upper, excluded | 1 << position))
        grown_upper = upper & p.up_masks[position]
        grown = _down_mask(p, grown_upper)
        if not grown & top_bit and not grown & excluded:
            stack.append((position + 1, grown, grown_upper, excluded))
    logger.debug(f"Ideal search visited {nodes} nodes and kept {len(found)} ideals")
    return sorted(found, key=IdealSet.sort_key)


def enumerate_maximal_ideals(
    p: FinOrthoPoset, node_budget: int = DEFAULT_NODE_BUDGET
) -> List[IdealSet]:
    """
    Complete, duplicate-free list of maximal proper Frink ideals in canonical order.

    :param p: Verified orthoposet
    :type p: FinOrthoPoset
    :param node_budget: Maximum number of search nodes
    :type node_budget: int
    :raises BudgetExceededError: If the search needs more nodes than allowed
    :return: Maximal ideals sorted lexicographically by member list
    :rtype: List[IdealSet]
    """
    return _search_ideals(p, node_budget, maximal_only=True)


def enumerate_frink_ideals(
    p: FinOrthoPoset, node_budget: int = DEFAULT_NODE_BUDGET
) -> List[IdealSet]:
    """
    Every proper Frink ideal, in canonical order.

    :param p: Verified orthoposet
    :type p: FinOrthoPoset
    :param node_budget: Maximum number of search nodes
    :type node_budget: int
    :raises BudgetExceededError: If the search needs more nodes than allowed
    :return: Proper Frink ideals sorted lexicographically by member list
    :rtype: List[IdealSet]
    """
    return _search_ideals(p, node_budget, maximal_only=False)


def maximal_ideals_by_filter(p: FinOrthoPoset) -> List[IdealSet]:
    """
    Brute-force oracle: filter all 2^m subsets by Frink, proper and maximal.

    :param p: Verified orthoposet with at most 12 elements
    :type p: FinOrthoPoset
    :raises StructureError: If the poset is too large for brute force
    :return: Maximal ideals in canonical order
    :rtype: List[IdealSet]
    """
    if p.size > BRUTE_FORCE_MAX_ELEMENTS:
        raise StructureError(
            f"brute force is limited to {BRUTE_FORCE_MAX_ELEMENTS} elements, got {p.size}"
        )
    found = [
        IdealSet(p, mask)
        for mask in range(1 << p.size)
        if _is_frink_mask(p, mask) and _is_proper_mask(p, mask) and _is_maximal_mask(p, mask)
    ]
    return sorted(found, key=IdealSet.sort_key)


def is_down_closed(p: FinOrthoPoset, ideal: ElementSet) -> bool:
    """
    :param p: Poset
    :type p: FinOrthoPoset
    :param ideal: Element set
    :type ideal: ElementSet
    :return: True iff every element below a member is a member
    :rtype: bool
    """
    mask = _as_mask(p, ideal)
    return all(p.down_masks[a] & ~mask == 0 for a in members(mask))


def is_delta_closed(d: DeltaTable, ideal: IdealSet) -> bool:
    """
    :param d: Δ table of the ideal's poset
    :type d: DeltaTable
    :param ideal: Element set
    :type ideal: IdealSet
    :return: True iff a, b ∈ I implies a Δ b ∈ I
    :rtype: bool
    """
    elements = ideal.elements
    return all(d.apply(a, b) in ideal for a in elements for b in elements)
