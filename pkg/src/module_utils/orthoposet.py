# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""
Finite orthocomplemented posets: representation, axiom verification,
derived order operations (bounds, meets, joins) and Hasse diagram export.
"""

import logging
from functools import cached_property
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from src.module_utils.constants import (
    DEFAULT_MAX_ELEMENTS,
    DEFAULT_WITNESS_LIMIT,
    DE_MORGAN_LAW,
    ORTHOPOSET_AXIOMS,
)
from src.module_utils.enums import SizeLimitError, StructureError, ViolationReport
from src.module_utils.rendering import render_template

logger = logging.getLogger("odp-lab")

NO_ELEMENT = -1


def members(mask: int) -> List[int]:
    """
    Expands a bitmask into the ascending list of its set bit positions.

    :param mask: Element set as a bitmask
    :type mask: int
    :return: Element indices
    :rtype: List[int]
    """
    result = []
    while mask:
        low = mask & -mask
        result.append(low.bit_length() - 1)
        mask ^= low
    return result


def mask_of(elements: Iterable[int]) -> int:
    """
    :param elements: Element indices
    :type elements: Iterable[int]
    :return: The bitmask with exactly these bits set
    :rtype: int
    """
    mask = 0
    for element in elements:
        mask |= 1 << int(element)
    return mask


class FinOrthoPoset:
    """
    Immutable finite orthocomplemented poset.

    The order is a read-only m×m boolean numpy matrix with leq[x, y] iff x <= y.
    Element subsets used by the ideal machinery are Python int bitmasks derived
    from the matrix rows and columns.

    :param leq: m×m boolean relation
    :type leq: Sequence[Sequence[bool]]
    :param perp: Complement permutation on 0..m-1
    :type perp: Sequence[int]
    :param labels: Optional display labels, one whitespace-free token per element
    :type labels: Optional[Sequence[str]]
    :param max_elements: Soft element cap
    :type max_elements: int
    :param allow_large: Accept structures above the cap
    :type allow_large: bool
    """

    def __init__(
        self,
        leq: Sequence[Sequence[bool]],
        perp: Sequence[int],
        labels: Optional[Sequence[str]] = None,
        max_elements: int = DEFAULT_MAX_ELEMENTS,
        allow_large: bool = False,
    ):
        matrix = np.array(leq, dtype=bool)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.shape[0] < 1:
            raise StructureError(f"order matrix must be square and non-empty, got {matrix.shape}")
        size = int(matrix.shape[0])
        if size > max_elements and not allow_large:
            raise SizeLimitError(
                f"{size} elements exceed the cap of {max_elements}; pass the override to continue"
            )
        permutation = tuple(int(x) for x in perp)
        if len(permutation) != size or sorted(permutation) != list(range(size)):
            raise StructureError("perp must be a bijection on the element indices")
        if labels is None:
            labels = [str(i) for i in range(size)]
        labels = tuple(str(label) for label in labels)
        if len(labels) != size or any(not label or label.split() != [label] for label in labels):
            raise StructureError("labels must be one whitespace-free token per element")
        matrix.flags.writeable = False
        self.size = size
        self.leq = matrix
        self.perp = permutation
        self.labels = labels
        least = np.flatnonzero(matrix.all(axis=1))
        greatest = np.flatnonzero(matrix.all(axis=0))
        self.bottom = int(least[0]) if least.size else 0
        self.top = int(greatest[0]) if greatest.size else size - 1

    def __repr__(self) -> str:
        return f"FinOrthoPoset(size={self.size}, bottom={self.bottom}, top={self.top})"

    def label(self, index: int) -> str:
        """
        :param index: Element index
        :type index: int
        :return: Display label of the element
        :rtype: str
        """
        return self.labels[index]

    def check_index(self, *indices: int) -> None:
        """
        :param indices: Element indices to validate
        :type indices: int
        :raises IndexError: If an index is out of range
        """
        for index in indices:
            if not 0 <= index < self.size:
                raise IndexError(f"element index {index} out of range 0..{self.size - 1}")

    @cached_property
    def perp_array(self) -> np.ndarray:
        """
        :return: The complement permutation as an index array
        :rtype: np.ndarray
        """
        return np.array(self.perp, dtype=np.int64)

    @cached_property
    def down_masks(self) -> Tuple[int, ...]:
        """
        :return: down_masks[x] is the bitmask of {y : y <= x}
        :rtype: Tuple[int, ...]
        """
        return tuple(mask_of(np.flatnonzero(self.leq[:, x])) for x in range(self.size))

    @cached_property
    def up_masks(self) -> Tuple[int, ...]:
        """
        :return: up_masks[x] is the bitmask of {y : x <= y}
        :rtype: Tuple[int, ...]
        """
        return tuple(mask_of(np.flatnonzero(self.leq[x, :])) for x in range(self.size))

    @cached_property
    def full_mask(self) -> int:
        """
        :return: Bitmask of all elements
        :rtype: int
        """
        return (1 << self.size) - 1

    @cached_property
    def lower_counts(self) -> np.ndarray:
        """
        :return: lower_counts[a, b] = number of common lower bounds of a and b
        :rtype: np.ndarray
        """
        as_int = self.leq.astype(np.int64)
        return as_int.T @ as_int

    @cached_property
    def upper_counts(self) -> np.ndarray:
        """
        :return: upper_counts[a, b] = number of common upper bounds of a and b
        :rtype: np.ndarray
        """
        as_int = self.leq.astype(np.int64)
        return as_int @ as_int.T

    @cached_property
    def meet_table(self) -> np.ndarray:
        """
        The greatest common lower bound of every pair, NO_ELEMENT where it does not exist.
        A common lower bound g is the greatest one iff its down-set has as many
        elements as the whole common lower cone.

        :return: m×m index table
        :rtype: np.ndarray
        """
        down_count = self.leq.sum(axis=0)
        table = np.full((self.size, self.size), NO_ELEMENT, dtype=np.int64)
        for a in range(self.size):
            candidates = (
                self.leq[:, a][:, None]
                & self.leq
                & (down_count[:, None] == self.lower_counts[a][None, :])
            )
            exists = candidates.any(axis=0)
            table[a] = np.where(exists, candidates.argmax(axis=0), NO_ELEMENT)
        table.flags.writeable = False
        return table

    @cached_property
    def join_table(self) -> np.ndarray:
        """
        The least common upper bound of every pair, NO_ELEMENT where it does not exist.

        :return: m×m index table
        :rtype: np.ndarray
        """
        up_count = self.leq.sum(axis=1)
        table = np.full((self.size, self.size), NO_ELEMENT, dtype=np.int64)
        for a in range(self.size):
            candidates = (
                self.leq[a, :][:, None]
                & self.leq.T
                & (up_count[:, None] == self.upper_counts[a][None, :])
            )
            exists = candidates.any(axis=0)
            table[a] = np.where(exists, candidates.argmax(axis=0), NO_ELEMENT)
        table.flags.writeable = False
        return table


def verify_orthoposet(
    p: FinOrthoPoset, witness_limit: Optional[int] = DEFAULT_WITNESS_LIMIT
) -> ViolationReport:
    """
    Checks every orthoposet axiom and reports each violation with its
    lexicographically first witnesses.

    :param p: Structurally well-formed poset candidate
    :type p: FinOrthoPoset
    :param witness_limit: Maximum witnesses per axiom, None for all
    :type witness_limit: Optional[int]
    :return: Empty report iff p is an orthocomplemented poset
    :rtype: ViolationReport
    """
    report = ViolationReport("orthoposet", witness_limit)
    leq = p.leq
    perp = p.perp_array
    identity = np.eye(p.size, dtype=bool)

    for x in np.flatnonzero(~np.diag(leq)):
        if not report.add("reflexive", (x,), f"{p.label(x)} <= {p.label(x)} fails"):
            break
    for x, y in np.argwhere(np.triu(leq & leq.T & ~identity, 1)):
        if not report.add("antisymmetric", (x, y), f"{p.label(x)} and {p.label(y)} are tied"):
            break
    composed = (leq.astype(np.int64) @ leq.astype(np.int64)) > 0
    for x, z in np.argwhere(composed & ~leq):
        y = int(np.flatnonzero(leq[x] & leq[:, z])[0])
        if not report.add("transitive", (x, y, z), f"{p.label(x)} <= {p.label(z)} missing"):
            break
    for x in np.flatnonzero(~leq[p.bottom]):
        if not report.add("bottom", (x,), f"{p.label(p.bottom)} <= {p.label(x)} fails"):
            break
    for x in np.flatnonzero(~leq[:, p.top]):
        if not report.add("top", (x,), f"{p.label(x)} <= {p.label(p.top)} fails"):
            break
    for x in np.flatnonzero(perp[perp] != np.arange(p.size)):
        if not report.add("involution", (x,), f"perp(perp({p.label(x)})) != {p.label(x)}"):
            break
    for x, y in np.argwhere(leq & ~leq[np.ix_(perp, perp)].T):
        if not report.add("antitone", (x, y), f"perp({p.label(y)}) <= perp({p.label(x)}) fails"):
            break

    lower_with_complement = leq & leq[:, perp]
    upper_with_complement = leq.T & leq[perp, :].T
    for x in range(p.size):
        for y in np.flatnonzero(lower_with_complement[:, x]):
            if y != p.bottom and not report.is_full("complement_meet"):
                report.add(
                    "complement_meet",
                    (x, y),
                    f"x ∧ x^⊥ = 0 fails at x={p.label(x)}: {p.label(y)} is a common lower bound",
                )
                break
        for y in np.flatnonzero(upper_with_complement[:, x]):
            if y != p.top and not report.is_full("complement_join"):
                report.add(
                    "complement_join",
                    (x, y),
                    f"x ∨ x^⊥ = 1 fails at x={p.label(x)}: {p.label(y)} is a common upper bound",
                )
                break
    if not report.is_empty():
        violated = [f"{axiom} ({ORTHOPOSET_AXIOMS[axiom]})" for axiom in report.axioms()]
        logger.info(f"Orthoposet axioms violated: {'; '.join(violated)}")
    return report


def lower_bounds(p: FinOrthoPoset, a: int, b: int) -> FrozenSet[int]:
    """
    :param p: Poset
    :type p: FinOrthoPoset
    :param a: Element index
    :type a: int
    :param b: Element index
    :type b: int
    :return: {x : x <= a and x <= b}
    :rtype: FrozenSet[int]
    """
    p.check_index(a, b)
    return frozenset(members(p.down_masks[a] & p.down_masks[b]))


def upper_bounds(p: FinOrthoPoset, a: int, b: int) -> FrozenSet[int]:
    """
    :param p: Poset
    :type p: FinOrthoPoset
    :param a: Element index
    :type a: int
    :param b: Element index
    :type b: int
    :return: {x : a <= x and b <= x}
    :rtype: FrozenSet[int]
    """
    p.check_index(a, b)
    return frozenset(members(p.up_masks[a] & p.up_masks[b]))


def meet(p: FinOrthoPoset, a: int, b: int) -> Optional[int]:
    """
    Greatest lower bound. None (no meet) is distinct from p.bottom (meet is zero).

    :param p: Verified orthoposet
    :type p: FinOrthoPoset
    :param a: Element index
    :type a: int
    :param b: Element index
    :type b: int
    :return: The meet, or None when a and b have no greatest lower bound
    :rtype: Optional[int]
    """
    p.check_index(a, b)
    value = int(p.meet_table[a, b])
    return None if value == NO_ELEMENT else value


def join(p: FinOrthoPoset, a: int, b: int) -> Optional[int]:
    """
    Least upper bound, None when it does not exist.

    :param p: Verified orthoposet
    :type p: FinOrthoPoset
    :param a: Element index
    :type a: int
    :param b: Element index
    :type b: int
    :return: The join, or None
    :rtype: Optional[int]
    """
    p.check_index(a, b)
    value = int(p.join_table[a, b])
    return None if value == NO_ELEMENT else value


def is_orthogonal(p: FinOrthoPoset, a: int, b: int) -> bool:
    """
    :param p: Orthoposet
    :type p: FinOrthoPoset
    :param a: Element index
    :type a: int
    :param b: Element index
    :type b: int
    :return: True iff a <= perp(b)
    :rtype: bool
    """
    p.check_index(a, b)
    return bool(p.leq[a, p.perp[b]])


def is_lattice(p: FinOrthoPoset) -> bool:
    """
    :param p: Verified orthoposet
    :type p: FinOrthoPoset
    :return: True iff every pair has a meet and a join
    :rtype: bool
    """
    return bool((p.meet_table != NO_ELEMENT).all() and (p.join_table != NO_ELEMENT).all())


def is_boolean(p: FinOrthoPoset) -> bool:
    """
    A lattice satisfying a ∧ (b ∨ c) = (a ∧ b) ∨ (a ∧ c) for all triples.

    :param p: Verified orthoposet
    :type p: FinOrthoPoset
    :return: True iff p is a Boolean algebra
    :rtype: bool
    """
    if not is_lattice(p):
        return False
    meets, joins = p.meet_table, p.join_table
    for a in range(p.size):
        left = meets[a][joins]
        right = joins[meets[a][:, None], meets[a][None, :]]
        if not np.array_equal(left, right):
            logger.debug(f"Distributivity fails for a={p.label(a)}")
            return False
    return True


def check_de_morgan(
    p: FinOrthoPoset, witness_limit: Optional[int] = DEFAULT_WITNESS_LIMIT
) -> ViolationReport:
    """
    meet(a, b) exists iff join(perp a, perp b) exists, and then meet(a, b) = perp(join(...)).

    :param p: Verified orthoposet
    :type p: FinOrthoPoset
    :param witness_limit: Maximum witnesses kept
    :type witness_limit: Optional[int]
    :return: Report over the "de_morgan" axiom
    :rtype: ViolationReport
    """
    report = ViolationReport("de_morgan", witness_limit)
    perp = p.perp_array
    dual = p.join_table[np.ix_(perp, perp)]
    expected = np.where(dual == NO_ELEMENT, NO_ELEMENT, perp[np.maximum(dual, 0)])
    for a, b in np.argwhere(p.meet_table != expected):
        if not report.add("de_morgan", (a, b), DE_MORGAN_LAW):
            break
    return report


def transitive_closure(relation: np.ndarray) -> np.ndarray:
    """
    Reflexive-transitive closure of a boolean relation (Warshall, one numpy pass per pivot).

    :param relation: m×m boolean matrix
    :type relation: np.ndarray
    :return: Closed relation
    :rtype: np.ndarray
    """
    closure = np.array(relation, dtype=bool) | np.eye(len(relation), dtype=bool)
    for k in range(len(closure)):
        closure |= closure[:, k : k + 1] & closure[k : k + 1, :]
    return closure


def covering_matrix(p: FinOrthoPoset) -> np.ndarray:
    """
    :param p: Poset
    :type p: FinOrthoPoset
    :return: cover[x, y] iff x < y with nothing strictly between
    :rtype: np.ndarray
    """
    strict = p.leq & ~np.eye(p.size, dtype=bool)
    between = (strict.astype(np.int64) @ strict.astype(np.int64)) > 0
    return strict & ~between


def hasse_edges(p: FinOrthoPoset) -> List[Tuple[int, int]]:
    """
    :param p: Poset
    :type p: FinOrthoPoset
    :return: Covering pairs (lower, upper) in lexicographic order
    :rtype: List[Tuple[int, int]]
    """
    return [(int(x), int(y)) for x, y in np.argwhere(covering_matrix(p))]


def to_dot(p: FinOrthoPoset, name: str = "hasse") -> str:
    """
    DOT digraph of the Hasse diagram, drawn bottom-up, nodes in index order.

    :param p: Verified poset
    :type p: FinOrthoPoset
    :param name: Graph identifier
    :type name: str
    :return: DOT text
    :rtype: str
    """
    return render_template(
        "hasse.dot.j2",
        {
            "name": name,
            "nodes": [{"index": i, "label": p.label(i)} for i in range(p.size)],
            "edges": hasse_edges(p),
        },
    )
