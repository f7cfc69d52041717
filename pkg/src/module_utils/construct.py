# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""
Generators for example ODPs (power sets, even-cardinality families, products,
Δ-closed families, MO_n, the benzene ring), the frozen corpus and the set
representation over selective maximal ideals.
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from src.module_utils.classes import compatibility_matrix
from src.module_utils.constants import (
    DEFAULT_MAX_ELEMENTS,
    DEFAULT_NODE_BUDGET,
    MAX_SUBGROUP_UNIVERSE,
)
from src.module_utils.enums import SizeLimitError, StructureError
from src.module_utils.frink import IdealSet, enumerate_maximal_ideals, is_selective
from src.module_utils.odp import DeltaTable
from src.module_utils.orthoposet import FinOrthoPoset, members, transitive_closure

logger = logging.getLogger("odp-lab")


def subset_label(mask: int) -> str:
    """
    :param mask: Subset of the universe as a bitmask
    :type mask: int
    :return: Whitespace-free label such as "{0,2}" or "{}"
    :rtype: str
    """
    return "{" + ",".join(str(i) for i in members(mask)) + "}"


class SetFamily:
    """
    Duplicate-free family of subsets of {0..n-1}, members stored as ascending bitmasks.

    :param universe: Universe size n
    :type universe: int
    :param masks: Member subsets as bitmasks
    :type masks: Iterable[int]
    """

    def __init__(self, universe: int, masks: Iterable[int]):
        if universe < 0:
            raise ValueError(f"universe size must be non-negative, got {universe}")
        self.universe = universe
        self.members = tuple(sorted(set(int(mask) for mask in masks)))
        if any(mask < 0 or mask > self.full_mask for mask in self.members):
            raise StructureError(f"family member outside the universe of size {universe}")

    @property
    def full_mask(self) -> int:
        """
        :return: Bitmask of the whole universe
        :rtype: int
        """
        return (1 << self.universe) - 1

    def __len__(self) -> int:
        return len(self.members)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SetFamily):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"SetFamily(universe={self.universe}, size={len(self.members)})"

    def key(self) -> Tuple[int, Tuple[int, ...]]:
        """
        :return: Identity of the family, used for deduplication
        :rtype: Tuple[int, Tuple[int, ...]]
        """
        return (self.universe, self.members)

    def is_delta_closed(self) -> bool:
        """
        :return: True iff the family contains the universe and is closed under Δ
        :rtype: bool
        """
        present = set(self.members)
        if self.full_mask not in present:
            return False
        return all(a ^ b in present for a, b in combinations(self.members, 2))

    def to_bitstrings(self) -> List[str]:
        """
        :return: One n-character string per member, character i for element i
        :rtype: List[str]
        """
        return [
            "".join("1" if mask >> i & 1 else "0" for i in range(self.universe))
            for mask in self.members
        ]

    def to_odp(
        self, max_elements: int = DEFAULT_MAX_ELEMENTS, allow_large: bool = False
    ) -> Tuple[FinOrthoPoset, DeltaTable]:
        """
        Induces ⊆, set complement and set symmetric difference on the family.

        :param max_elements: Element cap
        :type max_elements: int
        :param allow_large: Accept families above the cap
        :type allow_large: bool
        :raises StructureError: If the family is not Δ-closed or misses the universe
        :return: Poset and Δ table, element i being the i-th member
        :rtype: Tuple[FinOrthoPoset, DeltaTable]
        """
        if not self.is_delta_closed():
            raise StructureError(
                "family must contain the universe and be closed under symmetric difference"
            )
        dtype = np.int64 if self.universe < 63 else object
        masks = np.array(self.members, dtype=dtype)
        leq = (masks[:, None] & ~masks[None, :]) == 0
        index = {mask: i for i, mask in enumerate(self.members)}
        perp = [index[mask ^ self.full_mask] for mask in self.members]
        table = np.searchsorted(masks, masks[:, None] ^ masks[None, :])
        poset = FinOrthoPoset(
            leq,
            perp,
            labels=[subset_label(mask) for mask in self.members],
            max_elements=max_elements,
            allow_large=allow_large,
        )
        return poset, DeltaTable(table)


def _check_size(count: int, max_elements: int, allow_large: bool) -> None:
    if count > max_elements and not allow_large:
        raise SizeLimitError(
            f"{count} elements exceed the cap of {max_elements}; pass the override to continue"
        )


def powerset_family(n: int) -> SetFamily:
    """
    :param n: Universe size, at least 1
    :type n: int
    :raises ValueError: If n < 1
    :return: All 2^n subsets
    :rtype: SetFamily
    """
    if n < 1:
        raise ValueError(f"powerset needs n >= 1, got {n}")
    return SetFamily(n, range(1 << n))


def even_sets_family(two_k: int) -> SetFamily:
    """
    :param two_k: Even universe size, at least 2
    :type two_k: int
    :raises ValueError: If the size is odd or smaller than 2
    :return: All subsets of even cardinality
    :rtype: SetFamily
    """
    if two_k < 2 or two_k % 2:
        raise ValueError(f"even-set family needs an even universe size >= 2, got {two_k}")
    return SetFamily(two_k, (mask for mask in range(1 << two_k) if bin(mask).count("1") % 2 == 0))


def powerset_odp(
    n: int, max_elements: int = DEFAULT_MAX_ELEMENTS, allow_large: bool = False
) -> Tuple[FinOrthoPoset, DeltaTable]:
    """
    Boolean algebra 2^n with ⊆, complement and symmetric difference.

    :param n: Universe size, at least 1
    :type n: int
    :param max_elements: Element cap
    :type max_elements: int
    :param allow_large: Accept results above the cap
    :type allow_large: bool
    :return: Poset and Δ table
    :rtype: Tuple[FinOrthoPoset, DeltaTable]
    """
    if n >= 1:
        _check_size(1 << n, max_elements, allow_large)
    return powerset_family(n).to_odp(max_elements, allow_large)


def even_sets_odp(
    two_k: int, max_elements: int = DEFAULT_MAX_ELEMENTS, allow_large: bool = False
) -> Tuple[FinOrthoPoset, DeltaTable]:
    """
    Even-cardinality subsets of a 2k-element set; 2^(2k-1) elements.

    :param two_k: Even universe size, at least 2
    :type two_k: int
    :param max_elements: Element cap
    :type max_elements: int
    :param allow_large: Accept results above the cap
    :type allow_large: bool
    :return: Poset and Δ table
    :rtype: Tuple[FinOrthoPoset, DeltaTable]
    """
    if two_k >= 2 and two_k % 2 == 0:
        _check_size(1 << (two_k - 1), max_elements, allow_large)
    return even_sets_family(two_k).to_odp(max_elements, allow_large)


def product_odp(
    p1: FinOrthoPoset,
    d1: DeltaTable,
    p2: FinOrthoPoset,
    d2: DeltaTable,
    max_elements: int = DEFAULT_MAX_ELEMENTS,
    allow_large: bool = False,
) -> Tuple[FinOrthoPoset, DeltaTable]:
    """
    Cartesian product with componentwise order, complement and Δ.
    The pair (i, j) gets index i * m2 + j.

    :param p1: First factor
    :type p1: FinOrthoPoset
    :param d1: Δ table of the first factor
    :type d1: DeltaTable
    :param p2: Second factor
    :type p2: FinOrthoPoset
    :param d2: Δ table of the second factor
    :type d2: DeltaTable
    :param max_elements: Element cap
    :type max_elements: int
    :param allow_large: Accept results above the cap
    :type allow_large: bool
    :return: Poset and Δ table of the product
    :rtype: Tuple[FinOrthoPoset, DeltaTable]
    """
    m1, m2 = p1.size, p2.size
    _check_size(m1 * m2, max_elements, allow_large)
    leq = np.kron(p1.leq.astype(np.int64), p2.leq.astype(np.int64)).astype(bool)
    perp = (p1.perp_array[:, None] * m2 + p2.perp_array[None, :]).reshape(-1)
    table = (d1.table[:, None, :, None] * m2 + d2.table[None, :, None, :]).reshape(
        m1 * m2, m1 * m2
    )
    labels = [f"({p1.label(i)},{p2.label(j)})" for i in range(m1) for j in range(m2)]
    poset = FinOrthoPoset(
        leq, perp, labels=labels, max_elements=max_elements, allow_large=allow_large
    )
    return poset, DeltaTable(table)


def delta_closure_family(n: int, generators: Iterable[int]) -> SetFamily:
    """
    Least Δ-closed family containing the generators and the universe: the span
    of the generators over GF(2), so its size is always a power of two.

    :param n: Universe size
    :type n: int
    :param generators: Generating subsets as bitmasks
    :type generators: Iterable[int]
    :raises StructureError: If a generator leaves the universe
    :return: The closed family
    :rtype: SetFamily
    """
    full = (1 << n) - 1
    span = {0}
    for generator in list(generators) + [full]:
        if generator < 0 or generator > full:
            raise StructureError(f"generator {generator} is not a subset of a {n}-element set")
        if generator not in span:
            span |= {member ^ generator for member in span}
    return SetFamily(n, span)


def enumerate_delta_subgroups(n: int) -> Iterator[SetFamily]:
    """
    All Δ-closed subfamilies of 2^n containing the universe, ordered by size
    then by member list.

    :param n: Universe size, at most 5
    :type n: int
    :raises ValueError: If n is out of range
    :return: Families in deterministic order
    :rtype: Iterator[SetFamily]
    """
    if not 1 <= n <= MAX_SUBGROUP_UNIVERSE:
        raise ValueError(f"subgroup enumeration needs 1 <= n <= {MAX_SUBGROUP_UNIVERSE}, got {n}")
    start = delta_closure_family(n, [])
    seen = {start.members: start}
    frontier = [start]
    while frontier:
        grown = []
        for family in frontier:
            present = set(family.members)
            for mask in range(1 << n):
                if mask in present:
                    continue
                candidate = delta_closure_family(n, list(family.members) + [mask])
                if candidate.members not in seen:
                    seen[candidate.members] = candidate
                    grown.append(candidate)
        frontier = grown
    logger.debug(f"Found {len(seen)} Δ-subgroups of 2^{n} containing the universe")
    yield from sorted(seen.values(), key=lambda family: (len(family), family.members))


def mo_orthoposet(n: int) -> FinOrthoPoset:
    """
    MO_n: bottom, n complementary pairs of atoms, top.

    :param n: Number of complementary atom pairs, at least 1
    :type n: int
    :raises ValueError: If n < 1
    :return: The orthomodular lattice MO_n
    :rtype: FinOrthoPoset
    """
    if n < 1:
        raise ValueError(f"MO_n needs n >= 1, got {n}")
    size = 2 * n + 2
    top = size - 1
    leq = np.eye(size, dtype=bool)
    leq[0, :] = True
    leq[:, top] = True
    perp = [top] + [i + 1 if i % 2 else i - 1 for i in range(1, top)] + [0]
    labels = ["0"] + [f"x{(i + 1) // 2}" + ("" if i % 2 else "'") for i in range(1, top)] + ["1"]
    return FinOrthoPoset(leq, perp, labels=labels)


def benzene_orthoposet() -> FinOrthoPoset:
    """
    The 6-element ring 0 < a < b < 1, 0 < b' < a' < 1: an orthoposet that is not orthomodular.

    :return: The benzene-ring orthoposet
    :rtype: FinOrthoPoset
    """
    covers = [(0, 1), (1, 2), (2, 5), (0, 3), (3, 4), (4, 5)]
    relation = np.zeros((6, 6), dtype=bool)
    for lower, upper in covers:
        relation[lower, upper] = True
    return FinOrthoPoset(
        transitive_closure(relation), [5, 4, 3, 2, 1, 0], labels=["0", "a", "b", "b'", "a'", "1"]
    )


@dataclass
class CorpusInstance:
    """
    One named ODP of the frozen corpus.
    """

    name: str
    poset: FinOrthoPoset
    delta: DeltaTable
    family: Optional[SetFamily] = None


def _base_name(family: SetFamily, index: int) -> str:
    if family == powerset_family(family.universe):
        return f"powerset-{family.universe}"
    if family.universe % 2 == 0 and family == even_sets_family(family.universe):
        return f"even-{family.universe}"
    return f"subgroup-{family.universe}-{index}"


def frozen_corpus(
    include_products: bool = True, max_elements: int = DEFAULT_MAX_ELEMENTS
) -> List[CorpusInstance]:
    """
    The frozen acceptance corpus: every Δ-subgroup family for n = 1..4 (these
    include powerset 1..4 and even-4), even-6, and every unordered pair product
    with fewer than `max_elements` elements.

    :param include_products: Append the pair products
    :type include_products: bool
    :param max_elements: Products must stay strictly below this size
    :type max_elements: int
    :return: Corpus instances in a fixed order
    :rtype: List[CorpusInstance]
    """
    families: Dict[Tuple[int, Tuple[int, ...]], CorpusInstance] = {}
    for n in range(1, 5):
        for index, family in enumerate(enumerate_delta_subgroups(n)):
            poset, delta = family.to_odp()
            families[family.key()] = CorpusInstance(_base_name(family, index), poset, delta, family)
    even_six = even_sets_family(6)
    if even_six.key() not in families:
        poset, delta = even_six.to_odp()
        families[even_six.key()] = CorpusInstance("even-6", poset, delta, even_six)
    base = list(families.values())
    corpus = list(base)
    if include_products:
        for i, first in enumerate(base):
            for second in base[i:]:
                if first.poset.size * second.poset.size >= max_elements:
                    continue
                poset, delta = product_odp(first.poset, first.delta, second.poset, second.delta)
                corpus.append(CorpusInstance(f"{first.name}*{second.name}", poset, delta))
    logger.info(f"Frozen corpus holds {len(corpus)} instances ({len(base)} base families)")
    return corpus


@dataclass
class Representation:
    """
    Embedding of an ODP into the subsets of its selective maximal ideals.

    e(a) is stored as a bitmask over the points: bit j is set iff a is not in points[j].
    """

    points: List[IdealSet]
    embedding: List[int]
    order_embedding: bool
    perp_ok: bool
    delta_ok: bool
    labels: Sequence[str] = field(default_factory=list)

    def embedding_bitstrings(self) -> List[str]:
        """
        :return: e(a) per element as a bitstring over the points
        :rtype: List[str]
        """
        return [
            "".join("1" if mask >> j & 1 else "0" for j in range(len(self.points)))
            for mask in self.embedding
        ]

    def to_dict(self) -> Dict[str, object]:
        """
        :return: Stable key-value tree of the representation
        :rtype: Dict[str, object]
        """
        return {
            "points": len(self.points),
            "order_embedding": self.order_embedding,
            "perp_ok": self.perp_ok,
            "delta_ok": self.delta_ok,
            "ideals": [ideal.to_bitstring() for ideal in self.points],
            "embedding": {
                label: bits for label, bits in zip(self.labels, self.embedding_bitstrings())
            },
        }


def representation(
    p: FinOrthoPoset,
    d: DeltaTable,
    node_budget: int = DEFAULT_NODE_BUDGET,
    ideals: Optional[List[IdealSet]] = None,
) -> Representation:
    """
    Q = selective maximal Frink ideals, e(a) = {I in Q : a not in I}.
    With Q empty the degenerate embedding is returned with every flag false.

    :param p: Verified orthoposet
    :type p: FinOrthoPoset
    :param d: Δ table of a verified ODP
    :type d: DeltaTable
    :param node_budget: Node budget of the ideal enumeration
    :type node_budget: int
    :param ideals: Maximal ideals already enumerated for p
    :type ideals: Optional[List[IdealSet]]
    :return: Points, embedding and quality flags
    :rtype: Representation
    """
    if ideals is None:
        ideals = enumerate_maximal_ideals(p, node_budget)
    points = [ideal for ideal in ideals if is_selective(p, ideal)]
    embedding = [
        sum(1 << j for j, ideal in enumerate(points) if a not in ideal) for a in range(p.size)
    ]
    if not points:
        logger.info("No selective maximal ideals: the embedding is degenerate")
        return Representation(points, embedding, False, False, False, p.labels)
    everything = (1 << len(points)) - 1
    codes = np.array(embedding, dtype=np.int64 if len(points) < 63 else object)
    order_embedding = bool(np.array_equal(p.leq, (codes[:, None] & ~codes[None, :]) == 0))
    perp_ok = bool(np.array_equal(codes[p.perp_array], codes ^ everything))
    delta_ok = bool(np.array_equal(codes[d.table], codes[:, None] ^ codes[None, :]))
    return Representation(points, embedding, order_embedding, perp_ok, delta_ok, p.labels)


def incompatibility_degree(p: FinOrthoPoset) -> int:
    """
    :param p: Verified orthoposet
    :type p: FinOrthoPoset
    :return: Number of unordered pairs {a, b} that are not compatible
    :rtype: int
    """
    return int(np.count_nonzero(np.triu(~compatibility_matrix(p), 1)))
