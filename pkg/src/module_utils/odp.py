# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""
The symmetric-difference structure of an ODP: verification of the three defining
conditions, the orthomodular law and the derived Δ identities.
"""

import logging
from typing import Optional, Sequence

import numpy as np

from src.module_utils.constants import (
    DEFAULT_MAX_ELEMENTS,
    DEFAULT_SAMPLE_TRIPLES,
    DEFAULT_WITNESS_LIMIT,
    DELTA_IDENTITIES,
    ODP_AXIOMS,
    ORTHOMODULAR_LAW,
)
from src.module_utils.enums import StructureError, ViolationReport
from src.module_utils.orthoposet import FinOrthoPoset, NO_ELEMENT

logger = logging.getLogger("odp-lab")


class DeltaTable:
    """
    Total binary operation table for Δ, stored as a read-only m×m index array.

    :param table: m×m entries, each a valid element index
    :type table: Sequence[Sequence[int]]
    """

    def __init__(self, table: Sequence[Sequence[int]]):
        array = np.array(table, dtype=np.int64)
        if array.ndim != 2 or array.shape[0] != array.shape[1] or array.shape[0] < 1:
            raise StructureError(f"delta table must be square and non-empty, got {array.shape}")
        size = int(array.shape[0])
        if array.min() < 0 or array.max() >= size:
            raise StructureError("delta table entries must be element indices")
        array.flags.writeable = False
        self.size = size
        self.table = array

    def __repr__(self) -> str:
        return f"DeltaTable(size={self.size})"

    def apply(self, a: int, b: int) -> int:
        """
        :param a: Element index
        :type a: int
        :param b: Element index
        :type b: int
        :return: a Δ b
        :rtype: int
        """
        return int(self.table[a, b])


def _check_sizes(p: FinOrthoPoset, d: DeltaTable) -> None:
    if p.size != d.size:
        raise StructureError(f"delta table has size {d.size} but the poset has {p.size} elements")


def verify_odp(
    p: FinOrthoPoset,
    d: DeltaTable,
    witness_limit: Optional[int] = DEFAULT_WITNESS_LIMIT,
    max_elements: int = DEFAULT_MAX_ELEMENTS,
    sample_triples: int = DEFAULT_SAMPLE_TRIPLES,
    seed: int = 0,
) -> ViolationReport:
    """
    Checks associativity, x Δ 1 = 1 Δ x = x^⊥ (top_complement) and
    x, y <= z implies x Δ y <= z (upper_bound).

    Above `max_elements` the triple conditions are checked on `sample_triples`
    seeded random triples and the report is marked sampled.

    :param p: Verified orthoposet
    :type p: FinOrthoPoset
    :param d: Total Δ table
    :type d: DeltaTable
    :param witness_limit: Maximum witnesses per axiom
    :type witness_limit: Optional[int]
    :param max_elements: Size above which triple checks are sampled
    :type max_elements: int
    :param sample_triples: Number of sampled triples
    :type sample_triples: int
    :param seed: Seed of the triple sampler
    :type seed: int
    :raises StructureError: If the table and the poset differ in size
    :return: Empty report iff the structure is an ODP
    :rtype: ViolationReport
    """
    _check_sizes(p, d)
    report = ViolationReport("odp", witness_limit)
    table, leq, perp = d.table, p.leq, p.perp_array

    for x in range(p.size):
        if table[x, p.top] != perp[x] or table[p.top, x] != perp[x]:
            if not report.add(
                "top_complement",
                (x,),
                f"{p.label(x)} Δ 1 = {p.label(table[x, p.top])}, "
                f"1 Δ {p.label(x)} = {p.label(table[p.top, x])}, "
                f"expected {p.label(perp[x])}",
            ):
                break

    if p.size <= max_elements:
        for x in range(p.size):
            left = table[table[x], :]
            right = table[x][table]
            for y, z in np.argwhere(left != right):
                if not report.add("associativity", (x, y, z), ODP_AXIOMS["associativity"]):
                    break
            bounded = leq[x][None, :] & leq & ~leq[table[x], :]
            for y, z in np.argwhere(bounded):
                if not report.add("upper_bound", (x, y, z), ODP_AXIOMS["upper_bound"]):
                    break
    else:
        logger.warning(
            f"{p.size} elements exceed {max_elements}: sampling {sample_triples} triples "
            f"with seed {seed}"
        )
        rng = np.random.default_rng(seed)
        triples = rng.integers(0, p.size, size=(sample_triples, 3))
        triples = triples[np.lexsort((triples[:, 2], triples[:, 1], triples[:, 0]))]
        x, y, z = triples[:, 0], triples[:, 1], triples[:, 2]
        for index in np.flatnonzero(table[table[x, y], z] != table[x, table[y, z]]):
            if not report.add("associativity", tuple(triples[index]), "sampled"):
                break
        bounded = leq[x, z] & leq[y, z] & ~leq[table[x, y], z]
        for index in np.flatnonzero(bounded):
            if not report.add("upper_bound", tuple(triples[index]), "sampled"):
                break
        report.sampled = True
        report.facts["sampled_triples"] = sample_triples
        report.facts["seed"] = seed

    if not report.is_empty():
        logger.info(f"ODP axioms violated: {', '.join(report.axioms())}")
    return report


def check_orthomodularity(
    p: FinOrthoPoset,
    d: Optional[DeltaTable] = None,
    witness_limit: Optional[int] = DEFAULT_WITNESS_LIMIT,
) -> ViolationReport:
    """
    For every x <= y: meet(y, x^⊥) exists, join(x, meet(y, x^⊥)) exists and equals y.
    The Δ table is not used by the law itself; it may be omitted to check plain orthoposets.

    :param p: Verified orthoposet
    :type p: FinOrthoPoset
    :param d: Optional Δ table, only size-checked
    :type d: Optional[DeltaTable]
    :param witness_limit: Maximum witnesses kept
    :type witness_limit: Optional[int]
    :return: Report over the "orthomodular" axiom, witnesses (x, y)
    :rtype: ViolationReport
    """
    if d is not None:
        _check_sizes(p, d)
    report = ViolationReport("orthomodularity", witness_limit)
    pairs = np.argwhere(p.leq)
    xs, ys = pairs[:, 0], pairs[:, 1]
    inner = p.meet_table[ys, p.perp_array[xs]]
    outer = np.where(inner == NO_ELEMENT, NO_ELEMENT, p.join_table[xs, np.maximum(inner, 0)])
    for index in np.flatnonzero(outer != ys):
        if not report.add("orthomodular", (xs[index], ys[index]), ORTHOMODULAR_LAW):
            break
    return report


def delta_identities_report(
    p: FinOrthoPoset,
    d: DeltaTable,
    witness_limit: Optional[int] = DEFAULT_WITNESS_LIMIT,
) -> ViolationReport:
    """
    Checks x Δ x = 0 and x Δ 0 = 0 Δ x = x, and records in `facts["commutative"]`
    whether Δ happens to be commutative on this instance.

    :param p: Verified orthoposet
    :type p: FinOrthoPoset
    :param d: Δ table of a verified ODP
    :type d: DeltaTable
    :param witness_limit: Maximum witnesses per identity
    :type witness_limit: Optional[int]
    :return: Report over the identities plus the commutativity flag
    :rtype: ViolationReport
    """
    _check_sizes(p, d)
    report = ViolationReport("delta_identities", witness_limit)
    table = d.table
    elements = np.arange(p.size)
    checks = (
        ("self_inverse", np.diag(table) != p.bottom),
        ("right_identity", table[:, p.bottom] != elements),
        ("left_identity", table[p.bottom, :] != elements),
    )
    for name, failures in checks:
        for x in np.flatnonzero(failures):
            if not report.add(name, (x,), DELTA_IDENTITIES[name]):
                break
    asymmetric = np.argwhere(np.triu(table != table.T, 1))
    report.facts["commutative"] = not len(asymmetric)
    if len(asymmetric):
        report.facts["noncommuting_pair"] = [int(v) for v in asymmetric[0]]
    return report
