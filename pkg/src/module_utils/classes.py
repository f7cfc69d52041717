# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""
Membership predicates for the classes R, S and T, compatibility, and the
aggregated classification report.

"a ∧ b = 0" always means that the bottom element is the only common lower
bound of a and b. A pair without a meet is treated as "not zero".
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, NamedTuple, Optional, Tuple

import numpy as np

from src.module_utils.constants import CLASS_REPORT_FIELDS, DEFAULT_NODE_BUDGET
from src.module_utils.enums import BudgetExceededError, ConsistencyError
from src.module_utils.frink import (
    IdealSet,
    enumerate_maximal_ideals,
    is_selective,
    unrepresented_pair,
)
from src.module_utils.odp import DeltaTable
from src.module_utils.orthoposet import NO_ELEMENT, FinOrthoPoset, is_lattice

logger = logging.getLogger("odp-lab")


class Membership(NamedTuple):
    """
    Outcome of a class predicate: `witness` is None exactly when `holds` is True.
    """

    holds: bool
    witness: Optional[Any] = None


class SelectivityWitness(NamedTuple):
    """
    A maximal ideal that is not selective and the complement pair it fails on.
    """

    ideal: IdealSet
    pair: Tuple[int, int]


def zero_meet_matrix(p: FinOrthoPoset) -> np.ndarray:
    """
    :param p: Verified orthoposet
    :type p: FinOrthoPoset
    :return: zero[a, b] iff bottom is the only common lower bound of a and b
    :rtype: np.ndarray
    """
    return p.lower_counts == 1


def _first_pair(matrix: np.ndarray) -> Optional[Tuple[int, int]]:
    pairs = np.argwhere(matrix)
    return (int(pairs[0][0]), int(pairs[0][1])) if len(pairs) else None


def in_class_R(p: FinOrthoPoset, d: DeltaTable) -> Membership:
    """
    a ∧ b = 0 implies a <= b^⊥.

    :param p: Verified orthoposet
    :type p: FinOrthoPoset
    :param d: Δ table of a verified ODP
    :type d: DeltaTable
    :return: Membership with the first failing pair (a, b) in index order
    :rtype: Membership
    """
    del d
    failing = zero_meet_matrix(p) & ~p.leq[:, p.perp_array]
    witness = _first_pair(failing)
    return Membership(witness is None, witness)


def in_class_T(p: FinOrthoPoset, d: DeltaTable) -> Membership:
    """
    a ∧ b = a ∧ b^⊥ = 0 implies a <= b^⊥. Under that hypothesis the conclusion
    is equivalent to a = 0, and both readings are evaluated and compared.

    :param p: Verified orthoposet
    :type p: FinOrthoPoset
    :param d: Δ table of a verified ODP
    :type d: DeltaTable
    :raises ConsistencyError: If the two readings disagree on some pair
    :return: Membership with the first failing pair (a, b) in index order
    :rtype: Membership
    """
    del d
    zero = zero_meet_matrix(p)
    hypothesis = zero & zero[:, p.perp_array]
    failing = hypothesis & ~p.leq[:, p.perp_array]
    nonzero = hypothesis & (np.arange(p.size) != p.bottom)[:, None]
    if not np.array_equal(failing, nonzero):
        raise ConsistencyError(
            f"class T readings disagree at {_first_pair(failing != nonzero)}; "
            "the input is not a verified ODP"
        )
    witness = _first_pair(failing)
    return Membership(witness is None, witness)


def _selectivity(p: FinOrthoPoset, ideals: List[IdealSet]) -> Membership:
    for ideal in ideals:
        pair = unrepresented_pair(p, ideal)
        if pair is not None:
            return Membership(False, SelectivityWitness(ideal, pair))
    return Membership(True, None)


def in_class_S(
    p: FinOrthoPoset, d: DeltaTable, node_budget: int = DEFAULT_NODE_BUDGET
) -> Membership:
    """
    Every maximal Frink ideal is selective.

    :param p: Verified orthoposet
    :type p: FinOrthoPoset
    :param d: Δ table of a verified ODP
    :type d: DeltaTable
    :param node_budget: Node budget of the ideal enumeration
    :type node_budget: int
    :raises BudgetExceededError: If the ideals cannot be enumerated within budget
    :return: Membership with the first non-selective ideal and its unrepresented pair
    :rtype: Membership
    """
    del d
    return _selectivity(p, enumerate_maximal_ideals(p, node_budget))


def compatibility_matrix(p: FinOrthoPoset) -> np.ndarray:
    """
    compatible[a, b] iff a = a1 ∨ c and b = b1 ∨ c for pairwise orthogonal a1, b1, c.
    Exhaustive over c: every x orthogonal to c whose join with c exists yields the
    candidate x ∨ c, and two candidates are realized together iff their x parts
    are orthogonal.

    :param p: Verified orthoposet
    :type p: FinOrthoPoset
    :return: m×m boolean matrix
    :rtype: np.ndarray
    """
    joins, leq, perp = p.join_table, p.leq, p.perp_array
    result = np.zeros((p.size, p.size), dtype=bool)
    for c in range(p.size):
        parts = np.flatnonzero(leq[:, perp[c]] & (joins[:, c] != NO_ELEMENT))
        tops = joins[parts, c]
        rows, cols = np.nonzero(leq[np.ix_(parts, perp[parts])])
        result[tops[rows], tops[cols]] = True
    return result


def compatible(p: FinOrthoPoset, d: DeltaTable, a: int, b: int) -> bool:
    """
    :param p: Verified orthoposet
    :type p: FinOrthoPoset
    :param d: Δ table of a verified ODP
    :type d: DeltaTable
    :param a: Element index
    :type a: int
    :param b: Element index
    :type b: int
    :return: True iff a and b admit an orthogonal decomposition with a common part
    :rtype: bool
    """
    del d
    p.check_index(a, b)
    return bool(compatibility_matrix(p)[a, b])


def lattice_witness(p: FinOrthoPoset) -> Optional[Tuple[int, int]]:
    """
    :param p: Verified orthoposet
    :type p: FinOrthoPoset
    :return: The first pair lacking a meet or a join, None for lattices
    :rtype: Optional[Tuple[int, int]]
    """
    return _first_pair((p.meet_table == NO_ELEMENT) | (p.join_table == NO_ELEMENT))


def distributivity_witness(p: FinOrthoPoset) -> Optional[Tuple[int, int, int]]:
    """
    :param p: Orthoposet that is a lattice
    :type p: FinOrthoPoset
    :return: The first triple with a ∧ (b ∨ c) != (a ∧ b) ∨ (a ∧ c), None if distributive
    :rtype: Optional[Tuple[int, int, int]]
    """
    meets, joins = p.meet_table, p.join_table
    for a in range(p.size):
        left = meets[a][joins]
        right = joins[meets[a][:, None], meets[a][None, :]]
        pair = _first_pair(left != right)
        if pair is not None:
            return (a,) + pair
    return None


@dataclass
class ClassReport:
    """
    Classification of one ODP. `in_S`, `ideal_count` and `selective_count` are
    None when the ideal enumeration ran out of budget.
    """

    name: str
    size: int
    in_R: bool
    in_S: Optional[bool]
    in_T: bool
    is_lattice: bool
    is_boolean: bool
    ideal_count: Optional[int]
    selective_count: Optional[int]
    witnesses: Dict[str, Any] = field(default_factory=dict)

    def chain_violations(self) -> List[str]:
        """
        :return: The broken links of in_R => in_S => in_T; undecided links are skipped
        :rtype: List[str]
        """
        broken = []
        if self.in_S is None:
            if self.in_R and not self.in_T:
                broken.append("in_R => in_T")
            return broken
        if self.in_R and not self.in_S:
            broken.append("in_R => in_S")
        if self.in_S and not self.in_T:
            broken.append("in_S => in_T")
        return broken

    def mismatches(self, expectations: Dict[str, Any]) -> List[str]:
        """
        :param expectations: Expected values keyed by report field
        :type expectations: Dict[str, Any]
        :return: One message per field whose value differs from the expectation
        :rtype: List[str]
        """
        values = self.to_dict()
        return [
            f"{key}: expected {_show(expected)}, got {_show(values[key])}"
            for key, expected in expectations.items()
            if values[key] != expected
        ]

    def to_dict(self) -> Dict[str, Any]:
        """
        :return: Report fields in a fixed order
        :rtype: Dict[str, Any]
        """
        data: Dict[str, Any] = {"name": self.name, "elements": self.size}
        for key in CLASS_REPORT_FIELDS:
            data[key] = getattr(self, key)
        data["witnesses"] = dict(self.witnesses)
        return data


def _show(value: Any) -> str:
    if value is None:
        return "unknown"
    if isinstance(value, bool):
        return str(value).lower()
    return str(value)


def classify(
    p: FinOrthoPoset,
    d: DeltaTable,
    node_budget: int = DEFAULT_NODE_BUDGET,
    name: str = "",
    ideals: Optional[List[IdealSet]] = None,
) -> ClassReport:
    """
    Evaluates every predicate and collects a labelled witness for each failed one.

    :param p: Verified orthoposet
    :type p: FinOrthoPoset
    :param d: Δ table of a verified ODP
    :type d: DeltaTable
    :param node_budget: Node budget of the ideal enumeration
    :type node_budget: int
    :param name: Name carried into the report
    :type name: str
    :param ideals: Maximal ideals already enumerated for p, enumerated here when None
    :type ideals: Optional[List[IdealSet]]
    :return: The classification report
    :rtype: ClassReport
    """
    witnesses: Dict[str, Any] = {}
    labels = p.label

    class_r = in_class_R(p, d)
    if not class_r.holds:
        witnesses["in_R"] = [labels(i) for i in class_r.witness]
    try:
        if ideals is None:
            ideals = enumerate_maximal_ideals(p, node_budget)
        class_s = _selectivity(p, ideals)
        in_s: Optional[bool] = class_s.holds
        ideal_count: Optional[int] = len(ideals)
        selective_count: Optional[int] = sum(1 for ideal in ideals if is_selective(p, ideal))
        if not class_s.holds:
            witnesses["in_S"] = {
                "ideal": [labels(i) for i in class_s.witness.ideal.elements],
                "pair": [labels(i) for i in class_s.witness.pair],
            }
    except BudgetExceededError as ex:
        logger.warning(f"in_S is unknown for {name or 'input'}: {ex}")
        in_s, ideal_count, selective_count = None, None, None
    class_t = in_class_T(p, d)
    if not class_t.holds:
        witnesses["in_T"] = [labels(i) for i in class_t.witness]

    lattice_pair = lattice_witness(p)
    triple = distributivity_witness(p) if lattice_pair is None else None
    if lattice_pair is not None:
        witnesses["is_lattice"] = [labels(i) for i in lattice_pair]
        witnesses["is_boolean"] = [labels(i) for i in lattice_pair]
    elif triple is not None:
        witnesses["is_boolean"] = [labels(i) for i in triple]

    report = ClassReport(
        name=name,
        size=p.size,
        in_R=class_r.holds,
        in_S=in_s,
        in_T=class_t.holds,
        is_lattice=lattice_pair is None and is_lattice(p),
        is_boolean=lattice_pair is None and triple is None,
        ideal_count=ideal_count,
        selective_count=selective_count,
        witnesses=witnesses,
    )
    logger.debug(f"Classified {name or 'input'}: {report.to_dict()}")
    return report
