# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""
Acceptance properties run by corpus-check. Each property keeps a tally of the
checks it made; a property passes when none of its checks failed.

Instance properties (1-7, 9-11) run once per corpus instance and are merged;
the strictness checks on the infinite families (8), the set-algebra oracles (12)
and the classification goldens (13) run once per corpus-check.
"""

import logging
import random
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from src.module_utils.classes import classify, compatibility_matrix
from src.module_utils.constants import (
    ALL_IDEALS_MAX_ELEMENTS,
    BRUTE_FORCE_MAX_ELEMENTS,
    DEFAULT_FRAGMENT_CAP,
    DEFAULT_NODE_BUDGET,
)
from src.module_utils.construct import (
    CorpusInstance,
    even_sets_odp,
    powerset_odp,
    representation,
)
from src.module_utils.enums import BudgetExceededError, ClassId, ConsistencyError, Verdict
from src.module_utils.epset import (
    A1,
    A2,
    CosetFamily,
    EPSet,
    FamilyMember,
    build_R_example,
    build_T_example,
    class_R_check,
    class_witness_search,
    family_contains,
    fragment_lower_bound_oracle,
    meets_zero,
    nonzero_lower_bound_witness,
)
from src.module_utils.frink import (
    IdealSet,
    enumerate_frink_ideals,
    enumerate_maximal_ideals,
    extend_to_maximal,
    is_delta_closed,
    is_down_closed,
    is_maximal,
    is_selective,
    maximal_ideals_by_filter,
)
from src.module_utils.odp import check_orthomodularity, delta_identities_report, verify_odp
from src.module_utils.orthoposet import NO_ELEMENT, verify_orthoposet

logger = logging.getLogger("odp-lab")

PROPERTY_NAMES = {
    1: "odp axioms",
    2: "orthomodularity",
    3: "delta identities",
    4: "maximal ideals match brute force",
    5: "selective ideals are maximal, proper ideals extend",
    6: "ideals are delta-closed",
    7: "class chain R => S => T",
    8: "R and T differ on the infinite families",
    9: "lattices in T are Boolean",
    10: "set representation on R",
    11: "compatibility matches meet existence on R",
    12: "eventually periodic set oracles",
    13: "classification goldens",
}

INSTANCE_PROPERTIES = (1, 2, 3, 4, 5, 6, 7, 9, 10, 11)
FAILURE_LIMIT = 5
EPSET_PAIRS = 1000
TRUNCATION_LENGTH = 600
ORACLE_BOUNDS = (12, 24, 36)
ORACLE_SAMPLES = 25


@dataclass
class PropertyTally:
    """
    Outcome of one acceptance property: checks made, failed and skipped,
    and the first failures.
    """

    number: int
    name: str
    checked: int = 0
    failed: int = 0
    skipped: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        """
        :return: True iff no check failed
        :rtype: bool
        """
        return self.failed == 0

    def record(self, ok: bool, subject: str, detail: str = "") -> bool:
        """
        :param ok: Outcome of the check
        :type ok: bool
        :param subject: What was checked, usually an instance name
        :type subject: str
        :param detail: What failed
        :type detail: str
        :return: The outcome, for chaining
        :rtype: bool
        """
        self.checked += 1
        if not ok:
            self.failed += 1
            if len(self.failures) < FAILURE_LIMIT:
                self.failures.append(f"{subject}: {detail}" if detail else subject)
        return ok

    def skip(self, count: int = 1) -> None:
        """
        :param count: Number of checks that could not be made
        :type count: int
        """
        self.skipped += count

    def merge(self, other: "PropertyTally") -> None:
        """
        :param other: Tally of the same property on other inputs
        :type other: PropertyTally
        """
        self.checked += other.checked
        self.failed += other.failed
        self.skipped += other.skipped
        room = FAILURE_LIMIT - len(self.failures)
        self.failures.extend(other.failures[: max(room, 0)])

    def to_dict(self) -> Dict[str, Any]:
        """
        :return: Tally fields in a fixed order
        :rtype: Dict[str, Any]
        """
        return {
            "number": self.number,
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "failed": self.failed,
            "skipped": self.skipped,
            "failures": list(self.failures),
        }


def new_tally(number: int) -> PropertyTally:
    """
    :param number: Property number
    :type number: int
    :return: Empty tally for the property
    :rtype: PropertyTally
    """
    return PropertyTally(number, PROPERTY_NAMES[number])


def _ideal_checks(
    instance: CorpusInstance, tallies: Dict[int, PropertyTally], ideals: List[IdealSet]
) -> None:
    p, d, name = instance.poset, instance.delta, instance.name
    for ideal in ideals:
        if is_selective(p, ideal):
            tallies[5].record(
                is_maximal(p, ideal), name, f"selective ideal {ideal.to_bitstring()} not maximal"
            )
        if p.size <= BRUTE_FORCE_MAX_ELEMENTS:
            extended = extend_to_maximal(p, ideal)
            tallies[5].record(
                ideal.mask & ~extended.mask == 0 and is_maximal(p, extended),
                name,
                f"extension of {ideal.to_bitstring()} is not a maximal superset",
            )
        tallies[6].record(
            is_delta_closed(d, ideal) and is_down_closed(p, ideal),
            name,
            f"ideal {ideal.to_bitstring()} not closed",
        )


def check_instance(
    instance: CorpusInstance, node_budget: int = DEFAULT_NODE_BUDGET
) -> Dict[int, PropertyTally]:
    """
    Runs the per-instance properties on one corpus instance.

    :param instance: Corpus instance
    :type instance: CorpusInstance
    :param node_budget: Node budget of every ideal enumeration
    :type node_budget: int
    :return: Tallies keyed by property number
    :rtype: Dict[int, PropertyTally]
    """
    p, d, name = instance.poset, instance.delta, instance.name
    tallies = {number: new_tally(number) for number in INSTANCE_PROPERTIES}

    axioms = verify_orthoposet(p)
    if axioms.is_empty():
        axioms = verify_odp(p, d)
    if not tallies[1].record(axioms.is_empty(), name, ", ".join(axioms.axioms())):
        for number in INSTANCE_PROPERTIES[1:]:
            tallies[number].skip()
        return tallies
    tallies[2].record(check_orthomodularity(p, d).is_empty(), name)
    identities = delta_identities_report(p, d)
    tallies[3].record(identities.is_empty(), name, ", ".join(identities.axioms()))

    try:
        maximal = enumerate_maximal_ideals(p, node_budget)
    except BudgetExceededError as ex:
        logger.warning(f"{name}: {ex}")
        maximal = None
    if maximal is None:
        tallies[4].skip()
    elif p.size <= BRUTE_FORCE_MAX_ELEMENTS:
        tallies[4].record(maximal == maximal_ideals_by_filter(p), name)

    try:
        ideals = maximal
        if p.size <= ALL_IDEALS_MAX_ELEMENTS:
            ideals = enumerate_frink_ideals(p, node_budget)
    except BudgetExceededError as ex:
        logger.warning(f"{name}: {ex}")
        ideals = maximal
    if ideals is None:
        tallies[5].skip()
        tallies[6].skip()
    else:
        _ideal_checks(instance, tallies, ideals)

    try:
        report = classify(p, d, node_budget, name, ideals=maximal)
    except ConsistencyError as ex:
        tallies[7].record(False, name, str(ex))
        return tallies
    if report.in_S is None:
        tallies[7].record(False, name, "in_S unknown")
    else:
        tallies[7].record(not report.chain_violations(), name, ", ".join(report.chain_violations()))
    if report.in_T and report.is_lattice:
        tallies[9].record(report.is_boolean, name)

    compatible = compatibility_matrix(p)
    tallies[11].record(
        bool(np.array_equal(compatible, compatible.T))
        and bool(compatible[np.arange(p.size), p.perp_array].all()),
        name,
        "compatibility is not symmetric or misses a complement pair",
    )
    if report.in_R and maximal is not None:
        result = representation(p, d, node_budget, ideals=maximal)
        tallies[10].record(
            result.order_embedding and result.perp_ok and result.delta_ok,
            name,
            f"order={result.order_embedding} perp={result.perp_ok} delta={result.delta_ok}",
        )
        tallies[11].record(
            bool(np.array_equal(compatible, p.meet_table != NO_ELEMENT)),
            name,
            "compatible pairs differ from pairs with a meet",
        )
    return tallies


def check_infinite_families(fragment_cap: int = DEFAULT_FRAGMENT_CAP) -> PropertyTally:
    """
    R is proven in class R; the T family is refuted in class R by (A1, A2); the
    class T scan returns either nothing or a pair that the exact procedures confirm.

    :param fragment_cap: Cap of the class R fragment scan
    :type fragment_cap: int
    :return: Tally of property 8
    :rtype: PropertyTally
    """
    tally = new_tally(8)
    r_family, t_family = build_R_example(), build_T_example()
    tally.record(class_R_check(r_family).verdict is Verdict.PROVEN, "R", "class R not proven")
    tally.record(class_R_check(t_family).verdict is Verdict.REFUTED, "T", "class R not refuted")

    witness = class_witness_search(t_family, 12, ClassId.R, fragment_cap)
    tally.record(
        witness is not None
        and t_family.value(witness.a) == A1
        and t_family.value(witness.b) == A2,
        "T",
        f"class R witness {witness}",
    )
    witness = class_witness_search(t_family, 30, ClassId.T, fragment_cap)
    if witness is not None:
        a, b = t_family.value(witness.a), t_family.value(witness.b)
        tally.record(
            meets_zero(t_family, a, b) and meets_zero(t_family, a, ~b) and not a.is_empty(),
            "T",
            f"class T witness {witness} is not a counterexample",
        )
        logger.info(
            f"T family class T counterexample: {t_family.describe(witness.a)}, "
            f"{t_family.describe(witness.b)}"
        )
    tally.record(family_contains(t_family, A1 & A2) is None, "T", "A1 ∩ A2 is a member")
    return tally


def random_epset(rng: random.Random, max_period: int = 12, max_threshold: int = 20) -> EPSet:
    """
    :param rng: Seeded generator
    :type rng: random.Random
    :param max_period: Largest period drawn
    :type max_period: int
    :param max_threshold: Largest prefix length drawn
    :type max_threshold: int
    :return: A random eventually periodic set
    :rtype: EPSet
    """
    period = rng.randint(1, max_period)
    threshold = rng.randint(0, max_threshold)
    prefix = rng.getrandbits(threshold) if threshold else 0
    return EPSet(period, threshold, prefix, rng.getrandbits(period))


def _random_member(rng: random.Random, family: CosetFamily, bound: int) -> FamilyMember:
    positions = family.fragment_positions(bound)
    return FamilyMember(
        rng.randrange(len(family.base)),
        EPSet.finite(n for n in positions if rng.random() < 0.5),
    )


def _pointwise(s: EPSet, length: int) -> np.ndarray:
    return np.array(s.truncate(length), dtype=bool)


def check_epset_oracles(seed: int = 0) -> PropertyTally:
    """
    Set operations against truncated pointwise computation on seeded random pairs;
    membership round trips; the zero-meet procedure against the fragment oracle.

    :param seed: Seed of the random inputs
    :type seed: int
    :return: Tally of property 12
    :rtype: PropertyTally
    """
    tally = new_tally(12)
    rng = random.Random(seed)
    for index in range(EPSET_PAIRS):
        s1, s2 = random_epset(rng), random_epset(rng)
        left, right = _pointwise(s1, TRUNCATION_LENGTH), _pointwise(s2, TRUNCATION_LENGTH)
        agree = (
            np.array_equal(_pointwise(~s1, TRUNCATION_LENGTH), ~left)
            and np.array_equal(_pointwise(s1 | s2, TRUNCATION_LENGTH), left | right)
            and np.array_equal(_pointwise(s1 & s2, TRUNCATION_LENGTH), left & right)
            and np.array_equal(_pointwise(s1 ^ s2, TRUNCATION_LENGTH), left ^ right)
            and np.array_equal(_pointwise(s1 - s2, TRUNCATION_LENGTH), left & ~right)
        )
        tally.record(agree, f"pair {index}", f"{s1.to_literal()} and {s2.to_literal()}")

    for family in (build_R_example(), build_T_example()):
        for index, base in enumerate(family.base):
            exceptions = EPSet.finite(
                n for n in family.fragment_positions(60) if rng.random() < 0.3
            )
            found = family_contains(family, base ^ exceptions)
            tally.record(
                found == FamilyMember(index, exceptions),
                family.name,
                f"membership of {family.describe(FamilyMember(index, exceptions))}",
            )
        for bound in ORACLE_BOUNDS:
            for _ in range(ORACLE_SAMPLES):
                s = family.value(_random_member(rng, family, bound)) & family.value(
                    _random_member(rng, family, bound)
                )
                tally.record(
                    _oracle_agrees(family, s, bound),
                    family.name,
                    f"lower bounds of {s.to_literal()} with B={bound}",
                )
    return tally


def _oracle_agrees(family: CosetFamily, s: EPSet, bound: int) -> bool:
    oracle = fragment_lower_bound_oracle(family, s, bound)
    witness: Optional[FamilyMember] = nonzero_lower_bound_witness(family, s)
    if oracle is not None and witness is None:
        return False
    if witness is None:
        return True
    value = family.value(witness)
    length = TRUNCATION_LENGTH + value.threshold + s.threshold
    inside = _pointwise(value, length)
    return bool(inside.any()) and not bool((inside & ~_pointwise(s, length)).any())


def check_goldens(node_budget: int = DEFAULT_NODE_BUDGET) -> Dict[int, PropertyTally]:
    """
    Classification of the even-set ODP on four points and of the power sets up to 2^4,
    and the empty representation of the even-set ODP.

    :param node_budget: Node budget of the ideal enumerations
    :type node_budget: int
    :return: Tallies of properties 10 and 13
    :rtype: Dict[int, PropertyTally]
    """
    goldens, representations = new_tally(13), new_tally(10)
    p, d = even_sets_odp(4)
    report = classify(p, d, node_budget, "even-4")
    expected = {
        "in_R": False,
        "in_S": False,
        "in_T": False,
        "is_lattice": True,
        "is_boolean": False,
        "ideal_count": 6,
    }
    goldens.record(
        not report.mismatches(expected), "even-4", "; ".join(report.mismatches(expected))
    )
    goldens.record(
        report.witnesses.get("in_R") == ["{0,1}", "{0,2}"]
        and report.witnesses.get("in_T") == ["{0,1}", "{0,2}"],
        "even-4",
        f"witnesses {report.witnesses}",
    )
    representations.record(
        not representation(p, d, node_budget).points, "even-4", "selective ideals found"
    )
    for n in range(1, 5):
        p, d = powerset_odp(n)
        report = classify(p, d, node_budget, f"powerset-{n}")
        expected = {
            "in_R": True,
            "in_S": True,
            "in_T": True,
            "is_lattice": True,
            "is_boolean": True,
            "ideal_count": n,
            "selective_count": n,
        }
        goldens.record(
            not report.mismatches(expected),
            f"powerset-{n}",
            "; ".join(report.mismatches(expected)),
        )
    return {10: representations, 13: goldens}
