# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""
Subcommand module answering queries on eventually periodic sets and on the two
infinite coset families R and T.
"""

import logging
from typing import Any, Callable, Dict, List

from src.module_utils.enums import ClassId, ExitCode, OutputFormat, StructureError, Verdict
from src.module_utils.epset import (
    FAMILIES,
    CosetFamily,
    class_R_check,
    class_witness_search,
    evaluate,
    family_contains,
    meets_zero,
    nonzero_lower_bound_witness,
    set_name,
)
from src.module_utils.odp_lab import OdpLab

DOCUMENTATION = r"""
---
module: epset_query
short_description: Evaluates set expressions and queries the infinite families R and T
description:
    - eval EXPR prints the canonical literal of an expression
    - member FAMILY EXPR prints the unique base set and finite exception set, or no
    - meets-zero FAMILY EXPR EXPR decides whether the empty set is the only member below both
    - lower-bound FAMILY EXPR prints a nonempty member contained in the set, or no
    - witness-search FAMILY scans the finite fragment with exceptions below the fragment
      bound for a pair violating the class R or class T implication
options:
    class_id:
        description: R or T, the implication witness-search refutes
        type: str
        default: R
    fragment_bound:
        description: Exclusive bound of the exception positions
        type: int
    fragment_cap:
        description: Maximum number of exception positions the R scan enumerates
        type: int
"""

EXAMPLES = r"""
odplab epset eval "symdiff(A1,A2)"
odplab epset member R "symdiff(A1,{7})"
odplab epset meets-zero T A1 A2
odplab epset witness-search T --class R --fragment-bound 12
"""


class EPSetQuery(OdpLab):
    """
    Dispatches the epset verbs.
    """

    def _arguments(self, count: int) -> List[str]:
        verb, arguments = self.config.query[0], list(self.config.query[1:])
        if len(arguments) != count:
            raise StructureError(f"epset {verb} takes {count} argument(s), got {len(arguments)}")
        return arguments

    @staticmethod
    def _family(name: str) -> CosetFamily:
        if name.upper() not in FAMILIES:
            raise StructureError(f"unknown family {name!r}; use one of {', '.join(FAMILIES)}")
        return FAMILIES[name.upper()]()

    def _eval(self) -> Dict[str, Any]:
        (expression,) = self._arguments(1)
        value = evaluate(expression)
        return {
            "verb": "eval",
            "expression": expression,
            "literal": value.to_literal(),
            "name": set_name(value),
            "finite": value.is_finite(),
            "min_element": value.min_element(),
        }

    def _member(self) -> Dict[str, Any]:
        family_name, expression = self._arguments(2)
        family = self._family(family_name)
        found = family_contains(family, evaluate(expression))
        return {
            "verb": "member",
            "family": family.name,
            "expression": expression,
            "member": family.describe(found) if found is not None else None,
            "base": family.base_name(found.base) if found is not None else None,
            "exceptions": str(found.exceptions) if found is not None else None,
        }

    def _meets_zero(self) -> Dict[str, Any]:
        family_name, first, second = self._arguments(3)
        family = self._family(family_name)
        a, b = evaluate(first), evaluate(second)
        zero = meets_zero(family, a, b)
        below = None if zero else nonzero_lower_bound_witness(family, a & b)
        return {
            "verb": "meets-zero",
            "family": family.name,
            "a": first,
            "b": second,
            "zero": zero,
            "lower_bound": family.describe(below) if below is not None else None,
        }

    def _lower_bound(self) -> Dict[str, Any]:
        family_name, expression = self._arguments(2)
        family = self._family(family_name)
        below = nonzero_lower_bound_witness(family, evaluate(expression))
        return {
            "verb": "lower-bound",
            "family": family.name,
            "expression": expression,
            "lower_bound": family.describe(below) if below is not None else None,
        }

    def _witness_search(self) -> Dict[str, Any]:
        (family_name,) = self._arguments(1)
        family = self._family(family_name)
        class_id = ClassId(self.config.class_id or "R")
        verdict = class_R_check(family).verdict if class_id is ClassId.R else None
        witness = class_witness_search(
            family, self.config.fragment_bound, class_id, self.config.fragment_cap
        )
        if verdict is Verdict.PROVEN and witness is not None:
            self.log(logging.ERROR, f"{family.name}: proven in R but a fragment witness exists")
        return {
            "verb": "witness-search",
            "family": family.name,
            "class_id": class_id.value,
            "fragment_bound": self.config.fragment_bound,
            "verdict": verdict.value if verdict is not None else None,
            "witness": (
                {"a": family.describe(witness.a), "b": family.describe(witness.b)}
                if witness is not None
                else None
            ),
        }

    def verbs(self) -> Dict[str, Callable[[], Dict[str, Any]]]:
        """
        :return: Handler per verb
        :rtype: Dict[str, Callable[[], Dict[str, Any]]]
        """
        return {
            "eval": self._eval,
            "member": self._member,
            "meets-zero": self._meets_zero,
            "lower-bound": self._lower_bound,
            "witness-search": self._witness_search,
        }

    def run_module(self) -> int:
        """
        :return: 0 once the query is answered
        :rtype: int
        """
        handlers = self.verbs()
        if not self.config.query or self.config.query[0] not in handlers:
            raise StructureError(f"epset needs a verb: {', '.join(handlers)}")
        if self.config.output_format is OutputFormat.DOT:
            raise StructureError("epset writes text or doc reports")
        data = handlers[self.config.query[0]]()
        self.result["details"] = [data]
        self.emit_report("epset.txt.j2", data)
        return ExitCode.SUCCESS.value
