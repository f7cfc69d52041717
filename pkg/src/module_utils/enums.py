"""
This module defines various enumerations, exceptions and data classes used throughout odp-lab
"""

from enum import Enum
from typing import Dict, Any, List, Optional, Tuple


class CheckStatus(Enum):
    """
    Enum for the status of a check or of a subcommand run.
    """

    SUCCESS = "PASSED"
    ERROR = "FAILED"
    WARNING = "WARNING"
    INFO = "INFO"
    NOT_STARTED = "NOT_STARTED"
    SKIPPED = "SKIPPED"


class Verdict(Enum):
    """
    Enum for the outcome of a decision procedure on an infinite family.
    """

    PROVEN = "PROVEN"
    REFUTED = "REFUTED"
    UNDECIDED = "UNDECIDED"


class ClassId(Enum):
    """
    Enum for the three almost-Boolean classes of ODPs.
    """

    R = "R"
    S = "S"
    T = "T"


class OutputFormat(Enum):
    """
    Enum for the report formats understood by the command line.
    """

    TEXT = "text"
    DOC = "doc"
    DOT = "dot"


class ExitCode(Enum):
    """
    Enum for the process exit codes.
    """

    SUCCESS = 0
    VIOLATION = 1
    INPUT_ERROR = 2


class OdpLabError(Exception):
    """
    Base class of every error raised by odp-lab.
    """


class StructureError(OdpLabError, ValueError):
    """
    Raised when an input structure is malformed (as opposed to violating an axiom).
    """


class SizeLimitError(OdpLabError, ValueError):
    """
    Raised when a structure exceeds the element cap and no override was given.
    """


class BudgetExceededError(OdpLabError, RuntimeError):
    """
    Raised when an enumeration runs out of its node budget.
    The result is incomplete and must never be used as if it were complete.
    """


class FragmentCapError(OdpLabError, ValueError):
    """
    Raised when a finite fragment of an infinite family would be too large to enumerate.
    """


class NotAMemberError(OdpLabError, ValueError):
    """
    Raised when a set passed to a family-level operation is not a member of the family.
    """


class ExpressionError(OdpLabError, ValueError):
    """
    Raised when an eventually periodic set expression or literal cannot be parsed.
    """


class ConsistencyError(OdpLabError, AssertionError):
    """
    Raised when a proven theorem fails on verified input. This always indicates a bug.
    """


class Result:
    """
    This class stores the result of a subcommand run.

    :param status: Current status of the run
    :type status: str
    :param message: Descriptive message about the result
    :type message: str
    :param details: List of detailed information
    :type details: List[Any]
    :param logs: List of log messages
    :type logs: List[str]
    """

    def __init__(
        self,
        status: Optional[str] = None,
        message: str = "",
        details: Optional[List[Any]] = None,
        logs: Optional[List[str]] = None,
    ):
        self.status = status if status is not None else CheckStatus.NOT_STARTED.value
        self.message = message
        self.details = details if details is not None else []
        self.logs = logs if logs is not None else []

    def to_dict(self) -> Dict[str, Any]:
        """
        Converts the result to a dictionary.

        :return: Dictionary containing the result
        :rtype: Dict[str, Any]
        """
        return {
            "status": self.status,
            "message": self.message,
            "details": self.details.copy(),
            "logs": self.logs.copy(),
        }


class Violation:
    """
    A single failed axiom instance.

    :param axiom: Name of the violated axiom
    :type axiom: str
    :param witness: Element indices witnessing the failure
    :type witness: Tuple[int, ...]
    :param message: Human readable description
    :type message: str
    """

    def __init__(self, axiom: str, witness: Tuple[int, ...], message: str = ""):
        self.axiom = axiom
        self.witness = tuple(int(w) for w in witness)
        self.message = message

    def to_dict(self) -> Dict[str, Any]:
        """
        Converts the violation to a dictionary.

        :return: Dictionary containing the violation
        :rtype: Dict[str, Any]
        """
        return {"axiom": self.axiom, "witness": list(self.witness), "message": self.message}


class ViolationReport:
    """
    Ordered collection of axiom violations, at most `witness_limit` witnesses per axiom.

    :param subject: What was checked (e.g. "orthoposet", "odp")
    :type subject: str
    :param witness_limit: Maximum number of witnesses kept per axiom, None for unbounded
    :type witness_limit: Optional[int]
    """

    def __init__(self, subject: str, witness_limit: Optional[int] = 16):
        self.subject = subject
        self.witness_limit = witness_limit
        self.violations: Dict[str, List[Violation]] = {}
        self.omitted: Dict[str, int] = {}
        self.facts: Dict[str, Any] = {}
        self.sampled = False

    def add(self, axiom: str, witness: Tuple[int, ...], message: str = "") -> bool:
        """
        Records a violation.

        :param axiom: Name of the violated axiom
        :type axiom: str
        :param witness: Witness tuple
        :type witness: Tuple[int, ...]
        :param message: Human readable description
        :type message: str
        :return: False once the witness limit of this axiom is reached
        :rtype: bool
        """
        bucket = self.violations.setdefault(axiom, [])
        if self.witness_limit is not None and len(bucket) >= self.witness_limit:
            self.omitted[axiom] = self.omitted.get(axiom, 0) + 1
            return False
        bucket.append(Violation(axiom, witness, message))
        return True

    def is_full(self, axiom: str) -> bool:
        """
        :param axiom: Name of the axiom
        :type axiom: str
        :return: True when no further witness of this axiom would be kept
        :rtype: bool
        """
        return (
            self.witness_limit is not None
            and len(self.violations.get(axiom, [])) >= self.witness_limit
        )

    def merge(self, other: "ViolationReport") -> None:
        """
        Appends the violations and facts of another report.

        :param other: Report to merge into this one
        :type other: ViolationReport
        """
        for axiom, items in other.violations.items():
            for item in items:
                self.add(axiom, item.witness, item.message)
        for axiom, count in other.omitted.items():
            self.omitted[axiom] = self.omitted.get(axiom, 0) + count
        self.facts.update(other.facts)
        self.sampled = self.sampled or other.sampled

    def is_empty(self) -> bool:
        """
        :return: True when no axiom was violated
        :rtype: bool
        """
        return not any(self.violations.values())

    def axioms(self) -> List[str]:
        """
        :return: Names of the violated axioms in the order they were first reported
        :rtype: List[str]
        """
        return [axiom for axiom, items in self.violations.items() if items]

    def first(self, axiom: str) -> Optional[Violation]:
        """
        :param axiom: Name of the axiom
        :type axiom: str
        :return: The lexicographically first witness of the axiom, if any
        :rtype: Optional[Violation]
        """
        items = self.violations.get(axiom)
        return items[0] if items else None

    def to_dict(self) -> Dict[str, Any]:
        """
        Converts the report to a dictionary with a stable key order.

        :return: Dictionary containing the report
        :rtype: Dict[str, Any]
        """
        return {
            "subject": self.subject,
            "ok": self.is_empty(),
            "sampled": self.sampled,
            "violations": {
                axiom: [item.to_dict() for item in items]
                for axiom, items in self.violations.items()
                if items
            },
            "omitted": dict(self.omitted),
            "facts": dict(self.facts),
        }
