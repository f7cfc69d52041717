# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""
Subcommand module classifying ODPs into the classes R, S and T.
"""

import logging
from typing import Any, Dict

from src.module_utils.classes import classify
from src.module_utils.enums import ConsistencyError, ExitCode, OutputFormat, StructureError
from src.module_utils.odp_lab import OdpLab
from src.module_utils.structure_io import Structure
from src.modules.verify_structure import rejected_data, verify_axioms

DOCUMENTATION = r"""
---
module: classify_structure
short_description: Classifies verified ODPs into R, S and T and reports lattice facts
description:
    - Verifies the axioms first; an input that is not an ODP is reported and exits 1
    - Reports membership in R, S and T, whether the order is a lattice or Boolean,
      the number of maximal Frink ideals and how many of them are selective
    - Every failed predicate comes with its first witness, written with element labels
    - in_S is unknown when the ideal enumeration exceeds the node budget
options:
    expectations:
        description: key=value pairs (true, false, unknown or an integer); any mismatch exits 1
        type: str
        required: false
    node_budget:
        description: Node budget of the Frink ideal enumeration
        type: int
"""


class StructureClassifier(OdpLab):
    """
    Classifies every structure of the input stream and checks the configured expectations.
    """

    def classify(self, structure: Structure) -> Dict[str, Any]:
        """
        :param structure: Parsed structure with a delta table
        :type structure: Structure
        :raises StructureError: If the structure has no delta table
        :raises ConsistencyError: If the class chain R => S => T breaks
        :return: Classification data, or the failed verification reports
        :rtype: Dict[str, Any]
        """
        if structure.delta is None:
            raise StructureError(f"{structure.name}: classification needs a delta table")
        axioms = verify_axioms(structure, self.config)
        if not axioms.is_empty():
            self.log(logging.WARNING, f"{structure.name} is not an ODP; not classified")
            return rejected_data(structure, axioms)

        report = classify(structure.poset, structure.delta, self.config.node_budget, structure.name)
        broken = report.chain_violations()
        if broken:
            raise ConsistencyError(f"{structure.name}: class chain broken ({', '.join(broken)})")
        data = report.to_dict()
        if self.config.expectations:
            data["expectation_failures"] = report.mismatches(self.config.expectations)
            for failure in data["expectation_failures"]:
                self.log(logging.WARNING, f"{structure.name}: expectation failed, {failure}")
        return data

    def run_module(self) -> int:
        """
        :return: 0 when every structure is classified and meets the expectations, 1 otherwise
        :rtype: int
        """
        if self.config.output_format is OutputFormat.DOT:
            raise StructureError("classify writes text or doc reports")
        results = self.map_jobs(self.classify, self.load_structures())
        code = ExitCode.SUCCESS.value
        for data in results:
            if "reports" in data:
                self.emit_report("verify.txt.j2", data)
                code = ExitCode.VIOLATION.value
                continue
            self.emit_report("classify.txt.j2", data)
            if data.get("expectation_failures"):
                code = ExitCode.VIOLATION.value
        self.result["details"] = results
        return code

