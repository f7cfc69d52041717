# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""
Subcommand module checking the orthoposet and ODP axioms of structure documents.
"""

import logging
import re
from typing import Any, Dict, List

from src.module_utils.enums import ConsistencyError, ExitCode, OutputFormat, ViolationReport
from src.module_utils.odp import check_orthomodularity, delta_identities_report, verify_odp
from src.module_utils.odp_lab import OdpLab
from src.module_utils.orthoposet import check_de_morgan, to_dot, verify_orthoposet
from src.module_utils.run_config import RunConfig
from src.module_utils.structure_io import Structure

DOCUMENTATION = r"""
---
module: verify_structure
short_description: Checks orthoposet and ODP axioms, then the laws every ODP satisfies
description:
    - Reports every violated orthoposet axiom with its first witnesses
    - Documents carrying a delta table are checked against the three ODP axioms
    - Verified ODPs are then checked for orthomodularity and the derived delta identities;
      a failure there is a defect of the checker, not of the input
    - Without a delta table orthomodularity is reported for information only
options:
    input_path:
        description: Structure file, standard input when omitted
        type: str
        required: false
    output_format:
        description: text report, doc (YAML) or dot (Hasse diagrams)
        type: str
        default: text
"""

EXAMPLES = r"""
odplab generate even 4 | odplab verify
odplab verify --format doc structures.odp
odplab verify --format dot benzene.odp | dot -Tsvg > benzene.svg
"""


def graph_name(name: str) -> str:
    """
    :param name: Structure name
    :type name: str
    :return: DOT identifier derived from the name
    :rtype: str
    """
    identifier = re.sub(r"\W", "_", name)
    return identifier if identifier and not identifier[0].isdigit() else f"g_{identifier}"


def report_data(structure: Structure, report: ViolationReport) -> Dict[str, Any]:
    """
    Converts a violation report to its document form, witnesses written as element labels.

    :param structure: Checked structure
    :type structure: Structure
    :param report: Violation report over its elements
    :type report: ViolationReport
    :return: Report data with a stable key order
    :rtype: Dict[str, Any]
    """
    data = report.to_dict()
    for items in data["violations"].values():
        for item in items:
            item["witness"] = [structure.poset.label(i) for i in item["witness"]]
    if "noncommuting_pair" in data["facts"]:
        data["facts"]["noncommuting_pair"] = [
            structure.poset.label(i) for i in data["facts"]["noncommuting_pair"]
        ]
    return data


def verify_axioms(structure: Structure, config: RunConfig) -> ViolationReport:
    """
    Checks the orthoposet axioms, then the ODP axioms once those hold.

    :param structure: Parsed structure with a delta table
    :type structure: Structure
    :param config: Run configuration supplying the witness limit, cap, sampling and seed
    :type config: RunConfig
    :return: The first non-empty report, or the empty ODP report
    :rtype: ViolationReport
    """
    axioms = verify_orthoposet(structure.poset, config.witness_limit)
    if not axioms.is_empty():
        return axioms
    return verify_odp(
        structure.poset,
        structure.delta,
        config.witness_limit,
        max_elements=config.max_elements,
        sample_triples=config.sample_triples,
        seed=config.seed,
    )


def rejected_data(structure: Structure, axioms: ViolationReport) -> Dict[str, Any]:
    """
    :param structure: Structure that failed verification
    :type structure: Structure
    :param axioms: Its violation report
    :type axioms: ViolationReport
    :return: Data in the shape of a failed verify report
    :rtype: Dict[str, Any]
    """
    return {
        "name": structure.name,
        "mode": structure.mode,
        "elements": structure.poset.size,
        "ok": False,
        "reports": [report_data(structure, axioms)],
    }


class StructureVerifier(OdpLab):
    """
    Verifies every structure of the input stream.
    """

    def verify(self, structure: Structure) -> Dict[str, Any]:
        """
        Runs the axiom suites on one structure.

        :param structure: Parsed structure
        :type structure: Structure
        :raises ConsistencyError: If a verified structure breaks a law every such structure obeys
        :return: Verification data: name, mode, size, overall verdict and reports
        :rtype: Dict[str, Any]
        """
        config = self.config
        poset, delta = structure.poset, structure.delta
        reports: List[ViolationReport] = [verify_orthoposet(poset, config.witness_limit)]
        ok = reports[0].is_empty()
        if ok:
            de_morgan = check_de_morgan(poset, config.witness_limit)
            if not de_morgan.is_empty():
                raise ConsistencyError(
                    f"{structure.name}: De Morgan fails on a verified orthoposet"
                )
            if delta is None:
                reports.append(check_orthomodularity(poset, None, config.witness_limit))
            else:
                axioms = verify_odp(
                    poset,
                    delta,
                    config.witness_limit,
                    max_elements=config.max_elements,
                    sample_triples=config.sample_triples,
                    seed=config.seed,
                )
                reports.append(axioms)
                ok = axioms.is_empty()
                if ok:
                    reports.extend(self._derived_laws(structure))
        self.log(
            logging.INFO,
            f"{structure.name}: {'verified' if ok else 'violated'} "
            f"({', '.join(report.subject for report in reports)})",
        )
        return {
            "name": structure.name,
            "mode": structure.mode,
            "elements": poset.size,
            "ok": ok,
            "reports": [report_data(structure, report) for report in reports],
        }

    def _derived_laws(self, structure: Structure) -> List[ViolationReport]:
        poset, delta = structure.poset, structure.delta
        orthomodularity = check_orthomodularity(poset, delta, self.config.witness_limit)
        if not orthomodularity.is_empty():
            raise ConsistencyError(
                f"{structure.name}: orthomodularity fails on a verified ODP at "
                f"{orthomodularity.first('orthomodular').witness}"
            )
        identities = delta_identities_report(poset, delta, self.config.witness_limit)
        if not identities.is_empty():
            raise ConsistencyError(
                f"{structure.name}: delta identities fail on a verified ODP "
                f"({', '.join(identities.axioms())})"
            )
        return [orthomodularity, identities]

    def run_module(self) -> int:
        """
        Verifies the input and emits one report, or one Hasse diagram, per structure.

        :return: 0 when every structure verifies, 1 otherwise
        :rtype: int
        """
        structures = self.load_structures()
        results = self.map_jobs(self.verify, structures)
        for structure, data in zip(structures, results):
            if self.config.output_format is OutputFormat.DOT:
                self.emit(to_dot(structure.poset, graph_name(structure.name)))
            else:
                self.emit_report("verify.txt.j2", data)
        failed = [data["name"] for data in results if not data["ok"]]
        self.result["details"] = results
        if failed:
            self.result["message"] = f"axioms violated by {', '.join(failed)}"
            self.log(logging.WARNING, self.result["message"])
            return ExitCode.VIOLATION.value
        self.result["message"] = f"{len(results)} structure(s) verified"
        return ExitCode.SUCCESS.value
