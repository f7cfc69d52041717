# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""
Subcommand module building the set representation over selective maximal ideals.
"""

import logging
from typing import Any, Dict

from src.module_utils.construct import representation
from src.module_utils.enums import ExitCode, OutputFormat, StructureError
from src.module_utils.odp_lab import OdpLab
from src.module_utils.structure_io import Structure
from src.modules.verify_structure import rejected_data, verify_axioms

DOCUMENTATION = r"""
---
module: represent_structure
short_description: Maps verified ODPs into sets of selective maximal ideals
description:
    - Verifies the axioms first; an input that is not an ODP is reported and exits 1
    - Each element a maps to e(a), the selective maximal Frink ideals that do not contain a
    - Reports whether e is an order embedding and whether it preserves complement and delta
    - Structures without selective maximal ideals map every element to the empty set
options:
    node_budget:
        description: Node budget of the maximal ideal enumeration
        type: int
    output_format:
        description: text report or doc (YAML)
        type: str
        default: text
"""

EXAMPLES = r"""
odplab generate powerset 3 | odplab represent
odplab generate corpus | odplab represent --format doc --jobs 4
"""


class RepresentationBuilder(OdpLab):
    """
    Maps each element a to e(a), the selective maximal ideals that do not contain a,
    and reports whether e preserves order, complement and delta.
    """

    def represent(self, structure: Structure) -> Dict[str, Any]:
        """
        :param structure: Parsed structure with a delta table
        :type structure: Structure
        :raises StructureError: If the structure has no delta table
        :return: Representation data, or the failed verification reports
        :rtype: Dict[str, Any]
        """
        if structure.delta is None:
            raise StructureError(f"{structure.name}: the representation needs a delta table")
        axioms = verify_axioms(structure, self.config)
        if not axioms.is_empty():
            self.log(logging.WARNING, f"{structure.name} is not an ODP; not represented")
            return rejected_data(structure, axioms)
        result = representation(structure.poset, structure.delta, self.config.node_budget)
        return {"name": structure.name, "elements": structure.poset.size, **result.to_dict()}

    def run_module(self) -> int:
        """
        Emits one representation per verified structure and the verify report for the rest.

        :return: 0 when every structure is an ODP, 1 otherwise
        :rtype: int
        """
        if self.config.output_format is OutputFormat.DOT:
            raise StructureError("represent writes text or doc reports")
        code = ExitCode.SUCCESS.value
        for data in self.map_jobs(self.represent, self.load_structures()):
            if "reports" in data:
                self.emit_report("verify.txt.j2", data)
                code = ExitCode.VIOLATION.value
            else:
                self.emit_report("represent.txt.j2", data)
        return code
