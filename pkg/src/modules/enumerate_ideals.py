# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""
Subcommand module listing the maximal (or all proper) Frink ideals of orthoposets.
"""

import logging
from typing import Any, Dict

from src.module_utils.enums import ExitCode, OutputFormat, StructureError
from src.module_utils.frink import (
    enumerate_frink_ideals,
    enumerate_maximal_ideals,
    is_maximal,
    is_selective,
)
from src.module_utils.odp_lab import OdpLab
from src.module_utils.structure_io import Structure

DOCUMENTATION = r"""
---
module: enumerate_ideals
short_description: Lists maximal Frink ideals as bitstrings with their selectivity
description:
    - One line per ideal, "<bitstring> selective=yes|no", character i standing for element i
    - With all_ideals every proper Frink ideal is listed and flagged maximal=yes|no
    - Ideals are listed in lexicographic order of their ascending member lists,
      so {0,1,2,3} comes before {0,2}
    - Exceeding the node budget is an error (exit 2); partial lists are never printed
"""


class IdealLister(OdpLab):
    """
    Enumerates Frink ideals per structure.
    """

    def ideals(self, structure: Structure) -> Dict[str, Any]:
        """
        :param structure: Parsed structure
        :type structure: Structure
        :raises BudgetExceededError: If the enumeration runs out of nodes
        :return: Ideal listing with members, bitstrings and flags
        :rtype: Dict[str, Any]
        """
        poset = structure.poset
        if self.config.all_ideals:
            found = enumerate_frink_ideals(poset, self.config.node_budget)
        else:
            found = enumerate_maximal_ideals(poset, self.config.node_budget)
        self.log(logging.INFO, f"{structure.name}: {len(found)} ideal(s)")
        return {
            "name": structure.name,
            "elements": poset.size,
            "kind": "frink" if self.config.all_ideals else "maximal",
            "ideals": [
                {
                    "members": [poset.label(i) for i in ideal.elements],
                    "bits": ideal.to_bitstring(),
                    "selective": is_selective(poset, ideal),
                    "maximal": not self.config.all_ideals or is_maximal(poset, ideal),
                }
                for ideal in found
            ],
        }

    def run_module(self) -> int:
        if self.config.output_format is OutputFormat.DOT:
            raise StructureError("ideals writes text or doc reports")
        structures = self.load_structures()
        for data in self.map_jobs(self.ideals, structures):
            self.emit_report("ideals.txt.j2", data, header=len(structures) > 1)
        return ExitCode.SUCCESS.value
