# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""
Subcommand module running the acceptance properties over the frozen corpus.
"""

import logging
from functools import partial
from typing import Dict, List

from src.module_utils.acceptance import (
    PROPERTY_NAMES,
    PropertyTally,
    check_epset_oracles,
    check_goldens,
    check_infinite_families,
    check_instance,
    new_tally,
)
from src.module_utils.construct import frozen_corpus
from src.module_utils.enums import ExitCode, OutputFormat, StructureError
from src.module_utils.odp_lab import OdpLab

DOCUMENTATION = r"""
---
module: corpus_check
short_description: Runs the thirteen acceptance properties over the frozen corpus
description:
    - Instance properties run on every corpus instance, jobs instances at a time
    - The infinite-family, set-oracle and golden checks run once
    - One line per property with its check, failure and skip counts
    - Any failed check exits 1
options:
    include_products:
        description: Include the pair products in the corpus
        type: bool
        default: true
    jobs:
        description: Number of worker threads
        type: int
        default: 1
"""


class CorpusCheck(OdpLab):
    """
    Builds the corpus, runs every property and aggregates the tallies.
    """

    def collect(self) -> List[PropertyTally]:
        """
        :return: One merged tally per property, in property order
        :rtype: List[PropertyTally]
        """
        corpus = frozen_corpus(self.config.include_products, self.config.max_elements)
        self.log(logging.INFO, f"Checking {len(corpus)} corpus instances")
        tallies: Dict[int, PropertyTally] = {number: new_tally(number) for number in PROPERTY_NAMES}
        per_instance = self.map_jobs(
            partial(check_instance, node_budget=self.config.node_budget), corpus
        )
        for results in per_instance:
            for number, tally in results.items():
                tallies[number].merge(tally)
        tallies[8].merge(check_infinite_families(self.config.fragment_cap))
        tallies[12].merge(check_epset_oracles(self.config.seed))
        for number, tally in check_goldens(self.config.node_budget).items():
            tallies[number].merge(tally)
        self.result["details"] = [len(corpus)]
        return [tallies[number] for number in sorted(tallies)]

    def run_module(self) -> int:
        """
        :return: 0 when every property passes, 1 otherwise
        :rtype: int
        """
        if self.config.output_format is OutputFormat.DOT:
            raise StructureError("corpus-check writes text or doc reports")
        tallies = self.collect()
        passed = sum(1 for tally in tallies if tally.passed)
        for tally in tallies:
            if not tally.passed:
                self.log(logging.WARNING, f"property {tally.number} failed: {tally.failures}")
        self.emit_report(
            "corpus_check.txt.j2",
            {
                "instances": self.result["details"][0],
                "passed": passed,
                "properties": [tally.to_dict() for tally in tallies],
            },
        )
        return ExitCode.SUCCESS.value if passed == len(tallies) else ExitCode.VIOLATION.value
