# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""
Subcommand module writing example structures in the structure file formats.
"""

import logging
import os
from typing import Callable, Dict, List, Optional, Tuple

from src.module_utils.construct import (
    SetFamily,
    benzene_orthoposet,
    delta_closure_family,
    even_sets_family,
    frozen_corpus,
    mo_orthoposet,
    powerset_family,
    product_odp,
)
from src.module_utils.enums import ExitCode, OutputFormat, SizeLimitError, StructureError
from src.module_utils.odp import DeltaTable
from src.module_utils.odp_lab import OdpLab
from src.module_utils.orthoposet import FinOrthoPoset, to_dot
from src.module_utils.structure_io import format_documents, format_family, format_odp
from src.modules.verify_structure import graph_name

DOCUMENTATION = r"""
---
module: generate_structure
short_description: Writes example ODPs and orthoposets as structure documents
description:
    - powerset N, even 2K and delta-closure N GEN... write set families
    - product F1 F2 writes the product of two ODPs; a factor is powerset:N, even:2K
      or the path of a structure file holding one ODP
    - corpus writes the frozen acceptance corpus, products included unless disabled
    - benzene and mo N write orthoposets without a delta table
    - The dot format writes Hasse diagrams instead
"""

EXAMPLES = r"""
odplab generate powerset 3
odplab generate even 4 | odplab classify
odplab generate product even:4 powerset:1 > product.odp
odplab generate delta-closure 4 1100 1010
odplab generate corpus --no-products
"""

Generated = Tuple[str, FinOrthoPoset, Optional[DeltaTable], Optional[SetFamily]]


def _count(token: str, what: str) -> int:
    try:
        return int(token)
    except ValueError as ex:
        raise StructureError(f"{what} must be an integer, got {token!r}") from ex


class StructureGenerator(OdpLab):
    """
    Builds the requested structures and writes them out.
    """

    def _arguments(self, count: int) -> List[str]:
        kind, arguments = self.config.generator[0], list(self.config.generator[1:])
        if count >= 0 and len(arguments) != count:
            raise StructureError(f"generate {kind} takes {count} argument(s), got {len(arguments)}")
        return arguments

    def _family(self, name: str, family: SetFamily) -> Generated:
        poset, delta = family.to_odp(self.config.max_elements, self.config.allow_large)
        return name, poset, delta, family

    def _powerset(self) -> List[Generated]:
        n = _count(self._arguments(1)[0], "powerset size")
        self._check_size(1 << n if n >= 1 else 0)
        return [self._family(f"powerset-{n}", powerset_family(n))]

    def _even(self) -> List[Generated]:
        two_k = _count(self._arguments(1)[0], "even universe size")
        self._check_size(1 << (two_k - 1) if two_k >= 2 else 0)
        return [self._family(f"even-{two_k}", even_sets_family(two_k))]

    def _delta_closure(self) -> List[Generated]:
        arguments = self._arguments(-1)
        if not arguments:
            raise StructureError("generate delta-closure takes N and generator bitstrings")
        n = _count(arguments[0], "universe size")
        generators = []
        for bits in arguments[1:]:
            if len(bits) != n or set(bits) - {"0", "1"}:
                raise StructureError(f"generator {bits!r} must be a {n}-character bitstring")
            generators.append(sum(1 << i for i, char in enumerate(bits) if char == "1"))
        family = delta_closure_family(n, generators)
        self._check_size(len(family))
        return [self._family(f"delta-closure-{n}", family)]

    def _factor(self, source: str) -> Tuple[str, FinOrthoPoset, DeltaTable]:
        kind, _, size = source.partition(":")
        if kind in ("powerset", "even") and size and not os.path.exists(source):
            family = powerset_family if kind == "powerset" else even_sets_family
            name, poset, delta, _ = self._family(f"{kind}-{size}", family(_count(size, kind)))
            return name, poset, delta
        structures = self.load_structures(source)
        if len(structures) != 1 or structures[0].delta is None:
            raise StructureError(f"factor {source} must hold exactly one ODP with a delta table")
        return structures[0].name, structures[0].poset, structures[0].delta

    def _product(self) -> List[Generated]:
        first, second = (self._factor(source) for source in self._arguments(2))
        poset, delta = product_odp(
            first[1],
            first[2],
            second[1],
            second[2],
            max_elements=self.config.max_elements,
            allow_large=self.config.allow_large,
        )
        return [(f"{first[0]}*{second[0]}", poset, delta, None)]

    def _corpus(self) -> List[Generated]:
        self._arguments(0)
        return [
            (instance.name, instance.poset, instance.delta, instance.family)
            for instance in frozen_corpus(self.config.include_products)
        ]

    def _benzene(self) -> List[Generated]:
        self._arguments(0)
        return [("benzene", benzene_orthoposet(), None, None)]

    def _mo(self) -> List[Generated]:
        n = _count(self._arguments(1)[0], "MO index")
        self._check_size(2 * n + 2)
        return [(f"mo-{n}", mo_orthoposet(n), None, None)]

    def _check_size(self, count: int) -> None:
        if count > self.config.max_elements and not self.config.allow_large:
            raise SizeLimitError(
                f"{count} elements exceed the cap of {self.config.max_elements}; "
                "pass the override to continue"
            )

    def generators(self) -> Dict[str, Callable[[], List[Generated]]]:
        """
        :return: Builder per generator kind
        :rtype: Dict[str, Callable[[], List[Generated]]]
        """
        return {
            "powerset": self._powerset,
            "even": self._even,
            "product": self._product,
            "delta-closure": self._delta_closure,
            "corpus": self._corpus,
            "benzene": self._benzene,
            "mo": self._mo,
        }

    def run_module(self) -> int:
        """
        :return: 0 once every requested structure is written
        :rtype: int
        """
        if not self.config.generator:
            raise StructureError(f"generate needs a kind: {', '.join(self.generators())}")
        kind = self.config.generator[0]
        builders = self.generators()
        if kind not in builders:
            raise StructureError(f"unknown generator {kind!r}; use one of {', '.join(builders)}")
        if self.config.output_format is OutputFormat.DOC:
            raise StructureError("generate writes structure text or dot")
        generated = builders[kind]()
        self.log(logging.INFO, f"Generated {len(generated)} structure(s) of kind {kind}")
        if self.config.output_format is OutputFormat.DOT:
            for name, poset, _, _ in generated:
                self.emit(to_dot(poset, graph_name(name)))
            return ExitCode.SUCCESS.value
        self.emit(
            format_documents(
                [
                    format_family(family, name)
                    if family is not None
                    else format_odp(poset, delta, name)
                    for name, poset, delta, family in generated
                ]
            )
        )
        return ExitCode.SUCCESS.value
