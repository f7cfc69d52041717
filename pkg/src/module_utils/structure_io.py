# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""
Reader and writer of the line-oriented structure formats.

odp v1:
    odp v1
    name <token>                      (optional)
    elements <m>
    leq                               followed by m lines of m '0'/'1' characters
    perp <m indices>
    delta                             (optional) followed by m lines of m indices
    labels <m tokens>                 (optional)

family v1:
    family v1
    name <token>                      (optional)
    universe <n>
    one n-character bitstring per member, character i for element i

A stream may hold several documents separated by lines containing only "---".
'#' starts a comment that runs to the end of the line.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple

from src.module_utils.constants import DEFAULT_MAX_ELEMENTS
from src.module_utils.construct import SetFamily
from src.module_utils.enums import SizeLimitError, StructureError
from src.module_utils.odp import DeltaTable
from src.module_utils.orthoposet import FinOrthoPoset

logger = logging.getLogger("odp-lab")

DOCUMENT_SEPARATOR = "---"


@dataclass
class Structure:
    """
    A parsed document: the poset, its Δ table when present, and the family in family mode.
    """

    mode: str
    poset: FinOrthoPoset
    delta: Optional[DeltaTable] = None
    family: Optional[SetFamily] = None
    name: str = ""


def _clean_lines(text: str) -> Iterator[Tuple[int, str]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line


def split_documents(text: str) -> List[List[Tuple[int, str]]]:
    """
    :param text: Whole input stream
    :type text: str
    :return: Non-empty documents as lists of (line number, content)
    :rtype: List[List[Tuple[int, str]]]
    """
    documents: List[List[Tuple[int, str]]] = [[]]
    for number, line in _clean_lines(text):
        if line == DOCUMENT_SEPARATOR:
            documents.append([])
        else:
            documents[-1].append((number, line))
    return [document for document in documents if document]


def _integer(token: str, number: int, what: str) -> int:
    try:
        return int(token)
    except ValueError as ex:
        raise StructureError(f"line {number}: {what} must be an integer, got {token!r}") from ex


def _parse_odp(
    lines: List[Tuple[int, str]], max_elements: int, allow_large: bool
) -> Structure:
    sections: Dict[str, object] = {}
    name = ""
    position = 1
    size = None

    def block(keyword: str, number: int) -> List[Tuple[int, str]]:
        nonlocal position
        if size is None:
            raise StructureError(f"line {number}: '{keyword}' before 'elements'")
        rows = lines[position : position + size]
        if len(rows) != size:
            raise StructureError(f"line {number}: '{keyword}' needs {size} rows")
        position += size
        return rows

    while position < len(lines):
        number, line = lines[position]
        keyword, _, rest = line.partition(" ")
        rest = rest.strip()
        position += 1
        if keyword in sections or (keyword == "name" and name):
            raise StructureError(f"line {number}: duplicate section '{keyword}'")
        if keyword == "name":
            name = rest
        elif keyword == "elements":
            size = _integer(rest, number, "element count")
            if size < 1:
                raise StructureError(f"line {number}: element count must be at least 1")
            if size > max_elements and not allow_large:
                raise SizeLimitError(
                    f"{size} elements exceed the cap of {max_elements}; "
                    "pass the override to continue"
                )
            sections["elements"] = size
        elif keyword == "leq":
            rows = block("leq", number)
            for row_number, row in rows:
                if len(row) != size or set(row) - {"0", "1"}:
                    raise StructureError(
                        f"line {row_number}: leq rows must have {size} '0'/'1' characters"
                    )
            sections["leq"] = [[char == "1" for char in row] for _, row in rows]
        elif keyword == "perp":
            sections["perp"] = [_integer(token, number, "perp entry") for token in rest.split()]
        elif keyword == "delta":
            rows = block("delta", number)
            table = []
            for row_number, row in rows:
                entries = [_integer(token, row_number, "delta entry") for token in row.split()]
                if len(entries) != size:
                    raise StructureError(f"line {row_number}: delta rows must have {size} entries")
                table.append(entries)
            sections["delta"] = table
        elif keyword == "labels":
            sections["labels"] = rest.split()
        else:
            raise StructureError(f"line {number}: unknown section '{keyword}'")

    for required in ("elements", "leq", "perp"):
        if required not in sections:
            raise StructureError(f"missing '{required}' section")
    poset = FinOrthoPoset(
        sections["leq"],
        sections["perp"],
        labels=sections.get("labels"),
        max_elements=max_elements,
        allow_large=allow_large,
    )
    delta = DeltaTable(sections["delta"]) if "delta" in sections else None
    return Structure("odp", poset, delta, None, name)


def _parse_family(
    lines: List[Tuple[int, str]], max_elements: int, allow_large: bool
) -> Structure:
    name = ""
    universe = None
    masks = []
    for number, line in lines[1:]:
        keyword, _, rest = line.partition(" ")
        if keyword == "name" and name:
            raise StructureError(f"line {number}: duplicate section 'name'")
        if keyword == "name" and universe is not None:
            raise StructureError(f"line {number}: 'name' must come before 'universe'")
        if keyword == "universe" and universe is not None:
            raise StructureError(f"line {number}: duplicate section 'universe'")
        if keyword == "name":
            name = rest.strip()
        elif keyword == "universe":
            universe = _integer(rest.strip(), number, "universe size")
            if universe < 0:
                raise StructureError(f"line {number}: universe size must be non-negative")
        elif universe is None:
            raise StructureError(f"line {number}: expected 'universe <n>'")
        elif len(line) != universe or set(line) - {"0", "1"}:
            raise StructureError(
                f"line {number}: members must be {universe}-character '0'/'1' strings"
            )
        else:
            masks.append(sum(1 << i for i, char in enumerate(line) if char == "1"))
    if universe is None:
        raise StructureError("missing 'universe' line")
    if len(set(masks)) != len(masks):
        raise StructureError("family lists a member twice")
    family = SetFamily(universe, masks)
    poset, delta = family.to_odp(max_elements=max_elements, allow_large=allow_large)
    return Structure("family", poset, delta, family, name)


def parse_structures(
    text: str, max_elements: int = DEFAULT_MAX_ELEMENTS, allow_large: bool = False
) -> List[Structure]:
    """
    Parses every document of a stream.

    :param text: Input stream
    :type text: str
    :param max_elements: Element cap
    :type max_elements: int
    :param allow_large: Accept structures above the cap
    :type allow_large: bool
    :raises StructureError: If a document is malformed or the stream is empty
    :return: Parsed structures in stream order
    :rtype: List[Structure]
    """
    documents = split_documents(text)
    if not documents:
        raise StructureError("input holds no structure")
    structures = []
    for document in documents:
        number, header = document[0]
        if header == "odp v1":
            structures.append(_parse_odp(document, max_elements, allow_large))
        elif header == "family v1":
            structures.append(_parse_family(document, max_elements, allow_large))
        else:
            raise StructureError(f"line {number}: expected 'odp v1' or 'family v1'")
    logger.debug(f"Parsed {len(structures)} structure document(s)")
    return structures


def parse_structure(
    text: str, max_elements: int = DEFAULT_MAX_ELEMENTS, allow_large: bool = False
) -> Structure:
    """
    Parses a stream that must hold exactly one document.

    :param text: Input stream
    :type text: str
    :param max_elements: Element cap
    :type max_elements: int
    :param allow_large: Accept structures above the cap
    :type allow_large: bool
    :raises StructureError: If the stream does not hold exactly one valid document
    :return: The parsed structure
    :rtype: Structure
    """
    structures = parse_structures(text, max_elements, allow_large)
    if len(structures) != 1:
        raise StructureError(f"expected one structure, found {len(structures)}")
    return structures[0]


def format_odp(poset: FinOrthoPoset, delta: Optional[DeltaTable] = None, name: str = "") -> str:
    """
    :param poset: Poset to write
    :type poset: FinOrthoPoset
    :param delta: Optional Δ table
    :type delta: Optional[DeltaTable]
    :param name: Optional name token
    :type name: str
    :return: Document in the odp v1 format
    :rtype: str
    """
    lines = ["odp v1"]
    if name:
        lines.append(f"name {name}")
    lines.append(f"elements {poset.size}")
    lines.append("leq")
    lines.extend("".join("1" if cell else "0" for cell in row) for row in poset.leq)
    lines.append("perp " + " ".join(str(x) for x in poset.perp))
    if delta is not None:
        lines.append("delta")
        lines.extend(" ".join(str(int(x)) for x in row) for row in delta.table)
    lines.append("labels " + " ".join(poset.labels))
    return "\n".join(lines) + "\n"


def format_family(family: SetFamily, name: str = "") -> str:
    """
    :param family: Family to write
    :type family: SetFamily
    :param name: Optional name token
    :type name: str
    :return: Document in the family v1 format
    :rtype: str
    """
    lines = ["family v1"]
    if name:
        lines.append(f"name {name}")
    lines.append(f"universe {family.universe}")
    lines.extend(family.to_bitstrings())
    return "\n".join(lines) + "\n"


def format_documents(documents: List[str]) -> str:
    """
    :param documents: Formatted documents
    :type documents: List[str]
    :return: The documents joined by separator lines
    :rtype: str
    """
    return f"{DOCUMENT_SEPARATOR}\n".join(documents)
