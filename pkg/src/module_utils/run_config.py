# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""
Run configuration: defaults from vars.yaml, overridden by command-line flags
(which in turn read the ODPLAB_* environment variables), then validated.
"""

import os
from dataclasses import dataclass, field, fields
from typing import Any, Dict, Optional, Tuple

import yaml

from src.module_utils.constants import (
    CLASS_REPORT_FIELDS,
    DEFAULT_FRAGMENT_BOUND,
    DEFAULT_FRAGMENT_CAP,
    DEFAULT_MAX_ELEMENTS,
    DEFAULT_NODE_BUDGET,
    DEFAULT_SAMPLE_TRIPLES,
    DEFAULT_WITNESS_LIMIT,
    UNLIMITED_WITNESSES,
)
from src.module_utils.enums import OutputFormat, StructureError

DEFAULTS_FILE = os.path.join(
    os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))), "vars.yaml"
)

# vars.yaml key -> RunConfig field
DEFAULT_KEYS = {
    "NODE_BUDGET": "node_budget",
    "MAX_ELEMENTS": "max_elements",
    "FRAGMENT_BOUND": "fragment_bound",
    "FRAGMENT_CAP": "fragment_cap",
    "WITNESS_LIMIT": "witness_limit",
    "SAMPLE_TRIPLES": "sample_triples",
    "OUTPUT_FORMAT": "output_format",
    "SEED": "seed",
    "JOBS": "jobs",
}


def load_defaults(path: Optional[str] = None) -> Dict[str, Any]:
    """
    Reads the defaults file. A missing file yields no overrides.

    :param path: YAML file, defaults to vars.yaml at the repository root
    :type path: Optional[str]
    :raises StructureError: If the file is not a YAML mapping of known keys
    :return: RunConfig field values
    :rtype: Dict[str, Any]
    """
    path = path or DEFAULTS_FILE
    if not os.path.exists(path):
        return {}
    try:
        with open(path, "r", encoding="utf-8") as handle:
            content = yaml.safe_load(handle) or {}
    except yaml.YAMLError as ex:
        raise StructureError(f"cannot parse defaults file {path}: {ex}") from ex
    if not isinstance(content, dict):
        raise StructureError(f"defaults file {path} must hold a mapping")
    unknown = sorted(set(content) - set(DEFAULT_KEYS))
    if unknown:
        raise StructureError(f"unknown keys in {path}: {', '.join(unknown)}")
    return {DEFAULT_KEYS[key]: value for key, value in content.items() if value is not None}


def parse_expectations(text: Optional[str]) -> Dict[str, Any]:
    """
    Parses "in_R=false,in_T=false,ideal_count=6" into typed expectations.
    Values are true, false, unknown (None) or integers.

    :param text: Comma separated key=value pairs
    :type text: Optional[str]
    :raises StructureError: If a pair is malformed or names an unknown field
    :return: Expected values keyed by report field
    :rtype: Dict[str, Any]
    """
    expectations: Dict[str, Any] = {}
    for item in (text or "").split(","):
        item = item.strip()
        if not item:
            continue
        key, separator, value = item.partition("=")
        key, value = key.strip(), value.strip().lower()
        if not separator or key not in CLASS_REPORT_FIELDS:
            raise StructureError(
                f"bad expectation {item!r}; keys are {', '.join(CLASS_REPORT_FIELDS)}"
            )
        if value in ("true", "false"):
            expectations[key] = value == "true"
        elif value == "unknown":
            expectations[key] = None
        elif value.isdigit():
            expectations[key] = int(value)
        else:
            raise StructureError(f"bad expectation value in {item!r}")
    return expectations


def parse_witness_limit(value: Any) -> Optional[int]:
    """
    Reads a witness limit; 0 and "all" lift the limit.

    :param value: Integer, numeric string or "all"
    :type value: Any
    :raises StructureError: If the value is neither an integer nor "all"
    :return: The limit, None when unlimited
    :rtype: Optional[int]
    """
    if value is None:
        return None
    if isinstance(value, str):
        text = value.strip().lower()
        if text == UNLIMITED_WITNESSES:
            return None
        try:
            value = int(text)
        except ValueError as ex:
            raise StructureError(
                f"witness_limit must be an integer or '{UNLIMITED_WITNESSES}', got {value!r}"
            ) from ex
    return None if value == 0 else value


@dataclass
class RunConfig:
    """
    Everything a subcommand needs besides its input.
    """

    subcommand: str = ""
    input_path: Optional[str] = None
    generator: Tuple[str, ...] = ()
    query: Tuple[str, ...] = ()
    class_id: Optional[str] = None
    include_products: bool = True
    all_ideals: bool = False
    node_budget: int = DEFAULT_NODE_BUDGET
    max_elements: int = DEFAULT_MAX_ELEMENTS
    allow_large: bool = False
    fragment_bound: int = DEFAULT_FRAGMENT_BOUND
    fragment_cap: int = DEFAULT_FRAGMENT_CAP
    witness_limit: Optional[int] = DEFAULT_WITNESS_LIMIT
    sample_triples: int = DEFAULT_SAMPLE_TRIPLES
    output_format: OutputFormat = OutputFormat.TEXT
    expectations: Dict[str, Any] = field(default_factory=dict)
    seed: int = 0
    jobs: int = 1

    def __post_init__(self):
        if isinstance(self.output_format, str):
            try:
                self.output_format = OutputFormat(self.output_format)
            except ValueError as ex:
                raise StructureError(
                    f"format must be one of {', '.join(f.value for f in OutputFormat)}"
                ) from ex
        if self.class_id is not None:
            self.class_id = self.class_id.upper()
            if self.class_id not in ("R", "T"):
                raise StructureError(f"class must be R or T, got {self.class_id}")
        self.witness_limit = parse_witness_limit(self.witness_limit)
        self.validate()

    def validate(self) -> None:
        """
        :raises StructureError: If a budget is not positive
        """
        for name in ("node_budget", "max_elements", "fragment_cap", "sample_triples", "jobs"):
            if getattr(self, name) < 1:
                raise StructureError(f"{name} must be positive, got {getattr(self, name)}")
        if self.fragment_bound < 0:
            raise StructureError(f"fragment_bound must be non-negative, got {self.fragment_bound}")
        if self.witness_limit is not None and self.witness_limit < 1:
            raise StructureError(
                f"witness_limit must be positive, 0 or '{UNLIMITED_WITNESSES}', "
                f"got {self.witness_limit}"
            )

    @classmethod
    def build(cls, defaults_path: Optional[str] = None, **overrides: Any) -> "RunConfig":
        """
        Layers the defaults file under explicit values; None means "not given".

        :param defaults_path: YAML defaults file
        :type defaults_path: Optional[str]
        :param overrides: Field values from the command line
        :type overrides: Any
        :raises StructureError: If a field is unknown or a value is invalid
        :return: Validated configuration
        :rtype: RunConfig
        """
        known = {item.name for item in fields(cls)}
        unknown = sorted(set(overrides) - known)
        if unknown:
            raise StructureError(f"unknown configuration fields: {', '.join(unknown)}")
        values = load_defaults(defaults_path)
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls(**values)
