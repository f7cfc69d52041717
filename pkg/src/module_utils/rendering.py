# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""
Rendering helpers: jinja2 templates for text and DOT output, YAML for machine-readable documents.
"""

import os
from typing import Any, Dict

import jinja2
import yaml

TEMPLATE_DIRECTORY = os.path.join(os.path.dirname(os.path.dirname(__file__)), "templates")

_ENVIRONMENT = jinja2.Environment(
    loader=jinja2.FileSystemLoader(TEMPLATE_DIRECTORY),
    keep_trailing_newline=True,
    trim_blocks=True,
    lstrip_blocks=True,
    undefined=jinja2.StrictUndefined,
)
_ENVIRONMENT.filters["dot_escape"] = lambda value: str(value).replace("\\", "\\\\").replace(
    '"', '\\"'
)
_ENVIRONMENT.filters["yesno"] = lambda value: (
    "unknown" if value is None else ("yes" if value else "no")
)


def render_template(template_name: str, context: Dict[str, Any]) -> str:
    """
    Renders one of the bundled jinja2 templates.

    :param template_name: File name inside src/templates
    :type template_name: str
    :param context: Template variables
    :type context: Dict[str, Any]
    :return: Rendered text
    :rtype: str
    """
    return _ENVIRONMENT.get_template(template_name).render(context)


def render_document(data: Dict[str, Any]) -> str:
    """
    Emits a machine-readable YAML document. Key order is the insertion order of `data`.

    :param data: Key-value tree made of dicts, lists and scalars
    :type data: Dict[str, Any]
    :return: YAML text
    :rtype: str
    """
    return yaml.safe_dump(data, sort_keys=False, allow_unicode=True, default_flow_style=False)
