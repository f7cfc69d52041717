# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""
This module is used to setup the context shared by every odp-lab subcommand:
logging, the result dictionary, error handling and input loading.
"""

from abc import ABC, abstractmethod
import sys
import logging
import traceback
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, Dict, Iterable, List, Optional, TypeVar

from src.module_utils.enums import (
    CheckStatus,
    ConsistencyError,
    ExitCode,
    OdpLabError,
    OutputFormat,
    Result,
)
from src.module_utils.rendering import render_document, render_template
from src.module_utils.run_config import RunConfig
from src.module_utils.structure_io import Structure, parse_structures

T = TypeVar("T")
R = TypeVar("R")

LOGGER_NAME = "odp-lab"


class OdpLab(ABC):
    """
    This class is used to setup the context for a subcommand run
    and the base variables shared by all odp-lab modules.
    """

    def __init__(self, config: Optional[RunConfig] = None):
        self.config = config if config is not None else RunConfig()
        self.logger = self.setup_logger()
        self.result = Result().to_dict()
        self.output: List[str] = []
        self.error_message: Optional[str] = None

    def setup_logger(self) -> logging.Logger:
        """
        This method is used to setup the logger for the run.
        Standard output is reserved for reports, so log records go to standard error.

        :return: Configured logger instance
        :rtype: logging.Logger
        """
        logger = logging.getLogger(LOGGER_NAME)
        logger.setLevel(logging.INFO)
        if not logger.handlers:
            log_format = logging.Formatter("%(asctime)s - %(levelname)s - %(message)s")
            stream_handler = logging.StreamHandler(sys.stderr)
            stream_handler.setFormatter(log_format)
            logger.addHandler(stream_handler)
        return logger

    def log(self, level: int, message: str):
        """
        Logs a message and adds it to the result logs.

        :param level: Logging level (e.g., logging.INFO, logging.ERROR)
        :type level: int
        :param message: Message to log
        :type message: str
        """
        self.logger.log(level, message)
        self.result["logs"].append(message.replace("\n", " "))

    def handle_error(self, exception: Exception, context: str = ""):
        """
        Handles errors by logging and updating the result dictionary.

        :param exception: Exception raised during the run
        :type exception: Exception
        :param context: What was being done when the error occurred
        :type context: str
        """
        error_message = f"{exception}"
        if context:
            error_message = f"{context}: {error_message}"
        self.log(logging.ERROR, error_message)
        self.result["status"] = CheckStatus.ERROR.value
        self.result["message"] = error_message
        self.result["logs"].append(f"Traceback:\n{traceback.format_exc()}")

    def read_text(self, path: Optional[str]) -> str:
        """
        Reads a UTF-8 input file, or standard input when the path is empty or "-".

        :param path: Input file path
        :type path: Optional[str]
        :return: File content
        :rtype: str
        """
        if not path or path == "-":
            self.log(logging.DEBUG, "Reading structure from standard input")
            return sys.stdin.read()
        self.log(logging.DEBUG, f"Reading structure from {path}")
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()

    def load_structures(self, path: Optional[str] = None) -> List[Structure]:
        """
        Loads and parses every document of a structure stream.

        :param path: Input file path, defaults to the configured input
        :type path: Optional[str]
        :return: Parsed structures in stream order
        :rtype: List[Structure]
        """
        source = path if path is not None else self.config.input_path
        structures = parse_structures(
            self.read_text(source),
            max_elements=self.config.max_elements,
            allow_large=self.config.allow_large,
        )
        for index, structure in enumerate(structures):
            if not structure.name:
                structure.name = f"input-{index + 1}" if len(structures) > 1 else "input"
            self.log(
                logging.INFO,
                f"Loaded {structure.mode} structure {structure.name} "
                f"with {structure.poset.size} elements",
            )
        return structures

    def map_jobs(self, function: Callable[[T], R], items: Iterable[T]) -> List[R]:
        """
        Applies a function to independent work items on `config.jobs` threads.
        Results keep the order of the items whatever the job count.

        :param function: Work function
        :type function: Callable[[T], R]
        :param items: Work items
        :type items: Iterable[T]
        :return: Results in item order
        :rtype: List[R]
        """
        items = list(items)
        if self.config.jobs <= 1 or len(items) <= 1:
            return [function(item) for item in items]
        with ThreadPoolExecutor(max_workers=self.config.jobs) as executor:
            return list(executor.map(function, items))

    def emit(self, text: str):
        """
        Appends report text to the run output.

        :param text: Report text
        :type text: str
        """
        self.output.append(text)

    def emit_report(self, template_name: str, data: Dict[str, Any], **context: Any):
        """
        Renders a report in the configured format: the named template for text,
        a YAML document for doc. Consecutive documents are separated by "---".

        :param template_name: Text template inside src/templates
        :type template_name: str
        :param data: Report data with a stable key order
        :type data: Dict[str, Any]
        :param context: Extra template variables, not part of the document
        :type context: Any
        """
        if self.config.output_format is OutputFormat.DOC:
            if any(chunk.strip() for chunk in self.output):
                self.emit("---\n")
            self.emit(render_document(data))
        else:
            self.emit(render_template(template_name, {**data, **context}))

    def get_output(self) -> str:
        """
        :return: Everything emitted so far
        :rtype: str
        """
        return "".join(self.output)

    def execute(self) -> int:
        """
        Runs the subcommand and maps failures to exit codes: theorem violations on
        verified input exit like axiom violations, every other failure is an input error.

        :return: Process exit code
        :rtype: int
        """
        try:
            code = self.run_module()
        except ConsistencyError as ex:
            self.handle_error(ex)
            self.error_message = str(ex)
            return ExitCode.VIOLATION.value
        except (OdpLabError, ValueError, IndexError, OSError) as ex:
            self.handle_error(ex)
            self.error_message = str(ex)
            return ExitCode.INPUT_ERROR.value
        self.result["status"] = (
            CheckStatus.SUCCESS.value if code == ExitCode.SUCCESS.value else CheckStatus.ERROR.value
        )
        return code

    @abstractmethod
    def run_module(self) -> int:
        """
        Runs the subcommand and emits its report.

        :return: Process exit code
        :rtype: int
        """

    def get_result(self) -> Dict[str, Any]:
        """
        Returns the result dictionary.

        :return: The result dictionary containing the status, message, details, and logs.
        :rtype: Dict[str, Any]
        """
        return self.result
