# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""
Command-line entry point of odp-lab.

Every subcommand reads its defaults from vars.yaml, lets flags (and their
ODPLAB_* environment variables) override them, runs one module and exits with
0 on success, 1 on violations or failed expectations and 2 on input errors.
Reports go to standard output, logs and "error:" lines to standard error.
"""

from types import ModuleType
from typing import Any, Callable, Optional, Tuple, Type

import click
import yaml

from src.module_utils.constants import ENV_PREFIX, ERROR_PREFIX
from src.module_utils.enums import ExitCode, OdpLabError, OutputFormat
from src.module_utils.odp_lab import OdpLab
from src.module_utils.run_config import RunConfig, parse_expectations
from src.modules import (
    classify_structure,
    corpus_check,
    enumerate_ideals,
    epset_query,
    generate_structure,
    represent_structure,
    verify_structure,
)


def _short_help(module: ModuleType) -> Optional[str]:
    documentation = getattr(module, "DOCUMENTATION", None)
    if documentation is None:
        return None
    return yaml.safe_load(documentation).get("short_description")


def _env(name: str) -> str:
    return f"{ENV_PREFIX}{name}"


def analysis_options(function: Callable) -> Callable:
    """
    Adds the budget, format, seed and jobs flags shared by every subcommand.

    :param function: Click command callback
    :type function: Callable
    :return: The decorated callback
    :rtype: Callable
    """
    options = [
        click.option(
            "--budget-nodes",
            "node_budget",
            type=int,
            envvar=_env("BUDGET_NODES"),
            help="Node budget of the Frink ideal search.",
        ),
        click.option(
            "--max-elements",
            type=int,
            envvar=_env("MAX_ELEMENTS"),
            help="Element cap of input and generated structures.",
        ),
        click.option(
            "--allow-large",
            is_flag=True,
            envvar=_env("ALLOW_LARGE"),
            help="Accept structures above the element cap.",
        ),
        click.option(
            "--fragment-bound",
            type=int,
            envvar=_env("FRAGMENT_BOUND"),
            help="Exclusive bound of the exception positions scanned by epset.",
        ),
        click.option(
            "--fragment-cap",
            type=int,
            envvar=_env("FRAGMENT_CAP"),
            help="Maximum number of exception positions enumerated by epset.",
        ),
        click.option(
            "--witness-limit",
            type=str,
            metavar="N|all",
            envvar=_env("WITNESS_LIMIT"),
            help="Witnesses kept per violated axiom; 0 or 'all' keeps every witness.",
        ),
        click.option(
            "--format",
            "output_format",
            type=click.Choice([item.value for item in OutputFormat]),
            envvar=_env("FORMAT"),
            help="Report format.",
        ),
        click.option("--seed", type=int, envvar=_env("SEED"), help="Seed of sampled checks."),
        click.option("--jobs", type=int, envvar=_env("JOBS"), help="Worker threads."),
    ]
    for option in reversed(options):
        function = option(function)
    return function


def _run(module_class: Type[OdpLab], subcommand: str, **fields: Any) -> None:
    context = click.get_current_context()
    try:
        config = RunConfig.build(subcommand=subcommand, **fields)
    except (OdpLabError, ValueError) as ex:
        click.echo(f"{ERROR_PREFIX} {ex}", err=True)
        context.exit(ExitCode.INPUT_ERROR.value)
    module = module_class(config)
    code = module.execute()
    output = module.get_output()
    if output:
        click.echo(output, nl=False)
    if module.error_message is not None:
        click.echo(f"{ERROR_PREFIX} {module.error_message}", err=True)
    context.exit(code)


@click.group()
def main() -> None:
    """
    Verification and exploration toolkit for orthocomplemented difference posets.
    """


@main.command(short_help=_short_help(verify_structure))
@click.argument("input_path", required=False)
@analysis_options
def verify(**fields: Any) -> None:
    """
    Check orthoposet and ODP axioms of every document in INPUT_PATH (default: stdin).
    """
    _run(verify_structure.StructureVerifier, "verify", **fields)


@main.command(short_help=_short_help(classify_structure))
@click.argument("input_path", required=False)
@click.option(
    "--expect",
    envvar=_env("EXPECT"),
    help="Comma separated key=value expectations, e.g. in_R=false,ideal_count=6.",
)
@analysis_options
def classify(expect: Optional[str], **fields: Any) -> None:
    """
    Classify every ODP in INPUT_PATH (default: stdin) into R, S and T.
    """
    try:
        expectations = parse_expectations(expect)
    except OdpLabError as ex:
        click.echo(f"{ERROR_PREFIX} {ex}", err=True)
        click.get_current_context().exit(ExitCode.INPUT_ERROR.value)
    _run(classify_structure.StructureClassifier, "classify", expectations=expectations, **fields)


@main.command(short_help=_short_help(enumerate_ideals))
@click.argument("input_path", required=False)
@click.option("--all", "all_ideals", is_flag=True, help="List every proper Frink ideal.")
@analysis_options
def ideals(**fields: Any) -> None:
    """
    List the maximal Frink ideals of every structure in INPUT_PATH (default: stdin).
    """
    _run(enumerate_ideals.IdealLister, "ideals", **fields)


@main.command(short_help=_short_help(represent_structure))
@click.argument("input_path", required=False)
@analysis_options
def represent(**fields: Any) -> None:
    """
    Represent every ODP in INPUT_PATH (default: stdin) by sets of selective maximal ideals.
    """
    _run(represent_structure.RepresentationBuilder, "represent", **fields)


@main.command(short_help=_short_help(generate_structure))
@click.argument("kind")
@click.argument("arguments", nargs=-1)
@click.option(
    "--products/--no-products",
    "include_products",
    default=True,
    help="Include the pair products in the corpus.",
)
@analysis_options
def generate(kind: str, arguments: Tuple[str, ...], **fields: Any) -> None:
    """
    Write structures of KIND: powerset N, even 2K, product F1 F2,
    delta-closure N BITS..., corpus, benzene or mo N.
    """
    _run(
        generate_structure.StructureGenerator,
        "generate",
        generator=(kind, *arguments),
        **fields,
    )


@main.command(short_help=_short_help(epset_query))
@click.argument("verb")
@click.argument("arguments", nargs=-1)
@click.option(
    "--class",
    "class_id",
    type=click.Choice(["R", "T"], case_sensitive=False),
    help="Class whose implication witness-search refutes.",
)
@analysis_options
def epset(verb: str, arguments: Tuple[str, ...], **fields: Any) -> None:
    """
    Run VERB (eval, member, meets-zero, lower-bound, witness-search) on eventually
    periodic sets and the families R and T.
    """
    _run(epset_query.EPSetQuery, "epset", query=(verb, *arguments), **fields)


@main.command("corpus-check", short_help=_short_help(corpus_check))
@click.option(
    "--products/--no-products",
    "include_products",
    default=True,
    help="Include the pair products in the corpus.",
)
@analysis_options
def corpus_check_command(**fields: Any) -> None:
    """
    Run the acceptance properties over the frozen corpus.
    """
    _run(corpus_check.CorpusCheck, "corpus-check", **fields)


if __name__ == "__main__":
    main()  # pylint: disable=no-value-for-parameter
