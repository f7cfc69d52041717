# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""
Unit tests for the odplab command line.
"""

import pytest
import yaml
from click.testing import CliRunner

from src.cli import main
from src.module_utils.construct import even_sets_family, powerset_family
from src.module_utils.structure_io import format_family


@pytest.fixture
def runner():
    """
    :return: Click runner with separate output streams
    :rtype: CliRunner
    """
    return CliRunner()


class TestCommandLine:
    """
    Test class for the click command group.
    """

    def test_help_lists_subcommands(self, runner):
        """
        Every subcommand is reachable from the group.
        """
        result = runner.invoke(main, ["--help"])
        assert result.exit_code == 0
        for name in ("verify", "classify", "ideals", "represent", "generate", "epset"):
            assert name in result.stdout
        assert "corpus-check" in result.stdout

    def test_short_help_comes_from_module_documentation(self):
        """
        Every subcommand takes its short help from its module's DOCUMENTATION block.
        """
        for command in main.commands.values():
            assert command.short_help
        assert main.commands["represent"].short_help == (
            "Maps verified ODPs into sets of selective maximal ideals"
        )

    def test_generate(self, runner):
        """
        generate writes the structure to standard output.
        """
        result = runner.invoke(main, ["generate", "even", "4"])
        assert result.exit_code == 0
        assert result.stdout == format_family(even_sets_family(4), "even-4")

    def test_classify_from_stdin(self, runner):
        """
        classify reads standard input when no path is given.
        """
        generated = format_family(even_sets_family(4), "even-4")
        result = runner.invoke(main, ["classify"], input=generated)
        assert result.exit_code == 0
        assert "  in_R: no\n" in result.stdout
        assert "  in_T: no\n" in result.stdout

    def test_failed_expectation_exits_1(self, runner):
        """
        An unmet --expect turns the run into a violation.
        """
        text = format_family(even_sets_family(4), "even-4")
        result = runner.invoke(main, ["classify", "--expect", "in_R=true"], input=text)
        assert result.exit_code == 1
        assert "in_R: expected true, got false" in result.stdout

    def test_bad_expectation_exits_2(self, runner):
        """
        Malformed expectations are rejected before any work is done.
        """
        result = runner.invoke(main, ["classify", "--expect", "in_Q=true"], input="")
        assert result.exit_code == 2
        assert "error: bad expectation" in result.stderr
        assert result.stdout == ""

    def test_verify_file(self, runner, tmp_path):
        """
        verify reads the named file.
        """
        path = tmp_path / "square.odp"
        path.write_text(format_family(powerset_family(2), "square"), encoding="utf-8")
        result = runner.invoke(main, ["verify", str(path)])
        assert result.exit_code == 0
        assert result.stdout.startswith("square: ok (family, 4 elements)\n")

    @pytest.mark.parametrize(
        "arguments, env, kept, dropped",
        [
            (["--witness-limit", "1"], {}, "      ... 1 more\n", "(3) 3 <= 3 fails"),
            (["--witness-limit", "all"], {}, "      (3) 3 <= 3 fails\n", "more"),
            (["--witness-limit", "0"], {}, "      (3) 3 <= 3 fails\n", "more"),
            ([], {"ODPLAB_WITNESS_LIMIT": "all"}, "      (3) 3 <= 3 fails\n", "more"),
        ],
    )
    def test_witness_limit(self, runner, tmp_path, arguments, env, kept, dropped):
        """
        0 and "all" keep every witness, from the flag or the environment.
        """
        path = tmp_path / "empty.odp"
        path.write_text(
            "odp v1\nname empty\nelements 4\nleq\n0000\n0000\n0000\n0000\nperp 3 2 1 0\n",
            encoding="utf-8",
        )
        result = runner.invoke(main, ["verify", *arguments, str(path)], env=env)
        assert result.exit_code == 1
        assert kept in result.stdout
        assert dropped not in result.stdout

    def test_bad_witness_limit_exits_2(self, runner):
        """
        A witness limit that is neither a number nor "all" is a usage error.
        """
        result = runner.invoke(main, ["verify", "--witness-limit", "many"], input="")
        assert result.exit_code == 2
        assert result.stderr == "error: witness_limit must be an integer or 'all', got 'many'\n"

    def test_missing_file_exits_2(self, runner, tmp_path):
        """
        An unreadable input file is an input error reported on stderr.
        """
        result = runner.invoke(main, ["verify", str(tmp_path / "absent.odp")])
        assert result.exit_code == 2
        assert "error:" in result.stderr

    def test_ideals_all(self, runner):
        """
        --all lists every proper Frink ideal.
        """
        text = format_family(powerset_family(2))
        result = runner.invoke(main, ["ideals", "--all"], input=text)
        assert result.exit_code == 0
        assert result.stdout.splitlines()[0] == "1000 selective=no maximal=no"

    def test_represent(self, runner):
        """
        represent reports the embedding flags.
        """
        text = format_family(powerset_family(1), "p1")
        result = runner.invoke(main, ["represent"], input=text)
        assert result.exit_code == 0
        assert result.stdout.startswith("p1: 1 selective maximal ideal(s)\n")

    def test_epset_eval(self, runner):
        """
        epset verbs take their arguments positionally.
        """
        result = runner.invoke(main, ["epset", "eval", "symdiff(A1,A2)"])
        assert result.exit_code == 0
        assert result.stdout == "ep(p=6; prefix=0b; tail={2,3,4})  # A3\n"

    def test_epset_class_option(self, runner):
        """
        --class is case insensitive.
        """
        result = runner.invoke(main, ["epset", "witness-search", "T", "--class", "t"])
        assert result.exit_code == 0
        assert "class: T\n" in result.stdout

    def test_format_from_environment(self, runner):
        """
        ODPLAB_* variables stand in for flags.
        """
        result = runner.invoke(
            main, ["epset", "eval", "A1"], env={"ODPLAB_FORMAT": "doc"}
        )
        assert result.exit_code == 0
        assert yaml.safe_load(result.stdout)["name"] == "A1"

    @pytest.mark.parametrize(
        "arguments",
        [
            ["verify", "--format", "html"],
            ["generate"],
            ["epset", "witness-search", "T", "--class", "S"],
            ["unknown"],
        ],
    )
    def test_usage_errors_exit_2(self, runner, arguments):
        """
        click rejects bad choices, missing arguments and unknown commands.
        """
        result = runner.invoke(main, arguments)
        assert result.exit_code == 2

    def test_invalid_configuration_exits_2(self, runner):
        """
        Values the configuration refuses are reported like input errors.
        """
        result = runner.invoke(main, ["epset", "eval", "A1", "--jobs", "0"])
        assert result.exit_code == 2
        assert "error: jobs must be positive, got 0" in result.stderr
