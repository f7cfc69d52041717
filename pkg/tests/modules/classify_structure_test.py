# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""
Unit tests for the classify_structure module.
"""

import pytest
import yaml

from src.module_utils.construct import benzene_orthoposet, even_sets_family, powerset_family
from src.module_utils.enums import ConsistencyError
from src.module_utils.odp import DeltaTable
from src.module_utils.run_config import RunConfig, parse_expectations
from src.module_utils.structure_io import format_documents, format_family, format_odp
from src.modules.classify_structure import StructureClassifier


@pytest.fixture
def write_input(tmp_path):
    """
    Writes structure text to a file and returns its path.

    :return: Writer function
    :rtype: Callable[[str], str]
    """

    def write(text):
        path = tmp_path / "input.odp"
        path.write_text(text, encoding="utf-8")
        return str(path)

    return write


class TestStructureClassifier:
    """
    Test class for the StructureClassifier class.
    """

    def test_even4_text(self, write_input):
        """
        MO3 is a non-Boolean lattice outside every class, with witnesses.
        """
        path = write_input(format_family(even_sets_family(4), "even-4"))
        module = StructureClassifier(RunConfig(input_path=path))
        assert module.execute() == 0
        output = module.get_output()
        assert output.startswith(
            "even-4 (8 elements)\n"
            "  in_R: no\n"
            "  in_S: no\n"
            "  in_T: no\n"
            "  is_lattice: yes\n"
            "  is_boolean: no\n"
            "  ideal_count: 6\n"
        )
        assert "    in_R: ({0,1}, {0,2})\n" in output
        assert "    in_S: ideal {{}, {0,1}} misses ({0,2}, {1,3})\n" in output
        assert "expectations" not in output

    def test_powerset_has_no_witnesses(self, write_input):
        """
        A Boolean algebra is in every class.
        """
        path = write_input(format_family(powerset_family(2), "powerset-2"))
        module = StructureClassifier(RunConfig(input_path=path))
        assert module.execute() == 0
        output = module.get_output()
        assert "  is_boolean: yes\n" in output
        assert "  selective_count: 2\n" in output
        assert "witnesses" not in output

    def test_expectations_met(self, write_input):
        """
        Matching expectations keep the exit code at 0.
        """
        path = write_input(format_family(even_sets_family(4), "even-4"))
        config = RunConfig(
            input_path=path, expectations=parse_expectations("in_R=false,ideal_count=6")
        )
        module = StructureClassifier(config)
        assert module.execute() == 0
        assert "  expectations: met\n" in module.get_output()

    def test_expectations_failed(self, write_input):
        """
        A mismatch is listed and exits with 1.
        """
        path = write_input(format_family(even_sets_family(4), "even-4"))
        config = RunConfig(input_path=path, expectations=parse_expectations("in_T=true"))
        module = StructureClassifier(config)
        assert module.execute() == 1
        output = module.get_output()
        assert "  expectations: FAILED\n    in_T: expected true, got false\n" in output

    def test_doc_format(self, write_input):
        """
        doc writes the report fields in their fixed order.
        """
        text = format_documents(
            [
                format_family(powerset_family(1), "p1"),
                format_family(even_sets_family(4), "e4"),
            ]
        )
        module = StructureClassifier(RunConfig(input_path=write_input(text), output_format="doc"))
        assert module.execute() == 0
        documents = list(yaml.safe_load_all(module.get_output()))
        assert [doc["in_R"] for doc in documents] == [True, False]
        assert list(documents[1])[:4] == ["name", "elements", "in_R", "in_S"]
        assert documents[1]["witnesses"]["in_T"] == ["{0,1}", "{0,2}"]

    def test_non_odp_is_not_classified(self, write_input, powerset2):
        """
        Axiom violations are reported like verify does, with exit code 1.
        """
        poset, delta = powerset2
        table = delta.table.tolist()
        table[1][3] = 1
        path = write_input(format_odp(poset, DeltaTable(table), "broken"))
        module = StructureClassifier(RunConfig(input_path=path))
        assert module.execute() == 1
        assert module.get_output().startswith("broken: violated (odp, 4 elements)")

    def test_delta_is_required(self, write_input):
        """
        A bare orthoposet cannot be classified.
        """
        path = write_input(format_odp(benzene_orthoposet(), None, "benzene"))
        module = StructureClassifier(RunConfig(input_path=path))
        assert module.execute() == 2
        assert module.error_message == "benzene: classification needs a delta table"

    def test_dot_is_rejected(self, write_input):
        """
        classify has no diagram output.
        """
        path = write_input(format_family(powerset_family(1)))
        module = StructureClassifier(RunConfig(input_path=path, output_format="dot"))
        assert module.execute() == 2

    def test_broken_chain_is_a_consistency_error(self, write_input, mocker):
        """
        A report breaking R => S => T points at the checker.
        """
        report = mocker.MagicMock()
        report.chain_violations.return_value = ["in_R => in_S"]
        mocker.patch("src.modules.classify_structure.classify", return_value=report)
        path = write_input(format_family(powerset_family(1), "p1"))
        module = StructureClassifier(RunConfig(input_path=path))
        assert module.execute() == 1
        assert module.error_message == "p1: class chain broken (in_R => in_S)"
        with pytest.raises(ConsistencyError):
            module.classify(module.load_structures()[0])

    def test_budget_leaves_s_unknown(self, write_input):
        """
        An exhausted node budget reports in_S as unknown, not as an error.
        """
        path = write_input(format_family(even_sets_family(4), "even-4"))
        module = StructureClassifier(RunConfig(input_path=path, node_budget=1))
        assert module.execute() == 0
        output = module.get_output()
        assert "  in_S: unknown\n" in output
        assert "  ideal_count: unknown\n" in output
