# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""
Unit tests for the generate_structure module.
"""

import pytest

from src.module_utils.construct import even_sets_family, powerset_family
from src.module_utils.run_config import RunConfig
from src.module_utils.structure_io import format_family, parse_structure, parse_structures
from src.modules.generate_structure import StructureGenerator


def generate(*generator, **config):
    """
    Runs one generator request.

    :return: The module after execute, and its exit code
    :rtype: tuple
    """
    module = StructureGenerator(RunConfig(subcommand="generate", generator=generator, **config))
    return module, module.execute()


class TestStructureGenerator:
    """
    Test class for the StructureGenerator class.
    """

    def test_powerset(self):
        """
        Power sets are written as named family documents.
        """
        module, code = generate("powerset", "2")
        assert code == 0
        assert module.get_output() == format_family(powerset_family(2), "powerset-2")

    def test_even(self):
        """
        Even-set families carry their universe size in the name.
        """
        module, code = generate("even", "4")
        assert code == 0
        structure = parse_structure(module.get_output())
        assert structure.name == "even-4"
        assert structure.family == even_sets_family(4)

    def test_delta_closure(self):
        """
        Generators are bitstrings over the universe, character i for element i.
        """
        module, code = generate("delta-closure", "3", "100", "011")
        assert code == 0
        structure = parse_structure(module.get_output())
        assert structure.name == "delta-closure-3"
        assert sorted(structure.family.members) == [0, 1, 6, 7]

    def test_product_of_named_factors(self):
        """
        Factors can be named generators; the product is written as an odp document.
        """
        module, code = generate("product", "powerset:1", "even:2")
        assert code == 0
        structure = parse_structure(module.get_output())
        assert structure.mode == "odp"
        assert structure.name == "powerset-1*even-2"
        assert structure.poset.size == 4
        assert structure.delta is not None

    def test_product_of_file_factors(self, tmp_path):
        """
        Factors can also be structure files.
        """
        path = tmp_path / "square.odp"
        path.write_text(format_family(powerset_family(2), "square"), encoding="utf-8")
        module, code = generate("product", str(path), "powerset:1")
        assert code == 0
        assert parse_structure(module.get_output()).poset.size == 8

    def test_product_factor_needs_delta(self, tmp_path):
        """
        A bare orthoposet cannot be a factor.
        """
        benzene, _ = generate("benzene")
        path = tmp_path / "benzene.odp"
        path.write_text(benzene.get_output(), encoding="utf-8")
        module, code = generate("product", str(path), "powerset:1")
        assert code == 2
        assert "must hold exactly one ODP" in module.error_message

    def test_base_corpus(self):
        """
        Without products the corpus holds the 25 base families.
        """
        module, code = generate("corpus", include_products=False)
        assert code == 0
        structures = parse_structures(module.get_output())
        assert len(structures) == 25
        assert structures[0].name == "powerset-1"
        assert all(structure.mode == "family" for structure in structures)

    def test_benzene(self):
        """
        The benzene ring is written without a Δ table.
        """
        module, code = generate("benzene")
        assert code == 0
        structure = parse_structure(module.get_output())
        assert structure.name == "benzene"
        assert structure.delta is None
        assert structure.poset.labels == ("0", "a", "b", "b'", "a'", "1")

    def test_mo_dot(self):
        """
        dot writes Hasse diagrams.
        """
        module, code = generate("mo", "2", output_format="dot")
        assert code == 0
        output = module.get_output()
        assert output.startswith("digraph mo_2 {")
        assert "  n2 [label=\"x1'\"];\n" in output

    @pytest.mark.parametrize(
        "generator, message",
        [
            ((), "generate needs a kind"),
            (("cube", "3"), "unknown generator 'cube'"),
            (("powerset",), "takes 1 argument(s), got 0"),
            (("powerset", "two"), "powerset size must be an integer"),
            (("delta-closure",), "takes N and generator bitstrings"),
            (("delta-closure", "3", "10"), "must be a 3-character bitstring"),
            (("powerset", "10"), "exceed the cap of 512"),
            (("benzene", "1"), "takes 0 argument(s)"),
        ],
    )
    def test_bad_requests_exit_2(self, generator, message):
        """
        Unknown kinds, bad arguments and oversized requests are input errors.
        """
        module, code = generate(*generator)
        assert code == 2
        assert message in module.error_message

    def test_allow_large(self):
        """
        The override lifts the element cap.
        """
        module, code = generate("powerset", "3", max_elements=4, allow_large=True)
        assert code == 0
        assert parse_structure(module.get_output()).poset.size == 8

    def test_doc_is_rejected(self):
        """
        Generated structures are structure text, not reports.
        """
        module, code = generate("powerset", "1", output_format="doc")
        assert code == 2
        assert module.error_message == "generate writes structure text or dot"
