# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.


"""
Constants module for odp-lab.
This module contains the default budgets, the axiom names used in
violation reports and the recurring diagnostic messages.
"""

DEFAULT_MAX_ELEMENTS = 512
DEFAULT_NODE_BUDGET = 10_000_000
DEFAULT_WITNESS_LIMIT = 16
DEFAULT_FRAGMENT_BOUND = 12
DEFAULT_FRAGMENT_CAP = 14
DEFAULT_SAMPLE_TRIPLES = 200_000
BRUTE_FORCE_MAX_ELEMENTS = 12
ALL_IDEALS_MAX_ELEMENTS = 64
MAX_SUBGROUP_UNIVERSE = 5

ENV_PREFIX = "ODPLAB_"
ERROR_PREFIX = "error:"
UNLIMITED_WITNESSES = "all"

ORTHOPOSET_AXIOMS = {
    "reflexive": "x <= x",
    "antisymmetric": "x <= y and y <= x imply x = y",
    "transitive": "x <= y and y <= z imply x <= z",
    "bottom": "0 <= x",
    "top": "x <= 1",
    "involution": "perp(perp(x)) = x",
    "antitone": "x <= y implies perp(y) <= perp(x)",
    "complement_meet": "x ∧ x^⊥ = 0",
    "complement_join": "x ∨ x^⊥ = 1",
}

ODP_AXIOMS = {
    "associativity": "x Δ (y Δ z) = (x Δ y) Δ z",
    "top_complement": "x Δ 1 = 1 Δ x = x^⊥",
    "upper_bound": "x <= z and y <= z imply x Δ y <= z",
}

DELTA_IDENTITIES = {
    "self_inverse": "x Δ x = 0",
    "right_identity": "x Δ 0 = x",
    "left_identity": "0 Δ x = x",
}

ORTHOMODULAR_LAW = "x <= y implies y = x ∨ (y ∧ x^⊥)"
DE_MORGAN_LAW = "a ∧ b = (a^⊥ ∨ b^⊥)^⊥"

CLASS_REPORT_FIELDS = (
    "in_R",
    "in_S",
    "in_T",
    "is_lattice",
    "is_boolean",
    "ideal_count",
    "selective_count",
)
