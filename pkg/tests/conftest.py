# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""
Shared fixtures for the odp-lab test suite.
"""

import logging

import pytest

from src.module_utils.construct import even_sets_odp, powerset_odp


@pytest.fixture(autouse=True)
def reset_odp_lab_logger():
    """
    Drops the handlers of the odp-lab logger so every test binds a fresh stderr stream.
    """
    logger = logging.getLogger("odp-lab")
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
    yield
    for handler in list(logger.handlers):
        logger.removeHandler(handler)


@pytest.fixture
def even4():
    """
    Even-cardinality subsets of {0,1,2,3}: eight elements, outside R, S and T.

    :return: Poset and Δ table
    :rtype: tuple
    """
    return even_sets_odp(4)


@pytest.fixture
def powerset2():
    """
    The Boolean algebra 2^2.

    :return: Poset and Δ table
    :rtype: tuple
    """
    return powerset_odp(2)


@pytest.fixture
def powerset3():
    """
    The Boolean algebra 2^3.

    :return: Poset and Δ table
    :rtype: tuple
    """
    return powerset_odp(3)
