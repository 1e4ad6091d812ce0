"""Acceptance suite: one test per shipped criterion, one line per verdict.

Run with ``pytest tests/test_acceptance.py -v -s`` (or ``ims selftest``).
"""

import pytest

from ims.selftest import CRITERIA


def _run(number):
    result = CRITERIA[number]()
    print()
    print(result.line())
    for d in result.details:
        print(f"  {d}")
    assert result.passed, "\n".join([result.line(), *result.details])


def test_criterion_1_oracle_equivalence():
    _run(1)


def test_criterion_2_basis_verification():
    _run(2)


def test_criterion_3_chain_completion():
    _run(3)


def test_criterion_4_elimination_closed_form():
    _run(4)


def test_criterion_5_complement_laws():
    _run(5)


def test_criterion_6_measure_correspondences():
    _run(6)


def test_criterion_7_chain_vanishing():
    _run(7)


def test_criterion_8_reduced_universes():
    _run(8)
