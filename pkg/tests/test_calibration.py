"""Selection of the oracle product convention."""

import dataclasses

import pytest

from qschur.calibration import (CALIBRATED, CANDIDATES, DEFAULT_GRID, Convention, calibrate, mismatches,
                                write_record)
from qschur.errors import InvalidArgs


@pytest.fixture(scope="module")
def record():
    return calibrate()


def test_exactly_one_candidate_survives(record):
    assert len(CANDIDATES) == 16
    assert record["passing"] == [CALIBRATED.to_json()]
    assert Convention.from_json(record["selected"]) == CALIBRATED


def test_q_normalisation_fails():
    bad, total = mismatches(dataclasses.replace(CALIBRATED, normalization="q"))
    assert total > 0 and bad > 0


def test_unsigned_basis_fails():
    bad, _ = mismatches(dataclasses.replace(CALIBRATED, basis_sign="none"))
    assert bad > 0


def test_basis_sign_needs_two_odd_indices():
    # with a single odd index the transpose sign is identically zero
    unsigned = dataclasses.replace(CALIBRATED, basis_sign="none")
    assert mismatches(unsigned, [(1, 1, 3), (2, 1, 3)])[0] == 0
    assert mismatches(unsigned, [(1, 2, 2)])[0] > 0


def test_reversed_order_fails():
    bad, _ = mismatches(dataclasses.replace(CALIBRATED, order="apply_right_first"))
    assert bad > 0


def test_frozen_choice_on_wider_grid():
    bad, total = mismatches(CALIBRATED, [(2, 1, 3), (1, 2, 3)])
    assert total > 1000 and bad == 0


def test_record_file(tmp_path):
    path = tmp_path / "calibration.json"
    rec = write_record(str(path), grid=DEFAULT_GRID[:1])
    assert path.read_text().strip().startswith("{")
    assert rec["schema"] == 1


def test_convention_validation():
    with pytest.raises(InvalidArgs):
        Convention("sideways", "none", "none", "v")
    with pytest.raises(InvalidArgs):
        Convention.from_json({"order": "apply_left_first"})
    assert Convention.from_json(CALIBRATED.to_json()) == CALIBRATED
