import json

import numpy as np
import pytest

from cesarolab.fractional import frac_cesaro_matrix
from cesarolab.hardy import OperatorMatrix, cesaro_matrix
from cesarolab.semigroup import composition_matrix
from cesarolab.serialize import from_csv, from_json, to_csv, to_json


@pytest.mark.parametrize("op", [
    cesaro_matrix(6),
    composition_matrix(0.37, 9),
    frac_cesaro_matrix(0.5 + 0.25j, 8),
    OperatorMatrix(np.random.default_rng(1).standard_normal((4, 4)) * 1e-300),
])
def test_round_trips_are_value_exact(op):
    for back in (from_csv(to_csv(op)), from_json(to_json(op))):
        assert np.array_equal(back.entries, op.entries)
        assert back.N == op.N
    assert from_json(to_json(op)).structure == op.structure


def test_csv_cells_are_re_im_pairs():
    text = to_csv(cesaro_matrix(1))
    assert text.splitlines()[1] == '"0.5,0.0","0.5,0.0"'


def test_json_layout():
    payload = json.loads(to_json(cesaro_matrix(2)))
    assert payload["n"] == 2
    assert payload["structure"] == "lower-triangular"
    assert payload["entries"][2][0] == [1 / 3, 0.0]


def test_json_shape_mismatch_rejected():
    bad = json.dumps({"n": 3, "structure": None, "entries": [[[1, 0]]]})
    with pytest.raises(ValueError):
        from_json(bad)
