import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from _util import crandn
from polarpert import InvalidMatrix
from polarpert.jsonio import (
    dumps,
    loads,
    matrix_from_json,
    matrix_to_json,
    subspace_from_json,
    subspace_to_json,
)
from polarpert.subspace import Subspace


@given(st.integers(0, 2**32 - 1), st.integers(1, 6), st.integers(1, 6))
def test_matrix_round_trip_is_exact(seed, m, n):
    a = crandn(np.random.default_rng(seed), m, n)
    assert np.array_equal(matrix_from_json(loads(dumps(matrix_to_json(a)))), a)


def test_matrix_layout_is_row_major():
    obj = matrix_to_json(np.array([[1, 2j], [3, 4]]))
    assert obj == {"rows": 2, "cols": 2, "data": [[1, 0], [0, 2], [3, 0], [4, 0]]}


@pytest.mark.parametrize(
    "obj",
    [
        [],
        {"rows": 1, "cols": 1},
        {"rows": 1, "cols": 1, "data": [[1, 0], [2, 0]]},
        {"rows": 1, "cols": 1, "data": [[1]]},
        {"rows": 1, "cols": 1, "data": [["1", 0]]},
        {"rows": 1, "cols": 1, "data": [[True, 0]]},
        {"rows": 0, "cols": 1, "data": []},
        {"rows": 1.5, "cols": 1, "data": [[1, 0]]},
    ],
)
def test_malformed_matrices_rejected(obj):
    with pytest.raises(InvalidMatrix):
        matrix_from_json(obj)


def test_nan_literal_rejected():
    with pytest.raises(InvalidMatrix):
        loads('{"rows": 1, "cols": 1, "data": [[NaN, 0]]}')


def test_subspace_round_trip_and_orthonormalisation(rng):
    s = Subspace.span(crandn(rng, 5, 2))
    back, was_on = subspace_from_json(subspace_to_json(s))
    assert was_on and np.allclose(back.basis, s.basis)
    raw = {"ambient": 2, "basis": matrix_to_json(np.array([[1.0, 2.0], [0.0, 0.0]]))}
    back, was_on = subspace_from_json(raw)
    assert not was_on and back.dim == 1
    zero = {"ambient": 3, "basis": {"rows": 3, "cols": 0, "data": []}}
    assert subspace_from_json(zero)[0].dim == 0


def test_dumps_sorts_keys():
    text = dumps({"b": 1, "a": np.float64(2.0), "c": np.bool_(True)})
    assert list(json.loads(text)) == ["a", "b", "c"]
