import json

import numpy as np
import pytest

from bornjordan import builtins, gridio
from bornjordan.torus import GridOperator, GridSpec, GridState, PhaseSpaceGridFunction, gaussian_state, harper

SPEC = GridSpec(16, 3.3, 0.7)


def random_objects():
    rng = np.random.default_rng(9)
    z = rng.normal(size=(16, 16)) + 1j * rng.normal(size=(16, 16))
    return [GridOperator(SPEC, z / 3), GridState(SPEC, z[0] * 1e-300), PhaseSpaceGridFunction(SPEC, z * 1e17)]


@pytest.mark.parametrize("obj", random_objects(), ids=["operator", "state", "psfunction"])
def test_bit_exact_round_trip(obj, tmp_path):
    path = tmp_path / "x.json"
    gridio.save(obj, path)
    back = gridio.load(path)
    assert type(back) is type(obj) and back.spec == obj.spec
    assert gridio._array(back).tobytes() == gridio._array(obj).tobytes()


def test_schema():
    d = json.loads(gridio.to_json(GridState(GridSpec(4), [1, 2j, 0, -1])))
    assert d == {"kind": "state", "N": 4, "L": GridSpec(4).L, "hbar": 1.0,
                 "data": [[1.0, 0.0], [0.0, 2.0], [0.0, 0.0], [-1.0, 0.0]]}


def test_row_major():
    A = GridOperator(GridSpec(4), np.arange(16).reshape(4, 4))
    assert [re for re, _ in gridio.to_dict(A)["data"]] == list(range(16))


@pytest.mark.parametrize("text", [
    "not json",
    "[]",
    '{"kind": "operator"}',
    '{"kind": "widget", "N": 4, "L": 1, "hbar": 1, "data": []}',
    '{"kind": "state", "N": 4, "L": 1, "hbar": 1, "data": [[1, 0]]}',
    '{"kind": "state", "N": 5, "L": 1, "hbar": 1, "data": []}',
    '{"kind": "state", "N": 4, "L": 1, "hbar": 1, "data": [[1], [2], [3], [4]]}',
])
def test_malformed(text):
    with pytest.raises(gridio.FormatError):
        gridio.from_json(text)


def test_kind_check(tmp_path):
    path = tmp_path / "s.json"
    gridio.save(gaussian_state(SPEC), path)
    with pytest.raises(gridio.FormatError):
        gridio.load(path, "operator")


class TestBuiltins:
    def test_functions(self):
        spec = GridSpec(16)
        assert np.array_equal(builtins.grid_function(spec, "harper").samples, harper(spec).samples)
        total = builtins.grid_function(spec, "harper + mixed:2,3")
        parts = harper(spec).samples + builtins.grid_function(spec, "mixed:2,3").samples
        assert np.array_equal(total.samples, parts)
        assert np.allclose(builtins.grid_function(spec, "one").samples, 1)
        assert np.allclose(builtins.grid_function(spec, "cosq").samples, builtins.grid_function(spec, "cosq:1").samples)

    def test_operators_and_states(self):
        spec = GridSpec(16)
        P = builtins.grid_operator(spec, "gaussian-excited")
        assert abs(P.trace() - 1) < 1e-12
        assert builtins.grid_operator(spec, "periodic-position").hermiticity_error() < 1e-14
        assert abs(builtins.grid_state(spec, "gaussian:1.5,0.5").norm() - 1) < 1e-14
        assert abs(builtins.grid_state(spec, "harper-packet").norm() - 1) < 1e-14

    @pytest.mark.parametrize("name", ["", "nope", "mixed", "mixed:1", "mixed:a,b", "harper:3"])
    def test_unknown_functions(self, name):
        with pytest.raises(builtins.UnknownBuiltin):
            builtins.grid_function(GridSpec(8), name)

    def test_unknown_operator_and_state(self):
        with pytest.raises(builtins.UnknownBuiltin):
            builtins.grid_operator(GridSpec(8), "harper")
        with pytest.raises(builtins.UnknownBuiltin):
            builtins.grid_state(GridSpec(8), "gaussian:1")
