import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from minkidp import io
from minkidp.edge import EdgeWeighting
from minkidp.graph import Graph
from minkidp.polytope import LatticePolytope


@given(st.fractions())
def test_rational_round_trip(x):
    text = io.rational_to_json(x)
    assert isinstance(text, str)
    assert io.rational_from_json(text, "w") == x


def test_rational_format():
    assert io.rational_to_json(Fraction(4, 3)) == "4/3"
    assert io.rational_to_json(Fraction(-2)) == "-2"
    assert io.rational_from_json(3, "w") == 3
    for bad in ("x", "1/0", 0.5, None, True):
        with pytest.raises(io.InputError, match="w"):
            io.rational_from_json(bad, "w")


@given(st.integers(1, 4).flatmap(
    lambda n: st.lists(st.tuples(*[st.integers(-9, 9)] * n), min_size=1, max_size=5)))
def test_polytope_round_trip(gens):
    p = LatticePolytope(gens)
    data = json.loads(json.dumps(io.polytope_to_json(p)))
    assert io.polytope_from_json(data) == p


def test_graph_and_weighting_round_trip():
    g = Graph(4, [(1, 2), (2, 3), (3, 4), (1, 4)])
    assert io.graph_from_json(json.loads(json.dumps(io.graph_to_json(g)))) == g
    w = EdgeWeighting(g, {(1, 2): Fraction(1, 2), (3, 4): Fraction(7, 3)})
    data = json.loads(json.dumps(io.weighting_to_json(w)))
    assert data["weights"][0] == [[1, 2], "1/2"]
    back = io.weighting_from_json(data)
    assert back.graph == g and back.weights == w.weights


@pytest.mark.parametrize("data, field", [
    ([], "polytope"),
    ({"generators": [[0]]}, "polytope.ambient_dim"),
    ({"ambient_dim": 2, "generators": []}, "generators"),
    ({"ambient_dim": 2, "generators": [[0, 0], [1]]}, "generators[1]"),
    ({"ambient_dim": 2, "generators": [[0, "a"]]}, "generators[0][1]"),
    ({"ambient_dim": "2", "generators": [[0, 0]]}, "ambient_dim"),
])
def test_polytope_errors_name_the_field(data, field):
    with pytest.raises(io.InputError) as exc:
        io.polytope_from_json(data)
    assert str(exc.value).startswith(field)


@pytest.mark.parametrize("data, field", [
    ({"edges": []}, "graph.n"),
    ({"n": 0, "edges": []}, "graph.n"),
    ({"n": 3, "edges": {}}, "graph.edges"),
    ({"n": 3, "edges": [[1, 2, 3]]}, "graph.edges[0]"),
    ({"n": 3, "edges": [[1, 2], [2, 2]]}, "graph.edges[1]"),
    ({"n": 3, "edges": [[1, 4]]}, "graph.edges[0]"),
])
def test_graph_errors_name_the_field(data, field):
    with pytest.raises(io.InputError) as exc:
        io.graph_from_json(data)
    assert str(exc.value).startswith(field)


def test_weighting_errors_name_the_field():
    g = {"n": 3, "edges": [[1, 2], [2, 3]]}
    cases = [
        ({"graph": g}, "weighting.weights"),
        ({"graph": g, "weights": [[[1, 3], "1/2"]]}, "weights[0][0]"),
        ({"graph": g, "weights": [[[1, 2], "-1/2"]]}, "weights[0][1]"),
        ({"graph": g, "weights": [[[1, 2], 0.5]]}, "weights[0][1]"),
        ({"graph": g, "weights": [[[1, 2]]]}, "weights[0]"),
    ]
    for data, field in cases:
        with pytest.raises(io.InputError) as exc:
            io.weighting_from_json(data)
        assert str(exc.value).startswith(field), (data, str(exc.value))


def test_load_json_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(io.InputError, match="invalid JSON"):
        io.load_json(str(bad))
    with pytest.raises(io.InputError):
        io.load_json(str(tmp_path / "missing.json"))
