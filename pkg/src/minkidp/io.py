"""JSON encodings for polytopes, graphs, edge weightings and reports.

Rationals are always written as exact ``"p/q"`` strings.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .edge import EdgeWeighting
from .graph import Graph
from .polytope import LatticePolytope


class InputError(ValueError):
    """Malformed input; the message names the offending field."""


def _int(value: Any, field: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"{field}: expected an integer, got {value!r}")
    return value


def _list(value: Any, field: str) -> list:
    if not isinstance(value, list):
        raise InputError(f"{field}: expected a list, got {type(value).__name__}")
    return value


def _obj(value: Any, field: str, keys: tuple[str, ...]) -> dict:
    if not isinstance(value, dict):
        raise InputError(f"{field}: expected an object")
    for k in keys:
        if k not in value:
            raise InputError(f"{field}.{k}: missing")
    return value


def rational_to_json(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def rational_from_json(value: Any, field: str) -> Fraction:
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    if not isinstance(value, str):
        raise InputError(f"{field}: expected a rational string like \"4/3\"")
    try:
        return Fraction(value.strip())
    except (ValueError, ZeroDivisionError):
        raise InputError(f"{field}: cannot parse rational {value!r}") from None


def polytope_to_json(p: LatticePolytope) -> dict:
    return {"ambient_dim": p.ambient_dim, "generators": [list(g) for g in p.generators]}


def polytope_from_json(data: Any) -> LatticePolytope:
    data = _obj(data, "polytope", ("ambient_dim", "generators"))
    n = _int(data["ambient_dim"], "ambient_dim")
    if n < 0:
        raise InputError("ambient_dim: must be nonnegative")
    gens = _list(data["generators"], "generators")
    if not gens:
        raise InputError("generators: must be nonempty")
    out = []
    for i, g in enumerate(gens):
        g = _list(g, f"generators[{i}]")
        if len(g) != n:
            raise InputError(f"generators[{i}]: expected {n} coordinates, got {len(g)}")
        out.append([_int(c, f"generators[{i}][{j}]") for j, c in enumerate(g)])
    return LatticePolytope(out)


def graph_to_json(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.sorted_edges]}


def graph_from_json(data: Any, field: str = "graph") -> Graph:
    data = _obj(data, field, ("n", "edges"))
    n = _int(data["n"], f"{field}.n")
    if n < 1:
        raise InputError(f"{field}.n: must be positive")
    edges = []
    for i, e in enumerate(_list(data["edges"], f"{field}.edges")):
        e = _list(e, f"{field}.edges[{i}]")
        if len(e) != 2:
            raise InputError(f"{field}.edges[{i}]: expected a pair")
        a, b = (_int(v, f"{field}.edges[{i}]") for v in e)
        if a == b or not (1 <= a <= n and 1 <= b <= n):
            raise InputError(f"{field}.edges[{i}]: invalid edge {[a, b]} for n={n}")
        edges.append((a, b))
    return Graph(n, edges)


def weighting_to_json(w: EdgeWeighting) -> dict:
    return {
        "graph": graph_to_json(w.graph),
        "weights": [[list(e), rational_to_json(x)] for e, x in sorted(w.weights.items())],
    }


def weighting_from_json(data: Any) -> EdgeWeighting:
    data = _obj(data, "weighting", ("graph", "weights"))
    g = graph_from_json(data["graph"])
    weights = {}
    for i, item in enumerate(_list(data["weights"], "weights")):
        item = _list(item, f"weights[{i}]")
        if len(item) != 2:
            raise InputError(f"weights[{i}]: expected [[i, j], \"p/q\"]")
        e = _list(item[0], f"weights[{i}][0]")
        if len(e) != 2:
            raise InputError(f"weights[{i}][0]: expected a pair")
        a, b = (_int(v, f"weights[{i}][0]") for v in e)
        x = rational_from_json(item[1], f"weights[{i}][1]")
        if not g.has_edge(a, b):
            raise InputError(f"weights[{i}][0]: {[a, b]} is not an edge of the graph")
        if x < 0:
            raise InputError(f"weights[{i}][1]: negative weight")
        weights[(min(a, b), max(a, b))] = x
    return EdgeWeighting(g, weights)


def load_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def dumps(data: Any) -> str:
    return json.dumps(data, sort_keys=False, separators=(", ", ": "))
