"""Seeded instance generators shared by the property and acceptance tests."""

from __future__ import annotations

import math
import random
from fractions import Fraction

from minkidp.graph import Graph
from minkidp.suite import random_common_vertex_graph


def _closed_even_walk(rng: random.Random, g: Graph, max_len: int = 12):
    """Edges of a random closed walk of even length, or None."""
    adj = {v: sorted(ns) for v, ns in g.adjacency().items() if ns}
    start = rng.choice(sorted(adj))
    v, prev, walk = start, None, []
    for step in range(1, max_len + 1):
        options = [u for u in adj[v] if u != prev] or adj[v]
        u = rng.choice(options)
        prev = v
        walk.append((min(u, v), max(u, v)))
        v = u
        if v == start and step % 2 == 0:
            return walk
    return None


def _shift(rng: random.Random, g: Graph, a: dict) -> dict:
    """Move along an alternating closed even walk; keeps sum a_e rho(e)."""
    for _ in range(20):
        walk = _closed_even_walk(rng, g)
        if walk is None:
            continue
        b = dict(a)
        for i, e in enumerate(walk):
            b[e] = b.get(e, 0) + (1 if i % 2 == 0 else -1)
        if all(x >= 0 for x in b.values()):
            return {e: x for e, x in b.items() if x}
    return a


def fractional_weightings(seed: int, count: int, max_d: int = 7):
    """Yield ``(graph, weights, tracked)`` where every weight lies strictly in
    (0, 1) and the weighted sum of ``rho`` is an integer vector.

    Weights are fractional parts of a random convex combination of integer
    weightings that all have the same value.
    """
    rng = random.Random(seed)
    made = 0
    while made < count:
        g = random_common_vertex_graph(rng, rng.randint(3, max_d))
        es = g.sorted_edges
        k = rng.randint(4, 14)
        base: dict = {}
        for e in rng.choices(es, k=k):
            base[e] = base.get(e, 0) + 1
        sols = [base]
        for _ in range(rng.randint(1, 4)):
            sol = rng.choice(sols)
            for _ in range(rng.randint(1, 8)):
                sol = _shift(rng, g, sol)
            sols.append(sol)
        raw = [rng.randint(1, 6) for _ in sols]
        lam = [Fraction(x, sum(raw)) for x in raw]
        r: dict = {}
        for c, sol in zip(lam, sols):
            for e, x in sol.items():
                r[e] = r.get(e, 0) + c * x
        weights = {e: x - math.floor(x) for e, x in r.items() if x.denominator != 1}
        if not weights:
            continue
        support = sorted(weights)
        tracked = set(rng.sample(support, rng.randint(0, len(support))))
        made += 1
        yield g, weights, tracked
