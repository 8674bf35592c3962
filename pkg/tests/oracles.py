"""Slow, independent reference implementations used only by the tests."""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Sequence

import networkx as nx


def fm_feasible(a: Sequence[Sequence], b: Sequence, strict: bool = False) -> bool:
    """Fourier-Motzkin decision of ``a @ x == b, x >= 0`` (``x > 0`` if strict)."""
    n = len(a[0]) if a else 0
    # each inequality: (coeffs, const, is_strict) meaning coeffs @ x <= const (or <)
    ineqs = []
    for row, t in zip(a, b):
        row = [Fraction(c) for c in row]
        ineqs.append((row, Fraction(t), False))
        ineqs.append(([-c for c in row], -Fraction(t), False))
    for j in range(n):
        ineqs.append(([Fraction(-int(i == j)) for i in range(n)], Fraction(0), strict))
    for j in range(n):
        pos, neg, rest = [], [], []
        for c, t, s in ineqs:
            (pos if c[j] > 0 else neg if c[j] < 0 else rest).append((c, t, s))
        for (cp, tp, sp), (cn, tn, sn) in itertools.product(pos, neg):
            fp, fn = -cn[j], cp[j]
            c = [fp * x + fn * y for x, y in zip(cp, cn)]
            rest.append((c, fp * tp + fn * tn, sp or sn))
        # drop duplicates to keep the blow-up in check
        ineqs = list({(tuple(c), t, s): (c, t, s) for c, t, s in rest}.values())
    for _, t, s in ineqs:
        if t < 0 or (s and t == 0):
            return False
    return True


def fm_contains(generators, x, strict: bool = False) -> bool:
    gens = list(generators)
    rows = [[g[i] for g in gens] for i in range(len(x))] + [[1] * len(gens)]
    return fm_feasible(rows, list(x) + [1], strict)


def box_lattice_points(generators, k: int = 1, strict: bool = False) -> list[tuple[int, ...]]:
    gens = [tuple(k * c for c in g) for g in generators]
    lo = [min(c) for c in zip(*gens)]
    hi = [max(c) for c in zip(*gens)]
    return sorted(
        x
        for x in itertools.product(*(range(l, h + 1) for l, h in zip(lo, hi)))
        if fm_contains(gens, x, strict)
    )


def kfold_sums(points, k: int) -> set:
    return {
        tuple(sum(c) for c in zip(*combo))
        for combo in itertools.combinations_with_replacement(sorted(points), k)
    }


def induced_cycles_brute(n: int, edges) -> list[frozenset]:
    """Vertex sets inducing a cycle: induced subgraph 2-regular and connected."""
    adj = {v: set() for v in range(1, n + 1)}
    for i, j in edges:
        adj[i].add(j)
        adj[j].add(i)
    out = []
    for size in range(3, n + 1):
        for s in itertools.combinations(range(1, n + 1), size):
            ss = set(s)
            if all(len(adj[v] & ss) == 2 for v in s):
                h = nx.Graph([(i, j) for i, j in edges if i in ss and j in ss])
                if nx.is_connected(h):
                    out.append(frozenset(s))
    return out


def has_even_cycle_brute(n: int, edges) -> bool:
    """Any (not necessarily induced) even cycle, by simple-cycle enumeration."""
    g = nx.Graph(list(edges))
    return any(len(c) % 2 == 0 for c in nx.simple_cycles(g))


def occ_brute(n: int, edges) -> bool:
    adj = {v: set() for v in range(1, n + 1)}
    for i, j in edges:
        adj[i].add(j)
        adj[j].add(i)
    odd = [c for c in induced_cycles_brute(n, edges) if len(c) % 2]
    for c1, c2 in itertools.combinations(odd, 2):
        if not (c1 & c2) and not any(adj[v] & c2 for v in c1):
            return False
    return True


def hull_2d(points) -> list[tuple[int, int]]:
    """Andrew's monotone chain, counter-clockwise, collinear points dropped."""
    pts = sorted(set(map(tuple, points)))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def box_lattice_points_2d(points) -> list[tuple[int, int]]:
    """Lattice points of a planar polygon by half-plane tests on its hull."""
    h = hull_2d(points)
    xs, ys = [p[0] for p in h], [p[1] for p in h]
    box = itertools.product(range(min(xs), max(xs) + 1), range(min(ys), max(ys) + 1))
    if len(h) <= 2:
        a, b = h[0], h[-1]
        return sorted(
            x for x in box
            if (b[0] - a[0]) * (x[1] - a[1]) == (b[1] - a[1]) * (x[0] - a[0])
        )
    edges = list(zip(h, h[1:] + h[:1]))
    return sorted(
        x for x in box
        if all((b[0] - a[0]) * (x[1] - a[1]) - (b[1] - a[1]) * (x[0] - a[0]) >= 0 for a, b in edges)
    )


def odd_cycle_sets(n: int, edges) -> list[frozenset]:
    """Vertex sets of all odd cycles, chordal or not."""
    g = nx.Graph(list(edges))
    return [frozenset(c) for c in nx.simple_cycles(g) if len(c) % 2]


def occ_all_cycles(n: int, edges) -> bool:
    adj = {v: set() for v in range(1, n + 1)}
    for i, j in edges:
        adj[i].add(j)
        adj[j].add(i)
    odd = odd_cycle_sets(n, edges)
    return all(
        (c1 & c2) or any(adj[v] & c2 for v in c1)
        for c1, c2 in itertools.combinations(odd, 2)
    )


def common_vertex_all_cycles(n: int, edges) -> bool:
    odd = odd_cycle_sets(n, edges)
    return all(c1 & c2 for c1, c2 in itertools.combinations(odd, 2))
