"""Edge polytopes of graphs and the integral rewriting of fractional edge weights.

The central routine is :func:`rewrite_fractional`, which turns a fractional
nonnegative edge weighting with integer value ``sum(r_e * rho(e))`` into an
integral one with the same value.  It cancels weight around even cycles, or
around a pair of odd cycles glued at one vertex, always pushing weight
towards the side carrying more tracked edges so that the tracked total never
drops below its fractional value.  :func:`decompose_sum` builds on it to split
any lattice point of ``k (P_G1 + P_G2)`` into ``k`` lattice points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from . import exact
from .graph import (
    Cycle,
    Edge,
    Graph,
    _edge,
    bipartition,
    common_vertex_condition,
    find_even_cycle,
    graph_sum,
    is_connected,
    is_subgraph,
    two_connected_components,
)
from .polytope import LatticePolytope, Point, dimension, minkowski_sum


class RewriteError(RuntimeError):
    """An invariant guaranteed by the theory was violated (a defect)."""


def rho(edge: Sequence[int], d: int) -> Point:
    i, j = edge
    if i == j:
        raise ValueError("rho of a loop")
    if not (1 <= i <= d and 1 <= j <= d):
        raise ValueError(f"edge {tuple(edge)} out of range 1..{d}")
    v = [0] * d
    v[i - 1] = 1
    v[j - 1] = 1
    return tuple(v)


def edge_polytope(g: Graph) -> LatticePolytope:
    if not g.edges:
        raise ValueError("edge polytope of an edgeless graph is empty")
    return LatticePolytope(rho(e, g.n) for e in g.sorted_edges)


def dim_formula(g: Graph) -> int:
    if not is_connected(g):
        raise ValueError("dimension formula needs a connected graph")
    return g.n - 2 if bipartition(g) is not None else g.n - 1


def dim_formula_sum(gs: Sequence[Graph]) -> int:
    if not gs:
        raise ValueError("need at least one graph")
    if any(h.n != gs[0].n for h in gs):
        raise ValueError("graphs must share the vertex set")
    if not all(is_connected(h) for h in gs):
        raise ValueError("every graph must be connected")
    total = graph_sum(gs)
    return total.n - 2 if bipartition(total) is not None else total.n - 1


def edge_sum_polytope(gs: Sequence[Graph]) -> LatticePolytope:
    return minkowski_sum([edge_polytope(h) for h in gs])


# --------------------------------------------------------------------------
# weightings


@dataclass
class EdgeWeighting:
    graph: Graph
    weights: dict[Edge, Fraction]

    def __post_init__(self):
        clean = {}
        for e, w in self.weights.items():
            e = _edge(*e)
            if e not in self.graph.edges:
                raise ValueError(f"edge {e} is not in the graph")
            w = Fraction(w)
            if w < 0:
                raise ValueError(f"negative weight on {e}")
            if w:
                clean[e] = w
        self.weights = clean

    @property
    def value(self) -> tuple[Fraction, ...]:
        return _value(self.weights, self.graph.n)

    @property
    def degree(self) -> Fraction:
        return sum(self.weights.values(), Fraction(0))


@dataclass
class RewriteResult:
    integer_weights: dict[Edge, int]
    tracked_sum: int
    steps: int = 0
    tracked_bound: Fraction = field(default=Fraction(0))


def _value(weights: Mapping[Edge, Fraction], d: int) -> tuple:
    v = [Fraction(0)] * d
    for (i, j), w in weights.items():
        v[i - 1] += w
        v[j - 1] += w
    return tuple(v)


def _cycle_sides(cycle: Cycle) -> tuple[list[Edge], list[Edge]]:
    es = cycle.edges()
    return es[0::2], es[1::2]


def _oriented(cycle: Cycle, v: int) -> list[int]:
    """Cycle vertices starting at ``v``, leaving towards the smaller neighbour."""
    vs = list(cycle.vertices)
    i = vs.index(v)
    vs = vs[i:] + vs[:i]
    if vs[-1] < vs[1]:
        vs = [vs[0]] + vs[:0:-1]
    return vs


def _glued_pair_sides(blocks: list[Cycle]) -> tuple[list[Edge], list[Edge]]:
    """Alternating edge classes of the closed even walk C, C' through their
    common vertex, for the least pair of odd cycles sharing a vertex."""
    for a in range(len(blocks)):
        for b in range(a + 1, len(blocks)):
            common = set(blocks[a].vertices) & set(blocks[b].vertices)
            if not common:
                continue
            if len(common) != 1:
                raise RewriteError("two odd blocks share more than one vertex")
            v = common.pop()
            c = _oriented(blocks[a], v)
            c2 = _oriented(blocks[b], v)
            ce = [_edge(c[i], c[(i + 1) % len(c)]) for i in range(len(c))]
            c2e = [_edge(c2[i], c2[(i + 1) % len(c2)]) for i in range(len(c2))]
            # e_1, e_3, ..., e_{2p+1} of C with e'_2, ..., e'_{2p'} of C'
            side1 = ce[0::2] + c2e[1::2]
            side2 = ce[1::2] + c2e[0::2]
            return side1, side2
    raise RewriteError("no two odd cycles of the support share a vertex")


def rewrite_fractional(
    g: Graph,
    weights: Mapping[Sequence[int], Fraction],
    tracked: Optional[set] = None,
    check_hypotheses: bool = True,
) -> RewriteResult:
    """Integral rewriting of a fractional edge weighting with integer value.

    ``weights`` maps edges of ``g`` to positive rationals whose weighted sum of
    ``rho(e)`` is an integer vector.  Returns nonnegative integers ``a_e`` on
    the same edges with the same value and
    ``sum(a_e for e in tracked) >= sum(r_e for e in tracked)``.

    Requires that any two odd cycles of ``g`` share a vertex.
    """
    tracked = {_edge(*e) for e in (tracked or ())}
    if check_hypotheses and not common_vertex_condition(g):
        raise ValueError("graph has two vertex-disjoint odd cycles")
    w = EdgeWeighting(g, dict(weights))
    if not w.weights:
        raise ValueError("empty weighting")
    if not tracked <= set(w.weights):
        raise ValueError("tracked edges must carry weight")
    target = w.value
    if any(c.denominator != 1 for c in target):
        raise ValueError("weighted sum is not an integer point")
    if w.degree.denominator != 1:
        # any integral rewriting has the same total weight
        raise ValueError("total weight is not an integer")
    bound = sum((w.weights[e] for e in tracked), Fraction(0))

    r: dict[Edge, Fraction] = {}
    a: dict[Edge, int] = {e: 0 for e in w.weights}
    for e, x in w.weights.items():
        fl = math.floor(x)
        a[e] += fl
        if x != fl:
            r[e] = x - fl

    steps = 0
    while r:
        support = Graph(g.n, r)
        deg: dict[int, int] = {}
        for i, j in r:
            deg[i] = deg.get(i, 0) + 1
            deg[j] = deg.get(j, 0) + 1
        if min(deg.values()) < 2:
            raise RewriteError("a support vertex meets fewer than two fractional edges")

        even = find_even_cycle(support)
        if even is not None:
            side1, side2 = _cycle_sides(even)
        else:
            blocks = two_connected_components(support)
            cycles = []
            for b in blocks:
                verts = {v for e in b.edges for v in e}
                if len(b.edges) != len(verts) or len(verts) % 2 == 0:
                    raise RewriteError("support block is not an odd cycle")
                cycles.append(_block_cycle(b))
            if len(cycles) < 2:
                raise RewriteError("support is a single odd cycle")
            cycles.sort(key=lambda c: c.vertices)
            side1, side2 = _glued_pair_sides(cycles)

        m1 = sum(e in tracked for e in side1)
        m2 = sum(e in tracked for e in side2)
        up, down = (side1, side2) if m1 >= m2 else (side2, side1)
        eps = min(r[e] for e in down)
        before = len(r)
        for e in up:
            r[e] += eps
        for e in down:
            r[e] -= eps
        for e in set(up) | set(down):
            if r[e] >= 1:
                r[e] -= 1
                a[e] += 1
            if r[e] == 0:
                del r[e]
        if len(r) >= before:
            raise RewriteError("cancellation did not shrink the fractional support")
        steps += 1

    if _value(a, g.n) != target:
        raise RewriteError("rewriting changed the value")
    tsum = sum(a[e] for e in tracked)
    if tsum < bound:
        raise RewriteError("tracked sum fell below its fractional value")
    return RewriteResult({e: x for e, x in a.items() if x}, tsum, steps, bound)


def _block_cycle(block: Graph) -> Cycle:
    adj = block.adjacency()
    start = min(v for e in block.edges for v in e)
    seq = [start]
    prev = 0
    cur = start
    while True:
        nxt = min(w for w in adj[cur] if w != prev) if prev else min(adj[cur])
        if nxt == start:
            break
        seq.append(nxt)
        prev, cur = cur, nxt
    return Cycle.canonical(seq)


# --------------------------------------------------------------------------
# splitting lattice points of k (P_G1 + P_G2)


def _split_weights(g1: Graph, g2: Graph, alpha: Sequence[int], k: int):
    e1, e2 = g1.sorted_edges, g2.sorted_edges
    d = g1.n
    rows = [
        [rho(e, d)[i] for e in e1] + [rho(e, d)[i] for e in e2] for i in range(d)
    ]
    rows.append([1] * len(e1) + [0] * len(e2))
    rows.append([0] * len(e1) + [1] * len(e2))
    sol = exact.rational_feasible(rows, list(alpha) + [k, k])
    if sol is None:
        return None
    r1 = {e: x for e, x in zip(e1, sol[: len(e1)]) if x}
    r2 = {e: x for e, x in zip(e2, sol[len(e1):]) if x}
    return r1, r2


def decompose_sum(g1: Graph, g2: Graph, alpha: Sequence[int], k: int) -> list[Point]:
    """Write ``alpha`` in ``k (P_G1 + P_G2)`` as ``k`` lattice points of ``P_G1 + P_G2``.

    ``g1`` must be connected with every two odd cycles sharing a vertex and
    ``g2`` must be a subgraph of ``g1``.  Each returned part is
    ``rho(e) + rho(e')`` with ``e`` in ``g1`` and ``e'`` in ``g2``.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if g1.n != g2.n or len(alpha) != g1.n:
        raise ValueError("dimension mismatch")
    if not g1.edges or not g2.edges:
        raise ValueError("both graphs need edges")
    if not is_connected(g1):
        raise ValueError("g1 must be connected")
    if not common_vertex_condition(g1):
        raise ValueError("g1 has two vertex-disjoint odd cycles")
    if not is_subgraph(g2, g1):
        raise ValueError("g2 must be a subgraph of g1")
    alpha = tuple(int(c) for c in alpha)
    split = _split_weights(g1, g2, alpha, k)
    if split is None:
        raise ValueError("alpha is not in k (P_G1 + P_G2)")
    r1, r2 = split
    d = g1.n

    # a shared edge fractional on both sides moves its fraction to the G2 side
    for e in sorted(set(r1) & set(r2)):
        f1 = r1[e] - math.floor(r1[e])
        if f1 and r2[e].denominator != 1:
            r1[e] -= f1
            r2[e] += f1
    b1 = {e: math.floor(x) for e, x in r1.items()}
    b2 = {e: math.floor(x) for e, x in r2.items()}
    frac1 = {e: x - b1[e] for e, x in r1.items() if x != b1[e]}
    frac2 = {e: x - b2[e] for e, x in r2.items() if x != b2[e]}
    if set(frac1) & set(frac2):
        raise RewriteError("fractional supports still overlap")

    if frac1 or frac2:
        res = rewrite_fractional(g1, {**frac1, **frac2}, set(frac2), check_hypotheses=False)
        for e, x in res.integer_weights.items():
            if e in frac2:
                b2[e] = b2.get(e, 0) + x
            else:
                b1[e] = b1.get(e, 0) + x

    s1, s2 = sum(b1.values()), sum(b2.values())
    if s1 + s2 != 2 * k or s1 > k:
        raise RewriteError("integral weights have the wrong degree split")
    # G2-side units sit on edges of G1, so surplus can move across
    for e in sorted(b2):
        if s1 == k:
            break
        move = min(b2[e], k - s1)
        b2[e] -= move
        b1[e] = b1.get(e, 0) + move
        s1 += move
    side1 = [e for e in sorted(b1) for _ in range(b1[e])]
    side2 = [e for e in sorted(b2) for _ in range(b2[e])]
    parts = [
        tuple(a + b for a, b in zip(rho(x, d), rho(y, d))) for x, y in zip(side1, side2)
    ]
    total = tuple(sum(col) for col in zip(*parts))
    if len(parts) != k or total != alpha:
        raise RewriteError("decomposition does not reproduce alpha")
    return parts


def check_sum_parts(g1: Graph, g2: Graph, parts: Sequence[Point], alpha: Sequence[int]) -> bool:
    """Each part is ``rho(e) + rho(e')`` for edges of ``g1``/``g2``; parts sum to alpha."""
    d = g1.n
    pairs = {
        tuple(a + b for a, b in zip(rho(e, d), rho(f, d)))
        for e in g1.edges
        for f in g2.edges
    }
    total = tuple(sum(col) for col in zip(*parts)) if parts else ()
    return all(tuple(p) in pairs for p in parts) and total == tuple(alpha)
