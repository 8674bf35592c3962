"""Simple undirected graphs on ``{1, ..., n}`` and their odd-cycle predicates."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Sequence

Edge = tuple[int, int]


def _edge(i: int, j: int) -> Edge:
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[Edge]

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        es = set()
        for e in edges:
            i, j = (int(v) for v in e)
            if i == j:
                raise ValueError(f"loop at vertex {i}")
            if not (1 <= i <= n and 1 <= j <= n):
                raise ValueError(f"edge {{{i},{j}}} out of range 1..{n}")
            es.add(_edge(i, j))
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "edges", frozenset(es))

    @property
    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def adjacency(self) -> dict[int, set[int]]:
        adj: dict[int, set[int]] = {v: set() for v in range(1, self.n + 1)}
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return adj

    def has_edge(self, i: int, j: int) -> bool:
        return _edge(i, j) in self.edges

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.sorted_edges})"


@dataclass(frozen=True)
class Cycle:
    """A cycle in canonical form: least vertex first, smaller neighbour second."""

    vertices: tuple[int, ...]

    @classmethod
    def canonical(cls, vertices: Sequence[int]) -> "Cycle":
        vs = list(vertices)
        k = len(vs)
        i = vs.index(min(vs))
        vs = vs[i:] + vs[:i]
        if k > 2 and vs[-1] < vs[1]:
            vs = [vs[0]] + vs[:0:-1]
        return cls(tuple(vs))

    @property
    def length(self) -> int:
        return len(self.vertices)

    @property
    def parity(self) -> int:
        return len(self.vertices) % 2

    def edges(self) -> list[Edge]:
        vs = self.vertices
        return [_edge(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]


def is_connected(g: Graph) -> bool:
    if g.n < 1:
        raise ValueError("graph has no vertices")
    adj = g.adjacency()
    seen = {1}
    stack = [1]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.n


def bipartition(g: Graph) -> Optional[tuple[tuple[int, ...], tuple[int, ...]]]:
    """2-colouring ``(U, V)`` or None if the graph has an odd cycle.

    Each component's least vertex is put in ``U``.
    """
    adj = g.adjacency()
    colour: dict[int, int] = {}
    for s in range(1, g.n + 1):
        if s in colour:
            continue
        colour[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w not in colour:
                    colour[w] = 1 - colour[v]
                    queue.append(w)
                elif colour[w] == colour[v]:
                    return None
    u = tuple(v for v in range(1, g.n + 1) if colour[v] == 0)
    w = tuple(v for v in range(1, g.n + 1) if colour[v] == 1)
    return u, w


def induced_odd_cycles(g: Graph) -> list[Cycle]:
    """All chordless odd cycles, each once, sorted by canonical vertex tuple."""
    return [c for c in chordless_cycles(g) if c.parity == 1]


def chordless_cycles(g: Graph) -> list[Cycle]:
    adj = g.adjacency()
    found = []
    for s in range(1, g.n + 1):
        # grow chordless paths s, v1, ..., vk with all vertices > s and v1 < closing vertex
        for v1 in sorted(w for w in adj[s] if w > s):
            stack = [([s, v1], {s, v1})]
            while stack:
                path, on = stack.pop()
                last = path[-1]
                for w in sorted(adj[last]):
                    if w <= s or w in on:
                        continue
                    # w must not touch interior vertices of the path
                    if any(w in adj[x] for x in path[1:-1]):
                        continue
                    if w in adj[s]:
                        if w > v1:
                            found.append(Cycle(tuple(path + [w])))
                        continue
                    stack.append((path + [w], on | {w}))
    return sorted(found, key=lambda c: (c.vertices))


def _disjoint_pairs(cycles: list[Cycle]):
    sets = [frozenset(c.vertices) for c in cycles]
    for a, b in combinations(range(len(cycles)), 2):
        if not (sets[a] & sets[b]):
            yield cycles[a], cycles[b]


def _require_connected(g: Graph) -> None:
    if not is_connected(g):
        raise ValueError("graph must be connected")


def odd_cycle_condition(g: Graph) -> bool:
    """Every two vertex-disjoint odd cycles are joined by an edge."""
    _require_connected(g)
    adj = g.adjacency()
    for c1, c2 in _disjoint_pairs(induced_odd_cycles(g)):
        other = set(c2.vertices)
        if not any(adj[v] & other for v in c1.vertices):
            return False
    return True


def common_vertex_condition(g: Graph) -> bool:
    """Every two odd cycles share a vertex."""
    _require_connected(g)
    return next(_disjoint_pairs(induced_odd_cycles(g)), None) is None


def two_connected_components(g: Graph) -> list[Graph]:
    """Biconnected components (bridges included as single edges).

    Components are returned as graphs on the same vertex set, sorted by their
    edge lists.
    """
    adj = {v: sorted(ws) for v, ws in g.adjacency().items()}
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    comps: list[Graph] = []
    counter = 0
    for root in range(1, g.n + 1):
        if root in disc or not adj[root]:
            continue
        disc[root] = low[root] = counter
        counter += 1
        edge_stack: list[Edge] = []
        # iterative DFS: (vertex, parent, neighbour iterator)
        stack = [(root, 0, iter(adj[root]))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent:
                    continue
                if w not in disc:
                    edge_stack.append(_edge(v, w))
                    disc[w] = low[w] = counter
                    counter += 1
                    stack.append((w, v, iter(adj[w])))
                    advanced = True
                    break
                if disc[w] < disc[v]:
                    edge_stack.append(_edge(v, w))
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                u = stack[-1][0]
                low[u] = min(low[u], low[v])
                if low[v] >= disc[u]:
                    comp = []
                    target = _edge(u, v)
                    while True:
                        e = edge_stack.pop()
                        comp.append(e)
                        if e == target:
                            break
                    comps.append(Graph(g.n, comp))
    return sorted(comps, key=lambda c: c.sorted_edges)


def graph_sum(gs: Sequence[Graph]) -> Graph:
    if not gs:
        raise ValueError("graph_sum needs at least one graph")
    n = gs[0].n
    if any(h.n != n for h in gs):
        raise ValueError("graphs must share the vertex set")
    return Graph(n, set().union(*(h.edges for h in gs)))


def is_subgraph(h: Graph, g: Graph) -> bool:
    if h.n != g.n:
        raise ValueError("graphs must share the vertex set")
    return h.edges <= g.edges


# --------------------------------------------------------------------------
# cycle search used by the rewriting algorithm


def _any_cycle(vertices: set[int], adj: dict[int, set[int]]) -> Optional[list[int]]:
    """Some cycle inside the given vertex set (as a vertex list), via DFS."""
    for root in sorted(vertices):
        parent = {root: 0}
        depth = {root: 0}
        stack = [root]
        while stack:
            v = stack.pop()
            for w in sorted(adj[v] & vertices):
                if w == parent[v]:
                    continue
                if w in parent:
                    # back edge v-w closes a cycle through the tree path
                    a, b = v, w
                    pa, pb = [a], [b]
                    while depth[a] > depth[b]:
                        a = parent[a]
                        pa.append(a)
                    while depth[b] > depth[a]:
                        b = parent[b]
                        pb.append(b)
                    while a != b:
                        a, b = parent[a], parent[b]
                        pa.append(a)
                        pb.append(b)
                    return pa + pb[-2::-1]
                parent[w] = v
                depth[w] = depth[v] + 1
                stack.append(w)
    return None


def _ear(cycle: list[int], block_adj: dict[int, set[int]]) -> Optional[list[int]]:
    """Path between two distinct cycle vertices, internally off the cycle,
    not using cycle edges."""
    on = set(cycle)
    cyc_edges = {_edge(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))}
    for x in cycle:
        for w in sorted(block_adj[x]):
            if _edge(x, w) in cyc_edges:
                continue
            if w in on:
                return [x, w]
            prev = {w: x}
            queue = deque([w])
            while queue:
                v = queue.popleft()
                for y in sorted(block_adj[v]):
                    if y in on:
                        if y != x:
                            path = [y, v]
                            while path[-1] != x:
                                path.append(prev[path[-1]])
                            return path[::-1]
                        continue
                    if y not in prev:
                        prev[y] = v
                        queue.append(y)
    return None


def find_even_cycle(g: Graph) -> Optional[Cycle]:
    """Some even cycle of ``g``, or None when every block is an edge or an odd cycle."""
    for block in two_connected_components(g):
        if len(block.edges) == 1:
            continue
        verts = {v for e in block.edges for v in e}
        badj = block.adjacency()
        cyc = _any_cycle(verts, badj)
        if cyc is None:  # pragma: no cover - blocks with >= 2 edges are cyclic
            continue
        if len(cyc) % 2 == 0:
            return Cycle.canonical(cyc)
        if len(block.edges) == len(verts):
            continue
        # odd cycle plus an ear: one of the two arcs closes an even cycle
        ear = _ear(cyc, badj)
        if ear is None:  # pragma: no cover - a 2-connected non-cycle has an ear
            raise RuntimeError("block is neither a cycle nor has an ear")
        x, y = ear[0], ear[-1]
        i, j = cyc.index(x), cyc.index(y)
        k = len(cyc)
        arc1 = [cyc[(i + t) % k] for t in range((j - i) % k + 1)]  # x .. y
        arc2 = [cyc[(j + t) % k] for t in range((i - j) % k + 1)]  # y .. x
        e = len(ear) - 1
        if (len(arc1) - 1 + e) % 2 == 0:
            return Cycle.canonical(arc1 + ear[-2:0:-1])
        return Cycle.canonical(arc2 + ear[1:-1])
    return None
