"""Reproducible end-to-end check suite.

Every check returns a :class:`Check` with status PASS, FAIL or SKIPPED; a FAIL
always carries a witness that can be fed back into the library.  Random
families are drawn from a seeded ``random.Random`` so identical configs give
identical reports.
"""

from __future__ import annotations

import itertools
import json
import random
from fractions import Fraction
from dataclasses import dataclass
from importlib import resources
from typing import Callable, Optional

from .edge import (
    check_sum_parts,
    decompose_sum,
    dim_formula,
    dim_formula_sum,
    edge_polytope,
)
from .graph import (
    Graph,
    common_vertex_condition,
    is_connected,
    is_subgraph,
    odd_cycle_condition,
)
from .polytope import (
    LatticePolytope,
    contains,
    dilate,
    dimension,
    lattice_points,
    minkowski_sum,
    relint_contains,
    relint_lattice_points,
    relint_split,
)
from .semigroup import (
    decompose,
    idp_check,
    level_check,
    normal_check,
    recheck,
    verify_interior_peeling,
    verify_peeling,
)

PASS, FAIL, SKIPPED = "PASS", "FAIL", "SKIPPED"


@dataclass(frozen=True)
class RunConfig:
    max_k: int = 3
    random_seed: int = 0
    sample_count: int = 20
    dim_cap: int = 8

    def __post_init__(self):
        for name in ("max_k", "sample_count", "dim_cap"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.random_seed < 0:
            raise ValueError("random_seed must be nonnegative")


@dataclass(frozen=True)
class Check:
    id: str
    status: str
    details: str
    reason: Optional[str] = None

    def to_json(self) -> dict:
        out = {"id": self.id, "status": self.status, "details": self.details}
        if self.reason is not None:
            out["reason"] = self.reason
        return out


def _pts(xs) -> str:
    return "(" + ",".join(str(c) for c in xs) + ")"


# --------------------------------------------------------------------------
# instance families


def random_polytope(rng: random.Random, ambient: int = 3, coord_max: int = 3, max_gens: int = 4) -> LatticePolytope:
    count = rng.randint(1, max_gens)
    return LatticePolytope(
        [tuple(rng.randint(0, coord_max) for _ in range(ambient)) for _ in range(count)]
    )


def random_family(rng: random.Random, coord_max: int = 3, max_gens: int = 4) -> list[LatticePolytope]:
    """One or two polytopes in 3-space, each of dimension at most 3."""
    return [random_polytope(rng, 3, coord_max, max_gens) for _ in range(rng.randint(1, 2))]


def random_connected_graph(rng: random.Random, d: int, density: float = 0.5) -> Graph:
    """Random spanning tree plus random extra edges."""
    order = list(range(1, d + 1))
    rng.shuffle(order)
    edges = {tuple(sorted((order[i], order[rng.randrange(i)]))) for i in range(1, d)}
    for e in itertools.combinations(range(1, d + 1), 2):
        if rng.random() < density * 0.5:
            edges.add(e)
    return Graph(d, edges)


def random_common_vertex_graph(rng: random.Random, d: int) -> Graph:
    while True:
        g = random_connected_graph(rng, d, rng.choice([0.3, 0.5, 0.8]))
        if common_vertex_condition(g):
            return g


def random_subgraph(rng: random.Random, g: Graph) -> Graph:
    es = g.sorted_edges
    return Graph(g.n, rng.sample(es, rng.randint(1, len(es))))


def load_reconstructions() -> dict:
    text = resources.files("minkidp.data").joinpath("reconstructions.json").read_text()
    return json.loads(text)


# --------------------------------------------------------------------------
# individual checks


def _triangle_plus_segment(cfg: RunConfig) -> list[Check]:
    p = LatticePolytope([(0, 0, 0), (1, 0, 0), (0, 1, 0)]) + LatticePolytope([(0, 0, 0), (1, 1, 3)])
    rep = normal_check(p, max(2, cfg.max_k))
    if rep.verdict == "FAILS" and recheck(rep, p):
        k, alpha = rep.counterexample
        return [Check("triangle-plus-segment-not-normal", PASS, f"k={k} alpha={_pts(alpha)} has no {k}-decomposition")]
    return [Check("triangle-plus-segment-not-normal", FAIL, f"normal check: {rep.to_json()}")]


def tight_multiplier_polytopes(n: int) -> tuple[LatticePolytope, tuple[int, ...]]:
    """``n P1 + P2`` for the two triangles spanned by complementary perfect
    matchings of a hexagon, and the non-decomposable point ``(2n,2n,1,1,1,1)``."""
    v = [
        (1, 1, 0, 0, 0, 0), (0, 0, 1, 1, 0, 0), (0, 0, 0, 0, 1, 1),
        (1, 0, 0, 0, 0, 1), (0, 1, 1, 0, 0, 0), (0, 0, 0, 1, 1, 0),
    ]
    p1, p2 = LatticePolytope(v[:3]), LatticePolytope(v[3:])
    return dilate(p1, n) + p2, (2 * n, 2 * n, 1, 1, 1, 1)


def _tight_multiplier(cfg: RunConfig) -> list[Check]:
    out = []
    for n in (1, 2):
        q, alpha = tight_multiplier_polytopes(n)
        cid = f"tight-multiplier-n{n}"
        if not contains(dilate(q, 2), alpha):
            out.append(Check(cid, FAIL, f"{_pts(alpha)} not in 2Q"))
        elif (parts := decompose(alpha, 2, q)) is not None:
            out.append(Check(cid, FAIL, f"{_pts(alpha)} decomposes as {parts}"))
        else:
            out.append(Check(cid, PASS, f"{_pts(alpha)} in 2Q with no 2-decomposition"))
    return out


def _dimension_invariance(cfg: RunConfig) -> list[Check]:
    rng = random.Random(cfg.random_seed * 1000 + 3)
    for t in range(cfg.sample_count):
        n = rng.randint(1, 4)
        p, q = random_polytope(rng, n, 3, 5), random_polytope(rng, n, 3, 5)
        ell = rng.choice([2, 3])
        if dimension(p + q) != dimension(dilate(p, ell) + q):
            return [Check("dilation-dimension-invariance", FAIL, f"P={p} Q={q} l={ell}")]
        ps = [random_polytope(rng, n, 3, 4) for _ in range(rng.randint(1, 3))]
        ns = [rng.randint(1, 3) for _ in ps]
        if dimension(minkowski_sum(ps)) != dimension(minkowski_sum([dilate(a, m) for a, m in zip(ps, ns)])):
            return [Check("dilation-dimension-invariance", FAIL, f"ps={ps} ns={ns}")]
    return [Check("dilation-dimension-invariance", PASS, f"{cfg.sample_count} random pairs and families")]


def _relint_of_sum(cfg: RunConfig) -> list[Check]:
    rng = random.Random(cfg.random_seed * 1000 + 4)
    checked = 0
    for t in range(cfg.sample_count):
        p, q = random_polytope(rng, 3, 2, 4), random_polytope(rng, 3, 2, 4)
        s = p + q
        for z in relint_lattice_points(s):
            split = relint_split([p, q], z)
            if split is None or not relint_contains(p, split[0]) or not relint_contains(q, split[1]):
                return [Check("relint-of-sum", FAIL, f"P={p} Q={q} z={_pts(z)}")]
            checked += 1
        # forward direction on barycentres, which are always relative-interior
        x = [Fraction(sum(c), len(p.generators)) for c in zip(*p.generators)]
        y = [Fraction(sum(c), len(q.generators)) for c in zip(*q.generators)]
        if not relint_contains(s, [a + b for a, b in zip(x, y)]):
            return [Check("relint-of-sum", FAIL, f"P={p} Q={q} barycentre sum")]
    return [Check("relint-of-sum", PASS, f"{cfg.sample_count} pairs, {checked} interior points split")]


def _peeling(cfg: RunConfig) -> list[Check]:
    rng = random.Random(cfg.random_seed * 1000 + 5)
    count = max(10, cfg.sample_count // 2)
    for t in range(count):
        ps = random_family(rng, 2, 4)
        ds = [dimension(p) for p in ps]
        if not verify_peeling(ps, [d + 1 for d in ds]):
            return [Check("peeling-identities", FAIL, f"plain identity fails for {ps}")]
        if not verify_interior_peeling(ps, [d + 2 for d in ds]):
            return [Check("peeling-identities", FAIL, f"interior identity fails for {ps}")]
    return [Check("peeling-identities", PASS, f"{count} random families, both identities")]


def multiplier_family(cfg: RunConfig, salt: int) -> list[list[LatticePolytope]]:
    rng = random.Random(cfg.random_seed * 1000 + salt)
    return [random_family(rng, 3, 4) for _ in range(cfg.sample_count)]


def _idp_multipliers(cfg: RunConfig) -> list[Check]:
    out = []
    for label, extra in (("idp-multiplier-dim", 0), ("idp-multiplier-dim-plus-one", 1)):
        bad = None
        for ps in multiplier_family(cfg, 6 + extra):
            ns = [max(1, dimension(p) + extra) for p in ps]
            q = minkowski_sum([dilate(p, m) for p, m in zip(ps, ns)])
            rep = idp_check(q, max(2, cfg.max_k))
            if not rep.holds:
                bad = f"ps={ps} ns={ns} report={rep.to_json()}"
                break
        out.append(Check(label, FAIL, bad) if bad else Check(label, PASS, f"{cfg.sample_count} families up to k={max(2, cfg.max_k)}"))
    return out


def _levelness(cfg: RunConfig) -> list[Check]:
    for ps in multiplier_family(cfg, 7):
        ns = [dimension(p) + 1 for p in ps]
        rep = level_check(ps, ns, max(2, cfg.max_k))
        if not rep.holds:
            return [Check("level-multiplier-dim-plus-one", FAIL, f"ps={ps} ns={ns} report={rep.to_json()}")]
    return [Check("level-multiplier-dim-plus-one", PASS, f"{cfg.sample_count} families up to k={max(2, cfg.max_k)}")]


def _edge_dimension(cfg: RunConfig) -> list[Check]:
    rng = random.Random(cfg.random_seed * 1000 + 8)
    singles = max(30, cfg.sample_count)
    pairs = max(10, cfg.sample_count // 2)
    for _ in range(singles):
        g = random_connected_graph(rng, rng.randint(2, cfg.dim_cap), rng.random())
        if dim_formula(g) != dimension(edge_polytope(g)):
            return [Check("edge-polytope-dimension", FAIL, f"{g}")]
    for _ in range(pairs):
        d = rng.randint(2, cfg.dim_cap)
        gs = [random_connected_graph(rng, d, rng.random()) for _ in range(rng.randint(2, 3))]
        if dim_formula_sum(gs) != dimension(minkowski_sum([edge_polytope(g) for g in gs])):
            return [Check("edge-polytope-dimension", FAIL, f"{gs}")]
    return [Check("edge-polytope-dimension", PASS, f"{singles} graphs, {pairs} sums")]


def connected_graphs(max_d: int):
    """All connected graphs on 2..max_d vertices up to isomorphism (max_d <= 7)."""
    import networkx as nx

    if max_d > 7:
        raise ValueError("the graph atlas stops at 7 vertices")
    for h in nx.graph_atlas_g():
        d = h.number_of_nodes()
        if 2 <= d <= max_d and nx.is_connected(h):
            yield Graph(d, [(u + 1, v + 1) for u, v in h.edges()])


def path_joined_triangles() -> Graph:
    """Two vertex-disjoint triangles joined by a path of length two."""
    return Graph(7, [(1, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6), (5, 7), (6, 7)])


def _occ_sweep(cfg: RunConfig) -> list[Check]:
    count = 0
    for g in connected_graphs(6):
        rep = idp_check(edge_polytope(g), max(2, g.n - 1))
        if rep.holds != odd_cycle_condition(g):
            return [Check("odd-cycle-condition-sweep", FAIL, f"{g}: occ={odd_cycle_condition(g)} idp={rep.to_json()}")]
        count += 1
    g = path_joined_triangles()
    p = edge_polytope(g)
    rep = idp_check(p, g.n - 1)
    if odd_cycle_condition(g) or rep.holds or not recheck(rep, p):
        return [Check("odd-cycle-condition-sweep", FAIL, f"separated triangles: {rep.to_json()}")]
    k, alpha = rep.counterexample
    return [Check(
        "odd-cycle-condition-sweep", PASS,
        f"{count} connected graphs on <=6 vertices agree; separated triangles fail at k={k} alpha={_pts(alpha)}",
    )]


def two_graph_pairs(cfg: RunConfig) -> list[tuple[Graph, Graph]]:
    rng = random.Random(cfg.random_seed * 1000 + 10)
    out = []
    for _ in range(cfg.sample_count):
        g1 = random_common_vertex_graph(rng, rng.randint(3, min(6, cfg.dim_cap)))
        out.append((g1, random_subgraph(rng, g1)))
    return out


def _two_graph_sum(cfg: RunConfig) -> list[Check]:
    kmax = max(2, cfg.max_k)
    splits = 0
    for g1, g2 in two_graph_pairs(cfg):
        p = edge_polytope(g1) + edge_polytope(g2)
        rep = idp_check(p, kmax)
        if not rep.holds:
            return [Check("two-graph-sum-decomposition", FAIL, f"G1={g1} G2={g2} {rep.to_json()}")]
        for k in range(2, kmax + 1):
            for alpha in lattice_points(dilate(p, k)):
                parts = decompose_sum(g1, g2, alpha, k)
                if not check_sum_parts(g1, g2, parts, alpha) or len(parts) != k:
                    return [Check("two-graph-sum-decomposition", FAIL, f"G1={g1} G2={g2} k={k} alpha={_pts(alpha)}")]
                splits += 1
    return [Check("two-graph-sum-decomposition", PASS, f"{cfg.sample_count} pairs, {splits} constructive splits re-validated")]


def _witness_check(cid: str, polys: list[LatticePolytope], alpha, note: str) -> Check:
    p = minkowski_sum(polys)
    if not contains(dilate(p, 2), alpha):
        return Check(cid, FAIL, f"{note}: {_pts(alpha)} not in 2P")
    parts = decompose(alpha, 2, p)
    if parts is not None:
        return Check(cid, FAIL, f"{note}: {_pts(alpha)} = {parts[0]} + {parts[1]}")
    return Check(cid, PASS, f"{note}: {_pts(alpha)} in 2P with no 2-decomposition")


def _figure_examples(cfg: RunConfig) -> list[Check]:
    data = load_reconstructions()
    out = []
    for key in ("disjoint-odd-cycles", "not-nested", "three-graphs", "three-graphs-nested"):
        entry = data[key]
        cid = entry["check_id"]
        if entry.get("skipped"):
            out.append(Check(cid, SKIPPED, "reconstruction", reason=entry["skipped"]))
            continue
        n = entry["n"]
        gs = [Graph(n, es) for es in entry["graphs"]]
        alpha = tuple(entry["alpha"])
        problems = []
        for rel in entry.get("subgraph", []):
            if not is_subgraph(gs[rel[0]], gs[rel[1]]):
                problems.append(f"G{rel[0] + 1} not inside G{rel[1] + 1}")
        for rel in entry.get("not_subgraph", []):
            if is_subgraph(gs[rel[0]], gs[rel[1]]):
                problems.append(f"G{rel[0] + 1} inside G{rel[1] + 1}")
        for i in entry.get("connected", []):
            if not is_connected(gs[i]):
                problems.append(f"G{i + 1} disconnected")
        for i in entry.get("common_vertex", []):
            if not common_vertex_condition(gs[i]):
                problems.append(f"G{i + 1} has disjoint odd cycles")
        if problems:
            out.append(Check(cid, FAIL, "reconstruction: " + "; ".join(problems)))
            continue
        out.append(_witness_check(cid, [edge_polytope(g) for g in gs], alpha, "reconstruction"))
    q, alpha = tight_multiplier_polytopes(1)
    out.append(_witness_check("not-nested-matching-triangles", [q], alpha, "matching triangles"))
    return out


def _common_vertex_implies_occ(cfg: RunConfig) -> list[Check]:
    rng = random.Random(cfg.random_seed * 1000 + 12)
    tested = 0
    for _ in range(max(50, cfg.sample_count)):
        g = random_connected_graph(rng, rng.randint(3, cfg.dim_cap), rng.random())
        if common_vertex_condition(g) and not odd_cycle_condition(g):
            return [Check("common-vertex-implies-occ", FAIL, f"{g}")]
        tested += 1
    bridged = Graph(6, [(1, 2), (1, 3), (2, 3), (3, 4), (4, 5), (4, 6), (5, 6)])
    if common_vertex_condition(bridged) or not odd_cycle_condition(bridged):
        return [Check("common-vertex-implies-occ", FAIL, "bridged triangles should separate the conditions")]
    return [Check("common-vertex-implies-occ", PASS, f"{tested} random graphs; bridged triangles satisfy only the weaker condition")]


CHECKS: list[tuple[str, Callable[[RunConfig], list[Check]]]] = [
    ("triangle-plus-segment", _triangle_plus_segment),
    ("tight-multiplier", _tight_multiplier),
    ("dimension-invariance", _dimension_invariance),
    ("relint-of-sum", _relint_of_sum),
    ("peeling", _peeling),
    ("idp-multipliers", _idp_multipliers),
    ("levelness", _levelness),
    ("edge-dimension", _edge_dimension),
    ("occ-sweep", _occ_sweep),
    ("two-graph-sum", _two_graph_sum),
    ("figure-examples", _figure_examples),
    ("common-vertex", _common_vertex_implies_occ),
]


def run_suite(config: RunConfig = RunConfig(), only: Optional[set[str]] = None) -> list[Check]:
    """Run the checks in order; exceptions become FAIL entries."""
    out: list[Check] = []
    for name, fn in CHECKS:
        if only is not None and name not in only:
            continue
        try:
            out.extend(fn(config))
        except Exception as exc:  # report, never raise
            out.append(Check(name, FAIL, f"{type(exc).__name__}: {exc}"))
    return out
