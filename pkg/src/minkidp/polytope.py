"""Integral convex polytopes in V-representation and their Minkowski algebra.

A polytope is the convex hull of a finite set of integer generators.  All
predicates reduce to exact linear feasibility over the generators; no facet
description is ever computed.  Lattice points are found by scanning the
integer bounding box inside the affine hull.  To keep that scan cheap, every
LP answer is turned into a reusable certificate: a separating inequality when
a point is outside, or a full-dimensional simplex of generators when it is
inside.  Later candidates are decided by these certificates in bulk and only
undecided ones go to the LP.
"""

from __future__ import annotations

import functools
import itertools
import weakref
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from . import exact

Point = tuple[int, ...]

# numpy int64 is only used while every intermediate stays far from overflow
_INT_CAP = 1 << 40


class LatticePolytope:
    """Convex hull of a nonempty finite set of integer points.

    Generators are deduplicated and kept in lexicographic order.  They need
    not all be vertices.
    """

    __slots__ = ("generators", "ambient_dim", "__weakref__")

    def __init__(self, generators: Iterable[Sequence[int]]):
        gens = sorted({tuple(int(c) for c in g) for g in generators})
        if not gens:
            raise ValueError("a polytope needs at least one generator")
        dims = {len(g) for g in gens}
        if len(dims) != 1:
            raise ValueError("generators have different lengths")
        self.generators: tuple[Point, ...] = tuple(gens)
        self.ambient_dim: int = dims.pop()

    def __eq__(self, other):
        if not isinstance(other, LatticePolytope):
            return NotImplemented
        return self.generators == other.generators

    def __hash__(self):
        return hash(self.generators)

    def __repr__(self):
        return f"LatticePolytope({[list(g) for g in self.generators]})"

    def __add__(self, other: "LatticePolytope") -> "LatticePolytope":
        return minkowski_sum([self, other])

    def __rmul__(self, n: int) -> "LatticePolytope":
        return dilate(self, n)

    def same_as(self, other: "LatticePolytope") -> bool:
        """Geometric equality: each generator set lies in the other hull."""
        return all(contains(other, g) for g in self.generators) and all(
            contains(self, g) for g in other.generators
        )


@dataclass(frozen=True)
class AffineLattice:
    """``base + Z-span(basis)``; the basis is the nonzero columns of an HNF."""

    ambient_dim: int
    base: Point
    basis: tuple[Point, ...]

    def __contains__(self, x: Sequence[int]) -> bool:
        return lattice_member(self, x)

    @property
    def rank(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class WeightedCombination:
    """A nonnegative rational combination ``sum(coeff * point)``."""

    terms: tuple[tuple[Point, Fraction], ...]
    total: Fraction = field(init=False)

    def __post_init__(self):
        if any(c < 0 for _, c in self.terms):
            raise ValueError("coefficients must be nonnegative")
        object.__setattr__(self, "total", sum((c for _, c in self.terms), Fraction(0)))

    @property
    def value(self) -> tuple[Fraction, ...]:
        if not self.terms:
            return ()
        n = len(self.terms[0][0])
        return tuple(sum((c * p[i] for p, c in self.terms), Fraction(0)) for i in range(n))


def _check_dim(p: LatticePolytope, x: Sequence) -> None:
    if len(x) != p.ambient_dim:
        raise ValueError(f"point has length {len(x)}, polytope lives in dimension {p.ambient_dim}")


# --------------------------------------------------------------------------
# basic algebra


def dimension(p: LatticePolytope) -> int:
    g0 = p.generators[0]
    diffs = [[a - b for a, b in zip(g, g0)] for g in p.generators[1:]]
    return exact.rank(diffs) if diffs else 0


def minkowski_sum(ps: Sequence[LatticePolytope]) -> LatticePolytope:
    if not ps:
        raise ValueError("minkowski_sum needs at least one polytope")
    n = ps[0].ambient_dim
    if any(p.ambient_dim != n for p in ps):
        raise ValueError("mismatched ambient dimensions")
    acc = {tuple(g) for g in ps[0].generators}
    for p in ps[1:]:
        acc = {tuple(a + b for a, b in zip(x, g)) for x in acc for g in p.generators}
    return LatticePolytope(acc)


def dilate(p: LatticePolytope, n: int) -> LatticePolytope:
    if n < 1:
        raise ValueError("dilation factor must be a positive integer")
    if n == 1:
        return p
    q = LatticePolytope(tuple(n * c for c in g) for g in p.generators)
    _seed_from(q, p, n)
    return q


def weighted_sum(ps: Sequence[LatticePolytope], ns: Sequence[int]) -> LatticePolytope:
    """``n_1 P_1 + ... + n_m P_m``."""
    if len(ps) != len(ns):
        raise ValueError("need one multiplier per polytope")
    return minkowski_sum([dilate(p, n) for p, n in zip(ps, ns)])


# --------------------------------------------------------------------------
# membership oracle


class _Simplex:
    """Full-dimensional (within the affine hull) simplex of generators."""

    __slots__ = ("vertices", "s0", "rows", "adj", "det")

    def __init__(self, vertices: list[Point]):
        self.vertices = list(vertices)
        s0 = vertices[0]
        cols = [[a - b for a, b in zip(v, s0)] for v in vertices[1:]]
        r = len(cols)
        n = len(s0)
        rows = []
        ech = exact.Echelon()
        for i in range(n):
            if len(rows) == r:
                break
            if ech.add([cols[j][i] for j in range(r)]):
                rows.append(i)
        m = [[Fraction(cols[j][i]) for j in range(r)] for i in rows]
        inv = _inverse(m)
        d = exact.det([[cols[j][i] for j in range(r)] for i in rows])
        d = abs(d)
        self.s0 = np.array(s0, dtype=np.int64)
        self.rows = rows
        self.adj = np.array([[int(x * d) for x in row] for row in inv], dtype=np.int64).reshape(r, r)
        self.det = d

    def barycentric(self, x: np.ndarray) -> np.ndarray:
        """Scaled barycentric coordinates (times ``det``) for rows of ``x``.

        Column 0 is the weight of ``s0``.
        """
        diff = (x - self.s0)[:, self.rows]
        mu = diff @ self.adj.T
        first = self.det - mu.sum(axis=1, keepdims=True)
        return np.hstack([first, mu])


def _inverse(m: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    aug = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        p = next(i for i in range(c, n) if aug[i][c] != 0)
        aug[c], aug[p] = aug[p], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]


class _Oracle:
    """Exact membership tests for one polytope, with certificate caches."""

    def __init__(self, p: LatticePolytope):
        gens = self.gens = p.generators
        self.n = p.ambient_dim
        self.lp_rows = [[g[i] for g in gens] for i in range(self.n)] + [[1] * len(gens)]
        g0 = gens[0]
        diffs = [[a - b for a, b in zip(g, g0)] for g in gens[1:]]
        normals = exact.rational_nullspace(diffs, self.n) if diffs else [
            [int(i == j) for j in range(self.n)] for i in range(self.n)
        ]
        self.eqs = [(tuple(u), sum(a * b for a, b in zip(u, g0))) for u in normals]
        self.dim = self.n - len(normals)
        arr = np.array(gens, dtype=np.int64)
        self.lo = arr.min(axis=0)
        self.hi = arr.max(axis=0)
        self.cuts: list[tuple[np.ndarray, int]] = []
        self.faces: list[tuple[np.ndarray, int]] = []
        self.simplices: list[_Simplex] = []
        self.lp_calls = 0

    # -- single points --------------------------------------------------

    def in_hull(self, x: Sequence) -> bool:
        return all(sum(a * b for a, b in zip(u, x)) == t for u, t in self.eqs)

    def in_box(self, x: Sequence) -> bool:
        return all(l <= c <= h for l, c, h in zip(self.lo.tolist(), x, self.hi.tolist()))

    def lp(self, x: Sequence) -> Optional[list[Fraction]]:
        self.lp_calls += 1
        res = exact.feasibility(self.lp_rows, list(x) + [1])
        if res.point is None:
            if res.certificate is not None and all(
                isinstance(c, int) or Fraction(c).denominator == 1 for c in x
            ):
                self._add_cut(res.certificate)
            return None
        self._add_simplex([g for g, lam in zip(self.gens, res.point) if lam > 0])
        return res.point

    def _add_cut(self, y: list[Fraction]) -> None:
        # y.(g, 1) <= 0 for every generator, so u.x <= t with u = y[:n], t = -y[n]
        v = exact.primitive(y)
        if max(abs(c) for c in v) > _INT_CAP:
            return
        self.cuts.append((np.array(v[:-1], dtype=np.int64), -v[-1]))

    def _add_simplex(self, support: list[Point]) -> None:
        verts = []
        g0 = support[0]
        ech = exact.Echelon()
        for g in list(support) + list(self.gens):
            if len(verts) == self.dim + 1:
                break
            if not verts:
                verts.append(g)
            elif ech.add([a - b for a, b in zip(g, g0)]):
                verts.append(g)
        if len(verts) != self.dim + 1:
            return
        s = _Simplex(verts)
        if s.det > _INT_CAP or (s.adj.size and np.abs(s.adj).max() > _INT_CAP):
            return
        self.simplices.append(s)

    def contains(self, x: Sequence) -> bool:
        if not self.in_hull(x) or not self.in_box(x):
            return False
        if all(isinstance(c, (int, np.integer)) for c in x):
            arr = np.array([x], dtype=np.int64)
            for u, t in self.cuts:
                if int(arr[0] @ u) > t:
                    return False
            for s in self.simplices:
                if (s.barycentric(arr) >= 0).all():
                    return True
        return self.lp(x) is not None

    def relint(self, x: Sequence) -> bool:
        if not self.in_hull(x) or not self.in_box(x):
            return False
        if self.dim == 0:
            return True
        integral = all(isinstance(c, (int, np.integer)) for c in x)
        if integral:
            arr = np.array([x], dtype=np.int64)
            for u, t in self.cuts:
                if int(arr[0] @ u) > t:
                    return False
            for u, t in self.faces:
                if int(arr[0] @ u) >= t:
                    return False
            for s in self.simplices:
                if (s.barycentric(arr) > 0).all():
                    return True
        return self._strict_lp(x, record=integral)

    def _strict_lp(self, x: Sequence, record: bool) -> bool:
        self.lp_calls += 1
        if exact.rational_feasible(self.lp_rows, list(x) + [1], strict_positive=True) is not None:
            return True
        if record:
            self._record_face(x)
        return False

    def _record_face(self, x: Sequence) -> None:
        # x is in P but not in relint P, so it lies on a proper face
        if not self.contains(x):
            return
        face = _supporting_face(self.gens, x)
        if face is not None:
            u, t = face
            if max(abs(c) for c in list(u) + [t]) <= _INT_CAP:
                self.faces.append((np.array(u, dtype=np.int64), t))

    # -- bulk classification -------------------------------------------

    def classify(self, cands: np.ndarray, known: Optional[np.ndarray] = None) -> np.ndarray:
        """Boolean mask: which candidate rows (already in the hull) lie in P."""
        n = len(cands)
        inside = np.zeros(n, dtype=bool) if known is None else known.copy()
        undecided = ~inside
        for u, t in self.cuts:
            undecided &= ~(cands @ u > t)
        for s in self.simplices:
            hit = undecided & (s.barycentric(cands) >= 0).all(axis=1)
            inside |= hit
            undecided &= ~hit
        while undecided.any():
            i = int(np.argmax(undecided))
            x = [int(c) for c in cands[i]]
            nc, ns = len(self.cuts), len(self.simplices)
            ok = self.lp(x) is not None
            undecided[i] = False
            inside[i] = ok
            for u, t in self.cuts[nc:]:
                undecided &= ~(cands @ u > t)
            for s in self.simplices[ns:]:
                hit = undecided & (s.barycentric(cands) >= 0).all(axis=1)
                inside |= hit
                undecided &= ~hit
        return inside

    def classify_relint(self, pts: np.ndarray) -> np.ndarray:
        """Mask of relative-interior rows among lattice points of P."""
        n = len(pts)
        if self.dim == 0:
            return np.ones(n, dtype=bool)
        res = np.zeros(n, dtype=bool)
        undecided = np.ones(n, dtype=bool)

        def apply(faces, simplices):
            nonlocal undecided
            for u, t in faces:
                undecided &= ~(pts @ u >= t)
            for s in simplices:
                hit = undecided & (s.barycentric(pts) > 0).all(axis=1)
                res[hit] = True
                undecided &= ~hit

        apply(self.faces, self.simplices)
        while undecided.any():
            i = int(np.argmax(undecided))
            x = [int(c) for c in pts[i]]
            nf, ns = len(self.faces), len(self.simplices)
            ok = self._strict_lp(x, record=True)
            undecided[i] = False
            res[i] = ok
            apply(self.faces[nf:], self.simplices[ns:])
        return res


def _supporting_face(gens, x) -> Optional[tuple[list[int], int]]:
    """A valid inequality ``u.g <= t`` over ``gens`` with ``u.x == t``, not
    tight on every generator.  ``x`` must lie on the relative boundary.

    """
    n = len(x)
    m = len(gens)
    # LP in variables (u, t): find u.g - t <= 0 for all g, u.x - t == 0,
    # sum over g of (t - u.g) == 1.  Split u, t into nonnegative parts.
    rows = []
    rhs = []
    # columns: u+ (n), u- (n), t+ , t-, slack per generator (m)
    width = 2 * n + 2 + m
    for j, g in enumerate(gens):
        row = [0] * width
        for i in range(n):
            row[i] = g[i]
            row[n + i] = -g[i]
        row[2 * n] = -1
        row[2 * n + 1] = 1
        row[2 * n + 2 + j] = 1
        rows.append(row)
        rhs.append(0)
    row = [0] * width
    for i in range(n):
        row[i] = x[i]
        row[n + i] = -x[i]
    row[2 * n] = -1
    row[2 * n + 1] = 1
    rows.append(row)
    rhs.append(0)
    row = [0] * width
    for j in range(m):
        row[2 * n + 2 + j] = 1
    rows.append(row)
    rhs.append(1)
    sol = exact.rational_feasible(rows, rhs)
    if sol is None:
        return None
    u = [sol[i] - sol[n + i] for i in range(n)]
    t = sol[2 * n] - sol[2 * n + 1]
    v = exact.primitive(u + [t])
    return v[:-1], v[-1]


_ORACLES: "weakref.WeakKeyDictionary[LatticePolytope, _Oracle]" = weakref.WeakKeyDictionary()


def _oracle(p: LatticePolytope) -> _Oracle:
    o = _ORACLES.get(p)
    if o is None:
        o = _ORACLES[p] = _Oracle(p)
    return o


def _seed_from(q: LatticePolytope, p: LatticePolytope, n: int) -> None:
    """Hand the certificates already found for ``p`` to its dilate ``q = n p``."""
    po = _ORACLES.get(p)
    if po is None or q in _ORACLES:
        return
    qo = _oracle(q)
    qo.cuts = [(u, t * n) for u, t in po.cuts if abs(t * n) <= _INT_CAP]
    qo.faces = [(u, t * n) for u, t in po.faces if abs(t * n) <= _INT_CAP]
    for s in po.simplices:
        qo._add_simplex([tuple(n * c for c in v) for v in s.vertices])


# --------------------------------------------------------------------------
# public predicates


def contains(p: LatticePolytope, x: Sequence) -> bool:
    """Whether the (rational) point ``x`` lies in ``p``."""
    _check_dim(p, x)
    return _oracle(p).contains(tuple(x))


def relint_contains(p: LatticePolytope, x: Sequence) -> bool:
    """Whether ``x`` is a strictly positive convex combination of all generators."""
    _check_dim(p, x)
    return _oracle(p).relint(tuple(x))


def convex_combination(p: LatticePolytope, x: Sequence, strict: bool = False) -> Optional[WeightedCombination]:
    """Explicit convex weights of ``x`` over the generators, or None."""
    _check_dim(p, x)
    lam = exact.rational_feasible(_oracle(p).lp_rows, list(x) + [1], strict_positive=strict)
    if lam is None:
        return None
    return WeightedCombination(tuple((g, c) for g, c in zip(p.generators, lam) if c or strict))


def relint_split(ps: Sequence[LatticePolytope], z: Sequence) -> Optional[list[tuple[Fraction, ...]]]:
    """Rational points ``x_i`` in the relative interior of each ``ps[i]`` with
    ``sum x_i == z``, or None when ``z`` is not in the relative interior of the sum."""
    if not ps:
        raise ValueError("need at least one polytope")
    for p in ps:
        _check_dim(p, z)
    n = ps[0].ambient_dim
    cols = [(i, g) for i, p in enumerate(ps) for g in p.generators]
    rows = [[g[c] for _, g in cols] for c in range(n)]
    rows += [[int(i == j) for j, _ in cols] for i in range(len(ps))]
    lam = exact.rational_feasible(rows, list(z) + [1] * len(ps), strict_positive=True)
    if lam is None:
        return None
    out = [[Fraction(0)] * n for _ in ps]
    for (i, g), c in zip(cols, lam):
        for k in range(n):
            out[i][k] += c * g[k]
    return [tuple(x) for x in out]


def _hull_candidates(
    o: _Oracle, lo: np.ndarray, hi: np.ndarray, chunk: int = 1 << 20
) -> Iterator[np.ndarray]:
    """Integer points of the box ``[lo, hi]`` lying in the affine hull."""
    n = o.n
    if (hi < lo).any():
        return
    # reduced row echelon form of the hull equations
    m = [[Fraction(c) for c in u] + [Fraction(t)] for u, t in o.eqs]
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pv = m[r][c]
        m[r] = [v / pv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    den = lcm(*(v.denominator for row in m[:r] for v in row)) if r else 1
    coef = np.array([[int(m[i][f] * den) for f in free] for i in range(r)], dtype=np.int64).reshape(r, len(free))
    const = np.array([int(m[i][n] * den) for i in range(r)], dtype=np.int64)
    ranges = [np.arange(lo[f], hi[f] + 1, dtype=np.int64) for f in free]
    sizes = [len(a) for a in ranges]
    # split the grid over leading free coordinates so each block fits in a chunk
    lead = 0
    block = int(np.prod(sizes, dtype=object)) if sizes else 1
    while lead < len(sizes) and block > chunk:
        block //= sizes[lead]
        lead += 1
    for prefix in itertools.product(*ranges[:lead]):
        tail = ranges[lead:]
        if tail:
            grid = np.stack(np.meshgrid(*tail, indexing="ij"), axis=-1).reshape(-1, len(tail))
        else:
            grid = np.zeros((1, 0), dtype=np.int64)
        freevals = np.hstack([np.tile(np.array(prefix, dtype=np.int64), (len(grid), 1)), grid])
        out = np.empty((len(freevals), n), dtype=np.int64)
        if free:
            out[:, free] = freevals
        if r:
            num = const[None, :] - freevals @ coef.T
            ok = (num % den == 0).all(axis=1)
            out = out[ok]
            piv = num[ok] // den
            out[:, pivots] = piv
            inb = ((piv >= lo[pivots]) & (piv <= hi[pivots])).all(axis=1)
            out = out[inb]
        if len(out):
            yield out


def _lattice_array(p: LatticePolytope, lo=None, hi=None) -> np.ndarray:
    o = _oracle(p)
    lo = o.lo if lo is None else np.maximum(o.lo, np.asarray(lo, dtype=np.int64))
    hi = o.hi if hi is None else np.minimum(o.hi, np.asarray(hi, dtype=np.int64))
    parts = []
    for cands in _hull_candidates(o, lo, hi):
        parts.append(cands[o.classify(cands)])
    if not parts:
        return np.zeros((0, p.ambient_dim), dtype=np.int64)
    pts = np.vstack(parts)
    order = np.lexsort(pts.T[::-1])
    return pts[order]


@functools.lru_cache(maxsize=512)
def _lattice_points_cached(p: LatticePolytope) -> tuple[Point, ...]:
    return tuple(tuple(int(c) for c in row) for row in _lattice_array(p))


def lattice_points(p: LatticePolytope, lo: Optional[Sequence[int]] = None,
                   hi: Optional[Sequence[int]] = None) -> list[Point]:
    """All integer points of ``p`` in lexicographic order.

    ``lo``/``hi`` optionally clip the scanned box (results are then the
    lattice points of ``p`` inside that box).
    """
    if lo is None and hi is None:
        return list(_lattice_points_cached(p))
    return [tuple(int(c) for c in row) for row in _lattice_array(p, lo, hi)]


@functools.lru_cache(maxsize=512)
def _relint_points_cached(p: LatticePolytope) -> tuple[Point, ...]:
    pts = lattice_points(p)
    if not pts:
        return ()
    arr = np.array(pts, dtype=np.int64)
    mask = _oracle(p).classify_relint(arr)
    return tuple(pt for pt, m in zip(pts, mask) if m)


def relint_lattice_points(p: LatticePolytope) -> list[Point]:
    return list(_relint_points_cached(p))


# --------------------------------------------------------------------------
# affine lattices


def affine_lattice(points: Iterable[Sequence[int]]) -> AffineLattice:
    pts = [tuple(int(c) for c in x) for x in points]
    if not pts:
        raise ValueError("affine_lattice needs at least one point")
    base = pts[0]
    n = len(base)
    diffs = [[a - b for a, b in zip(x, base)] for x in pts[1:]]
    if not any(any(d) for d in diffs):
        return AffineLattice(n, base, ())
    cols = [[d[i] for d in diffs] for i in range(n)]  # n x (#diffs)
    h, _ = exact.hnf(cols)
    k = len(exact.hnf_pivots(h))
    basis = tuple(tuple(h[i][j] for i in range(n)) for j in range(k))
    return AffineLattice(n, base, basis)


def lattice_member(lat: AffineLattice, x: Sequence[int]) -> bool:
    if len(x) != lat.ambient_dim:
        raise ValueError("dimension mismatch")
    rhs = [int(a) - b for a, b in zip(x, lat.base)]
    if not lat.basis:
        return not any(rhs)
    cols = [[v[i] for v in lat.basis] for i in range(lat.ambient_dim)]
    return exact.solve_integer_linear(cols, rhs) is not None
