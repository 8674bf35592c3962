"""Decomposition search in the graded semigroup of lattice polytopes.

Checks for the integer decomposition property, normality and the interior
splitting property are brute force but exact.  The bulk of each check compares
the lattice points of ``kP`` against the ``k``-fold sumset of ``P``'s lattice
points; every reported failure is then confirmed by an exhaustive
depth-first search (:func:`decompose`), so a ``FAILS`` verdict always carries
an independently checked certificate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from . import exact
from .polytope import (
    LatticePolytope,
    Point,
    _hull_candidates,
    _oracle,
    affine_lattice,
    contains,
    dilate,
    dimension,
    lattice_member,
    lattice_points,
    relint_lattice_points,
    weighted_sum,
)

IDP = "IDP"
NORMAL = "NORMAL"
LEVEL = "LEVEL"
HOLDS = "HOLDS_UP_TO_K"
FAILS = "FAILS"


@dataclass(frozen=True)
class DecompositionWitness:
    k: int
    alpha: Point
    parts: tuple[Point, ...]

    def is_valid(self, p: LatticePolytope) -> bool:
        if len(self.parts) != self.k:
            return False
        total = tuple(sum(c) for c in zip(*self.parts))
        pts = set(lattice_points(p))
        return total == tuple(self.alpha) and all(tuple(x) in pts for x in self.parts)


@dataclass(frozen=True)
class CheckReport:
    property: str
    verified_up_to_k: int
    verdict: str
    counterexample: Optional[tuple[int, Point]] = None

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS

    def to_json(self) -> dict:
        ce = None
        if self.counterexample is not None:
            k, alpha = self.counterexample
            ce = {"k": k, "alpha": list(alpha)}
        return {
            "property": self.property,
            "verified_up_to_k": self.verified_up_to_k,
            "verdict": self.verdict,
            "counterexample": ce,
        }


# --------------------------------------------------------------------------
# sumsets of point arrays


def _rows(points: Iterable[Sequence[int]], n: int) -> np.ndarray:
    arr = np.array([tuple(p) for p in points], dtype=np.int64)
    return arr.reshape(-1, n)


class _Codec:
    """Mixed-radix encoding of integer points in a box as single int64s."""

    def __init__(self, lo: np.ndarray, hi: np.ndarray):
        self.lo = lo
        span = (hi - lo + 1).astype(object)
        strides = [1] * len(span)
        for i in range(len(span) - 2, -1, -1):
            strides[i] = strides[i + 1] * int(span[i + 1])
        total = strides[0] * int(span[0]) if len(span) else 1
        if total >= 1 << 62:
            raise OverflowError("box too large to encode")
        self.strides = np.array(strides, dtype=np.int64)
        self.span = np.array([int(s) for s in span], dtype=np.int64)

    def encode(self, pts: np.ndarray) -> np.ndarray:
        return (pts - self.lo) @ self.strides

    def decode(self, codes: np.ndarray) -> np.ndarray:
        out = np.empty((len(codes), len(self.span)), dtype=np.int64)
        rem = codes.copy()
        for i, s in enumerate(self.strides):
            out[:, i] = rem // s
            rem = rem % s
        return out + self.lo


def sumset(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """``{x + y : x in a, y in b}`` as lexicographically sorted unique rows."""
    if len(a) == 0 or len(b) == 0:
        return np.zeros((0, a.shape[1]), dtype=np.int64)
    if len(a) < len(b):
        a, b = b, a
    amin, bmin = a.min(axis=0), b.min(axis=0)
    lo = amin + bmin
    codec = _Codec(lo, a.max(axis=0) + b.max(axis=0))
    ashape = tuple(int(x) for x in a.max(axis=0) - amin + 1)
    asize = math.prod(ashape)
    if asize <= 20 * len(a) and math.prod(int(s) for s in codec.span) <= 1 << 26:
        # dense: OR shifted copies of a's indicator grid
        agrid = np.zeros(ashape, dtype=bool)
        agrid[tuple((a - amin).T)] = True
        out = np.zeros(tuple(int(s) for s in codec.span), dtype=bool)
        for y in b - bmin:
            out[tuple(slice(int(o), int(o) + s) for o, s in zip(y, ashape))] |= agrid
        return np.argwhere(out).astype(np.int64) + lo
    # sparse: (x - amin) + (y - bmin) encodes x + y - lo
    codes = ((a - amin) @ codec.strides)[:, None] + ((b - bmin) @ codec.strides)[None, :]
    return codec.decode(np.unique(codes.ravel()))


def kfold(points: np.ndarray, k: int) -> np.ndarray:
    """``k``-fold sumset (``k >= 1``)."""
    acc = np.unique(points, axis=0) if len(points) else points
    for _ in range(k - 1):
        acc = sumset(acc, points)
    return acc


def _member_mask(cands: np.ndarray, table: np.ndarray) -> np.ndarray:
    """Which rows of ``cands`` occur in the sorted unique rows of ``table``."""
    if len(table) == 0 or len(cands) == 0:
        return np.zeros(len(cands), dtype=bool)
    lo = np.minimum(cands.min(axis=0), table.min(axis=0))
    hi = np.maximum(cands.max(axis=0), table.max(axis=0))
    codec = _Codec(lo, hi)
    t = np.sort(codec.encode(table))
    c = codec.encode(cands)
    pos = np.searchsorted(t, c)
    pos[pos == len(t)] = 0
    return t[pos] == c


# --------------------------------------------------------------------------
# exhaustive decomposition


def decompose(alpha: Sequence[int], k: int, p: LatticePolytope) -> Optional[list[Point]]:
    """``k`` lattice points of ``p`` summing to ``alpha``, or None if impossible.

    Depth-first over lattice points in decreasing lexicographic order with
    non-increasing parts; every partial residual must stay in the matching
    dilate of ``p``.
    """
    if k < 1:
        raise ValueError("k must be positive")
    alpha = tuple(int(c) for c in alpha)
    if len(alpha) != p.ambient_dim:
        raise ValueError("dimension mismatch")
    o = _oracle(p)
    lo = [int(x) for x in o.lo]
    hi = [int(x) for x in o.hi]
    if k == 1:
        return [alpha] if contains(p, alpha) else None
    box_lo = [a - (k - 1) * h for a, h in zip(alpha, hi)]
    box_hi = [a - (k - 1) * l for a, l in zip(alpha, lo)]
    if any(x > y for x, y in zip(box_lo, box_hi)):
        return None
    pts = lattice_points(p, box_lo, box_hi)[::-1]
    index = {x: i for i, x in enumerate(pts)}
    dead: set[tuple[Point, int, int]] = set()
    fits: dict[tuple[Point, int], bool] = {}

    def fits_in(res: Point, m: int) -> bool:
        key = (res, m)
        if key not in fits:
            ok = all(m * l <= c <= m * h for c, l, h in zip(res, lo, hi))
            fits[key] = ok and contains(dilate(p, m), res)
        return fits[key]

    def search(res: Point, m: int, start: int) -> Optional[list[Point]]:
        if m == 1:
            i = index.get(res)
            return [res] if i is not None and i >= start else None
        key = (res, m, start)
        if key in dead:
            return None
        for i in range(start, len(pts)):
            x = pts[i]
            rest = tuple(a - b for a, b in zip(res, x))
            if not fits_in(rest, m - 1):
                continue
            tail = search(rest, m - 1, i)
            if tail is not None:
                return [x] + tail
        dead.add(key)
        return None

    if not fits_in(alpha, k):
        return None
    return search(alpha, k, 0)


def decompose_naive(alpha: Sequence[int], k: int, p: LatticePolytope) -> Optional[list[Point]]:
    """Plain product enumeration over ``k``-tuples; only for tiny inputs."""
    import itertools

    alpha = tuple(alpha)
    pts = lattice_points(p)
    for combo in itertools.combinations_with_replacement(pts, k):
        if tuple(sum(c) for c in zip(*combo)) == alpha:
            return list(combo)
    return None


# --------------------------------------------------------------------------
# property checks


def _grade_failures(p: LatticePolytope, k: int, reached: np.ndarray) -> np.ndarray:
    """Lattice points of ``k p`` not in ``reached`` (sorted rows)."""
    q = dilate(p, k)
    o = _oracle(q)
    bad = []
    for cands in _hull_candidates(o, o.lo, o.hi):
        known = _member_mask(cands, reached)
        inside = o.classify(cands, known)
        bad.append(cands[inside & ~known])
    if not bad:
        return np.zeros((0, p.ambient_dim), dtype=np.int64)
    out = np.vstack(bad)
    return out[np.lexsort(out.T[::-1])]


def idp_check(p: LatticePolytope, max_k: int) -> CheckReport:
    """Does every lattice point of ``kP`` split into ``k`` lattice points, k <= max_k?"""
    if max_k < 2:
        raise ValueError("max_k must be at least 2")
    base = _rows(lattice_points(p), p.ambient_dim)
    reached = base
    for k in range(2, max_k + 1):
        reached = sumset(reached, base)
        bad = _grade_failures(p, k, reached)
        if len(bad):
            alpha = tuple(int(c) for c in bad[0])
            _confirm_failure(alpha, k, p)
            return CheckReport(IDP, k - 1, FAILS, (k, alpha))
    return CheckReport(IDP, max_k, HOLDS)


def _confirm_failure(alpha: Point, k: int, p: LatticePolytope) -> None:
    if decompose(alpha, k, p) is not None:  # pragma: no cover - would be a defect
        raise RuntimeError(f"sumset and search disagree on {alpha} at k={k}")


def graded_lattice(p: LatticePolytope, k: int, reading: str = "literal"):
    """The affine lattice that normality tests ``kP`` against.

    ``literal``: generated by the lattice points of ``kP`` itself.
    ``generated``: ``k`` copies of the lattice generated by ``P``'s points,
    i.e. the degree-``k`` part of the group generated by the semigroup.
    """
    if reading == "literal":
        return affine_lattice(lattice_points(dilate(p, k)))
    if reading == "generated":
        lat = affine_lattice(lattice_points(p))
        from .polytope import AffineLattice

        return AffineLattice(lat.ambient_dim, tuple(k * c for c in lat.base), lat.basis)
    raise ValueError(f"unknown reading {reading!r}")


def normal_check(p: LatticePolytope, max_k: int, reading: str = "literal") -> CheckReport:
    """Like :func:`idp_check`, restricted to points of the graded lattice."""
    if reading not in ("literal", "generated"):
        raise ValueError(f"unknown reading {reading!r}")
    if max_k < 2:
        raise ValueError("max_k must be at least 2")
    base = _rows(lattice_points(p), p.ambient_dim)
    reached = base
    for k in range(2, max_k + 1):
        reached = sumset(reached, base)
        bad = _grade_failures(p, k, reached)
        if len(bad):
            lat = graded_lattice(p, k, reading)
            for row in bad:
                alpha = tuple(int(c) for c in row)
                if lattice_member(lat, alpha):
                    _confirm_failure(alpha, k, p)
                    return CheckReport(NORMAL, k - 1, FAILS, (k, alpha))
    return CheckReport(NORMAL, max_k, HOLDS)


def level_check(ps: Sequence[LatticePolytope], ns: Sequence[int], max_k: int) -> CheckReport:
    """Every interior lattice point of ``kQ`` (``Q = sum n_i P_i``) is an
    interior lattice point of ``Q`` plus ``k - 1`` lattice points of ``Q``."""
    if len(ps) != len(ns):
        raise ValueError("need one multiplier per polytope")
    if max_k < 2:
        raise ValueError("max_k must be at least 2")
    q = weighted_sum(ps, ns)
    n = q.ambient_dim
    base = _rows(lattice_points(q), n)
    inner = _rows(relint_lattice_points(q), n)
    reached = inner
    for k in range(2, max_k + 1):
        reached = sumset(reached, base)
        targets = _rows(relint_lattice_points(dilate(q, k)), n)
        if len(targets) == 0:
            continue
        missing = targets[~_member_mask(targets, reached)]
        if len(missing):
            alpha = tuple(int(c) for c in missing[0])
            if level_split(alpha, k, q) is not None:  # pragma: no cover
                raise RuntimeError("sumset and search disagree")
            return CheckReport(LEVEL, k - 1, FAILS, (k, alpha))
    return CheckReport(LEVEL, max_k, HOLDS)


def level_split(alpha: Sequence[int], k: int, q: LatticePolytope) -> Optional[list[Point]]:
    """Exhaustive search for ``alpha = beta + beta_1 + ... + beta_{k-1}`` with
    ``beta`` interior to ``q``."""
    alpha = tuple(alpha)
    for beta in relint_lattice_points(q):
        rest = tuple(a - b for a, b in zip(alpha, beta))
        if k == 1:
            if not any(rest):
                return [beta]
            continue
        tail = decompose(rest, k - 1, q)
        if tail is not None:
            return [beta] + tail
    return None


def recheck(report: CheckReport, p: LatticePolytope) -> bool:
    """Re-validate a failure by exhaustive search (``p`` is the polytope checked;
    for LEVEL reports pass the summed polytope ``Q``)."""
    if report.counterexample is None:
        return True
    k, alpha = report.counterexample
    if report.property == LEVEL:
        return level_split(alpha, k, p) is None
    if not contains(dilate(p, k), alpha):
        return False
    return decompose(alpha, k, p) is None


# --------------------------------------------------------------------------
# peeling identities


def _fold_sum(ps: Sequence[LatticePolytope], counts: Sequence[int], n: int) -> np.ndarray:
    acc = np.zeros((1, n), dtype=np.int64)
    for p, c in zip(ps, counts):
        if c > 0:
            acc = sumset(acc, kfold(_rows(lattice_points(p), n), c))
    return acc


def _scaled_sum_points(ps, ns, interior: bool) -> np.ndarray:
    n = ps[0].ambient_dim
    keep = [(p, m) for p, m in zip(ps, ns) if m > 0]
    if not keep:
        return np.zeros((1, n), dtype=np.int64)
    q = weighted_sum([p for p, _ in keep], [m for _, m in keep])
    pts = relint_lattice_points(q) if interior else lattice_points(q)
    return _rows(pts, n)


def _same_rows(a: np.ndarray, b: np.ndarray) -> bool:
    if a.shape != b.shape:
        return False
    ka = a[np.lexsort(a.T[::-1])]
    kb = b[np.lexsort(b.T[::-1])]
    return bool((ka == kb).all())


def verify_peeling(ps: Sequence[LatticePolytope], ns: Sequence[int]) -> bool:
    """Lattice points of ``sum n_i P_i`` equal those of ``sum d_i P_i`` plus
    ``n_i - d_i`` lattice points of each ``P_i`` (``d_i = dim P_i``).

    Requires ``n_i >= d_i + 1``.
    """
    if len(ps) != len(ns):
        raise ValueError("need one multiplier per polytope")
    ds = [dimension(p) for p in ps]
    if any(m < d + 1 for m, d in zip(ns, ds)):
        raise ValueError("every multiplier must be at least dim + 1")
    n = ps[0].ambient_dim
    lhs = _rows(lattice_points(weighted_sum(ps, ns)), n)
    rhs = sumset(_scaled_sum_points(ps, ds, False), _fold_sum(ps, [m - d for m, d in zip(ns, ds)], n))
    return _same_rows(lhs, rhs)


def verify_interior_peeling(ps: Sequence[LatticePolytope], ns: Sequence[int]) -> bool:
    """Interior lattice points of ``sum n_i P_i`` equal interior lattice points
    of ``sum (d_i + 1) P_i`` plus ``n_i - d_i - 1`` lattice points of each ``P_i``.

    Requires ``n_i >= d_i + 2``.
    """
    if len(ps) != len(ns):
        raise ValueError("need one multiplier per polytope")
    ds = [dimension(p) for p in ps]
    if any(m < d + 2 for m, d in zip(ns, ds)):
        raise ValueError("every multiplier must be at least dim + 2")
    n = ps[0].ambient_dim
    lhs = _rows(relint_lattice_points(weighted_sum(ps, ns)), n)
    core = _rows(relint_lattice_points(weighted_sum(ps, [d + 1 for d in ds])), n)
    rhs = sumset(core, _fold_sum(ps, [m - d - 1 for m, d in zip(ns, ds)], n))
    return _same_rows(lhs, rhs)


# --------------------------------------------------------------------------
# constructive splitting via Caratheodory representations


def _joint_weights(ps, scales, alpha, strict: bool):
    """Rational weights ``r[i][v]`` over lattice points ``v`` of each ``P_i``
    with ``sum_v r[i][v] = scales[i]`` and ``sum r v = alpha``."""
    n = len(alpha)
    pts = [lattice_points(p) for p in ps]
    cols = [(i, v) for i, vs in enumerate(pts) for v in vs]
    rows = [[v[c] for _, v in cols] for c in range(n)]
    for i in range(len(ps)):
        rows.append([int(j == i) for j, _ in cols])
    sol = exact.rational_feasible(rows, list(alpha) + list(scales), strict_positive=strict)
    if sol is None:
        return None
    out = [dict() for _ in ps]
    for (i, v), x in zip(cols, sol):
        if x:
            out[i][v] = x
    return out


def _basic_representation(weights: dict, total: int) -> list[tuple[Point, Fraction]]:
    """Caratheodory: same point, same total, affinely independent support."""
    pts = sorted(weights)
    n = len(pts[0])
    w = [sum((x * v[c] for v, x in weights.items()), Fraction(0)) for c in range(n)]
    rows = [[v[c] for v in pts] for c in range(n)] + [[1] * len(pts)]
    sol = exact.rational_feasible(rows, w + [total])
    support = [(v, x) for v, x in zip(pts, sol) if x]
    diffs = [[a - b for a, b in zip(v, support[0][0])] for v, _ in support[1:]]
    if diffs and exact.rank(diffs) != len(diffs):  # pragma: no cover
        raise RuntimeError("basic solution with dependent support")
    return support


def _peel(support: list[tuple[Point, Fraction]], count: int, stop: int, strict: bool) -> tuple[list[Point], list[tuple[Point, Fraction]]]:
    """Remove unit weights until ``count == stop``; returns (peeled points, rest)."""
    rep = [[v, x] for v, x in support]
    peeled = []
    while count > stop:
        best = max(range(len(rep)), key=lambda j: (rep[j][1], -j))
        if rep[best][1] < 1 or (strict and rep[best][1] <= 1):  # pragma: no cover
            raise RuntimeError("no coefficient large enough to peel")
        rep[best][1] -= 1
        peeled.append(rep[best][0])
        count -= 1
    return peeled, [(v, x) for v, x in rep if x]


def caratheodory_split(
    ps: Sequence[LatticePolytope], ns: Sequence[int], alpha: Sequence[int], k: int
) -> list[Point]:
    """Split ``alpha`` in ``k Q`` (``Q = sum n_i P_i``, ``n_i >= dim P_i``) into
    ``k`` lattice points of ``Q`` by peeling unit weights off Caratheodory
    representations."""
    ds = [dimension(p) for p in ps]
    if any(m < d for m, d in zip(ns, ds)):
        raise ValueError("every multiplier must be at least the dimension")
    alpha = tuple(int(c) for c in alpha)
    reps = _joint_weights(ps, [k * m for m in ns], alpha, strict=False)
    if reps is None:
        raise ValueError("alpha is not in k Q")
    return _assemble(ps, ns, ds, alpha, k, reps, extra=0, strict=False)


def interior_split(
    ps: Sequence[LatticePolytope], ns: Sequence[int], alpha: Sequence[int], k: int
) -> list[Point]:
    """For ``alpha`` interior to ``k Q`` with ``n_i >= dim P_i + 1``: an interior
    lattice point of ``Q`` followed by ``k - 1`` lattice points of ``Q``."""
    ds = [dimension(p) for p in ps]
    if any(m < d + 1 for m, d in zip(ns, ds)):
        raise ValueError("every multiplier must be at least dim + 1")
    alpha = tuple(int(c) for c in alpha)
    reps = _joint_weights(ps, [k * m for m in ns], alpha, strict=True)
    if reps is None:
        raise ValueError("alpha is not interior to k Q")
    return _assemble(ps, ns, ds, alpha, k, reps, extra=1, strict=True)


def _assemble(ps, ns, ds, alpha, k, reps, extra: int, strict: bool) -> list[Point]:
    n = len(alpha)
    peeled = []
    for i, (m, d) in enumerate(zip(ns, ds)):
        support = _basic_representation(reps[i], k * m)
        out, _ = _peel(support, k * m, d + extra, strict)
        peeled.append(out)
    first = list(alpha)
    for out in peeled:
        for v in out:
            first = [a - b for a, b in zip(first, v)]
    parts = []
    for _ in range(k - 1):
        part = [0] * n
        for i, m in enumerate(ns):
            for _ in range(m):
                v = peeled[i].pop()
                part = [a + b for a, b in zip(part, v)]
        parts.append(tuple(part))
    for out in peeled:
        for v in out:
            first = [a + b for a, b in zip(first, v)]
    return [tuple(first)] + parts
