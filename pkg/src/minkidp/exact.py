"""Exact integer linear algebra and rational linear feasibility.

Everything here works on Python ints and :class:`fractions.Fraction`; no
floating point value is ever produced.  Matrices are plain sequences of rows.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import NamedTuple, Optional, Sequence

IntMatrix = list[list[int]]


class HnfResult(NamedTuple):
    h: IntMatrix
    u: IntMatrix


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        return -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def det(a: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix (Bareiss elimination)."""
    m = [list(r) for r in a]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _col_op(mat: IntMatrix, j: int, k: int, a: int, b: int, c: int, d: int) -> None:
    # (col_j, col_k) <- (a*col_j + b*col_k, c*col_j + d*col_k)
    for row in mat:
        x, y = row[j], row[k]
        row[j] = a * x + b * y
        row[k] = c * x + d * y


def hnf(a: Sequence[Sequence[int]]) -> HnfResult:
    """Column-style Hermite normal form.

    Returns ``(h, u)`` with ``a @ u == h`` and ``u`` unimodular.  ``h`` is in
    column echelon form: every pivot is positive, entries to the left of a
    pivot in its row lie in ``[0, pivot)``, and zero columns come last.
    """
    if not a or not a[0]:
        raise ValueError("hnf needs a nonempty matrix")
    h = [list(map(int, row)) for row in a]
    m, n = len(h), len(h[0])
    u = identity(n)
    col = 0
    for i in range(m):
        if col == n:
            break
        for j in range(col + 1, n):
            if h[i][j] == 0:
                continue
            x, y = h[i][col], h[i][j]
            g, s, t = _xgcd(x, y)
            # [[s, -y/g], [t, x/g]] has determinant 1
            p, q = x // g, y // g
            _col_op(h, col, j, s, t, -q, p)
            _col_op(u, col, j, s, t, -q, p)
        piv = h[i][col]
        if piv == 0:
            continue
        if piv < 0:
            for mat in (h, u):
                for row in mat:
                    row[col] = -row[col]
            piv = -piv
        for j in range(col):
            q = h[i][j] // piv
            if q:
                for mat in (h, u):
                    for row in mat:
                        row[j] -= q * row[col]
        col += 1
    return HnfResult(h, u)


def hnf_pivots(h: Sequence[Sequence[int]]) -> list[tuple[int, int]]:
    """``(row, col)`` of each pivot of a column HNF, in column order."""
    pivots = []
    col = 0
    n = len(h[0])
    for i, row in enumerate(h):
        if col < n and row[col] != 0:
            pivots.append((i, col))
            col += 1
    return pivots


def solve_integer_linear(
    a: Sequence[Sequence[int]], b: Sequence[int]
) -> Optional[list[int]]:
    """An integer ``x`` with ``a @ x == b``, or ``None`` if there is none."""
    if len(a) != len(b):
        raise ValueError("dimension mismatch between a and b")
    h, u = hnf(a)
    n = len(h[0])
    y = [0] * n
    pivots = dict((r, c) for r, c in hnf_pivots(h))
    for i, row in enumerate(h):
        rest = b[i] - sum(row[c] * y[c] for c in range(n) if y[c])
        if i in pivots:
            c = pivots[i]
            q, r = divmod(rest, row[c])
            if r:
                return None
            y[c] = q
        elif rest:
            return None
    return [sum(u[i][c] * y[c] for c in range(n)) for i in range(n)]


# --------------------------------------------------------------------------
# Exact simplex (integer pivoting, Bland's rule)


def _integer_rows(
    a: Sequence[Sequence], b: Sequence
) -> tuple[list[list[int]], list[int]]:
    rows, rhs = [], []
    for row, bi in zip(a, b):
        vals = [Fraction(x) for x in row] + [Fraction(bi)]
        den = lcm(*(v.denominator for v in vals))
        ints = [int(v * den) for v in vals]
        rows.append(ints[:-1])
        rhs.append(ints[-1])
    return rows, rhs


class _Tableau:
    """Fraction-free simplex tableau.

    The true tableau is ``t / det``; each pivot keeps every entry an integer
    (Bareiss division is exact).  ``det`` is kept positive.
    """

    def __init__(self, rows: list[list[int]], rhs: list[int]):
        m = len(rows)
        self.n = len(rows[0]) if rows else 0
        self.m = m
        t = []
        for i, (row, bi) in enumerate(zip(rows, rhs)):
            if bi < 0:
                row, bi = [-x for x in row], -bi
            t.append(list(row) + [int(i == k) for k in range(m)] + [bi])
        self.flipped = [bi < 0 for bi in rhs]
        width = self.n + m + 1
        obj = [0] * width
        for row in t:
            for k in range(self.n):
                obj[k] -= row[k]
            obj[-1] -= row[-1]
        self.t = t
        self.obj = obj
        self.det = 1
        self.basis = [self.n + i for i in range(m)]
        self.live = [True] * m

    def pivot(self, r: int, c: int) -> None:
        t, d = self.t, self.det
        prow = t[r]
        p = prow[c]
        for i, row in enumerate(t + [self.obj]):
            if i == r:
                continue
            f = row[c]
            if f == 0:
                if p != d:
                    for k in range(len(row)):
                        if row[k]:
                            row[k] = row[k] * p // d
                continue
            for k in range(len(row)):
                row[k] = (row[k] * p - f * prow[k]) // d
        self.det = p
        self.basis[r] = c
        if p < 0:
            for row in t + [self.obj]:
                for k in range(len(row)):
                    row[k] = -row[k]
            self.det = -p

    def run(self, allowed: int) -> bool:
        """Minimise the objective row over columns ``< allowed``.

        Returns False if the problem is unbounded.
        """
        t, obj = self.t, self.obj
        while True:
            c = next((j for j in range(allowed) if obj[j] < 0), None)
            if c is None:
                return True
            best = None
            for i, row in enumerate(t):
                if not self.live[i] or row[c] <= 0:
                    continue
                if best is None:
                    best = i
                    continue
                lhs = row[-1] * t[best][c]
                rhs = t[best][-1] * row[c]
                if lhs < rhs or (lhs == rhs and self.basis[i] < self.basis[best]):
                    best = i
            if best is None:
                return False
            self.pivot(best, c)

    def values(self) -> list[Fraction]:
        x = [Fraction(0)] * (self.n + self.m)
        for i, var in enumerate(self.basis):
            if self.live[i]:
                x[var] = Fraction(self.t[i][-1], self.det)
        return x

    def drive_out_artificials(self) -> None:
        for i, var in enumerate(self.basis):
            if var < self.n or not self.live[i]:
                continue
            row = self.t[i]
            c = next((j for j in range(self.n) if row[j] != 0), None)
            if c is None:
                self.live[i] = False  # redundant equation
            else:
                self.pivot(i, c)

    def farkas(self, rows: list[list[int]], rhs: list[int]) -> Optional[list[Fraction]]:
        """Dual ray ``y`` with ``y@A <= 0`` columnwise and ``y@b > 0``."""
        y = []
        for i in range(self.m):
            yi = 1 - Fraction(self.obj[self.n + i], self.det)
            y.append(-yi if self.flipped[i] else yi)
        for j in range(self.n):
            if sum(yi * row[j] for yi, row in zip(y, rows)) > 0:
                return None
        if sum(yi * bi for yi, bi in zip(y, rhs)) <= 0:
            return None
        return y


class FeasibilityResult(NamedTuple):
    point: Optional[list[Fraction]]
    certificate: Optional[list[Fraction]]


def _phase_one(rows: list[list[int]], rhs: list[int]) -> tuple[_Tableau, bool]:
    tab = _Tableau(rows, rhs)
    tab.run(tab.n)
    feasible = tab.obj[-1] == 0
    return tab, feasible


def feasibility(
    a: Sequence[Sequence], b: Sequence, strict_positive: bool = False
) -> FeasibilityResult:
    """Like :func:`rational_feasible` but also returns a Farkas certificate.

    The certificate (for the non-strict problem only) is a vector ``y`` with
    ``y @ a[:, j] <= 0`` for every column and ``y @ b > 0``.
    """
    if len(a) != len(b):
        raise ValueError("dimension mismatch between a and b")
    rows, rhs = _integer_rows(a, b)
    n = len(a[0]) if a else 0
    if not rows:
        return FeasibilityResult([Fraction(1) if strict_positive else Fraction(0)] * n, None)
    if not strict_positive:
        tab, ok = _phase_one(rows, rhs)
        if not ok:
            return FeasibilityResult(None, tab.farkas(rows, rhs))
        return FeasibilityResult(tab.values()[:n], None)

    # lambda = mu + eps*1, 0 <= eps <= 1; maximise eps
    srows = [row + [sum(row), 0] for row in rows] + [[0] * n + [1, 1]]
    srhs = rhs + [1]
    tab, ok = _phase_one(srows, srhs)
    if not ok:
        return FeasibilityResult(None, None)
    tab.drive_out_artificials()
    nv = n + 2
    obj = [0] * len(tab.obj)
    obj[n] = -tab.det
    for i, var in enumerate(tab.basis):
        if var == n and tab.live[i]:
            row = tab.t[i]
            for k in range(len(obj)):
                obj[k] += row[k]
    tab.obj = obj
    tab.run(nv)
    x = tab.values()
    eps = x[n]
    if eps <= 0:
        return FeasibilityResult(None, None)
    return FeasibilityResult([x[j] + eps for j in range(n)], None)


def rational_feasible(
    a: Sequence[Sequence], b: Sequence, strict_positive: bool = False
) -> Optional[list[Fraction]]:
    """Find ``lam >= 0`` (or ``> 0`` when ``strict_positive``) with ``a @ lam == b``.

    Entries of ``a`` and ``b`` may be ints or Fractions.  Returns ``None`` when
    no such vector exists.
    """
    return feasibility(a, b, strict_positive).point


def primitive(vec: Sequence[Fraction]) -> list[int]:
    """Scale a rational vector to the primitive integer vector on its ray."""
    den = lcm(*(Fraction(v).denominator for v in vec)) if vec else 1
    ints = [int(Fraction(v) * den) for v in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [x // g for x in ints] if g else ints


def rational_nullspace(rows: Sequence[Sequence[int]], n: int) -> list[list[int]]:
    """Integer basis (primitive vectors) of ``{x in Q^n : rows @ x == 0}``."""
    m = [[Fraction(x) for x in r] for r in rows]
    pivcols = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivcols.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivcols]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, c in enumerate(pivcols):
            v[c] = -m[i][f]
        basis.append(primitive(v))
    return basis


class Echelon:
    """Incrementally grown integer row echelon form, for rank tests."""

    def __init__(self):
        self.rows: list[tuple[int, list[int]]] = []  # (pivot column, row)

    def reduce(self, vec: Sequence) -> list[int]:
        v = primitive(vec) if any(isinstance(x, Fraction) for x in vec) else [int(x) for x in vec]
        for c, row in self.rows:
            if v[c]:
                a, b = row[c], v[c]
                v = [a * x - b * y for x, y in zip(v, row)]
                g = 0
                for x in v:
                    g = gcd(g, x)
                if g > 1:
                    v = [x // g for x in v]
        return v

    def add(self, vec: Sequence) -> bool:
        """Append ``vec`` if independent of the rows so far; report whether it was."""
        v = self.reduce(vec)
        c = next((i for i, x in enumerate(v) if x), None)
        if c is None:
            return False
        self.rows.append((c, v))
        return True

    def __len__(self):
        return len(self.rows)


def rank(rows: Sequence[Sequence]) -> int:
    e = Echelon()
    for r in rows:
        e.add(r)
    return len(e)
