import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from minkidp import exact
from oracles import fm_feasible

small = st.integers(-3, 3)


def matrices(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


def test_hnf_examples():
    h, u = exact.hnf([[2, 4], [1, 3]])
    assert h == [[2, 0], [0, 1]]
    assert exact.matmul([[2, 4], [1, 3]], u) == h


@given(st.integers(1, 4).flatmap(lambda r: st.integers(1, 4).flatmap(lambda c: matrices(r, c))))
def test_hnf_is_unimodular_and_echelon(a):
    if not any(any(row) for row in a):
        return
    h, u = exact.hnf(a)
    assert exact.matmul(a, u) == h
    assert abs(exact.det(u)) == 1
    pivots = exact.hnf_pivots(h)
    cols = [c for _, c in pivots]
    assert cols == list(range(len(cols)))
    for r, c in pivots:
        assert h[r][c] > 0
        assert all(0 <= h[r][j] < h[r][c] for j in range(c))
        assert all(h[i][c] == 0 for i in range(r))
    for c in range(len(cols), len(h[0])):
        assert all(row[c] == 0 for row in h)


def test_det_matches_fraction_elimination():
    rng = random.Random(5)
    for _ in range(50):
        n = rng.randint(1, 4)
        a = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
        m = [[Fraction(x) for x in row] for row in a]
        d = Fraction(1)
        for c in range(n):
            p = next((i for i in range(c, n) if m[i][c]), None)
            if p is None:
                d = Fraction(0)
                break
            if p != c:
                m[c], m[p] = m[p], m[c]
                d = -d
            d *= m[c][c]
            for i in range(c + 1, n):
                f = m[i][c] / m[c][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
        assert exact.det(a) == d


@pytest.mark.parametrize(
    "a,b,expected",
    [([[2]], [4], [2]), ([[2]], [3], None), ([[1, 1], [1, -1]], [2, 0], [1, 1])],
)
def test_solve_integer_examples(a, b, expected):
    assert exact.solve_integer_linear(a, b) == expected


@given(matrices(3, 3), st.lists(small, min_size=3, max_size=3))
def test_solve_integer_agrees_with_box_search(a, b):
    x = exact.solve_integer_linear(a, b)
    if x is not None:
        assert [sum(r * v for r, v in zip(row, x)) for row in a] == b
        return
    box = range(-6, 7)
    for y in itertools.product(box, repeat=3):
        assert [sum(r * v for r, v in zip(row, y)) for row in a] != b


def test_rational_feasible_examples():
    assert exact.rational_feasible([[1, 1]], [1]) in ([1, 0], [0, 1])
    lam = exact.rational_feasible([[1, 1]], [1], strict_positive=True)
    assert sum(lam) == 1 and all(x > 0 for x in lam)
    assert exact.rational_feasible([[1, 0], [0, 1]], [1, -1]) is None


@given(
    st.integers(1, 3).flatmap(
        lambda r: st.integers(1, 4).flatmap(
            lambda c: st.tuples(matrices(r, c), st.lists(small, min_size=r, max_size=r))
        )
    ),
    st.booleans(),
)
def test_rational_feasible_agrees_with_fourier_motzkin(ab, strict):
    a, b = ab
    lam = exact.rational_feasible(a, b, strict_positive=strict)
    assert (lam is not None) == fm_feasible(a, b, strict)
    if lam is not None:
        assert [sum(r * v for r, v in zip(row, lam)) for row in a] == b
        assert all(x > 0 if strict else x >= 0 for x in lam)


@given(st.integers(1, 3).flatmap(lambda r: st.tuples(matrices(r, 4), st.lists(small, min_size=r, max_size=r))))
def test_farkas_certificate(ab):
    a, b = ab
    res = exact.feasibility(a, b)
    if res.point is None:
        y = res.certificate
        assert y is not None
        for j in range(len(a[0])):
            assert sum(y[i] * a[i][j] for i in range(len(a))) <= 0
        assert sum(yi * bi for yi, bi in zip(y, b)) > 0


def test_fractional_inputs():
    a = [[Fraction(1, 2), Fraction(1, 3)]]
    lam = exact.rational_feasible(a, [Fraction(5, 6)])
    assert lam is not None and a[0][0] * lam[0] + a[0][1] * lam[1] == Fraction(5, 6)


def test_rank_and_nullspace():
    assert exact.rank([[1, 2, 3], [2, 4, 6], [1, 0, 1]]) == 2
    basis = exact.rational_nullspace([[1, 2, 3], [2, 4, 6]], 3)
    assert len(basis) == 2
    for v in basis:
        assert v[0] + 2 * v[1] + 3 * v[2] == 0
