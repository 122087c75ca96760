from fractions import Fraction

import sympy
from hypothesis import given, strategies as st

from otlck import linalg

mats = st.integers(1, 4).flatmap(
    lambda c: st.lists(st.lists(st.integers(-5, 5), min_size=c, max_size=c), min_size=1, max_size=4))


@given(mats)
def test_rank_matches_sympy(m):
    assert linalg.rank(m) == sympy.Matrix(m).rank()


@given(mats)
def test_nullspace_is_kernel(m):
    for v in linalg.nullspace(m):
        assert all(sum(Fraction(a) * b for a, b in zip(row, v)) == 0 for row in m)
    assert len(linalg.nullspace(m)) == len(m[0]) - linalg.rank(m)


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n),
                                                    min_size=n, max_size=n)))
def test_determinant_and_inverse(m):
    d = linalg.determinant(m)
    assert d == Fraction(str(sympy.Matrix(m).det()))
    if d != 0:
        inv = linalg.inverse(m)
        n = len(m)
        for i in range(n):
            for j in range(n):
                assert sum(m[i][k] * inv[k][j] for k in range(n)) == (1 if i == j else 0)


@given(mats, st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_hnf_preserves_integer_span(m, coeffs):
    h = linalg.hnf(m)
    v = [sum(c * row[j] for c, row in zip(coeffs, m)) for j in range(len(m[0]))]
    assert linalg.in_integer_span(v, h)
    assert all(linalg.in_integer_span(row, h) for row in m)
    assert len(h) == linalg.rank(m)


def test_in_integer_span_examples():
    h = linalg.hnf([[1, 1]])
    assert linalg.in_integer_span([2, 2], h)
    assert not linalg.in_integer_span([1, 2], h)
    assert not linalg.in_integer_span([1, 1], linalg.hnf([[2, 2]]))


def test_lll_finds_short_relation():
    # columns: identity | 2^20 * (1, sqrt2 approx, 1 + sqrt2 approx)
    s = 1414214
    basis = [[1, 0, 0, 10 ** 6], [0, 1, 0, s], [0, 0, 1, 10 ** 6 + s]]
    red = linalg.lll(basis)
    assert red[0][:3] in ([1, 1, -1], [-1, -1, 1])
    assert linalg.rank(red) == 3
