import random

import sympy
from hypothesis import given, settings, strategies as st
from sympy.matrices.normalforms import smith_normal_form

from twistfm import linalg


def matrices(max_rows=4, max_cols=4, lo=-6, hi=6):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=m, max_size=m)))


@settings(max_examples=150)
@given(matrices())
def test_column_echelon_is_unimodular_transform(a):
    h, u, _ = linalg.column_echelon(a)
    assert linalg.matmul(a, u) == h
    assert abs(linalg.determinant(u)) == 1


@settings(max_examples=150)
@given(matrices())
def test_kernel_against_sympy_nullity(a):
    ncols = len(a[0])
    ker = linalg.integer_kernel(a, ncols)
    assert len(ker) == ncols - sympy.Matrix(a).rank()
    for v in ker:
        assert linalg.matvec(a, v) == [0] * len(a)
    # integer kernel of an integer matrix is saturated
    if ker:
        assert linalg.is_saturated(ker)


@settings(max_examples=150)
@given(matrices())
def test_determinant_matches_sympy(a):
    n = min(len(a), len(a[0]))
    sq = [row[:n] for row in a[:n]]
    assert linalg.determinant(sq) == sympy.Matrix(sq).det()


@settings(max_examples=100)
@given(matrices())
def test_elementary_divisors_match_sympy_snf(a):
    snf = smith_normal_form(sympy.Matrix(a), domain=sympy.ZZ)
    want = [abs(int(snf[i, i])) for i in range(min(snf.shape)) if snf[i, i] != 0]
    assert linalg.elementary_divisors(a) == want


def test_solve_integer_finds_solution_or_none():
    assert linalg.solve_integer([[2, 4]], [6], 2) is not None
    assert linalg.solve_integer([[2, 4]], [3], 2) is None
    rng = random.Random(0)
    for _ in range(200):
        a = [[rng.randint(-4, 4) for _ in range(3)] for _ in range(2)]
        x = [rng.randint(-3, 3) for _ in range(3)]
        b = linalg.matvec(a, x)
        y = linalg.solve_integer(a, b, 3)
        assert y is not None and linalg.matvec(a, y) == b


def test_rank_and_rational_solve():
    from fractions import Fraction

    a = [[1, 2], [2, 4]]
    assert linalg.rank(a) == 1
    x = linalg.solve_rational([[2, 0], [0, 3]], [1, 1], 2)
    assert x == [Fraction(1, 2), Fraction(1, 3)]


def test_primitive_and_xgcd():
    assert linalg.primitive([4, -6, 8]) == [2, -3, 4]
    g, s, t = linalg.xgcd(12, 18)
    assert g == 6 and 12 * s + 18 * t == 6
