import itertools
import random

import pytest

from twistfm import kernels, linalg
from twistfm import _kernels_py as py

compiled = pytest.mark.skipif("cython" not in kernels.available_backends(), reason="extension not built")


def brute_congruence(g1, g2, bound):
    n = len(g1)
    for flat in itertools.product(range(-bound, bound + 1), repeat=n * n):
        u = [list(flat[i * n:(i + 1) * n]) for i in range(n)]
        if abs(linalg.determinant(u)) == 1 and linalg.matmul(linalg.matmul(linalg.transpose(u), g1), u) == g2:
            return True
    return False


def test_python_search_agrees_with_brute_force():
    rng = random.Random(11)
    for _ in range(40):
        g1 = [[rng.randint(-2, 2) for _ in range(2)] for _ in range(2)]
        g1[1][0] = g1[0][1]
        g2 = [[rng.randint(-2, 2) for _ in range(2)] for _ in range(2)]
        g2[1][0] = g2[0][1]
        got = py.congruence_search(g1, g2, 1)
        assert (got is not None) == brute_congruence(g1, g2, 1)


def test_slack_search_first_lexicographic():
    rows, rhs = [[1, 1, 0], [0, 1, 1]], [1, 1]
    want = next(list(x) for x in itertools.product(range(-2, 3), repeat=3)
                if [sum(a * b for a, b in zip(r, x)) for r in rows] == rhs)
    assert py.slack_search(rows, rhs, 2, 3) == want


@compiled
def test_backends_return_identical_witnesses():
    rng = random.Random(5)
    for _ in range(60):
        n = rng.randint(1, 3)
        g1 = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                g1[i][j] = g1[j][i] = rng.randint(-3, 3)
        u = linalg.identity(n)
        if n > 1:
            u[0][n - 1] = rng.randint(-1, 1)
        g2 = linalg.matmul(linalg.matmul(linalg.transpose(u), g1), u)
        assert (kernels.congruence_search(g1, g2, 2, backend="python")
                == kernels.congruence_search(g1, g2, 2, backend="cython"))


@compiled
def test_backends_agree_on_slack_search():
    rng = random.Random(9)
    for _ in range(100):
        m, n = rng.randint(1, 3), rng.randint(1, 4)
        rows = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(m)]
        rhs = [rng.randint(-3, 3) for _ in range(m)]
        assert (kernels.slack_search(rows, rhs, 2, n, backend="python")
                == kernels.slack_search(rows, rhs, 2, n, backend="cython"))


@compiled
def test_overflow_guard():
    huge = [[1 << 61]]
    with pytest.raises(OverflowError):
        kernels.congruence_search(huge, huge, 2, backend="cython")
    # the dispatcher silently falls back
    assert kernels.congruence_search(huge, huge, 1) is not None


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.slack_search([[1]], [1], 1, 1, backend="fortran")
