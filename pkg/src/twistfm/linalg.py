"""Exact linear algebra over Z and Q on plain list-of-lists matrices.

Everything here works with Python ints and :class:`fractions.Fraction`,
so results are exact regardless of entry size.  Matrices are row-major
``list[list[int]]``; vectors are ``list[int]``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = list[list[int]]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``a*x + b*y == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(a: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    if not a:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*a)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    bt = list(zip(*b)) if b else []
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def dot(u: Sequence, v: Sequence):
    return sum(x * y for x, y in zip(u, v))


def column_echelon(a: Sequence[Sequence[int]], ncols: int | None = None):
    """Unimodular column reduction ``A @ U == H``.

    ``H`` is in column echelon form: its first ``rank`` columns carry strictly
    increasing pivot rows with positive pivots, the remaining columns are zero.
    Returns ``(H, U, pivot_rows)``.  The trailing ``n - rank`` columns of ``U``
    are a basis of the integer kernel of ``A``; that basis is saturated because
    ``U`` is unimodular.
    """
    m = len(a)
    n = len(a[0]) if m else (ncols or 0)
    h = [list(map(int, row)) for row in a]
    u = identity(n)
    pivots: list[int] = []
    c = 0

    def colop(j, k, x, y, z, w):
        # (col_j, col_k) <- (x*col_j + y*col_k, z*col_j + w*col_k)
        for mat in (h, u):
            for row in mat:
                rj, rk = row[j], row[k]
                row[j] = x * rj + y * rk
                row[k] = z * rj + w * rk

    for i in range(m):
        if c >= n:
            break
        for j in range(c + 1, n):
            b = h[i][j]
            if b == 0:
                continue
            a0 = h[i][c]
            g, x, y = xgcd(a0, b)
            colop(c, j, x, y, -b // g, a0 // g)
        if h[i][c] == 0:
            continue
        if h[i][c] < 0:
            for mat in (h, u):
                for row in mat:
                    row[c] = -row[c]
        # reduce earlier pivot columns modulo this pivot (canonical form)
        p = h[i][c]
        for j in range(c):
            q = h[i][j] // p
            if q:
                for mat in (h, u):
                    for row in mat:
                        row[j] -= q * row[c]
        pivots.append(i)
        c += 1
    return h, u, pivots


def integer_kernel(a: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    """Saturated basis (list of vectors) of ``{x in Z^n : A x = 0}``."""
    n = len(a[0]) if a else (ncols or 0)
    if not a:
        return identity(n)
    _, u, pivots = column_echelon(a)
    r = len(pivots)
    return [[u[row][col] for row in range(n)] for col in range(r, n)]


def solve_integer(a: Sequence[Sequence[int]], b: Sequence[int], ncols: int | None = None):
    """One integer solution ``x`` of ``A x = b``, or ``None`` if there is none."""
    m = len(a)
    n = len(a[0]) if m else (ncols or 0)
    if m == 0:
        return [0] * n
    h, u, pivots = column_echelon(a)
    y = [0] * n
    residual = list(map(int, b))
    for k, row in enumerate(pivots):
        num = residual[row]
        if num % h[row][k]:
            return None
        y[k] = num // h[row][k]
        if y[k]:
            for i in range(m):
                residual[i] -= h[i][k] * y[k]
    if any(residual):
        return None
    return matvec(u, y)


def rref(a: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form over Q; returns ``(R, pivot_columns)``."""
    m = [[Fraction(x) for x in row] for row in a]
    n = len(m[0]) if m else (ncols or 0)
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(a: Sequence[Sequence]) -> int:
    return len(rref(a)[1]) if a else 0


def solve_rational(a: Sequence[Sequence], b: Sequence, ncols: int | None = None):
    """One rational solution of ``A x = b`` (free variables set to 0), or ``None``."""
    n = len(a[0]) if a else (ncols or 0)
    if not a:
        return [Fraction(0)] * n
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    r, pivots = rref(aug, n + 1)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = r[i][n]
    return x


def determinant(a: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free elimination; exact for integer input."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(map(int, row)) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            p = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if p is None:
                return 0
            m[k], m[p] = m[p], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def elementary_divisors(a: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero diagonal entries of the Smith normal form, in divisibility order."""
    m = [list(map(int, row)) for row in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    out = []
    t = 0
    while t < min(rows, cols):
        nz = [(abs(m[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if m[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        m[t], m[pi] = m[pi], m[t]
        for row in m:
            row[t], row[pj] = row[pj], row[t]
        while True:
            changed = False
            piv = m[t][t]
            for i in range(t + 1, rows):
                if m[i][t]:
                    q = m[i][t] // piv
                    m[i] = [x - q * y for x, y in zip(m[i], m[t])]
                    if m[i][t]:
                        m[t], m[i] = m[i], m[t]
                        changed = True
                        break
            if changed:
                continue
            piv = m[t][t]
            for j in range(t + 1, cols):
                if m[t][j]:
                    q = m[t][j] // piv
                    for row in m:
                        row[j] -= q * row[t]
                    if m[t][j]:
                        for row in m:
                            row[t], row[j] = row[j], row[t]
                        changed = True
                        break
            if changed:
                continue
            piv = m[t][t]
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if m[i][j] % piv),
                None,
            )
            if bad is None:
                break
            m[t] = [x + y for x, y in zip(m[t], m[bad])]
        out.append(abs(m[t][t]))
        t += 1
    return out


def saturate(vectors: Sequence[Sequence[int]], n: int) -> Matrix:
    """Basis of ``span_Q(vectors) ∩ Z^n``."""
    if not vectors:
        return []
    perp = integer_kernel([list(v) for v in vectors], n)
    if not perp:
        return identity(n)
    return integer_kernel(perp, n)


def is_saturated(vectors: Sequence[Sequence[int]]) -> bool:
    """True iff the rows are independent and span a primitive sublattice."""
    if not vectors:
        return True
    divs = elementary_divisors(vectors)
    return len(divs) == len(vectors) and all(d == 1 for d in divs)


def primitive(v: Sequence[int]) -> list[int]:
    g = 0
    for x in v:
        g = gcd(g, x)
    return [x // g for x in v] if g > 1 else list(v)
