"""Pure-Python search kernels.

These are the reference implementations; ``_kernels.pyx`` mirrors them
line for line and must return identical results (same enumeration order).
"""

from itertools import product

from .linalg import determinant


def congruence_search(g1, g2, bound):
    """First integer ``U`` (entries in ``[-bound, bound]``) with ``U^T g1 U == g2``.

    Columns of ``U`` are chosen left to right, each column ranging over the box
    in lexicographic order; a column is rejected as soon as one of its
    pairings with earlier columns disagrees with ``g2``.  Only ``det U = ±1``
    solutions are accepted.  Returns ``U`` row-major, or ``None``.
    """
    n = len(g1)
    if n == 0:
        return []
    box = list(product(range(-bound, bound + 1), repeat=n))
    images = [[sum(g1[i][j] * v[j] for j in range(n)) for i in range(n)] for v in box]
    norms = [sum(a * b for a, b in zip(v, w)) for v, w in zip(box, images)]
    cands = [[idx for idx, q in enumerate(norms) if q == g2[k][k]] for k in range(n)]

    chosen = [0] * n
    pos = [0] * n
    k = 0
    while k >= 0:
        if k == n:
            cols = [box[c] for c in chosen]
            u = [[cols[j][i] for j in range(n)] for i in range(n)]
            if determinant(u) in (1, -1):
                return u
            k -= 1
            pos[k] += 1
            continue
        found = False
        ck = cands[k]
        while pos[k] < len(ck):
            v = box[ck[pos[k]]]
            ok = True
            for i in range(k):
                w = images[chosen[i]]
                if sum(a * b for a, b in zip(w, v)) != g2[i][k]:
                    ok = False
                    break
            if ok:
                chosen[k] = ck[pos[k]]
                found = True
                break
            pos[k] += 1
        if found:
            k += 1
            if k < n:
                pos[k] = 0
        else:
            k -= 1
            if k >= 0:
                pos[k] += 1
    return None


def slack_search(rows, rhs, bound, length):
    """First ``x`` in ``[-bound, bound]^length`` (lexicographic) with ``rows @ x == rhs``."""
    for x in product(range(-bound, bound + 1), repeat=length):
        if all(sum(a * b for a, b in zip(row, x)) == t for row, t in zip(rows, rhs)):
            return list(x)
    return None
