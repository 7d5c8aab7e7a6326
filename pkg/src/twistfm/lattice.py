"""Integral lattices with a symmetric bilinear form.

A lattice is ``Z^n`` with an integer Gram matrix.  Everything is computed
with Python integers and fractions; no floating point is involved.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import NamedTuple, Sequence

from . import kernels, linalg
from .errors import InputError, InvariantViolation

Vector = tuple[int, ...]


def _as_int(x) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        if isinstance(x, Fraction) and x.denominator == 1:
            return int(x)
        raise InputError(f"expected an integer, got {x!r}")
    return x


def as_vector(coords: Sequence[int], rank: int | None = None) -> Vector:
    v = tuple(_as_int(c) for c in coords)
    if rank is not None and len(v) != rank:
        raise InputError(f"vector {v} has length {len(v)}, lattice rank is {rank}")
    return v


@dataclass(frozen=True)
class BilinearLattice:
    """``Z^rank`` with the symmetric bilinear form given by ``gram``."""

    gram: tuple[tuple[int, ...], ...]

    def __init__(self, gram: Sequence[Sequence[int]]):
        rows = tuple(tuple(_as_int(x) for x in row) for row in gram)
        n = len(rows)
        for i, row in enumerate(rows):
            if len(row) != n:
                raise InputError(f"Gram matrix is not square (row {i} has {len(row)} entries, expected {n})")
        for i in range(n):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise InputError(f"Gram matrix is not symmetric at ({i}, {j})")
        object.__setattr__(self, "gram", rows)

    @property
    def rank(self) -> int:
        return len(self.gram)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.gram]


@dataclass(frozen=True)
class SublatticeBasis:
    """A basis of a saturated sublattice of ``ambient``."""

    vectors: tuple[Vector, ...]
    ambient: BilinearLattice = field(compare=False)

    @property
    def rank(self) -> int:
        return len(self.vectors)

    def __contains__(self, x) -> bool:
        return contains(self, x)


class Signature(NamedTuple):
    positive: int
    negative: int
    null: int


class Verdict(str, Enum):
    YES = "yes"
    NO = "no"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class CongruenceResult:
    verdict: Verdict
    witness: tuple[tuple[int, ...], ...] | None = None
    # (name, value for first form, value for second form)
    invariant: tuple[str, object, object] | None = None

    def __bool__(self):
        return self.verdict is Verdict.YES


def pair(L: BilinearLattice, x: Sequence[int], y: Sequence[int]) -> int:
    """``x^T G y``."""
    x = as_vector(x, L.rank)
    y = as_vector(y, L.rank)
    return sum(xi * gij * yj for xi, row in zip(x, L.gram) for gij, yj in zip(row, y))


def orthogonal_complement(L: BilinearLattice, vs: Sequence[Sequence[int]]) -> SublatticeBasis:
    """Saturated basis of ``{x : pair(L, x, v) = 0 for all v in vs}``.

    The pairing map is reduced by unimodular column operations; the trailing
    columns of the transform form the kernel.  The result is in row Hermite
    form so equal lattices come back with equal bases.
    """
    vs = [as_vector(v, L.rank) for v in vs]
    n = L.rank
    if not vs:
        return SublatticeBasis(tuple(tuple(r) for r in linalg.identity(n)), L)
    rows = [linalg.matvec(L.gram, v) for v in vs]
    basis = linalg.integer_kernel(rows, n)
    if not linalg.is_saturated(basis):
        basis = linalg.saturate(basis, n)
    basis = hermite_rows(basis, n)
    if not linalg.is_saturated(basis):
        raise InvariantViolation("orthogonal complement basis is not saturated")
    return SublatticeBasis(tuple(tuple(b) for b in basis), L)


def hermite_rows(vectors: Sequence[Sequence[int]], n: int) -> list[list[int]]:
    """Row Hermite normal form of the lattice spanned by ``vectors`` (nonzero rows only)."""
    if not vectors:
        return []
    h, _, pivots = linalg.column_echelon(linalg.transpose(vectors))
    return [[h[i][k] for i in range(n)] for k in range(len(pivots))]


def contains(B: SublatticeBasis, x: Sequence[int]) -> bool:
    """Is ``x`` an integer combination of the basis vectors?"""
    x = as_vector(x, B.ambient.rank)
    if not B.vectors:
        return not any(x)
    return linalg.solve_integer(linalg.transpose(B.vectors), list(x)) is not None


def span(L: BilinearLattice, vectors: Sequence[Sequence[int]]) -> SublatticeBasis:
    """Wrap explicit vectors as a basis; raises unless they are independent."""
    vecs = tuple(as_vector(v, L.rank) for v in vectors)
    if linalg.rank(vecs) != len(vecs):
        raise InputError("basis vectors are linearly dependent")
    return SublatticeBasis(vecs, L)


def gram_of(L: BilinearLattice, B: SublatticeBasis | Sequence[Sequence[int]]) -> BilinearLattice:
    vecs = B.vectors if isinstance(B, SublatticeBasis) else [as_vector(v, L.rank) for v in B]
    return BilinearLattice([[pair(L, u, v) for v in vecs] for u in vecs])


def same_sublattice(B1: SublatticeBasis, B2: SublatticeBasis) -> bool:
    return (
        B1.rank == B2.rank
        and all(contains(B2, v) for v in B1.vectors)
        and all(contains(B1, v) for v in B2.vectors)
    )


def determinant(L: BilinearLattice) -> int:
    return linalg.determinant(L.gram)


def is_unimodular(L: BilinearLattice) -> bool:
    return abs(determinant(L)) == 1


def is_even(L: BilinearLattice) -> bool:
    # x.x = sum g_ii x_i^2 mod 2, so the diagonal decides parity
    return all(L.gram[i][i] % 2 == 0 for i in range(L.rank))


def signature(L: BilinearLattice) -> Signature:
    """Inertia by symmetric Gaussian elimination over Q."""
    m = [[Fraction(x) for x in row] for row in L.gram]
    pos = neg = 0
    while m:
        n = len(m)
        k = next((i for i in range(n) if m[i][i] != 0), None)
        if k is None:
            off = next(((i, j) for i in range(n) for j in range(i + 1, n) if m[i][j] != 0), None)
            if off is None:
                break
            i, j = off
            # x_i -> x_i + x_j makes the (i, i) entry 2 m_ij
            for r in range(n):
                m[r][i] += m[r][j]
            for c in range(n):
                m[i][c] += m[j][c]
            k = i
        p = m[k][k]
        if p > 0:
            pos += 1
        else:
            neg += 1
        rest = [r for r in range(n) if r != k]
        m = [[m[r][c] - m[r][k] * m[k][c] / p for c in rest] for r in rest]
    return Signature(pos, neg, L.rank - pos - neg)


def congruent(
    G1: BilinearLattice, G2: BilinearLattice, entry_bound: int = 2, backend: str | None = None
) -> CongruenceResult:
    """Decide ``U^T G1 U = G2`` for some ``U`` in ``GL_n(Z)``, as far as cheaply possible.

    Differing determinant, signature or parity proves non-congruence.  If
    those agree, matrices ``U`` with entries in ``[-entry_bound, entry_bound]``
    are searched; exhausting the box gives ``INCONCLUSIVE``.
    """
    if G1.rank != G2.rank:
        raise InputError(f"rank mismatch: {G1.rank} vs {G2.rank}")
    if entry_bound < 1:
        raise InputError("entry_bound must be positive")
    n = G1.rank
    if G1.gram == G2.gram:
        return CongruenceResult(Verdict.YES, witness=tuple(tuple(r) for r in linalg.identity(n)))
    d1, d2 = determinant(G1), determinant(G2)
    if d1 != d2:
        return CongruenceResult(Verdict.NO, invariant=("determinant", d1, d2))
    s1, s2 = signature(G1), signature(G2)
    if s1 != s2:
        return CongruenceResult(Verdict.NO, invariant=("signature", tuple(s1), tuple(s2)))
    e1, e2 = is_even(G1), is_even(G2)
    if e1 != e2:
        parity = {True: "even", False: "odd"}
        return CongruenceResult(Verdict.NO, invariant=("parity", parity[e1], parity[e2]))
    u = kernels.congruence_search(G1.gram, G2.gram, entry_bound, backend=backend)
    if u is None:
        return CongruenceResult(Verdict.INCONCLUSIVE)
    if linalg.matmul(linalg.matmul(linalg.transpose(u), G1.gram), u) != [list(r) for r in G2.gram]:
        raise InvariantViolation("congruence witness does not transform G1 into G2")
    return CongruenceResult(Verdict.YES, witness=tuple(tuple(r) for r in u))
