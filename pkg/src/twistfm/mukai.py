"""Mukai lattice of a K3 surface and Picard lattices of moduli of sheaves.

The algebraic Mukai lattice is ``Z ⊕ NS(S) ⊕ Z`` with coordinates
``(r, d_1..d_rho, s)`` and pairing ``-r w_s + d.w_d - s w_r``.  For a
primitive Mukai vector ``v`` the Picard lattice of the moduli space is
``v``-perp inside this lattice.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, Sequence

from . import lattice
from .errors import InputError, InvariantViolation
from .lattice import BilinearLattice, SublatticeBasis, Verdict


@dataclass(frozen=True)
class K3Surface:
    """Néron–Severi lattice of a K3 surface, with names for the basis classes."""

    ns: BilinearLattice
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        if not isinstance(self.ns, BilinearLattice):
            object.__setattr__(self, "ns", BilinearLattice(self.ns))
        if not lattice.is_even(self.ns):
            raise InputError("Néron–Severi lattice of a K3 surface must be even")
        rho = self.ns.rank
        if rho >= 1 and lattice.signature(self.ns) != (1, rho - 1, 0):
            raise InputError(f"Néron–Severi lattice must have signature (1, {rho - 1}), got {tuple(lattice.signature(self.ns))}")
        labels = tuple(self.labels) or tuple(f"D{i + 1}" for i in range(rho))
        if len(labels) != rho:
            raise InputError("one label per Néron–Severi basis class is required")
        object.__setattr__(self, "labels", labels)

    @property
    def rho(self) -> int:
        return self.ns.rank


@dataclass(frozen=True)
class MukaiVector:
    r: int
    d: tuple[int, ...]
    s: int

    def __post_init__(self):
        object.__setattr__(self, "r", lattice._as_int(self.r))
        object.__setattr__(self, "d", lattice.as_vector(self.d))
        object.__setattr__(self, "s", lattice._as_int(self.s))

    @classmethod
    def coerce(cls, v) -> "MukaiVector":
        if isinstance(v, MukaiVector):
            return v
        r, d, s = v
        if isinstance(d, int):
            d = (d,)
        return cls(r, tuple(d), s)

    def coords(self) -> tuple[int, ...]:
        """Coordinates in the extended lattice, ordered ``(r, d..., s)``."""
        return (self.r, *self.d, self.s)

    def __iter__(self):
        return iter((self.r, self.d, self.s))


@dataclass(frozen=True)
class ModuliSpace:
    v: MukaiVector
    dimension: int
    picard: BilinearLattice
    picard_basis: tuple[tuple[int, ...], ...] = field(compare=False)


class PicardVerdict(str, Enum):
    SAME = "same-picard"
    DIFFERENT = "different-picard"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class PicardComparison:
    verdict: PicardVerdict
    method: str
    invariant: tuple[str, object, object] | None = None
    witness: tuple[tuple[int, ...], ...] | None = None


def _check(S: K3Surface, v: MukaiVector) -> MukaiVector:
    v = MukaiVector.coerce(v)
    if len(v.d) != S.rho:
        raise InputError(f"Mukai vector has {len(v.d)} NS coordinates, surface has rho = {S.rho}")
    return v


def mukai_vector_of_sheaf(S: K3Surface, r: int, c1: Sequence[int], c2: int) -> MukaiVector:
    """``(r, c1, r + c1^2/2 - c2)`` for a sheaf of rank ``r`` with Chern classes ``c1``, ``c2``."""
    c1 = lattice.as_vector(c1, S.rho)
    sq = lattice.pair(S.ns, c1, c1)
    if sq % 2:
        raise InvariantViolation(f"c1^2 = {sq} is odd on an even lattice")
    return MukaiVector(r, c1, r + sq // 2 - c2)


def extended_lattice(S: K3Surface) -> BilinearLattice:
    """Algebraic Mukai lattice ``Z ⊕ NS ⊕ Z`` in coordinates ``(r, d..., s)``."""
    n = S.rho + 2
    g = [[0] * n for _ in range(n)]
    g[0][n - 1] = g[n - 1][0] = -1
    for i in range(S.rho):
        for j in range(S.rho):
            g[i + 1][j + 1] = S.ns.gram[i][j]
    return BilinearLattice(g)


def mukai_pairing(S: K3Surface, v, w) -> int:
    v, w = _check(S, v), _check(S, w)
    return -v.r * w.s + lattice.pair(S.ns, v.d, w.d) - v.s * w.r


def moduli_dimension(S: K3Surface, v) -> int:
    """``(v, v) + 2``; may be negative, in which case the moduli space is empty."""
    return mukai_pairing(S, v, v) + 2


def fibration_vector(curve_class: Sequence[int], degree: int) -> MukaiVector:
    """Mukai vector ``(0, C, degree - 1)`` of the degree-``degree`` relative compactified Jacobian."""
    return MukaiVector(0, tuple(curve_class), degree - 1)


def moduli_picard(S: K3Surface, v) -> ModuliSpace:
    """Picard lattice of the moduli space of sheaves with Mukai vector ``v``."""
    v = _check(S, v)
    if S.rho < 1:
        raise InputError("need a Néron–Severi lattice of rank at least 1")
    dim = moduli_dimension(S, v)
    if dim < 0:
        raise InputError(f"(v, v) + 2 = {dim} < 0: the moduli space is empty")
    ext = extended_lattice(S)
    basis = lattice.orthogonal_complement(ext, [v.coords()])
    for b in basis.vectors:
        if lattice.pair(ext, b, v.coords()) != 0:
            raise InvariantViolation(f"basis vector {b} is not orthogonal to v")
    return ModuliSpace(v, dim, lattice.gram_of(ext, basis), basis.vectors)


def basis_check(S: K3Surface, v, vectors: Sequence[Sequence[int]]) -> tuple[bool, BilinearLattice]:
    """Whether ``vectors`` is a basis of ``v``-perp, and their Gram matrix.

    Each vector is given in extended coordinates ``(r, d..., s)``.
    """
    v = _check(S, v)
    ext = extended_lattice(S)
    computed = SublatticeBasis(moduli_picard(S, v).picard_basis, ext)
    given = lattice.span(ext, vectors)
    return lattice.same_sublattice(computed, given), lattice.gram_of(ext, given)


def distinguish(
    S: K3Surface,
    v1,
    v2,
    entry_bound: int = 2,
    reference_bases: Mapping[int, Sequence[Sequence[int]]] | None = None,
    backend: str | None = None,
) -> PicardComparison:
    """Compare the Picard lattices of the moduli spaces for ``v1`` and ``v2``.

    ``reference_bases`` may map ``1`` and/or ``2`` to explicit bases of the
    respective ``v``-perps; when both are valid bases with equal Gram
    matrices the answer is decided without search.
    """
    m1, m2 = moduli_picard(S, v1), moduli_picard(S, v2)
    if m1.picard.rank != m2.picard.rank:
        return PicardComparison(PicardVerdict.DIFFERENT, "rank", ("rank", m1.picard.rank, m2.picard.rank))
    if reference_bases and 1 in reference_bases and 2 in reference_bases:
        ok1, g1 = basis_check(S, v1, reference_bases[1])
        ok2, g2 = basis_check(S, v2, reference_bases[2])
        if ok1 and ok2 and g1 == g2:
            return PicardComparison(PicardVerdict.SAME, "reference-bases")
    res = lattice.congruent(m1.picard, m2.picard, entry_bound, backend=backend)
    if res.verdict is Verdict.YES:
        return PicardComparison(PicardVerdict.SAME, "search", witness=res.witness)
    if res.verdict is Verdict.NO:
        return PicardComparison(PicardVerdict.DIFFERENT, "invariant", res.invariant)
    return PicardComparison(PicardVerdict.INCONCLUSIVE, "search")
