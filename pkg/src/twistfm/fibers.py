"""Combinatorial models of the fibres of a genus-two relative compactified Jacobian.

The curves in the linear system come in four types (smooth; one node; one
cusp; two nodes).  Each compactified Jacobian is recorded by its
normalization, the gluing that produces it, and a stratification into
pieces with known Euler characteristic.  That is enough to compute fibre
and total Euler characteristics and to state autoduality and the
degree-shift isomorphism at the level of these invariants.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Mapping, Sequence, Union

from .errors import InputError
from .exact import GaussianRational, to_fraction
from .plane_curves import LinearSystemStratification

Scalar = Union[Fraction, GaussianRational]


class FiberKind(str, Enum):
    SMOOTH = "type1-smooth"
    NODAL = "type2-nodal"
    CUSPIDAL = "type3-cuspidal"
    BINODAL = "type4-binodal"

    @classmethod
    def from_type(cls, curve_type: int) -> "FiberKind":
        return list(cls)[curve_type - 1]

    @property
    def curve_type(self) -> int:
        return list(FiberKind).index(self) + 1


class Normalization(str, Enum):
    ABELIAN_SURFACE = "abelian-surface"
    P1_BUNDLE_OVER_ELLIPTIC = "P1-bundle-over-elliptic"
    P1_X_P1 = "P1xP1"


@dataclass(frozen=True)
class Gluing:
    """How the normalization is glued: ``kind`` plus the cross-ratio for two nodes."""

    kind: str  # none | translation-by-p-minus-q | contract-along-s-infinity | cross-ratio
    cross_ratio: Scalar | None = None


@dataclass(frozen=True)
class FiberModel:
    kind: FiberKind
    normalization: Normalization
    gluing: Gluing
    strata: tuple[tuple[str, int], ...]
    # the shift to any degree is an isomorphism, so degree is not part of equality
    degree: int = field(default=0, compare=False)


@dataclass(frozen=True)
class ProjectivePoint:
    """A point ``(x : y)`` of ``P^1`` over Q or Q(i); infinity is ``(1 : 0)``."""

    x: Scalar
    y: Scalar = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "x", _scalar(self.x))
        object.__setattr__(self, "y", _scalar(self.y))
        if self.x == 0 and self.y == 0:
            raise InputError("(0 : 0) is not a point of P^1")

    @classmethod
    def coerce(cls, p) -> "ProjectivePoint":
        if isinstance(p, ProjectivePoint):
            return p
        if isinstance(p, str) and p.strip().lower() in ("inf", "infinity", "oo", "∞"):
            return INFINITY
        if isinstance(p, (tuple, list)):
            return cls(*p)
        return cls(p)

    def same_as(self, other: "ProjectivePoint") -> bool:
        return _bracket(self, other) == 0


def _scalar(x) -> Scalar:
    if isinstance(x, GaussianRational):
        return x.real if x.imag == 0 else x
    if isinstance(x, str) and "i" in x:
        return _scalar(GaussianRational.coerce(x))
    return to_fraction(x)


INFINITY = ProjectivePoint(Fraction(1), Fraction(0))


def _bracket(p: ProjectivePoint, q: ProjectivePoint) -> Scalar:
    return p.x * q.y - p.y * q.x


def cross_ratio(p1, q1, p2, q2) -> Scalar:
    """``f(p2) / f(q2)`` for ``f(z) = (z - p1) / (z - q1)``, computed homogeneously.

    Equivalently ``[p2 p1][q2 q1] / ([p2 q1][q2 p1])`` with ``[a b]`` the
    2x2 determinant of homogeneous coordinates.
    """
    pts = [ProjectivePoint.coerce(p) for p in (p1, q1, p2, q2)]
    for i in range(4):
        for j in range(i):
            if pts[i].same_as(pts[j]):
                raise InputError("cross-ratio needs four distinct points")
    a, b, c, d = pts
    lam = (_bracket(c, a) * _bracket(d, b)) / (_bracket(c, b) * _bracket(d, a))
    return _scalar(lam)


def _check_lambda(lam) -> Scalar:
    if lam is None:
        raise InputError("a two-node fibre needs its cross-ratio")
    lam = _scalar(lam)
    if lam == 0 or lam == 1:
        raise InputError(f"cross-ratio {lam} is degenerate")
    return lam


def build_fiber_model(kind, cross_ratio_value=None, points: Sequence | None = None) -> FiberModel:
    """Model of the compactified Jacobian of a curve of the given type.

    For the two-node type pass either ``cross_ratio_value`` or the four points
    ``(p1, q1, p2, q2)`` of the normalization that are glued pairwise.
    """
    if isinstance(kind, int):
        kind = FiberKind.from_type(kind)
    kind = FiberKind(kind)
    if kind is FiberKind.SMOOTH:
        return FiberModel(kind, Normalization.ABELIAN_SURFACE, Gluing("none"), (("abelian surface", 0),))
    if kind is FiberKind.NODAL:
        return FiberModel(
            kind,
            Normalization.P1_BUNDLE_OVER_ELLIPTIC,
            Gluing("translation-by-p-minus-q"),
            (("C*-bundle over elliptic curve", 0), ("glued section, elliptic curve", 0)),
        )
    if kind is FiberKind.CUSPIDAL:
        return FiberModel(
            kind,
            Normalization.P1_BUNDLE_OVER_ELLIPTIC,
            Gluing("contract-along-s-infinity"),
            (("affine-line bundle over elliptic curve", 0), ("contracted section, elliptic curve", 0)),
        )
    if points is not None:
        if cross_ratio_value is not None:
            raise InputError("give the cross-ratio or the four points, not both")
        cross_ratio_value = cross_ratio(*points)
    lam = _check_lambda(cross_ratio_value)
    return FiberModel(
        kind,
        Normalization.P1_X_P1,
        Gluing("cross-ratio", lam),
        (("torus C* x C*", 0), ("edge C* (first factor)", 0), ("edge C* (second factor)", 0), ("vertex", 1)),
    )


def standard_fibers(cross_ratio_value=Fraction(1, 2)) -> dict[int, FiberModel]:
    return {t: build_fiber_model(t, cross_ratio_value if t == 4 else None) for t in (1, 2, 3, 4)}


def fiber_euler(m: FiberModel) -> int:
    return sum(chi for _, chi in m.strata)


def type4_cell_euler() -> int:
    """Euler characteristic of the two-node fibre by counting cells of the quotient.

    ``P^1 = {0} ⊔ {∞} ⊔ C*``, so ``P^1 x P^1`` has nine product cells.  The
    gluings identify ``{0} x P^1`` with ``{∞} x P^1`` and ``P^1 x {0}`` with
    ``P^1 x {∞}``; multiplication by the cross-ratio fixes 0 and ∞ and maps
    C* to itself, so it identifies whole cells.  Union-find over cells, then
    sum the Euler characteristic of one representative per class.
    """
    factor = {"0": 1, "inf": 1, "C*": 0}
    cells = [(a, b) for a in factor for b in factor]
    parent = {c: c for c in cells}

    def find(c):
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    for a in factor:
        for x, y in ((("0", a), ("inf", a)), ((a, "0"), (a, "inf"))):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[rx] = ry
    classes = {find(c): c for c in cells}
    return sum(factor[a] * factor[b] for a, b in classes.values())


def type4_inclusion_exclusion_euler() -> int:
    """Same number from χ(P^1 x P^1) minus the two glued-away curves plus their shared point."""
    chi_p1 = 2
    return chi_p1 * chi_p1 - chi_p1 - chi_p1 + 1


def total_euler(strat: LinearSystemStratification, fibers: Mapping[int, FiberModel]) -> int:
    """``sum over types of χ(base stratum) * χ(fibre)``."""
    missing = [s.curve_type for s in strat.strata if s.curve_type not in fibers]
    if missing:
        raise InputError(f"no fibre model for curve types {missing}")
    return sum(s.base_euler * fiber_euler(fibers[s.curve_type]) for s in strat.strata)


def degree_shift(m: FiberModel, d: int) -> FiberModel:
    """Compactified Picard scheme in degree ``+d``; tensoring by a degree-``d`` bundle is an isomorphism."""
    return replace(m, degree=m.degree + d)


def dual_fiber_model(m: FiberModel) -> FiberModel:
    """Compactified Picard scheme of the compactified Jacobian.

    Autoduality for integral curves with planar singularities: the dual is
    isomorphic to the original, with the same gluing (for one node, the same
    translation; for two nodes, the same cross-ratio).
    """
    return replace(m)


def incidence_dimension(base_dim: int, discriminant_dim: int, fiber_dim: int) -> int:
    """Dimension of ``{(m1, m2) : m1, m2 in the same singular fibre}``."""
    if min(base_dim, discriminant_dim, fiber_dim) < 0:
        raise InputError("dimensions must be nonnegative")
    if discriminant_dim > base_dim:
        raise InputError("the discriminant cannot exceed the base in dimension")
    return discriminant_dim + 2 * fiber_dim


def bm_bound_ok(n: int, incidence_dim: int | None = None) -> bool:
    """Check the ``dim <= n + 1`` bound on the locus where the kernel's Ext sheaves jump.

    That locus is the diagonal (dimension ``n``) together with the
    same-singular-fibre incidence.  By default the incidence is that of a
    Lagrangian fibration of a ``n``-fold: base and fibres of dimension
    ``n/2``, discriminant a hypersurface in the base.
    """
    if incidence_dim is None:
        if n % 2:
            raise InputError("a Lagrangian fibration has even total dimension")
        half = n // 2
        incidence_dim = incidence_dimension(half, half - 1, half)
    return max(n, incidence_dim) <= n + 1
