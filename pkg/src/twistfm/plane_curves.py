"""Plücker numerics for plane curves with nodes and cusps.

Also the stratification of the linear system ``|C| = P^2`` of a generic
hyperelliptic K3 (double plane branched over a sextic) by the singularity
type of the curves, with the Euler characteristics of the strata.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError

P2_EULER = 3


@dataclass(frozen=True)
class PlaneCurveClass:
    """Numerical type of a plane curve: degree, number of nodes, number of cusps."""

    degree: int
    nodes: int = 0
    cusps: int = 0

    def __post_init__(self):
        if self.degree < 1:
            raise InputError(f"degree must be at least 1, got {self.degree}")
        if self.nodes < 0 or self.cusps < 0:
            raise InputError("node and cusp counts must be nonnegative")
        g = (self.degree - 1) * (self.degree - 2) // 2 - self.nodes - self.cusps
        if g < 0:
            raise InputError(f"{self.nodes} nodes and {self.cusps} cusps exceed the arithmetic genus of a degree {self.degree} curve")

    @property
    def is_smooth(self) -> bool:
        return self.nodes == 0 and self.cusps == 0


@dataclass(frozen=True)
class Stratum:
    curve_type: int
    description: str
    base_dimension: int
    # number of points for 0-dimensional strata, None for positive-dimensional ones
    count: int | None
    base_euler: int


@dataclass(frozen=True)
class LinearSystemStratification:
    strata: tuple[Stratum, ...]

    def __post_init__(self):
        types = [s.curve_type for s in self.strata]
        if sorted(types) != [1, 2, 3, 4]:
            raise InputError(f"expected one stratum per curve type 1..4, got {types}")

    def by_type(self, curve_type: int) -> Stratum:
        return next(s for s in self.strata if s.curve_type == curve_type)

    @property
    def euler(self) -> int:
        return sum(s.base_euler for s in self.strata)


def _need_dual(c: PlaneCurveClass):
    if c.degree < 2:
        raise InputError("lines have no dual curve")


def dual_degree(c: PlaneCurveClass) -> int:
    """Class of the curve: ``d(d-1) - 2 nodes - 3 cusps``."""
    _need_dual(c)
    return c.degree * (c.degree - 1) - 2 * c.nodes - 3 * c.cusps


def dual_cusps(c: PlaneCurveClass) -> int:
    """Number of flexes, ``3d(d-2) - 6 nodes - 8 cusps`` (cusps of the dual curve)."""
    _need_dual(c)
    k = 3 * c.degree * (c.degree - 2) - 6 * c.nodes - 8 * c.cusps
    if k < 0:
        raise InputError(f"inconsistent singularity data: flex count {k} < 0")
    return k


def dual_nodes(c: PlaneCurveClass) -> int:
    """Number of bitangents of a smooth curve, ``d(d-2)(d^2-9)/2``."""
    _need_dual(c)
    if not c.is_smooth:
        raise InputError("bitangent count is only supported for smooth curves")
    d = c.degree
    return d * (d - 2) * (d * d - 9) // 2


def dual_curve(c: PlaneCurveClass) -> PlaneCurveClass:
    """Numerical type of the dual of a smooth curve."""
    return PlaneCurveClass(dual_degree(c), dual_nodes(c), dual_cusps(c))


def geometric_genus(c: PlaneCurveClass) -> int:
    return (c.degree - 1) * (c.degree - 2) // 2 - c.nodes - c.cusps


def nodal_curve_euler(c: PlaneCurveClass) -> int:
    """Topological Euler characteristic of the image curve.

    Normalization is 2:1 over each node and bijective over each cusp, so
    only nodes correct the Euler characteristic of the normalization.
    """
    return 2 - 2 * geometric_genus(c) - c.nodes


def branch_genus_check(branch_points: int) -> int:
    """Genus of a double cover of ``P^1`` branched at ``branch_points`` points."""
    if branch_points < 0 or branch_points % 2:
        raise InputError(f"branch point count must be even and nonnegative, got {branch_points}")
    # 2g - 2 = 2(-2) + b
    return (branch_points - 2) // 2


def stratify_sextic(branch: PlaneCurveClass = PlaneCurveClass(6)) -> LinearSystemStratification:
    """Stratify ``|C|`` by the type of curve, for a generic smooth branch curve.

    Type 4 (two nodes) lies over the nodes of the dual curve, type 3 (a cusp)
    over its cusps, type 2 (one node) over the rest of the dual curve, and
    type 1 (smooth) over its complement.  The branch curve must have no
    tritangents, which holds generically.
    """
    if not branch.is_smooth:
        raise InputError("the branch curve must be smooth")
    dual = dual_curve(branch)
    chi_dual = nodal_curve_euler(dual)
    nodes, cusps = dual.nodes, dual.cusps
    genus = branch_genus_check(branch.degree)
    return LinearSystemStratification((
        Stratum(1, f"smooth genus {genus}", 2, None, P2_EULER - chi_dual),
        Stratum(2, f"genus {genus - 1}, one node", 1, None, chi_dual - cusps - nodes),
        Stratum(3, f"genus {genus - 1}, one cusp", 0, cusps, cusps),
        Stratum(4, f"genus {genus - 2}, two nodes", 0, nodes, nodes),
    ))
