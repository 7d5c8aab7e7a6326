"""Čech cochains on the nerve of a finite cover, with exact constant coefficients.

Coefficient groups are ``Z``, ``Q(i)`` and ``Q(i)/Z``; the last stands in for
the multiplicative group via ``z -> exp(2 pi i z)``, so the exponential
sequence ``0 -> Z -> Q(i) -> Q(i)/Z -> 0`` is exact and every equality is
decidable.  Notation is additive throughout: a gerbe is a 2-cocycle, the
product ``phi_ki phi_jk phi_ij`` of gluing maps is the coboundary ``δphi``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from . import kernels, linalg
from .errors import InputError
from .exact import GaussianRational, to_fraction
from .lattice import Verdict

Simplex = tuple[int, ...]


# ---------------------------------------------------------------- groups


@dataclass(frozen=True)
class CoefficientGroup:
    kind: str

    def zero(self):
        raise NotImplementedError

    def coerce(self, x):
        raise NotImplementedError

    def add(self, a, b):
        return self.coerce(a + b)

    def neg(self, a):
        return self.coerce(-a)

    def scale(self, a, k):
        return self.coerce(a * k)

    def is_zero(self, a) -> bool:
        return self.coerce(a) == self.zero()


@dataclass(frozen=True)
class Integers(CoefficientGroup):
    kind: str = "Integers"

    def zero(self):
        return 0

    def coerce(self, x):
        if isinstance(x, GaussianRational):
            if x.imag != 0 or x.real.denominator != 1:
                raise InputError(f"{x} is not an integer")
            return int(x.real)
        f = to_fraction(x)
        if f.denominator != 1:
            raise InputError(f"{x} is not an integer")
        return int(f)


@dataclass(frozen=True)
class GaussianRationals(CoefficientGroup):
    kind: str = "GaussianRationals"

    def zero(self):
        return GaussianRational()

    def coerce(self, x):
        return GaussianRational.coerce(x)


@dataclass(frozen=True)
class GaussianRationalsModIntegers(CoefficientGroup):
    """``Q(i)/Z``: representatives have real part in ``[0, 1)``."""

    kind: str = "GaussianRationalsModIntegers"

    def zero(self):
        return GaussianRational()

    def coerce(self, x):
        z = GaussianRational.coerce(x)
        re = z.real - math.floor(z.real)
        return z if re == z.real else GaussianRational(re, z.imag)


@dataclass(frozen=True)
class Product(CoefficientGroup):
    first: CoefficientGroup = None
    second: CoefficientGroup = None
    kind: str = "Product"

    def zero(self):
        return (self.first.zero(), self.second.zero())

    def coerce(self, x):
        a, b = x
        return (self.first.coerce(a), self.second.coerce(b))

    def add(self, a, b):
        return (self.first.add(a[0], b[0]), self.second.add(a[1], b[1]))

    def neg(self, a):
        return (self.first.neg(a[0]), self.second.neg(a[1]))

    def scale(self, a, k):
        return (self.first.scale(a[0], k), self.second.scale(a[1], k))


ZZ = Integers()
QI = GaussianRationals()
QI_MOD_Z = GaussianRationalsModIntegers()


def group_from_name(name: str, first: str | None = None, second: str | None = None) -> CoefficientGroup:
    table = {"Integers": ZZ, "GaussianRationals": QI, "GaussianRationalsModIntegers": QI_MOD_Z}
    if name == "Product":
        return Product(first=group_from_name(first), second=group_from_name(second))
    if name not in table:
        raise InputError(f"unknown coefficient group {name!r}")
    return table[name]


# ---------------------------------------------------------------- nerves


@dataclass(frozen=True)
class CoverNerve:
    """Nerve of a finite open cover.

    ``simplices[n]`` lists the increasing ``(n+1)``-tuples of open indices
    whose intersection is nonempty.  The list is closed under faces.
    """

    opens: tuple[str, ...]
    simplices: tuple[tuple[Simplex, ...], ...]

    def __post_init__(self):
        n_opens = len(self.opens)
        simp = tuple(tuple(sorted(set(tuple(s) for s in layer))) for layer in self.simplices)
        while simp and not simp[-1]:
            simp = simp[:-1]
        object.__setattr__(self, "simplices", simp)
        if n_opens and (not simp or simp[0] != tuple((i,) for i in range(n_opens))):
            raise InputError("the 0-simplices must be exactly the opens")
        present = set(itertools.chain.from_iterable(simp))
        for n, layer in enumerate(simp):
            for s in layer:
                if len(s) != n + 1 or list(s) != sorted(set(s)) or s[0] < 0 or s[-1] >= n_opens:
                    raise InputError(f"{s} is not an increasing {n + 1}-tuple of open indices")
                if n and any(face not in present for face in faces(s)):
                    raise InputError(f"nerve is not closed under faces at {s}")

    @classmethod
    def from_maximal(cls, n_opens_or_labels, maximal: Iterable[Sequence[int]]) -> "CoverNerve":
        """Nerve generated by the given overlaps (all their faces are added)."""
        if isinstance(n_opens_or_labels, int):
            labels = tuple(f"U{i}" for i in range(n_opens_or_labels))
        else:
            labels = tuple(n_opens_or_labels)
        layers: dict[int, set] = {0: {(i,) for i in range(len(labels))}}
        for s in maximal:
            s = tuple(sorted(set(s)))
            for k in range(1, len(s) + 1):
                for sub in itertools.combinations(s, k):
                    layers.setdefault(k - 1, set()).add(sub)
        top = max(layers)
        return cls(labels, tuple(tuple(sorted(layers.get(n, ()))) for n in range(top + 1)))

    @property
    def dimension(self) -> int:
        return len(self.simplices) - 1

    def of_degree(self, n: int) -> tuple[Simplex, ...]:
        return self.simplices[n] if 0 <= n < len(self.simplices) else ()

    def relabel(self, perm: Sequence[int]) -> "CoverNerve":
        """Nerve after renaming open ``i`` to ``perm[i]``."""
        _check_perm(perm, len(self.opens))
        labels = [None] * len(self.opens)
        for i, p in enumerate(perm):
            labels[p] = self.opens[i]
        return CoverNerve(
            tuple(labels),
            tuple(tuple(tuple(sorted(perm[i] for i in s)) for s in layer) for layer in self.simplices),
        )


def faces(s: Simplex) -> list[Simplex]:
    """``[∂_0 s, ∂_1 s, ...]``: ``∂_k`` drops the k-th vertex."""
    return [s[:k] + s[k + 1:] for k in range(len(s))]


def _check_perm(perm, n):
    if sorted(perm) != list(range(n)):
        raise InputError(f"{perm} is not a permutation of 0..{n - 1}")


def full_simplex(n_opens: int) -> CoverNerve:
    """Every collection of opens overlaps."""
    return CoverNerve.from_maximal(n_opens, [range(n_opens)])


def simplex_boundary(k: int) -> CoverNerve:
    """Boundary of the ``k``-simplex: ``k+1`` opens, all proper overlaps, no total one."""
    return CoverNerve.from_maximal(k + 1, itertools.combinations(range(k + 1), k))


def triangle_boundary() -> CoverNerve:
    """Three opens, pairwise overlaps, no triple overlap: a circle."""
    return simplex_boundary(2)


def tetrahedron_boundary() -> CoverNerve:
    """Four opens, all pairwise and triple overlaps, no quadruple one: a 2-sphere."""
    return simplex_boundary(3)


def projective_plane_nerve() -> CoverNerve:
    """Six-vertex triangulation of the real projective plane."""
    tris = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5),
            (1, 2, 4), (2, 3, 5), (1, 3, 4), (2, 4, 5), (1, 3, 5)]
    return CoverNerve.from_maximal(6, tris)


# ---------------------------------------------------------------- cochains


class Cochain:
    """A degree-``n`` cochain: one group element per ``n``-simplex of the nerve."""

    __slots__ = ("nerve", "degree", "group", "values")

    def __init__(self, nerve: CoverNerve, degree: int, group: CoefficientGroup,
                 values: Mapping[Simplex, object] | None = None):
        if degree < 0:
            raise InputError("cochain degree must be nonnegative")
        simplices = nerve.of_degree(degree)
        values = {tuple(k): v for k, v in (values or {}).items()}
        extra = set(values) - set(simplices)
        if extra:
            raise InputError(f"values given on {sorted(extra)}, which are not {degree}-simplices of the nerve")
        self.nerve = nerve
        self.degree = degree
        self.group = group
        self.values = {s: group.coerce(values[s]) if s in values else group.zero() for s in simplices}

    def __getitem__(self, s: Sequence[int]):
        return self.values[tuple(s)]

    def __repr__(self):
        vals = ", ".join(f"{s}: {v}" for s, v in self.values.items())
        return f"Cochain(degree={self.degree}, group={self.group.kind}, {{{vals}}})"

    def _compatible(self, other: "Cochain"):
        if self.nerve != other.nerve or self.degree != other.degree or self.group != other.group:
            raise InputError("cochains live on different nerves, degrees or groups")

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return (self.nerve, self.degree, self.group, self.values) == (
            other.nerve, other.degree, other.group, other.values)

    __hash__ = None

    def __add__(self, other: "Cochain") -> "Cochain":
        self._compatible(other)
        g = self.group
        return Cochain(self.nerve, self.degree, g, {s: g.add(v, other.values[s]) for s, v in self.values.items()})

    def __neg__(self) -> "Cochain":
        g = self.group
        return Cochain(self.nerve, self.degree, g, {s: g.neg(v) for s, v in self.values.items()})

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + (-other)

    def scale(self, k) -> "Cochain":
        g = self.group
        return Cochain(self.nerve, self.degree, g, {s: g.scale(v, k) for s, v in self.values.items()})

    def is_zero(self) -> bool:
        return all(self.group.is_zero(v) for v in self.values.values())

    def map(self, group: CoefficientGroup, fn: Callable = lambda v: v) -> "Cochain":
        return Cochain(self.nerve, self.degree, group, {s: fn(v) for s, v in self.values.items()})

    def relabel(self, perm: Sequence[int]) -> "Cochain":
        """Transport along the renaming ``i -> perm[i]``, with the alternating sign."""
        nerve = self.nerve.relabel(perm)
        g = self.group
        out = {}
        for s, v in self.values.items():
            image = [perm[i] for i in s]
            out[tuple(sorted(image))] = v if _parity(image) == 0 else g.neg(v)
        return Cochain(nerve, self.degree, g, out)


def _parity(seq: Sequence[int]) -> int:
    inv = sum(1 for a, b in itertools.combinations(seq, 2) if a > b)
    return inv % 2


def zero_cochain(nerve: CoverNerve, degree: int, group: CoefficientGroup) -> Cochain:
    return Cochain(nerve, degree, group)


def delta_matrix(nerve: CoverNerve, n: int) -> list[list[int]]:
    """Integer matrix of ``δ : C^n -> C^{n+1}`` (rows: (n+1)-simplices)."""
    cols = {s: k for k, s in enumerate(nerve.of_degree(n))}
    rows = []
    for s in nerve.of_degree(n + 1):
        row = [0] * len(cols)
        for k, f in enumerate(faces(s)):
            row[cols[f]] += -1 if k % 2 else 1
        rows.append(row)
    return rows


def coboundary(c: Cochain) -> Cochain:
    """``(δc)(σ) = Σ_k (-1)^k c(∂_k σ)``."""
    g = c.group
    out = {}
    for s in c.nerve.of_degree(c.degree + 1):
        acc = g.zero()
        for k, f in enumerate(faces(s)):
            v = c.values[f]
            acc = g.add(acc, g.neg(v) if k % 2 else v)
        out[s] = acc
    return Cochain(c.nerve, c.degree + 1, g, out)


def is_cocycle(c: Cochain) -> bool:
    return coboundary(c).is_zero()


# ---------------------------------------------------------------- solving δψ = c


@dataclass(frozen=True)
class CoboundaryResult:
    verdict: Verdict
    witness: Cochain | None = None

    def __bool__(self):
        return self.verdict is Verdict.YES


def _real_parts(c: Cochain) -> list[Fraction]:
    return [GaussianRational.coerce(v).real for v in c.values.values()]


def _imag_parts(c: Cochain) -> list[Fraction]:
    return [GaussianRational.coerce(v).imag for v in c.values.values()]


def is_coboundary(c: Cochain, slack_bound: int = 3, backend: str | None = None) -> CoboundaryResult:
    """Find ``ψ`` of degree ``n - 1`` with ``δψ = c``.

    Over ``Z`` and ``Q(i)`` the linear system is solved exactly.  Over
    ``Q(i)/Z`` the real parts must satisfy ``Dψ = c + m`` for some integer
    slack ``m``; the slack is searched in ``[-slack_bound, slack_bound]`` and
    an exhausted search is reported as inconclusive.  When the rational
    obstruction already fails to be integral the answer is an exact no.
    """
    nerve, n, g = c.nerve, c.degree, c.group
    if n == 0:
        return CoboundaryResult(Verdict.YES if c.is_zero() else Verdict.NO)
    d = delta_matrix(nerve, n - 1)
    p = len(nerve.of_degree(n - 1))
    lower = nerve.of_degree(n - 1)

    def wrap(group, vals):
        return Cochain(nerve, n - 1, group, dict(zip(lower, vals)))

    if isinstance(g, Product):
        a = is_coboundary(c.map(g.first, lambda v: v[0]), slack_bound, backend)
        b = is_coboundary(c.map(g.second, lambda v: v[1]), slack_bound, backend)
        verdicts = {a.verdict, b.verdict}
        if Verdict.NO in verdicts:
            return CoboundaryResult(Verdict.NO)
        if Verdict.INCONCLUSIVE in verdicts:
            return CoboundaryResult(Verdict.INCONCLUSIVE)
        wa = a.witness.values if a.witness else {s: g.first.zero() for s in lower}
        wb = b.witness.values if b.witness else {s: g.second.zero() for s in lower}
        return CoboundaryResult(Verdict.YES, Cochain(nerve, n - 1, g, {s: (wa[s], wb[s]) for s in lower}))

    if isinstance(g, Integers):
        x = linalg.solve_integer(d, list(c.values.values()), p)
        return CoboundaryResult(Verdict.NO) if x is None else CoboundaryResult(Verdict.YES, wrap(ZZ, x))

    im = linalg.solve_rational(d, _imag_parts(c), p)
    if im is None:
        return CoboundaryResult(Verdict.NO)
    re_target = _real_parts(c)

    if isinstance(g, GaussianRationals):
        re = linalg.solve_rational(d, re_target, p)
        if re is None:
            return CoboundaryResult(Verdict.NO)
        return CoboundaryResult(Verdict.YES, wrap(QI, [GaussianRational(a, b) for a, b in zip(re, im)]))

    # Q(i)/Z: need Y (c + m) = 0 for the integer left kernel Y of D
    y = linalg.integer_kernel(linalg.transpose(d, p), len(re_target)) if d else linalg.identity(len(re_target))
    obstruction = [linalg.dot(row, re_target) for row in y]
    if any(Fraction(o).denominator != 1 for o in obstruction):
        return CoboundaryResult(Verdict.NO)
    slack = kernels.slack_search(y, [-int(o) for o in obstruction], slack_bound, len(re_target), backend=backend)
    if slack is None:
        return CoboundaryResult(Verdict.INCONCLUSIVE)
    re = linalg.solve_rational(d, [t + m for t, m in zip(re_target, slack)], p)
    return CoboundaryResult(Verdict.YES, wrap(QI_MOD_Z, [GaussianRational(a, b) for a, b in zip(re, im)]))


# ---------------------------------------------------------------- exponential sequence


def lift(c: Cochain) -> Cochain:
    """Canonical ``Q(i)`` representative of a ``Q(i)/Z`` cochain."""
    if not isinstance(c.group, GaussianRationalsModIntegers):
        raise InputError("lift expects Q(i)/Z coefficients")
    return c.map(QI)


def exp_map(c: Cochain) -> Cochain:
    """``Q(i) -> Q(i)/Z``."""
    return c.map(QI_MOD_Z)


def bockstein(c: Cochain, shift: Cochain | None = None) -> Cochain:
    """Connecting map ``H^n(Q(i)/Z) -> H^{n+1}(Z)``: lift, then take ``δ``.

    ``shift`` (an integer cochain) changes the lift; the resulting class does
    not depend on it.
    """
    if not isinstance(c.group, GaussianRationalsModIntegers):
        raise InputError("the Bockstein map takes Q(i)/Z coefficients")
    if not is_cocycle(c):
        raise InputError("the Bockstein map is defined on cocycles")
    lifted = lift(c)
    if shift is not None:
        lifted = lifted + shift.map(QI)
    return coboundary(lifted).map(ZZ)


def logarithm(beta: Cochain) -> Cochain:
    """A ``Q(i)`` cocycle ``κ`` with ``exp(κ) = β``, when the Bockstein class of ``β`` vanishes."""
    b = bockstein(beta)
    n = beta.degree
    m = linalg.solve_integer(delta_matrix(beta.nerve, n), [-v for v in b.values.values()],
                             len(beta.nerve.of_degree(n)))
    if m is None:
        raise InputError("β has nonzero Bockstein class, so it is not exp of a cocycle")
    kappa = lift(beta) + Cochain(beta.nerve, n, QI, dict(zip(beta.nerve.of_degree(n), m)))
    return kappa


# ---------------------------------------------------------------- gerbes and torsors


def gerbe_from_trivializations(classes: Cochain, scalars: Cochain) -> Cochain:
    """2-cocycle of scalars comparing two trivializations of ``L_ij ⊗ L_jk ⊗ L_ki``.

    ``classes`` records the line bundles ``L_ij`` up to isomorphism and must
    satisfy ``δ(classes) = 0`` for the triple tensor products to be trivial.
    ``scalars`` are the chosen trivializations; the gerbe is ``δ(scalars)``.
    """
    if classes.degree != 1 or scalars.degree != 1:
        raise InputError("classes and scalars are 1-cochains")
    if classes.nerve != scalars.nerve:
        raise InputError("classes and scalars must live on the same nerve")
    if not is_cocycle(classes):
        raise InputError("triple tensor not trivializable: δ(classes) != 0")
    return coboundary(scalars)


def regauge(scalars: Cochain, mu: Cochain) -> Cochain:
    """Change of local universal sheaves by line bundles ``M_i``: ``s_ij + μ_i - μ_j``."""
    if mu.degree != 0:
        raise InputError("the regauging datum is a 0-cochain")
    return scalars - coboundary(mu.map(scalars.group))


def twisted_glue_check(psi: Cochain, beta: Cochain) -> bool:
    """Do the gluing maps ``psi`` satisfy ``ψ_ki ψ_jk ψ_ij = β_ijk``?"""
    if not is_cocycle(beta):
        raise InputError("the twisting datum must be a cocycle")
    return coboundary(psi) == beta


def search_twisted_gluing(beta: Cochain, denominator: int) -> Cochain | None:
    """Exhaustive search for real ``ψ`` with values in ``(1/denominator)Z / Z`` and ``δψ = β``."""
    if denominator < 1:
        raise InputError("denominator must be positive")
    if not is_cocycle(beta):
        raise InputError("the twisting datum must be a cocycle")
    nerve, n = beta.nerve, beta.degree - 1
    vals = [GaussianRational.coerce(beta.values[s]) for s in nerve.of_degree(beta.degree)]
    if any(v.imag != 0 for v in vals):
        return None
    scaled = [v.real * denominator for v in vals]
    if any(x.denominator != 1 for x in scaled):
        return None
    # numerators k with M k = denominator * β  (mod denominator)
    target = [int(x) % denominator for x in scaled]
    matrix = delta_matrix(nerve, n)
    edges = nerve.of_degree(n)
    for ks in itertools.product(range(denominator), repeat=len(edges)):
        if all(sum(a * k for a, k in zip(row, ks)) % denominator == t for row, t in zip(matrix, target)):
            psi = Cochain(nerve, n, beta.group, {e: Fraction(k, denominator) for e, k in zip(edges, ks)})
            if twisted_glue_check(psi, beta):
                return psi
    return None


def torsor_path(kappa: Cochain, t) -> Cochain:
    """``β_t = exp(t κ)``, the class in ``Q(i)/Z`` at time ``t``."""
    if not isinstance(kappa.group, GaussianRationals):
        raise InputError("κ takes Q(i) coefficients")
    if not is_cocycle(kappa):
        raise InputError("κ must be a cocycle")
    t = to_fraction(t)
    return kappa.scale(t).map(QI_MOD_Z)


# ---------------------------------------------------------------- cohomology


@dataclass(frozen=True)
class CohomologyGroup:
    rank: int
    torsion: tuple[int, ...] = ()


def nerve_cohomology(nerve: CoverNerve, group: CoefficientGroup, degree: int) -> CohomologyGroup:
    """``H^degree`` of the nerve: rank, and torsion coefficients over ``Z``."""
    if not isinstance(group, (Integers, GaussianRationals)):
        raise InputError("cohomology is computed with Z or Q(i) coefficients")
    if degree < 0:
        raise InputError("degree must be nonnegative")
    n_simp = len(nerve.of_degree(degree))
    d_out = delta_matrix(nerve, degree)
    kernel_rank = n_simp - (linalg.rank(d_out) if d_out else 0)
    if degree == 0:
        return CohomologyGroup(kernel_rank)
    d_in = delta_matrix(nerve, degree - 1)
    divisors = linalg.elementary_divisors(d_in) if d_in else []
    torsion = tuple(x for x in divisors if x > 1) if isinstance(group, Integers) else ()
    return CohomologyGroup(kernel_rank - len(divisors), torsion)
