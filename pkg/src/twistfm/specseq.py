"""Rank-level bookkeeping for first-quadrant cohomological spectral sequences.

A :class:`Page` stores the ranks of ``E_r^{i,j}``; differentials go
``d_r : (i, j) -> (i + r, j - r + 1)``.  Cells whose rank is not known can be
marked *unknown*: they count as possibly nonzero when reasoning about which
differentials may be nonzero, and are refused by rank arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Mapping, Sequence

from .errors import InputError, InvariantViolation

Cell = tuple[int, int]


@dataclass(frozen=True, eq=False)
class Page:
    r: int
    entries: Mapping[Cell, int]
    width: int
    height: int
    unknown: frozenset = field(default_factory=frozenset)

    def __init__(self, r: int, entries: Mapping[Cell, int] | Iterable = (), width: int | None = None,
                 height: int | None = None, unknown: Iterable[Cell] = ()):
        if r < 2:
            raise InputError(f"page index must be at least 2, got {r}")
        items = entries.items() if isinstance(entries, Mapping) else ((tuple(e[:2]), e[2]) for e in entries)
        clean: dict[Cell, int] = {}
        for (i, j), rank in items:
            i, j, rank = int(i), int(j), int(rank)
            if i < 0 or j < 0:
                raise InputError(f"cell {(i, j)} is outside the first quadrant")
            if rank < 0:
                raise InputError(f"negative rank {rank} at {(i, j)}")
            if rank:
                clean[(i, j)] = clean.get((i, j), 0) + rank
        unk = frozenset((int(i), int(j)) for i, j in unknown)
        cells = list(clean) + list(unk)
        w = max((c[0] for c in cells), default=0) if width is None else width
        h = max((c[1] for c in cells), default=0) if height is None else height
        for i, j in cells:
            if i > w or j > h:
                raise InputError(f"cell {(i, j)} lies outside the page [0,{w}]x[0,{h}]")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "entries", clean)
        object.__setattr__(self, "width", w)
        object.__setattr__(self, "height", h)
        object.__setattr__(self, "unknown", unk)

    def entry(self, i: int, j: int) -> int:
        if (i, j) in self.unknown:
            raise InputError(f"rank at {(i, j)} is unknown")
        return self.entries.get((i, j), 0)

    def maybe_nonzero(self, i: int, j: int) -> bool:
        return (i, j) in self.unknown or self.entries.get((i, j), 0) > 0

    def in_box(self, i: int, j: int) -> bool:
        return 0 <= i <= self.width and 0 <= j <= self.height

    def __eq__(self, other):
        if not isinstance(other, Page):
            return NotImplemented
        return (self.r, self.entries, self.width, self.height, self.unknown) == (
            other.r, other.entries, other.width, other.height, other.unknown)

    def same_entries(self, other: "Page") -> bool:
        return self.entries == other.entries and self.unknown == other.unknown

    def as_triples(self) -> list[list[int]]:
        return [[i, j, k] for (i, j), k in sorted(self.entries.items())]


@dataclass(frozen=True)
class DifferentialAssignment:
    """Ranks of ``d_r`` out of each cell."""

    r: int
    ranks: Mapping[Cell, int] = field(default_factory=dict)


@dataclass(frozen=True)
class Differential:
    r: int
    source: Cell
    target: Cell


@dataclass(frozen=True)
class SurvivalReport:
    """Differentials that must vanish for ``cell`` to survive to ``E_infinity``."""

    cell: Cell
    must_vanish: tuple[Differential, ...]

    def admits(self, d: DifferentialAssignment) -> bool:
        return all(d.ranks.get(x.source, 0) == 0 for x in self.must_vanish if x.r == d.r)


def target(cell: Cell, r: int) -> Cell:
    i, j = cell
    return (i + r, j - r + 1)


def leray_e2(base: Mapping[Cell, int] | Iterable = (), max_degree: int = 2, height: int | None = None,
             unknown: Iterable[Cell] = ()) -> Page:
    """``E_2`` page from the ranks of ``H^i(B, R^j f_* F)``.

    ``max_degree`` bounds the column index: 2 for coherent cohomology on the
    projective plane, 4 for its singular cohomology.
    """
    page = Page(2, base, unknown=unknown, height=height)
    cols = [i for i, _ in list(page.entries) + list(page.unknown)]
    if cols and max(cols) > max_degree:
        raise InputError(f"column {max(cols)} exceeds the cohomological dimension {max_degree} of the base")
    return Page(2, page.entries, width=max(page.width, max_degree), height=page.height, unknown=page.unknown)


def bottom_row_page(row: Sequence[int], height: int) -> Page:
    """``E_2`` page with a known bottom row and unknown rows ``1..height``."""
    width = len(row) - 1
    unknown = [(i, j) for i in range(width + 1) for j in range(1, height + 1)]
    return Page(2, {(i, 0): k for i, k in enumerate(row)}, width=width, height=height, unknown=unknown)


def next_page(p: Page, d: DifferentialAssignment) -> Page:
    """``E_{r+1}`` as the homology of ``(E_r, d_r)``, at rank level."""
    if d.r != p.r:
        raise InputError(f"differential is d_{d.r} but the page is E_{p.r}")
    out: dict[Cell, int] = {}
    inc: dict[Cell, int] = {}
    for src, k in d.ranks.items():
        src = (int(src[0]), int(src[1]))
        if k < 0:
            raise InputError(f"negative differential rank at {src}")
        if k == 0:
            continue
        tgt = target(src, p.r)
        if not (p.in_box(*src) and p.in_box(*tgt)):
            raise InputError(f"d_{p.r} out of {src} lands at {tgt}, outside the page")
        if src in p.unknown or tgt in p.unknown:
            raise InputError(f"d_{p.r} out of {src} touches a cell of unknown rank")
        if k > min(p.entry(*src), p.entry(*tgt)):
            raise InputError(f"rank {k} of d_{p.r} at {src} exceeds min(E{src}, E{tgt})")
        out[src] = out.get(src, 0) + k
        inc[tgt] = inc.get(tgt, 0) + k
    new = {}
    for cell in set(p.entries) | set(out) | set(inc):
        val = p.entries.get(cell, 0) - out.get(cell, 0) - inc.get(cell, 0)
        if val < 0:
            raise InputError(f"differentials into and out of {cell} have total rank above its entry")
        new[cell] = val
    return Page(p.r + 1, new, width=p.width, height=p.height, unknown=p.unknown)


def possible_differentials(p: Page, r: int) -> list[Differential]:
    """Differentials ``d_r`` whose source and target may both be nonzero."""
    found = []
    for cell in sorted(set(p.entries) | p.unknown):
        if not p.maybe_nonzero(*cell):
            continue
        tgt = target(cell, r)
        if p.in_box(*tgt) and p.maybe_nonzero(*tgt):
            found.append(Differential(r, cell, tgt))
    return found


def forced_degeneration(p: Page) -> bool:
    """True if no ``d_r`` with ``r >= p.r`` can be nonzero, so ``E_r = E_infinity``."""
    # d_r leaves the quadrant once r > height + 1
    return not any(possible_differentials(p, r) for r in range(p.r, p.height + 2))


def abutment(p: Page) -> list[int]:
    """Ranks of ``H^n``, ``n = 0..width+height``, from a stable page."""
    if p.unknown:
        raise InputError("cannot total a page with cells of unknown rank")
    totals = [0] * (p.width + p.height + 1)
    for (i, j), k in p.entries.items():
        totals[i + j] += k
    return totals


def euler_characteristic(p: Page) -> int:
    return sum((-1) ** (i + j) * k for (i, j), k in p.entries.items())


def koszul_page(ext_ranks: Sequence[int], conormal_rank: int) -> Page:
    """``E_2^{p,q} = Ext^p(L1 ⊗ Λ^q N, L2)`` for a trivial conormal bundle ``N``.

    With ``N`` trivial of rank ``c`` this is ``e_p * binomial(c, q)``.
    """
    if conormal_rank < 0:
        raise InputError("conormal rank must be nonnegative")
    entries = {(p, q): e * comb(conormal_rank, q) for p, e in enumerate(ext_ranks) for q in range(conormal_rank + 1)}
    return Page(2, entries, width=max(len(ext_ranks) - 1, 0), height=conormal_rank)


def survival_constraint(p: Page, cell: Cell) -> SurvivalReport:
    """Every ``d_r`` (``r >= p.r``) into or out of ``cell`` whose other end may be nonzero."""
    i, j = cell
    if not p.in_box(i, j):
        raise InputError(f"cell {cell} is outside the page")
    found = []
    # incoming needs r <= i, outgoing needs r <= j + 1
    for r in range(p.r, max(i, j + 1) + 1):
        src = (i - r, j + r - 1)
        if p.in_box(*src) and p.maybe_nonzero(*src):
            found.append(Differential(r, src, cell))
        tgt = target(cell, r)
        if p.in_box(*tgt) and p.maybe_nonzero(*tgt):
            found.append(Differential(r, cell, tgt))
    return SurvivalReport(cell, tuple(found))


def deduce_ext_vanishing(conormal_rank: int, abutment_zero: bool, p_max: int) -> list[int]:
    """Show ``Ext^p = 0`` for ``p <= p_max`` when the Koszul spectral sequence abuts to zero.

    Induction on ``p``: once columns ``< p`` are known to vanish, nothing can
    hit or leave ``E^{p,0}`` (sources would lie in earlier columns, targets
    below the quadrant), so ``E_2^{p,0} = Ext^p`` survives into ``H^p = 0``.
    """
    if not abutment_zero:
        raise InputError("the induction needs the abutment to vanish")
    if conormal_rank < 0 or p_max < 0:
        raise InputError("conormal rank and p_max must be nonnegative")
    known: list[int] = []
    for k in range(p_max + 1):
        unknown = [(p, q) for p in range(k, p_max + 1) for q in range(conormal_rank + 1)]
        page = Page(2, {}, width=p_max, height=conormal_rank, unknown=unknown)
        report = survival_constraint(page, (k, 0))
        if report.must_vanish:
            raise InvariantViolation(f"E^({k},0) is not isolated: {report.must_vanish}")
        known.append(0)
    return known


def render(p: Page, labels: Mapping[Cell, str] | None = None) -> str:
    """Text grid, top row first; unknown cells print as ``?``."""
    labels = dict(labels or {})
    rows = []
    for j in range(p.height, -1, -1):
        cells = []
        for i in range(p.width + 1):
            if (i, j) in labels:
                cells.append(labels[(i, j)])
            elif (i, j) in p.unknown:
                cells.append("?")
            else:
                cells.append(str(p.entries.get((i, j), 0)))
        rows.append(" ".join(f"{c:>4}" for c in cells))
    return "\n".join(rows)


def units_bottom_row_labels() -> dict[Cell, str]:
    """Bottom row of the Leray page for invertible functions on a fibration over the plane.

    ``H^0`` is the divisible group ``C*``, which has no rank; it is shown as a
    symbol and never enters rank arithmetic.
    """
    return {(0, 0): "C*", (1, 0): "Z", (2, 0): "0", (3, 0): "Z"}
