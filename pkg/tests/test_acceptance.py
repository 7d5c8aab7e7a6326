"""The twelve acceptance criteria, each checked exactly and reported on one line.

Run under pytest, or directly with ``python tests/test_acceptance.py``.
"""

import itertools
import random
import sys
import time
from fractions import Fraction

import pytest

from twistfm import cech, fibers, lattice, mukai, plane_curves, scenarios, specseq
from twistfm.lattice import BilinearLattice, Verdict
from twistfm.mukai import PicardVerdict
from twistfm.plane_curves import PlaneCurveClass

NS1 = mukai.K3Surface(BilinearLattice([[2]]))
NS2 = mukai.K3Surface(BilinearLattice([[-2, 3], [3, -2]]))


def c1_picard_lattices():
    v0, v1 = mukai.MukaiVector(0, (1,), -1), mukai.MukaiVector(0, (1,), 0)
    ok = True
    for v, basis, gram in ((v0, [(-2, 1, 0), (0, 0, 1)], [[2, 2], [2, 0]]), (v1, [(-1, 0, 0), (0, 0, 1)], [[0, 1], [1, 0]])):
        m = mukai.moduli_picard(NS1, v)
        ok &= lattice.congruent(m.picard, BilinearLattice(gram), 2).verdict is Verdict.YES
        members = lattice.SublatticeBasis(m.picard_basis, mukai.extended_lattice(NS1))
        ok &= all(b in members for b in basis)
        is_basis, g = mukai.basis_check(NS1, v, basis)
        ok &= is_basis and g.tolist() == gram
    res = mukai.distinguish(NS1, v0, v1)
    ok &= res.verdict is PicardVerdict.DIFFERENT and res.invariant[0] == "determinant"
    unimodular = [lattice.is_unimodular(BilinearLattice(g)) for g in ([[2, 2], [2, 0]], [[0, 1], [1, 0]])]
    return ok and unimodular == [False, True]


def c2_tritangent():
    bases = {0: [(-1, 1, 0, 1), (-5, 4, 1, 1), (-10, 9, 1, 5)], 1: [(-1, 0, 0, 0), (0, 0, 0, 1), (0, 1, -1, 0)]}
    ok = True
    for d, basis in bases.items():
        v = mukai.MukaiVector(0, (1, 1), d - 1)
        m = mukai.moduli_picard(NS2, v)
        ok &= m.picard.rank == 3
        members = lattice.SublatticeBasis(m.picard_basis, mukai.extended_lattice(NS2))
        ok &= all(b in members for b in basis)
        is_basis, g = mukai.basis_check(NS2, v, basis)
        ok &= is_basis and g.tolist() == [[0, 1, 0], [1, 0, 0], [0, 0, -10]]
    return ok


def c3_pluecker():
    dual = plane_curves.dual_curve(PlaneCurveClass(6))
    return ((dual.degree, dual.cusps, dual.nodes) == (30, 72, 324)
            and plane_curves.dual_degree(PlaneCurveClass(30, 324, 72)) == 6
            and plane_curves.geometric_genus(dual) == 10)


def c4_euler():
    models = fibers.standard_fibers()
    return ([fibers.fiber_euler(models[t]) for t in (1, 2, 3, 4)] == [0, 0, 0, 1]
            and fibers.type4_cell_euler() == 1
            and fibers.total_euler(plane_curves.stratify_sextic(), models) == 324)


def c5_moduli_dimension():
    return all(mukai.moduli_dimension(NS1, mukai.MukaiVector(0, (1,), d - 1)) == 4 for d in range(-3, 4))


def c6_leray():
    page = specseq.leray_e2({(0, 0): 1, (1, 1): 1, (2, 2): 1})
    return specseq.forced_degeneration(page) and specseq.abutment(page) == [1, 0, 1, 0, 1]


def c7_koszul():
    if specseq.deduce_ext_vanishing(2, True, 6) != [0] * 7:
        return False
    return all(any(specseq.abutment(specseq.koszul_page(e, 2))) for e in itertools.product((0, 1), repeat=3) if any(e))


def c8_incidence():
    return fibers.incidence_dimension(2, 1, 2) == 5 and fibers.bm_bound_ok(4) is True


def c9_gerbe():
    rng = random.Random(90)
    groups = [cech.ZZ, cech.QI, cech.QI_MOD_Z, cech.Product(first=cech.ZZ, second=cech.QI_MOD_Z)]
    cases = 0
    max_opens = 0
    while cases < 1000:
        nerve = scenarios.random_nerve(rng, 6)
        max_opens = max(max_opens, len(nerve.opens))
        deg = rng.randint(0, max(nerve.dimension - 1, 0))
        c = scenarios.random_cochain(rng, nerve, deg, groups[cases % 4])
        if not cech.coboundary(cech.coboundary(c)).is_zero():
            return False
        cases += 1
    if max_opens != 6:
        return False
    nerve = cech.full_simplex(4)
    for _ in range(25):
        classes = cech.coboundary(scenarios.random_cochain(rng, nerve, 0, cech.ZZ))
        s = scenarios.random_cochain(rng, nerve, 1, cech.QI_MOD_Z)
        mu = scenarios.random_cochain(rng, nerve, 0, cech.QI_MOD_Z)
        if cech.gerbe_from_trivializations(classes, cech.regauge(s, mu)) != cech.gerbe_from_trivializations(classes, s):
            return False
    tet = cech.tetrahedron_boundary()
    beta = cech.Cochain(tet, 2, cech.QI_MOD_Z, {(0, 1, 2): Fraction(1, 2)})
    return cech.is_cocycle(beta) and all(cech.search_twisted_gluing(beta, n) is None for n in range(1, 7))


def c10_torsor():
    tet = cech.tetrahedron_boundary()
    beta = cech.Cochain(tet, 2, cech.QI_MOD_Z, {(0, 1, 2): Fraction(1, 2)})
    kappa = cech.logarithm(beta)
    if cech.exp_map(kappa) != beta or not cech.torsor_path(kappa, 0).is_zero() or cech.torsor_path(kappa, 1) != beta:
        return False
    rng = random.Random(100)
    for _ in range(100):
        s = Fraction(rng.randint(-50, 50), rng.randint(1, 20))
        t = Fraction(rng.randint(-50, 50), rng.randint(1, 20))
        if cech.torsor_path(kappa, s) + cech.torsor_path(kappa, t) != cech.torsor_path(kappa, s + t):
            return False
    return True


def c11_cross_ratio():
    if fibers.cross_ratio(0, "inf", 1, 2) != Fraction(1, 2):
        return False
    rng = random.Random(110)
    done = 0
    while done < 1000:
        pts = [Fraction(rng.randint(-40, 40), rng.randint(1, 12)) for _ in range(4)]
        a, b, c, d = (Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(4))
        if len(set(pts)) < 4 or a * d - b * c == 0:
            continue
        lam = fibers.cross_ratio(*pts)
        if lam in (0, 1) or fibers.cross_ratio(*(fibers.ProjectivePoint(a * x + b, c * x + d) for x in pts)) != lam:
            return False
        done += 1
    return True


def c12_conservation():
    rng = random.Random(120)
    for _ in range(500):
        page = scenarios.random_page(rng)
        d = scenarios.random_legal_differentials(rng, page)
        if specseq.euler_characteristic(specseq.next_page(page, d)) != specseq.euler_characteristic(page):
            return False
    return True


CRITERIA = [
    (1, "Picard lattices of the two fibrations", c1_picard_lattices),
    (2, "tritangent case Grams", c2_tritangent),
    (3, "dual sextic counts", c3_pluecker),
    (4, "Euler characteristic 324", c4_euler),
    (5, "moduli dimension 4 for d in -3..3", c5_moduli_dimension),
    (6, "Leray page of O", c6_leray),
    (7, "Koszul induction", c7_koszul),
    (8, "incidence bound", c8_incidence),
    (9, "gerbe calculus", c9_gerbe),
    (10, "torsor path", c10_torsor),
    (11, "cross-ratio", c11_cross_ratio),
    (12, "spectral-sequence conservation", c12_conservation),
]


def run_criterion(fn):
    start = time.perf_counter()
    ok = bool(fn())
    return ok, time.perf_counter() - start


def line(number, name, ok, elapsed):
    return f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {name} ({elapsed:.3f}s)"


@pytest.mark.parametrize("number, name, fn", CRITERIA, ids=[f"criterion-{n}" for n, _, _ in CRITERIA])
def test_criterion(number, name, fn, capsys):
    ok, elapsed = run_criterion(fn)
    with capsys.disabled():
        print("\n" + line(number, name, ok, elapsed))
    assert ok
    assert elapsed < 1.0


def test_scenario_all_matches_criteria():
    criteria_ok = all(fn() for _, _, fn in CRITERIA)
    scenarios_ok = all(scenarios.run_scenario(k).passed for k in scenarios.SCENARIOS)
    assert scenarios_ok == criteria_ok


if __name__ == "__main__":
    results = []
    for number, name, fn in CRITERIA:
        ok, elapsed = run_criterion(fn)
        results.append(ok)
        print(line(number, name, ok, elapsed))
    sys.exit(0 if all(results) else 1)
