"""Acceptance criteria 1-9, one test each.

Every test records a PASS/FAIL line with its runtime; the lines are printed
at the end of the pytest run (and directly when this file is executed as a
script).
"""

from __future__ import annotations

import functools
import itertools
import random
import time
from fractions import Fraction
from math import factorial

import pytest

from kalai_lab.corpus import (
    fig2,
    pi3_clique_polytope,
    random_hanner_expr,
    random_lab,
    random_minimizer,
    random_unconditional,
)
from kalai_lab.hanner import MinimizerClassification, NotMinimizer, build_gp, classify_minimizer, hanner_from_expr
from kalai_lab.harness import verify_unconditional_bound
from kalai_lab.lab import is_locally_anti_blocking, is_proper
from kalai_lab.lattice import FaceLattice
from kalai_lab.polytope import (
    cross_polytope,
    cube,
    free_sum,
    from_inequalities,
    hull,
    mahler,
    polar,
    product,
    projection,
    section,
)
from kalai_lab.special import KKT_REL, special_census

from helpers import normal_cones_restrict, normals_vanish
from oracles import brute_faces

RESULTS: list = []


def criterion(number: int, title: str, limit: float | None = None):
    """Record PASS/FAIL for one criterion and enforce its runtime limit."""

    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            start = time.perf_counter()
            detail = ""
            try:
                detail = fn(*args, **kwargs) or ""
                elapsed = time.perf_counter() - start
                if limit is not None:
                    assert elapsed < limit, f"took {elapsed:.1f} s, limit {limit} s"
            except BaseException as exc:
                elapsed = time.perf_counter() - start
                RESULTS.append(f"FAIL  criterion {number}: {title} ({elapsed:.1f} s) {exc!r}"[:300])
                raise
            RESULTS.append(f"PASS  criterion {number}: {title} ({elapsed:.1f} s) {detail}".rstrip())

        return run

    return wrap


@criterion(1, "s(C_d) = 3^d for d = 1..6", limit=30)
def test_cube_face_counts():
    counts = [FaceLattice(cube(d)).s for d in range(1, 7)]
    assert counts == [3**d for d in range(1, 7)]
    return f"counts {counts}"


@criterion(2, "hexagon-section counterexample: f = (8,14,8), s = 31, section s = 13", limit=1)
def test_fig2_counterexample():
    P = fig2()
    L = FaceLattice(P)
    H = section(P, [0, 1])
    LH = FaceLattice(H)
    assert L.f_vector == (8, 14, 8)
    assert L.s == 31
    assert H.n_vertices == 6 and LH.s == 13
    assert L.s < 3 * LH.s
    return f"s = {L.s}, section s = {LH.s}"


@criterion(3, "C(Pi_3) has 97 > 81 non-empty faces", limit=5)
def test_pi3_clique_polytope():
    P = pi3_clique_polytope()
    L = FaceLattice(P)
    assert L.s == 97 > 3**4
    assert isinstance(classify_minimizer(P, L), NotMinimizer)
    return f"s = {L.s}"


@criterion(4, "Hanner equality and cotree round trip, 50 random cotrees per d = 2..6", limit=300)
def test_hanner_equality():
    rng = random.Random(2024)
    checked = 0
    for d in range(2, 7):
        for _ in range(50):
            expr, tree = random_hanner_expr(d, rng, symmetric=False)
            P = hanner_from_expr(expr)
            L = FaceLattice(P)
            assert L.s == 3**d
            out = classify_minimizer(P, L)
            assert isinstance(out, MinimizerClassification)
            assert out.cotree == tree
            assert out.reconstruct() == P
            checked += 1
    return f"{checked} polytopes"


def _census_corpus():
    out = [(f"C_{d}", cube(d)) for d in range(1, 5)]
    out += [(f"X_{d}", cross_polytope(d)) for d in range(1, 5)]
    out.append(("fig2", fig2()))
    for d in (2, 3, 4):
        out += [(f"lab{d}_{s}", random_lab(d, s)) for s in range(25)]
    return out


@criterion(5, "special census total, injective, bound <= s, KKT <= 1e-6", limit=600)
def test_special_census():
    worst = 0.0
    corpus = _census_corpus()
    for name, P in corpus:
        L = FaceLattice(P)
        census = special_census(P, L)
        assert census.total, name
        assert census.injective, name
        assert census.bound <= L.s, name
        if L.s == 3**P.dim:
            assert census.bound == L.s, name
        for rec in census.records.values():
            assert rec.kkt_residual <= KKT_REL, (name, rec.sigma)
            worst = max(worst, rec.kkt_residual)
    return f"{len(corpus)} polytopes, worst KKT residual {worst:.1e}"


@criterion(6, "Mahler volume 4^d/d! for C_d and random symmetric Hanner polytopes, d <= 5", limit=600)
def test_mahler_equalities():
    rng = random.Random(6)
    n = 0
    for d in range(1, 6):
        target = Fraction(4**d, factorial(d))
        assert mahler(cube(d)) == target
        for _ in range(10):
            expr, _ = random_hanner_expr(d, rng, symmetric=True)
            assert mahler(hanner_from_expr(expr)) == target
            n += 1
    return f"{n} Hanner polytopes"


@criterion(7, "G_P under polarity, sections and free sums on 50 random minimizers", limit=600)
def test_gp_laws():
    rng = random.Random(7)
    for k in range(50):
        d = 2 + k % 4
        H = random_minimizer(d, rng.randrange(10**6))
        G = build_gp(H)
        assert build_gp(polar(H)) == G.complement()
        for size in range(2, d):
            for J in itertools.combinations(range(d), size):
                assert build_gp(section(H, J)) == G.induced(J)
        if d <= 3:
            K = random_minimizer(5 - d, rng.randrange(10**6))
            assert build_gp(free_sum(H, K)) == G.disjoint_union(build_gp(K))
        else:
            K = random_minimizer(1, 0)
            assert build_gp(free_sum(H, K)) == G.disjoint_union(build_gp(K))
    return "50 minimizers"


@criterion(8, "complemented-lattice bound on unconditional polytopes", limit=600)
def test_unconditional_harness():
    corpus = [cube(d) for d in range(1, 5)] + [fig2()]
    corpus += [random_unconditional(d, s) for d in (2, 3, 4) for s in range(25)]
    for P in corpus:
        report = verify_unconditional_bound(P)
        assert report.passed
        for part in report.partitions:
            assert min(part.sizes) >= 3 ** (P.dim - 1)
            assert part.complements_found >= 3 ** (P.dim - 1)
            assert part.all_in_S_plus
    return f"{len(corpus)} polytopes"


def _invariant_corpus():
    out = [cube(d) for d in range(1, 5)] + [cross_polytope(d) for d in range(2, 5)]
    out += [fig2(), pi3_clique_polytope()]
    out += [random_lab(d, s, 2) for d in (2, 3, 4) for s in range(3)]
    out += [random_unconditional(d, s, 2) for d in (2, 3) for s in range(3)]
    out += [random_minimizer(d, s) for d in (3, 4) for s in range(3)]
    return out


@criterion(9, "structural invariant sweep", limit=600)
def test_invariant_sweep():
    corpus = _invariant_corpus()
    for P in corpus:
        d = P.dim
        L = FaceLattice(P)
        assert from_inequalities(d, P.facets) == P
        assert hull(d, P.vertices) == P
        if P.n_vertices <= 16:
            assert {frozenset(P.vertices_of(f.bits)) for f in L.faces} == brute_faces(P.vertices)
        if is_proper(P):
            assert L.polar_lattice.s == L.s
        if not (is_proper(P) and is_locally_anti_blocking(P)):
            continue
        assert normals_vanish(P, L)
        D = polar(P)
        for k in range(1, d):
            for J in itertools.combinations(range(d), k):
                S = section(P, J)
                assert S == projection(P, J)
                assert is_locally_anti_blocking(S)
                assert section(D, J) == polar(S)
                assert normal_cones_restrict(P, J, L)
    pairs = list(zip(corpus[:6], corpus[6:12]))
    for P, Q in pairs:
        if P.dim + Q.dim > 6:
            continue
        sp, sq = FaceLattice(P).s, FaceLattice(Q).s
        assert FaceLattice(product(P, Q)).s == sp * sq
        assert FaceLattice(free_sum(P, Q)).s == sp * sq
    return f"{len(corpus)} polytopes"


if __name__ == "__main__":
    import sys

    code = pytest.main([__file__, "-q"])
    sys.exit(code)
