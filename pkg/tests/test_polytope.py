import itertools
import random
from fractions import Fraction
from math import factorial

import pytest

from kalai_lab.corpus import fig2, random_lab, random_minimizer, random_unconditional
from kalai_lab.exact import det
from kalai_lab.errors import DegenerateInput, NotLocallyAntiBlocking, OriginNotInterior
from kalai_lab.hanner import build_gp
from kalai_lab.lab import is_locally_anti_blocking, is_proper
from kalai_lab.lattice import FaceLattice
from kalai_lab.polytope import (
    Polytope,
    axis_extents,
    cross_polytope,
    cube,
    free_sum,
    halfspace_scale,
    hull,
    mahler,
    normalize,
    normalize_with_factors,
    permute_coordinates,
    polar,
    product,
    projection,
    scale_coordinates,
    section,
    segment,
    triangulate,
    volume,
)

from oracles import shoelace


def subsets(d):
    for k in range(1, d + 1):
        yield from itertools.combinations(range(d), k)


def test_cube_and_cross_counts():
    for d in range(1, 5):
        assert cube(d).n_vertices == 2**d and cube(d).n_facets == 2 * d
        assert cross_polytope(d).n_vertices == 2 * d and cross_polytope(d).n_facets == 2**d


def test_polar_of_cube_is_cross():
    for d in range(1, 5):
        assert polar(cube(d)) == cross_polytope(d)


def test_polar_requires_interior_origin():
    with pytest.raises(OriginNotInterior):
        polar(hull(2, [(0, 0), (1, 0), (0, 1)]))


def test_polar_involution(small_corpus):
    for P in small_corpus.values():
        if is_proper(P):
            assert polar(polar(P)) == P


def test_product_free_sum_duality():
    rng = random.Random(5)
    for _ in range(6):
        P = random_lab(rng.randint(1, 3), rng.randint(0, 99), n_points=2)
        Q = random_lab(rng.randint(1, 2), rng.randint(0, 99), n_points=2)
        assert polar(product(P, Q)) == free_sum(polar(P), polar(Q))
        assert polar(free_sum(P, Q)) == product(polar(P), polar(Q))


def test_segment_product_is_box():
    B = product(segment(1, 2), segment(3, 4))
    assert B.vertices == tuple(sorted((x, y) for x in (-1, 2) for y in (-3, 4)))
    assert volume(B) == 21


def test_lab_sections_equal_projections():
    for d, seed in [(2, 0), (3, 1), (3, 2), (4, 3)]:
        P = random_lab(d, seed, n_points=2)
        for J in subsets(d):
            S = section(P, J)
            assert S == projection(P, J)
            assert is_locally_anti_blocking(S)


def test_polar_commutes_with_sections_on_lab():
    for d, seed in [(2, 4), (3, 5), (4, 6)]:
        P = random_lab(d, seed, n_points=2)
        D = polar(P)
        assert is_proper(D) and is_locally_anti_blocking(D)
        for J in subsets(d):
            assert section(D, J) == polar(section(P, J))


def test_section_differs_from_projection_without_lab():
    P = hull(2, [(-1, -1), (2, 1), (-1, 1)])
    assert not is_locally_anti_blocking(P)
    assert section(P, [0]) != projection(P, [0])


def test_halfspace_scale_needs_lab():
    P = hull(2, [(-1, -1), (2, 1), (-1, 1)])
    with pytest.raises(NotLocallyAntiBlocking):
        halfspace_scale(P, 0, 2, 1)


def test_halfspace_scale_examples():
    S = halfspace_scale(cube(2), 0, 3, Fraction(1, 2))
    assert S == product(segment(Fraction(1, 2), 3), segment(1, 1))
    assert halfspace_scale(cube(2), 1, 1, 1) == cube(2)


def test_scaling_preserves_face_count_and_graph():
    rng = random.Random(11)
    for seed in range(4):
        P = random_lab(3, seed, n_points=2)
        Q = halfspace_scale(P, rng.randrange(3), Fraction(rng.randint(1, 9), 4), Fraction(rng.randint(1, 9), 4))
        assert FaceLattice(Q).s == FaceLattice(P).s
    for seed in range(4):
        H = random_minimizer(4, seed)
        Q = halfspace_scale(H, seed % 4, Fraction(5, 3), Fraction(2, 7))
        assert build_gp(Q) == build_gp(H)


def test_normalize():
    H = random_minimizer(3, 2)
    N, ext = normalize_with_factors(H)
    assert ext == axis_extents(H)
    assert all(e == (1, 1) for e in axis_extents(N))
    assert normalize(N) == N
    assert scale_coordinates(N, [b for _, b in ext], [a for a, _ in ext]) == H


def test_permute_coordinates():
    B = product(segment(1, 1), segment(2, 2))
    assert permute_coordinates(B, [1, 0]) == product(segment(2, 2), segment(1, 1))


@pytest.mark.parametrize("d", range(1, 6))
def test_volumes_of_standard_polytopes(d):
    assert volume(cube(d)) == 2**d
    assert volume(cross_polytope(d)) == Fraction(2**d, factorial(d))


def test_volume_against_shoelace():
    rng = random.Random(3)
    for _ in range(10):
        pts = [(Fraction(rng.randint(-9, 9), rng.randint(1, 3)), Fraction(rng.randint(-9, 9), rng.randint(1, 3))) for _ in range(7)]
        try:
            P = hull(2, pts)
        except DegenerateInput:
            continue
        assert volume(P) == shoelace(P.vertices)


def test_volume_off_origin():
    assert volume(hull(2, [(5, 5), (6, 5), (5, 7)])) == 1


def test_triangulation_is_nondegenerate():
    apex, simplices = triangulate(cube(3))
    assert apex == (0, 0, 0)
    assert len(simplices) == 12
    P = fig2()
    apex, simplices = triangulate(P)
    for s in simplices:
        assert len(s) == 3
        m = [[c - a for c, a in zip(P.vertices[k], apex)] for k in s]
        assert det(m) != 0


def test_volume_product_law():
    for s in range(4):
        P = random_lab(2, s, n_points=2)
        Q = random_lab(1 + s % 2, s + 10, n_points=2)
        assert volume(product(P, Q)) == volume(P) * volume(Q)


@pytest.mark.parametrize("d", range(1, 6))
def test_mahler_cube(d):
    assert mahler(cube(d)) == Fraction(4**d, factorial(d))


def test_fig2_mahler_exceeds_minimum():
    assert mahler(fig2()) > Fraction(32, 3)


def test_json_round_trip(small_corpus):
    for P in small_corpus.values():
        assert Polytope.from_dict(P.to_dict()) == P
        assert Polytope.from_dict(P.to_dict(with_facets=False)) == P


def test_from_dict_rejects_wrong_facets():
    data = cube(2).to_dict()
    data["facets"][0]["offset"] = "2"
    with pytest.raises(DegenerateInput):
        Polytope.from_dict(data)


def test_canonical_equality_ignores_input_order():
    pts = [(1, 1), (-1, 1), (1, -1), (-1, -1), (0, 0)]
    assert hull(2, pts) == hull(2, list(reversed(pts))) == cube(2)


def test_unconditional_generator_deterministic():
    assert random_unconditional(3, 9) == random_unconditional(3, 9)
    assert random_lab(3, 9).to_dict() == random_lab(3, 9).to_dict()
