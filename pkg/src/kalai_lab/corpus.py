"""Named instances and seeded random generators for the test corpus."""

from __future__ import annotations

import random
from fractions import Fraction

from .errors import DegenerateInput, InvariantViolation
from .hanner import (
    JOIN,
    UNION,
    CoLeaf,
    CoNode,
    Leaf,
    canonical_cotree,
    clique_polytope,
    cotree_to_expr,
    hanner_from_expr,
    path_graph,
)
from .lab import is_locally_anti_blocking, is_unconditional
from .polytope import Polytope, hull, is_proper, scale_coordinates

MAX_DENOMINATOR = 16


def fig2() -> Polytope:
    """Unconditional 3-polytope whose x3 = 0 section carries more than a third of its faces."""
    pts = [(a, b, 0) for a in (1, -1) for b in (1, -1)]
    pts += [(2 * a, 0, b) for a in (1, -1) for b in (1, -1)]
    return hull(3, pts)


def pi3_clique_polytope() -> Polytope:
    """Clique polytope of the path on four vertices."""
    return clique_polytope(path_graph(4))


def _small_positive(rng: random.Random, lo: Fraction, hi: Fraction) -> Fraction:
    while True:
        den = rng.randint(1, MAX_DENOMINATOR)
        num = rng.randint(1, int(hi * den))
        q = Fraction(num, den)
        if lo <= q <= hi:
            return q


def _reflection_closure(points):
    out = set()
    for p in points:
        stack = [tuple(p)]
        for i in range(len(p)):
            stack = [q[:i] + (s * q[i],) + q[i + 1:] for q in stack for s in (1, -1)]
        out.update(stack)
    return out


def random_unconditional(d: int, seed: int, n_points: int = 3) -> Polytope:
    """Hull of the reflection closure of seeded random points with small denominators."""
    if not 1 <= d <= 5:
        raise ValueError("random polytopes are generated for 1 <= d <= 5")
    rng = random.Random(seed)
    for _ in range(10):
        pts = [
            tuple(_small_positive(rng, Fraction(1, 8), Fraction(2)) for _ in range(d))
            for _ in range(n_points)
        ]
        try:
            P = hull(d, _reflection_closure(pts))
        except DegenerateInput:
            continue
        if not is_unconditional(P):
            raise InvariantViolation("reflection closure produced a non-unconditional hull")
        return P
    raise DegenerateInput("no full-dimensional sample after 10 attempts")


def random_lab(d: int, seed: int, n_points: int = 3, scale: bool = True) -> Polytope:
    """Random proper LAB polytope: unconditional hull followed by d halfspace scalings.

    The scalings use positive rationals in [1/4, 4] with denominators at most 16.
    """
    P = random_unconditional(d, seed, n_points)
    if scale:
        rng = random.Random(f"scale-{seed}")
        plus = [_small_positive(rng, Fraction(1, 4), Fraction(4)) for _ in range(d)]
        minus = [_small_positive(rng, Fraction(1, 4), Fraction(4)) for _ in range(d)]
        P = scale_coordinates(P, plus, minus)
    if not (is_proper(P) and is_locally_anti_blocking(P)):
        raise InvariantViolation("random generator produced a non-LAB polytope")
    return P


def random_cotree(d: int, rng: random.Random):
    """Random canonical cotree whose leaves 0..d-1 appear in left-to-right order."""

    def build(lo, hi, kind):
        if hi - lo == 1:
            return CoLeaf(lo)
        k = rng.randint(2, min(hi - lo, 3))
        cuts = sorted(rng.sample(range(lo + 1, hi), k - 1))
        bounds = [lo] + cuts + [hi]
        other = UNION if kind == JOIN else JOIN
        return CoNode(kind, tuple(build(a, b, other) for a, b in zip(bounds, bounds[1:])))

    return canonical_cotree(build(0, d, rng.choice([UNION, JOIN])))


def random_hanner_expr(d: int, rng: random.Random, symmetric: bool = False):
    """(expression, cotree) with random segment lengths; symmetric segments if asked."""
    tree = random_cotree(d, rng)
    extents = []
    for _ in range(d):
        a = _small_positive(rng, Fraction(1, 4), Fraction(4))
        b = a if symmetric else _small_positive(rng, Fraction(1, 4), Fraction(4))
        extents.append((a, b))
    expr, _ = cotree_to_expr(tree, extents)
    return expr, tree


def random_minimizer(d: int, seed: int, symmetric: bool = False) -> Polytope:
    expr, _ = random_hanner_expr(d, random.Random(seed), symmetric)
    return hanner_from_expr(expr)


__all__ = [
    "fig2",
    "pi3_clique_polytope",
    "random_unconditional",
    "random_lab",
    "random_cotree",
    "random_hanner_expr",
    "random_minimizer",
    "Leaf",
]
