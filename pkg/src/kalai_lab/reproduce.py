"""Named reproduction targets, each a list of expected-vs-computed claims."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from pathlib import Path

from .corpus import fig2, pi3_clique_polytope
from .errors import UnknownTarget
from .exact import format_rat
from .hanner import (
    Leaf,
    MinimizerClassification,
    NotMinimizer,
    P4Witness,
    classify_minimizer,
    cotree_str,
    expr_str,
    expr_to_cotree,
    hanner_from_expr,
    is_cograph,
    parse_expr,
    path_graph,
)
from .lab import is_unconditional
from .lattice import FaceLattice
from .polytope import cross_polytope, cube, mahler, section
from .special import special_census


@dataclass
class Claim:
    name: str
    expected: str
    computed: str
    passed: bool

    def line(self, sep: str = "\t") -> str:
        return sep.join([self.name, self.expected, self.computed, "PASS" if self.passed else "FAIL"])


def _claim(name, expected, computed, ok=None) -> Claim:
    ok = (expected == computed) if ok is None else ok
    return Claim(name, str(expected), str(computed), bool(ok))


def _check_d(d: int) -> None:
    if not 1 <= d <= 6:
        raise UnknownTarget(f"dimension {d} outside 1..6")


def reproduce_cube(d: int, figures: Path | None = None) -> list:
    _check_d(d)
    L = FaceLattice(cube(d))
    claims = [
        _claim(f"s(C_{d})", 3**d, L.s),
        _claim(f"euler(C_{d})", True, L.euler_ok),
    ]
    if d <= 4:
        census = special_census(L.polytope, L)
        claims.append(_claim(f"census total C_{d}", 3**d, len(census.records)))
        claims.append(_claim(f"census injective C_{d}", True, census.injective))
    if figures is not None:
        from .plotting import plot_f_vector

        plot_f_vector(L, figures / f"cube{d}_fvector.png", f"$C_{d}$: s = {L.s}")
    return claims


def reproduce_fig2(figures: Path | None = None) -> list:
    P = fig2()
    L = FaceLattice(P)
    H = section(P, [0, 1])
    LH = FaceLattice(H)
    claims = [
        _claim("fig2 unconditional", True, is_unconditional(P)),
        _claim("fig2 f-vector", (8, 14, 8), L.f_vector),
        _claim("fig2 s", 31, L.s),
        _claim("fig2 section vertices", 6, H.n_vertices),
        _claim("fig2 section s", 13, LH.s),
        _claim("fig2 s < 3 s(section)", f"31 < {3 * 13}", f"{L.s} < {3 * LH.s}", L.s < 3 * LH.s),
    ]
    if figures is not None:
        from .plotting import plot_f_vector, plot_polytope_3d

        plot_polytope_3d(L, figures / "fig2_polytope.png", LH, axis=2, title="s(P) = 31, section s = 13")
        plot_f_vector(L, figures / "fig2_fvector.png")
    return claims


def reproduce_pi3(figures: Path | None = None) -> list:
    P = pi3_clique_polytope()
    L = FaceLattice(P)
    G = path_graph(4)
    verdict = classify_minimizer(P, L)
    witness = is_cograph(G)
    path = str(tuple(k + 1 for k in witness.path)) if isinstance(witness, P4Witness) else "cograph"
    claims = [
        _claim("C(Pi3) s", 97, L.s),
        _claim("C(Pi3) s > 3^4", "97 > 81", f"{L.s} > {3**4}", L.s > 81),
        _claim("Pi3 induced P4", "(1, 2, 3, 4)", path),
        _claim("C(Pi3) minimizer", False, not isinstance(verdict, NotMinimizer)),
    ]
    if figures is not None:
        from .plotting import plot_f_vector, plot_graph

        plot_graph(G, figures / "pi3_graph.png", "path on four vertices")
        plot_f_vector(L, figures / "pi3_fvector.png", f"$C(\\Pi_3)$: s = {L.s}")
    return claims


def _leaves(e) -> list:
    if isinstance(e, Leaf):
        return [e]
    return [x for c in e.children for x in _leaves(c)]


def reproduce_hanner(text: str, figures: Path | None = None) -> list:
    expr = parse_expr(text)
    P = hanner_from_expr(expr)
    d = P.dim
    L = FaceLattice(P)
    verdict = classify_minimizer(P, L)
    tree = expr_to_cotree(expr)
    claims = [
        _claim(f"s({expr_str(expr)})", 3**d, L.s),
        _claim("classified as minimizer", True, isinstance(verdict, MinimizerClassification)),
    ]
    if isinstance(verdict, MinimizerClassification):
        claims.append(_claim("cotree round trip", cotree_str(tree), cotree_str(verdict.cotree), tree == verdict.cotree))
        claims.append(_claim("exact reconstruction", True, verdict.reconstruct() == P))
    if all(leaf.a == leaf.b for leaf in _leaves(expr)):
        m = mahler(P)
        expected = Fraction(4**d, factorial(d))
        claims.append(_claim("mahler", format_rat(expected), format_rat(m)))
    if figures is not None and isinstance(verdict, MinimizerClassification):
        from .plotting import plot_graph

        plot_graph(verdict.graph, figures / "hanner_graph.png", "coordinate graph")
    return claims


def reproduce_mahler(d: int, figures: Path | None = None) -> list:
    _check_d(d)
    claims = []
    rows = []
    for k in range(1, d + 1):
        expected = Fraction(4**k, factorial(k))
        got = mahler(cube(k))
        rows.append((k, got, expected))
        claims.append(_claim(f"M(C_{k})", format_rat(expected), format_rat(got)))
    claims.append(_claim(f"M(X_{d})", format_rat(Fraction(4**d, factorial(d))), format_rat(mahler(cross_polytope(d)))))
    if figures is not None:
        from .plotting import plot_mahler

        plot_mahler(rows, figures / "mahler.png")
    return claims


TARGETS = ("cube", "fig2", "pi3", "hanner", "mahler")


def reproduce(target: str, arg: str | None = None, figures=None) -> list:
    figures = Path(figures) if figures is not None else None
    if figures is not None:
        figures.mkdir(parents=True, exist_ok=True)
    if target == "cube":
        return reproduce_cube(int(arg or 3), figures)
    if target == "fig2":
        return reproduce_fig2(figures)
    if target == "pi3":
        return reproduce_pi3(figures)
    if target == "hanner":
        if not arg:
            raise UnknownTarget("hanner needs an expression")
        return reproduce_hanner(arg, figures)
    if target == "mahler":
        return reproduce_mahler(int(arg or 3), figures)
    raise UnknownTarget(f"unknown target {target!r}; choose from {', '.join(TARGETS)}")


__all__ = ["Claim", "reproduce", "TARGETS"]
