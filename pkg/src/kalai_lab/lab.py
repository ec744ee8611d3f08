"""Symmetry and anti-blocking predicates used as hypotheses by the face-count bounds.

Membership is always decided exactly from the H-representation.

Locally anti-blocking means pi_J(x) in P for every x in P and every J.  It is
enough to test pi_i(v) in P for every vertex v and single coordinate i:
pi_J is a composition of single-coordinate projections, each of which keeps
P inside itself once it keeps the vertices inside (pi_i is linear, so it maps
conv(V) onto conv(pi_i(V)) which lies in P by convexity).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .polytope import Polytope
from .polytope import is_proper as _is_proper


@dataclass
class ClassificationReport:
    centrally_symmetric: bool
    unconditional: bool
    locally_anti_blocking: bool
    proper: bool
    witness: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "centrally_symmetric": self.centrally_symmetric,
            "unconditional": self.unconditional,
            "locally_anti_blocking": self.locally_anti_blocking,
            "proper": self.proper,
            "witness": self.witness,
        }


def _flip(v: tuple, i: int) -> tuple:
    return v[:i] + (-v[i],) + v[i + 1:]


def _zero(v: tuple, i: int) -> tuple:
    return v[:i] + (Fraction(0),) + v[i + 1:]


def central_symmetry_witness(P: Polytope) -> Optional[tuple]:
    verts = P.vertex_index
    for v in P.vertices:
        if tuple(-c for c in v) not in verts:
            return v
    return None


def unconditional_witness(P: Polytope) -> Optional[tuple]:
    """A (vertex, axis) pair whose reflection is not a vertex, or None."""
    verts = P.vertex_index
    for v in P.vertices:
        for i in range(P.dim):
            if _flip(v, i) not in verts:
                return v, i
    return None


def lab_witness(P: Polytope) -> Optional[tuple]:
    """A (vertex, axis) pair with pi_i(vertex) outside P, or None."""
    for v in P.vertices:
        for i in range(P.dim):
            if v[i] != 0 and not P.contains(_zero(v, i)):
                return v, i
    return None


def is_centrally_symmetric(P: Polytope) -> bool:
    return central_symmetry_witness(P) is None


def is_unconditional(P: Polytope) -> bool:
    return unconditional_witness(P) is None


def is_locally_anti_blocking(P: Polytope) -> bool:
    return lab_witness(P) is None


def is_proper(P: Polytope) -> bool:
    return _is_proper(P)


def classify(P: Polytope) -> ClassificationReport:
    from .exact import format_rat

    def fmt(v):
        return [format_rat(c) for c in v]

    witness = {}
    cs = central_symmetry_witness(P)
    if cs is not None:
        witness["centrally_symmetric"] = {"vertex": fmt(cs)}
    un = unconditional_witness(P)
    if un is not None:
        witness["unconditional"] = {"vertex": fmt(un[0]), "axis": un[1] + 1}
    lab = lab_witness(P)
    if lab is not None:
        witness["locally_anti_blocking"] = {"vertex": fmt(lab[0]), "axis": lab[1] + 1}
    proper = _is_proper(P)
    if not proper:
        a, b = next((a, b) for a, b in P.facets if b <= 0)
        witness["proper"] = {"facet_normal": list(a), "offset": format_rat(b)}
    return ClassificationReport(
        centrally_symmetric=cs is None,
        unconditional=un is None,
        locally_anti_blocking=lab is None,
        proper=proper,
        witness=witness,
    )
