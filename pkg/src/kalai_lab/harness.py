"""Checkable versions of the two counting arguments.

``partition_faces`` splits the non-empty faces of an unconditional polytope
by how they meet the face F maximizing one coordinate and its antipode -F.
``build_complement_family`` produces one relative complement of F for every
interval [lo, hi] with lo in (empty, F] and hi in [F, P); these are pairwise
distinct and all land in the class of faces meeting F but not -F.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InvariantViolation, NotUnconditional
from .lab import is_unconditional
from .lattice import Face, FaceLattice, complement_in_interval, dual_face
from .polytope import Polytope, section


def argmax_face(L: FaceLattice, i: int) -> Face:
    """The face of P on which the i-th coordinate is maximal."""
    P = L.polytope
    top = max(v[i] for v in P.vertices)
    bits = 0
    for k, v in enumerate(P.vertices):
        if v[i] == top:
            bits |= 1 << k
    return L.face(bits)


def antipode(L: FaceLattice, F: Face) -> Face:
    P = L.polytope
    bits = 0
    for k in F.vertex_ids():
        bits |= 1 << P.vertex_index[tuple(-c for c in P.vertices[k])]
    return L.face(bits)


def reflect(L: FaceLattice, F: Face, i: int) -> Face:
    P = L.polytope
    bits = 0
    for k in F.vertex_ids():
        v = P.vertices[k]
        bits |= 1 << P.vertex_index[v[:i] + (-v[i],) + v[i + 1:]]
    return L.face(bits)


@dataclass
class PartitionReport:
    axis: int
    face_F: Face
    sizes: tuple  # (|S_+|, |S_0|, |S_-|)
    bound: int
    complements_found: int
    all_in_S_plus: bool
    n_h_symmetric: int
    s_section: int
    s_F: int
    s_dual_F: int

    @property
    def passed(self) -> bool:
        return (
            min(self.sizes) >= self.bound
            and self.complements_found >= self.bound
            and self.all_in_S_plus
            and self.complements_found == self.s_F * self.s_dual_F
            and self.sizes[1] >= self.n_h_symmetric >= self.s_section
        )

    def to_dict(self) -> dict:
        return {
            "axis": self.axis + 1,
            "face_F": {"id": self.face_F.index, "dim": self.face_F.dim, "vertices": [k + 1 for k in self.face_F.vertex_ids()]},
            "sizes": {"S_plus": self.sizes[0], "S_0": self.sizes[1], "S_minus": self.sizes[2]},
            "bound": self.bound,
            "complements_found": self.complements_found,
            "all_in_S_plus": self.all_in_S_plus,
            "h_symmetric_faces": self.n_h_symmetric,
            "s_section": self.s_section,
            "s_F": self.s_F,
            "s_dual_F": self.s_dual_F,
            "passed": self.passed,
        }


def _require_unconditional(P: Polytope) -> None:
    if not is_unconditional(P):
        raise NotUnconditional("the complemented-lattice argument needs an unconditional polytope")


def build_complement_family(L: FaceLattice, F: Face) -> list:
    """One complement of F in every interval [lo, hi], lo in (empty, F], hi in [F, P)."""
    if F.bits == 0 or F == L.top:
        raise ValueError("F must be a non-empty proper face")
    lows = L.interval(L.bottom, F, open_lo=True)
    highs = L.interval(F, L.top, open_hi=True)
    family = []
    for lo in lows:
        for hi in highs:
            G = complement_in_interval(L, F, lo, hi)
            if L.meet(F, G) != lo or L.join(F, G) != hi:
                raise InvariantViolation("complement does not realise its interval")
            family.append(G)
    if len({G.index for G in family}) != len(family):
        raise InvariantViolation("complements of distinct intervals coincide")
    return family


def partition_faces(P: Polytope, i: int, lattice: FaceLattice | None = None) -> PartitionReport:
    _require_unconditional(P)
    L = lattice if lattice is not None else FaceLattice(P)
    d = P.dim
    F = argmax_face(L, i)
    negF = antipode(L, F)
    s_plus = s_zero = s_minus = 0
    plus_ids = set()
    n_sym = 0
    for G in L.faces:
        if G.bits == 0:
            continue
        hits_f = bool(G.bits & F.bits)
        hits_neg = bool(G.bits & negF.bits)
        if hits_f and not hits_neg:
            s_plus += 1
            plus_ids.add(G.index)
        elif hits_neg and not hits_f:
            s_minus += 1
        else:
            s_zero += 1
        if reflect(L, G, i) == G:
            n_sym += 1
    if s_plus + s_zero + s_minus != L.s:
        raise InvariantViolation("partition does not cover the face lattice")
    family = build_complement_family(L, F)
    s_F = len(L.interval(L.bottom, F, open_lo=True))
    s_dual_F = len(L.interval(F, L.top, open_hi=True))
    LD = L.polar_lattice
    if len(LD.interval(LD.bottom, dual_face(L, F), open_lo=True)) != s_dual_F:
        raise InvariantViolation("upper interval of F differs from the face count of its dual face")
    s_section = FaceLattice(section(P, [k for k in range(d) if k != i])).s if d > 1 else 1
    return PartitionReport(
        axis=i,
        face_F=F,
        sizes=(s_plus, s_zero, s_minus),
        bound=3 ** (d - 1),
        complements_found=len(family),
        all_in_S_plus=all(G.index in plus_ids for G in family),
        n_h_symmetric=n_sym,
        s_section=s_section,
        s_F=s_F,
        s_dual_F=s_dual_F,
    )


@dataclass
class UnconditionalReport:
    d: int
    s: int
    partitions: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.partitions) and self.s >= 3**self.d

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "s": self.s,
            "bound": 3**self.d,
            "partitions": [r.to_dict() for r in self.partitions],
            "passed": self.passed,
        }


def verify_unconditional_bound(P: Polytope, lattice: FaceLattice | None = None) -> UnconditionalReport:
    """Run the partition argument along every axis and compare with the exact face count."""
    _require_unconditional(P)
    L = lattice if lattice is not None else FaceLattice(P)
    report = UnconditionalReport(P.dim, L.s)
    for i in range(P.dim):
        report.partitions.append(partition_faces(P, i, L))
    sums = {sum(r.sizes) for r in report.partitions}
    if sums != {L.s}:
        raise InvariantViolation("partition sizes disagree with s(P)")
    return report


def antipodal_complements_ok(L: FaceLattice) -> bool:
    """For centrally symmetric P: every proper non-empty F is complemented by -F."""
    for F in L.faces:
        if F.bits == 0 or F == L.top:
            continue
        G = antipode(L, F)
        if L.meet(F, G) != L.bottom or L.join(F, G) != L.top:
            return False
    return True
