"""Face lattices computed from the facet-vertex incidence alone.

Faces are identified by the bitset of vertices they contain.  Non-empty
faces are exactly the intersections of sets of facets (the empty
intersection being P), so a breadth-first closure of facet bitsets under
intersection finds all of them.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import ImproperFace, InvariantViolation, OriginNotInterior
from .polytope import Polytope, is_proper, polar


@dataclass(frozen=True, order=False)
class Face:
    index: int
    bits: int
    dim: int

    def vertex_ids(self) -> list:
        return [i for i in range(self.bits.bit_length()) if self.bits >> i & 1]

    def __len__(self) -> int:
        return self.bits.bit_count()


def _sort_key(bits: int, dim: int) -> tuple:
    return dim, tuple(i for i in range(bits.bit_length()) if bits >> i & 1)


class FaceLattice:
    """All faces of a polytope, ordered by (dimension, sorted vertex ids)."""

    def __init__(self, P: Polytope):
        self.polytope = P
        top = P.all_vertices
        found = {0, top}
        queue = deque(set(P.incidence))
        found.update(P.incidence)
        while queue:
            f = queue.popleft()
            for g in P.incidence:
                h = f & g
                if h and h not in found:
                    found.add(h)
                    queue.append(h)

        by_size = sorted(found, key=int.bit_count)
        dims: dict = {}
        for i, f in enumerate(by_size):
            best = -2
            for g in by_size[:i]:
                if g != f and (g & f) == g and dims[g] > best:
                    best = dims[g]
            dims[f] = best + 1
        ordered = sorted(found, key=lambda b: _sort_key(b, dims[b]))
        self.faces = [Face(i, b, dims[b]) for i, b in enumerate(ordered)]
        self._by_bits = {f.bits: f for f in self.faces}
        self.bottom = self._by_bits[0]
        self.top = self._by_bits[top]

        by_dim: dict = {}
        for f in self.faces:
            by_dim.setdefault(f.dim, []).append(f)
        self.hasse = []
        for f in self.faces:
            for g in by_dim.get(f.dim + 1, []):
                if (f.bits & g.bits) == f.bits:
                    self.hasse.append((f.index, g.index))

    def __len__(self) -> int:
        return len(self.faces)

    def __iter__(self):
        return iter(self.faces)

    @property
    def dim(self) -> int:
        return self.polytope.dim

    @property
    def s(self) -> int:
        """Number of non-empty faces, P included."""
        return len(self.faces) - 1

    @cached_property
    def f_vector(self) -> tuple:
        counts = [0] * self.dim
        for f in self.faces:
            if 0 <= f.dim < self.dim:
                counts[f.dim] += 1
        return tuple(counts)

    @property
    def euler_ok(self) -> bool:
        d = self.dim
        return sum((-1) ** i * c for i, c in enumerate(self.f_vector)) == 1 + (-1) ** (d - 1)

    def face(self, bits: int) -> Face:
        try:
            return self._by_bits[bits]
        except KeyError:
            raise KeyError(f"vertex set {bin(bits)} is not a face") from None

    def faces_of_dim(self, k: int) -> list:
        return [f for f in self.faces if f.dim == k]

    def closure(self, bits: int) -> int:
        """Vertex bitset of the smallest face containing the given vertices."""
        if bits == 0:
            return 0
        out = self.polytope.all_vertices
        for inc in self.polytope.incidence:
            if (bits & inc) == bits:
                out &= inc
        return out

    def meet(self, F: Face, G: Face) -> Face:
        return self._by_bits[F.bits & G.bits]

    def join(self, F: Face, G: Face) -> Face:
        return self._by_bits[self.closure(F.bits | G.bits)]

    def leq(self, F: Face, G: Face) -> bool:
        return (F.bits & G.bits) == F.bits

    def interval(self, lo: Face, hi: Face, open_lo: bool = False, open_hi: bool = False) -> list:
        out = []
        for g in self.faces:
            if self.leq(lo, g) and self.leq(g, hi):
                if open_lo and g == lo:
                    continue
                if open_hi and g == hi:
                    continue
                out.append(g)
        return out

    @cached_property
    def polar_lattice(self) -> "FaceLattice":
        return FaceLattice(polar(self.polytope))


def enumerate_faces(P: Polytope) -> FaceLattice:
    return FaceLattice(P)


def dual_face(L: FaceLattice, F: Face) -> Face:
    """The face of the polar dual whose vertices are the normals of facets containing F."""
    P = L.polytope
    if not is_proper(P):
        raise OriginNotInterior("dual faces need the origin in the interior")
    if F.bits == 0 or F.bits == P.all_vertices:
        raise ImproperFace("dual_face is defined on non-empty proper faces")
    LD = L.polar_lattice
    Q = LD.polytope
    bits = 0
    for (a, b), inc in zip(P.facets, P.incidence):
        if (F.bits & inc) == F.bits:
            w = tuple(Fraction(c) / b for c in a)
            bits |= 1 << Q.vertex_index[w]
    return LD.face(bits)


def complement_in_interval(L: FaceLattice, F: Face, lo: Face, hi: Face) -> Face:
    """First face G in lattice order with F meet G = lo and F join G = hi."""
    if not (L.leq(lo, F) and L.leq(F, hi)):
        raise ValueError("F must lie in the interval [lo, hi]")
    for G in L.interval(lo, hi):
        if L.meet(F, G) == lo and L.join(F, G) == hi:
            return G
    raise InvariantViolation("face lattice interval without a complement")


def normal_cone_generators(P: Polytope, F: Face) -> list:
    """Normals of the facets containing F; they generate the normal cone N_P(F)."""
    if F.bits == 0:
        raise ImproperFace("normal cone of the empty face")
    return [a for (a, _), inc in zip(P.facets, P.incidence) if (F.bits & inc) == F.bits]


def relint_point(P: Polytope, F: Face) -> tuple:
    """Vertex barycenter of F, which lies in its relative interior."""
    if F.bits == 0:
        raise ImproperFace("empty face has no relative interior")
    verts = P.vertices_of(F.bits)
    n = len(verts)
    return tuple(sum(v[i] for v in verts) / n for i in range(P.dim))
