"""Exact full-dimensional polytopes with paired vertex and facet descriptions.

Every :class:`Polytope` is canonical: vertices are sorted lexicographically,
facet normals are primitive integer vectors, facets are sorted by
``(normal, offset)``, and ``incidence[f]`` is a bitmask over vertex indices.
Two polytopes are therefore equal exactly when they are the same set.

Conversions in both directions go through :func:`kalai_lab.dd.extreme_rays`:

* V -> H: facets of ``conv(V)`` are the extreme rays of the cone
  ``{(a, b) : <a, v> - b <= 0 for all v in V}``;
* H -> V: vertices of ``{x : Ax <= b}`` are the extreme rays with ``t > 0``
  of ``{(x, t) : Ax - bt <= 0, t >= 0}``; a ray with ``t = 0`` is a recession
  direction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import factorial, lcm
from typing import Iterable, Sequence

from . import dd
from .errors import DegenerateInput, NotLocallyAntiBlocking, OriginNotInterior, Unbounded
from .exact import det, dot, format_rat, parse_rat, primitive_integer, rat, vec

Facet = tuple  # (normal: tuple[int, ...], offset: Fraction)


def _scale_row(values: Sequence[Fraction]) -> tuple:
    den = 1
    for c in values:
        den = lcm(den, c.denominator)
    return tuple(int(c * den) for c in values)


def _canonical_facet(normal: Sequence, offset) -> Facet:
    ints = primitive_integer(normal)
    # primitive_integer divides by a positive factor; recover it from any nonzero entry
    k = next(i for i, c in enumerate(ints) if c != 0)
    factor = Fraction(normal[k]) / ints[k]
    return ints, Fraction(offset) / factor


@dataclass(frozen=True, eq=True)
class Polytope:
    dim: int
    vertices: tuple
    facets: tuple
    incidence: tuple = field(compare=False, repr=False)

    def __post_init__(self):
        if any(len(v) != self.dim for v in self.vertices):
            raise ValueError("vertex length differs from the ambient dimension")

    @cached_property
    def vertex_index(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_facets(self) -> int:
        return len(self.facets)

    @property
    def all_vertices(self) -> int:
        return (1 << len(self.vertices)) - 1

    def contains(self, x: Sequence) -> bool:
        return all(dot(a, x) <= b for a, b in self.facets)

    def interior_contains(self, x: Sequence) -> bool:
        return all(dot(a, x) < b for a, b in self.facets)

    def vertices_of(self, bits: int) -> list:
        return [v for i, v in enumerate(self.vertices) if bits >> i & 1]

    def to_dict(self, with_facets: bool = True) -> dict:
        out = {
            "dim": self.dim,
            "vertices": [[format_rat(c) for c in v] for v in self.vertices],
        }
        if with_facets:
            out["facets"] = [
                {"normal": [str(c) for c in a], "offset": format_rat(b)} for a, b in self.facets
            ]
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "Polytope":
        d = int(data["dim"])
        verts = [tuple(parse_rat(str(c)) for c in v) for v in data["vertices"]]
        P = hull(d, verts)
        if "facets" in data:
            given = sorted(
                _canonical_facet([parse_rat(str(c)) for c in f["normal"]], parse_rat(str(f["offset"])))
                for f in data["facets"]
            )
            if tuple(given) != P.facets:
                raise DegenerateInput("facet list does not match the hull of the given vertices")
        return P

    def __repr__(self) -> str:
        return f"Polytope(dim={self.dim}, n_vertices={self.n_vertices}, n_facets={self.n_facets})"


def _assemble(dim: int, vertices: Iterable, facets: Iterable) -> Polytope:
    """Build a canonical Polytope from descriptions already known to be irredundant."""
    verts = tuple(sorted(set(tuple(v) for v in vertices)))
    facs = tuple(sorted(set(_canonical_facet(a, b) for a, b in facets)))
    incidence = []
    for a, b in facs:
        bits = 0
        for i, v in enumerate(verts):
            s = dot(a, v)
            if s == b:
                bits |= 1 << i
            elif s > b:
                raise DegenerateInput("vertex violates a facet inequality")
        incidence.append(bits)
    return Polytope(dim, verts, facs, tuple(incidence))


def hull(dim: int, points: Iterable[Sequence]) -> Polytope:
    """Convex hull of a finite point set that affinely spans R^dim."""
    pts = sorted(set(vec(p) for p in points))
    if dim < 1:
        raise DegenerateInput("dimension must be at least 1")
    if any(len(p) != dim for p in pts):
        raise ValueError("point length differs from dim")
    if len(pts) < dim + 1:
        raise DegenerateInput(f"{len(pts)} points cannot span R^{dim}")
    rows = [_scale_row(list(p) + [Fraction(-1)]) for p in pts]
    try:
        rays = dd.extreme_rays(rows, dim + 1)
    except dd.NotPointed as exc:
        raise DegenerateInput("points do not affinely span the ambient space") from exc
    facets = []
    tight = [0] * len(pts)
    for f, (ray, zero) in enumerate(rays):
        normal, offset = ray[:dim], ray[dim]
        if all(c == 0 for c in normal):
            continue
        facets.append((normal, Fraction(offset)))
        for i in range(len(pts)):
            if zero >> i & 1:
                tight[i] |= 1 << f
    # a point is a vertex iff no other point is tight on a superset of its facets
    verts = []
    for i, p in enumerate(pts):
        ti = tight[i]
        if ti == 0:
            continue
        if any(j != i and (ti & tj) == ti for j, tj in enumerate(tight)):
            continue
        verts.append(p)
    return _assemble(dim, verts, facets)


def from_inequalities(dim: int, facets: Iterable[tuple]) -> Polytope:
    """The polytope {x : <a, x> <= b} for the given (a, b) pairs."""
    rows = []
    for a, b in facets:
        a = vec(a)
        if len(a) != dim:
            raise ValueError("normal length differs from dim")
        rows.append(_scale_row(list(a) + [-rat(b)]))
    rows.append(tuple([0] * dim + [-1]))
    try:
        rays = dd.extreme_rays(rows, dim + 1)
    except dd.NotPointed as exc:
        raise Unbounded("inequality normals do not span the ambient space") from exc
    verts = []
    for ray, _ in rays:
        t = ray[dim]
        if t == 0:
            raise Unbounded(f"recession direction {ray[:dim]}")
        verts.append(tuple(Fraction(c, t) for c in ray[:dim]))
    if not verts:
        raise DegenerateInput("inequality system is infeasible")
    return hull(dim, verts)


# --- basic families -----------------------------------------------------


def segment(a, b) -> Polytope:
    """The segment [-a, b] in R^1 (a, b > 0 for a proper segment)."""
    a, b = rat(a), rat(b)
    return _assemble(1, [(-a,), (b,)], [((1,), b), ((-1,), a)])


def cube(d: int) -> Polytope:
    P = segment(1, 1)
    for _ in range(d - 1):
        P = product(P, segment(1, 1))
    return P


def cross_polytope(d: int) -> Polytope:
    P = segment(1, 1)
    for _ in range(d - 1):
        P = free_sum(P, segment(1, 1))
    return P


# --- constructions ------------------------------------------------------


def is_proper(P: Polytope) -> bool:
    return all(b > 0 for _, b in P.facets)


def polar(P: Polytope) -> Polytope:
    """Polar dual {y : <x, y> <= 1 for all x in P}."""
    if not is_proper(P):
        raise OriginNotInterior("polar needs the origin in the interior")
    verts = [tuple(Fraction(c) / b for c in a) for a, b in P.facets]
    facets = [(v, Fraction(1)) for v in P.vertices]
    return _assemble(P.dim, verts, facets)


def product(P: Polytope, Q: Polytope) -> Polytope:
    zp, zq = (0,) * P.dim, (0,) * Q.dim
    verts = [v + w for v in P.vertices for w in Q.vertices]
    facets = [(a + zq, b) for a, b in P.facets] + [(zp + a, b) for a, b in Q.facets]
    return _assemble(P.dim + Q.dim, verts, facets)


def free_sum(P: Polytope, Q: Polytope) -> Polytope:
    """conv(P x {0} u {0} x Q), for P and Q both containing 0 in the interior."""
    if not (is_proper(P) and is_proper(Q)):
        raise OriginNotInterior("free sum needs both summands proper")
    zp = (Fraction(0),) * P.dim
    zq = (Fraction(0),) * Q.dim
    verts = [v + zq for v in P.vertices] + [zp + w for w in Q.vertices]
    facets = [
        (tuple(Fraction(c) / b for c in a) + tuple(Fraction(c) / bq for c in aq), Fraction(1))
        for a, b in P.facets
        for aq, bq in Q.facets
    ]
    return _assemble(P.dim + Q.dim, verts, facets)


def _sorted_index(J: Iterable[int], d: int) -> list:
    J = sorted(set(J))
    if not J:
        raise ValueError("index set must be non-empty")
    if J[0] < 0 or J[-1] >= d:
        raise ValueError(f"index set {J} out of range for dimension {d}")
    return J


def section(P: Polytope, J: Iterable[int]) -> Polytope:
    """P intersected with the coordinate subspace on J, in coordinates J (ascending)."""
    J = _sorted_index(J, P.dim)
    facets = [(tuple(a[i] for i in J), b) for a, b in P.facets]
    try:
        return from_inequalities(len(J), facets)
    except Unbounded as exc:  # cannot happen for a bounded P; keep the contract explicit
        raise DegenerateInput(str(exc)) from exc


def projection(P: Polytope, J: Iterable[int]) -> Polytope:
    J = _sorted_index(J, P.dim)
    return hull(len(J), [tuple(v[i] for i in J) for v in P.vertices])


def embed(x: Sequence, J: Iterable[int], d: int) -> tuple:
    """Inverse of coordinate restriction: place x into R^d on the coordinates J."""
    out = [Fraction(0)] * d
    for c, i in zip(x, sorted(J)):
        out[i] = c
    return tuple(out)


def permute_coordinates(P: Polytope, perm: Sequence[int]) -> Polytope:
    """Polytope whose coordinate k is coordinate perm[k] of P."""
    verts = [tuple(v[p] for p in perm) for v in P.vertices]
    facets = [(tuple(a[p] for p in perm), b) for a, b in P.facets]
    return _assemble(P.dim, verts, facets)


def _scale_map(x: Sequence, plus: Sequence, minus: Sequence) -> tuple:
    return tuple(c * (p if c > 0 else m) for c, p, m in zip(x, plus, minus))


def scale_coordinates(P: Polytope, plus: Sequence, minus: Sequence) -> Polytope:
    """Apply one halfspace scaling per coordinate simultaneously.

    Coordinate i is multiplied by ``plus[i]`` where positive and by
    ``minus[i]`` where non-positive.  The scalings act on different
    coordinates and commute, so this equals their composition.
    """
    from .lab import is_locally_anti_blocking

    plus = [rat(c) for c in plus]
    minus = [rat(c) for c in minus]
    if any(c <= 0 for c in plus + minus):
        raise ValueError("scaling factors must be positive")
    if all(p == 1 for p in plus) and all(m == 1 for m in minus):
        return P
    if not is_locally_anti_blocking(P):
        raise NotLocallyAntiBlocking("halfspace scaling is only defined here for LAB polytopes")
    # coordinate-zeroed vertices are fixed points that lie in P by the LAB property
    pts = {_scale_map(v, plus, minus) for v in P.vertices}
    for i in range(P.dim):
        if plus[i] != 1 or minus[i] != 1:
            pts |= {_scale_map(v[:i] + (Fraction(0),) + v[i + 1:], plus, minus) for v in P.vertices}
    image = hull(P.dim, pts)
    inv_plus = [1 / c for c in plus]
    inv_minus = [1 / c for c in minus]
    for w in image.vertices:
        if not P.contains(_scale_map(w, inv_plus, inv_minus)):
            raise NotLocallyAntiBlocking("scaled hull is not the image of P")
    if not is_locally_anti_blocking(image):
        raise NotLocallyAntiBlocking("scaled image lost the LAB property")
    return image


def halfspace_scale(P: Polytope, i: int, alpha_plus, alpha_minus) -> Polytope:
    """Scale the positive side of coordinate i by alpha_plus and the rest by alpha_minus."""
    plus = [Fraction(1)] * P.dim
    minus = [Fraction(1)] * P.dim
    plus[i] = rat(alpha_plus)
    minus[i] = rat(alpha_minus)
    return scale_coordinates(P, plus, minus)


def axis_extents(P: Polytope) -> list:
    """Pairs (a_i, b_i) with pi_i(P) = [-a_i, b_i]."""
    return [
        (-min(v[i] for v in P.vertices), max(v[i] for v in P.vertices)) for i in range(P.dim)
    ]


def normalize(P: Polytope) -> Polytope:
    """Halfspace-scale P so every axis projection becomes [-1, 1]."""
    return normalize_with_factors(P)[0]


def normalize_with_factors(P: Polytope) -> tuple:
    """Return (normalized P, [(a_i, b_i)]) where pi_i(P) = [-a_i, b_i]."""
    if not is_proper(P):
        raise OriginNotInterior("normalization needs a proper polytope")
    ext = axis_extents(P)
    plus = [1 / b for _, b in ext]
    minus = [1 / a for a, _ in ext]
    return scale_coordinates(P, plus, minus), ext


# --- volume -------------------------------------------------------------


def facets_of_face(P: Polytope, bits: int) -> list:
    """Vertex bitsets of the facets of the face with vertex bitset ``bits``."""
    cands = {bits & inc for inc in P.incidence}
    cands.discard(bits)
    cands.discard(0)
    return [c for c in cands if not any(c != o and (c & o) == c for o in cands)]


def _pulling(P: Polytope, bits: int, dim: int, memo: dict) -> list:
    key = bits
    if key in memo:
        return memo[key]
    if dim == 0:
        out = [[(bits & -bits).bit_length() - 1]]
    else:
        apex = (bits & -bits).bit_length() - 1
        out = []
        for g in facets_of_face(P, bits):
            if g >> apex & 1:
                continue
            for s in _pulling(P, g, dim - 1, memo):
                out.append([apex] + s)
    memo[key] = out
    return out


def triangulate(P: Polytope) -> tuple:
    """Return (apex, simplices): every simplex is the apex plus d vertex indices."""
    d = P.dim
    if P.interior_contains((Fraction(0),) * d):
        apex = (Fraction(0),) * d
    else:
        n = len(P.vertices)
        apex = tuple(sum(v[i] for v in P.vertices) / n for i in range(d))
    memo: dict = {}
    simplices = []
    for inc in P.incidence:
        simplices.extend(_pulling(P, inc, d - 1, memo))
    return apex, simplices


def volume(P: Polytope) -> Fraction:
    apex, simplices = triangulate(P)
    total = Fraction(0)
    for s in simplices:
        m = [[c - a for c, a in zip(P.vertices[k], apex)] for k in s]
        total += abs(det(m))
    return total / factorial(P.dim)


def mahler(P: Polytope) -> Fraction:
    return volume(P) * volume(polar(P))
