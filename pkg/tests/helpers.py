"""Shared checks for the normal-cone and section invariants."""

from kalai_lab.dd import extreme_rays
from kalai_lab.exact import dot
from kalai_lab.lattice import FaceLattice, normal_cone_generators, relint_point
from kalai_lab.polytope import embed, section


def tight_vertices(P, p):
    """Vertex bitset of the smallest face of P containing the point p."""
    bits = P.all_vertices
    for (a, b), inc in zip(P.facets, P.incidence):
        if dot(a, p) == b:
            bits &= inc
    return bits


def cone_meet_subspace(gens, J, d):
    """Generators of cone(gens) intersected with the coordinate subspace on J, in J-coordinates."""
    m = len(gens)
    rows = [[-1 if c == k else 0 for c in range(m)] for k in range(m)]
    for i in range(d):
        if i not in J:
            rows.append([a[i] for a in gens])
            rows.append([-a[i] for a in gens])
    rays = extreme_rays(rows, m)
    return [tuple(sum(lam * a[j] for lam, a in zip(ray, gens)) for j in J) for ray, _ in rays]


def opposite_sign_axes(verts):
    d = len(verts[0])
    return [i for i in range(d) if any(v[i] > 0 for v in verts) and any(v[i] < 0 for v in verts)]


def normals_vanish(P, L=None):
    """Every normal-cone generator of F is zero on axes where F has vertices of both signs."""
    L = L or FaceLattice(P)
    for F in L.faces[1:-1]:
        axes = opposite_sign_axes(P.vertices_of(F.bits))
        for a in normal_cone_generators(P, F):
            if any(a[i] != 0 for i in axes):
                return False
    return True


def normal_cones_restrict(P, J, L=None):
    """N_P(p) meets R^J in N_{P_J}(p) for relative-interior points p of the faces of P_J."""
    from kalai_lab.dd import in_cone

    d = P.dim
    L = L or FaceLattice(P)
    S = section(P, J)
    LS = FaceLattice(S)
    for G in LS.faces[1:-1]:
        p = embed(relint_point(S, G), J, d)
        F = L.face(L.closure(tight_vertices(P, p)))
        full = normal_cone_generators(P, F)
        small = normal_cone_generators(S, G)
        meet = cone_meet_subspace(full, J, d)
        if not all(in_cone(g, small) for g in meet):
            return False
        if not all(in_cone(g, meet) for g in small):
            return False
    return True
