"""Exact-arithmetic workbench for face counts of symmetric polytopes."""

from .errors import KalaiLabError
from .exact import Rat, rat, sign_vectors
from .hanner import (
    Graph,
    build_gp,
    classify_minimizer,
    clique_polytope,
    hanner_from_expr,
    is_cograph,
    parse_expr,
)
from .harness import build_complement_family, partition_faces, verify_unconditional_bound
from .lab import classify, is_centrally_symmetric, is_locally_anti_blocking, is_proper, is_unconditional
from .lattice import Face, FaceLattice, dual_face, enumerate_faces
from .polytope import (
    Polytope,
    cross_polytope,
    cube,
    free_sum,
    halfspace_scale,
    hull,
    mahler,
    polar,
    product,
    section,
    volume,
)
from .special import special_census, special_point

__version__ = "0.1.0"
