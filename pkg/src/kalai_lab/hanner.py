"""Coordinate graphs of minimizers, cotrees, clique polytopes and Hanner expressions.

For a proper LAB polytope whose 2-dimensional coordinate sections are all
quadrilaterals, ``build_gp`` records which sections are axis-aligned
rectangles.  If the graph is a cograph, its cotree maps to a Hanner
expression: JOIN nodes become Cartesian products and UNION nodes become
free sums.
"""

from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import (
    InvariantViolation,
    NotLocallyAntiBlocking,
    NotProper,
    NotQuadrilateral,
    ReconstructionMismatch,
    SectionNotQuadrilateral,
    Unclassifiable,
)
from .exact import format_rat, parse_rat, rat
from .lab import is_locally_anti_blocking
from .lattice import FaceLattice
from .polytope import (
    Polytope,
    free_sum,
    hull,
    is_proper,
    normalize_with_factors,
    permute_coordinates,
    product,
    section,
    segment,
)

# --- graphs ---------------------------------------------------------------


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on 0..n-1; edges stored as sorted pairs."""

    n: int
    edges: frozenset = frozenset()

    def __post_init__(self):
        norm = frozenset(tuple(sorted(e)) for e in self.edges)
        for i, j in norm:
            if i == j or not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"bad edge {(i, j)} for n={self.n}")
        object.__setattr__(self, "edges", norm)

    def adjacent(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges

    def neighbors(self, i: int) -> set:
        return {j for j in range(self.n) if j != i and self.adjacent(i, j)}

    def complement(self) -> "Graph":
        return Graph(
            self.n,
            frozenset(e for e in itertools.combinations(range(self.n), 2) if e not in self.edges),
        )

    def induced(self, J: Iterable[int]) -> "Graph":
        """Induced subgraph on J, relabelled 0..|J|-1 in ascending order."""
        J = sorted(set(J))
        pos = {v: k for k, v in enumerate(J)}
        return Graph(len(J), frozenset((pos[i], pos[j]) for i, j in self.edges if i in pos and j in pos))

    def disjoint_union(self, other: "Graph") -> "Graph":
        shift = self.n
        return Graph(
            self.n + other.n,
            self.edges | frozenset((i + shift, j + shift) for i, j in other.edges),
        )

    def join(self, other: "Graph") -> "Graph":
        g = self.disjoint_union(other)
        cross = frozenset((i, self.n + j) for i in range(self.n) for j in range(other.n))
        return Graph(g.n, g.edges | cross)

    def is_complete(self) -> bool:
        return len(self.edges) == self.n * (self.n - 1) // 2

    def to_dict(self) -> dict:
        return {"n": self.n, "edges": [[i + 1, j + 1] for i, j in sorted(self.edges)]}

    @classmethod
    def from_dict(cls, data: dict) -> "Graph":
        return cls(int(data["n"]), frozenset((int(i) - 1, int(j) - 1) for i, j in data["edges"]))


def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset(itertools.combinations(range(n), 2)))


def path_graph(n: int) -> Graph:
    return Graph(n, frozenset((i, i + 1) for i in range(n - 1)))


# --- quadrilaterals and G_P ---------------------------------------------


class QuadType(enum.Enum):
    AXIS_ALIGNED = "axis-aligned"
    DIAMOND = "diamond"


def quad_classify(Q: Polytope) -> QuadType:
    if Q.dim != 2:
        raise ValueError("quad_classify expects a 2-polytope")
    if Q.n_vertices != 4:
        raise NotQuadrilateral(f"{Q.n_vertices} vertices")
    nonzero = [sum(1 for c in v if c != 0) for v in Q.vertices]
    if all(k == 2 for k in nonzero):
        return QuadType.AXIS_ALIGNED
    if all(k == 1 for k in nonzero):
        return QuadType.DIAMOND
    raise Unclassifiable(f"quadrilateral with mixed vertex pattern {Q.vertices}")


def build_gp(P: Polytope) -> Graph:
    edges = set()
    for i, j in itertools.combinations(range(P.dim), 2):
        S = section(P, (i, j))
        if S.n_vertices != 4:
            raise SectionNotQuadrilateral(i, j, S.n_vertices)
        if quad_classify(S) is QuadType.AXIS_ALIGNED:
            edges.add((i, j))
    return Graph(P.dim, frozenset(edges))


# --- cotrees --------------------------------------------------------------

UNION = "union"
JOIN = "join"


@dataclass(frozen=True)
class CoLeaf:
    label: int

    def leaves(self) -> list:
        return [self.label]


@dataclass(frozen=True)
class CoNode:
    kind: str
    children: tuple

    def leaves(self) -> list:
        return [x for c in self.children for x in c.leaves()]


Cotree = Union[CoLeaf, CoNode]


def canonical_cotree(t: Cotree) -> Cotree:
    """Merge same-kind children into their parent and sort children by smallest leaf."""
    if isinstance(t, CoLeaf):
        return t
    kids = []
    for c in t.children:
        c = canonical_cotree(c)
        if isinstance(c, CoNode) and c.kind == t.kind:
            kids.extend(c.children)
        else:
            kids.append(c)
    if len(kids) == 1:
        return kids[0]
    kids.sort(key=lambda c: min(c.leaves()))
    return CoNode(t.kind, tuple(kids))


def cotree_graph(t: Cotree) -> Graph:
    """The cograph encoded by t, on vertices 0..max label."""
    labels = t.leaves()
    n = max(labels) + 1
    edges = set()

    def walk(node):
        if isinstance(node, CoLeaf):
            return
        if node.kind == JOIN:
            groups = [c.leaves() for c in node.children]
            for a, b in itertools.combinations(groups, 2):
                for i in a:
                    for j in b:
                        edges.add((min(i, j), max(i, j)))
        for c in node.children:
            walk(c)

    walk(t)
    return Graph(n, frozenset(edges))


def cotree_str(t: Cotree) -> str:
    if isinstance(t, CoLeaf):
        return str(t.label + 1)
    return f"{t.kind}(" + ",".join(cotree_str(c) for c in t.children) + ")"


@dataclass(frozen=True)
class P4Witness:
    """Four vertices a-b-c-d inducing a path with exactly the edges ab, bc, cd."""

    path: tuple


def _components(G: Graph, verts: list) -> list:
    verts_set = set(verts)
    seen: set = set()
    comps = []
    for v in verts:
        if v in seen:
            continue
        comp = []
        stack = [v]
        seen.add(v)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in G.neighbors(u):
                if w in verts_set and w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def find_induced_p4(G: Graph, verts: Iterable[int] | None = None) -> P4Witness | None:
    """Brute-force search over 4-subsets for an induced path on four vertices."""
    verts = sorted(range(G.n) if verts is None else verts)
    for quad in itertools.combinations(verts, 4):
        for a, b, c, d in itertools.permutations(quad):
            if a > d:
                continue
            if (
                G.adjacent(a, b)
                and G.adjacent(b, c)
                and G.adjacent(c, d)
                and not G.adjacent(a, c)
                and not G.adjacent(b, d)
                and not G.adjacent(a, d)
            ):
                return P4Witness((a, b, c, d))
    return None


def _decompose(G: Graph, Gc: Graph, verts: list):
    if len(verts) == 1:
        return CoLeaf(verts[0])
    comps = _components(G, verts)
    if len(comps) > 1:
        kids = [_decompose(G, Gc, c) for c in comps]
        kind = UNION
    else:
        comps = _components(Gc, verts)
        if len(comps) == 1:
            return None
        kids = [_decompose(G, Gc, c) for c in comps]
        kind = JOIN
    if any(k is None for k in kids):
        return None
    return CoNode(kind, tuple(kids))


def is_cograph(G: Graph) -> Cotree | P4Witness:
    """Canonical cotree of G, or an induced P4 if G is not a cograph.

    The recursive complement-reducibility decomposition is cross-checked
    against a brute-force P4 search; disagreement is a bug.
    """
    if G.n == 0:
        raise ValueError("empty graph")
    tree = _decompose(G, G.complement(), list(range(G.n)))
    witness = find_induced_p4(G)
    if tree is None:
        if witness is None:
            raise InvariantViolation("decomposition failed on a P4-free graph")
        return witness
    if witness is not None:
        raise InvariantViolation(f"cotree found for a graph with induced P4 {witness.path}")
    tree = canonical_cotree(tree)
    if cotree_graph(tree) != G:
        raise InvariantViolation("cotree does not reproduce the graph")
    return tree


# --- clique polytopes -----------------------------------------------------


def cliques(G: Graph) -> list:
    """All non-empty cliques, by exhaustive subset search."""
    out = []
    for mask in range(1, 1 << G.n):
        J = [i for i in range(G.n) if mask >> i & 1]
        if all(G.adjacent(i, j) for i, j in itertools.combinations(J, 2)):
            out.append(J)
    return out


def clique_polytope(G: Graph) -> Polytope:
    """conv of all signed indicator vectors of cliques of G."""
    pts = set()
    for J in cliques(G):
        for signs in itertools.product((-1, 1), repeat=len(J)):
            x = [Fraction(0)] * G.n
            for i, s in zip(J, signs):
                x[i] = Fraction(s)
            pts.add(tuple(x))
    return hull(G.n, pts)


# --- Hanner expressions ---------------------------------------------------


@dataclass(frozen=True)
class Leaf:
    """The segment [-a, b]."""

    a: Fraction = Fraction(1)
    b: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "a", rat(self.a))
        object.__setattr__(self, "b", rat(self.b))
        if self.a <= 0 or self.b <= 0:
            raise ValueError("segment must contain 0 in its interior")

    @property
    def dim(self) -> int:
        return 1


@dataclass(frozen=True)
class Product:
    children: tuple

    @property
    def dim(self) -> int:
        return sum(c.dim for c in self.children)


@dataclass(frozen=True)
class FreeSum:
    children: tuple

    @property
    def dim(self) -> int:
        return sum(c.dim for c in self.children)


HannerExpr = Union[Leaf, Product, FreeSum]


def expr_str(e: HannerExpr) -> str:
    if isinstance(e, Leaf):
        return f"seg({format_rat(e.a)},{format_rat(e.b)})"
    name = "prod" if isinstance(e, Product) else "sum"
    return f"{name}(" + ",".join(expr_str(c) for c in e.children) + ")"


def dual_expr(e: HannerExpr) -> HannerExpr:
    """Expression of the polar dual: products and free sums swap, segments invert."""
    if isinstance(e, Leaf):
        return Leaf(1 / e.a, 1 / e.b)
    kids = tuple(dual_expr(c) for c in e.children)
    return FreeSum(kids) if isinstance(e, Product) else Product(kids)


_TOKEN = re.compile(r"\s*(?:(seg|prod|sum|dual)\b|([-+]?\d+(?:/\d+)?)|(.))")


def parse_expr(text: str) -> HannerExpr:
    """Parse the CLI expression language: seg(a,b), prod(...), sum(...), dual(e)."""
    tokens = []
    for m in _TOKEN.finditer(text):
        if m.group(0).strip() == "":
            continue
        tokens.append(m.group(1) or m.group(2) or m.group(3))
    pos = 0

    def expect(tok):
        nonlocal pos
        if pos >= len(tokens) or tokens[pos] != tok:
            got = tokens[pos] if pos < len(tokens) else "end of input"
            raise ValueError(f"expected {tok!r}, got {got!r}")
        pos += 1

    def parse():
        nonlocal pos
        if pos >= len(tokens):
            raise ValueError("unexpected end of expression")
        head = tokens[pos]
        pos += 1
        expect("(")
        if head == "seg":
            a = parse_rat(tokens[pos])
            pos += 1
            expect(",")
            b = parse_rat(tokens[pos])
            pos += 1
            expect(")")
            return Leaf(a, b)
        if head in ("prod", "sum"):
            kids = [parse()]
            while pos < len(tokens) and tokens[pos] == ",":
                pos += 1
                kids.append(parse())
            expect(")")
            if len(kids) == 1:
                return kids[0]
            return Product(tuple(kids)) if head == "prod" else FreeSum(tuple(kids))
        if head == "dual":
            inner = parse()
            expect(")")
            return dual_expr(inner)
        raise ValueError(f"unknown constructor {head!r}")

    e = parse()
    if pos != len(tokens):
        raise ValueError(f"trailing input at token {tokens[pos]!r}")
    return e


def hanner_from_expr(e: HannerExpr) -> Polytope:
    """Build the polytope; coordinates follow the left-to-right leaf order."""
    if isinstance(e, Leaf):
        return segment(e.a, e.b)
    parts = [hanner_from_expr(c) for c in e.children]
    op = product if isinstance(e, Product) else free_sum
    out = parts[0]
    for p in parts[1:]:
        out = op(out, p)
    return out


def expr_to_cotree(e: HannerExpr) -> Cotree:
    """Cotree of the coordinate graph; leaves are numbered in left-to-right order."""
    counter = itertools.count()

    def walk(x):
        if isinstance(x, Leaf):
            return CoLeaf(next(counter))
        kind = JOIN if isinstance(x, Product) else UNION
        return CoNode(kind, tuple(walk(c) for c in x.children))

    return canonical_cotree(walk(e))


def cotree_to_expr(t: Cotree, extents: Sequence | None = None) -> tuple:
    """Return (expression, order): order[k] is the cotree label of the k-th leaf.

    ``extents[label] = (a, b)`` selects the segment [-a, b] for that label;
    unit segments otherwise.
    """
    order: list = []

    def walk(x):
        if isinstance(x, CoLeaf):
            order.append(x.label)
            if extents is None:
                return Leaf()
            a, b = extents[x.label]
            return Leaf(a, b)
        kids = tuple(walk(c) for c in x.children)
        return Product(kids) if x.kind == JOIN else FreeSum(kids)

    return walk(t), order


# --- minimizer classification --------------------------------------------


@dataclass
class NotMinimizer:
    reason: str
    s: int
    expected: int
    detail: str = ""

    def to_dict(self) -> dict:
        return {"minimizer": False, "reason": self.reason, "s": self.s, "expected": self.expected, "detail": self.detail}


@dataclass
class MinimizerClassification:
    expr: HannerExpr  # leaves carry the original axis extents
    unit_expr: HannerExpr
    cotree: Cotree
    graph: Graph
    order: list  # order[k] = coordinate of P realised by leaf k
    extents: list = field(default_factory=list)

    def reconstruct(self) -> Polytope:
        """Rebuild P exactly from the expression and the coordinate order."""
        H = hanner_from_expr(self.expr)
        pos = [0] * len(self.order)
        for k, label in enumerate(self.order):
            pos[label] = k
        return permute_coordinates(H, pos)

    def to_dict(self) -> dict:
        return {
            "minimizer": True,
            "expr": expr_str(self.expr),
            "unit_expr": expr_str(self.unit_expr),
            "cotree": cotree_str(self.cotree),
            "coordinate_order": [k + 1 for k in self.order],
            "graph": self.graph.to_dict(),
            "extents": [[format_rat(a), format_rat(b)] for a, b in self.extents],
        }


def classify_minimizer(P: Polytope, lattice: FaceLattice | None = None) -> MinimizerClassification | NotMinimizer:
    if not is_proper(P):
        raise NotProper("classification needs the origin in the interior")
    if not is_locally_anti_blocking(P):
        raise NotLocallyAntiBlocking("classification needs a LAB polytope")
    d = P.dim
    L = lattice if lattice is not None else FaceLattice(P)
    if L.s != 3**d:
        return NotMinimizer("face-count", L.s, 3**d, f"s = {L.s} != 3^{d} = {3**d}")
    try:
        G = build_gp(P)
    except SectionNotQuadrilateral as exc:
        raise InvariantViolation(f"minimizer with non-quadrilateral section: {exc}") from exc
    tree = is_cograph(G)
    if isinstance(tree, P4Witness):
        raise InvariantViolation(f"minimizer whose graph has an induced P4 {tree.path}")
    N, extents = normalize_with_factors(P)
    C = clique_polytope(G)
    if N.vertices != C.vertices:
        raise ReconstructionMismatch("normalized minimizer differs from its clique polytope")
    expr, order = cotree_to_expr(tree, extents)
    unit, _ = cotree_to_expr(tree)
    out = MinimizerClassification(expr, unit, tree, G, order, extents)
    if out.reconstruct() != P:
        raise ReconstructionMismatch("Hanner expression does not rebuild the input")
    return out
