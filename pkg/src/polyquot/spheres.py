"""Deciding when a quotient is the 3-sphere, and hyperelliptic involutions.

An affine coloring of rank r gives the 3-sphere exactly when its complex is
the model complex of an (r+1)-coloring of the tetrahedron.  An involution
tau is hyperelliptic when the coloring projected along tau gives the sphere.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Hashable, Optional, Sequence

from . import gf2
from .coloring import AffineColoring, SubgroupDescription, project, subgroup_of
from .complexes import ColoringComplex, UnionFind, build_complex, recognize_c3r, skeleton_graph
from .errors import (
    DimensionMismatch,
    FaceTreeViolation,
    ImproperSubgraph,
    NotSpanning,
    NotSubgraph,
)
from .gf2 import Gf2Vector, JoinShape, unpack
from .hamilton import CubicGraph, HamSubgraph, SearchResult, enumerate_subgraphs, make_subgraph
from .polytope import SimplePolytope, graph

KIND_BY_RANK = {1: "empty", 2: "cycle", 3: "theta", 4: "k4"}
RANK_BY_KIND = {v: k for k, v in KIND_BY_RANK.items()}


def is_sphere(p: SimplePolytope, lam: AffineColoring) -> bool:
    if lam.num_facets != p.num_facets:
        raise DimensionMismatch(f"polytope has {p.num_facets} facets, coloring has {lam.num_facets}")
    r = lam.affine_rank
    if r > 3 or len(set(lam.points)) != r + 1:
        return False
    return recognize_c3r(build_complex(p, lam.points), p) == r + 1


def allowed_counts(rank: int, shape: JoinShape, size: int) -> frozenset:
    """Hyperelliptic counts permitted for a full-rank coloring with |I| = size."""
    if rank == 0:
        return frozenset({0})
    if rank == 1:
        return frozenset({1})
    if shape.kind == "other" or rank > 4:
        return frozenset({0})
    table = {
        (2, 3): {0, 1, 2, 3},
        (2, 4): {0, 1, 2, 3},
        (3, 4): {0, 1, 2, 3, 4, 6},
        (3, 5): {0, 1, 2, 3},
        (3, 6): {0, 1},
        (4, 5): {0, 1, 2, 6},
        (4, 6): {0, 1, 2},
        (4, 7): {0, 1},
        (4, 8): {0, 1},
    }
    return frozenset(table.get((rank, size), {0}))


def candidate_special_involutions(lam: AffineColoring) -> list[Gf2Vector]:
    pts = lam.distinct_points()
    shape = gf2.classify_point_set(pts)
    if shape.kind == "simplex":
        return gf2.pairwise_sums(pts) if len(pts) > 1 else []
    if shape.kind == "prism":
        return list(shape.directions)
    return []


def subgraph_in(cx: ColoringComplex, sub: ColoringComplex, kind: str) -> HamSubgraph:
    """The 1-skeleton of ``sub`` as a subgraph of the skeleton of ``cx``.

    ``sub`` must come from a coarsening of the coloring behind ``cx``, so
    each of its 1-faces is a union of 1-faces of ``cx``.
    """
    inner = {e for f in sub.one_faces for e in f.edges}
    g = skeleton_graph(cx)
    paths = cx.path_faces()
    edges = frozenset(j for j, i in enumerate(paths) if cx.one_faces[i].edges[0] in inner)
    circles = tuple(i for i in cx.circle_faces() if cx.one_faces[i].edges[0] in inner)
    return make_subgraph(g, kind, edges, circles)


@dataclass(frozen=True)
class HyperellipticReport:
    rank: int
    point_count: int
    shape: JoinShape
    involutions: tuple[Gf2Vector, ...]
    subgraphs: tuple[HamSubgraph, ...]
    candidates: tuple[Gf2Vector, ...]
    allowed: frozenset = field(default_factory=frozenset)

    @property
    def count(self) -> int:
        return len(self.involutions)

    @property
    def allowed_set_check(self) -> bool:
        return self.count in self.allowed

    def to_dict(self) -> dict[str, Any]:
        return {
            "rank": self.rank,
            "points": self.point_count,
            "shape": self.shape.kind,
            "involutions": [gf2.bitstring(t) for t in self.involutions],
            "subgraphs": [s.to_dict() for s in self.subgraphs],
            "candidates": [gf2.bitstring(t) for t in self.candidates],
            "allowed_set_check": self.allowed_set_check,
        }


def enumerate_hyperelliptic(p: SimplePolytope, lam: AffineColoring) -> HyperellipticReport:
    """Test every nonzero tau directly by projecting and running the sphere test.

    A coloring whose points do not affinely span its ambient space is first
    normalized, and involutions are then reported in the normalized coordinates.
    """
    if lam.num_facets != p.num_facets:
        raise DimensionMismatch(f"polytope has {p.num_facets} facets, coloring has {lam.num_facets}")
    norm = lam if lam.affine_rank == lam.rank else lam.normalized()
    r = norm.rank
    cx = build_complex(p, norm.points)
    found, subs = [], []
    for t in sorted(gf2.all_vectors(r))[1:]:
        low = project(norm, t)
        if is_sphere(p, low):
            found.append(t)
            sub = build_complex(p, low.points)
            subs.append(subgraph_in(cx, sub, KIND_BY_RANK.get(r, "other")))
    pts = norm.distinct_points()
    shape = gf2.classify_point_set(pts)
    return HyperellipticReport(
        rank=r,
        point_count=len(pts),
        shape=shape,
        involutions=tuple(found),
        subgraphs=tuple(subs),
        candidates=tuple(candidate_special_involutions(norm)),
        allowed=allowed_counts(r, shape, len(pts)),
    )


def _check_hamiltonian(cx: ColoringComplex, gamma: HamSubgraph) -> set:
    """Validate gamma against the complex; returns the set of 1-face indices it uses."""
    g = skeleton_graph(cx)
    paths = cx.path_faces()
    circles = set(cx.circle_faces())
    if any(not 0 <= e < len(paths) for e in gamma.edges) or any(c not in circles for c in gamma.circles):
        raise NotSubgraph("subgraph uses edges that are not in the complex skeleton")
    kind = gamma.kind
    sub_deg = [0] * g.num_vertices
    for e in gamma.edges:
        u, v = g.edges[e]
        sub_deg[u] += 1
        sub_deg[v] += 1
    if any(d == 0 for d in sub_deg):
        raise NotSpanning("subgraph misses a vertex of the complex")
    ok = False
    if kind == "empty":
        ok = not gamma.edges and not gamma.circles
    elif kind == "cycle":
        if gamma.circles:
            ok = len(gamma.circles) == 1 and not gamma.edges
        else:
            ok = bool(gamma.edges) and all(d == 2 for d in sub_deg) and _connected_edges(g, gamma.edges)
    elif kind in ("theta", "k4"):
        branch = [v for v, d in enumerate(sub_deg) if d == 3]
        want = 2 if kind == "theta" else 4
        ok = (
            not gamma.circles
            and len(branch) == want
            and all(d in (2, 3) for d in sub_deg)
            and _connected_edges(g, gamma.edges)
            and len(gamma.edges) - g.num_vertices == want // 2
        )
    if not ok:
        raise NotSubgraph(f"edge set is not a {kind} subgraph")
    return {paths[e] for e in gamma.edges} | set(gamma.circles)


def _connected_edges(g: CubicGraph, edges) -> bool:
    edges = list(edges)
    uf = UnionFind(g.num_vertices)
    for e in edges:
        uf.union(*g.edges[e])
    return len({uf.find(v) for e in edges for v in g.edges[e]}) == 1


def induced_coloring(p: SimplePolytope, kappa: Sequence[Hashable], gamma: HamSubgraph) -> AffineColoring:
    """The affine coloring induced by a proper Hamiltonian subgraph of the kappa-complex.

    The faces of gamma are numbered 0..r-1 by their lowest facet.  Inside face
    s, the tree of kappa-cfacets is 2-colored from its lowest facet; the two
    classes get a_s and b_s = a_s + e_{r-1}, where a_s = e_s for s < r-1 and
    a_{r-1} = 0.  Projecting along tau = e_{r-1} recovers gamma.
    """
    cx = build_complex(p, kappa)
    used = _check_hamiltonian(cx, gamma)
    if len(used) == len(cx.one_faces):
        raise ImproperSubgraph("subgraph is the whole skeleton; no face contains two cfacets")
    k = len(cx.cfacets)
    uf = UnionFind(k)
    tree_edges = []
    for i, f in enumerate(cx.one_faces):
        if i not in used:
            a, b = f.cfacets
            uf.union(a, b)
            tree_edges.append((a, b))
    regions = uf.groups(range(k))
    r = len(regions)
    if r != RANK_BY_KIND[gamma.kind]:
        raise NotSubgraph("subgraph does not cut the sphere into the expected faces")
    region_of = {c: s for s, g in enumerate(regions) for c in g}
    adj: dict[int, list[int]] = {c: [] for c in range(k)}
    for a, b in tree_edges:
        adj[a].append(b)
        adj[b].append(a)
    side = [-1] * k
    for g in regions:
        if len([1 for a, b in tree_edges if region_of[a] == region_of[g[0]]]) != len(g) - 1:
            raise FaceTreeViolation("cfacet adjacency inside a face is not a tree")
        side[g[0]] = 0
        stack = [g[0]]
        while stack:
            c = stack.pop()
            for d in adj[c]:
                if side[d] < 0:
                    side[d] = 1 - side[c]
                    stack.append(d)
    tau = 1 << (r - 1)
    cls = cx.facet_class
    pts = []
    for f in range(p.num_facets):
        c = cls[f]
        s = region_of[c]
        a = 1 << s if s < r - 1 else 0
        pts.append(unpack(a ^ (tau if side[c] else 0), r))
    return AffineColoring(r, tuple(pts))


def induced_tau(rank: int) -> Gf2Vector:
    return unpack(1 << (rank - 1), rank)


@dataclass(frozen=True)
class SphereSubgroup:
    subgraph: Optional[HamSubgraph]
    coloring: AffineColoring
    subgroup: SubgroupDescription
    is_h0: bool = False

    def to_dict(self) -> dict[str, Any]:
        return {
            "subgraph": self.subgraph.to_dict() if self.subgraph else None,
            "h0": self.is_h0,
            "equations": [list(e) for e in self.subgroup.equations],
        }


def region_coloring(p: SimplePolytope, edges: frozenset) -> AffineColoring:
    """Color the faces cut out by a polytope subgraph with 0, e1, e2, e3 in order of lowest facet."""
    uf = UnionFind(p.num_facets)
    for i, e in enumerate(p.edges):
        if i not in edges:
            uf.union(*e.facets)
    regions = uf.groups(range(p.num_facets))
    r = len(regions) - 1
    pts = [()] * p.num_facets
    for s, g in enumerate(regions):
        pt = unpack(1 << (s - 1) if s else 0, r)
        for f in g:
            pts[f] = pt
    return AffineColoring(r, tuple(pts))


def sphere_subgroups(p: SimplePolytope, limit: Optional[int] = None) -> SearchResult:
    """Subgroups whose quotient is the 3-sphere, one per cycle, theta or K4 subgraph, plus H0."""
    g = graph(p)
    const = AffineColoring.constant(p.num_facets)
    out = [SphereSubgroup(None, const, subgroup_of(const.to_vector()), is_h0=True)]
    truncated = False
    for kind in ("cycle", "theta", "k4"):
        room = None if limit is None else max(limit - len(out), 0)
        res = enumerate_subgraphs(g, kind, spanning=False, limit=room)
        for sub in res.items:
            lam = region_coloring(p, sub.edges)
            out.append(SphereSubgroup(sub, lam, subgroup_of(lam.to_vector())))
        if res.truncated:
            truncated = True
            break
    return SearchResult(out, truncated)


def is_hamiltonian_in(cx: ColoringComplex, sub: HamSubgraph) -> bool:
    """True iff every vertex of the complex lies on the subgraph."""
    g = skeleton_graph(cx)
    covered = {v for e in sub.edges for v in g.edges[e]}
    return len(covered) == g.num_vertices

