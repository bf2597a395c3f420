"""The complex of a facet coloring and invariants of facet unions.

Given a coloring of the facets of a simple 3-polytope, its facets are the
connected components of same-colored facet unions ("cfacets").  Where three
cfacets meet at a polytope vertex we get a vertex of the complex; the
remaining boundary edges chain into 1-faces that are either paths between
such vertices or closed circles.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Optional, Sequence

from .errors import LengthMismatch
from .hamilton import CubicGraph
from .polytope import SimplePolytope


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)

    def groups(self, items: Iterable[int]) -> list[list[int]]:
        by_root: dict[int, list[int]] = {}
        for x in items:
            by_root.setdefault(self.find(x), []).append(x)
        return sorted((sorted(g) for g in by_root.values()), key=lambda g: g[0])


@dataclass(frozen=True)
class OneFace:
    """A 1-face: an edge path between complex vertices, or a closed circle.

    ``vertices`` is the polytope-vertex walk (closed walks repeat the start).
    """

    kind: str
    edges: tuple[int, ...]
    vertices: tuple[int, ...]
    cfacets: tuple[int, int]

    @property
    def ends(self) -> Optional[tuple[int, int]]:
        if self.kind != "path":
            return None
        return self.vertices[0], self.vertices[-1]


@dataclass(frozen=True)
class ColoringComplex:
    num_facets: int
    cfacets: tuple[frozenset, ...]
    one_faces: tuple[OneFace, ...]
    cvertices: tuple[int, ...]
    cvertex_cfacets: tuple[tuple[int, ...], ...]

    @property
    def facet_class(self) -> tuple[int, ...]:
        cls = [0] * self.num_facets
        for i, cf in enumerate(self.cfacets):
            for f in cf:
                if 0 <= f < self.num_facets:
                    cls[f] = i
        return tuple(cls)

    def path_faces(self) -> list[int]:
        return [i for i, f in enumerate(self.one_faces) if f.kind == "path"]

    def circle_faces(self) -> list[int]:
        return [i for i, f in enumerate(self.one_faces) if f.kind == "circle"]

    def to_dict(self) -> dict:
        return {
            "cfacets": [sorted(c) for c in self.cfacets],
            "one_faces": [{"kind": f.kind, "edges": list(f.edges)} for f in self.one_faces],
            "cvertices": list(self.cvertices),
        }


def cfacet_partition(p: SimplePolytope, labels: Sequence[Hashable]) -> list[list[int]]:
    uf = UnionFind(p.num_facets)
    for e in p.edges:
        a, b = e.facets
        if labels[a] == labels[b]:
            uf.union(a, b)
    return uf.groups(range(p.num_facets))


def build_complex(p: SimplePolytope, labels: Sequence[Hashable]) -> ColoringComplex:
    if len(labels) != p.num_facets:
        raise LengthMismatch(f"expected {p.num_facets} labels, got {len(labels)}")
    groups = cfacet_partition(p, labels)
    cls = [0] * p.num_facets
    for i, g in enumerate(groups):
        for f in g:
            cls[f] = i

    boundary = [i for i, e in enumerate(p.edges) if cls[e.facets[0]] != cls[e.facets[1]]]
    bset = set(boundary)
    at: dict[int, list[int]] = {}
    for i in boundary:
        for v in p.edges[i].ends:
            at.setdefault(v, []).append(i)
    cvertices = [v for v, t in enumerate(p.vertices) if len({cls[f] for f in t}) == 3]
    cset = set(cvertices)

    def other_end(e: int, v: int) -> int:
        a, b = p.edges[e].ends
        return b if a == v else a

    used: set = set()
    faces = []
    for v in cvertices:
        for e in sorted(at[v]):
            if e in used:
                continue
            walk_v, walk_e = [v], [e]
            used.add(e)
            cur = other_end(e, v)
            while cur not in cset:
                walk_v.append(cur)
                nxt = next(x for x in at[cur] if x != walk_e[-1])
                walk_e.append(nxt)
                used.add(nxt)
                cur = other_end(nxt, cur)
            walk_v.append(cur)
            if (walk_v[-1], walk_e[-1]) < (walk_v[0], walk_e[0]):
                walk_v.reverse()
                walk_e.reverse()
            a, b = p.edges[e].facets
            faces.append(OneFace("path", tuple(walk_e), tuple(walk_v), tuple(sorted((cls[a], cls[b])))))
    for e in boundary:
        if e in used:
            continue
        # a circle: collect its vertices, then orient from the smallest one
        comp_edges = []
        stack = [e]
        used.add(e)
        while stack:
            x = stack.pop()
            comp_edges.append(x)
            for v in p.edges[x].ends:
                for y in at[v]:
                    if y not in used:
                        used.add(y)
                        stack.append(y)
        start = min(v for x in comp_edges for v in p.edges[x].ends)
        e0 = min(at[start], key=lambda x: other_end(x, start))
        walk_v, walk_e = [start], [e0]
        cur = other_end(e0, start)
        while cur != start:
            walk_v.append(cur)
            nxt = next(x for x in at[cur] if x != walk_e[-1])
            walk_e.append(nxt)
            cur = other_end(nxt, cur)
        walk_v.append(start)
        a, b = p.edges[e0].facets
        faces.append(OneFace("circle", tuple(walk_e), tuple(walk_v), tuple(sorted((cls[a], cls[b])))))
    assert used == bset
    faces.sort(key=lambda f: min(f.edges))
    return ColoringComplex(
        num_facets=p.num_facets,
        cfacets=tuple(frozenset(g) for g in groups),
        one_faces=tuple(faces),
        cvertices=tuple(cvertices),
        cvertex_cfacets=tuple(tuple(sorted(cls[f] for f in p.vertices[v])) for v in cvertices),
    )


@dataclass(frozen=True)
class SubsurfaceInvariants:
    omega: frozenset
    components: int
    euler_char: int
    is_empty: bool
    is_all: bool
    is_disk: bool
    holes_per_component: tuple[int, ...]

    def reduced_betti(self) -> tuple[int, int, int, int]:
        """Reduced Betti numbers in degrees -1, 0, 1, 2 over the rationals."""
        if self.is_empty:
            return (1, 0, 0, 0)
        top = 1 if self.is_all else 0
        return (0, self.components - 1, self.components - self.euler_char + top, top)


def _euler(p: SimplePolytope, omega: set) -> int:
    v = sum(1 for t in p.vertices if omega.intersection(t))
    e = sum(1 for x in p.edges if omega.intersection(x.facets))
    return v - e + len(omega)


def facet_components(p: SimplePolytope, omega: Iterable[int]) -> list[list[int]]:
    """Components of a facet union, joining facets that share a vertex."""
    omega = sorted(set(omega))
    index = {f: i for i, f in enumerate(omega)}
    uf = UnionFind(len(omega))
    for t in p.vertices:
        inside = [index[f] for f in t if f in index]
        for x in inside[1:]:
            uf.union(inside[0], x)
    return [[omega[i] for i in g] for g in uf.groups(range(len(omega)))]


def subsurface(p: SimplePolytope, omega: Iterable[int]) -> SubsurfaceInvariants:
    om = set(omega)
    comps = facet_components(p, om)
    chi = _euler(p, om)
    is_all = len(om) == p.num_facets
    holes = tuple(2 - _euler(p, set(c)) for c in comps)
    return SubsurfaceInvariants(
        omega=frozenset(om),
        components=len(comps),
        euler_char=chi,
        is_empty=not om,
        is_all=is_all,
        is_disk=len(comps) == 1 and chi == 1 and not is_all,
        holes_per_component=holes,
    )


def recognize_c3r(cx: ColoringComplex, p: SimplePolytope) -> Optional[int]:
    """r if the complex is the model complex from an r-coloring of the tetrahedron (r <= 4)."""
    k = len(cx.cfacets)
    if k in (1, 2):
        return k
    if k not in (3, 4):
        return None
    if not all(subsurface(p, cf).is_disk for cf in cx.cfacets):
        return None
    if k == 4:
        cls = cx.facet_class
        meets = set()
        for t in p.vertices:
            cs = sorted({cls[f] for f in t})
            for i in range(len(cs)):
                for j in range(i + 1, len(cs)):
                    meets.add((cs[i], cs[j]))
        if len(meets) != 6:
            return None
    return k


def skeleton_graph(cx: ColoringComplex) -> CubicGraph:
    """Graph on the complex vertices with one edge per path 1-face.

    Vertex i is ``cx.cvertices[i]``; edge j is the j-th path 1-face.  Circle
    1-faces are listed in ``circles`` by their 1-face index.
    """
    index = {v: i for i, v in enumerate(cx.cvertices)}
    edges = []
    for f in cx.one_faces:
        if f.kind == "path":
            a, b = f.ends
            edges.append((index[a], index[b]))
    return CubicGraph(len(cx.cvertices), tuple(edges), circles=tuple(cx.circle_faces()))


def _bridges(n: int, edges: Sequence[tuple[int, int]]) -> list[int]:
    out = []
    for skip in range(len(edges)):
        a, b = edges[skip]
        if a == b:
            continue
        adj: list[list[int]] = [[] for _ in range(n)]
        for i, (u, v) in enumerate(edges):
            if i != skip:
                adj[u].append(v)
                adj[v].append(u)
        seen = {a}
        stack = [a]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if b not in seen:
            out.append(skip)
    return out


def validate_complex(cx: ColoringComplex) -> list[str]:
    out = []
    seen: set = set()
    overlap = False
    for cf in cx.cfacets:
        if seen & cf:
            overlap = True
        seen |= cf
    if overlap or seen != set(range(cx.num_facets)):
        out.append("facet partition")
    if any(len(set(f.cfacets)) != 2 for f in cx.one_faces):
        out.append("1-face incidence")
    if any(len(set(t)) != 3 for t in cx.cvertex_cfacets):
        out.append("vertex incidence")
    cset = set(cx.cvertices)
    for f in cx.one_faces:
        if f.kind == "path" and not (f.vertices[0] in cset and f.vertices[-1] in cset):
            out.append("path endpoints")
            break
    if "path endpoints" not in out:
        g = skeleton_graph(cx)
        if any(len(a) != 3 for a in g.incidence):
            out.append("vertex degree")
        if _bridges(g.num_vertices, g.edges):
            out.append("bridge in 1-skeleton")
    return out
