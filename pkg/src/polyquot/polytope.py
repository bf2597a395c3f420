"""Combinatorial simple 3-polytopes given by vertex-facet incidences.

A polytope is fixed by the number of facets and, for each vertex, the sorted
triple of facets containing it.  Edges, facet boundary cycles and the cubic
1-skeleton are all derived from that list.
"""
from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Any, Optional, Sequence

from .errors import BadParameter, SchemaError, UnknownName, ValidationError

Triple = tuple[int, int, int]


@dataclass(frozen=True)
class Edge:
    facets: tuple[int, int]
    ends: tuple[int, int]


def _canonical_triples(vertices: Sequence[Sequence[int]]) -> tuple[Triple, ...]:
    return tuple(sorted(tuple(sorted(int(i) for i in v)) for v in vertices))  # type: ignore[misc]


def _edge_map(vertices: Sequence[Sequence[int]]) -> dict[tuple[int, int], list[int]]:
    pairs: dict[tuple[int, int], list[int]] = defaultdict(list)
    for vi, v in enumerate(vertices):
        for a, b in combinations(sorted(v), 2):
            pairs[(a, b)].append(vi)
    return pairs


def _connected(n: int, adj: Sequence[Sequence[int]], removed: frozenset = frozenset()) -> bool:
    start = next((v for v in range(n) if v not in removed), None)
    if start is None:
        return True
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen and w not in removed:
                seen.add(w)
                stack.append(w)
    return len(seen) + len(removed) == n


def _facet_cycle(f: int, vertices: Sequence[Sequence[int]], pairs: dict) -> Optional[list[int]]:
    """Boundary vertex cycle of facet f, or None if the incident edges do not form one cycle."""
    nbrs: dict[int, list[int]] = defaultdict(list)
    for (a, b), ends in pairs.items():
        if f in (a, b) and len(ends) == 2:
            u, v = ends
            nbrs[u].append(v)
            nbrs[v].append(u)
    on_f = [vi for vi, v in enumerate(vertices) if f in v]
    if not on_f or any(len(nbrs[v]) != 2 for v in on_f):
        return None
    start = min(on_f)
    cycle = [start]
    prev, cur = start, min(nbrs[start])
    while cur != start:
        cycle.append(cur)
        a, b = nbrs[cur]
        nxt = b if a == prev else a
        # a 2-cycle has both neighbours equal to prev
        if a == b:
            nxt = a
        prev, cur = cur, nxt
        if len(cycle) > len(on_f):
            return None
    if len(cycle) != len(on_f):
        return None
    return cycle


def validate(num_facets: int, vertices: Sequence[Sequence[int]]) -> list[str]:
    """Return the violated polytope invariants; empty means a valid simple 3-polytope."""
    out: list[str] = []
    m = num_facets
    for v in vertices:
        if len(v) != 3 or len(set(v)) != 3 or any(not 0 <= i < m for i in v):
            return ["facet index"]
    triples = [tuple(sorted(v)) for v in vertices]
    if len(set(triples)) != len(triples):
        out.append("duplicate vertex")
    pairs = _edge_map(triples)
    if any(len(ends) != 2 for ends in pairs.values()):
        return out + ["edge multiplicity"]
    nv = len(triples)
    adj: list[list[int]] = [[] for _ in range(nv)]
    for u, v in pairs.values():
        adj[u].append(v)
        adj[v].append(u)
    used = {i for t in triples for i in t}
    if nv == 0 or not _connected(nv, adj) or len(used) != m:
        return out + ["graph disconnected"]
    if nv < 4:
        out.append("vertex count")
    if any(_facet_cycle(f, triples, pairs) is None for f in range(m)):
        out.append("facet cycle")
    if nv - len(pairs) + m != 2:
        out.append("Euler relation")
    if nv >= 4 and not out:
        for a, b in combinations(range(nv), 2):
            if not _connected(nv, adj, frozenset((a, b))):
                out.append("not 3-connected")
                break
    return out


@dataclass(frozen=True)
class SimplePolytope:
    name: str
    num_facets: int
    vertices: tuple[Triple, ...]

    @classmethod
    def from_triples(cls, name: str, num_facets: int, vertices: Sequence[Sequence[int]]) -> "SimplePolytope":
        problems = validate(num_facets, vertices)
        if problems:
            raise ValidationError(", ".join(problems))
        return cls(name, num_facets, _canonical_triples(vertices))

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        pairs = _edge_map(self.vertices)
        return tuple(Edge(k, tuple(sorted(v))) for k, v in sorted(pairs.items()))  # type: ignore[arg-type]

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        """Map from a facet pair or an endpoint pair to the edge index."""
        idx = {}
        for i, e in enumerate(self.edges):
            idx[("f",) + e.facets] = i
            idx[("v",) + e.ends] = i
        return idx

    def edge_between_facets(self, a: int, b: int) -> Optional[int]:
        return self.edge_index.get(("f", min(a, b), max(a, b)))

    def edge_between_vertices(self, u: int, v: int) -> Optional[int]:
        return self.edge_index.get(("v", min(u, v), max(u, v)))

    @cached_property
    def facet_cycles(self) -> tuple[tuple[int, ...], ...]:
        """Per facet, its boundary vertices in cyclic order (starting at the smallest)."""
        pairs = _edge_map(self.vertices)
        return tuple(tuple(_facet_cycle(f, self.vertices, pairs)) for f in range(self.num_facets))  # type: ignore[arg-type]

    @cached_property
    def facet_edges(self) -> tuple[tuple[int, ...], ...]:
        out = []
        for cyc in self.facet_cycles:
            k = len(cyc)
            out.append(tuple(self.edge_between_vertices(cyc[i], cyc[(i + 1) % k]) for i in range(k)))
        return tuple(out)

    @cached_property
    def facet_adjacency(self) -> tuple[frozenset, ...]:
        adj: list[set] = [set() for _ in range(self.num_facets)]
        for e in self.edges:
            a, b = e.facets
            adj[a].add(b)
            adj[b].add(a)
        return tuple(frozenset(s) for s in adj)

    @cached_property
    def vertex_neighbours(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in self.vertices]
        for e in self.edges:
            u, v = e.ends
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    def facet_sizes(self) -> list[int]:
        return [len(c) for c in self.facet_cycles]

    def to_dict(self) -> dict[str, Any]:
        return {"name": self.name, "num_facets": self.num_facets, "vertices": [list(v) for v in self.vertices]}


def serialize(p: SimplePolytope) -> str:
    """Canonical JSON: two-space indent, one vertex triple per line."""
    rows = ",\n".join("    [%d, %d, %d]" % v for v in p.vertices)
    return (
        "{\n"
        f"  \"name\": {json.dumps(p.name)},\n"
        f"  \"num_facets\": {p.num_facets},\n"
        "  \"vertices\": [\n"
        f"{rows}\n"
        "  ]\n"
        "}\n"
    )


def from_document(doc: Any) -> SimplePolytope:
    if not isinstance(doc, dict):
        raise SchemaError("polytope document must be an object")
    name = doc.get("name", "")
    m = doc.get("num_facets")
    verts = doc.get("vertices")
    if not isinstance(name, str):
        raise SchemaError("name must be a string")
    if not isinstance(m, int) or isinstance(m, bool) or m < 0:
        raise SchemaError("num_facets must be a nonnegative integer")
    if not isinstance(verts, list) or not all(
        isinstance(v, list) and all(isinstance(i, int) and not isinstance(i, bool) for i in v) for v in verts
    ):
        raise SchemaError("vertices must be a list of integer lists")
    return SimplePolytope.from_triples(name, m, verts)


def parse(text: str) -> SimplePolytope:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc.msg}") from None
    return from_document(doc)


def _simplex() -> list[Triple]:
    return list(combinations(range(4), 3))


def _cube() -> list[Triple]:
    return [(a, b, c) for a in (0, 1) for b in (2, 3) for c in (4, 5)]


def _prism(k: int) -> list[Triple]:
    out = []
    for i in range(k):
        j = (i + 1) % k
        out.append((i, j, k))
        out.append((i, j, k + 1))
    return out


def _lobell(n: int) -> list[Triple]:
    """Two n-gons, each surrounded by a ring of n pentagons (n = 5 gives the dodecahedron)."""
    top, bottom = 0, 2 * n + 1

    def up(i: int) -> int:
        return 1 + i % n

    def low(i: int) -> int:
        return n + 1 + i % n

    out = []
    for i in range(n):
        out.append((top, up(i), up(i + 1)))
        out.append((up(i), up(i + 1), low(i + 1)))
        out.append((up(i), low(i), low(i + 1)))
        out.append((bottom, low(i), low(i + 1)))
    return out


BUILTIN_NAMES = ("simplex", "cube", "prism", "dodecahedron", "barrel6")


def builtin(name: str, param: Optional[int] = None) -> SimplePolytope:
    if name == "simplex":
        return SimplePolytope.from_triples("simplex", 4, _simplex())
    if name == "cube":
        return SimplePolytope.from_triples("cube", 6, _cube())
    if name == "prism":
        if param is None or param < 3:
            raise BadParameter("prism needs k >= 3")
        return SimplePolytope.from_triples(f"prism{param}", param + 2, _prism(param))
    if name == "dodecahedron":
        return SimplePolytope.from_triples("dodecahedron", 12, _lobell(5))
    if name == "barrel6":
        return SimplePolytope.from_triples("barrel6", 14, _lobell(6))
    # accept names like "prism5"
    if name.startswith("prism") and name[5:].isdigit():
        return builtin("prism", int(name[5:]))
    raise UnknownName(f"unknown polytope {name!r}")


def library(max_prism: int = 8) -> list[SimplePolytope]:
    """Every builtin, with prisms for k = 3..max_prism."""
    out = [builtin("simplex"), builtin("cube")]
    out += [builtin("prism", k) for k in range(3, max_prism + 1)]
    out += [builtin("dodecahedron"), builtin("barrel6")]
    return out


def graph(p: SimplePolytope):
    """The 1-skeleton as a cubic graph; vertex and edge indices match ``p``."""
    from .hamilton import CubicGraph

    return CubicGraph(
        num_vertices=p.num_vertices,
        edges=tuple(e.ends for e in p.edges),
        faces=p.facet_cycles,
    )
