"""Exhaustive search on cubic (multi)graphs.

Hamiltonian cycles, 1-factorizations and their perfect pairs, consistent
triples of Hamiltonian cycles, and simple cycle / theta / K4 subgraphs.
Edges are referred to by index; a cycle or subgraph is identified by its
sorted tuple of edge indices.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .errors import NotHamiltonian


@dataclass(frozen=True)
class CubicGraph:
    """A graph where every vertex should have degree 3; parallel edges are allowed.

    ``faces`` are boundary vertex cycles when the graph comes from a polytope.
    ``circles`` carries vertexless circle components (from coloring complexes)
    as opaque labels; search routines ignore them.
    """

    num_vertices: int
    edges: tuple[tuple[int, int], ...]
    faces: tuple[tuple[int, ...], ...] = ()
    circles: tuple = ()

    @property
    def incidence(self) -> list[list[tuple[int, int]]]:
        """Per vertex, the (neighbour, edge index) pairs in edge order."""
        inc: list[list[tuple[int, int]]] = [[] for _ in range(self.num_vertices)]
        for i, (u, v) in enumerate(self.edges):
            inc[u].append((v, i))
            inc[v].append((u, i))
        return inc

    def problems(self) -> list[str]:
        out = []
        if any(u == v for u, v in self.edges):
            out.append("loop")
        if any(len(a) != 3 for a in self.incidence):
            out.append("degree")
        return out


@dataclass(frozen=True)
class SearchResult:
    items: list
    truncated: bool = False

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self):
        return iter(self.items)


@dataclass(frozen=True)
class OneFactorization:
    factors: tuple[frozenset, frozenset, frozenset]


@dataclass(frozen=True)
class HamSubgraph:
    """A subgraph homeomorphic to the empty set, a circle, a theta graph or K4.

    ``paths`` are vertex sequences between branch vertices (one closed
    sequence for a cycle).  ``circles`` lists vertexless circle components
    of the ambient graph that belong to the subgraph (a cycle may be a single
    circle).
    """

    kind: str
    branch_vertices: tuple[int, ...] = ()
    paths: tuple[tuple[int, ...], ...] = ()
    edges: frozenset = field(default_factory=frozenset)
    spanning: bool = False
    circles: tuple = ()

    def to_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "branch_vertices": list(self.branch_vertices),
            "paths": [list(p) for p in self.paths],
            "edges": sorted(self.edges),
            "spanning": self.spanning,
        }
        if self.circles:
            out["circles"] = list(self.circles)
        return out


def _hamiltonian_iter(g: CubicGraph) -> Iterator[tuple[int, ...]]:
    n = g.num_vertices
    if n == 0:
        return
    inc = g.incidence
    full = (1 << n) - 1
    path_edges: list[int] = []

    def dfs(v: int, visited: int, second: int) -> Iterator[tuple[int, ...]]:
        if visited == full:
            for w, e in inc[v]:
                if w == 0 and (not path_edges or e != path_edges[-1] or n == 1):
                    if n > 2 and second > v:
                        continue  # keep one of the two traversal directions
                    yield tuple(sorted(path_edges + [e]))
            return
        for w, e in inc[v]:
            if (visited >> w) & 1:
                continue
            # every unvisited vertex other than w needs two usable neighbours
            path_edges.append(e)
            nv = visited | 1 << w
            if _viable(inc, nv, w, full):
                yield from dfs(w, nv, second if second >= 0 else w)
            path_edges.pop()

    seen = set()
    for cyc in dfs(0, 1, -1):
        if cyc not in seen:
            seen.add(cyc)
            yield cyc


def _viable(inc, visited: int, head: int, full: int) -> bool:
    rest = full & ~visited
    while rest:
        low = rest & -rest
        u = low.bit_length() - 1
        rest ^= low
        free = 0
        for w, _ in inc[u]:
            if not (visited >> w) & 1 or w == head or w == 0:
                free += 1
        if free < 2:
            return False
    return True


def enumerate_hamiltonian_cycles(g: CubicGraph, limit: Optional[int] = None) -> SearchResult:
    out = []
    truncated = False
    for cyc in _hamiltonian_iter(g):
        if limit is not None and len(out) >= limit:
            truncated = True
            break
        out.append(cyc)
    return SearchResult(sorted(out), truncated)


def _cycle_order(g: CubicGraph, edge_ids: Sequence[int]) -> Optional[list[int]]:
    """Edges of a single closed walk through every vertex, from the smallest edge; None if not Hamiltonian."""
    n = g.num_vertices
    if len(edge_ids) != n or len(set(edge_ids)) != n or n < 2:
        return None
    at: dict[int, list[int]] = {}
    for e in edge_ids:
        u, v = g.edges[e]
        at.setdefault(u, []).append(e)
        at.setdefault(v, []).append(e)
    if len(at) != n or any(len(es) != 2 for es in at.values()):
        return None
    start = min(edge_ids)
    order = [start]
    u, v = g.edges[start]
    cur, prev = v, start
    while True:
        a, b = at[cur]
        nxt = b if a == prev else a
        if nxt == start:
            break
        order.append(nxt)
        x, y = g.edges[nxt]
        cur = y if x == cur else x
        prev = nxt
    return order if len(order) == n else None


def factorization_from_cycle(g: CubicGraph, cycle: Sequence[int]) -> OneFactorization:
    order = _cycle_order(g, cycle)
    if order is None:
        raise NotHamiltonian("edge set is not a Hamiltonian cycle")
    f1 = frozenset(order[0::2])
    f2 = frozenset(order[1::2])
    chords = frozenset(range(len(g.edges))) - f1 - f2
    return OneFactorization((f1, f2, chords))


def _is_single_cycle(g: CubicGraph, edges: frozenset) -> bool:
    return _cycle_order(g, sorted(edges)) is not None


def perfect_pairs(g: CubicGraph, f: OneFactorization) -> list[tuple[int, int]]:
    pairs = [(0, 1), (0, 2), (1, 2)]
    return [(i, j) for i, j in pairs if _is_single_cycle(g, f.factors[i] | f.factors[j])]


def count_perfect_pairs(g: CubicGraph, f: OneFactorization) -> int:
    return len(perfect_pairs(g, f))


def find_consistent_triples(g: CubicGraph, limit: Optional[int] = None) -> SearchResult:
    """Triples of Hamiltonian cycles covering every edge exactly twice."""
    found: set = set()
    truncated = False
    for cyc in _hamiltonian_iter(g):
        f = factorization_from_cycle(g, cyc)
        if count_perfect_pairs(g, f) != 3:
            continue
        a, b, c = f.factors
        triple = tuple(sorted(tuple(sorted(x | y)) for x, y in ((a, b), (a, c), (b, c))))
        if triple in found:
            continue
        if limit is not None and len(found) >= limit:
            truncated = True
            break
        found.add(triple)
    return SearchResult(sorted(found), truncated)


def is_bipartite(g: CubicGraph) -> bool:
    side = [-1] * g.num_vertices
    inc = g.incidence
    for s in range(g.num_vertices):
        if side[s] >= 0:
            continue
        side[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w, _ in inc[v]:
                if side[w] < 0:
                    side[w] = 1 - side[v]
                    queue.append(w)
                elif side[w] == side[v]:
                    return False
    return True


def _branch_paths(g: CubicGraph, edges: frozenset) -> tuple[tuple[int, ...], tuple[tuple[int, ...], ...]]:
    """Branch vertices (degree 3 in the subgraph) and the vertex paths between them."""
    inc = g.incidence
    sub = [[(w, e) for w, e in inc[v] if e in edges] for v in range(g.num_vertices)]
    branch = tuple(v for v in range(g.num_vertices) if len(sub[v]) == 3)
    if not branch:
        start = min(v for v in range(g.num_vertices) if sub[v])
        walk = [start]
        prev_e = None
        cur = start
        while True:
            w, e = next((w, e) for w, e in sorted(sub[cur], key=lambda t: (t[0], t[1])) if e != prev_e)
            if w == start:
                break
            walk.append(w)
            prev_e, cur = e, w
        walk.append(start)
        return (), (tuple(walk),)
    paths = []
    seen_edges: set = set()
    for b in branch:
        for w, e in sub[b]:
            if e in seen_edges:
                continue
            walk = [b]
            cur, ce = w, e
            seen_edges.add(e)
            while len(sub[cur]) == 2:
                walk.append(cur)
                (x, ex), (y, ey) = sub[cur]
                cur, ce = (y, ey) if ex == ce else (x, ex)
                seen_edges.add(ce)
            walk.append(cur)
            paths.append(tuple(walk) if walk[0] <= walk[-1] else tuple(reversed(walk)))
    return branch, tuple(sorted(paths))


def make_subgraph(g: CubicGraph, kind: str, edges: frozenset, circles: tuple = ()) -> HamSubgraph:
    """Wrap an edge set (plus optional circle labels) as a subgraph record."""
    edges = frozenset(edges)
    branch, paths = _branch_paths(g, edges) if edges else ((), ())
    covered = {v for e in edges for v in g.edges[e]}
    return HamSubgraph(kind, branch, paths, edges, len(covered) == g.num_vertices, tuple(circles))


def _simple_cycles(g: CubicGraph) -> Iterator[frozenset]:
    inc = g.incidence
    seen: set = set()
    for s in range(g.num_vertices):
        stack_edges: list[int] = []

        def dfs(v: int, visited: int) -> Iterator[frozenset]:
            for w, e in inc[v]:
                if stack_edges and e == stack_edges[-1]:
                    continue
                if w == s and stack_edges:
                    yield frozenset(stack_edges + [e])
                elif w > s and not (visited >> w) & 1:
                    stack_edges.append(e)
                    yield from dfs(w, visited | 1 << w)
                    stack_edges.pop()

        for cyc in dfs(s, 1 << s):
            if cyc not in seen:
                seen.add(cyc)
                yield cyc


def _paths_from(inc, start: int, first_edge: int, first: int, target: int, blocked: int) -> Iterator[tuple[list[int], int]]:
    """Simple paths start -> target that begin with ``first_edge``, avoiding ``blocked`` vertices.

    Yields (edge list, interior vertex mask).
    """
    if first == target:
        yield [first_edge], 0
        return
    if (blocked >> first) & 1:
        return
    edges = [first_edge]

    def dfs(v: int, interior: int) -> Iterator[tuple[list[int], int]]:
        for w, e in inc[v]:
            if e == edges[-1]:
                continue
            if w == target:
                yield edges + [e], interior
            elif not (blocked >> w) & 1 and not (interior >> w) & 1 and w != start:
                edges.append(e)
                yield from dfs(w, interior | 1 << w)
                edges.pop()

    yield from dfs(first, 1 << first)


def _thetas(g: CubicGraph) -> Iterator[tuple[frozenset, list[tuple[list[int], int]]]]:
    inc = g.incidence
    n = g.num_vertices
    for u in range(n):
        (a, ea), (b, eb), (c, ec) = inc[u]
        for v in range(u + 1, n):
            base = 1 << u | 1 << v
            for p1, m1 in _paths_from(inc, u, ea, a, v, base):
                for p2, m2 in _paths_from(inc, u, eb, b, v, base | m1):
                    for p3, m3 in _paths_from(inc, u, ec, c, v, base | m1 | m2):
                        yield frozenset(p1 + p2 + p3), [(p1, m1), (p2, m2), (p3, m3)]


def _k4s(g: CubicGraph) -> Iterator[frozenset]:
    inc = g.incidence
    for edges, paths in _thetas(g):
        used = 0
        for _, m in paths:
            used |= m
        u, v = None, None
        for vv in range(g.num_vertices):
            if sum(1 for _, e in inc[vv] if e in edges) == 3:
                u = vv if u is None else u
                v = vv
        used |= 1 << u | 1 << v
        owner = {}
        for i, (_, m) in enumerate(paths):
            x = m
            while x:
                low = x & -x
                owner[low.bit_length() - 1] = i
                x ^= low
        for x, ix in owner.items():
            ex, wx = next((e, w) for w, e in inc[x] if e not in edges)
            # an ear from the interior of one path to the interior of another
            for y, ear in _ears(inc, x, ex, wx, used):
                if owner.get(y, ix) != ix:
                    yield edges | frozenset(ear)


def _ears(inc, x: int, ex: int, first: int, used: int) -> Iterator[tuple[int, list[int]]]:
    """Paths from x through unused vertices ending at a used vertex (returned with its edges)."""
    if (used >> first) & 1:
        yield first, [ex]
        return
    edges = [ex]

    def dfs(v: int, seen: int) -> Iterator[tuple[int, list[int]]]:
        for w, e in inc[v]:
            if e == edges[-1]:
                continue
            if (used >> w) & 1:
                yield w, edges + [e]
            elif not (seen >> w) & 1:
                edges.append(e)
                yield from dfs(w, seen | 1 << w)
                edges.pop()

    yield from dfs(first, 1 << first)


def enumerate_subgraphs(
    g: CubicGraph, kind: str, spanning: bool = False, limit: Optional[int] = None
) -> SearchResult:
    """All simple cycles, theta subgraphs or K4 subgraphs (``kind`` in cycle/theta/k4)."""
    if kind == "cycle":
        source: Iterator[frozenset] = _simple_cycles(g)
    elif kind == "theta":
        source = (e for e, _ in _thetas(g))
    elif kind == "k4":
        source = _k4s(g)
    else:
        raise ValueError(f"unknown subgraph kind {kind!r}")
    n = g.num_vertices
    seen: set = set()
    out = []
    truncated = False
    for edges in source:
        if edges in seen:
            continue
        seen.add(edges)
        if spanning and len({v for e in edges for v in g.edges[e]}) != n:
            continue
        if limit is not None and len(out) >= limit:
            truncated = True
            break
        out.append(make_subgraph(g, kind, edges))
    out.sort(key=lambda h: (len(h.edges), sorted(h.edges)))
    return SearchResult(out, truncated)
