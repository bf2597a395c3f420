"""Coloring generators shared by the test modules."""
from __future__ import annotations

import random
from collections import deque
from itertools import product
from typing import Iterator, Optional

from polyquot import hamilton, polytope
from polyquot.coloring import AffineColoring, VectorColoring
from polyquot.gf2 import pack, rank_of_rows, unpack
from polyquot.spheres import induced_coloring

NONZERO3 = [unpack(x, 3) for x in range(1, 8)]


def facet_order(p: polytope.SimplePolytope) -> list[int]:
    """Facets in BFS order from the facets of vertex 0, so vertex checks fire early."""
    start = list(p.vertices[0])
    seen = set(start)
    order = list(start)
    queue = deque(start)
    while queue:
        f = queue.popleft()
        for g in sorted(p.facet_adjacency[f]):
            if g not in seen:
                seen.add(g)
                order.append(g)
                queue.append(g)
    return order


def characteristic_colorings(
    p: polytope.SimplePolytope, fix_first_vertex: bool = True, rng: Optional[random.Random] = None
) -> Iterator[VectorColoring]:
    """Rank-3 colorings where the three columns at every vertex form a basis.

    With ``fix_first_vertex`` the facets of vertex 0 get e1, e2, e3, which
    picks one representative per change of basis.  ``rng`` shuffles the
    value order so that a truncated run is a random sample.
    """
    order = facet_order(p)
    pos = {f: i for i, f in enumerate(order)}
    # vertices become checkable once their last facet (in order) is assigned
    checks: list[list[tuple[int, ...]]] = [[] for _ in order]
    for v in p.vertices:
        checks[max(pos[f] for f in v)].append(v)
    cols: dict[int, int] = {}
    fixed = {}
    if fix_first_vertex:
        for k, f in enumerate(p.vertices[0]):
            fixed[f] = 1 << k

    def rec(i: int) -> Iterator[VectorColoring]:
        if i == len(order):
            yield VectorColoring(3, tuple(unpack(cols[f], 3) for f in range(p.num_facets)))
            return
        f = order[i]
        values = [fixed[f]] if f in fixed else list(range(1, 8))
        if rng is not None and f not in fixed:
            rng.shuffle(values)
        for x in values:
            cols[f] = x
            if all(rank_of_rows(cols[g] for g in v) == 3 for v in checks[i]):
                yield from rec(i + 1)
        cols.pop(f, None)

    yield from rec(0)


def all_characteristic_colorings(p: polytope.SimplePolytope) -> list[VectorColoring]:
    """Brute force over every assignment of nonzero vectors (small polytopes only)."""
    out = []
    for assign in product(range(1, 8), repeat=p.num_facets):
        if all(rank_of_rows(assign[f] for f in v) == 3 for v in p.vertices):
            out.append(VectorColoring(3, tuple(unpack(x, 3) for x in assign)))
    return out


def random_affine(p: polytope.SimplePolytope, r: int, rng: random.Random) -> AffineColoring:
    return AffineColoring(r, tuple(unpack(rng.randrange(1 << r), r) for _ in range(p.num_facets)))


def random_vector(p: polytope.SimplePolytope, r: int, rng: random.Random) -> VectorColoring:
    return VectorColoring(r, tuple(unpack(rng.randrange(1 << r), r) for _ in range(p.num_facets)))


def random_induced(p: polytope.SimplePolytope, rng: random.Random) -> Optional[AffineColoring]:
    """An induced coloring from a random Hamiltonian cycle, theta or K4 of the polytope graph."""
    g = polytope.graph(p)
    kind = rng.choice(["cycle", "theta", "k4"])
    if kind == "cycle":
        cycles = hamilton.enumerate_hamiltonian_cycles(g, limit=50).items
        if not cycles:
            return None
        sub = hamilton.make_subgraph(g, "cycle", frozenset(rng.choice(cycles)))
    else:
        subs = hamilton.enumerate_subgraphs(g, kind, spanning=True, limit=50).items
        if not subs:
            return None
        sub = rng.choice(subs)
    if len(sub.edges) == len(g.edges):
        return None
    return induced_coloring(p, list(range(p.num_facets)), sub)


def points_bits(lam: AffineColoring) -> list[int]:
    return [pack(x) for x in lam.points]
