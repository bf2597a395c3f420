"""Rational Betti numbers of quotients N(P, Lambda), computed two independent ways.

``betti_choi_park`` sums reduced Betti numbers of the facet unions P_omega,
one per functional on the coloring.  ``betti_direct`` instead builds the
quotient as a simplicial complex (cone over the barycentric subdivision of
the boundary, one cone per group element, glued by the coset rule) and
takes exact ranks of its boundary matrices.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import combinations
from math import gcd
from typing import Any, Optional, Sequence

from . import gf2
from .coloring import AffineColoring, VectorColoring, is_closed_orientable, orientation_character
from .complexes import subsurface
from .errors import BadParameter, DimensionMismatch
from .gf2 import pack
from .polytope import SimplePolytope


@dataclass(frozen=True)
class BettiVector:
    b: tuple[int, int, int, int]
    method: str = "choi-park"
    orientable: bool = False
    closed: bool = False

    def to_dict(self) -> dict[str, Any]:
        return {"b": list(self.b), "method": self.method, "orientable": self.orientable, "closed": self.closed}


def _check(p: SimplePolytope, lam: VectorColoring) -> None:
    if lam.num_facets != p.num_facets:
        raise DimensionMismatch(f"polytope has {p.num_facets} facets, coloring has {lam.num_facets}")


def _flags(lam: VectorColoring) -> tuple[bool, bool]:
    closed = not lam.has_zero_column()
    return orientation_character(lam) is not None and closed, closed


def betti_choi_park(p: SimplePolytope, lam: VectorColoring) -> BettiVector:
    """H^k(N) is the sum over omega in the row space of reduced H^{k-1}(P_omega)."""
    _check(p, lam)
    norm = lam.normalized()
    cols = [pack(c) for c in norm.columns]
    b = [0, 0, 0, 0]
    for c in range(1 << norm.rank):
        omega = [i for i, x in enumerate(cols) if gf2.dot(c, x)]
        red = subsurface(p, omega).reduced_betti()
        for k in range(4):
            b[k] += red[k]
    orientable, closed = _flags(lam)
    return BettiVector(tuple(b), "choi-park", orientable, closed)  # type: ignore[arg-type]


@dataclass(frozen=True)
class SimplicialModel:
    """Simplices of each dimension as sorted tuples of vertex ids.

    ``labels[i]`` describes vertex i as (face kind, face index, coset rep).
    """

    labels: tuple[tuple, ...]
    simplices: tuple[tuple[tuple[int, ...], ...], ...]

    @property
    def counts(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.simplices)

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.counts))


def build_simplicial_model(p: SimplePolytope, lam: VectorColoring) -> SimplicialModel:
    """The quotient of 2^rho cones over the subdivided boundary.

    A point inside a face with facet set S is identified between copies a and
    b iff a - b lies in the span of the columns over S.  Vertices are labelled
    by (face, lexicographically least coset representative); a simplex is
    its vertex set.  Every simplex contains a vertex whose face determines
    the gluing of its interior, so vertex-set equality is exactly the
    identification and no further subdivision is needed.
    """
    _check(p, lam)
    norm = lam.normalized()
    rho = norm.rank
    cols = [pack(c) for c in norm.columns]

    def spans(facets: Sequence[int]) -> list[int]:
        return gf2.reduce_rows(cols[f] for f in facets)[0]

    facet_span = [spans([f]) for f in range(p.num_facets)]
    edge_span = [spans(e.facets) for e in p.edges]
    vert_span = [spans(v) for v in p.vertices]
    ids: dict[tuple, int] = {}

    def vid(label: tuple) -> int:
        if label not in ids:
            ids[label] = len(ids)
        return ids[label]

    flags = []
    for ei, e in enumerate(p.edges):
        for f in e.facets:
            for v in e.ends:
                flags.append((f, ei, v))
    tets = []
    for a in range(1 << rho):
        body = vid(("body", 0, a))
        for f, ei, v in flags:
            tet = (
                body,
                vid(("facet", f, gf2.lex_min_in_coset(a, facet_span[f], rho))),
                vid(("edge", ei, gf2.lex_min_in_coset(a, edge_span[ei], rho))),
                vid(("vertex", v, gf2.lex_min_in_coset(a, vert_span[v], rho))),
            )
            tets.append(tuple(sorted(tet)))
    if len(set(tets)) != len(tets):
        raise RuntimeError("internal error: two tetrahedra share a vertex set")
    levels: list[set] = [set(), set(), set(), set(tets)]
    for t in tets:
        for k in range(3):
            levels[k].update(combinations(t, k + 1))
    labels = [None] * len(ids)
    for lab, i in ids.items():
        labels[i] = lab
    return SimplicialModel(tuple(labels), tuple(tuple(sorted(s)) for s in levels))


def exact_rank(rows: list[dict[int, int]]) -> int:
    """Rank over the rationals of a sparse integer matrix.

    Fraction-free elimination: a row r is cleared against pivot row q via
    r <- q[c] * r - r[c] * q, then divided by the gcd of its entries.  The
    next pivot row is always one of the shortest remaining rows.
    """
    rows_by_id = {i: dict(r) for i, r in enumerate(rows) if r}
    col_rows: dict[int, set] = {}
    for i, r in rows_by_id.items():
        for c in r:
            col_rows.setdefault(c, set()).add(i)
    heap = [(len(r), i) for i, r in rows_by_id.items()]
    heapq.heapify(heap)
    rank = 0
    while heap:
        n, i = heapq.heappop(heap)
        r = rows_by_id.get(i)
        if r is None or len(r) != n:
            continue
        # prefer a unit pivot in the sparsest column
        c = min(r, key=lambda k: (abs(r[k]) != 1, len(col_rows[k])))
        pv = r[c]
        del rows_by_id[i]
        for k in r:
            col_rows[k].discard(i)
        rank += 1
        for j in list(col_rows[c]):
            other = rows_by_id[j]
            f = other[c]
            for k in other:
                col_rows[k].discard(j)
            new = {k: pv * x for k, x in other.items()}
            for k, x in r.items():
                y = new.get(k, 0) - f * x
                if y:
                    new[k] = y
                else:
                    new.pop(k, None)
            if new:
                g = 0
                for x in new.values():
                    g = gcd(g, x)
                    if g == 1:
                        break
                if g > 1:
                    new = {k: x // g for k, x in new.items()}
                rows_by_id[j] = new
                for k in new:
                    col_rows.setdefault(k, set()).add(j)
                heapq.heappush(heap, (len(new), j))
            else:
                del rows_by_id[j]
    return rank


def boundary_rows(model: SimplicialModel, k: int) -> list[dict[int, int]]:
    """Rows of the boundary map from k-simplices to (k-1)-simplices."""
    index = {s: i for i, s in enumerate(model.simplices[k - 1])}
    out = []
    for s in model.simplices[k]:
        row = {}
        for j in range(len(s)):
            row[index[s[:j] + s[j + 1:]]] = -1 if j % 2 else 1
        out.append(row)
    return out


def betti_direct(model: SimplicialModel, orientable: bool = False, closed: bool = False) -> BettiVector:
    n = model.counts
    ranks = [0] + [exact_rank(boundary_rows(model, k)) for k in (1, 2, 3)] + [0]
    b = tuple(n[k] - ranks[k] - ranks[k + 1] for k in range(4))
    return BettiVector(b, "direct", orientable, closed)  # type: ignore[arg-type]


def betti(p: SimplePolytope, lam: VectorColoring, method: str = "choi-park") -> BettiVector:
    if method == "choi-park":
        return betti_choi_park(p, lam)
    if method == "direct":
        orientable, closed = _flags(lam)
        return betti_direct(build_simplicial_model(p, lam), orientable, closed)
    raise BadParameter(f"unknown method {method!r}")


def _affine_frame(lam: AffineColoring) -> tuple[int, list[int], list[int], int]:
    base = pack(lam.points[0]) if lam.points else 0
    red, piv = gf2.reduce_rows(pack(x) ^ base for x in lam.points)
    return base, red, piv, len(red)


def _to_frame(x: Sequence[int], base: int, red: list[int], piv: list[int]) -> int:
    y = pack(x) ^ base
    coords = 0
    for k, (row, pv) in enumerate(zip(red, piv)):
        if (y >> pv) & 1:
            coords |= 1 << k
            y ^= row
    if y:
        raise BadParameter("point is not in the affine hull of the coloring")
    return coords


def _hyperplane_disks(p: SimplePolytope, pts: list[int], r: int, through: Optional[int]) -> bool:
    for a in range(1, 1 << r):
        for b in (0, 1):
            if through is not None and gf2.dot(a, through) != b:
                continue
            omega = [i for i, x in enumerate(pts) if gf2.dot(a, x) == b]
            if not subsurface(p, omega).is_disk:
                return False
    return True


def is_rhs(p: SimplePolytope, lam: AffineColoring, through_point: Optional[Sequence[int]] = None) -> bool:
    """Rational homology sphere test: every affine hyperplane cuts out a disk.

    Both the all-hyperplanes form and the through-a-point form are evaluated
    and must agree; ``through_point`` defaults to the first facet's point.
    """
    if lam.num_facets != p.num_facets:
        raise DimensionMismatch(f"polytope has {p.num_facets} facets, coloring has {lam.num_facets}")
    if through_point is not None and len(through_point) != lam.rank:
        raise DimensionMismatch("through point has the wrong length")
    base, red, piv, r = _affine_frame(lam)
    pts = [_to_frame(x, base, red, piv) for x in lam.points]
    p0 = 0 if through_point is None else _to_frame(through_point, base, red, piv)
    every = _hyperplane_disks(p, pts, r, None)
    through = _hyperplane_disks(p, pts, r, p0)
    if every != through:
        raise RuntimeError("internal error: hyperplane criteria disagree")
    return every


def is_rhs_vector(p: SimplePolytope, lam: VectorColoring) -> bool:
    """RHS test for a vector coloring; non-orientable or bounded quotients are never RHS."""
    if not is_closed_orientable(lam):
        return False
    aff = lam.to_affine()
    assert aff is not None
    return is_rhs(p, aff)

