"""Vector, affine and integer colorings of facets, and the criteria built on them."""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Optional, Sequence, Union

from . import gf2
from .complexes import build_complex, recognize_c3r
from .errors import (
    DimensionMismatch,
    EmptyFace,
    NotDecidableWarning,
    SchemaError,
    ZeroColumn,
    ZeroInvolution,
)
from .gf2 import Gf2Matrix, Gf2Vector, pack, unpack
from .polytope import SimplePolytope

Incidence = Union[SimplePolytope, Sequence[Sequence[int]]]


def _check_columns(rank: int, columns: Sequence[Sequence[int]]) -> tuple[Gf2Vector, ...]:
    cols = tuple(tuple(int(b) for b in c) for c in columns)
    for c in cols:
        if len(c) != rank:
            raise DimensionMismatch(f"column {c} does not have length {rank}")
        if any(b not in (0, 1) for b in c):
            raise DimensionMismatch(f"column {c} is not a 0/1 vector")
    return cols


@dataclass(frozen=True)
class VectorColoring:
    """Per-facet vectors in Z_2^rank; zero columns mark boundary facets."""

    rank: int
    columns: tuple[Gf2Vector, ...]

    @classmethod
    def of(cls, columns: Sequence[Sequence[int]], rank: Optional[int] = None) -> "VectorColoring":
        if rank is None:
            rank = len(columns[0]) if columns else 0
        return cls(rank, _check_columns(rank, columns))

    @classmethod
    def identity(cls, m: int) -> "VectorColoring":
        return cls.of([tuple(int(i == j) for i in range(m)) for j in range(m)], m)

    @classmethod
    def constant(cls, m: int) -> "VectorColoring":
        return cls.of([(1,)] * m, 1)

    @property
    def num_facets(self) -> int:
        return len(self.columns)

    @cached_property
    def matrix(self) -> Gf2Matrix:
        return Gf2Matrix.from_columns(self.columns, self.rank)

    @cached_property
    def effective_rank(self) -> int:
        return gf2.rank(self.matrix)

    def normalized(self) -> "VectorColoring":
        """Same coloring up to a change of basis, with rank equal to the span dimension."""
        red, _ = gf2.reduce_rows(self.matrix.rows)
        m = self.num_facets
        cols = [tuple((r >> j) & 1 for r in red) for j in range(m)]
        return VectorColoring(len(red), tuple(cols))

    def has_zero_column(self) -> bool:
        return any(not any(c) for c in self.columns)

    def labels(self) -> tuple[Gf2Vector, ...]:
        return self.columns

    def to_affine(self) -> Optional["AffineColoring"]:
        """The equivalent affine coloring, or None when not closed and orientable."""
        if self.has_zero_column():
            return None
        norm = self.normalized()
        c = orientation_character(norm)
        if c is None:
            return None
        j = c.index(1)
        keep = [k for k in range(norm.rank) if k != j]
        pts = [tuple(col[k] for k in keep) for col in norm.columns]
        return AffineColoring(norm.rank - 1, tuple(pts))

    def to_dict(self) -> dict[str, Any]:
        return {"kind": "vector", "rank": self.rank, "columns": [list(c) for c in self.columns]}


@dataclass(frozen=True)
class AffineColoring:
    """Per-facet points of Z_2^rank; the vector coloring has columns (1, point)."""

    rank: int
    points: tuple[Gf2Vector, ...]

    @classmethod
    def of(cls, points: Sequence[Sequence[int]], rank: Optional[int] = None) -> "AffineColoring":
        if rank is None:
            rank = len(points[0]) if points else 0
        return cls(rank, _check_columns(rank, points))

    @classmethod
    def constant(cls, m: int) -> "AffineColoring":
        return cls(0, ((),) * m)

    @property
    def num_facets(self) -> int:
        return len(self.points)

    @cached_property
    def affine_rank(self) -> int:
        return gf2.affine_rank(self.points)

    def distinct_points(self) -> list[Gf2Vector]:
        return sorted(set(self.points))

    def to_vector(self) -> VectorColoring:
        return VectorColoring(self.rank + 1, tuple((1,) + p for p in self.points))

    def normalized(self) -> "AffineColoring":
        """Translate so the first point is 0 and use echelon coordinates on the direction space."""
        base = pack(self.points[0])
        packed = [pack(p) ^ base for p in self.points]
        red, piv = gf2.reduce_rows(packed)
        # in reduced echelon form the coefficient of basis row k is the bit at its pivot
        pts = tuple(tuple((x >> pv) & 1 for pv in piv) for x in packed)
        return AffineColoring(len(red), pts)

    def labels(self) -> tuple[Gf2Vector, ...]:
        return self.points

    def to_dict(self) -> dict[str, Any]:
        return {"kind": "affine", "rank": self.rank, "columns": [list(c) for c in self.points]}


@dataclass(frozen=True)
class IntegerColoring:
    rank: int
    columns: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, columns: Sequence[Sequence[int]], rank: Optional[int] = None) -> "IntegerColoring":
        if rank is None:
            rank = len(columns[0]) if columns else 0
        cols = tuple(tuple(int(x) for x in c) for c in columns)
        if any(len(c) != rank for c in cols):
            raise DimensionMismatch("integer column of wrong length")
        return cls(rank, cols)

    def to_dict(self) -> dict[str, Any]:
        return {"kind": "integer", "rank": self.rank, "columns": [list(c) for c in self.columns]}


@dataclass(frozen=True)
class SubgroupDescription:
    ambient: int
    basis: tuple[Gf2Vector, ...]
    equations: tuple[tuple[int, ...], ...]

    def to_dict(self) -> dict[str, Any]:
        return {
            "ambient": self.ambient,
            "basis": [gf2.bitstring(b) for b in self.basis],
            "equations": [list(e) for e in self.equations],
        }


@dataclass(frozen=True)
class ManifoldStatus:
    kind: str  # "closed", "boundary" or "not_manifold"
    boundary: tuple[int, ...] = ()
    witness: Optional[int] = None

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "boundary": list(self.boundary), "witness": self.witness}


def _incidence(p: Incidence, m: int) -> list[tuple[int, ...]]:
    if isinstance(p, SimplePolytope):
        if p.num_facets != m:
            raise DimensionMismatch(f"polytope has {p.num_facets} facets, coloring has {m}")
        return list(p.vertices)
    verts = [tuple(v) for v in p]
    if any(not 0 <= f < m for v in verts for f in v):
        raise DimensionMismatch("vertex refers to a facet without a column")
    return verts


def is_manifold(p: Incidence, lam: VectorColoring) -> ManifoldStatus:
    cols = [pack(c) for c in lam.columns]
    for vi, v in enumerate(_incidence(p, len(cols))):
        distinct = {cols[f] for f in v} - {0}
        if gf2.rank_of_rows(distinct) != len(distinct):
            return ManifoldStatus("not_manifold", witness=vi)
    zero = tuple(i for i, c in enumerate(cols) if c == 0)
    if zero:
        return ManifoldStatus("boundary", boundary=zero)
    return ManifoldStatus("closed")


def is_free(p: Incidence, lam: VectorColoring) -> bool:
    cols = [pack(c) for c in lam.columns]
    return all(gf2.rank_of_rows(cols[f] for f in v) == len(v) for v in _incidence(p, len(cols)))


def orientation_character(lam: VectorColoring) -> Optional[Gf2Vector]:
    """The functional that is 1 on every nonzero column, if one exists."""
    return gf2.solve_all_ones(lam.matrix)


def preserves_orientation(c: Sequence[int], x: Sequence[int]) -> bool:
    if len(c) != len(x):
        raise DimensionMismatch("functional and element differ in length")
    return gf2.dot(pack(c), pack(x)) == 0


def is_closed_orientable(lam: VectorColoring) -> bool:
    return not lam.has_zero_column() and orientation_character(lam) is not None


def project(lam: AffineColoring, tau: Sequence[int]) -> AffineColoring:
    """Compose with the quotient map by <tau>.

    Each point is replaced by the lexicographically smaller member of
    {x, x + tau}; the coordinate of the first nonzero entry of tau (now always
    zero) is then dropped.
    """
    if len(tau) != lam.rank:
        raise DimensionMismatch("involution has the wrong length")
    if not any(tau):
        raise ZeroInvolution("tau must be nonzero")
    j = list(tau).index(1)
    t = pack(tau)
    pts = []
    for p in lam.points:
        x = pack(p)
        if (x >> j) & 1:
            x ^= t
        q = unpack(x, lam.rank)
        pts.append(q[:j] + q[j + 1:])
    return AffineColoring(lam.rank - 1, tuple(pts))


def subgroup_of(lam: VectorColoring) -> SubgroupDescription:
    m = lam.num_facets
    red, _ = gf2.reduce_rows(lam.matrix.rows)
    equations = tuple(tuple(i for i in range(m) if (r >> i) & 1) for r in red)
    return SubgroupDescription(m, tuple(gf2.kernel_basis(lam.matrix)), equations)


def torus_is_manifold(p: Incidence, lam: IntegerColoring) -> bool:
    if any(not any(c) for c in lam.columns):
        raise ZeroColumn("integer colorings may not have zero columns")
    for v in _incidence(p, len(lam.columns)):
        distinct = sorted({lam.columns[f] for f in v})
        if not gf2.extends_to_basis(distinct):
            return False
    return True


def torus_is_sphere(p: SimplePolytope, lam: IntegerColoring) -> bool:
    r = lam.rank
    basis = {tuple(int(i == k) for i in range(r)) for k in range(r)}
    if any(c not in basis for c in lam.columns) or set(lam.columns) != basis:
        return False
    if r > 4:
        warnings.warn("sphere recognition is only implemented for rank <= 4", NotDecidableWarning, stacklevel=2)
        return False
    return recognize_c3r(build_complex(p, lam.columns), p) == r


def face_facets_meet(p: SimplePolytope, face: Sequence[int]) -> bool:
    g = set(face)
    return any(g <= set(t) for t in p.vertices)


def coloring_from_face(p: SimplePolytope, face: Sequence[int]) -> AffineColoring:
    """lambda_i = e_s on the s-th facet of the face, 0 on all other facets."""
    g = sorted(set(face))
    if not 1 <= len(g) <= 3 or any(not 0 <= f < p.num_facets for f in g) or not face_facets_meet(p, g):
        raise EmptyFace(f"facets {g} do not meet in a face")
    k = len(g)
    pts = []
    for i in range(p.num_facets):
        pts.append(tuple(int(g.index(i) == s) if i in g else 0 for s in range(k)))
    return AffineColoring(k, tuple(pts))


Coloring = Union[VectorColoring, AffineColoring, IntegerColoring]


def from_document(doc: Any) -> Coloring:
    if not isinstance(doc, dict):
        raise SchemaError("coloring document must be an object")
    kind = doc.get("kind")
    rank = doc.get("rank")
    cols = doc.get("columns")
    if kind not in ("vector", "affine", "integer"):
        raise SchemaError("kind must be vector, affine or integer")
    if not isinstance(rank, int) or isinstance(rank, bool) or rank < 0:
        raise SchemaError("rank must be a nonnegative integer")
    if not isinstance(cols, list) or not all(
        isinstance(c, list) and all(isinstance(x, int) and not isinstance(x, bool) for x in c) for c in cols
    ):
        raise SchemaError("columns must be a list of integer lists")
    if kind == "vector":
        return VectorColoring.of(cols, rank)
    if kind == "affine":
        return AffineColoring.of(cols, rank)
    return IntegerColoring.of(cols, rank)
