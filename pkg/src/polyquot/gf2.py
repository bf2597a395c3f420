"""Exact linear and affine algebra over GF(2), plus integer Smith normal form.

Vectors are exposed as tuples of 0/1 ints.  Internally a vector of length n
is packed into a Python int with coordinate ``i`` stored in bit ``i``, so
addition is a single XOR.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .errors import DimensionMismatch, EmptySetError

Gf2Vector = tuple[int, ...]


def pack(bits: Sequence[int]) -> int:
    x = 0
    for i, b in enumerate(bits):
        if b & 1:
            x |= 1 << i
    return x


def unpack(x: int, n: int) -> Gf2Vector:
    return tuple((x >> i) & 1 for i in range(n))


def dot(a: int, b: int) -> int:
    return (a & b).bit_count() & 1


def bitstring(v: Sequence[int]) -> str:
    return "".join(str(b & 1) for b in v)


def parse_bitstring(s: str) -> Gf2Vector:
    if not s or any(ch not in "01" for ch in s):
        raise DimensionMismatch(f"not a bit string: {s!r}")
    return tuple(int(ch) for ch in s)


def _reverse(x: int, n: int) -> int:
    y = 0
    for i in range(n):
        if (x >> i) & 1:
            y |= 1 << (n - 1 - i)
    return y


@dataclass(frozen=True)
class Gf2Matrix:
    """A dense bit matrix; ``rows[i]`` packs row i (bit j = column j)."""

    nrows: int
    ncols: int
    rows: tuple[int, ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], ncols: Optional[int] = None) -> "Gf2Matrix":
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise DimensionMismatch("ragged rows")
        return cls(len(rows), ncols, tuple(pack(r) for r in rows))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], nrows: Optional[int] = None) -> "Gf2Matrix":
        if nrows is None:
            nrows = len(columns[0]) if columns else 0
        rows = [0] * nrows
        for j, col in enumerate(columns):
            if len(col) != nrows:
                raise DimensionMismatch("ragged columns")
            for i, b in enumerate(col):
                if b & 1:
                    rows[i] |= 1 << j
        return cls(nrows, len(columns), tuple(rows))

    def column(self, j: int) -> Gf2Vector:
        return tuple((r >> j) & 1 for r in self.rows)

    def columns(self) -> list[Gf2Vector]:
        return [self.column(j) for j in range(self.ncols)]

    def to_rows(self) -> list[Gf2Vector]:
        return [unpack(r, self.ncols) for r in self.rows]

    def transpose(self) -> "Gf2Matrix":
        return Gf2Matrix.from_rows(self.columns(), self.nrows) if self.ncols else Gf2Matrix(0, self.nrows, ())

    def apply(self, x: Sequence[int]) -> Gf2Vector:
        """Matrix-vector product ``M x``."""
        if len(x) != self.ncols:
            raise DimensionMismatch("vector length does not match column count")
        px = pack(x)
        return tuple(dot(r, px) for r in self.rows)


def reduce_rows(rows: Iterable[int]) -> tuple[list[int], list[int]]:
    """Reduced row echelon form of packed rows.

    Pivots are chosen at the lowest column index first.  Returns the nonzero
    reduced rows and their pivot columns, both ordered by pivot.
    """
    basis: list[int] = []
    pivots: list[int] = []
    for r in rows:
        for b, p in zip(basis, pivots):
            if (r >> p) & 1:
                r ^= b
        if not r:
            continue
        p = (r & -r).bit_length() - 1
        for i, b in enumerate(basis):
            if (b >> p) & 1:
                basis[i] = b ^ r
        basis.append(r)
        pivots.append(p)
    order = sorted(range(len(pivots)), key=pivots.__getitem__)
    return [basis[i] for i in order], [pivots[i] for i in order]


def rank_of_rows(rows: Iterable[int]) -> int:
    return len(reduce_rows(rows)[0])


def rank(m: Gf2Matrix) -> int:
    return rank_of_rows(m.rows)


def kernel_basis(m: Gf2Matrix) -> list[Gf2Vector]:
    """Basis of ``{x : m x = 0}`` read off the reduced echelon form."""
    red, piv = reduce_rows(m.rows)
    pivset = set(piv)
    basis = []
    for f in range(m.ncols):
        if f in pivset:
            continue
        x = 1 << f
        for r, p in zip(red, piv):
            if (r >> f) & 1:
                x |= 1 << p
        basis.append(unpack(x, m.ncols))
    return basis


def solve_affine(equations: Sequence[tuple[int, int]], n: int) -> Optional[tuple[int, list[int]]]:
    """Solve ``a . x = rhs`` for packed ``(a, rhs)`` pairs over n unknowns.

    Returns a particular solution and a basis of the homogeneous solution
    space, or None when inconsistent.
    """
    aug = [a | (rhs & 1) << n for a, rhs in equations]
    red, piv = reduce_rows(aug)
    if piv and piv[-1] == n:
        return None
    particular = 0
    for r, p in zip(red, piv):
        if (r >> n) & 1:
            particular |= 1 << p
    pivset = set(piv)
    null = []
    for f in range(n):
        if f in pivset:
            continue
        x = 1 << f
        for r, p in zip(red, piv):
            if (r >> f) & 1:
                x |= 1 << p
        null.append(x)
    return particular, null


def lex_min_in_coset(x: int, directions: Sequence[int], n: int) -> int:
    """Lexicographically smallest element of ``x + span(directions)``.

    Lexicographic order compares coordinate 0 first, which is integer order
    on the bit-reversed packing.
    """
    rx = _reverse(x, n)
    basis: list[int] = []
    for d in directions:
        rd = _reverse(d, n)
        for b in basis:
            rd = min(rd, rd ^ b)
        if rd:
            basis.append(rd)
            basis.sort(reverse=True)
    for b in basis:
        rx = min(rx, rx ^ b)
    return _reverse(rx, n)


def solve_all_ones(m: Gf2Matrix, active: Optional[Sequence[int]] = None) -> Optional[Gf2Vector]:
    """Find a functional c with ``c . column_j = 1`` for every active column.

    ``active`` lists column indices; by default all nonzero columns.  The
    lexicographically smallest solution is returned, or None.
    """
    cols = [pack(m.column(j)) for j in range(m.ncols)]
    if active is None:
        active = [j for j, c in enumerate(cols) if c]
    sol = solve_affine([(cols[j], 1) for j in active], m.nrows)
    if sol is None:
        return None
    particular, null = sol
    return unpack(lex_min_in_coset(particular, null, m.nrows), m.nrows)


def affine_rank(points: Sequence[Sequence[int]]) -> int:
    """Dimension of the affine hull of a nonempty point list."""
    if not points:
        raise EmptySetError("affine rank of an empty point set")
    n = len(points[0])
    return rank_of_rows(pack(p) | 1 << n for p in points) - 1


def direction_basis(points: Sequence[int]) -> list[int]:
    """Reduced basis of the direction space of the affine hull of packed points."""
    base = points[0]
    return reduce_rows(p ^ base for p in points[1:])[0]


def span_elements(basis: Sequence[int]) -> list[int]:
    """All elements of the span, in a fixed order (0 first)."""
    out = [0]
    for b in basis:
        out += [x ^ b for x in out]
    return out


@dataclass(frozen=True)
class JoinShape:
    """Affine type of a full-dimensional point set.

    ``kind`` is ``"simplex"``, ``"prism"`` (a join of a boolean simplex of
    dimension ``simplex_dim`` with a boolean simplicial prism of dimension
    ``prism_dim``) or ``"other"``.  For prisms, ``directions`` holds every
    main direction: one for ``prism_dim >= 3``, three for ``prism_dim == 2``.
    """

    kind: str
    dim: int
    simplex_dim: Optional[int] = None
    prism_dim: Optional[int] = None
    directions: tuple[Gf2Vector, ...] = ()


def classify_point_set(points: Sequence[Sequence[int]]) -> JoinShape:
    if not points:
        raise EmptySetError("cannot classify an empty point set")
    n = len(points[0])
    distinct = sorted({pack(p) for p in points})
    r = affine_rank([unpack(p, n) for p in distinct])
    size = len(distinct)
    if size == r + 1:
        return JoinShape("simplex", r, simplex_dim=r)
    k = size - r
    if k < 2 or size > 2 * r:
        return JoinShape("other", r)
    pts = set(distinct)
    found = []
    # A set of r+k points lying on exactly r lines of direction d is the join
    # of a simplex with a prism whose main direction is d.
    for d in span_elements(direction_basis(distinct))[1:]:
        pairs = sum(1 for p in distinct if p ^ d in pts) // 2
        if pairs == k:
            found.append(unpack(d, n))
    if not found:
        return JoinShape("other", r)
    return JoinShape("prism", r, simplex_dim=r - k - 1, prism_dim=k, directions=tuple(sorted(found)))


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> list[int]:
    """Invariant factors d1 | d2 | ... of an integer matrix (zeros included).

    Uses elementary row and column operations with exact integers.  The
    result has ``min(rows, cols)`` entries.
    """
    a = [list(map(int, row)) for row in matrix]
    nr = len(a)
    nc = len(a[0]) if nr else 0
    t = 0
    while t < min(nr, nc):
        entries = [(abs(a[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if a[i][j]]
        if not entries:
            break
        _, pi, pj = min(entries)
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, nr):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    dirty = True
            for j in range(t + 1, nc):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    dirty = True
            if not dirty:
                bad = [(i, j) for i in range(t + 1, nr) for j in range(t + 1, nc) if a[i][j] % p]
                if not bad:
                    break
                # enforce divisibility: fold the offending row into row t
                i, _ = bad[0]
                a[t] = [x + y for x, y in zip(a[t], a[i])]
                continue
            entries = [(abs(a[i][t]), i, t) for i in range(t, nr) if a[i][t]]
            entries += [(abs(a[t][j]), t, j) for j in range(t, nc) if a[t][j]]
            _, pi, pj = min(entries)
            a[t], a[pi] = a[pi], a[t]
            for row in a:
                row[t], row[pj] = row[pj], row[t]
        t += 1
    diag = [abs(a[i][i]) for i in range(min(nr, nc))]
    return diag


def extends_to_basis(columns: Sequence[Sequence[int]]) -> bool:
    """True iff the integer columns form part of a basis of Z^r."""
    if not columns:
        return True
    r = len(columns[0])
    if len(columns) > r:
        return False
    rows = [[c[i] for c in columns] for i in range(r)]
    return all(d == 1 for d in smith_normal_form(rows))


def all_vectors(n: int) -> list[Gf2Vector]:
    return [unpack(x, n) for x in range(1 << n)]


def pairwise_sums(points: Sequence[Sequence[int]]) -> list[Gf2Vector]:
    n = len(points[0])
    return sorted({unpack(pack(p) ^ pack(q), n) for p, q in combinations(points, 2)} - {(0,) * n})
