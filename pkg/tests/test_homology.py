import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix

from polyquot import gf2, homology, polytope
from polyquot.coloring import AffineColoring, VectorColoring, is_closed_orientable, orientation_character
from polyquot.errors import BadParameter, DimensionMismatch

from helpers import characteristic_colorings, random_affine, random_vector

LIBRARY = polytope.library()
SMALL = [p for p in LIBRARY if p.num_facets <= 8]
SIMPLEX = polytope.builtin("simplex")
CUBE = polytope.builtin("cube")
E1, E2, E3 = (1, 0, 0), (0, 1, 0), (0, 0, 1)
TORUS = VectorColoring.of([E1, E1, E2, E2, E3, E3])
RP3 = AffineColoring.of([E1, E2, E3, (1, 1, 1)])


def both(p, lam):
    return homology.betti(p, lam, "choi-park").b, homology.betti(p, lam, "direct").b


def test_betti_examples():
    for p in (SIMPLEX, CUBE):
        assert both(p, VectorColoring.constant(p.num_facets)) == ((1, 0, 0, 1),) * 2
    assert both(CUBE, TORUS) == ((1, 3, 3, 1),) * 2
    assert both(SIMPLEX, VectorColoring.identity(4)) == ((1, 0, 0, 1),) * 2


def test_betti_record():
    b = homology.betti(CUBE, TORUS)
    assert b.to_dict() == {"b": [1, 3, 3, 1], "method": "choi-park", "orientable": True, "closed": True}
    with pytest.raises(BadParameter):
        homology.betti(CUBE, TORUS, "cellular")
    with pytest.raises(DimensionMismatch):
        homology.betti(CUBE, VectorColoring.constant(4))


def test_model_counts():
    ball = homology.build_simplicial_model(CUBE, VectorColoring(0, ((),) * 6))
    assert ball.counts[3] == 48 and ball.euler_characteristic() == 1
    double = homology.build_simplicial_model(CUBE, VectorColoring.constant(6))
    assert double.counts[3] == 96 and double.euler_characteristic() == 0
    rz = homology.build_simplicial_model(SIMPLEX, VectorColoring.identity(4))
    assert rz.counts[3] == 384 and rz.euler_characteristic() == 0


def test_model_closed_under_faces():
    model = homology.build_simplicial_model(CUBE, TORUS)
    for k in range(1, 4):
        lower = set(model.simplices[k - 1])
        for s in model.simplices[k]:
            assert list(s) == sorted(s)
            for j in range(len(s)):
                assert s[:j] + s[j + 1:] in lower
    # a closed 3-manifold: every triangle lies on exactly two tetrahedra
    count = {t: 0 for t in model.simplices[2]}
    for s in model.simplices[3]:
        for j in range(4):
            count[s[:j] + s[j + 1:]] += 1
    assert set(count.values()) == {2}


def test_zero_column_gives_boundary():
    lam = VectorColoring.of([(0, 0, 0), E1, E2, E2, E3, E3])
    b = homology.betti(CUBE, lam, "direct")
    assert b.b[3] == 0 and not b.closed
    assert homology.betti(CUBE, lam).b == b.b


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6), st.integers(0, 2**32))
def test_exact_rank_matches_sympy(nrows, ncols, seed):
    rng = random.Random(seed)
    dense = [[rng.choice([0, 0, 0, 1, -1, 2, -3]) for _ in range(ncols)] for _ in range(nrows)]
    rows = [{j: x for j, x in enumerate(r) if x} for r in dense]
    assert homology.exact_rank(rows) == Matrix(dense).rank()


@settings(max_examples=120, deadline=None)
@given(st.sampled_from(LIBRARY), st.integers(0, 4), st.integers(0, 2**32))
def test_oracle_equivalence(p, r, seed):
    lam = random_vector(p, r, random.Random(seed))
    cp, direct = both(p, lam)
    assert cp == direct
    assert (cp[3] == 1) == (orientation_character(lam) is not None and not lam.has_zero_column())
    assert cp[0] == 1


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(LIBRARY), st.integers(0, 4), st.integers(0, 2**32))
def test_duality_on_affine(p, r, seed):
    lam = random_affine(p, r, random.Random(seed))
    b = homology.betti(p, lam.to_vector())
    assert b.closed and b.orientable
    assert b.b[0] == b.b[3] == 1 and b.b[1] == b.b[2]
    assert homology.is_rhs(p, lam) == (b.b == (1, 0, 0, 1))


def test_is_rhs_examples():
    assert homology.is_rhs(SIMPLEX, RP3)
    assert homology.is_rhs(CUBE, AffineColoring.constant(6))
    for lam in characteristic_colorings(CUBE):
        assert not homology.is_rhs_vector(CUBE, lam)


@pytest.mark.parametrize("p", SMALL, ids=lambda p: p.name)
def test_is_rhs_through_every_point(p):
    rng = random.Random(p.num_facets)
    for _ in range(30):
        lam = random_affine(p, rng.randint(1, 3), rng)
        want = homology.is_rhs(p, lam)
        for x in set(lam.points):
            assert homology.is_rhs(p, lam, through_point=x) == want


def test_is_rhs_point_errors():
    with pytest.raises(DimensionMismatch):
        homology.is_rhs(SIMPLEX, RP3, through_point=(1, 0))
    lam = AffineColoring.of([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)])
    with pytest.raises(BadParameter):
        homology.is_rhs(SIMPLEX, lam, through_point=(0, 0, 1))


def test_is_rhs_vector_non_orientable():
    lam = VectorColoring.of([E1, E2, E3, (1, 1, 1)])
    assert is_closed_orientable(lam)
    assert homology.is_rhs_vector(SIMPLEX, lam)
    assert not homology.is_rhs_vector(SIMPLEX, VectorColoring.of([E1, E2, E3, (1, 1, 0)]))
    assert not homology.is_rhs_vector(CUBE, VectorColoring.of([(0, 0, 0), E1, E2, E2, E3, E3]))


def test_rp3_hull_rank():
    assert gf2.affine_rank(RP3.points) == 2
