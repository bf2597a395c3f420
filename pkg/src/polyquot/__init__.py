"""Exact combinatorics of quotients N(P, Lambda) of real moment-angle manifolds over simple 3-polytopes."""
from .coloring import AffineColoring, IntegerColoring, VectorColoring
from .complexes import build_complex, recognize_c3r, subsurface
from .errors import PolyquotError
from .homology import betti_choi_park, betti_direct, build_simplicial_model, is_rhs
from .polytope import SimplePolytope, builtin, graph, library
from .spheres import enumerate_hyperelliptic, induced_coloring, is_sphere

__all__ = [
    "AffineColoring",
    "IntegerColoring",
    "VectorColoring",
    "PolyquotError",
    "SimplePolytope",
    "betti_choi_park",
    "betti_direct",
    "build_complex",
    "build_simplicial_model",
    "builtin",
    "enumerate_hyperelliptic",
    "graph",
    "induced_coloring",
    "is_rhs",
    "is_sphere",
    "library",
    "recognize_c3r",
    "subsurface",
]
