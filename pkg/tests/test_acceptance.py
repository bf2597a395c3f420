"""Acceptance suite: one test per criterion, each printing a single PASS/FAIL line.

Every check runs at its stated tolerance (exact equality for counts and
Betti numbers) and its stated time budget.
"""
import itertools
import random
import time

from polyquot import hamilton, homology, polytope, spheres
from polyquot.coloring import (
    AffineColoring,
    IntegerColoring,
    VectorColoring,
    is_closed_orientable,
    orientation_character,
    torus_is_manifold,
    torus_is_sphere,
)
from polyquot.complexes import build_complex, subsurface
from polyquot.gf2 import affine_rank, unpack

from conftest import ACCEPTANCE_LINES
from helpers import characteristic_colorings, all_characteristic_colorings, random_affine, random_induced, random_vector

LIBRARY = polytope.library()


def report(n, ok, detail, elapsed, budget=None):
    timing = f"{elapsed:.2f} s" + (f", budget {budget:g} s" if budget is not None else "")
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail} ({timing})"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def induced_from_cycle(p, cycle):
    g = polytope.graph(p)
    sub = hamilton.make_subgraph(g, "cycle", frozenset(cycle))
    return spheres.induced_coloring(p, list(range(p.num_facets)), sub)


def first_cycle(p, pairs=None):
    """First Hamiltonian cycle found by search, optionally with a given perfect-pair count."""
    g = polytope.graph(p)
    for cyc in hamilton.enumerate_hamiltonian_cycles(g).items:
        if pairs is None or hamilton.count_perfect_pairs(g, hamilton.factorization_from_cycle(g, cyc)) == pairs:
            return cyc
    return None


def test_criterion_1_sphere_suite():
    cases = [(p.name + " constant", p, AffineColoring.constant(p.num_facets), True) for p in LIBRARY]
    simplex = polytope.builtin("simplex")
    cube = polytope.builtin("cube")
    cases.append(("simplex independent", simplex, AffineColoring.of([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]), True))
    cases.append(("cube opposite pairs", cube, AffineColoring.of([(0, 0), (0, 0), (1, 0), (1, 0), (0, 1), (0, 1)]), False))
    bad = []
    slowest = 0.0
    t_all = time.perf_counter()
    for name, p, lam, want in cases:
        t0 = time.perf_counter()
        got = spheres.is_sphere(p, lam)
        dt = time.perf_counter() - t0
        slowest = max(slowest, dt)
        if got != want or dt >= 0.1:
            bad.append(name)
    ok = report(1, not bad, f"{len(cases)} sphere cases, slowest {slowest * 1000:.1f} ms"
                + (f", wrong: {bad}" if bad else ""), time.perf_counter() - t_all, 0.1 * len(cases))
    assert ok


def test_criterion_2_hyperelliptic_counts():
    t0 = time.perf_counter()
    got = {}
    for name, pairs in [("prism5", None), ("cube", None), ("simplex", None), ("dodecahedron", 3)]:
        p = polytope.builtin(name)
        cyc = first_cycle(p, pairs)
        assert cyc is not None
        lam = induced_from_cycle(p, cyc)
        got[name] = spheres.enumerate_hyperelliptic(p, lam).count
    dt = time.perf_counter() - t0
    want = {"prism5": 1, "cube": 2, "simplex": 3, "dodecahedron": 3}
    ok = report(2, got == want and dt < 5, " ".join(f"{k}={v}" for k, v in got.items()), dt, 5)
    assert ok


def test_criterion_3_consistent_triples():
    t0 = time.perf_counter()
    none_expected = ["cube"] + [f"prism{k}" for k in range(4, 9)] + ["barrel6"]
    some_expected = ["simplex", "prism3", "dodecahedron"]
    counts = {}
    for name in none_expected + some_expected:
        res = hamilton.find_consistent_triples(polytope.graph(polytope.builtin(name)))
        assert not res.truncated
        counts[name] = len(res.items)
    dt = time.perf_counter() - t0
    ok = all(counts[n] == 0 for n in none_expected) and all(counts[n] >= 1 for n in some_expected) and dt < 30
    report(3, ok, " ".join(f"{k}={v}" for k, v in counts.items()), dt, 30)
    assert ok


def test_criterion_4_bipartite_obstruction():
    t0 = time.perf_counter()
    checked, violations, cycles = [], 0, 0
    for p in LIBRARY:
        g = polytope.graph(p)
        if not hamilton.is_bipartite(g):
            continue
        checked.append(p.name)
        res = hamilton.enumerate_hamiltonian_cycles(g)
        assert not res.truncated
        for cyc in res.items:
            cycles += 1
            if hamilton.count_perfect_pairs(g, hamilton.factorization_from_cycle(g, cyc)) == 3:
                violations += 1
    dt = time.perf_counter() - t0
    ok = bool(checked) and violations == 0 and dt < 10
    report(4, ok, f"bipartite builtins {checked}, {cycles} cycles, {violations} with 3 perfect pairs", dt, 10)
    assert ok


def test_criterion_5_rhs_suite():
    t_all = time.perf_counter()
    cube = polytope.builtin("cube")
    simplex = polytope.builtin("simplex")
    dodeca = polytope.builtin("dodecahedron")

    covers = all_characteristic_colorings(cube)
    rhs_covers = sum(homology.is_rhs_vector(cube, lam) for lam in covers)

    rp3 = homology.is_rhs(simplex, AffineColoring.of([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]))

    lam = induced_from_cycle(dodeca, first_cycle(dodeca, 3))
    dodeca_rhs = lam.rank == 2 and homology.is_rhs(dodeca, lam)

    # exhaustive: facet 0 at the origin (translation), the other five anywhere in Z_2^3
    t0 = time.perf_counter()
    found, searched = [], 0
    for rest in itertools.product(range(8), repeat=5):
        pts = [(0, 0, 0)] + [unpack(x, 3) for x in rest]
        if affine_rank(pts) != 3:
            continue
        searched += 1
        if homology.is_rhs(cube, AffineColoring.of(pts)):
            found.append(pts)
    search_dt = time.perf_counter() - t0
    if found:
        b = homology.betti(cube, AffineColoring.of(found[0]).to_vector()).b
    dt = time.perf_counter() - t_all
    ok = (rhs_covers == 0 and rp3 and dodeca_rhs and bool(found) and b == (1, 0, 0, 1) and search_dt < 60)
    report(5, ok, f"cube small covers {len(covers)} with {rhs_covers} RHS; RP3 {rp3}; dodecahedron rank-2 {dodeca_rhs}; "
              f"cube rank-3 RHS colorings {len(found)} of {searched} searched in {search_dt:.2f} s", dt, 60)
    assert ok


def fuzz_cases(n, seed):
    """(polytope, vector coloring) pairs with effective rank <= 4, mixed sources."""
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        p = rng.choice(LIBRARY)
        kind = rng.randrange(3)
        if kind == 0:
            lam = random_vector(p, rng.randint(1, 4), rng)
        elif kind == 1:
            lam = random_affine(p, rng.randint(0, 3), rng).to_vector()
        else:
            aff = random_induced(p, rng)
            if aff is None:
                continue
            lam = aff.to_vector()
        if lam.effective_rank <= 4:
            out.append((p, lam))
    return out


NAMED = [
    ("cube constant", "cube", VectorColoring.constant(6), (1, 0, 0, 1)),
    ("simplex identity", "simplex", VectorColoring.identity(4), (1, 0, 0, 1)),
    ("dodecahedron constant", "dodecahedron", VectorColoring.constant(12), (1, 0, 0, 1)),
    ("cube small cover", "cube", VectorColoring.of([(1, 0, 0), (1, 0, 0), (0, 1, 0), (0, 1, 0), (0, 0, 1), (0, 0, 1)]),
     (1, 3, 3, 1)),
]


def test_criterion_6_oracle_equivalence():
    t0 = time.perf_counter()
    cases = fuzz_cases(240, seed=2024)
    mismatches = 0
    for p, lam in cases:
        if homology.betti(p, lam, "choi-park").b != homology.betti(p, lam, "direct").b:
            mismatches += 1
    named_ok = True
    for _, name, lam, want in NAMED:
        p = polytope.builtin(name)
        named_ok &= homology.betti(p, lam, "choi-park").b == homology.betti(p, lam, "direct").b == want
    dt = time.perf_counter() - t0
    ok = mismatches == 0 and named_ok and len(cases) >= 200 and dt < 120
    report(6, ok, f"{len(cases)} fuzzed pairs, {mismatches} mismatches; named cases {'equal' if named_ok else 'WRONG'}", dt, 120)
    assert ok


def many_holed(p, lam_points):
    """True if some cfacet has >= 2 holes or two cfacets share >= 2 one-faces."""
    cx = build_complex(p, lam_points)
    if any(max(subsurface(p, cf).holes_per_component) >= 2 for cf in cx.cfacets):
        return True
    pairs = [f.cfacets for f in cx.one_faces]
    return len(set(pairs)) < len(pairs)


def test_criterion_7_duality_laws():
    t0 = time.perf_counter()
    cases = fuzz_cases(300, seed=7)
    closed_orientable, dual_bad, top_bad, holes_cases, holes_bad = 0, 0, 0, 0, 0
    for p, lam in cases:
        b = homology.betti(p, lam).b
        has_char = orientation_character(lam) is not None
        if is_closed_orientable(lam):
            closed_orientable += 1
            if not (b[0] == b[3] == 1 and b[1] == b[2]):
                dual_bad += 1
            aff = lam.to_affine()
            if many_holed(p, aff.points):
                holes_cases += 1
                holes_bad += b[1] < 1
        if not lam.has_zero_column() and (b[3] == 1) != has_char:
            top_bad += 1
        if lam.has_zero_column() and b[3] != 0:
            top_bad += 1
    cube = polytope.builtin("cube")
    # belt of four side facets against the two caps: the belt is an annulus
    mcor1 = AffineColoring.of([(1,), (1,), (1,), (1,), (0,), (0,)])
    # strip 2-0-3 and the opposite facet 1 meet along two disjoint 1-faces
    mcor2 = AffineColoring.of([(0, 0, 0), (1, 0, 0), (0, 0, 0), (0, 0, 0), (0, 1, 0), (0, 0, 1)])
    hand = {}
    for name, lam in (("mcor1", mcor1), ("mcor2", mcor2)):
        assert many_holed(cube, lam.points)
        hand[name] = homology.betti(cube, lam.to_vector()).b
    hand_ok = all(b[1] >= 1 for b in hand.values())
    dt = time.perf_counter() - t0
    ok = dual_bad == 0 and top_bad == 0 and holes_bad == 0 and hand_ok and closed_orientable > 0
    report(7, ok, f"{closed_orientable} closed orientable of {len(cases)}: duality failures {dual_bad}, "
              f"top-class failures {top_bad}; holed configurations {holes_cases} fuzzed + "
              f"{' '.join(f'{k}={v}' for k, v in hand.items())}", dt)
    assert ok


def hyperelliptic_count(p, lam):
    aff = lam.to_affine()
    if aff is None:
        return 0
    return spheres.enumerate_hyperelliptic(p, aff).count


def test_criterion_8_small_cover_law():
    t0 = time.perf_counter()
    summary, bad = [], []
    for name in ("simplex", "prism3", "cube", "prism5", "dodecahedron"):
        p = polytope.builtin(name)
        total, rhs, exhaustive = 0, 0, True
        for lam in characteristic_colorings(p):
            total += 1
            if total > 10 ** 4:
                exhaustive = False
                break
            is_rhs = homology.is_rhs_vector(p, lam)
            rhs += is_rhs
            if is_rhs != (hyperelliptic_count(p, lam) == 3):
                bad.append((name, lam.columns))
        if not exhaustive:
            rng = random.Random(8)
            for lam in itertools.islice(characteristic_colorings(p, rng=rng), 2000):
                if homology.is_rhs_vector(p, lam) != (hyperelliptic_count(p, lam) == 3):
                    bad.append((name, lam.columns))
        summary.append(f"{name} {min(total, 10 ** 4)}{'' if exhaustive else '+sample'} ({rhs} RHS)")
    dt = time.perf_counter() - t0
    ok = not bad
    report(8, ok, ", ".join(summary) + f"; counterexamples {len(bad)}", dt)
    assert ok


def test_criterion_9_count_set_fuzz():
    t0 = time.perf_counter()
    rng = random.Random(9)
    n, count_bad, cand_bad, induced = 0, 0, 0, 0
    histogram = {}
    while n < 10 ** 4:
        p = rng.choice(LIBRARY)
        lam = random_induced(p, rng) if rng.random() < 0.1 else None
        if lam is None:
            lam = random_affine(p, rng.randint(1, 5), rng)
        else:
            induced += 1
        rep = spheres.enumerate_hyperelliptic(p, lam)
        n += 1
        histogram[(rep.rank, rep.count)] = histogram.get((rep.rank, rep.count), 0) + 1
        if not rep.allowed_set_check:
            count_bad += 1
        if not set(rep.involutions) <= set(rep.candidates):
            cand_bad += 1
    dt = time.perf_counter() - t0
    ok = count_bad == 0 and cand_bad == 0
    nonzero = sorted(k for k in histogram if k[1])
    report(9, ok, f"{n} colorings ({induced} induced): {count_bad} counts outside allowed set, "
              f"{cand_bad} non-candidate involutions; (rank, count) seen {nonzero}", dt)
    assert ok


def test_criterion_10_torus_suite():
    t0 = time.perf_counter()
    simplex = polytope.builtin("simplex")
    s7 = torus_is_sphere(simplex, IntegerColoring.of([tuple(int(i == j) for i in range(4)) for j in range(4)]))
    s4 = all(torus_is_sphere(p, IntegerColoring.of([(1,)] * p.num_facets)) for p in LIBRARY)
    smith = torus_is_manifold(simplex, IntegerColoring.of([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 2)]))
    dt = time.perf_counter() - t0
    ok = s7 and s4 and not smith and dt < 1
    report(10, ok, f"simplex e1..e4 sphere {s7}; all-ones rank 1 sphere on every builtin {s4}; "
               f"Smith-factor-2 manifold {smith}", dt, 1)
    assert ok
