"""Acceptance suite: the package's headline guarantees, one test each,
checked at fixed tolerances.

Run `pytest tests/test_acceptance.py -v -s` to see one PASS line per
criterion.
"""

import random
import time

from knotplate import (Presentation, abelianization, build_medial,
                       certify_unknot, complex_counts, complexity,
                       component_count, faces, fixture_diagram, flip_crossing,
                       mirror_diagram, parse_pd, skein_graph, spanning_tree,
                       template_presentation, tietze_simplify, torus_knot_pd,
                       wirtinger_presentation)
from knotplate.fixtures import random_diagram
from knotplate.fundgroup import words_match
from knotplate.medial import contracted_medial
from knotplate.report import scan_assignments

from conftest import CATALOG, EXPECTED, pipe

TARGET_TREFOIL = Presentation(generators=("x", "y"),
                              relators=((1, 2, 1, -2, -1, -2),))


def _full_run(pd_text):
    d = parse_pd(pd_text)
    fs = faces(d)
    m = build_medial(d, fs)
    upper = skein_graph(m, "upper")
    lower = skein_graph(m, "lower")
    tree = spanning_tree(m)
    pres = template_presentation(m, upper, lower, tree)
    return complexity(pres), pres


def test_criterion_1_trefoil_raw_presentation():
    rep, pres = _full_run("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)")
    assert pres.n_generators == 6
    assert pres.n_relators == 6
    assert pres.relator_lengths() == [3, 3, 3, 3, 3, 3]
    assert rep.geometric_mean == 3.0  # exactly
    best = min(_timed("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)") for _ in range(5))
    assert best < 0.010, "pipeline took %.4f s" % best
    print("\nACCEPTANCE 1: PASS - trefoil 6 gens / 6 relators, lengths "
          "{3,3,3,3,3,3}, complexity 3.000 exactly, %.2f ms" % (best * 1e3))


def _timed(pd_text):
    t0 = time.perf_counter()
    _full_run(pd_text)
    return time.perf_counter() - t0


def test_criterion_2_unknot3_lengths_and_complexity():
    rep, pres = _full_run("X(1,4,2,5) X(3,6,4,1) X(2,6,3,5)")
    assert pres.relator_lengths() == [1, 1, 2, 2, 6, 6]
    assert abs(rep.geometric_mean - 2.289) <= 0.001
    print("\nACCEPTANCE 2: PASS - trefoil-like unknot lengths "
          "{1,1,2,2,6,6}, complexity %.3f (= 2.289 +- 0.001)" % rep.geometric_mean)


def test_criterion_3_tietze_final_forms():
    res = tietze_simplify(pipe("trefoil").pres)
    assert res.complete
    assert res.presentation.n_generators == 2
    assert res.presentation.n_relators == 1
    assert words_match(res.presentation, TARGET_TREFOIL)
    for name in ("unknot3", "unknot4"):
        pres = pipe(name).pres
        r = tietze_simplify(pres)
        assert r.complete and r.presentation.n_generators == 1 \
            and r.presentation.n_relators == 0, name
        assert certify_unknot(pres).certified, name
    print("\nACCEPTANCE 3: PASS - trefoil cascade -> <x,y | x y x y' x' y'> "
          "(up to renaming/inversion); both unknot fixtures -> rank-1 free, "
          "certified")


def test_criterion_4_presentation_shapes_and_abelianizations():
    for name, (C, mu, _, _, _) in EXPECTED.items():
        p = pipe(name)
        assert p.pres.n_generators == 2 * C, name
        assert p.pres.n_relators == 2 * C, name
        w = wirtinger_presentation(p.d)
        assert w.n_generators == C and w.n_relators == C, name
        assert w.relator_lengths() == [4] * C, name
        for pres in (p.pres, w):
            ab = abelianization(pres)
            assert (ab.free_rank, ab.torsion) == (mu, ()), name
    print("\nACCEPTANCE 4: PASS - every fixture: template 2C/2C, Wirtinger "
          "C relators of length 4, both abelianize to Z^mu")


def test_criterion_5_template_counts():
    for name in CATALOG:
        cc = complex_counts(pipe(name).complex)
        C, E, T = cc["C"], cc["E"], cc["T"]
        assert cc["internal_walls"] == 4 * C - T, name
        assert cc["ring_walls"] == E, name
        assert cc["saddle_polygons"] == 5 * C, name
        assert cc["lid_facets"] == 2 * C, name
        assert cc["total_polygons"] <= 12 * C, name
        assert cc["edge_incidences"] <= 64 * C, name
    cc = complex_counts(pipe("trefoil").complex)
    assert (cc["internal_walls"] + cc["ring_walls"] + cc["saddle_polygons"]
            + cc["lid_facets"]) == 9 + 3 + 15 + 6 == 33 <= 36
    print("\nACCEPTANCE 5: PASS - walls 4C-T, ring E, saddles 5C, lids 2C on "
          "every fixture; totals within 12C polygons / 64C edge incidences; "
          "trefoil 9+3+15+6 = 33 <= 36")


def test_criterion_6_euler_characteristic_constant():
    # Oracle: hand count on the trefoil before implementation (see
    # test_template.py for the tally): V=44, E=76, F=33, chi = 1.
    trefoil = complex_counts(pipe("trefoil").complex)
    assert (trefoil["vertices"], trefoil["edges"], trefoil["faces"]) == (44, 76, 33)
    assert trefoil["euler_characteristic"] == 1
    chis = {name: complex_counts(pipe(name).complex)["euler_characteristic"]
            for name in CATALOG}
    assert set(chis.values()) == {1}, chis
    print("\nACCEPTANCE 6: PASS - chi(template) = 1 on every fixture "
          "(trefoil hand count 44 - 76 + 33)")


def test_criterion_7_alternating_assignments_are_maximal():
    t0 = time.perf_counter()
    for name, cases in (("trefoil", 8), ("figure-eight", 16)):
        rows = scan_assignments(fixture_diagram(name))
        assert len(rows) == cases
        mx = max(r.geometric_mean for r in rows)
        for r in rows:
            assert (abs(r.geometric_mean - mx) < 1e-12) == r.alternating, \
                (name, r.bits)
            assert 3.0 <= r.arithmetic_mean <= 4.0, (name, r.bits)
    dt = time.perf_counter() - t0
    assert dt < 5.0
    print("\nACCEPTANCE 7: PASS - 8 + 16 assignments scanned in %.2f s; the "
          "alternating assignments are exactly the complexity maxima; "
          "arithmetic mean in [3,4] throughout" % dt)


def test_criterion_8_linear_scaling():
    import gc
    from knotplate import build_complex

    def pipeline(pd):
        d = parse_pd(pd)
        fs = faces(d)
        m = build_medial(d, fs)
        upper = skein_graph(m, "upper")
        lower = skein_graph(m, "lower")
        tree = spanning_tree(m)
        template_presentation(m, upper, lower, tree)
        complex_counts(build_complex(m, upper, lower))

    def measure(C, reps):
        pd = torus_knot_pd(C)
        t0 = time.perf_counter()
        for _ in range(reps):
            pipeline(pd)
        return (time.perf_counter() - t0) / reps

    cs = list(range(3, 200, 14))
    reps = {C: max(1, 120 // C) for C in cs}  # amortize timer noise
    measure(3, 3)  # warm-up
    best = {C: float("inf") for C in cs}
    gc.disable()
    try:
        for _ in range(5):
            for C in cs:
                best[C] = min(best[C], measure(C, reps[C]))
    finally:
        gc.enable()
    xs, ys = [], []
    for C in cs:
        assert best[C] < 1.0, "C=%d took %.3f s" % (C, best[C])
        xs.append(C)
        ys.append(best[C])
    n = len(xs)
    mx, my = sum(xs) / n, sum(ys) / n
    slope = sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / \
        sum((x - mx) ** 2 for x in xs)
    intercept = my - slope * mx
    ss_res = sum((y - (intercept + slope * x)) ** 2 for x, y in zip(xs, ys))
    ss_tot = sum((y - my) ** 2 for y in ys)
    r2 = 1 - ss_res / ss_tot
    assert r2 > 0.99, "R^2 = %.4f" % r2
    print("\nACCEPTANCE 8: PASS - template+presentation over C=3..199: "
          "linear fit R^2 = %.4f, max %.1f ms per instance"
          % (r2, max(ys) * 1e3))


def test_criterion_9_property_suite():
    diagrams = [fixture_diagram(name) for name in CATALOG]
    rng = random.Random(193939)
    diagrams.extend(random_diagram(rng) for _ in range(1000))
    failures = 0
    for d in diagrams:
        # mirror invariance of complexity, exactly
        a = complexity(pipe(d).pres)
        b = complexity(pipe(mirror_diagram(d)).pres)
        assert a.lengths == b.lengths and a.geometric_mean == b.geometric_mean
        # component count invariant under every crossing flip
        mu = component_count(d)
        for i in range(len(d.crossings)):
            assert component_count(flip_crossing(d, i)) == mu
        # bipartite medial with every contracted face 4-sided
        p = pipe(d)
        g = contracted_medial(p.m)
        assert g.two_coloring() is not None
        fcs = g.trace_faces()
        assert len(fcs) == 2 * p.m.C and all(len(f) == 4 for f in fcs)
        # Tietze steps preserve abelianization
        target = abelianization(p.pres)

        def check(q, target=target):
            ab = abelianization(q)
            assert (ab.free_rank, ab.torsion) == (target.free_rank,
                                                  target.torsion)

        tietze_simplify(p.pres, check=check)
    print("\nACCEPTANCE 9: PASS - mirror/flip/bipartite/abelianization "
          "properties: 0 failures over %d fixtures + 1000 random diagrams"
          % len(CATALOG))
