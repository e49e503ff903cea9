import itertools
import math
import random

import pytest

from knotplate import (InvalidDiagramError, Presentation, abelianization,
                       certify_unknot, complexity, fixture_diagram,
                       mirror_diagram, parse_pd, tietze_simplify,
                       wirtinger_presentation)
from knotplate.fixtures import random_diagram
from knotplate.fundgroup import (cyclic_reduce, free_reduce, gen_name,
                                 invert_word, smith_invariants, words_match)

from conftest import CATALOG, EXPECTED, pipe

TARGET_TREFOIL = Presentation(generators=("x", "y"),
                              relators=((1, 2, 1, -2, -1, -2),))


def test_word_reduction():
    assert free_reduce([1, -1]) == []
    assert free_reduce([1, 2, -2, -1, 3]) == [3]
    assert cyclic_reduce([1, 2, -1]) == [2]
    assert cyclic_reduce([1, 2, 3, -2, -1]) == [3]
    assert cyclic_reduce([1, 1, -1]) == [1]
    assert invert_word([1, -2, 3]) == [-3, 2, -1]


def test_gen_names():
    assert gen_name(0) == "a"
    assert gen_name(25) == "z"
    assert gen_name(26) == "a1"
    assert gen_name(27) == "b1"


def test_spanning_tree_counts():
    for name in CATALOG:
        p = pipe(name)
        assert len(p.tree.edge_ids) == p.m.n_vertices - 1
        assert len(p.tree.generator_edges) == 2 * p.m.C, name


def test_trefoil_tree_has_nine_edges_six_generators():
    p = pipe("trefoil")
    assert len(p.tree.edge_ids) == 9
    assert p.tree.n_generators == 6


def test_template_presentation_shape():
    for name in CATALOG:
        p = pipe(name)
        assert p.pres.n_generators == 2 * p.m.C, name
        assert p.pres.n_relators == 2 * p.m.C, name
        assert all(len(r) >= 1 for r in p.pres.relators), name
        assert set(p.pres.provenance) == {
            "%s-face %d" % (side, i)
            for side in ("upper", "lower") for i in range(p.m.C)}


def test_trefoil_raw_presentation():
    p = pipe("trefoil")
    assert p.pres.relator_lengths() == [3, 3, 3, 3, 3, 3]
    # Frozen regression of the exact relators under the default tree: each
    # face contributes two quadrant letters and one ring letter.
    assert p.pres.to_text() == (
        "gens: a b c d e f\n"
        "a' b f'\n"
        "e' c a\n"
        "c' d' b'\n"
        "b' d' a\n"
        "a' f' c'\n"
        "e' b c\n"
    )


def test_unknot3_raw_lengths():
    p = pipe("unknot3")
    assert p.pres.relator_lengths() == [1, 1, 2, 2, 6, 6]


def test_complexity_trefoil_exact():
    rep = complexity(pipe("trefoil").pres)
    assert rep.geometric_mean == 3.0
    assert rep.arithmetic_mean == 3.0
    assert rep.zero_length_count == 0


def test_complexity_unknot3():
    rep = complexity(pipe("unknot3").pres)
    assert abs(rep.geometric_mean - 2.289) < 1e-3
    assert abs(rep.geometric_mean - 144 ** (1 / 6)) < 1e-12
    assert rep.arithmetic_mean == 3.0


def test_complexity_equal_lengths_is_exact():
    p = Presentation(generators=("a", "b"), relators=((1, 2, 1), (2, -1, 2)))
    assert complexity(p).geometric_mean == 3.0


def test_complexity_gm_at_most_am():
    rng = random.Random(7)
    for _ in range(200):
        pres = pipe(random_diagram(rng)).pres
        rep = complexity(pres)
        assert rep.geometric_mean <= rep.arithmetic_mean + 1e-12
        if min(rep.lengths) != max(rep.lengths):
            assert rep.geometric_mean < rep.arithmetic_mean


def test_complexity_empty_relator_warning():
    p = Presentation(generators=("a",), relators=((), (1, 1)))
    rep = complexity(p)
    assert rep.zero_length_count == 1
    assert rep.geometric_mean == 2.0
    assert rep.warnings


def test_complexity_all_empty_undefined():
    rep = complexity(Presentation(generators=("a",), relators=((),)))
    assert math.isnan(rep.geometric_mean)
    assert rep.warnings


def test_tietze_trefoil_final_form():
    res = tietze_simplify(pipe("trefoil").pres)
    assert res.complete
    assert res.presentation.n_generators == 2
    assert res.presentation.n_relators == 1
    assert words_match(res.presentation, TARGET_TREFOIL)


def test_tietze_unknot_fixtures_reach_rank_one():
    for name in ("unknot3", "unknot4"):
        res = tietze_simplify(pipe(name).pres)
        assert res.complete, name
        assert res.presentation.n_generators == 1, name
        assert res.presentation.n_relators == 0, name


def test_tietze_kills_trivial_generator():
    p = Presentation(generators=("g",), relators=((1,),))
    res = tietze_simplify(p)
    assert res.presentation.n_generators == 0
    assert res.presentation.n_relators == 0


def test_tietze_length_two_substitution():
    p = Presentation(generators=("a", "b"), relators=((1, -2), (1, 2, 1)))
    res = tietze_simplify(p)
    # a = b collapses the second relator to a^3 = 1
    assert res.presentation.n_generators == 1
    assert res.presentation.relator_lengths() == [3]


def test_tietze_budget_flag():
    res = tietze_simplify(pipe("trefoil").pres, max_letters=4)
    assert not res.complete


def test_certify():
    assert certify_unknot(pipe("unknot3").pres).certified
    assert certify_unknot(pipe("unknot4").pres).certified
    r = certify_unknot(pipe("trefoil").pres)
    assert not r.certified
    assert r.verdict == "inconclusive"


def test_wirtinger_trefoil():
    w = wirtinger_presentation(fixture_diagram("trefoil"))
    assert w.n_generators == 3
    assert w.n_relators == 3
    assert w.relator_lengths() == [4, 4, 4]
    res = tietze_simplify(w)
    assert words_match(res.presentation, TARGET_TREFOIL)
    # the template route lands on the same final form
    tres = tietze_simplify(pipe("trefoil").pres)
    assert words_match(res.presentation, tres.presentation)


def test_wirtinger_catalog_shape():
    for name, (C, mu, _, _, _) in EXPECTED.items():
        w = wirtinger_presentation(fixture_diagram(name))
        assert w.n_generators == C, name
        assert w.relator_lengths() == [4] * C, name
        ab = abelianization(w)
        assert (ab.free_rank, ab.torsion) == (mu, ()), name


def test_wirtinger_rejects_component_without_underpass():
    # Hopf variant where one circle passes over at both crossings.
    d = parse_pd("X(4,2,3,1) X(3,2,4,1)")
    with pytest.raises(InvalidDiagramError):
        wirtinger_presentation(d)


def test_abelianization_catalog():
    for name, (C, mu, _, _, _) in EXPECTED.items():
        ab = abelianization(pipe(name).pres)
        assert (ab.free_rank, ab.torsion) == (mu, ()), name


def test_abelianization_torsion():
    # <a | a^3> = Z/3
    ab = abelianization(Presentation(generators=("a",), relators=((1, 1, 1),)))
    assert ab.free_rank == 0
    assert ab.torsion == (3,)
    assert str(ab) == "Z/3"


def _minor_gcd_invariants(rows, n):
    """Independent Smith-invariant oracle: d1...dk equals the gcd of all
    k x k minors."""
    def det(mat):
        if len(mat) == 1:
            return mat[0][0]
        total = 0
        for j in range(len(mat)):
            sub = [row[:j] + row[j + 1:] for row in mat[1:]]
            total += (-1) ** j * mat[0][j] * det(sub)
        return total

    m = len(rows)
    out = []
    prev = 1
    for k in range(1, min(m, n) + 1):
        g = 0
        for ri in itertools.combinations(range(m), k):
            for ci in itertools.combinations(range(n), k):
                sub = [[rows[i][j] for j in ci] for i in ri]
                g = math.gcd(g, det(sub))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


def test_smith_invariants_against_minor_gcd_oracle():
    rng = random.Random(11)
    known = [
        ([[2, 4], [6, 8]], 2),
        ([[1, 0], [0, 1]], 2),
        ([[0, 0], [0, 0]], 2),
        ([[6]], 1),
    ]
    for rows, n in known:
        assert smith_invariants(rows, n) == _minor_gcd_invariants(rows, n)
    for _ in range(60):
        m = rng.randint(1, 3)
        n = rng.randint(1, 3)
        rows = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(m)]
        got = smith_invariants(rows, n)
        assert got == _minor_gcd_invariants(rows, n), rows
        for a, b in zip(got, got[1:]):
            assert b % a == 0


def test_tietze_preserves_abelianization():
    for name in CATALOG:
        p = pipe(name)
        target = abelianization(p.pres)

        def check(q, target=target, name=name):
            ab = abelianization(q)
            assert (ab.free_rank, ab.torsion) == \
                (target.free_rank, target.torsion), (name, q)

        tietze_simplify(p.pres, check=check)


def test_mirror_complexity_invariance():
    for name in CATALOG:
        d = fixture_diagram(name)
        a = complexity(pipe(d).pres)
        b = complexity(pipe(mirror_diagram(d)).pres)
        assert a.lengths == b.lengths, name
        assert a.geometric_mean == b.geometric_mean, name


def test_words_match_checker():
    p = Presentation(generators=("a", "b"), relators=((1, 2, 1, -2, -1, -2),))
    q = Presentation(generators=("u", "v"), relators=((2, 1, 2, -1, -2, -1),))
    assert words_match(p, q)  # generator swap
    s = Presentation(generators=("a", "b"), relators=((-1, 2, 1, 2, -1, -2),))
    assert words_match(p, s)  # inverting one generator and rotating
    r = Presentation(generators=("a", "b"), relators=((1, 2, 1, 2, 1, 2),))
    assert not words_match(p, r)
    short = Presentation(generators=("a", "b"), relators=((1, 2, -1, -2),))
    assert not words_match(p, short)
