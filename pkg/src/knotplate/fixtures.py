"""Built-in diagram fixtures and generated families.

All fixtures are PD strings.  The knot and link diagrams are the standard
reduced alternating ones (trefoil and figure-eight as tabulated, the Hopf
link, and the Borromean rings read off the symmetric three-circle
arrangement).  The unknot fixtures switch one crossing of the trefoil and
figure-eight diagrams respectively, which unknots both.
"""

from __future__ import annotations

import random

from .diagram import InvalidDiagramError, faces, parse_pd
from .medial import build_medial, skein_graph

FIXTURES = {
    "trefoil": (
        "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)",
        "trefoil knot, standard alternating 3-crossing diagram",
    ),
    "figure-eight": (
        "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)",
        "figure-eight knot, standard alternating 4-crossing diagram",
    ),
    "hopf": (
        "X(1,4,2,3) X(3,2,4,1)",
        "Hopf link, two components, 2 crossings",
    ),
    "borromean": (
        "X(4,5,1,6) X(2,8,3,7) X(8,9,5,10) X(6,12,7,11) X(12,1,9,2) X(10,4,11,3)",
        "Borromean rings, three components, 6 crossings",
    ),
    "unknot3": (
        "X(1,4,2,5) X(3,6,4,1) X(2,6,3,5)",
        "trefoil-like unknot: trefoil diagram with crossing 2 switched",
    ),
    "unknot4": (
        "X(2,5,1,4) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)",
        "figure-eight-like unknot: figure-eight diagram with crossing 0 switched",
    ),
}

ALIASES = {
    "fig8": "figure-eight",
    "trefoil-shadow": "trefoil",
    "figure-eight-shadow": "figure-eight",
    "fig8-shadow": "figure-eight",
}


def fixture_pd(name):
    key = ALIASES.get(name, name)
    if key not in FIXTURES:
        raise KeyError("unknown fixture %r (try: %s)"
                       % (name, ", ".join(sorted(FIXTURES))))
    return FIXTURES[key][0]


def fixture_diagram(name):
    return parse_pd(fixture_pd(name))


def torus_knot_pd(k):
    """PD of the (2,k) torus knot (k odd, >= 3) as the closed 2-strand
    braid with k crossings.  Used as the linear-scaling family."""
    if k < 3 or k % 2 == 0:
        raise ValueError("torus knot family needs odd k >= 3")

    def lab(n):
        return (n - 1) % (2 * k) + 1

    terms = ["X(%d,%d,%d,%d)" % (lab(2 * i + 1), lab(2 * i + k + 1),
                                 lab(2 * i + 2), lab(2 * i + k + 2))
             for i in range(k)]
    return " ".join(terms)


_BASE_SHADOWS = ["trefoil", "figure-eight", "hopf", "borromean"]


def random_diagram(rng):
    """A random small valid diagram: a base shadow or torus family member
    with random crossing switches and a random arc relabeling.  Assignments
    whose smoothed upper/lower graphs disconnect (reducible clasps) are
    rejected and redrawn, since the template machinery refuses them."""
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    while True:
        if rng.random() < 0.6:
            pd = fixture_pd(rng.choice(_BASE_SHADOWS))
        else:
            pd = torus_knot_pd(rng.choice((3, 5, 7)))
        d = parse_pd(pd)
        crossings = [list(cr) for cr in d.crossings]
        for cr in crossings:
            r = rng.randrange(4)
            cr[:] = cr[r:] + cr[:r]
        labels = sorted(d.arc_index)
        new = list(range(1, len(labels) + 1))
        rng.shuffle(new)
        relabel = dict(zip(labels, new))
        crossings = [tuple(relabel[l] for l in cr) for cr in crossings]
        order = list(range(len(crossings)))
        rng.shuffle(order)
        pd_text = " ".join("X(%d,%d,%d,%d)" % crossings[i] for i in order)
        out = parse_pd(pd_text)
        try:
            m = build_medial(out, faces(out))
            skein_graph(m, "upper")
            skein_graph(m, "lower")
        except InvalidDiagramError:
            continue
        return out
