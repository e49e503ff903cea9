import pytest

from knotplate import (build_complex, build_medial, faces, fixture_diagram,
                       parse_pd, skein_graph, spanning_tree,
                       template_presentation)

CATALOG = ["trefoil", "figure-eight", "hopf", "borromean", "unknot3", "unknot4"]

# name -> (C, mu, E, T, alternating)
EXPECTED = {
    "trefoil": (3, 1, 3, 3, True),
    "figure-eight": (4, 1, 3, 2, True),
    "hopf": (2, 2, 2, 3, True),
    "borromean": (6, 3, 3, 0, True),
    "unknot3": (3, 1, 3, 3, False),
    "unknot4": (4, 1, 3, 2, False),
}


class Pipe:
    """Everything the pipeline produces for one diagram."""

    def __init__(self, d):
        self.d = d
        self.fs = faces(d)
        self.m = build_medial(d, self.fs)
        self.upper = skein_graph(self.m, "upper")
        self.lower = skein_graph(self.m, "lower")
        self.tree = spanning_tree(self.m)
        self.pres = template_presentation(self.m, self.upper, self.lower, self.tree)

    @property
    def complex(self):
        if not hasattr(self, "_tc"):
            self._tc = build_complex(self.m, self.upper, self.lower)
        return self._tc


def pipe(source):
    if isinstance(source, str):
        d = fixture_diagram(source) if "X" not in source else parse_pd(source)
    else:
        d = source
    return Pipe(d)


@pytest.fixture(scope="session")
def pipes():
    return {name: pipe(name) for name in CATALOG}
