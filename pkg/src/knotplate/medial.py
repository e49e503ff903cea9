"""The bounded medial graph of a diagram and its upper/lower skein graphs.

Vertices: one "fourfold" per crossing, one "star" per bounded face, and one
circle vertex per corner of the outer face (the unraveled outer star).
Edges: one quadrant edge per (crossing, quadrant), oriented fourfold ->
star/circle, plus the ring arcs joining consecutive circle vertices.

Quadrant q of a crossing sits between slots q and q+1 mod 4.  Edge ids are
canonical: quadrant edges get id 4*c + q_hat where q_hat counts quadrants
from the crossing's base slot (so ids do not move when crossings are
flipped), then arcs follow in ring order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .diagram import InvalidDiagramError, faces as diagram_faces
from .graphs import RotationGraph

# Raw-slot quadrant pairings for smoothing a crossing: the upper graph joins
# the quadrants flanking each under-strand end (slots 0 and 2), the lower
# graph those flanking each over-strand end (slots 1 and 3).
UPPER_PAIRS = ((3, 0), (1, 2))
LOWER_PAIRS = ((0, 1), (2, 3))


@dataclass
class MedialGraph:
    diagram: object
    face_set: object
    graph: RotationGraph
    C: int
    E: int
    vertex_kind: list        # ("fourfold", c) | ("star", face_id) | ("circle", k)
    star_of_face: dict       # bounded face id -> vertex
    circle_vertices: list    # ring order -> vertex
    edge_kind: list          # ("quadrant", c, raw_q) | ("arc", k)
    quadrant_edge: dict      # (c, raw_q) -> edge id
    outer_corners: tuple     # outer face corners (c, raw_q), ring order

    @property
    def n_vertices(self):
        return self.graph.n

    @property
    def n_edges(self):
        return self.graph.n_edges

    def cycle_rank(self):
        return self.graph.cycle_rank()

    def fourfold(self, c):
        return c

    def arc_edge(self, k):
        return 4 * self.C + k


@dataclass
class SkeinGraph:
    """Upper or lower graph: stars and circle vertices, with the quadrant
    edges at each crossing merged in pairs across the smoothed fourfold."""

    side: str
    medial: MedialGraph
    graph: RotationGraph
    edge_meta: list          # ("merged", c, (qa, qb)) | ("arc", k)
    paths: list              # per edge: list of (medial edge id, sign)
    bounded_faces: list      # faces as lists of (edge id, direction)
    outer_face: list = field(repr=False, default=None)

    @property
    def n_bounded(self):
        return len(self.bounded_faces)

    def face_medial_word(self, face):
        """Expand a face walk into signed medial edge ids."""
        word = []
        for e, direction in face:
            path = self.paths[e]
            if direction > 0:
                word.extend(path)
            else:
                word.extend((eid, -sign) for eid, sign in reversed(path))
        return word


def build_medial(d, fs=None):
    """Construct the bounded medial graph of a valid diagram."""
    if fs is None:
        fs = diagram_faces(d)
    C = len(d.crossings)
    outer = fs.outer_face
    outer_corners = fs.corners[outer]
    E = len(outer_corners)
    if E < 2:
        raise InvalidDiagramError("outer face with fewer than 2 corners")

    corner_face = {}
    for fi, cs in enumerate(fs.corners):
        for corner in cs:
            corner_face[corner] = fi

    bounded = [fi for fi in range(fs.n_faces) if fi != outer]
    n_vertices = C + len(bounded) + E
    g = RotationGraph(n_vertices)
    vertex_kind = [("fourfold", c) for c in range(C)]
    star_of_face = {}
    for i, fi in enumerate(bounded):
        star_of_face[fi] = C + i
        vertex_kind.append(("star", fi))
    circle_vertices = []
    circle_of_corner = {}
    for k, corner in enumerate(outer_corners):
        v = C + len(bounded) + k
        circle_vertices.append(v)
        circle_of_corner[corner] = k
        vertex_kind.append(("circle", k))

    # Quadrant edges in canonical id order (4c + q_hat), then ring arcs.
    edge_kind = []
    quadrant_edge = {}
    for c in range(C):
        base = d.base_slot(c)
        for q_hat in range(4):
            q = (base + q_hat) % 4
            fi = corner_face[(c, q)]
            if fi == outer:
                head = circle_vertices[circle_of_corner[(c, q)]]
            else:
                head = star_of_face[fi]
            e = g.add_edge(c, head)
            edge_kind.append(("quadrant", c, q))
            quadrant_edge[(c, q)] = e
    for k in range(E):
        v, w = circle_vertices[k], circle_vertices[(k + 1) % E]
        g.add_edge(v, w)
        edge_kind.append(("arc", k))

    # Rotations.  Fourfolds: quadrants in slot order.  Stars: the face's
    # corners in reversed traversal order (the traversal rule walks bounded
    # faces with the interior on the right, so the star sees them reversed).
    # Circle vertices: inward quadrant edge, then incoming arc, outgoing arc.
    for c in range(C):
        g.set_rotation(c, [(quadrant_edge[(c, q)], 0) for q in range(4)])
    for fi, v in star_of_face.items():
        entries = [(quadrant_edge[corner], 1) for corner in reversed(fs.corners[fi])]
        g.set_rotation(v, entries)
    arc0 = 4 * C
    for k in range(E):
        v = circle_vertices[k]
        quad = quadrant_edge[outer_corners[k]]
        g.set_rotation(v, [(quad, 1), (arc0 + (k - 1) % E, 1), (arc0 + k, 0)])

    return MedialGraph(diagram=d, face_set=fs, graph=g, C=C, E=E,
                       vertex_kind=vertex_kind, star_of_face=star_of_face,
                       circle_vertices=circle_vertices, edge_kind=edge_kind,
                       quadrant_edge=quadrant_edge, outer_corners=outer_corners)


def contracted_medial(m):
    """The medial graph with the ring contracted to a single outer star;
    used for the every-face-is-4-sided validity check."""
    C, E = m.C, m.E
    n_stars = len(m.star_of_face)
    n = C + n_stars + 1
    outer_star = n - 1
    g = RotationGraph(n)
    for e in range(4 * C):
        tail, head = m.graph.edges[e]
        if m.vertex_kind[head][0] == "circle":
            head = outer_star
        g.add_edge(tail, head)
    for v in range(C + n_stars):
        g.set_rotation(v, [entry for entry in m.graph.rotation[v]])
    # Viewed from infinity the ring order reverses.
    entries = [(m.quadrant_edge[corner], 1) for corner in reversed(m.outer_corners)]
    g.set_rotation(outer_star, entries)
    return g


def skein_graph(m, side):
    """Smooth every fourfold of the medial graph per the over/under choice.

    side="upper": the pairs of quadrant edges flanking the under-strand ends
    are joined; side="lower": those flanking the over-strand ends.  Each
    merged edge records its 2-edge medial path; ring arcs pass through
    unchanged.  Bounded faces are enumerated by rotation-system traversal
    with the all-arcs outer face excluded.
    """
    if side not in ("upper", "lower"):
        raise ValueError("side must be 'upper' or 'lower'")
    pairs = UPPER_PAIRS if side == "upper" else LOWER_PAIRS
    C, E = m.C, m.E
    d = m.diagram
    offset = C  # medial vertex -> skein vertex shift (fourfolds dropped)
    n = m.graph.n - C
    g = RotationGraph(n)
    edge_meta = []
    paths = []
    merged_of_quadrant = {}  # (c, raw_q) -> (skein edge, end)
    for c in range(C):
        # Order the two merged edges by canonical quadrant index, so the
        # numbering is stable under crossing flips.
        base = d.base_slot(c)
        cpairs = sorted(pairs, key=lambda p: min((q - base) % 4 for q in p))
        for qa, qb in cpairs:
            ea = m.quadrant_edge[(c, qa)]
            eb = m.quadrant_edge[(c, qb)]
            tail = m.graph.edges[ea][1] - offset
            head = m.graph.edges[eb][1] - offset
            e = g.add_edge(tail, head)
            edge_meta.append(("merged", c, (qa, qb)))
            paths.append([(ea, -1), (eb, 1)])
            merged_of_quadrant[(c, qa)] = (e, 0)
            merged_of_quadrant[(c, qb)] = (e, 1)
    arc_base = 2 * C
    for k in range(E):
        tail, head = m.graph.edges[m.arc_edge(k)]
        g.add_edge(tail - offset, head - offset)
        edge_meta.append(("arc", k))
        paths.append([(m.arc_edge(k), 1)])

    for v in range(C, m.graph.n):
        entries = []
        for eid, end in m.graph.rotation[v]:
            kind = m.edge_kind[eid]
            if kind[0] == "quadrant":
                entries.append(merged_of_quadrant[(kind[1], kind[2])])
            else:
                entries.append((arc_base + kind[1], end))
        g.set_rotation(v - offset, entries)

    if not g.is_connected():
        # Happens at reducible clasps (a Reidemeister-II pair smoothed the
        # "open" way): the lid is then not cut into disks and the face
        # relators below would not present the group.
        raise InvalidDiagramError(
            "the %s graph of this diagram is disconnected; the template "
            "construction requires connected upper and lower graphs "
            "(reduce the diagram first)" % side)
    all_faces = g.trace_faces()
    outer = None
    ring = sorted((arc_base + k, 1) for k in range(E))
    for i, face in enumerate(all_faces):
        if len(face) == E and sorted(face) == ring:
            outer = i
            break
    if outer is None:
        raise InvalidDiagramError("skein graph has no all-arcs outer face; "
                                  "rotation conventions violated")
    bounded = [face for i, face in enumerate(all_faces) if i != outer]
    return SkeinGraph(side=side, medial=m, graph=g, edge_meta=edge_meta,
                      paths=paths, bounded_faces=bounded,
                      outer_face=all_faces[outer])


def _vertex_label(kind):
    return "%s:%d" % (kind[0], kind[1])


def medial_to_dot(m):
    """Graphviz text for the medial graph; vertices carry their partition."""
    lines = ["graph medial {"]
    for v, kind in enumerate(m.vertex_kind):
        lines.append('  v%d [label="%s" class="%s"];' % (v, _vertex_label(kind), kind[0]))
    for e, (t, h) in enumerate(m.graph.edges):
        kind = m.edge_kind[e]
        lines.append('  v%d -- v%d [label="e%d" class="%s"];' % (t, h, e, kind[0]))
    lines.append("}")
    return "\n".join(lines) + "\n"


def medial_to_json(m):
    return {
        "vertices": [
            {"id": v, "kind": kind[0], "index": kind[1]}
            for v, kind in enumerate(m.vertex_kind)
        ],
        "edges": [
            {"id": e, "tail": t, "head": h, "kind": m.edge_kind[e][0],
             "detail": list(m.edge_kind[e][1:])}
            for e, (t, h) in enumerate(m.graph.edges)
        ],
        "counts": graph_counts(m),
    }


def skein_to_dot(sk):
    m = sk.medial
    offset = m.C
    lines = ["graph %s {" % sk.side]
    for v in range(sk.graph.n):
        kind = m.vertex_kind[v + offset]
        lines.append('  v%d [label="%s" class="%s"];' % (v, _vertex_label(kind), kind[0]))
    for e, (t, h) in enumerate(sk.graph.edges):
        meta = sk.edge_meta[e]
        path = ";".join("%+d" % (sign * (eid + 1)) for eid, sign in sk.paths[e])
        lines.append('  v%d -- v%d [label="%s" path="%s"];'
                     % (t, h, "m%d" % e if meta[0] == "merged" else "a%d" % meta[1], path))
    lines.append("}")
    return "\n".join(lines) + "\n"


def skein_to_json(sk):
    m = sk.medial
    offset = m.C
    return {
        "side": sk.side,
        "vertices": [
            {"id": v, "kind": m.vertex_kind[v + offset][0],
             "index": m.vertex_kind[v + offset][1]}
            for v in range(sk.graph.n)
        ],
        "edges": [
            {"id": e, "tail": t, "head": h, "kind": sk.edge_meta[e][0],
             "detail": list(sk.edge_meta[e][1:]),
             "medial_path": [[eid, sign] for eid, sign in sk.paths[e]]}
            for e, (t, h) in enumerate(sk.graph.edges)
        ],
        "bounded_faces": [
            [[e, direction] for e, direction in face] for face in sk.bounded_faces
        ],
    }


def graph_counts(m):
    """Vertex/edge/rank census of a medial graph."""
    kinds = [k for k, *_ in m.vertex_kind]
    return {
        "vertices": m.graph.n,
        "edges": m.graph.n_edges,
        "cycle_rank": m.graph.cycle_rank(),
        "fourfolds": kinds.count("fourfold"),
        "stars": kinds.count("star"),
        "circle_vertices": kinds.count("circle"),
        "quadrant_edges": 4 * m.C,
        "arcs": m.E,
    }
