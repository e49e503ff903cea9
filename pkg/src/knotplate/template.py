"""The polygonal template complex: walls over the medial graph, a 5-quad
saddle per crossing, and top/bottom lids subdivided by the skein graphs;
plus a barycentric planar layout and a 3D mesh realization.

Two books are kept on the polygons.  ``sides`` counts each polygon's own
sides as drawn (walls and saddle pieces are 4-sided rectangles); the cell
complex underlying the Euler characteristic additionally splits the wall
verticals where the saddle flaps attach.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .medial import skein_graph


@dataclass
class Polygon:
    tag: str        # wall-internal | wall-ring | saddle-square | saddle-flap | lid-facet
    key: tuple
    boundary: list  # cell-complex edge keys, cyclic
    sides: int      # side count of the polygon as drawn
    meta: dict = field(default_factory=dict)


@dataclass
class TemplateComplex:
    diagram: object
    medial: object
    upper: object
    lower: object
    polygons: list
    edge_vertices: dict   # edge key -> (vertex key, vertex key)
    counts: dict


@dataclass
class PlanarLayout:
    positions: dict       # medial vertex -> (x, y)
    ring_radius: float
    min_edge: float


@dataclass
class Mesh:
    vertices: list        # (x, y, z)
    faces: list           # (group, [vertex indices])
    groups: tuple = ("walls", "ring", "saddles", "lids")


def _bigon_faces(m):
    """Bounded faces with exactly two corners; their wall pairs merge."""
    fs = m.face_set
    return {fi for fi in m.star_of_face if len(fs.corners[fi]) == 2}


def _wall_key(m, edge, bigons):
    """Identify the wall a quadrant edge belongs to (bigon walls merge)."""
    head = m.graph.edges[edge][1]
    kind = m.vertex_kind[head]
    if kind[0] == "star" and kind[1] in bigons:
        return ("bigon", kind[1])
    return ("quad", edge)


def build_complex(m, upper=None, lower=None):
    """Assemble the template polygons with shared edges identified.

    Walls: one per medial quadrant edge, except that the two walls of each
    two-cornered bounded face collapse into a single wall; plus one ring
    wall per circle arc.  Saddles: per crossing a central square and four
    flaps, folded up over the under-strand ends and down over the over-
    strand ends.  Lids: one facet per bounded face of the upper (top) and
    lower (bottom) skein graphs.
    """
    d = m.diagram
    if upper is None:
        upper = skein_graph(m, "upper")
    if lower is None:
        lower = skein_graph(m, "lower")
    C, E = m.C, m.E
    bigons = _bigon_faces(m)
    fs = m.face_set
    polys = []
    edge_vertices = {}

    def edge(key, va, vb):
        if key not in edge_vertices:
            edge_vertices[key] = (va, vb)
        return key

    # Trim points and saddle pieces are keyed by canonical quadrant index
    # (counted from the crossing's base slot) so that keys are stable under
    # crossing flips; raw slot parity still decides flap directions.
    def canq(c, q):
        return (q - d.base_slot(c)) % 4

    def trim(c, qh, lvl):
        return ("trim", c, qh, lvl)

    def trimv(c, qh, half):
        lo, hi = (-1, 0) if half == 0 else (0, 1)
        return edge(("trimv", c, qh, half), trim(c, qh, lo), trim(c, qh, hi))

    # Internal walls.
    done_bigons = set()
    for e in range(4 * C):
        _, c, q = m.edge_kind[e]
        head = m.graph.edges[e][1]
        kind = m.vertex_kind[head]
        wk = _wall_key(m, e, bigons)
        if wk[0] == "bigon":
            fi = wk[1]
            if fi in done_bigons:
                continue
            done_bigons.add(fi)
            (c1, q1), (c2, q2) = [m.edge_kind[m.quadrant_edge[corner]][1:]
                                  for corner in fs.corners[fi]]
            q1h, q2h = canq(c1, q1), canq(c2, q2)
            top = edge(("wall_t", wk), trim(c1, q1h, 1), trim(c2, q2h, 1))
            bot = edge(("wall_b", wk), trim(c1, q1h, -1), trim(c2, q2h, -1))
            boundary = [trimv(c1, q1h, 0), trimv(c1, q1h, 1), top,
                        trimv(c2, q2h, 1), trimv(c2, q2h, 0), bot]
            polys.append(Polygon("wall-internal", wk, boundary, 4,
                                 {"merged": True, "face": fi}))
            continue
        if kind[0] == "star":
            far_v = ("star", kind[1], 1)
            far_b = ("star", kind[1], -1)
            farv = edge(("starv", kind[1]), far_b, far_v)
        else:
            far_v = ("ring", kind[1], 1)
            far_b = ("ring", kind[1], -1)
            farv = edge(("ringv", kind[1]), far_b, far_v)
        qh = canq(c, q)
        top = edge(("wall_t", wk), trim(c, qh, 1), far_v)
        bot = edge(("wall_b", wk), trim(c, qh, -1), far_b)
        polys.append(Polygon("wall-internal", wk,
                             [trimv(c, qh, 0), trimv(c, qh, 1), top, farv, bot],
                             4, {"merged": False}))

    # Ring walls over the circle arcs.
    for k in range(E):
        k2 = (k + 1) % E
        va = edge(("ringv", k), ("ring", k, -1), ("ring", k, 1))
        vb = edge(("ringv", k2), ("ring", k2, -1), ("ring", k2, 1))
        top = edge(("ring_t", k), ("ring", k, 1), ("ring", k2, 1))
        bot = edge(("ring_b", k), ("ring", k, -1), ("ring", k2, -1))
        polys.append(Polygon("wall-ring", ("ring", k), [va, top, vb, bot], 4))

    # Saddles: central square plus four flaps per crossing.  The flap over
    # the side between quadrants i and i+1 crosses strand slot (i+1) mod 4;
    # under-strand slots fold up.
    for c in range(C):
        base = d.base_slot(c)
        sq_edges = []
        for ih in range(4):
            jh = (ih + 1) % 4
            sq_edges.append(edge(("sq", c, ih), trim(c, ih, 0), trim(c, jh, 0)))
        polys.append(Polygon("saddle-square", ("square", c), list(sq_edges), 4))
        for ih in range(4):
            jh = (ih + 1) % 4
            raw_slot = (base + ih + 1) % 4
            up = (raw_slot % 2 == 0)  # slots 0, 2 carry the under-strand
            lvl = 1 if up else -1
            half = 1 if up else 0
            ftop = edge(("flap_t", c, ih), trim(c, ih, lvl), trim(c, jh, lvl))
            polys.append(Polygon(
                "saddle-flap", ("flap", c, ih),
                [sq_edges[ih], trimv(c, jh, half), ftop, trimv(c, ih, half)],
                4, {"direction": "up" if up else "down"}))

    # Lids: one facet per bounded skein face, subdivided along the skein
    # graph.  A pass through a merged bigon wall contributes a single top
    # edge, hence no corner at the vanished star.
    for sk, lvl, wall_edge_tag in ((upper, 1, "wall_t"), (lower, -1, "wall_b")):
        ring_tag = "ring_t" if lvl == 1 else "ring_b"
        for fi, face in enumerate(sk.bounded_faces):
            walk = []
            for e, direction in face:
                meta = sk.edge_meta[e]
                if meta[0] == "arc":
                    walk.append((ring_tag, meta[1]))
                    continue
                _, c, (qa, qb) = meta
                ea, eb = m.quadrant_edge[(c, qa)], m.quadrant_edge[(c, qb)]
                seg = [(wall_edge_tag, _wall_key(m, ea, bigons)),
                       ("flap_t", c, canq(c, qa)),
                       (wall_edge_tag, _wall_key(m, eb, bigons))]
                if direction < 0:
                    seg.reverse()
                walk.extend(seg)
            # Fuse consecutive duplicates (cyclically): one pass over a
            # merged wall is one boundary side.
            fused = []
            for k in walk:
                if fused and fused[-1] == k:
                    continue
                fused.append(k)
            if len(fused) > 1 and fused[0] == fused[-1]:
                fused.pop()
            boundary = []
            for key in fused:
                if key not in edge_vertices:
                    raise AssertionError("lid boundary references unknown edge %r" % (key,))
                boundary.append(key)
            polys.append(Polygon("lid-facet", ("lid", sk.side, fi), boundary,
                                 len(boundary), {"side": sk.side, "face": fi}))

    T = len(bigons)
    tally = {}
    for p in polys:
        tally[p.tag] = tally.get(p.tag, 0) + 1
    counts = {
        "C": C, "E": E, "T": T,
        "internal_walls": tally.get("wall-internal", 0),
        "ring_walls": tally.get("wall-ring", 0),
        "saddle_polygons": tally.get("saddle-square", 0) + tally.get("saddle-flap", 0),
        "lid_facets": tally.get("lid-facet", 0),
        "total_polygons": len(polys),
    }
    return TemplateComplex(diagram=d, medial=m, upper=upper, lower=lower,
                           polygons=polys, edge_vertices=edge_vertices,
                           counts=counts)


def complex_counts(tc):
    """Census of the complex: per-class counts, side totals, and the Euler
    characteristic of the identified cell complex."""
    vertices = set()
    for va, vb in tc.edge_vertices.values():
        vertices.add(va)
        vertices.add(vb)
    V = len(vertices)
    Ecnt = len(tc.edge_vertices)
    F = len(tc.polygons)
    sides_total = sum(p.sides for p in tc.polygons)
    four_sided = sum(1 for p in tc.polygons if p.sides == 4)
    lid_sides = [p.sides for p in tc.polygons if p.tag == "lid-facet"]
    out = dict(tc.counts)
    out.update({
        "vertices": V,
        "edges": Ecnt,
        "faces": F,
        "euler_characteristic": V - Ecnt + F,
        "edge_incidences": sides_total,
        "four_sided": four_sided,
        "lid_side_average": (sum(lid_sides) / len(lid_sides)) if lid_sides else 0.0,
    })
    return out


# --- Planar layout ----------------------------------------------------------

def solve_barycentric(n, adjacency, fixed):
    """Place the non-fixed vertices of a connected graph at the average of
    their neighbours, with ``fixed`` vertex positions pinned."""
    import numpy as np

    interior = [v for v in range(n) if v not in fixed]
    index = {v: i for i, v in enumerate(interior)}
    k = len(interior)
    if k == 0:
        return dict(fixed)
    A = np.zeros((k, k))
    bx = np.zeros(k)
    by = np.zeros(k)
    for v in interior:
        i = index[v]
        nbrs = adjacency[v]
        A[i, i] = len(nbrs)
        for w in nbrs:
            if w in fixed:
                bx[i] += fixed[w][0]
                by[i] += fixed[w][1]
            else:
                A[i, index[w]] -= 1.0
    xs = np.linalg.solve(A, bx)
    ys = np.linalg.solve(A, by)
    pos = dict(fixed)
    for v, i in index.items():
        pos[v] = (float(xs[i]), float(ys[i]))
    return pos


def _segments_cross(p1, p2, p3, p4, eps=1e-12):
    def orient(a, b, c):
        return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])

    if len({p1, p2, p3, p4}) < 4:
        return False  # shared endpoints are fine
    d1 = orient(p3, p4, p1)
    d2 = orient(p3, p4, p2)
    d3 = orient(p1, p2, p3)
    d4 = orient(p1, p2, p4)
    return ((d1 > eps and d2 < -eps) or (d1 < -eps and d2 > eps)) and \
           ((d3 > eps and d4 < -eps) or (d3 < -eps and d4 > eps))


def layout(m, ring_radius=2.0, check=True):
    """Barycentric embedding of the medial graph with the circle vertices
    pinned uniformly on a circle of the given radius.  Verified straight-
    line non-crossing; raises with a hint to try another outer face if the
    drawing self-intersects."""
    E = m.E
    fixed = {}
    for k, v in enumerate(m.circle_vertices):
        # Ring order runs clockwise in the traversal convention.
        ang = math.pi / 2 - 2 * math.pi * k / E
        fixed[v] = (ring_radius * math.cos(ang), ring_radius * math.sin(ang))
    adjacency = [[] for _ in range(m.graph.n)]
    for (t, h) in m.graph.edges:
        adjacency[t].append(h)
        adjacency[h].append(t)
    pos = solve_barycentric(m.graph.n, adjacency, fixed)
    segs = [(pos[t], pos[h]) for (t, h) in m.graph.edges]
    min_edge = min(math.dist(a, b) for a, b in segs)
    if check:
        for i in range(len(segs)):
            for j in range(i + 1, len(segs)):
                if _segments_cross(*segs[i], *segs[j]):
                    raise ValueError(
                        "straight-line layout self-intersects (edges %d, %d); "
                        "try a different outer face" % (i, j))
    return PlanarLayout(positions=pos, ring_radius=ring_radius, min_edge=min_edge)


# --- Mesh -------------------------------------------------------------------

_GROUP_OF_TAG = {
    "wall-internal": "walls",
    "wall-ring": "ring",
    "saddle-square": "saddles",
    "saddle-flap": "saddles",
    "lid-facet": "lids",
}


def build_mesh(tc, pl, height=1.0, saddle_radius=None, flap_height=None,
               ring_radius=None):
    """Realize the template complex in 3D.

    Walls extrude vertically over the layout, trimmed to ``saddle_radius``
    around each crossing; the saddle square sits in the z=0 plane with its
    flaps rising or dropping to the lids at z = +-height.  The mesh has
    exactly one face per template polygon.
    """
    m = tc.medial
    if height <= 0:
        raise ValueError("height must be positive")
    if saddle_radius is None:
        saddle_radius = 0.15 * pl.min_edge
    if not 0 < saddle_radius < pl.min_edge / 2:
        raise ValueError("saddle radius must lie in (0, min edge length / 2)")
    if flap_height is None:
        flap_height = height
    if flap_height != height:
        # Flap top edges are identified with lid boundary edges, so the
        # flaps must reach z = +-height for the complex to close.
        raise ValueError("flap height must equal height: the saddle flaps "
                         "end on the lids")
    pos = pl.positions
    H = height

    def vertex_xy(vkey):
        kind = vkey[0]
        if kind == "trim":
            _, c, qh, _ = vkey
            e = 4 * c + qh  # canonical quadrant edge id
            head = m.graph.edges[e][1]
            px, py = pos[c]
            hx, hy = pos[head]
            dx, dy = hx - px, hy - py
            norm = math.hypot(dx, dy)
            return (px + saddle_radius * dx / norm, py + saddle_radius * dy / norm)
        if kind == "star":
            return pos[m.star_of_face[vkey[1]]]
        if kind == "ring":
            return pos[m.circle_vertices[vkey[1]]]
        raise KeyError(vkey)

    def vertex_z(vkey):
        return vkey[-1] * H

    vkeys = []
    vindex = {}
    for va, vb in tc.edge_vertices.values():
        for v in (va, vb):
            if v not in vindex:
                vindex[v] = len(vkeys)
                vkeys.append(v)
    coords = []
    for v in vkeys:
        x, y = vertex_xy(v)
        coords.append((x, y, vertex_z(v)))

    # Each polygon's vertex cycle: chain its boundary edges end to end.
    faces = []
    for p in tc.polygons:
        cycle = _boundary_vertices(tc, p)
        faces.append((_GROUP_OF_TAG[p.tag], [vindex[v] for v in cycle]))
    return Mesh(vertices=coords, faces=faces)


def _boundary_vertices(tc, poly):
    """Order the polygon's boundary edge chain into a vertex cycle."""
    edges = [tc.edge_vertices[k] for k in poly.boundary]
    n = len(edges)
    if n == 1:
        return list(edges[0])
    a, b = edges[0]
    if b in edges[1]:
        cycle = [a, b]
    elif a in edges[1]:
        cycle = [b, a]
    else:
        raise AssertionError("boundary chain broken at %r" % (poly.key,))
    cur = cycle[1]
    for va, vb in edges[1:]:
        if va == cur:
            nxt = vb
        elif vb == cur:
            nxt = va
        else:
            raise AssertionError("boundary chain broken at %r" % (poly.key,))
        cycle.append(nxt)
        cur = nxt
    if cycle[-1] != cycle[0]:
        raise AssertionError("boundary of %r does not close" % (poly.key,))
    return cycle[:-1]


def export_obj(mesh, comment=None):
    """Wavefront OBJ text: v records, then one g group per template region
    with its f records (1-based indices)."""
    from . import __version__

    lines = ["# knotplate OBJ export v%s" % __version__]
    if comment:
        lines.append("# %s" % comment)
    for x, y, z in mesh.vertices:
        lines.append("v %.6f %.6f %.6f" % (x, y, z))
    for group in mesh.groups:
        members = [f for g, f in mesh.faces if g == group]
        if not members:
            continue
        lines.append("g %s" % group)
        for face in members:
            lines.append("f " + " ".join(str(i + 1) for i in face))
    return "\n".join(lines) + "\n"


# --- JSON serialization ------------------------------------------------------

def _key_to_json(key):
    return list(key) if isinstance(key, tuple) else key


def _key_from_json(key):
    if isinstance(key, list):
        return tuple(_key_from_json(k) for k in key)
    return key


def complex_to_json(tc):
    data = {
        "counts": complex_counts(tc),
        "edges": [
            {"key": _key_to_json(k), "vertices": [_key_to_json(v) for v in vv]}
            for k, vv in sorted(tc.edge_vertices.items())
        ],
        "polygons": [
            {"tag": p.tag, "key": _key_to_json(p.key), "sides": p.sides,
             "boundary": [_key_to_json(k) for k in p.boundary],
             "meta": {k: p.meta[k] for k in sorted(p.meta)}}
            for p in tc.polygons
        ],
    }
    return json.dumps(data, indent=1, sort_keys=True)


def complex_from_json(text):
    """Rebuild the combinatorial complex (polygons and edge identifications)
    from its JSON form."""
    data = json.loads(text)
    polys = [Polygon(p["tag"], _key_from_json(p["key"]),
                     [_key_from_json(k) for k in p["boundary"]],
                     p["sides"], dict(p["meta"]))
             for p in data["polygons"]]
    edge_vertices = {}
    for e in data["edges"]:
        edge_vertices[_key_from_json(e["key"])] = tuple(
            _key_from_json(v) for v in e["vertices"])
    counts = {k: data["counts"][k]
              for k in ("C", "E", "T", "internal_walls", "ring_walls",
                        "saddle_polygons", "lid_facets", "total_polygons")}
    return TemplateComplex(diagram=None, medial=None, upper=None, lower=None,
                           polygons=polys, edge_vertices=edge_vertices,
                           counts=counts)
