"""Knot/link diagrams as 4-valent planar rotation systems with over/under data.

A diagram is a list of crossings.  Each crossing holds the labels of its four
incident arcs in counterclockwise slot order, slot 0 being the incoming
under-strand arc.  Slots 0 and 2 therefore carry the under-strand and slots
1 and 3 the over-strand, so the over/under choice is implicit in the slot
labelling.  The PD text form is whitespace-separated terms ``X(a,b,c,d)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class DiagramError(ValueError):
    """Base class for diagram construction and validation errors."""


class PDSyntaxError(DiagramError):
    """Malformed PD text; carries the character offset of the problem."""

    def __init__(self, message, position):
        super().__init__("%s (at character %d)" % (message, position))
        self.position = position


class InvalidDiagramError(DiagramError):
    """Structurally invalid diagram (bad arcs, non-planar, disconnected...)."""


@dataclass(frozen=True)
class Diagram:
    """A planar 4-valent rotation system with an over/under choice per vertex.

    crossings[c][s] is the arc label at slot s of crossing c.  The derived
    ``arc_index`` maps each arc label to the list of (crossing, slot) ends
    where it appears (exactly two for a valid diagram).
    """

    crossings: tuple
    arc_index: dict = field(compare=False, repr=False)

    def __init__(self, crossings):
        object.__setattr__(self, "crossings", tuple(tuple(c) for c in crossings))
        index = {}
        for ci, cr in enumerate(self.crossings):
            if len(cr) != 4:
                raise InvalidDiagramError(
                    "crossing %d has %d slots, expected 4" % (ci, len(cr)))
            for s, label in enumerate(cr):
                if not isinstance(label, int) or label <= 0:
                    raise InvalidDiagramError(
                        "crossing %d slot %d: arc labels must be positive integers" % (ci, s))
                index.setdefault(label, []).append((ci, s))
        object.__setattr__(self, "arc_index", index)

    def __len__(self):
        return len(self.crossings)

    @property
    def n_crossings(self):
        return len(self.crossings)

    def other_end(self, crossing, slot):
        """The (crossing, slot) at the far end of the arc leaving this slot."""
        label = self.crossings[crossing][slot]
        ends = self.arc_index[label]
        if len(ends) != 2:
            raise InvalidDiagramError(
                "arc %d occurs %d times, expected 2" % (label, len(ends)))
        a, b = ends
        return b if a == (crossing, slot) else a

    def base_slot(self, crossing):
        """Canonical reference slot of a crossing: the slot with the smallest
        arc label.  Arc labels stay attached to the same strand ends when a
        crossing is flipped, so every structural choice keyed off this base
        slot is invariant under over/under changes."""
        cr = self.crossings[crossing]
        return min(range(4), key=lambda s: (cr[s], s))

    def canonical_slot(self, crossing, slot):
        return (slot - self.base_slot(crossing)) % 4


@dataclass(frozen=True)
class FaceSet:
    """Faces of the diagram's rotation system.

    Each face is a tuple of directed half-edges, one per boundary arc,
    written as the (crossing, slot) the half-edge leaves from.  ``corners``
    lists, per face, the (crossing, quadrant) corner occupied on arrival at
    each crossing; quadrant q sits between slots q and q+1 mod 4.
    """

    faces: tuple
    corners: tuple
    outer_face: int

    @property
    def n_faces(self):
        return len(self.faces)


@dataclass
class ValidationReport:
    """Diagnostics for a diagram: counts used downstream plus any issues."""

    ok: bool
    component_count: int
    C: int
    E_exterior: int
    T_bigons: int
    issues: list


def parse_pd(text):
    """Parse PD notation into a Diagram.

    Grammar: whitespace-separated terms ``X(a,b,c,d)`` with positive integer
    arc labels and no spaces inside the parentheses; ``#`` starts a comment
    running to end of line.
    """
    crossings = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch in " \t\r\n":
            i += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch != "X":
            raise PDSyntaxError("expected 'X'", i)
        start = i
        i += 1
        if i >= n or text[i] != "(":
            raise PDSyntaxError("expected '(' after 'X'", i)
        i += 1
        labels = []
        num = ""
        while i < n and text[i] != ")":
            c = text[i]
            if c.isdigit():
                num += c
            elif c == ",":
                if not num:
                    raise PDSyntaxError("expected arc label before ','", i)
                labels.append(int(num))
                num = ""
            else:
                raise PDSyntaxError("unexpected character %r in crossing" % c, i)
            i += 1
        if i >= n:
            raise PDSyntaxError("unterminated crossing term", start)
        if not num:
            raise PDSyntaxError("expected arc label before ')'", i)
        labels.append(int(num))
        i += 1
        if len(labels) != 4:
            raise PDSyntaxError(
                "crossing has %d arc labels, expected 4" % len(labels), start)
        if any(l <= 0 for l in labels):
            raise PDSyntaxError("arc labels must be positive", start)
        crossings.append(tuple(labels))
    if not crossings:
        raise InvalidDiagramError(
            "diagram has no crossings; a 0-crossing unknot has group Z and "
            "no template in this construction")
    d = Diagram(crossings)
    for label, ends in sorted(d.arc_index.items()):
        if len(ends) != 2:
            raise InvalidDiagramError(
                "arc %d occurs %d times, expected exactly 2" % (label, len(ends)))
    return d


def serialize_pd(d):
    """Canonical PD text: crossings in index order, single spaces, newline."""
    terms = ["X(%d,%d,%d,%d)" % cr for cr in d.crossings]
    return " ".join(terms) + "\n"


def _directed_edge_order(d):
    """Canonical enumeration of directed half-edges: per crossing, slots are
    visited starting from the crossing's base slot, so the order does not
    change when crossings are flipped."""
    order = []
    for ci in range(len(d.crossings)):
        b = d.base_slot(ci)
        for k in range(4):
            order.append((ci, (b + k) % 4))
    return order


def faces(d, outer=None):
    """Trace the faces of the rotation system.

    Traversal rule: a face entering a crossing at slot s continues along the
    half-edge leaving at slot (s+1) mod 4.  The outer face defaults to the
    face with the longest boundary, ties broken by smallest face index.

    Raises InvalidDiagramError when the face count is not C + 2 (non-planar
    rotation system, or a disconnected diagram).
    """
    C = len(d.crossings)
    for label, ends in d.arc_index.items():
        if len(ends) != 2:
            raise InvalidDiagramError(
                "arc %d occurs %d times, expected exactly 2" % (label, len(ends)))
    seen = set()
    face_list = []
    corner_list = []
    for start in _directed_edge_order(d):
        if start in seen:
            continue
        walk = []
        corners = []
        cur = start
        while True:
            walk.append(cur)
            seen.add(cur)
            nc, ns = d.other_end(*cur)
            corners.append((nc, ns))  # quadrant q == arrival slot q
            cur = (nc, (ns + 1) % 4)
            if cur == start:
                break
            if cur in seen:
                raise InvalidDiagramError("face traversal re-entered a used half-edge")
        face_list.append(tuple(walk))
        corner_list.append(tuple(corners))
    if len(face_list) != C + 2:
        raise InvalidDiagramError(
            "face count %d != C + 2 = %d: rotation system is not a planar "
            "connected diagram" % (len(face_list), C + 2))
    if outer is None:
        outer = min(range(len(face_list)), key=lambda i: (-len(face_list[i]), i))
    elif not 0 <= outer < len(face_list):
        raise InvalidDiagramError("outer face index %d out of range" % outer)
    return FaceSet(tuple(face_list), tuple(corner_list), outer)


def _strand_orbits(d):
    """Closed strands, as orbits of arcs under passing through crossings
    (slot 0 <-> 2, slot 1 <-> 3)."""
    labels = sorted(d.arc_index)
    parent = {l: l for l in labels}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for cr in d.crossings:
        for a, b in ((cr[0], cr[2]), (cr[1], cr[3])):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[rb] = ra
    orbits = {}
    for l in labels:
        orbits.setdefault(find(l), []).append(l)
    return list(orbits.values())


def component_count(d):
    """Number of closed strands; independent of the over/under choices."""
    return len(_strand_orbits(d))


def _connected(d):
    C = len(d.crossings)
    if C == 0:
        return True
    seen = {0}
    stack = [0]
    while stack:
        c = stack.pop()
        for s in range(4):
            try:
                nc, _ = d.other_end(c, s)
            except InvalidDiagramError:
                continue
            if nc not in seen:
                seen.add(nc)
                stack.append(nc)
    return len(seen) == C


def validate(d):
    """Check a diagram and report the counts the template construction needs.

    E_exterior counts the crossing corners on the chosen outer face (these
    become the ring subdivisions of the template); T_bigons counts bounded
    two-cornered faces (whose medial walls merge pairwise).
    """
    issues = []
    for label, ends in sorted(d.arc_index.items()):
        if len(ends) != 2:
            issues.append("duplicate arc: label %d occurs %d times" % (label, len(ends)))
    C = len(d.crossings)
    if C == 0:
        issues.append("empty diagram: no crossings")
    for ci, cr in enumerate(d.crossings):
        ends_here = {}
        for s, label in enumerate(cr):
            ends_here.setdefault(label, []).append(s)
        for label, slots in ends_here.items():
            if len(slots) > 1:
                issues.append(
                    "R1 loop: crossing %d is self-connected by arc %d "
                    "(removable by a Reidemeister move; not supported)" % (ci, label))
    if not issues and not _connected(d):
        issues.append("disconnected: split diagrams are not supported")
    mu = component_count(d) if not any("duplicate" in i for i in issues) else 0
    E = T = 0
    if not issues:
        try:
            fs = faces(d)
        except InvalidDiagramError as err:
            issues.append("non-planar rotation: %s" % err)
        else:
            E = len(fs.corners[fs.outer_face])
            T = sum(1 for i, cs in enumerate(fs.corners)
                    if i != fs.outer_face and len(cs) == 2)
    return ValidationReport(ok=not issues, component_count=mu, C=C,
                            E_exterior=E, T_bigons=T, issues=issues)


def flip_crossing(d, i):
    """Return a new diagram with crossing i's slot labels rotated one step,
    which swaps the over- and under-strand roles at that crossing."""
    if not 0 <= i < len(d.crossings):
        raise IndexError("crossing index %d out of range" % i)
    crossings = list(d.crossings)
    a, b, c, e = crossings[i]
    crossings[i] = (b, c, e, a)
    return Diagram(crossings)


def mirror_diagram(d):
    """Mirror image: every crossing flipped."""
    out = d
    for i in range(len(d.crossings)):
        out = flip_crossing(out, i)
    return out


def is_alternating(d):
    """True iff crossings alternate over/under along every strand."""
    if len(d.crossings) == 0:
        raise InvalidDiagramError("alternation is undefined for empty diagrams")
    # Walk each strand as a cycle of arrival ends; a passage through a
    # crossing is an under-passage iff it arrives at slot 0 or 2.
    seen = set()
    for label in sorted(d.arc_index):
        for end in d.arc_index[label]:
            if end in seen:
                continue
            passages = []
            cur = end
            while cur not in seen:
                seen.add(cur)
                c, s = cur
                passages.append(s in (0, 2))
                cur = d.other_end(c, (s + 2) % 4)
            for i in range(len(passages)):
                if passages[i] == passages[(i + 1) % len(passages)]:
                    return False
    return True
