"""Group presentations from the template: extraction, simplification, and
the geometric-mean complexity score.

Words are sequences of nonzero integers; letter +k / -k is generator k-1 /
its inverse.  Relators are kept freely and cyclically reduced.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .diagram import InvalidDiagramError
from .graphs import bfs_tree

_LETTERS = "abcdefghijklmnopqrstuvwxyz"


def gen_name(i):
    """Deterministic generator names: a..z, then a1, b1, ..."""
    if i < 26:
        return _LETTERS[i]
    return _LETTERS[i % 26] + str(i // 26)


def free_reduce(word):
    out = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return out


def cyclic_reduce(word):
    w = free_reduce(word)
    lo, hi = 0, len(w)
    while hi - lo >= 2 and w[lo] == -w[hi - 1]:
        lo += 1
        hi -= 1
    return w[lo:hi]


def invert_word(word):
    return [-x for x in reversed(word)]


def _cyclic_key(word):
    """Canonical key of a cyclic word up to rotation and inversion."""
    best = None
    for w in (list(word), invert_word(word)):
        n = len(w)
        for s in range(max(n, 1)):
            cand = tuple(w[s:] + w[:s])
            if best is None or cand < best:
                best = cand
    return best


@dataclass(frozen=True)
class Presentation:
    """A finitely presented group: generator names plus cyclically reduced
    relator words, with provenance tags for where each relator came from."""

    generators: tuple
    relators: tuple
    provenance: tuple = ()
    generator_edges: tuple = None  # medial edge ids, for template presentations

    @property
    def n_generators(self):
        return len(self.generators)

    @property
    def n_relators(self):
        return len(self.relators)

    def relator_lengths(self):
        return sorted(len(r) for r in self.relators)

    def word_str(self, word):
        return " ".join(
            self.generators[abs(x) - 1] + ("'" if x < 0 else "") for x in word)

    def to_text(self):
        lines = ["gens: " + " ".join(self.generators)]
        lines.extend(self.word_str(r) for r in self.relators)
        return "\n".join(lines) + "\n"

    def to_json_dict(self):
        rel = []
        for i, r in enumerate(self.relators):
            entry = {"word": self.word_str(r), "letters": list(r)}
            if i < len(self.provenance):
                entry["source"] = self.provenance[i]
            rel.append(entry)
        return {"generators": list(self.generators), "relators": rel}


@dataclass
class Tree:
    """A spanning tree of a medial graph: the complement edges generate."""

    edge_ids: frozenset
    root: int
    generator_edges: tuple

    @property
    def n_generators(self):
        return len(self.generator_edges)


def default_tree_root(m):
    """Root policy: the star of the bounded face with the most corners,
    ties broken by lowest face id.  This choice depends only on the shadow,
    so the tree (and relator lengths) are unchanged by crossing flips."""
    fs = m.face_set
    best = None
    for fi, v in sorted(m.star_of_face.items()):
        size = len(fs.corners[fi])
        if best is None or size > best[0]:
            best = (size, v)
    return best[1]


def spanning_tree(m, root=None):
    """Breadth-first spanning tree of the medial graph.

    Edges are explored in ascending canonical id.  The default root is the
    star of the largest bounded face; pass a vertex index to override.
    Non-tree edges, in ascending id order, become the group generators
    (exactly 2C of them).
    """
    if root is None:
        root = default_tree_root(m)
    if not 0 <= root < m.graph.n:
        raise ValueError("tree root %d out of range" % root)
    tree = bfs_tree(m.graph, root)
    non_tree = tuple(e for e in range(m.graph.n_edges) if e not in tree)
    return Tree(edge_ids=frozenset(tree), root=root, generator_edges=non_tree)


def template_presentation(m, upper, lower, tree=None):
    """Read the group presentation off the template.

    Every bounded face of the upper then the lower graph contributes one
    relator: walk the face, expand each skein edge to its two-edge medial
    path, drop tree edges, and record the surviving generators signed by
    traversal direction.  The result has 2C generators and 2C relators.
    """
    if tree is None:
        tree = spanning_tree(m)
    gen_index = {e: i for i, e in enumerate(tree.generator_edges)}
    names = tuple(gen_name(i) for i in range(len(tree.generator_edges)))
    relators = []
    provenance = []
    for sk in (upper, lower):
        for fi, face in enumerate(sk.bounded_faces):
            word = [sign * (gen_index[e] + 1)
                    for e, sign in sk.face_medial_word(face)
                    if e in gen_index]
            relators.append(tuple(cyclic_reduce(word)))
            provenance.append("%s-face %d" % (sk.side, fi))
    return Presentation(generators=names, relators=tuple(relators),
                        provenance=tuple(provenance),
                        generator_edges=tuple(tree.generator_edges))


def _strand_partition(d):
    """Strands (maximal over-arcs): arcs merged across each over-passage."""
    labels = sorted(d.arc_index)
    parent = {l: l for l in labels}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for cr in d.crossings:
        a, b = find(cr[1]), find(cr[3])
        if a != b:
            parent[b] = a
    strands = {}
    for l in labels:
        strands.setdefault(find(l), []).append(l)
    ordered = sorted(strands.values(), key=lambda arcs: min(arcs))
    strand_of = {}
    for i, arcs in enumerate(ordered):
        for l in arcs:
            strand_of[l] = i
    return ordered, strand_of


def wirtinger_presentation(d):
    """The classical presentation: one generator per strand, one length-4
    conjugation relator per crossing."""
    C = len(d.crossings)
    if C == 0:
        raise InvalidDiagramError("empty diagram")
    # Every component must pass under somewhere, else it contributes a free
    # strand with no relator and the strand count exceeds C.
    comp_parent = {l: l for l in d.arc_index}

    def cfind(x):
        while comp_parent[x] != x:
            comp_parent[x] = comp_parent[comp_parent[x]]
            x = comp_parent[x]
        return x

    for cr in d.crossings:
        for a, b in ((cr[0], cr[2]), (cr[1], cr[3])):
            ra, rb = cfind(a), cfind(b)
            if ra != rb:
                comp_parent[rb] = ra
    comp_under = {}
    for cr in d.crossings:
        comp_under[cfind(cr[0])] = True
    for l in d.arc_index:
        root = cfind(l)
        if root not in comp_under:
            raise InvalidDiagramError(
                "a component never passes under a crossing; its meridian is "
                "free and the strand count is not C.  Use the template "
                "presentation instead.")

    strands, strand_of = _strand_partition(d)
    if len(strands) != C:
        raise InvalidDiagramError(
            "strand count %d != crossing count %d" % (len(strands), C))

    # Orient each component by walking it; record where each arc arrives.
    arrives_at = {}
    seen = set()
    for label in sorted(d.arc_index):
        for end in d.arc_index[label]:
            if end in seen:
                continue
            cur = end
            while cur not in seen:
                seen.add(cur)
                c, s = cur
                arrives_at[d.crossings[c][s]] = (c, s)
                cur = d.other_end(c, (s + 2) % 4)

    names = tuple(gen_name(i) for i in range(C))
    relators = []
    provenance = []
    for ci, cr in enumerate(d.crossings):
        under_in_slot = 0 if arrives_at.get(cr[0]) == (ci, 0) else 2
        g_in = strand_of[cr[under_in_slot]] + 1
        g_out = strand_of[cr[(under_in_slot + 2) % 4]] + 1
        g_over = strand_of[cr[1]] + 1
        over_in_slot = 1 if arrives_at.get(cr[1]) == (ci, 1) else 3
        eps = 1 if over_in_slot == 3 else -1
        # Kept in the written 4-letter conjugation form even when strands
        # coincide and the word would freely reduce.
        word = [-g_out, eps * g_over, g_in, -eps * g_over]
        relators.append(tuple(word))
        provenance.append("wirtinger-crossing %d" % ci)
    return Presentation(generators=names, relators=tuple(relators),
                        provenance=tuple(provenance))


@dataclass
class ComplexityReport:
    """Relator-length statistics of a raw template presentation."""

    lengths: tuple
    geometric_mean: float
    arithmetic_mean: float
    zero_length_count: int
    warnings: tuple = ()


def complexity(p):
    """Geometric mean of the nonzero relator lengths (plus the arithmetic
    mean).  The score is defined on the raw 2C-relator presentation, before
    any simplification."""
    lengths = tuple(sorted(len(r) for r in p.relators))
    nonzero = [l for l in lengths if l > 0]
    zero_count = len(lengths) - len(nonzero)
    warnings = []
    if zero_count:
        warnings.append("%d empty relator(s) excluded from the mean" % zero_count)
    if not nonzero:
        return ComplexityReport(lengths=lengths, geometric_mean=float("nan"),
                                arithmetic_mean=float("nan"),
                                zero_length_count=zero_count,
                                warnings=("all relators empty; complexity undefined",))
    if min(nonzero) == max(nonzero):
        gm = float(nonzero[0])  # AM = GM, exactly
    else:
        gm = math.exp(sum(math.log(l) for l in nonzero) / len(nonzero))
    am = sum(nonzero) / len(nonzero)
    return ComplexityReport(lengths=lengths, geometric_mean=gm,
                            arithmetic_mean=am, zero_length_count=zero_count,
                            warnings=tuple(warnings))


# --- Tietze simplification -------------------------------------------------

@dataclass
class SimplifyResult:
    presentation: Presentation
    complete: bool
    steps: list = field(default_factory=list)


class _TietzeState:
    def __init__(self, p):
        self.names = list(p.generators)
        self.relators = [list(r) for r in p.relators]

    def total_letters(self):
        return sum(len(r) for r in self.relators)

    def reduce_all(self):
        self.relators = [cyclic_reduce(r) for r in self.relators]

    def drop_empty(self):
        self.relators = [r for r in self.relators if r]

    def delete_generator(self, g):
        """Remove generator index g (1-based letters |x| == g) and renumber."""
        del self.names[g - 1]

        def remap(x):
            a = abs(x)
            a2 = a - 1 if a > g else a
            return a2 if x > 0 else -a2

        self.relators = [cyclic_reduce([remap(x) for x in r if abs(x) != g])
                         for r in self.relators]

    def substitute(self, g, repl):
        """Replace letter +g by the word repl (and -g by its inverse),
        then delete g from the generator list."""
        inv = invert_word(repl)
        new = []
        for r in self.relators:
            w = []
            for x in r:
                if x == g:
                    w.extend(repl)
                elif x == -g:
                    w.extend(inv)
                else:
                    w.append(x)
            new.append(cyclic_reduce(w))
        self.relators = new
        self.delete_generator(g)

    def to_presentation(self):
        return Presentation(generators=tuple(self.names),
                            relators=tuple(tuple(r) for r in self.relators))


def _solve_for(word, g):
    """Given a cyclic relator containing generator g exactly once, return
    the word w with g = w."""
    pos = next(i for i, x in enumerate(word) if abs(x) == g)
    rot = list(word[pos:]) + list(word[:pos])
    head, rest = rot[0], rot[1:]
    if head > 0:
        return invert_word(rest)  # g * rest = 1  ->  g = rest^-1
    return rest                   # g^-1 * rest = 1  ->  g = rest


def tietze_simplify(p, max_letters=10 ** 6, check=None):
    """Deterministic simplification cascade.

    Rules, in priority order once all relators are freely and cyclically
    reduced and empty relators dropped:

      1. a length-1 relator kills its generator everywhere;
      2. a length-2 relator on two distinct generators substitutes one for
         the other (the higher-indexed generator is eliminated);
      3. a relator cyclically equal to an earlier one (or its inverse) is
         redundant and dropped;
      4. a generator occurring exactly once in some relator is solved for
         and eliminated (the generator with fewest total occurrences first,
         using its shortest single-occurrence relator).

    Substitutions may grow words; the cascade halts at a fixpoint or when
    the total letter count would exceed ``max_letters``, in which case the
    partially simplified presentation is returned flagged non-final.
    ``check``, if given, is called after every step with the current
    Presentation (used to assert abelianization preservation).
    """
    st = _TietzeState(p)
    st.reduce_all()
    steps = []

    def checked(tag):
        steps.append(tag)
        if check is not None:
            check(st.to_presentation())

    while True:
        st.drop_empty()
        if st.total_letters() > max_letters:
            return SimplifyResult(st.to_presentation(), complete=False, steps=steps)

        # Rule 1: single-letter relators.
        ones = [(abs(r[0]), i) for i, r in enumerate(st.relators) if len(r) == 1]
        if ones:
            g, i = min(ones)
            del st.relators[i]
            st.delete_generator(g)
            checked("kill g%d" % g)
            continue

        # Rule 2: two-letter relators relating distinct generators.
        did = False
        for i, r in enumerate(st.relators):
            if len(r) == 2 and abs(r[0]) != abs(r[1]):
                x, y = r
                # relator x y = 1: solve for the higher-indexed generator v,
                # whose letter v^s satisfies v^s = other^-1
                if abs(x) > abs(y):
                    victim, v_sign, other = abs(x), (1 if x > 0 else -1), y
                else:
                    victim, v_sign, other = abs(y), (1 if y > 0 else -1), x
                repl = [-other] if v_sign > 0 else [other]
                del st.relators[i]
                st.substitute(victim, repl)
                checked("substitute g%d" % victim)
                did = True
                break
        if did:
            continue

        # Rule 3: duplicate relators (equal as cyclic words up to inversion).
        seen_keys = {}
        dup = None
        for i, r in enumerate(st.relators):
            key = _cyclic_key(r)
            if key in seen_keys:
                dup = i
                break
            seen_keys[key] = i
        if dup is not None:
            del st.relators[dup]
            checked("drop duplicate relator")
            continue

        # Rule 4: solve for a generator appearing exactly once in a relator.
        occ = {}
        for r in st.relators:
            for x in r:
                occ[abs(x)] = occ.get(abs(x), 0) + 1
        candidates = []
        for g in range(1, len(st.names) + 1):
            rels = [(len(r), i) for i, r in enumerate(st.relators)
                    if sum(1 for x in r if abs(x) == g) == 1]
            if rels:
                candidates.append((occ.get(g, 0), g, min(rels)))
        if not candidates:
            break
        _, g, (rlen, ri) = min(candidates)
        relator = st.relators[ri]
        repl = _solve_for(relator, g)
        growth = (occ[g] - 1) * max(len(repl) - 1, 0)
        if st.total_letters() + growth > max_letters:
            return SimplifyResult(st.to_presentation(), complete=False, steps=steps)
        del st.relators[ri]
        st.substitute(g, repl)
        checked("solve g%d" % g)

    return SimplifyResult(st.to_presentation(), complete=True, steps=steps)


def words_match(p, q):
    """Whether two presentations are the same up to generator renaming with
    optional inversion (a signed permutation of the generators), whole-word
    inversion, and cyclic rotation of each relator.  Intended for small
    final forms only; this is not isomorphism testing."""
    import itertools

    if p.n_generators != q.n_generators or p.n_relators != q.n_relators:
        return False
    n = p.n_generators
    q_keys = sorted(_cyclic_key(r) for r in q.relators)
    for perm in itertools.permutations(range(1, n + 1)):
        for signs in itertools.product((1, -1), repeat=n):
            mapped = []
            for r in p.relators:
                w = [signs[abs(x) - 1] * perm[abs(x) - 1] * (1 if x > 0 else -1)
                     for x in r]
                mapped.append(_cyclic_key(w))
            if sorted(mapped) == q_keys:
                return True
    return False


# --- Abelianization ---------------------------------------------------------

@dataclass
class AbelianInvariants:
    """H1 data: free rank plus torsion coefficients (each divides the next)."""

    free_rank: int
    torsion: tuple

    def __str__(self):
        parts = ["Z"] * self.free_rank + ["Z/%d" % t for t in self.torsion]
        return " + ".join(parts) if parts else "0"


def smith_invariants(rows, n_cols):
    """Nonzero diagonal entries of the Smith normal form of an integer
    matrix, positive and in divisibility order."""
    A = [list(r) for r in rows]
    m = len(A)
    n = n_cols
    t = 0
    diag = []
    while t < m and t < n:
        piv = None
        for i in range(t, m):
            for j in range(t, n):
                v = A[i][j]
                if v and (piv is None or abs(v) < abs(A[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        i0, j0 = piv
        A[t], A[i0] = A[i0], A[t]
        for row in A:
            row[t], row[j0] = row[j0], row[t]
        while True:
            if A[t][t] < 0:
                A[t] = [-v for v in A[t]]
            pvt = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    qt = A[i][t] // pvt
                    if qt:
                        A[i] = [a - qt * b for a, b in zip(A[i], A[t])]
                    if A[i][t]:
                        A[t], A[i] = A[i], A[t]
                        dirty = True
                        break
            if dirty:
                continue
            for j in range(t + 1, n):
                if A[t][j]:
                    qt = A[t][j] // pvt
                    if qt:
                        for row in A:
                            row[j] -= qt * row[t]
                    if A[t][j]:
                        for row in A:
                            row[t], row[j] = row[j], row[t]
                        dirty = True
                        break
            if dirty:
                continue
            # Divisibility: fold in any entry the pivot does not divide.
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % pvt:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            A[t] = [a + b for a, b in zip(A[t], A[bad])]
        diag.append(A[t][t])
        t += 1
    diag = [abs(v) for v in diag if v]
    # Safety: enforce the divisibility chain.
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            a, b = diag[i], diag[j]
            g = math.gcd(a, b)
            diag[i], diag[j] = g, a // g * b
    return diag


def abelianization(p):
    """Integer normal form of the relator exponent-sum matrix."""
    n = p.n_generators
    rows = []
    for r in p.relators:
        row = [0] * n
        for x in r:
            row[abs(x) - 1] += 1 if x > 0 else -1
        rows.append(row)
    diag = smith_invariants(rows, n) if rows else []
    free_rank = n - len(diag)
    torsion = tuple(d for d in diag if d > 1)
    return AbelianInvariants(free_rank=free_rank, torsion=torsion)


# --- Unknot certification ---------------------------------------------------

@dataclass
class CertifyResult:
    certified: bool
    simplified: Presentation
    complete: bool

    @property
    def verdict(self):
        return "certified" if self.certified else "inconclusive"


def certify_unknot(p, max_letters=10 ** 6):
    """One-sided unknottedness check: run the cascade and certify exactly
    when it reaches a free presentation of rank 1 (then the group is Z).
    Anything else is inconclusive, never "knotted"."""
    res = tietze_simplify(p, max_letters=max_letters)
    q = res.presentation
    certified = (res.complete and q.n_generators == 1 and q.n_relators == 0)
    return CertifyResult(certified=certified, simplified=q, complete=res.complete)
