"""Embedded multigraphs: vertices with cyclic edge orders, face traversal,
spanning trees.  Shared by the medial and skein constructions."""

from __future__ import annotations

from collections import deque


class RotationGraph:
    """A multigraph with a rotation system.

    Edges are numbered 0..m-1 and oriented (tail, head).  The rotation at a
    vertex is a cyclic list of (edge_id, end) pairs, end 0 meaning the tail
    end of the edge sits at this vertex.  Directed edges are (edge_id, +1)
    for tail->head and (edge_id, -1) for head->tail.

    Face traversal rule: after arriving at a vertex along a directed edge,
    leave along the rotation entry immediately after the arrival edge's
    reversal.  This matches the diagram rule "enter at slot s, leave at
    slot s+1".
    """

    def __init__(self, n_vertices):
        self.n = n_vertices
        self.edges = []          # (tail, head)
        self.rotation = [[] for _ in range(n_vertices)]
        self._rotpos = [None] * n_vertices  # lazy {(edge, end): index}

    def add_edge(self, tail, head):
        self.edges.append((tail, head))
        return len(self.edges) - 1

    def set_rotation(self, v, entries):
        """entries: cyclic list of (edge_id, end) at vertex v."""
        self.rotation[v] = list(entries)
        self._rotpos[v] = None

    @property
    def n_edges(self):
        return len(self.edges)

    def endpoint(self, edge, end):
        return self.edges[edge][end]

    def directed_head(self, edge, direction):
        tail, head = self.edges[edge]
        return head if direction > 0 else tail

    def directed_tail(self, edge, direction):
        tail, head = self.edges[edge]
        return tail if direction > 0 else head

    def _positions(self, v):
        pos = self._rotpos[v]
        if pos is None:
            pos = {entry: i for i, entry in enumerate(self.rotation[v])}
            self._rotpos[v] = pos
        return pos

    def next_directed(self, edge, direction):
        """The directed edge following (edge, direction) around its face."""
        v = self.directed_head(edge, direction)
        arrival_end = 1 if direction > 0 else 0
        rot = self.rotation[v]
        pos = self._positions(v)[(edge, arrival_end)]
        e2, end2 = rot[(pos + 1) % len(rot)]
        return e2, (1 if end2 == 0 else -1)

    def trace_faces(self):
        """All faces as lists of directed edges, in deterministic order."""
        seen = set()
        out = []
        for e in range(len(self.edges)):
            for direction in (1, -1):
                if (e, direction) in seen:
                    continue
                walk = []
                cur = (e, direction)
                while cur not in seen:
                    seen.add(cur)
                    walk.append(cur)
                    cur = self.next_directed(*cur)
                out.append(walk)
        return out

    def adjacency(self):
        """Per-vertex list of (edge_id, other_vertex), by ascending edge id."""
        adj = [[] for _ in range(self.n)]
        for e, (t, h) in enumerate(self.edges):
            adj[t].append((e, h))
            if h != t:
                adj[h].append((e, t))
        for lst in adj:
            lst.sort()
        return adj

    def is_connected(self):
        if self.n == 0:
            return True
        adj = self.adjacency()
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for _, w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def cycle_rank(self):
        return len(self.edges) - self.n + 1

    def two_coloring(self):
        """A bipartition as a color list, or None if an odd cycle exists."""
        color = [None] * self.n
        adj = self.adjacency()
        for start in range(self.n):
            if color[start] is not None:
                continue
            color[start] = 0
            queue = deque([start])
            while queue:
                v = queue.popleft()
                for _, w in adj[v]:
                    if color[w] is None:
                        color[w] = 1 - color[v]
                        queue.append(w)
                    elif color[w] == color[v]:
                        return None
        return color


def bfs_tree(graph, root):
    """Breadth-first spanning tree from root, exploring incident edges in
    ascending edge id.  Returns the set of tree edge ids."""
    adj = graph.adjacency()
    seen = {root}
    tree = set()
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for e, w in adj[v]:
            if w not in seen:
                seen.add(w)
                tree.add(e)
                queue.append(w)
    if len(seen) != graph.n:
        raise ValueError("graph is not connected; no spanning tree")
    return tree
