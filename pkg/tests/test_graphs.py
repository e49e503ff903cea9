import pytest

from knotplate.graphs import RotationGraph, bfs_tree


def path_graph(n):
    g = RotationGraph(n)
    for i in range(n - 1):
        g.add_edge(i, i + 1)
    g.set_rotation(0, [(0, 0)])
    for i in range(1, n - 1):
        g.set_rotation(i, [(i - 1, 1), (i, 0)])
    g.set_rotation(n - 1, [(n - 2, 1)])
    return g


def triangle():
    g = RotationGraph(3)
    g.add_edge(0, 1)
    g.add_edge(1, 2)
    g.add_edge(2, 0)
    g.set_rotation(0, [(0, 0), (2, 1)])
    g.set_rotation(1, [(1, 0), (0, 1)])
    g.set_rotation(2, [(2, 0), (1, 1)])
    return g


def test_spanning_tree_of_tree_has_no_generators():
    g = path_graph(6)
    tree = bfs_tree(g, 0)
    assert tree == {0, 1, 2, 3, 4}
    assert [e for e in range(g.n_edges) if e not in tree] == []


def test_bfs_tree_requires_connected():
    g = RotationGraph(3)
    g.add_edge(0, 1)
    with pytest.raises(ValueError):
        bfs_tree(g, 0)


def test_triangle_faces_and_rank():
    g = triangle()
    fcs = g.trace_faces()
    assert len(fcs) == 2
    assert sorted(len(f) for f in fcs) == [3, 3]
    assert g.cycle_rank() == 1


def test_face_traversal_covers_each_directed_edge_once():
    g = triangle()
    seen = [de for f in g.trace_faces() for de in f]
    assert len(seen) == len(set(seen)) == 2 * g.n_edges


def test_two_coloring():
    g = path_graph(4)
    assert g.two_coloring() is not None
    t = triangle()
    assert t.two_coloring() is None
