import itertools
import random

import pytest

from balmaps import maps
from balmaps.errors import (
    AlphaHasFixedPoint,
    AlphaNotInvolution,
    InvalidInput,
    InvalidPinch,
    NonZeroGenus,
    NotFourValent,
)


def figure_eight():
    return maps.build_map([[1, 2, 3, 4]], [[1, 2], [3, 4]])


def test_quadratic_counts():
    q = maps.quadratic()
    assert (q.num_vertices, q.num_edges, q.num_faces) == (2, 4, 4)
    assert q.is_four_valent()


def test_octahedron_counts():
    o = maps.octahedron()
    assert (o.num_vertices, o.num_edges, o.num_faces) == (6, 12, 8)
    assert all(len(f) == 3 for f in o.faces)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 7])
def test_turkshead_counts(n):
    t = maps.turkshead(n)
    assert (t.num_vertices, t.num_edges, t.num_faces) == (2 * n, 4 * n, 2 * n + 2)


def test_octahedron_is_turkshead_three():
    assert maps.isomorphic(maps.octahedron(), maps.turkshead(3))


def test_build_map_errors():
    # singleton alpha cycles are rejected as non-pairs by the builder
    with pytest.raises((AlphaNotInvolution, AlphaHasFixedPoint)):
        maps.build_map([[1, 2], [3, 4]], [[1, 2], [3], [4]])
    with pytest.raises(AlphaHasFixedPoint):
        maps.CombinatorialMap((0, 2, 1, 4, 3), (0, 2, 1, 3, 4))
    with pytest.raises((AlphaNotInvolution, InvalidInput)):
        maps.build_map([[1, 2, 3], [4]], [[1, 2, 3], [4]])
    # two disjoint loops on separate vertices
    with pytest.raises(Exception):
        maps.build_map([[1, 2], [3, 4]], [[1, 2], [3, 4]])
    # torus: one vertex, two crossing loops
    with pytest.raises(NonZeroGenus):
        maps.build_map([[1, 2, 3, 4]], [[1, 3], [2, 4]])


def test_euler_for_generators():
    for m in (maps.quadratic(), maps.octahedron(), maps.turkshead(1),
              maps.turkshead(4), figure_eight()):
        assert m.num_vertices - m.num_edges + m.num_faces == 2
        for d in range(1, m.n + 1):
            assert m.alpha[m.alpha[d]] == d
            assert m.alpha[d] != d


def test_checkerboard_two_proper_colorings():
    for m in (maps.quadratic(), maps.octahedron(), maps.turkshead(4)):
        c1, c2 = maps.checkerboard(m)
        assert c1.blue_faces | c2.blue_faces == set(range(m.num_faces))
        assert c1.blue_faces.isdisjoint(c2.blue_faces)
        for cm in (c1, c2):
            for e in m.edges():
                f1, f2 = m.edge_sides(e)
                assert cm.is_blue(f1) != cm.is_blue(f2)


def test_checkerboard_counts():
    q1, q2 = maps.checkerboard(maps.quadratic())
    assert len(q1.blue_faces) == len(q2.blue_faces) == 2
    o1, o2 = maps.checkerboard(maps.octahedron())
    assert len(o1.blue_faces) == len(o2.blue_faces) == 4
    t1, _ = maps.checkerboard(maps.turkshead(4))
    assert len(t1.blue_faces) == 5


def test_checkerboard_requires_four_valent():
    tri = maps.build_map([[1, 2], [3, 4], [5, 6]],
                         [[1, 4], [3, 6], [5, 2]])
    with pytest.raises(NotFourValent):
        maps.checkerboard(tri)


def test_forward_darts_alternate_at_vertices():
    for m in (maps.quadratic(), maps.octahedron(), maps.turkshead(4)):
        cm, _ = maps.checkerboard(m)
        for cyc in m.vertices():
            pattern = [cm.is_forward(d) for d in cyc]
            assert pattern in ([True, False, True, False],
                               [False, True, False, True])


def test_face_on_left_of_forward_dart_is_blue():
    cm, _ = maps.checkerboard(maps.octahedron())
    for e in cm.m.edges():
        f = cm.forward_dart(e)
        assert cm.is_blue(cm.m.face_of[f])


def test_canonical_code_relabeling_invariance():
    rng = random.Random(5)
    for m in (maps.quadratic(), maps.octahedron(), maps.turkshead(2)):
        for _ in range(5):
            perm = list(range(1, m.n + 1))
            rng.shuffle(perm)
            m2 = m.relabeled((0,) + tuple(perm))
            assert m2.canonical_code() == m.canonical_code()


def test_canonical_code_distinguishes_quadratic_from_turkshead_one():
    q, t1 = maps.quadratic(), maps.turkshead(1)
    assert q.canonical_code() != t1.canonical_code()
    assert maps.isomorphism_brute_force(q, t1) is None


def test_canonical_code_agrees_with_brute_force_on_8_darts():
    """Complete-invariant check on every pair of 2-vertex maps."""
    from balmaps.corpus import enumerate_four_valent
    small = enumerate_four_valent(2)
    rng = random.Random(9)
    shuffled = []
    for m in small:
        perm = list(range(1, m.n + 1))
        rng.shuffle(perm)
        shuffled.append(m.relabeled((0,) + tuple(perm)))
    for a, b in itertools.product(small, shuffled):
        same_code = a.canonical_code() == b.canonical_code()
        bij = maps.isomorphism_brute_force(a, b)
        assert same_code == (bij is not None)


def test_colored_code_color_swap():
    # an asymmetric coloring must differ from its swap
    o1, _ = maps.checkerboard(maps.octahedron())
    f = next(iter(o1.blue_faces))
    orb = o1.m.faces[f]
    p = maps.pinch(o1, orb[0], orb[1])
    assert p.colored_code() != p.swapped().colored_code()
    assert p.m.canonical_code() == p.swapped().m.canonical_code()
    # the quadratic's two colorings are swapped by a rotation, so the
    # complete invariant makes them equal
    q1, q2 = maps.checkerboard(maps.quadratic())
    assert q1.colored_code() == q2.colored_code()


def test_pinch_splits_face_and_adds_vertex():
    o1, _ = maps.checkerboard(maps.octahedron())
    blue_before = len(o1.blue_faces)
    white_before = o1.m.num_faces - blue_before
    f = next(iter(o1.blue_faces))
    orb = o1.m.faces[f]
    p = maps.pinch(o1, orb[0], orb[1])
    assert p.m.num_vertices == 7
    assert len(p.blue_faces) == blue_before + 1
    assert p.m.num_faces - len(p.blue_faces) == white_before


def test_pinch_rejects_bad_darts():
    q = maps.quadratic()
    cm, _ = maps.checkerboard(q)
    orb = q.faces[0]
    with pytest.raises(InvalidPinch):
        maps.pinch(cm, orb[0], q.alpha[orb[0]])  # same edge
    other = next(i for i in range(q.num_faces) if i != 0)
    with pytest.raises(InvalidPinch):
        maps.pinch(cm, q.faces[0][0], q.faces[other][0])  # different faces


def test_generate_dispatch():
    assert maps.generate("quadratic") == maps.quadratic()
    assert maps.generate("turkshead", 3) == maps.turkshead(3)
    with pytest.raises(InvalidInput):
        maps.generate("nonsense")


def test_dual_bipartite_quadratic():
    from balmaps import realize
    cm, _ = maps.checkerboard(maps.quadratic())
    em, lab = realize.realize_generic(cm)
    g = maps.dual_bipartite(cm, lab.critical(em))
    assert g.d == 2
    assert g.m.num_vertices == 4
    assert g.m.num_faces == 2
    assert sorted(g.face_red) == [1, 2]


def test_dual_bipartite_octahedron():
    from balmaps import realize
    cm, _ = maps.checkerboard(maps.octahedron())
    em, lab = realize.realize_generic(cm)
    g = maps.dual_bipartite(cm, lab.critical(em))
    assert g.d == 4
    assert len(g.blue_vertices) == 4
    assert g.m.num_vertices == 8
    assert g.m.num_faces == 6
