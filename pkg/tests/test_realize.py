from collections import Counter

import pytest

from balmaps import balance, maps, realize
from balmaps.errors import (
    InvalidMatching,
    InvalidTuple,
    NotBalanced,
)


def colored(m):
    return maps.checkerboard(m)[0]


def test_enrich_quadratic_empty_matching():
    cm = colored(maps.quadratic())
    em = realize.enrich(cm, balance.Matching({}))
    assert em.full.num_vertices == 2
    assert all(len(f) == 2 for f in em.full.faces)


def test_enrich_octahedron():
    cm = colored(maps.octahedron())
    ok, matching, _ = balance.check_balance_flow(cm)
    em = realize.enrich(cm, matching)
    assert em.full.num_vertices == 18
    assert all(len(f) == 6 for f in em.full.faces)


def test_enrich_rejects_bad_matching():
    cm = colored(maps.octahedron())
    with pytest.raises(InvalidMatching):
        realize.enrich(cm, balance.Matching({cm.m.edges()[0]: 1}))


def test_integrate_labels_quadratic():
    cm = colored(maps.quadratic())
    em = realize.enrich(cm, balance.Matching({}))
    lab = realize.integrate_labels(em)
    assert sorted(lab.labels.values()) == [1, 2]


def test_integrate_labels_octahedron_counts():
    cm = colored(maps.octahedron())
    em, lab = realize.realize_generic(cm)
    counts = Counter(lab.labels.values())
    assert sorted(counts) == [1, 2, 3, 4, 5, 6]
    assert set(counts.values()) == {3}  # d - 1 of each


def test_label_shift_is_uniform():
    cm = colored(maps.octahedron())
    em, lab = realize.realize_generic(cm)
    shifted = lab.shifted(2)
    n = lab.n
    for v, l in lab.labels.items():
        assert shifted.labels[v] == (l - 1 + 2) % n + 1


def test_labels_progress_around_blue_faces():
    cm = colored(maps.octahedron())
    em, lab = realize.realize_generic(cm)
    full = em.full
    n = em.n
    for i, orbit in enumerate(full.faces):
        labs = [lab.labels[full.vertex_of[d]] for d in orbit]
        step = 1 if i in em.full_blue else -1
        for a, b in zip(labs, labs[1:] + labs[:1]):
            assert b == (a - 1 + step) % n + 1
        assert sorted(labs) == list(range(1, n + 1))


def test_monodromy_quadratic():
    cm = colored(maps.quadratic())
    em, lab = realize.realize_generic(cm)
    t = realize.monodromy(em, lab)
    assert t.taus == ((1, 2), (1, 2))
    t.validate()


def test_monodromy_octahedron_valid():
    cm = colored(maps.octahedron())
    em, lab = realize.realize_generic(cm)
    t = realize.monodromy(em, lab)
    assert t.d == 4 and len(t.taus) == 6
    t.validate()
    # the octahedron's sheets each meet three critical points
    moves = Counter()
    for a, b in t.taus:
        moves[a] += 1
        moves[b] += 1
    assert sorted(moves.values()) == [3, 3, 3, 3]


def test_tuple_validation_rejects_bad_product():
    with pytest.raises(InvalidTuple):
        realize.TranspositionTuple(3, ((1, 2), (1, 3), (1, 2), (1, 2))).validate()
    with pytest.raises(InvalidTuple):
        realize.TranspositionTuple(
            4, ((1, 2), (1, 2), (3, 4), (3, 4), (1, 2), (1, 2))).validate()  # not transitive


def test_graph_from_monodromy_quadratic():
    t = realize.TranspositionTuple(2, ((1, 2), (1, 2)))
    real = realize.graph_from_monodromy(t)
    q = colored(maps.quadratic())
    assert real.colored.m.canonical_code() == q.m.canonical_code()


def test_monodromy_round_trip_octahedron():
    cm = colored(maps.octahedron())
    em, lab = realize.realize_generic(cm)
    t = realize.monodromy(em, lab)
    real = realize.graph_from_monodromy(t)
    assert real.colored.colored_code() == cm.colored_code()
    t2 = realize.monodromy(real.enriched, real.labeling)
    assert realize.tuples_conjugate(t, t2)


def test_realize_generic_requires_balance():
    fig8 = colored(maps.build_map([[1, 2, 3, 4]], [[1, 2], [3, 4]]))
    with pytest.raises(NotBalanced):
        realize.realize_generic(fig8)


def test_is_realizable_basics():
    assert realize.is_realizable(colored(maps.quadratic()))
    assert realize.is_realizable(colored(maps.octahedron()))
    assert realize.is_realizable(colored(maps.turkshead(4)))
    fig8 = colored(maps.build_map([[1, 2, 3, 4]], [[1, 2], [3, 4]]))
    assert not realize.is_realizable(fig8)


def test_matching_enumeration_order_and_validity():
    cm = colored(maps.octahedron())
    got = []
    for i, matching in enumerate(realize.enumerate_matchings(cm)):
        assert balance.matching_is_valid(cm, matching)
        got.append(tuple(sorted(matching.counts.items())))
        if i > 50:
            break
    assert len(got) == len(set(got))


def test_duplicate_critical_labels_are_rejected(corpus6):
    """Some balanced diagram must have an early matching whose labeling
    repeats a critical label; the search skips it and still succeeds."""
    found_duplicate_case = False
    for cm in corpus6.colored:
        if not balance.is_balanced(cm).balanced:
            continue
        first = next(iter(realize.enumerate_matchings(cm)))
        em = realize.enrich(cm, first)
        lab = realize.integrate_labels(em)
        crit = lab.critical(em)
        if len(set(crit.values())) != em.n:
            found_duplicate_case = True
            em2, lab2 = realize.realize_generic(cm)
            assert len(set(lab2.critical(em2).values())) == em2.n
    assert found_duplicate_case


def test_rebuilt_labels_occupy_positions(classes4):
    # labels of the glued diagram occur d-1 times each
    real = realize.graph_from_monodromy(classes4[0].representative)
    counts = Counter(real.labeling.labels.values())
    assert set(counts.values()) == {3}
    crit = real.diagram_labels()
    assert sorted(crit.values()) == list(range(1, 7))
