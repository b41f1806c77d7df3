import itertools

import pytest

from balmaps import corpus, hurwitz, maps, realize


@pytest.fixture(scope="session")
def corpus6():
    """Every connected 4-valent sphere map with 2, 4 or 6 vertices."""
    return corpus.build_corpus(6)


@pytest.fixture(scope="session")
def classes4():
    return hurwitz.enumerate_classes(4)


@pytest.fixture(scope="session")
def census4():
    return hurwitz.census(4)


def make_labeled_duals(d):
    """All vertex-labeled duals of degree-d covers: one dual per class,
    decorated with every blue labeling."""
    out = []
    for cls in hurwitz.enumerate_classes(d):
        real = realize.graph_from_monodromy(cls.representative)
        g0 = maps.dual_bipartite(real.colored, real.diagram_labels())
        blues = sorted(g0.blue_vertices)
        for perm in itertools.permutations(range(1, d + 1)):
            out.append(maps.FaceLabeledGraph(
                g0.m, g0.blue_vertices, g0.face_red, tuple(zip(blues, perm))))
    return out


@pytest.fixture(scope="session")
def duals3():
    return make_labeled_duals(3)


@pytest.fixture(scope="session")
def duals4():
    return make_labeled_duals(4)
