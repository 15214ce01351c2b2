from itertools import combinations

import pytest

from conftest import general
from polyrecon import generators as gen
from polyrecon.exceptions import ValidationError
from polyrecon.fixtures import SIMPLE
from polyrecon.graphs import Graph, complete_graph, edge, graph_of
from polyrecon.labels import (
    VertexFigureLabels,
    extract_labels,
    simple_labels_from_graph,
    vf_lattice_from_labels,
)
from polyrecon.lattice import build_face_lattice


def labels_of(spec):
    return extract_labels(build_face_lattice(spec))


def test_cube_vertex_labels():
    labels = labels_of(gen.cube(3))
    for v in range(8):
        fam = list(labels.at(v))
        assert len(fam) == 3
        assert all(len(lab) == 2 for lab in fam)
        assert all(len(a & b) == 1 for a, b in combinations(fam, 2))


def test_pyramid_apex_labels():
    labels = labels_of(gen.pyramid(gen.polygon(4)))
    apex = 4
    expected = {frozenset({edge(i, apex), edge((i + 1) % 4, apex)}) for i in range(4)}
    assert labels.at(apex) == frozenset(expected)


def test_triangle_labels():
    labels = labels_of(gen.polygon(3))
    for v in range(3):
        fam = list(labels.at(v))
        assert len(fam) == 2
        assert all(len(lab) == 1 for lab in fam)
        assert fam[0] != fam[1]


def test_vf_lattice_cube():
    vf = vf_lattice_from_labels(labels_of(gen.cube(3)).at(0))
    assert sorted(len(s) for s in vf) == [0, 1, 1, 1, 2, 2, 2, 3]


def test_vf_lattice_pyramid_apex():
    vf = vf_lattice_from_labels(labels_of(gen.pyramid(gen.polygon(4))).at(4))
    assert sorted(len(s) for s in vf) == [0, 1, 1, 1, 1, 2, 2, 2, 2, 4]


def test_vf_lattice_triangle():
    vf = vf_lattice_from_labels(labels_of(gen.polygon(3)).at(0))
    assert sorted(len(s) for s in vf) == [0, 1, 1, 2]


def test_vf_lattice_round_trip(fixture_name):
    # elements correspond to the faces through v; the empty set stands for {v}
    _, lat, g, labels = general(fixture_name)
    for v in lat.vertices:
        at_v = set(g.incident_edges(v))
        vf = vf_lattice_from_labels(labels.at(v))
        through = [f for f in lat.faces if v in f]
        assert len(vf) == len(through)
        image = {f: frozenset(e for e in at_v if set(e) <= f) for f in through}
        assert set(image.values()) == set(vf)
        for a in through:
            for b in through:
                assert (a <= b) == (image[a] <= image[b])


def test_labels_biject_with_facets(fixture_name):
    _, lat, g, labels = general(fixture_name)
    for v in lat.vertices:
        assert len(labels.at(v)) == sum(1 for f in lat.facets if v in f)


def test_label_invariants(fixture_name):
    _, lat, g, labels = general(fixture_name)
    for v in lat.vertices:
        at_v = frozenset(g.incident_edges(v))
        fam = labels.at(v)
        assert all(lab and lab < at_v for lab in fam)
        assert frozenset().union(*fam) == at_v
    labels.check_against(g)


@pytest.mark.parametrize("name", SIMPLE)
def test_simple_labels_match_extracted(name):
    _, lat, g, labels = general(name)
    assert simple_labels_from_graph(g) == labels


def test_simple_labels_q3_and_k4():
    for g in (graph_of(build_face_lattice(gen.cube(3))), complete_graph(4)):
        labels = simple_labels_from_graph(g)
        for v in range(g.n_nodes):
            assert labels.at(v) == frozenset(frozenset(c) for c in combinations(g.incident_edges(v), 2))


def test_simple_labels_reject_star():
    star = Graph(4, ((0, 1), (0, 2), (0, 3)))
    with pytest.raises(ValidationError, match="non-regular"):
        simple_labels_from_graph(star)


def test_check_against_catches_bad_labels():
    g = complete_graph(3)
    bad = VertexFigureLabels.from_lists({0: [[(0, 1)]], 1: [[(0, 1)], [(1, 2)]], 2: [[(1, 2)], [(0, 2)]]})
    with pytest.raises(ValidationError):
        bad.check_against(g)
