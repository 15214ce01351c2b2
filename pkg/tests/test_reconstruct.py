import pytest

from conftest import general
from polyrecon import generators as gen
from polyrecon.exceptions import InstanceTooLarge, ReconstructionError, ValidationError
from polyrecon.graphs import Graph, complete_graph, graph_of, induced
from polyrecon.labels import extract_labels, simple_labels_from_graph
from polyrecon.lattice import PolytopeSpec, build_face_lattice, lattice_isomorphic, validate_polytopality
from polyrecon.reconstruct import (
    candidate_family,
    find_F_subgraphs,
    lattice_from_facets,
    reconstruct_lattice,
    reconstruct_simple,
    satisfies_label_condition,
)


def pipeline(spec):
    lat = build_face_lattice(spec)
    return lat, graph_of(lat), extract_labels(lat)


def test_label_condition_examples(fixture_name):
    _, lat, g, labels = general(fixture_name)
    for f in lat.facets:
        assert satisfies_label_condition(f, labels, g)
        assert satisfies_label_condition(induced(g, f), labels)


def test_single_cube_edge_fails_label_condition():
    _, _, g, labels = general("cube3")
    assert not satisfies_label_condition({0, 1}, labels, g)


def test_single_triangle_vertex_fails_label_condition():
    _, _, g, labels = general("triangle")
    for v in range(3):
        assert not satisfies_label_condition({v}, labels, g)


def test_F_subgraphs_triangle():
    _, _, g, labels = general("triangle")
    assert find_F_subgraphs(g, labels) == [frozenset(e) for e in ((0, 1), (0, 2), (1, 2))]


def test_F_subgraphs_cube_simple_labels():
    _, lat, g, _ = general("cube3")
    found = find_F_subgraphs(g, simple_labels_from_graph(g))
    assert len(found) == 6 and all(len(f) == 4 for f in found)
    assert set(found) == set(lat.facets)


def test_F_subgraphs_pyramid():
    _, lat, g, labels = general("square_pyramid")
    found = find_F_subgraphs(g, labels)
    assert sorted(len(f) for f in found) == [3, 3, 3, 3, 4]
    assert set(found) == set(lat.facets)


def test_F_subgraphs_are_facets(fixture_name):
    _, lat, g, labels = general(fixture_name)
    assert set(find_F_subgraphs(g, labels)) == set(lat.facets)


def test_F_subgraphs_connected(fixture_name):
    _, _, g, labels = general(fixture_name)
    for f in find_F_subgraphs(g, labels):
        assert induced(g, f).is_connected()


def test_round_trip(fixture_name):
    _, lat, g, labels = general(fixture_name)
    rec = reconstruct_lattice(g, labels)
    assert validate_polytopality(rec).ok
    assert lattice_isomorphic(rec, lat)


@pytest.mark.parametrize(
    "spec",
    [gen.cyclic(4, 6), gen.cyclic(3, 6), gen.pyramid(gen.polygon(5)), gen.simplex(4), gen.double_frustum(3),
     gen.cross_polytope(2), gen.polygon(6)],
    ids=lambda s: s.name,
)
def test_round_trip_more_polytopes(spec):
    lat, g, labels = pipeline(spec)
    assert lattice_isomorphic(reconstruct_lattice(g, labels), lat)


def test_candidate_family_contains_facets(fixture_name):
    _, lat, g, labels = general(fixture_name)
    fam = candidate_family(g, labels)
    assert set(lat.facets) <= set(fam)


def test_minimality_matters():
    # on the double frustum, conditions (i) and (ii) alone admit a non-facet:
    # the top and bottom triangles together
    lat, g, labels = pipeline(gen.double_frustum(3))
    fam = set(candidate_family(g, labels))
    facets = set(find_F_subgraphs(g, labels))
    assert facets == set(lat.facets)
    assert facets < fam
    extra = fam - facets
    assert extra == {frozenset({0, 1, 2, 6, 7, 8})}
    assert not induced(g, next(iter(extra))).is_connected()


@pytest.mark.parametrize("spec", [gen.simplex(3), gen.cube(3), gen.prism(3), gen.prism(4), gen.simplex(4)],
                         ids=lambda s: s.name)
def test_reconstruct_simple(spec):
    lat, g, _ = pipeline(spec)
    assert lattice_isomorphic(reconstruct_simple(g), lat)


def test_reconstruct_simple_k4():
    assert lattice_isomorphic(reconstruct_simple(complete_graph(4)), build_face_lattice(gen.simplex(3)))


def test_reconstruct_simple_rejects_non_regular():
    with pytest.raises(ValidationError, match="non-regular"):
        reconstruct_simple(graph_of(build_face_lattice(gen.pyramid(gen.polygon(4)))))


def test_reconstruct_simple_rejects_disconnected():
    two_triangles = Graph(6, ((0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)))
    with pytest.raises(ValidationError):
        reconstruct_simple(two_triangles)


@pytest.mark.parametrize(
    "g",
    [Graph(6, tuple((a, b) for a in range(3) for b in range(3, 6))),
     Graph(10, ((0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
                (5, 7), (7, 9), (6, 9), (6, 8), (5, 8)))],
    ids=["K33", "petersen"],
)
def test_non_polytopal_graph_rejected(g):
    with pytest.raises(ReconstructionError, match="not recognized as polytopal"):
        reconstruct_simple(g)


def test_bad_facet_family_rejected():
    with pytest.raises(ReconstructionError, match="not recognized as polytopal"):
        lattice_from_facets([(0, 1), (0, 1, 2)], 3, "bad")


def test_labels_inconsistent_with_graph_rejected():
    _, _, g, _ = general("square")
    _, _, _, tri_labels = general("triangle")
    with pytest.raises(ValidationError):
        find_F_subgraphs(g, tri_labels)


def test_node_guard():
    spec = gen.prism(13)
    lat = build_face_lattice(spec)
    with pytest.raises(InstanceTooLarge):
        find_F_subgraphs(graph_of(lat), extract_labels(lat))


def test_workers_do_not_change_result():
    _, _, g, labels = general("triangular_prism")
    assert find_F_subgraphs(g, labels, workers=2) == find_F_subgraphs(g, labels)


def test_relabelled_input_reconstructs():
    spec = gen.pyramid(gen.polygon(4))
    perm = [3, 0, 4, 1, 2]
    relabelled = PolytopeSpec("p", 5, tuple(tuple(sorted(perm[v] for v in f)) for f in spec.facets))
    lat, g, labels = pipeline(relabelled)
    assert lattice_isomorphic(reconstruct_lattice(g, labels), build_face_lattice(spec))
