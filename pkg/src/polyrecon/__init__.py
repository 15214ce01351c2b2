"""Reconstruct polytope face lattices from graphs, vertex-figure labels and
dual graphs."""

from polyrecon.exceptions import (
    InstanceTooLarge,
    NotCappedError,
    PolytopeError,
    ReconstructionError,
    ValidationError,
)
from polyrecon.lattice import (
    FaceLattice,
    PolytopeSpec,
    build_face_lattice,
    count_nonempty_faces,
    dual_lattice,
    lattice_isomorphic,
    validate_polytopality,
)
from polyrecon.graphs import Graph, dual_graph, graph_isomorphic, graph_of
from polyrecon.labels import VertexFigureLabels, extract_labels, simple_labels_from_graph
from polyrecon.orientations import enumerate_acyclic_orientations, find_good_orientations
from polyrecon.reconstruct import find_F_subgraphs, reconstruct_lattice, reconstruct_simple
from polyrecon.cubical import reconstruct_capped

__version__ = "0.1.0"
