"""JSON file formats for polytopes, lattices, graphs, labels and reports."""

from __future__ import annotations

import json
from collections.abc import Iterable
from typing import Any

from polyrecon.cubical import CubicalComplexSpec
from polyrecon.exceptions import ValidationError
from polyrecon.graphs import Graph
from polyrecon.labels import VertexFigureLabels
from polyrecon.lattice import FaceLattice, PolytopeSpec, count_nonempty_faces, face_key
from polyrecon.orientations import GoodOrientations


def dumps(obj: Any) -> str:
    """Indented JSON, with lists of scalars and of scalar pairs kept on one line."""

    def flat(x) -> bool:
        return not isinstance(x, (list, dict)) or (isinstance(x, list) and all(not isinstance(y, (list, dict)) for y in x))

    def enc(x, indent: int) -> str:
        pad = "  " * indent
        inner = "  " * (indent + 1)
        if isinstance(x, dict):
            if not x:
                return "{}"
            parts = [f"{inner}{json.dumps(str(k))}: {enc(v, indent + 1)}" for k, v in x.items()]
            return "{\n" + ",\n".join(parts) + "\n" + pad + "}"
        if isinstance(x, list):
            if all(flat(y) for y in x):
                return json.dumps(x, separators=(", ", ": "))
            parts = [inner + enc(v, indent + 1) for v in x]
            return "[\n" + ",\n".join(parts) + "\n" + pad + "]"
        return json.dumps(x)

    return enc(obj, 0) + "\n"


def _require(data: dict, key: str, kind) -> Any:
    if key not in data:
        raise ValidationError(f"missing key {key!r}")
    value = data[key]
    if not isinstance(value, kind):
        raise ValidationError(f"key {key!r} has the wrong type")
    return value


# -- polytopes -----------------------------------------------------------------


def spec_to_json(spec: PolytopeSpec | CubicalComplexSpec) -> dict:
    out = {"name": spec.name, "n_vertices": spec.n_vertices, "facets": [list(f) for f in spec.facets]}
    if isinstance(spec, CubicalComplexSpec):
        out["cube_certificates"] = [
            ["".join(map(str, cert[v])) for v in facet] for facet, cert in zip(spec.facets, spec.certificates)
        ]
    return out


def spec_from_json(data: dict) -> PolytopeSpec | CubicalComplexSpec:
    """Load a polytope file; a ``cube_certificates`` key makes it an abstract
    cubical complex instead."""
    if not isinstance(data, dict):
        raise ValidationError("polytope file must hold a JSON object")
    name = data.get("name", "")
    n = _require(data, "n_vertices", int)
    facets = _require(data, "facets", list)
    try:
        facets = tuple(tuple(int(v) for v in f) for f in facets)
    except (TypeError, ValueError) as exc:
        raise ValidationError("facets must be lists of integers") from exc
    if "cube_certificates" in data:
        certs = data["cube_certificates"]
        if not isinstance(certs, list) or len(certs) != len(facets):
            raise ValidationError("cube_certificates needs one entry per facet")
        maps = []
        for facet, cert in zip(facets, certs):
            if len(cert) != len(facet):
                raise ValidationError(f"certificate for facet {list(facet)} has the wrong length")
            maps.append({v: tuple(int(ch) for ch in bits) for v, bits in zip(facet, cert)})
        spec = CubicalComplexSpec(name, n, tuple(face_key(f) for f in facets), tuple(maps))
        spec.validate()
        return spec
    spec = PolytopeSpec(name, n, facets)
    spec.validate()
    return spec


def lattice_to_json(lat: FaceLattice) -> dict:
    return {
        "name": lat.name,
        "dimension": lat.dimension,
        "f_vector": list(lat.f_vector),
        "n_nonempty_faces": count_nonempty_faces(lat),
        "faces": [{"rank": lat.rank[f], "vertices": list(face_key(f))} for f in lat.faces],
    }


def lattice_from_json(data: dict) -> FaceLattice:
    faces = _require(data, "faces", list)
    return FaceLattice.from_faces((f["vertices"] for f in faces), name=data.get("name", ""))


# -- graphs and labels ---------------------------------------------------------


def graph_to_json(g: Graph) -> dict:
    out: dict = {"n_nodes": g.n_nodes, "edges": [list(e) for e in g.edges]}
    if g.node_names:
        out["node_names"] = {str(k): v for k, v in sorted(g.node_names.items())}
    return out


def graph_from_json(data: dict) -> Graph:
    if not isinstance(data, dict):
        raise ValidationError("graph file must hold a JSON object")
    n = _require(data, "n_nodes", int)
    edges = _require(data, "edges", list)
    try:
        pairs = tuple((int(a), int(b)) for a, b in edges)
    except (TypeError, ValueError) as exc:
        raise ValidationError("edges must be pairs of integers") from exc
    names = data.get("node_names")
    if isinstance(names, list):
        names = {i: str(x) for i, x in enumerate(names)}
    elif isinstance(names, dict):
        names = {int(k): str(v) for k, v in names.items()}
    return Graph(n, pairs, names)


def labels_to_json(labels: VertexFigureLabels) -> dict:
    return {"labels": {str(v): [[list(e) for e in lab] for lab in labels.sorted_at(v)] for v in labels.vertices()}}


def labels_from_json(data: dict) -> VertexFigureLabels:
    raw = _require(data, "labels", dict)
    try:
        return VertexFigureLabels.from_lists({int(k): v for k, v in raw.items()})
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"malformed labels: {exc}") from exc


def orientation_report(result: GoodOrientations) -> dict:
    return {
        "f": result.f,
        "n_acyclic": result.n_acyclic,
        "n_good": len(result.good),
        "good": [[list(a) for a in o.arcs] for o in result.good],
    }


def read_json(path: str, stdin=None) -> Any:
    import sys

    try:
        if path == "-":
            return json.load(stdin or sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: not valid JSON ({exc})") from exc
    except OSError as exc:
        raise ValidationError(f"{path}: {exc.strerror}") from exc


def facet_lists(facets: Iterable[Iterable[int]]) -> list[list[int]]:
    return [list(face_key(f)) for f in facets]
