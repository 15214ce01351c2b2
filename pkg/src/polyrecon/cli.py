"""Command line interface.

Subcommands read and write the JSON formats in :mod:`polyrecon.io`; they are
meant to be chained through files or pipes, e.g.::

    polyrecon generate cube 3 | polyrecon lattice
    polyrecon graph cube.json -o q3.json
    polyrecon reconstruct-simple q3.json --truth cube.json

Exit status: 0 on success, 1 on audit violations or failed reconstruction,
2 on invalid input.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

from polyrecon import generators as gen
from polyrecon import io
from polyrecon.cubical import CubicalComplexSpec, audit, complex_lattice, detect_caps, mobius_strip, reconstruct_capped
from polyrecon.exceptions import InstanceTooLarge, ReconstructionError, ValidationError
from polyrecon.graphs import dual_graph, graph_isomorphic, graph_of
from polyrecon.labels import extract_labels
from polyrecon.lattice import (
    FaceLattice,
    atom_map,
    build_face_lattice,
    count_nonempty_faces,
    find_lattice_isomorphism,
    lattice_isomorphic,
    validate_polytopality,
)
from polyrecon.orientations import MAX_COUNT, MAX_EDGES, all_scores, find_good_orientations
from polyrecon.reconstruct import reconstruct_lattice, reconstruct_simple

log = logging.getLogger("polyrecon")

FAMILIES = {
    "simplex": (["d"], lambda a: gen.simplex(a[0])),
    "cube": (["d"], lambda a: gen.cube(a[0])),
    "cross": (["d"], lambda a: gen.cross_polytope(a[0])),
    "polygon": (["n"], lambda a: gen.polygon(a[0])),
    "prism": (["n"], lambda a: gen.prism(a[0])),
    "pyramid": (["n"], lambda a: gen.pyramid(gen.polygon(a[0]))),
    "cyclic": (["d", "n"], lambda a: gen.cyclic(a[0], a[1])),
    "double-frustum": (["n"], lambda a: gen.double_frustum(a[0])),
    "stacked-cubes": ([], lambda a: gen.stacked_cubes()),
    "mobius": ([], lambda a: mobius_strip()),
}


def _emit(data, out: str | None) -> None:
    text = io.dumps(data)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_polytope(path: str):
    return io.spec_from_json(io.read_json(path))


def _lattice_of(spec) -> FaceLattice:
    if isinstance(spec, CubicalComplexSpec):
        return complex_lattice(spec)
    return build_face_lattice(spec)


def _truth_fields(lat: FaceLattice, truth_path: str | None) -> dict:
    if not truth_path:
        return {}
    truth = _lattice_of(_load_polytope(truth_path))
    face_map = find_lattice_isomorphism(lat, truth)
    out = {"truth": truth.name, "isomorphic": face_map is not None}
    if face_map is not None:
        out["witness"] = {str(k): v for k, v in atom_map(face_map).items()}
    return out


def _reconstruction_report(method: str, lat: FaceLattice, truth_path: str | None) -> tuple[dict, int]:
    report = {
        "method": method,
        "n_facets": len(lat.facets),
        "facets": io.facet_lists(lat.facets),
        "lattice": io.lattice_to_json(lat),
    }
    report.update(_truth_fields(lat, truth_path))
    return report, 0 if report.get("isomorphic", True) else 1


# -- subcommands -----------------------------------------------------------------


def cmd_generate(args) -> int:
    if args.family == "capped":
        if len(args.params) != 2:
            raise ValidationError("capped needs D and K (dimension and number of caps)")
        spec, caplog = gen.random_capped(args.params[0], args.params[1], args.seed)
        data = io.spec_to_json(spec)
        data["capping_log"] = caplog
        _emit(data, args.output)
        return 0
    if args.family not in FAMILIES:
        raise ValidationError(f"unknown family {args.family!r}; choose from {sorted(FAMILIES) + ['capped']}")
    names, make = FAMILIES[args.family]
    params = list(args.params)
    if args.family == "double-frustum" and not params:
        params = [3]
    if len(params) != len(names):
        raise ValidationError(f"{args.family} takes parameters {names}")
    try:
        spec = make(params)
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc
    _emit(io.spec_to_json(spec), args.output)
    return 0


def cmd_lattice(args) -> int:
    lat = _lattice_of(_load_polytope(args.polytope))
    data = io.lattice_to_json(lat)
    data["validation"] = validate_polytopality(lat).to_dict()
    _emit(data, args.output)
    log.info("%s: %d non-empty faces", lat.name, count_nonempty_faces(lat))
    return 0


def cmd_graph(args) -> int:
    lat = _lattice_of(_load_polytope(args.polytope))
    _emit(io.graph_to_json(graph_of(lat)), args.output)
    return 0


def cmd_dualgraph(args) -> int:
    lat = _lattice_of(_load_polytope(args.polytope))
    _emit(io.graph_to_json(dual_graph(lat)), args.output)
    return 0


def cmd_labels(args) -> int:
    lat = _lattice_of(_load_polytope(args.polytope))
    _emit(io.labels_to_json(extract_labels(lat)), args.output)
    return 0


def cmd_orientations(args) -> int:
    g = io.graph_from_json(io.read_json(args.graph))
    labels = io.labels_from_json(io.read_json(args.labels))
    labels.check_against(g)
    result = find_good_orientations(g, labels, max_edges=args.max_edges, max_count=args.max_count, workers=args.workers)
    if args.figure:
        from polyrecon.plotting import score_histogram

        scores = all_scores(g, labels, max_edges=args.max_edges, max_count=args.max_count)
        score_histogram(scores, result.f, args.figure)
    _emit(io.orientation_report(result), args.output)
    return 0


def cmd_reconstruct(args) -> int:
    g = io.graph_from_json(io.read_json(args.graph))
    labels = io.labels_from_json(io.read_json(args.labels))
    lat = reconstruct_lattice(g, labels, max_edges=args.max_edges, max_count=args.max_count, workers=args.workers)
    report, code = _reconstruction_report("graph+labels", lat, args.truth)
    _emit(report, args.output)
    return code


def cmd_reconstruct_simple(args) -> int:
    g = io.graph_from_json(io.read_json(args.graph))
    lat = reconstruct_simple(g, max_edges=args.max_edges, max_count=args.max_count, workers=args.workers)
    report, code = _reconstruction_report("simple", lat, args.truth)
    _emit(report, args.output)
    return code


def cmd_reconstruct_capped(args) -> int:
    dg = io.graph_from_json(io.read_json(args.graph))
    if args.figure:
        from polyrecon.plotting import dual_graph_figure

        try:
            caps = [v for v, _ in detect_caps(dg)]
        except ValidationError:
            caps = []
        dual_graph_figure(dg, args.figure, caps)
    lat = reconstruct_capped(dg)
    report, code = _reconstruction_report("capped-dual-graph", lat, args.truth)
    _emit(report, args.output)
    return code


def cmd_audit(args) -> int:
    spec = _load_polytope(args.polytope)
    report = audit(spec)
    _emit(report, args.output)
    for check in report["checks"]:
        if check["applicable"] and not check["passed"]:
            log.error("%s: %s failed (%s)", report["name"], check["check"], check["detail"])
    return 0 if report["passed"] else 1


def cmd_demo_cyclic(args) -> int:
    cyc = build_face_lattice(gen.cyclic(4, 6))
    sim = build_face_lattice(gen.simplex(5))
    g_cyc, g_sim = graph_of(cyc), graph_of(sim)
    same_graph = graph_isomorphic(g_cyc, g_sim)
    complete = len(g_cyc.edges) == 6 * 5 // 2
    same_lattice = lattice_isomorphic(cyc, sim)
    data = {
        "claim": "a graph does not determine the polytope in general",
        "polytopes": [
            {"name": lat.name, "dimension": lat.dimension, "f_vector": list(lat.f_vector),
             "n_facets": len(lat.facets), "graph_edges": len(graph_of(lat).edges)}
            for lat in (cyc, sim)
        ],
        "graphs_complete_K6": complete,
        "graphs_isomorphic": same_graph,
        "lattices_isomorphic": same_lattice,
    }
    _emit(data, args.output)
    if args.figure:
        from polyrecon.plotting import f_vector_bars

        f_vector_bars({cyc.name: cyc, sim.name: sim}, args.figure, title="same graph K6, different polytopes")
    return 0 if same_graph and complete and not same_lattice else 1


# -- parser ------------------------------------------------------------------------


def _add_limits(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-count", type=int, default=MAX_COUNT, help="refuse beyond this many acyclic orientations")
    p.add_argument("--max-edges", type=int, default=MAX_EDGES, help="refuse graphs with more edges")
    p.add_argument("--workers", type=int, default=1, help="processes for orientation scoring")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polyrecon", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a polytope file")
    p.add_argument("family", help=f"one of {sorted(FAMILIES) + ['capped']}")
    p.add_argument("params", nargs="*", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_generate)

    for name, func, help_ in [
        ("lattice", cmd_lattice, "face lattice and validation report"),
        ("graph", cmd_graph, "vertex-edge graph"),
        ("dualgraph", cmd_dualgraph, "dual graph (facets and ridges)"),
        ("labels", cmd_labels, "edge-labeled vertex figures"),
        ("audit", cmd_audit, "cubical audits"),
    ]:
        p = sub.add_parser(name, help=help_)
        p.add_argument("polytope", nargs="?", default="-")
        p.add_argument("-o", "--output")
        p.set_defaults(func=func)

    p = sub.add_parser("orientations", help="good acyclic orientations by score minimisation")
    p.add_argument("graph")
    p.add_argument("labels")
    p.add_argument("--figure", help="write a score histogram to this image file")
    p.add_argument("-o", "--output")
    _add_limits(p)
    p.set_defaults(func=cmd_orientations)

    p = sub.add_parser("reconstruct", help="lattice from graph and labels")
    p.add_argument("graph")
    p.add_argument("labels")
    p.add_argument("--truth")
    p.add_argument("-o", "--output")
    _add_limits(p)
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("reconstruct-simple", help="lattice of a simple polytope from its graph")
    p.add_argument("graph")
    p.add_argument("--truth")
    p.add_argument("-o", "--output")
    _add_limits(p)
    p.set_defaults(func=cmd_reconstruct_simple)

    p = sub.add_parser("reconstruct-capped", help="capped cubical polytope from its dual graph")
    p.add_argument("graph")
    p.add_argument("--truth")
    p.add_argument("--figure", help="draw the dual graph with detected caps to this image file")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_reconstruct_capped)

    p = sub.add_parser("demo-cyclic", help="two polytopes with graph K6")
    p.add_argument("--figure", help="write an f-vector comparison to this image file")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_demo_cyclic)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(levelname)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except (ValidationError, InstanceTooLarge) as exc:
        print(f"polyrecon: error: {exc}", file=sys.stderr)
        return 2
    except ReconstructionError as exc:
        print(f"polyrecon: reconstruction failed: {exc}", file=sys.stderr)
        return 1
    except BrokenPipeError:
        # downstream closed early (e.g. piped into head)
        devnull = os.open(os.devnull, os.O_WRONLY)
        os.dup2(devnull, sys.stdout.fileno())
        return 0


if __name__ == "__main__":
    sys.exit(main())
