import matplotlib.image as mpimg

from polyrecon import generators as gen
from polyrecon.graphs import dual_graph
from polyrecon.lattice import build_face_lattice
from polyrecon.plotting import dual_graph_figure, f_vector_bars, score_histogram


def not_blank(path):
    img = mpimg.imread(str(path))
    return img.shape[0] > 100 and img[..., :3].std() > 0.01


def test_score_histogram(tmp_path):
    p = tmp_path / "h.png"
    score_histogram([9, 9, 10, 9, 9, 9, 9, 9, 9, 9, 9, 9, 9, 10], 9, str(p))
    assert not_blank(p)


def test_f_vector_bars(tmp_path):
    p = tmp_path / "f.png"
    lats = {"cube": build_face_lattice(gen.cube(3)), "octahedron": build_face_lattice(gen.cross_polytope(3))}
    f_vector_bars(lats, str(p), title="duals")
    assert not_blank(p)


def test_dual_graph_figure_svg(tmp_path):
    p = tmp_path / "d.svg"
    dg = dual_graph(build_face_lattice(gen.stacked_cubes()))
    dual_graph_figure(dg, str(p), caps=[0, 9])
    text = p.read_text()
    assert text.lstrip().startswith("<?xml") and "<svg" in text
