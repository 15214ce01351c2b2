import sys
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from polyrecon import build_face_lattice, extract_labels, graph_of  # noqa: E402
from polyrecon.fixtures import GENERAL, capped_suite  # noqa: E402


@lru_cache(maxsize=None)
def general(name):
    """(spec, lattice, graph, labels) for a named small polytope."""
    spec = GENERAL[name]()
    lat = build_face_lattice(spec)
    return spec, lat, graph_of(lat), extract_labels(lat)


@lru_cache(maxsize=None)
def capped():
    return capped_suite()


@pytest.fixture(params=sorted(GENERAL))
def fixture_name(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
