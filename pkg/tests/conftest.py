import numpy as np
import pytest

from tetnear import validate_mesh

ACCEPTANCE_LINES = []


def make_mesh(elements, n_node=None):
    elements = np.asarray(elements, dtype=np.int64).reshape(-1, 4)
    if n_node is None:
        n_node = int(elements.max()) + 1 if elements.size else 0
    nodes = np.arange(n_node * 3, dtype=float).reshape(-1, 3)
    return validate_mesh(nodes, elements)


@pytest.fixture
def two_tet():
    return make_mesh([(0, 1, 2, 3), (1, 2, 3, 4)])


@pytest.fixture
def single_tet():
    return make_mesh([(0, 1, 2, 3)])


@pytest.fixture
def chain():
    return make_mesh([(0, 1, 2, 3), (3, 4, 5, 6), (6, 7, 8, 9)])


@pytest.fixture
def mixed():
    return make_mesh([(0, 1, 2, 3), (3, 4, 5, 6), (2, 3, 6, 7)])


@pytest.fixture
def duplicated():
    return make_mesh([(0, 1, 2, 3), (0, 1, 2, 3)])


TWO_TET_NATIVE = "5 2\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n1 1 1\n0 1 2 3\n1 2 3 4\n"


@pytest.fixture
def two_tet_file(tmp_path):
    p = tmp_path / "two.txt"
    p.write_text(TWO_TET_NATIVE)
    return p


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
