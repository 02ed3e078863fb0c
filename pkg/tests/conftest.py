import pytest

from hcskit.cnf import Cnf
from oracles import two_triangles_bridge


@pytest.fixture
def bridge_vig():
    return two_triangles_bridge()


@pytest.fixture
def bridge_cnf():
    """Clause per edge of the two-triangles-plus-bridge graph, 1-based vars."""
    edges = ((1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (5, 6), (3, 4))
    return Cnf(num_vars=6, clauses=edges, origin="constructed")
