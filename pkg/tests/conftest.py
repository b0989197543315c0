import pytest

from forestreg import data
from forestreg.digraph import parse_digraph


@pytest.fixture(scope="session")
def forest12():
    return parse_digraph(data.text("cm_forest_12.graph"))


@pytest.fixture(scope="session")
def forest10():
    return parse_digraph(data.text("cm_forest_10.graph"))


@pytest.fixture(scope="session")
def nonsink10():
    return parse_digraph(data.text("nonsink_forest_10.graph"))


@pytest.fixture(scope="session")
def edge_w4():
    return parse_digraph(data.text("single_edge_w4.graph"))
