import itertools

import pytest

from graphcanon import ColoredGraph, gen_family


def path_graph(n: int) -> ColoredGraph:
    return ColoredGraph(n, [(i, i + 1) for i in range(1, n)])


def complete_graph(n: int) -> ColoredGraph:
    return ColoredGraph(n, itertools.combinations(range(1, n + 1), 2))


@pytest.fixture(scope="session")
def p3():
    return path_graph(3)


@pytest.fixture(scope="session")
def k3():
    return complete_graph(3)


@pytest.fixture(scope="session")
def k4():
    return complete_graph(4)


@pytest.fixture(scope="session")
def c4():
    return gen_family("cycle", n=4)


@pytest.fixture(scope="session")
def c6():
    return gen_family("cycle", n=6)


@pytest.fixture(scope="session")
def two_triangles():
    return ColoredGraph(6, [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)])
