import itertools

import networkx as nx
import pytest

from invturan.graphs import MultiHypergraph

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def from_nx(g) -> MultiHypergraph:
    """networkx graph with integer nodes 0..n-1 to a simple host."""
    nodes = sorted(g.nodes())
    idx = {v: i for i, v in enumerate(nodes)}
    return MultiHypergraph(len(nodes), {tuple(sorted((idx[u], idx[v]))): 1 for u, v in g.edges()})


def to_nx(G: MultiHypergraph):
    g = nx.Graph()
    g.add_nodes_from(range(G.n))
    g.add_edges_from(k for k in G.edges if len(k) == 2)
    return g


def atlas(max_nodes: int, max_edges: int | None = None):
    """Every simple graph up to isomorphism (networkx atlas, at most 7 vertices)."""
    for g in nx.graph_atlas_g():
        if g.number_of_nodes() > max_nodes:
            continue
        if max_edges is not None and g.number_of_edges() > max_edges:
            continue
        yield g


def brute_ex(G: MultiHypergraph, free) -> int:
    """Largest edge subset of a simple host accepted by ``free`` (networkx graph -> bool)."""
    edges = list(G.edges)
    for r in range(len(edges), -1, -1):
        for sub in itertools.combinations(edges, r):
            g = nx.Graph()
            g.add_nodes_from(range(G.n))
            g.add_edges_from(sub)
            if free(g):
                return r
    return 0


@pytest.fixture
def rng():
    import random

    return random.Random(12345)
