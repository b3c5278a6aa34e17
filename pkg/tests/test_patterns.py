import networkx as nx
import pytest
from networkx.algorithms import isomorphism

from conftest import atlas, from_nx, to_nx
from invturan.graphs import HostView, MultiHypergraph, clique, complete_bipartite, cycle, parse_graph_literal
from invturan.patterns import (
    AllCycles,
    Clique,
    Dumbbell,
    EvenCycles,
    Finite,
    OddCycles,
    OneUniform,
    P3K3,
    Path,
    PatternError,
    StarUnionEdge,
    family_contains,
    free_characterization,
    parse_pattern,
)


def _has_even_cycle(g) -> bool:
    return any(len(c) % 2 == 0 for c in nx.simple_cycles(g))


def _mono(g, h) -> bool:
    return isomorphism.GraphMatcher(g, h).subgraph_is_monomorphic()


ORACLES = [
    (AllCycles(), lambda g: not nx.is_forest(g) if g.number_of_nodes() else False),
    (EvenCycles(), _has_even_cycle),
    (OddCycles(), lambda g: not nx.is_bipartite(g)),
    (Clique(3), lambda g: any(len(c) >= 3 for c in nx.find_cliques(g))),
    (Clique(4), lambda g: any(len(c) >= 4 for c in nx.find_cliques(g))),
    (Path(2), lambda g: _mono(g, nx.path_graph(3))),
    (Path(3), lambda g: _mono(g, nx.path_graph(4))),
    (StarUnionEdge(), lambda g: _mono(g, to_nx(parse_graph_literal("P1+P2")))),
    (P3K3(), lambda g: _mono(g, nx.path_graph(4)) or _mono(g, nx.complete_graph(3))),
]


@pytest.mark.parametrize("P, oracle", ORACLES, ids=[p.literal() for p, _ in ORACLES])
def test_membership_vs_networkx(P, oracle):
    for g in atlas(7):
        if g.number_of_nodes() == 0:
            continue
        assert P.contains(from_nx(g)) == oracle(g), nx.to_edgelist(g)


@pytest.mark.parametrize("P, oracle", ORACLES, ids=[p.literal() for p, _ in ORACLES])
def test_incremental_creation_agrees(P, oracle, rng):
    """``creates`` after adding an edge equals a fresh containment test."""
    for _ in range(40):
        n = rng.randint(3, 7)
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        rng.shuffle(pairs)
        view = HostView(n)
        for key in pairs:
            view.add(key)
            now = P.contains_view(view)
            assert P.creates(view, key, 0, 1) == now
            if now:
                break


def test_family_contains_examples():
    assert family_contains(EvenCycles(), clique(4))
    assert not family_contains(EvenCycles(), clique(3))
    D = MultiHypergraph(2, {(0, 1): 1, (0,): 1, (1,): 1})
    assert family_contains(Dumbbell(2), D)
    assert not family_contains(Dumbbell(2), MultiHypergraph(2, {(0, 1): 1, (0,): 1}))


def test_cycles_ignore_parallel_edges():
    assert not AllCycles().contains(MultiHypergraph(2, {(0, 1): 3}))
    assert not EvenCycles().contains(MultiHypergraph(3, {(0, 1): 2, (1, 2): 2}))
    assert EvenCycles().contains(complete_bipartite(2, 2))
    assert not EvenCycles().contains(parse_graph_literal("C5"))
    assert EvenCycles().contains(cycle(6))


def test_oneuniform_membership():
    P = OneUniform((2, 2))
    assert P.d == (2, 2)
    assert P.contains(MultiHypergraph(2, {(0,): 3, (1,): 2}))
    assert not P.contains(MultiHypergraph(2, {(0,): 5, (1,): 1}))
    assert OneUniform((1, 3)).d == (3, 1)
    with pytest.raises(PatternError):
        OneUniform((0, 1))


def test_finite_family_multiplicity():
    double = MultiHypergraph(2, {(0, 1): 2})
    P = Finite((double,))
    assert not P.support_determined
    assert P.contains(MultiHypergraph(3, {(1, 2): 2}))
    assert not P.contains(clique(3))


def test_free_characterization():
    assert set(free_characterization(StarUnionEdge()).components) == {"matching", "star", "subgraph of K4"}
    assert free_characterization(Path(3)).kind == "p3"
    assert free_characterization(Clique(4)) is None
    assert free_characterization(AllCycles()).kind == "cycles"


@pytest.mark.parametrize(
    "text, expect",
    [
        ("cycles", AllCycles()),
        ("even-cycles", EvenCycles()),
        ("odd-cycles", OddCycles()),
        ("K3", Clique(3)),
        ("dumbbell", Dumbbell(2)),
        ("dumbbell3", Dumbbell(3)),
        ("oneuniform:2,3", OneUniform((3, 2))),
    ],
)
def test_parse_pattern(text, expect):
    assert parse_pattern(text) == expect


def test_parse_pattern_named_and_literal():
    assert parse_pattern("P3").literal() == "P3"
    assert parse_pattern("P1uP2").literal() == "P1uP2"
    assert parse_pattern("P3K3").literal() == "P3K3"
    fam = parse_pattern("family:K3,3,C4")
    assert len(fam.members()) == 2
    star = parse_pattern("K1,3")
    assert star.contains(complete_bipartite(1, 4)) and not star.contains(cycle(5))
    for bad in ("oneuniform:a", "nonsense!", "K1"):
        with pytest.raises(PatternError):
            parse_pattern(bad)


def test_parse_pattern_file(tmp_path):
    f = tmp_path / "h.graph"
    f.write_text("n 3\n0 1\n1 2\n0 2\n")
    assert parse_pattern(f"file:{f}").contains(clique(4))
