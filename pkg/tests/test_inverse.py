import itertools

import networkx as nx
import pytest

from conftest import from_nx
from invturan.extremal import Budget, ex_exact
from invturan.graphs import (
    MultiHypergraph,
    canonical_form,
    clique,
    complete_bipartite,
    contract,
    cycle,
    dumbbell,
    is_isomorphic,
    parse_graph_literal,
)
from invturan.inverse import (
    SearchSpace,
    compressed,
    compression_allowed,
    enumerate_hosts,
    finiteness_check,
    inverse_search,
    verify_host,
)
from invturan.patterns import AllCycles, Clique, Dumbbell, EvenCycles, Finite, OddCycles, Path, parse_pattern


# -- finiteness -------------------------------------------------------------------


def test_finiteness_examples():
    v = finiteness_check(parse_pattern("K1,3"))
    assert v.infinite_from == 3 and v.core_size == 1
    assert v.infinite_at(3) and not v.infinite_at(2)
    assert finiteness_check(Clique(3)).infinite_from is None
    fam = Finite((parse_graph_literal("P3"), clique(3)))
    assert finiteness_check(fam).infinite_from is None
    assert finiteness_check(parse_pattern("3K2")).infinite_from == 3
    for P in (AllCycles(), EvenCycles(), OddCycles()):
        assert finiteness_check(P).infinite_from is None


def test_infinite_status():
    res = inverse_search(parse_pattern("K1,3"), 4, SearchSpace(n_max=5, m_max=6))
    assert res.status == "infinite" and res.best_value is None
    assert res.core_size == 1


def test_sunflower_is_really_infinite():
    """Many petals on the same core keep ex below k."""
    P = parse_pattern("K1,3")
    for petals in (4, 6, 9):
        assert ex_exact(complete_bipartite(1, petals), P).value == 2


def test_mixed_uniformity_cap():
    mixed = MultiHypergraph(3, {(0, 1): 1, (2,): 1})
    v = finiteness_check(Finite((mixed,)))
    assert v.infinite_from is None
    assert v.cap(4) == 3 + 3


# -- search examples -------------------------------------------------------------


def test_cycles_k4():
    res = inverse_search(AllCycles(), 4, SearchSpace(n_max=6, m_max=8))
    assert res.status == "exact-within-caps"
    assert res.best_value == 6
    assert len(res.hosts) == 1 and is_isomorphic(res.hosts[0], clique(4))


def test_even_cycles_k5():
    res = inverse_search(EvenCycles(), 5, SearchSpace(n_max=7, m_max=10))
    assert res.best_value == 6
    forms = {canonical_form(G) for G in res.hosts}
    assert forms == {canonical_form(complete_bipartite(2, 3)), canonical_form(clique(4))}


def test_path3_k3():
    res = inverse_search(Path(3), 3, SearchSpace(n_max=6, m_max=8))
    assert res.best_value == 4
    assert len(res.hosts) == 1 and is_isomorphic(res.hosts[0], cycle(4))
    assert res.stats["caps_binding"] is False


def test_verify_host_examples():
    rep = verify_host(Clique(3), 7, clique(5))
    assert rep.passed and rep.e == 10 and rep.ex == 6
    rep = verify_host(EvenCycles(), 6, complete_bipartite(3, 3))
    assert rep.passed and rep.e == 9
    rep = verify_host(Dumbbell(2), 3, dumbbell(2))
    assert rep.passed and rep.e == 3 and rep.ex == 2
    assert not verify_host(Clique(3), 6, clique(5)).passed


def test_isolated_padding():
    res = inverse_search(AllCycles(), 3, SearchSpace(n_max=5, m_max=6, require_no_isolated=False))
    assert res.best_value == 3
    assert sorted(G.n for G in res.hosts) == [3, 4, 5]


# -- enumeration completeness --------------------------------------------------------


def test_simple_enumeration_matches_atlas():
    got = {canonical_form(G) for G in enumerate_hosts(SearchSpace(n_max=5, m_max=10, edge_sizes={2}))}
    want = {canonical_form(MultiHypergraph(0))}
    for g in nx.graph_atlas_g():
        if 1 <= g.number_of_nodes() <= 5 and min(d for _, d in g.degree()) > 0:
            want.add(canonical_form(from_nx(g)))
    assert got == want


def test_multigraph_enumeration_matches_brute_force():
    space = SearchSpace(simple_only=False, n_max=4, m_max=9, mult_max=2, edge_sizes={2})
    hosts = list(enumerate_hosts(space))
    got = [canonical_form(G) for G in hosts]
    assert len(got) == len(set(got))
    want = set()
    for n in range(0, 5):
        pairs = list(itertools.combinations(range(n), 2))
        for mults in itertools.product(range(3), repeat=len(pairs)):
            G = MultiHypergraph(n, {p: m for p, m in zip(pairs, mults) if m})
            if G.has_isolated_vertices() or G.e > 9:
                continue
            want.add(canonical_form(G))
    assert set(got) == want


def test_enumeration_filter():
    space = SearchSpace(n_max=6, m_max=15, edge_sizes={2})
    forests = list(enumerate_hosts(space, accept=lambda G: not AllCycles().contains(G)))
    assert all(nx.is_forest(nx.Graph(list(G.edges))) for G in forests if G.e)
    # the empty host plus every forest on 1..6 vertices without isolated vertices
    want = 1 + sum(
        1 for g in nx.graph_atlas_g()
        if 1 <= g.number_of_nodes() <= 6 and nx.is_forest(g) and min(d for _, d in g.degree()) > 0
    )
    assert len(forests) == want


# -- search against plain enumeration --------------------------------------------------


@pytest.mark.parametrize(
    "P, k, space",
    [
        (Clique(3), 4, SearchSpace(n_max=6, m_max=9)),
        (Path(3), 4, SearchSpace(n_max=7, m_max=9)),
        (EvenCycles(), 4, SearchSpace(n_max=6, m_max=9)),
        (Clique(3), 3, SearchSpace(simple_only=False, n_max=4, m_max=8, mult_max=2)),
        # the search lowers mult_max to k-1 = 2; the plain scan keeps 3
        (Clique(3), 3, SearchSpace(simple_only=False, n_max=4, m_max=8, mult_max=3)),
        (AllCycles(), 3, SearchSpace(simple_only=False, n_max=4, m_max=7, mult_max=4)),
    ],
    ids=["K3-4", "P3-4", "even-4", "K3-3-multi", "K3-3-multicap", "cycles-3-multicap"],
)
def test_search_matches_enumeration(P, k, space):
    """The pruned search returns exactly the extremal classes of a plain scan."""
    res = inverse_search(P, k, space)
    scan = SearchSpace(simple_only=space.simple_only, n_max=space.n_max, m_max=space.m_max,
                       mult_max=space.mult_max, edge_sizes={2})
    good = [G for G in enumerate_hosts(scan, accept=lambda G: ex_exact(G, P).value < k)]
    best = max(G.e for G in good)
    assert res.best_value == best
    assert set(res.host_forms()) == {canonical_form(G).hex() for G in good if G.e == best}


def test_hosts_downward_closed(rng):
    """Deleting any edge unit from a reported host keeps ex below k."""
    for P, k in ((Clique(3), 7), (EvenCycles(), 6), (Path(3), 5)):
        res = inverse_search(P, k, SearchSpace(n_max=7, m_max=12))
        for G in res.hosts:
            assert ex_exact(G, P).value < k
            for key in G.edges:
                assert ex_exact(G.without_edge(key), P).value < k


@pytest.mark.parametrize("P, k", [(EvenCycles(), 5), (Clique(3), 7), (AllCycles(), 5)],
                         ids=["even-5", "K3-7", "cycles-5"])
def test_thread_determinism(P, k):
    space = SearchSpace(n_max=6, m_max=10)
    a = inverse_search(P, k, space, threads=1).to_json()
    for threads in (2, 3):
        assert inverse_search(P, k, space, threads=threads).to_json() == a
    assert "seconds" not in a


def test_compression_soundness():
    for P, k, kw, kinds in [
        (Clique(3), 4, dict(simple_only=False, mult_max=3, n_max=5, m_max=10),
         ("component_closure", "underlying_simple")),
        (AllCycles(), 4, dict(simple_only=False, mult_max=3, n_max=6, m_max=10), ("component_closure",)),
        (Clique(3), 5, dict(n_max=6, m_max=10), ("component_closure", "underlying_simple")),
    ]:
        base = inverse_search(P, k, SearchSpace(**kw))
        for kind in kinds:
            comp = inverse_search(P, k, SearchSpace(compression=kind, **kw))
            assert comp.best_value == base.best_value
            assert set(comp.host_forms()) <= set(base.host_forms())
            assert all(compressed(G, kind) for G in comp.hosts)


def test_compression_rules():
    assert compression_allowed(Clique(3), "underlying_simple")
    assert not compression_allowed(AllCycles(), "underlying_simple")
    assert compression_allowed(AllCycles(), "component_closure")
    assert not compression_allowed(Path(3), "underlying_simple")
    with pytest.raises(ValueError):
        inverse_search(Path(3), 3, SearchSpace(compression="underlying_simple"))


def test_budget_exhausted():
    res = inverse_search(Clique(3), 7, SearchSpace(n_max=6, m_max=12), Budget(max_nodes=3))
    assert res.status == "budget-exhausted"
    assert res.best_value is not None
    for G in res.hosts:
        assert ex_exact(G, Clique(3)).value < 7


def test_search_space_validation():
    with pytest.raises(ValueError):
        SearchSpace(simple_only=True, mult_max=2)
    with pytest.raises(ValueError):
        SearchSpace(compression="bogus")
    with pytest.raises(ValueError):
        SearchSpace(n_max=0)


def test_pruned_graphs_stay_pruned(rng):
    """Adding an edge to a host with ex >= k keeps ex >= k."""
    for P, k in ((Clique(3), 5), (EvenCycles(), 5), (Path(3), 4)):
        seen = 0
        while seen < 40:
            G = from_nx(nx.gnp_random_graph(rng.randint(4, 7), 0.6, seed=rng.randrange(10**6)))
            if ex_exact(G, P).value < k:
                continue
            seen += 1
            missing = [(u, v) for u in range(G.n) for v in range(u + 1, G.n) if (u, v) not in G.edges]
            if missing:
                assert ex_exact(G.with_edge(rng.choice(missing)), P).value >= k


def _split_vertex(G, z, rng):
    """G' with z split into z and a new vertex w, no edge between them; contracting {z, w} gives G."""
    w = G.n
    edges = {}
    for key, m in G.edges.items():
        for _ in range(m):
            if z in key and rng.random() < 0.5:
                new = tuple(sorted(w if v == z else v for v in key))
            else:
                new = key
            edges[new] = edges.get(new, 0) + 1
    return MultiHypergraph(G.n + 1, edges), [z, w]


def test_compression_expansions(rng):
    """ex does not drop when a compressed maximizer is expanded by splitting a vertex."""
    for P, k, kw in ((Clique(3), 5, dict(simple_only=False, mult_max=2, n_max=5, m_max=8)),
                     (AllCycles(), 4, dict(n_max=5, m_max=8))):
        kind = "component_closure"
        res = inverse_search(P, k, SearchSpace(compression=kind, **kw))
        for G in res.hosts:
            base = ex_exact(G, P).value
            for _ in range(30):
                z = rng.randrange(G.n)
                G2, I = _split_vertex(G, z, rng)
                if G2.has_isolated_vertices():
                    continue
                assert is_isomorphic(contract(G2, I), G)
                assert ex_exact(G2, P).value >= base
