import itertools
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import linprog

from conftest import atlas, brute_ex, from_nx
from invturan.extremal import (
    Budget,
    averaging_bound,
    branch_and_bound,
    ex_cycles,
    ex_exact,
    ex_oneuniform,
    ex_p1p2,
    fast_path,
    fractional_cover_number,
    genupper_exponent,
    matching_number,
    minimum_dominating_set,
    turan_graph,
    turan_graph_size,
)
from invturan.graphs import GraphError, MultiHypergraph, clique, complete_bipartite, contains, cycle, parse_graph_literal
from invturan.patterns import (
    AllCycles,
    Clique,
    Dumbbell,
    EvenCycles,
    Finite,
    OneUniform,
    P3K3,
    Path,
    StarUnionEdge,
)


def _witness_ok(G, P, res):
    W = res.witness
    assert W.is_subgraph_of(G)
    assert W.e == res.value
    assert not P.contains(W)


# -- examples -------------------------------------------------------------------


def test_clique_examples():
    assert ex_exact(clique(4), Clique(3)).value == 4
    assert ex_exact(complete_bipartite(1, 5), Clique(3)).value == 5


def test_even_cycles_k6_minus_triangle():
    G = clique(6)
    G = G.sub({k: 1 for k in G.edges if not set(k) <= {0, 1, 2}})
    res = ex_exact(G, EvenCycles())
    assert res.value == 7
    _witness_ok(G, EvenCycles(), res)


def test_cycle_examples():
    assert ex_cycles(clique(4)).value == 3
    assert ex_cycles(parse_graph_literal("2K3")).value == 4
    G = MultiHypergraph(3, {(0, 1): 2, (1, 2): 1})
    assert ex_cycles(G).value == 3
    assert branch_and_bound(G, AllCycles()).value == 3


def test_p1p2_examples():
    assert ex_p1p2(parse_graph_literal("2K7")).value == 6
    assert ex_p1p2(complete_bipartite(1, 9)).value == 9
    # all six edges of K4 are kept: K4 has no P1 ∪ P2 (5 vertices needed)
    assert ex_p1p2(clique(4)).value == 6
    assert branch_and_bound(clique(4), StarUnionEdge()).value == 6


def test_oneuniform_examples():
    assert ex_oneuniform((3, 2, 1), (2, 2)).value == 5
    assert ex_oneuniform((5,), (2, 2)).value == 5
    assert ex_oneuniform((1, 1, 1), (2, 1)).value == 3


def test_oneuniform_formula_vs_brute_force(rng):
    for _ in range(150):
        x = [rng.randint(0, 4) for _ in range(rng.randint(1, 4))]
        d = sorted((rng.randint(1, 3) for _ in range(rng.randint(1, 3))), reverse=True)
        best = 0
        for kept in itertools.product(*(range(v + 1) for v in x)):
            srt = sorted(kept, reverse=True)
            hit = len(srt) >= len(d) and all(a >= b for a, b in zip(srt, d))
            if not hit:
                best = max(best, sum(kept))
        assert ex_oneuniform(x, d).value == best, (x, d)


def test_turan():
    assert turan_graph_size(5, 3) == turan_graph(5, 3).e == 6
    assert turan_graph_size(4, 4) == turan_graph(4, 4).e == 5
    assert turan_graph_size(2, 3) == 1
    for n in range(1, 9):
        for t in range(3, 6):
            g = nx.turan_graph(n, min(t - 1, n))
            ours = nx.Graph()
            ours.add_nodes_from(range(n))
            ours.add_edges_from(turan_graph(n, t).edges)
            assert turan_graph_size(n, t) == g.number_of_edges()
            assert nx.is_isomorphic(ours, g)
    with pytest.raises(GraphError):
        turan_graph(3, 2)


def test_averaging_examples():
    table = {5: 6}
    assert averaging_bound(clique(5), table) == 6
    K5e = clique(5).sub({k: 1 for k in clique(5).edges if k != (0, 1)})
    assert averaging_bound(K5e, table) == 6
    assert ex_exact(K5e, Clique(3)).value == 6
    assert averaging_bound(MultiHypergraph(5), table) == 0
    with pytest.raises(KeyError):
        averaging_bound(clique(4), table)


def test_averaging_is_lower_bound(rng):
    table = {n: ex_exact(clique(n), Clique(3)).value for n in range(2, 8)}
    for _ in range(40):
        n = rng.randint(3, 7)
        G = from_nx(nx.gnp_random_graph(n, 0.6, seed=rng.randrange(10**6)))
        assert averaging_bound(G, table) <= ex_exact(G, Clique(3)).value


# -- fractional covers ------------------------------------------------------------


def test_fractional_cover_examples():
    assert fractional_cover_number(MultiHypergraph(2, {(0, 1): 1})) == 1
    assert fractional_cover_number(clique(3)) == Fraction(3, 2)
    assert fractional_cover_number(cycle(4)) == 2
    assert genupper_exponent(cycle(4)) == Fraction(3, 2)
    assert genupper_exponent(clique(3)) == Fraction(4, 3)
    with pytest.raises(ValueError):
        genupper_exponent(MultiHypergraph(2, {(0, 1): 1}))


def _rho_lp(H):
    edges = sorted({tuple(sorted(set(k))) for k in H.edges})
    A = [[-1.0 if v in e else 0.0 for e in edges] for v in range(H.n)]
    res = linprog([1.0] * len(edges), A_ub=A, b_ub=[-1.0] * H.n, bounds=(0, None), method="highs")
    return res.fun


def test_fractional_cover_vs_scipy(rng):
    for _ in range(40):
        n = rng.randint(2, 6)
        g = nx.gnp_random_graph(n, 0.5, seed=rng.randrange(10**6))
        if any(d == 0 for _, d in g.degree()):
            continue
        H = from_nx(g)
        assert float(fractional_cover_number(H)) == pytest.approx(_rho_lp(H), abs=1e-9)


def test_fractional_cover_hypergraph_vs_scipy(rng):
    for _ in range(25):
        n = rng.randint(3, 6)
        keys = [k for r in (2, 3) for k in itertools.combinations(range(n), r)]
        chosen = rng.sample(keys, rng.randint(2, min(6, len(keys))))
        H = MultiHypergraph(n, {k: 1 for k in chosen})
        if H.has_isolated_vertices():
            continue
        assert float(fractional_cover_number(H)) == pytest.approx(_rho_lp(H), abs=1e-9)


# -- helpers vs networkx ---------------------------------------------------------


def test_matching_number_vs_networkx():
    for g in atlas(7):
        G = from_nx(g)
        assert matching_number(G.adjacency()) == len(nx.max_weight_matching(g, maxcardinality=True))


def test_domination_vs_brute_force():
    for g in atlas(6):
        n = g.number_of_nodes()
        if n == 0:
            continue
        G = from_nx(g)
        gamma = next(r for r in range(1, n + 1)
                     for S in itertools.combinations(range(n), r) if nx.is_dominating_set(g, S))
        D = minimum_dominating_set(G.adjacency())
        assert len(D) == gamma and nx.is_dominating_set(g, D)


# -- fast paths against the generic solver and brute force ---------------------------

FAST_CASES = [AllCycles(), StarUnionEdge(), Path(2), Path(3), P3K3()]


@pytest.mark.parametrize("P", FAST_CASES, ids=[p.literal() for p in FAST_CASES])
def test_fast_path_equals_generic(P):
    for g in atlas(6):
        if g.number_of_nodes() == 0:
            continue
        G = from_nx(g)
        assert fast_path(G, P) is not None
        fast = ex_exact(G, P)
        slow = ex_exact(G, P, fast=False)
        assert fast.value == slow.value, (P.literal(), list(g.edges))
        _witness_ok(G, P, fast)


def test_generic_vs_brute_force():
    pats = [(Clique(3), lambda g: not any(nx.triangles(g).values())),
            (EvenCycles(), lambda g: not any(len(c) % 2 == 0 for c in nx.simple_cycles(g)))]
    for g in atlas(5, 8):
        if g.number_of_nodes() == 0:
            continue
        G = from_nx(g)
        for P, free in pats:
            assert ex_exact(G, P).value == brute_ex(G, free)


def test_dumbbell_fast_vs_generic(rng):
    for _ in range(60):
        n = rng.randint(2, 5)
        edges = {}
        for k in itertools.combinations(range(n), 2):
            if rng.random() < 0.5:
                edges[k] = rng.randint(1, 2)
        for v in range(n):
            if rng.random() < 0.6:
                edges[(v,)] = rng.randint(1, 2)
        G = MultiHypergraph(n, edges)
        assert ex_exact(G, Dumbbell(2)).value == ex_exact(G, Dumbbell(2), fast=False).value


def test_oneuniform_graph_fast_vs_generic(rng):
    for _ in range(60):
        n = rng.randint(1, 4)
        G = MultiHypergraph(n, {(v,): rng.randint(1, 4) for v in range(n) if rng.random() < 0.8})
        P = OneUniform(tuple(rng.randint(1, 3) for _ in range(rng.randint(1, 3))))
        assert ex_exact(G, P).value == ex_exact(G, P, fast=False).value


def test_multigraph_cycles_fast_vs_generic(rng):
    for _ in range(60):
        n = rng.randint(2, 5)
        G = MultiHypergraph(n, {k: rng.randint(1, 3) for k in itertools.combinations(range(n), 2)
                                if rng.random() < 0.5})
        assert ex_exact(G, AllCycles()).value == ex_exact(G, AllCycles(), fast=False).value


def test_finite_family_with_parallel_member():
    double = MultiHypergraph(2, {(0, 1): 2})
    P = Finite((double,))
    G = MultiHypergraph(3, {(0, 1): 3, (1, 2): 2, (0, 2): 1})
    assert ex_exact(G, P).value == 3


# -- properties -----------------------------------------------------------------


@st.composite
def host_and_sub(draw):
    n = draw(st.integers(2, 6))
    pairs = list(itertools.combinations(range(n), 2))
    big = draw(st.sets(st.sampled_from(pairs), min_size=1))
    small = draw(st.sets(st.sampled_from(sorted(big))))
    return MultiHypergraph(n, {p: 1 for p in big}), MultiHypergraph(n, {p: 1 for p in small})


@settings(max_examples=60, deadline=None)
@given(host_and_sub(), st.sampled_from([Clique(3), EvenCycles(), Path(3), StarUnionEdge()]))
def test_ex_is_monotone(pair, P):
    G, H = pair
    assert ex_exact(H, P).value <= ex_exact(G, P).value <= G.e


def test_layer_decomposition(rng):
    """ex of a disjoint union of connected-member patterns is the sum over components."""
    for _ in range(20):
        a = from_nx(nx.gnp_random_graph(rng.randint(2, 5), 0.6, seed=rng.randrange(10**6)))
        b = from_nx(nx.gnp_random_graph(rng.randint(2, 5), 0.6, seed=rng.randrange(10**6)))
        for P in (Clique(3), Path(3), EvenCycles()):
            whole = ex_exact(a.disjoint_union(b), P).value
            assert whole == ex_exact(a, P).value + ex_exact(b, P).value


def test_budget_marks_incomplete():
    G = clique(9)
    res = branch_and_bound(G, Clique(4), Budget(max_nodes=50))
    assert not res.complete
    assert res.value <= 27
    assert not contains(res.witness, clique(4))
    assert res.witness.e == res.value


def test_layers_are_no_better_than_the_multigraph(rng):
    """A constant-multiplicity multigraph beats the disjoint union of its simple layers."""
    for _ in range(40):
        n = rng.randint(2, 5)
        r = rng.randint(1, 3)
        base = from_nx(nx.gnp_random_graph(n, 0.7, seed=rng.randrange(10**6)))
        if base.e == 0:
            continue
        G = MultiHypergraph(n, {k: r for k in base.edges})
        layers = MultiHypergraph(0)
        for _ in range(r):
            layers = layers.disjoint_union(base)
        for P in (Clique(3), Path(2), Path(3), StarUnionEdge()):
            assert ex_exact(layers, P).value <= ex_exact(G, P).value
