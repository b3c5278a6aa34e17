"""Closed-form and structural ex solvers for patterns whose free graphs are classified."""

from __future__ import annotations

from itertools import combinations

from ..graphs import GraphError, MultiHypergraph
from .matching import maximum_matching, minimum_dominating_set
from .solver import ExtremalResult

LOOP_SUBSET_GUARD = 18


def _require_simple(G: MultiHypergraph, what: str) -> None:
    if not G.is_simple_graph():
        raise GraphError(f"{what} needs a simple graph without loops")


def ex_cycles(G: MultiHypergraph) -> ExtremalResult:
    """Maximum-weight spanning forest, weight = multiplicity (Kruskal)."""
    for k in G.edges:
        if len(k) != 2 or k[0] == k[1]:
            raise GraphError("cycle solver needs a loopless 2-uniform graph")
    parent = list(range(G.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    forest = {}
    for (u, v), m in sorted(G.edges.items(), key=lambda km: (-km[1], km[0])):
        a, b = find(u), find(v)
        if a != b:
            parent[a] = b
            forest[(u, v)] = m
    W = MultiHypergraph(G.n, forest)
    return ExtremalResult(W.e, W, "cycles-forest")


def ex_p1p2(G: MultiHypergraph) -> ExtremalResult:
    """Max of Δ, the matching number and the densest 4-vertex induced subgraph.

    A (P1 ∪ P2)-free graph is a matching, a star or lies inside K4, so the
    maximum over these three shapes is exact for every simple host.
    """
    _require_simple(G, "the P1uP2 solver")
    adj = G.adjacency()
    best_val, best_edges = 0, {}
    for v in range(G.n):
        d = bin(adj[v]).count("1")
        if d > best_val:
            best_val = d
            best_edges = {tuple(sorted((v, u))): 1 for u in range(G.n) if adj[v] >> u & 1}
    M = maximum_matching(adj)
    if len(M) > best_val:
        best_val, best_edges = len(M), {e: 1 for e in M}
    if best_val < 6:
        for S in combinations(range(G.n), min(4, G.n)):
            inside = {(a, b): 1 for a, b in combinations(S, 2) if adj[a] >> b & 1}
            if len(inside) > best_val:
                best_val, best_edges = len(inside), inside
    W = MultiHypergraph(G.n, best_edges)
    return ExtremalResult(best_val, W, "p1p2-formula")


def ex_p2(G: MultiHypergraph) -> ExtremalResult:
    """A P2-free simple graph is a matching."""
    _require_simple(G, "the P2 solver")
    M = maximum_matching(G.adjacency())
    return ExtremalResult(len(M), MultiHypergraph(G.n, {e: 1 for e in M}), "matching")


def _star_forest(adj: list[int], universe: int, n: int) -> dict:
    """Spanning star forest of the induced subgraph with the fewest stars."""
    centres = minimum_dominating_set(adj, universe)
    edges = {}
    taken = 0
    for c in centres:
        taken |= 1 << c
    for c in centres:
        leaves = adj[c] & universe & ~taken
        taken |= leaves
        for u in range(n):
            if leaves >> u & 1:
                edges[tuple(sorted((c, u)))] = 1
    return edges


def _triangle_packings(adj: list[int], n: int):
    """All collections of vertex-disjoint triangles, as (vertex mask, triangles)."""
    tris = [
        (a, b, c)
        for a in range(n)
        for b in range(a + 1, n)
        if adj[a] >> b & 1
        for c in range(b + 1, n)
        if adj[a] >> c & 1 and adj[b] >> c & 1
    ]

    def rec(i: int, used: int, chosen: list):
        yield used, list(chosen)
        for j in range(i, len(tris)):
            a, b, c = tris[j]
            mask = 1 << a | 1 << b | 1 << c
            if not used & mask:
                chosen.append(tris[j])
                yield from rec(j + 1, used | mask, chosen)
                chosen.pop()

    return rec(0, 0, [])


def ex_p3(G: MultiHypergraph) -> ExtremalResult:
    """P3-free graphs are disjoint triangles and stars.

    A spanning such subgraph with triangle set T and s stars (singletons
    included) has n - s edges, and the fewest stars covering G - V(T) is the
    domination number of G - V(T).
    """
    _require_simple(G, "the P3 solver")
    n = G.n
    adj = G.adjacency()
    full = (1 << n) - 1
    best = None
    for used, tris in _triangle_packings(adj, n):
        rest = full & ~used
        gamma = len(minimum_dominating_set(adj, rest))
        if best is None or gamma < best[0]:
            best = (gamma, used, tris)
    gamma, used, tris = best
    edges = _star_forest(adj, full & ~used, n)
    for a, b, c in tris:
        edges.update({(a, b): 1, (a, c): 1, (b, c): 1})
    W = MultiHypergraph(n, edges)
    assert W.e == n - gamma
    return ExtremalResult(W.e, W, "p3-packing")


def ex_p3k3(G: MultiHypergraph) -> ExtremalResult:
    """{P3, K3}-free graphs are star forests: ex = n - γ(G)."""
    _require_simple(G, "the P3K3 solver")
    adj = G.adjacency()
    W = MultiHypergraph(G.n, _star_forest(adj, (1 << G.n) - 1, G.n))
    return ExtremalResult(W.e, W, "p3-packing")


def oneuniform_value(x, d) -> tuple[int, int]:
    """max over t' of e(G_t'), returning (value, best t') with t' 1-based."""
    x = sorted(x, reverse=True)
    d = sorted(d, reverse=True)
    t = len(d)
    x = x + [0] * max(0, t - len(x))
    best = (-1, 0)
    for tp in range(1, t + 1):
        cap = d[tp - 1] - 1
        val = sum(x[: tp - 1]) + sum(min(xi, cap) for xi in x[tp - 1:])
        if val > best[0]:
            best = (val, tp)
    return best


def ex_oneuniform(x, d) -> ExtremalResult:
    """ex of the 1-uniform host with loop counts ``x`` against pattern ``d``."""
    xs = sorted(x, reverse=True)
    value, tp = oneuniform_value(xs, d)
    cap = sorted(d, reverse=True)[tp - 1] - 1
    kept = [xi if i < tp - 1 else min(xi, cap) for i, xi in enumerate(xs)]
    W = MultiHypergraph(len(xs), {(i,): c for i, c in enumerate(kept) if c})
    res = ExtremalResult(value, W, "oneuniform-formula")
    res.extra["t_prime"] = tp
    return res


def ex_oneuniform_graph(G: MultiHypergraph, d) -> ExtremalResult:
    """The formula applied to a host: loops follow it, other edges are always kept."""
    loops = [(k[0], m) for k, m in G.edges.items() if len(k) == 1]
    order = sorted(loops, key=lambda vm: (-vm[1], vm[0]))
    res = ex_oneuniform([m for _, m in order], d)
    edges = {k: m for k, m in G.edges.items() if len(k) != 1}
    for i, (v, _) in enumerate(order):
        c = res.witness.edges.get((i,), 0)
        if c:
            edges[(v,)] = c
    W = MultiHypergraph(G.n, edges)
    out = ExtremalResult(W.e, W, "oneuniform-formula")
    out.extra.update(res.extra)
    return out


def ex_dumbbell(G: MultiHypergraph, r: int = 2) -> ExtremalResult:
    """Choose the set L of vertices that keep their loops; drop r-edges inside L.

    Every other edge is kept.  Exhaustive over L, guarded by the number of
    looped vertices.
    """
    loops = {k[0]: m for k, m in G.edges.items() if len(k) == 1}
    looped = sorted(loops)
    if len(looped) > LOOP_SUBSET_GUARD:
        raise GraphError(f"{len(looped)} looped vertices exceeds the closed-form guard of {LOOP_SUBSET_GUARD}")
    idx = {v: i for i, v in enumerate(looped)}
    redges = []
    for k, m in G.edges.items():
        if len(k) == r and len(set(k)) == r and all(v in idx for v in k):
            mask = 0
            for v in k:
                mask |= 1 << idx[v]
            redges.append((mask, m))
    total = G.e
    loop_total = sum(loops.values())
    best = None
    for L in range(1 << len(looped)):
        gain = sum(loops[looped[i]] for i in range(len(looped)) if L >> i & 1)
        loss = sum(m for mask, m in redges if mask & L == mask)
        val = total - loop_total + gain - loss
        if best is None or val > best[0]:
            best = (val, L)
    val, L = best
    keep_loop = {looped[i] for i in range(len(looped)) if L >> i & 1}
    edges = {}
    for k, m in G.edges.items():
        if len(k) == 1:
            if k[0] in keep_loop:
                edges[k] = m
        elif len(k) == r and len(set(k)) == r and all(v in keep_loop for v in k):
            continue
        else:
            edges[k] = m
    W = MultiHypergraph(G.n, edges)
    assert W.e == val
    return ExtremalResult(val, W, "dumbbell-closed-form")
