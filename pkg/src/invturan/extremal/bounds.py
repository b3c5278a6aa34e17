"""Turán graphs, the averaging lower bound, and fractional cover numbers."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Mapping

from ..graphs import GraphError, MultiHypergraph


def turan_graph(n: int, t: int) -> MultiHypergraph:
    """Balanced complete (t-1)-partite graph on n vertices, parts in contiguous blocks."""
    if n < 1 or t < 3:
        raise GraphError("turan_graph needs n >= 1 and t >= 3")
    r = t - 1
    part = []
    for i in range(r):
        size = n // r + (1 if i < n % r else 0)
        part.extend([i] * size)
    return MultiHypergraph(
        n, {(u, v): 1 for u in range(n) for v in range(u + 1, n) if part[u] != part[v]}
    )


def turan_graph_size(n: int, t: int) -> int:
    if n < 1 or t < 3:
        raise GraphError("turan_graph_size needs n >= 1 and t >= 3")
    r = t - 1
    q, s = divmod(n, r)
    sizes = [q + 1] * s + [q] * (r - s)
    return comb(n, 2) - sum(comb(x, 2) for x in sizes)


def pi_n(ex_clique_value: int, n: int) -> Fraction:
    return Fraction(ex_clique_value, comb(n, 2))


def averaging_bound(G: MultiHypergraph, table: Mapping[int, int]) -> int:
    """⌈ex(K_n, P)/C(n,2) · e(G)⌉ with n = |V(G)|.

    Placing a maximum P-free subgraph of K_n on V(G) by a uniformly random
    bijection keeps each edge of G with probability ex(K_n,P)/C(n,2); some
    outcome reaches the mean, and ex is an integer, hence the ceiling.
    """
    for k in G.edges:
        if len(k) != 2 or k[0] == k[1]:
            raise GraphError("averaging_bound needs a loopless 2-uniform graph")
    if G.e == 0:
        return 0
    n = G.n
    if n not in table:
        raise KeyError(f"no ex(K_{n}, P) entry in the table")
    val = pi_n(table[n], n) * G.e
    return -((-val.numerator) // val.denominator)


def _solve(A: list[list[Fraction]], b: list[Fraction]) -> list[Fraction] | None:
    """Solve a square system exactly; ``None`` if singular."""
    n = len(A)
    M = [row[:] + [b[i]] for i, row in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        inv = 1 / M[col][col]
        M[col] = [x * inv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [M[r][n] for r in range(n)]


def fractional_cover_number(H: MultiHypergraph) -> Fraction:
    """min Σ φ(e) subject to Σ_{e ∋ v} φ(e) ≥ 1 for every vertex, φ ≥ 0.

    Exact, by enumerating basic solutions: a vertex of the feasible polyhedron
    has some variables at zero and an equal number of cover constraints tight.
    Parallel edges give identical columns and are merged first.
    """
    if H.e == 0:
        raise GraphError("fractional cover number needs at least one edge")
    if H.has_isolated_vertices():
        raise GraphError("fractional cover number is undefined with isolated vertices")
    edges = [frozenset(k) for k in H.edges]
    edges = sorted(set(edges), key=sorted)
    n, m = H.n, len(edges)
    inc = [[Fraction(1) if v in e else Fraction(0) for e in edges] for v in range(n)]
    best = None
    for s in range(1, min(n, m) + 1):
        for T in combinations(range(n), s):
            for F in combinations(range(m), s):
                sol = _solve([[inc[v][j] for j in F] for v in T], [Fraction(1)] * s)
                if sol is None or any(x < 0 for x in sol):
                    continue
                phi = dict(zip(F, sol))
                if all(sum(phi.get(j, 0) for j in range(m) if inc[v][j]) >= 1 for v in range(n)):
                    val = sum(sol)
                    if best is None or val < best:
                        best = val
    return best


def genupper_exponent(H: MultiHypergraph) -> Fraction:
    """(s-1)/(s-ρ*) with s = e(H); only meaningful when ρ*(H) < s."""
    s = H.e
    rho = fractional_cover_number(H)
    if rho >= s:
        raise ValueError(f"bound inapplicable: fractional cover number {rho} is not below e(H) = {s}")
    return Fraction(s - 1) / (s - rho)
