"""Exact maximum matching and domination by memoised search over vertex bitmasks."""

from __future__ import annotations

from functools import lru_cache


def _popcount(x: int) -> int:
    return bin(x).count("1")


def maximum_matching(adj: list[int]) -> list[tuple[int, int]]:
    """A maximum matching of the simple graph with bitmask adjacency ``adj``.

    Degree-one vertices are matched greedily (always safe); otherwise the
    search branches on a maximum-degree vertex, with the bound |S|//2.
    """

    @lru_cache(maxsize=None)
    def best(S: int) -> tuple[tuple[int, int], ...]:
        # drop vertices with no neighbour inside S
        T = S
        rest = S
        while rest:
            low = rest & -rest
            rest ^= low
            v = low.bit_length() - 1
            if not adj[v] & S:
                T &= ~low
        S = T
        if not S:
            return ()
        top, top_deg = -1, -1
        rest = S
        while rest:
            low = rest & -rest
            rest ^= low
            v = low.bit_length() - 1
            d = _popcount(adj[v] & S)
            if d == 1:
                u = (adj[v] & S).bit_length() - 1
                return ((min(u, v), max(u, v)),) + best(S & ~(1 << u) & ~low)
            if d > top_deg:
                top, top_deg = v, d
        cap = _popcount(S) // 2
        result: tuple = ()
        nb = adj[top] & S
        while nb:
            low = nb & -nb
            nb ^= low
            u = low.bit_length() - 1
            cand = ((min(u, top), max(u, top)),) + best(S & ~low & ~(1 << top))
            if len(cand) > len(result):
                result = cand
                if len(result) == cap:
                    return result
        cand = best(S & ~(1 << top))
        if len(cand) > len(result):
            result = cand
        return result

    return sorted(best((1 << len(adj)) - 1))


def matching_number(adj: list[int]) -> int:
    return len(maximum_matching(adj))


def minimum_dominating_set(adj: list[int], universe: int | None = None) -> list[int]:
    """Smallest set D ⊆ universe with every universe vertex in D or adjacent to D (within universe)."""
    n = len(adj)
    U = (1 << n) - 1 if universe is None else universe
    closed = [(adj[v] | 1 << v) & U for v in range(n)]
    best: list = [None]

    def rec(undominated: int, chosen: list[int]):
        if best[0] is not None and len(chosen) >= len(best[0]):
            return
        if not undominated:
            best[0] = list(chosen)
            return
        # a lower bound: every new vertex dominates at most maxcover vertices
        maxcover = max(_popcount(closed[v] & undominated) for v in _bits(U))
        need = -(-_popcount(undominated) // maxcover)
        if best[0] is not None and len(chosen) + need >= len(best[0]):
            return
        low = undominated & -undominated
        v = low.bit_length() - 1
        # some vertex of N[v] must be chosen
        options = sorted(_bits(closed[v]), key=lambda w: (-_popcount(closed[w] & undominated), w))
        for w in options:
            chosen.append(w)
            rec(undominated & ~closed[w], chosen)
            chosen.pop()

    rec(U, [])
    return sorted(best[0])


def _bits(x: int):
    while x:
        low = x & -x
        x ^= low
        yield low.bit_length() - 1
