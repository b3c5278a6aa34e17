"""Subgraph containment with joint multiplicity demand.

H is contained in G when an injective vertex map sends every edge of H onto an
edge of G whose multiplicity is at least H's.  Because the map is injective,
distinct H-edges land on distinct G-edges, so the demand is checked per key.
"""

from __future__ import annotations

from itertools import permutations

from .core import EdgeKey, MultiHypergraph


class HostView:
    """Mutable host used by incremental searches.

    Keeps the edge multiset plus co-membership bitmasks, updated in O(|e|²)
    per edge insertion or removal.
    """

    __slots__ = ("n", "edges", "nbrs", "_pairs")

    def __init__(self, n: int, edges=None):
        self.n = n
        self.edges: dict[EdgeKey, int] = {}
        self.nbrs = [0] * n
        self._pairs: dict[tuple[int, int], int] = {}
        if edges:
            for k, m in edges.items():
                self.add(k, m)

    @classmethod
    def of(cls, G: MultiHypergraph) -> HostView:
        return cls(G.n, G.edges)

    def _link(self, key: EdgeKey, delta: int) -> None:
        vs = sorted(set(key))
        pairs = self._pairs
        for i, u in enumerate(vs):
            for v in vs[i + 1:]:
                c = pairs.get((u, v), 0) + delta
                if c:
                    pairs[(u, v)] = c
                else:
                    del pairs[(u, v)]
                if c == 0 or (c == 1 and delta == 1):
                    self.nbrs[u] ^= 1 << v
                    self.nbrs[v] ^= 1 << u

    def add(self, key: EdgeKey, m: int = 1) -> None:
        old = self.edges.get(key, 0)
        self.edges[key] = old + m
        if old == 0:
            self._link(key, 1)

    def remove(self, key: EdgeKey, m: int = 1) -> None:
        new = self.edges[key] - m
        if new:
            self.edges[key] = new
        else:
            del self.edges[key]
            self._link(key, -1)

    def snapshot(self) -> MultiHypergraph:
        return MultiHypergraph(self.n, dict(self.edges))


class Matcher:
    """Precompiled search for copies of one pattern graph."""

    def __init__(self, H: MultiHypergraph):
        self.H = H
        self.core = H.drop_isolated()
        self.n_total = H.n
        core = self.core
        self.hnbrs = core.neighbours()
        self.hdeg = [bin(b).count("1") for b in self.hnbrs]
        self._plans: dict[tuple[int, ...], list] = {}

    def _plan(self, fixed: tuple[int, ...]) -> list:
        """Vertex order (pre-assigned first) with the edge checks due at each step."""
        plan = self._plans.get(fixed)
        if plan is not None:
            return plan
        core = self.core
        order = list(fixed)
        placed = 0
        for v in order:
            placed |= 1 << v
        while len(order) < core.n:
            best = None
            for v in range(core.n):
                if placed >> v & 1:
                    continue
                score = (bin(self.hnbrs[v] & placed).count("1"), self.hdeg[v], -v)
                if best is None or score > best[0]:
                    best = (score, v)
            v = best[1]
            order.append(v)
            placed |= 1 << v
        pos = {v: i for i, v in enumerate(order)}
        due: list[list[tuple[EdgeKey, int]]] = [[] for _ in order]
        for k, m in core.edges.items():
            due[max(pos[v] for v in k)].append((k, m))
        plan = []
        for i, v in enumerate(order):
            anchor = None
            for u in order[:i]:
                if self.hnbrs[v] >> u & 1:
                    anchor = u
                    break
            plan.append((v, anchor, due[i], self.hdeg[v]))
        self._plans[fixed] = plan
        return plan

    def find(self, view: HostView, pre: dict[int, int] | None = None) -> dict[int, int] | None:
        """Return an embedding of the pattern's non-isolated part, or ``None``."""
        if self.n_total > view.n:
            return None
        pre = pre or {}
        plan = self._plan(tuple(pre))
        phi = dict(pre)
        used = 0
        for g in pre.values():
            used |= 1 << g
        edges = view.edges
        nbrs = view.nbrs
        full = (1 << view.n) - 1

        def ok(step_checks) -> bool:
            for k, m in step_checks:
                if len(k) == 1:
                    gk = (phi[k[0]],)
                elif len(k) == 2:
                    a, b = phi[k[0]], phi[k[1]]
                    gk = (a, b) if a <= b else (b, a)
                else:
                    gk = tuple(sorted(phi[x] for x in k))
                if edges.get(gk, 0) < m:
                    return False
            return True

        npre = len(pre)
        for i in range(npre):
            if not ok(plan[i][2]):
                return None

        def rec(i: int, used: int) -> bool:
            if i == len(plan):
                return True
            v, anchor, checks, deg = plan[i]
            cand = (nbrs[phi[anchor]] if anchor is not None else full) & ~used
            while cand:
                low = cand & -cand
                cand ^= low
                g = low.bit_length() - 1
                if bin(nbrs[g]).count("1") < deg:
                    continue
                phi[v] = g
                if ok(checks) and rec(i + 1, used | low):
                    return True
            phi.pop(v, None)
            return False

        if rec(npre, used):
            return dict(phi)
        return None

    def find_anchored(self, view: HostView, key: EdgeKey, old: int, new: int) -> dict[int, int] | None:
        """Find a copy that needs at least one of the copies of ``key`` numbered old+1..new.

        Such a copy maps some pattern edge of multiplicity in (old, new] onto
        ``key``.  If the host had no copy with ``key`` at multiplicity ``old``,
        any copy present now is of this form.
        """
        if self.n_total > view.n:
            return None
        for h, m in self.core.edges.items():
            if len(h) != len(key) or not old < m <= new:
                continue
            for img in set(permutations(key)):
                pre: dict[int, int] = {}
                good = True
                for a, b in zip(h, img):
                    if pre.setdefault(a, b) != b:
                        good = False
                        break
                if not good or len(set(pre.values())) != len(pre):
                    continue
                hit = self.find(view, pre)
                if hit is not None:
                    return hit
        return None


def contains(G: MultiHypergraph, H: MultiHypergraph) -> bool:
    """True iff G has a subgraph isomorphic to H, multiplicities demanded jointly."""
    if H.n > G.n:
        return False
    return Matcher(H).find(HostView.of(G)) is not None


def find_copy(G: MultiHypergraph, H: MultiHypergraph) -> dict[int, int] | None:
    """An embedding of H's non-isolated vertices into G, if one exists."""
    if H.n > G.n:
        return None
    return Matcher(H).find(HostView.of(G))
