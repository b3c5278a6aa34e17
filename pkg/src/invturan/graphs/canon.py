"""Canonical labelling by colour refinement and individualisation.

A multi-hypergraph is first turned into a vertex- and edge-weighted simple
graph: loops become part of the vertex colour, 2-edges become weighted
adjacencies, and edges of size three or more become extra coloured nodes joined
to their members.  The canonical form is the lexicographically smallest
relabelled certificate over the search tree, with automorphism pruning.
"""

from __future__ import annotations

from .core import MultiHypergraph

CanonicalForm = bytes


def _weighted(G: MultiHypergraph):
    n = G.n
    loops1 = [0] * n
    loops2 = [0] * n
    adj: list[dict[int, tuple]] = [dict() for _ in range(n)]
    labels: list[tuple] = []
    hyper = []
    for k, m in G.edges.items():
        if len(k) == 1:
            loops1[k[0]] += m
        elif len(k) == 2 and k[0] == k[1]:
            loops2[k[0]] += m
        elif len(k) == 2:
            u, v = k
            adj[u][v] = (0, m)
            adj[v][u] = (0, m)
        else:
            hyper.append((k, m))
    for v in range(n):
        labels.append((0, loops1[v], loops2[v]))
    for k, m in hyper:
        node = len(adj)
        adj.append({})
        labels.append((1, len(k), m))
        for v in set(k):
            w = (1, k.count(v))
            adj[node][v] = w
            adj[v][node] = w
    return labels, adj


def _refine(colors: list[int], adj: list[dict[int, tuple]]) -> list[int]:
    ncells = len(set(colors))
    while True:
        sigs = [
            (colors[v], tuple(sorted((colors[u], w) for u, w in nb.items())))
            for v, nb in enumerate(adj)
        ]
        ranked = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranked[s] for s in sigs]
        if len(ranked) == ncells:
            return new
        colors = new
        ncells = len(ranked)


def _certificate(perm: list[int], labels, adj) -> tuple:
    N = len(perm)
    inv = [0] * N
    for v, p in enumerate(perm):
        inv[p] = v
    lab = tuple(labels[inv[p]] for p in range(N))
    edges = []
    for v, nb in enumerate(adj):
        pv = perm[v]
        for u, w in nb.items():
            pu = perm[u]
            if pv < pu:
                edges.append((pv, pu, w))
    edges.sort()
    return (lab, tuple(edges))


class _Search:
    def __init__(self, labels, adj):
        self.labels = labels
        self.adj = adj
        self.N = len(adj)
        self.best_cert = None
        self.best_perm = None
        self.best_path: list[int] = []
        self.autos: list[list[int]] = []

    def run(self) -> None:
        order = {c: i for i, c in enumerate(sorted(set(self.labels)))}
        colors = [order[c] for c in self.labels]
        self._node(colors, [])

    def _orbit_roots(self, fixed: list[int], cell: list[int]) -> dict[int, int]:
        parent = {v: v for v in range(self.N)}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in self.autos:
            if all(g[v] == v for v in fixed):
                for v in cell:
                    a, b = find(v), find(g[v])
                    if a != b:
                        parent[max(a, b)] = min(a, b)
        return {v: find(v) for v in cell}

    def _node(self, colors: list[int], path: list[int]) -> int | None:
        """Explore a subtree; a returned depth asks the caller to unwind to it."""
        colors = _refine(colors, self.adj)
        N = self.N
        if len(set(colors)) == N:
            return self._leaf(colors, path)
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        target_color = min(c for c, vs in cells.items() if len(vs) > 1)
        cell = cells[target_color]
        explored_roots: set[int] = set()
        depth = len(path)
        for v in cell:
            if explored_roots:
                roots = self._orbit_roots(path, cell)
                if roots[v] in {roots[u] for u in explored_roots}:
                    continue
            explored_roots.add(v)
            child = [2 * c + (1 if (c == target_color and u != v) else 0) for u, c in enumerate(colors)]
            jump = self._node(child, path + [v])
            if jump is not None and jump < depth:
                return jump
        return None

    def _leaf(self, perm: list[int], path: list[int]) -> int | None:
        cert = _certificate(perm, self.labels, self.adj)
        if self.best_cert is None or cert < self.best_cert:
            self.best_cert, self.best_perm, self.best_path = cert, perm, path
            return None
        if cert == self.best_cert:
            inv_best = [0] * self.N
            for v, p in enumerate(self.best_perm):
                inv_best[p] = v
            gamma = [inv_best[p] for p in perm]
            self.autos.append(gamma)
            common = 0
            for a, b in zip(self.best_path, path):
                if a != b:
                    break
                common += 1
            return common
        return None


def _encode(cert: tuple, n: int) -> bytes:
    out = bytearray()

    def put(x: int):
        while True:
            b = x & 0x7F
            x >>= 7
            if x:
                out.append(b | 0x80)
            else:
                out.append(b)
                return

    labels, edges = cert
    put(n)
    put(len(labels))
    for lab in labels:
        for x in lab:
            put(x)
    put(len(edges))
    for pu, pv, w in edges:
        put(pu)
        put(pv)
        for x in w:
            put(x)
    return bytes(out)


def canonical_labeling(G: MultiHypergraph) -> tuple[bytes, list[int]]:
    """Return ``(canonical_form, perm)`` where ``perm[v]`` is v's canonical index."""
    labels, adj = _weighted(G)
    if not adj:
        return _encode(((), ()), 0), []
    s = _Search(labels, adj)
    s.run()
    return _encode(s.best_cert, G.n), s.best_perm[: G.n]


def canonical_form(G: MultiHypergraph) -> CanonicalForm:
    """Isomorphism-invariant byte string; equal iff the graphs are isomorphic."""
    return canonical_labeling(G)[0]


def canonical_graph(G: MultiHypergraph) -> MultiHypergraph:
    """The representative of G's isomorphism class in canonical labelling."""
    _, perm = canonical_labeling(G)
    return G.relabel(perm)


def is_isomorphic(G: MultiHypergraph, H: MultiHypergraph) -> bool:
    return G.n == H.n and canonical_form(G) == canonical_form(H)
