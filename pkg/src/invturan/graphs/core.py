"""Multi-hypergraph data model, vertex sets, contraction and simplification maps."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

MAX_VERTICES = 64

EdgeKey = tuple[int, ...]


class GraphError(ValueError):
    """Raised for malformed graphs or arguments outside an operation's domain."""


def edge_key(vertices: Iterable[int]) -> EdgeKey:
    key = tuple(sorted(vertices))
    if not key:
        raise GraphError("edges must contain at least one vertex")
    return key


@dataclass(frozen=True)
class VertexSet:
    """A subset of ``range(n)`` stored as a bitmask."""

    n: int
    bits: int = 0

    def __post_init__(self):
        if self.bits >> self.n:
            raise GraphError(f"vertex set {self.bits:#x} exceeds {self.n} vertices")

    @classmethod
    def of(cls, n: int, vertices: Iterable[int]) -> VertexSet:
        bits = 0
        for v in vertices:
            if not 0 <= v < n:
                raise GraphError(f"vertex {v} out of range 0..{n - 1}")
            bits |= 1 << v
        return cls(n, bits)

    def __contains__(self, v: int) -> bool:
        return 0 <= v < self.n and bool(self.bits >> v & 1)

    def __iter__(self) -> Iterator[int]:
        b = self.bits
        while b:
            low = b & -b
            yield low.bit_length() - 1
            b ^= low

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __or__(self, other: VertexSet) -> VertexSet:
        return VertexSet(max(self.n, other.n), self.bits | other.bits)

    def __and__(self, other: VertexSet) -> VertexSet:
        return VertexSet(max(self.n, other.n), self.bits & other.bits)

    def complement(self) -> VertexSet:
        return VertexSet(self.n, ((1 << self.n) - 1) & ~self.bits)

    def to_list(self) -> list[int]:
        return list(self)


@dataclass(frozen=True)
class MultiHypergraph:
    """Vertices ``0..n-1`` and a multiset of edges.

    ``edges`` maps a sorted vertex tuple to its multiplicity.  A 1-uniform loop
    at ``v`` is ``(v,)``; the 2-uniform loop produced by contracting an edge is
    ``(v, v)``.  Instances are immutable and hashable.
    """

    n: int
    edges: Mapping[EdgeKey, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 0:
            raise GraphError("vertex count must be nonnegative")
        clean = {}
        for key, mult in self.edges.items():
            k = edge_key(key)
            if k[-1] >= self.n or k[0] < 0:
                raise GraphError(f"edge {k} uses a vertex outside 0..{self.n - 1}")
            if mult < 0:
                raise GraphError(f"negative multiplicity on edge {k}")
            if mult:
                clean[k] = clean.get(k, 0) + mult
        object.__setattr__(self, "edges", dict(sorted(clean.items())))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Iterable[int]]) -> MultiHypergraph:
        """Build from a list of edges; repeated edges accumulate multiplicity."""
        counts = Counter(edge_key(e) for e in edges)
        return cls(n, dict(counts))

    def __hash__(self):
        return hash((self.n, tuple(self.edges.items())))

    def __eq__(self, other):
        if not isinstance(other, MultiHypergraph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __repr__(self):
        body = ", ".join(
            f"{k}x{m}" if m > 1 else f"{k}" for k, m in self.edges.items()
        )
        return f"MultiHypergraph(n={self.n}, [{body}])"

    # -- counting ---------------------------------------------------------
    @property
    def e(self) -> int:
        return sum(self.edges.values())

    def e_size(self, size: int) -> int:
        return sum(m for k, m in self.edges.items() if len(k) == size)

    def edge_sizes(self) -> set[int]:
        return {len(k) for k in self.edges}

    def units(self) -> list[EdgeKey]:
        """Edges listed with repetition, in key order."""
        return [k for k, m in self.edges.items() for _ in range(m)]

    def is_simple(self) -> bool:
        return all(
            m == 1 and len(set(k)) == len(k) for k, m in self.edges.items()
        )

    def is_uniform(self, size: int | None = None) -> bool:
        sizes = self.edge_sizes()
        if size is None:
            return len(sizes) <= 1
        return sizes <= {size}

    def is_simple_graph(self) -> bool:
        """Simple and 2-uniform without loops."""
        return all(len(k) == 2 and k[0] != k[1] and m == 1 for k, m in self.edges.items())

    def is_two_uniform(self) -> bool:
        return all(len(k) == 2 for k in self.edges)

    def max_multiplicity(self) -> int:
        return max(self.edges.values(), default=0)

    def support(self) -> MultiHypergraph:
        return MultiHypergraph(self.n, {k: 1 for k in self.edges})

    def degree(self, v: int) -> int:
        return sum(m * k.count(v) for k, m in self.edges.items())

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for k, m in self.edges.items():
            for v in k:
                deg[v] += m
        return deg

    def isolated_vertices(self) -> list[int]:
        used = self.used_vertices()
        return [v for v in range(self.n) if not used >> v & 1]

    def used_vertices(self) -> int:
        bits = 0
        for k in self.edges:
            for v in k:
                bits |= 1 << v
        return bits

    def has_isolated_vertices(self) -> bool:
        return self.used_vertices() != (1 << self.n) - 1

    def neighbours(self) -> list[int]:
        """Bitmask of vertices sharing an edge with each vertex (self excluded)."""
        nb = [0] * self.n
        for k in self.edges:
            bits = 0
            for v in k:
                bits |= 1 << v
            for v in set(k):
                nb[v] |= bits & ~(1 << v)
        return nb

    def adjacency(self) -> list[int]:
        """Bitmask adjacency of the underlying simple 2-uniform graph."""
        adj = [0] * self.n
        for k in self.edges:
            if len(k) == 2 and k[0] != k[1]:
                u, v = k
                adj[u] |= 1 << v
                adj[v] |= 1 << u
        return adj

    # -- building ---------------------------------------------------------
    def with_edge(self, key: Iterable[int], mult: int = 1) -> MultiHypergraph:
        k = edge_key(key)
        n = max(self.n, k[-1] + 1)
        edges = dict(self.edges)
        edges[k] = edges.get(k, 0) + mult
        if edges[k] < 0:
            raise GraphError(f"edge {k} multiplicity would become negative")
        return MultiHypergraph(n, edges)

    def without_edge(self, key: EdgeKey, mult: int = 1) -> MultiHypergraph:
        return self.with_edge(key, -mult)

    def sub(self, edges: Mapping[EdgeKey, int]) -> MultiHypergraph:
        """Sub-multigraph on the same vertex set; multiplicities must not exceed ours."""
        for k, m in edges.items():
            if m > self.edges.get(k, 0):
                raise GraphError(f"edge {k} x{m} is not in the host")
        return MultiHypergraph(self.n, edges)

    def is_subgraph_of(self, other: MultiHypergraph) -> bool:
        """Labelled inclusion: same-labelled edges with no larger multiplicity."""
        return self.n <= other.n and all(
            m <= other.edges.get(k, 0) for k, m in self.edges.items()
        )

    def relabel(self, perm: list[int], n: int | None = None) -> MultiHypergraph:
        n = self.n if n is None else n
        return MultiHypergraph(
            n, Counter({edge_key(perm[v] for v in k): m for k, m in self.edges.items()})
        )

    def drop_isolated(self) -> MultiHypergraph:
        used = self.used_vertices()
        if used == (1 << self.n) - 1:
            return self
        new = {}
        for v in range(self.n):
            if used >> v & 1:
                new[v] = len(new)
        return MultiHypergraph(
            len(new), {tuple(new[v] for v in k): m for k, m in self.edges.items()}
        )

    def disjoint_union(self, other: MultiHypergraph) -> MultiHypergraph:
        edges = dict(self.edges)
        for k, m in other.edges.items():
            edges[tuple(v + self.n for v in k)] = m
        return MultiHypergraph(self.n + other.n, edges)

    def components(self) -> list[list[int]]:
        """Connected components (via any edge), isolated vertices as singletons."""
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for k in self.edges:
            r = find(k[0])
            for v in k[1:]:
                s = find(v)
                if s != r:
                    parent[s] = r
        groups: dict[int, list[int]] = {}
        for v in range(self.n):
            groups.setdefault(find(v), []).append(v)
        return sorted(groups.values())

    def is_connected(self) -> bool:
        """Connected after discarding isolated vertices (the empty graph counts)."""
        return len(self.drop_isolated().components()) <= 1


def contract(G: MultiHypergraph, I: VertexSet | Iterable[int]) -> MultiHypergraph:
    """Merge the vertices of ``I`` into one new vertex ``z``.

    Surviving vertices keep their relative order and ``z`` gets the last index.
    Edge count is preserved; an edge inside ``I`` becomes a loop ``(z, z)``.
    """
    members = sorted(set(I))
    if not members:
        raise GraphError("cannot contract an empty vertex set")
    if members[0] < 0 or members[-1] >= G.n:
        raise GraphError(f"contraction set {members} not within 0..{G.n - 1}")
    inside = set(members)
    mapping = {}
    for v in range(G.n):
        if v not in inside:
            mapping[v] = len(mapping)
    z = len(mapping)
    for v in members:
        mapping[v] = z
    edges: Counter = Counter()
    for k, m in G.edges.items():
        edges[edge_key(mapping[v] for v in k)] += m
    return MultiHypergraph(z + 1, dict(edges))


SIMPLIFY_KINDS = ("underlying_simple", "component_closure", "distance_closure")


def simplify(G: MultiHypergraph, kind: str, t: int | None = None) -> MultiHypergraph:
    """Containment-preserving map to a simple graph on the same vertex set."""
    if not G.is_two_uniform():
        raise GraphError("simplification needs a 2-uniform graph")
    adj = G.adjacency()
    if kind == "underlying_simple":
        edges = {(u, v): 1 for (u, v) in G.edges if u != v}
    elif kind == "component_closure":
        edges = {}
        for comp in G.components():
            for i, u in enumerate(comp):
                for v in comp[i + 1:]:
                    edges[(u, v)] = 1
    elif kind == "distance_closure":
        if t is None or t < 1:
            raise GraphError("distance_closure needs t >= 1")
        edges = {}
        for s in range(G.n):
            seen = 1 << s
            frontier = 1 << s
            for _ in range(t):
                nxt = 0
                f = frontier
                while f:
                    low = f & -f
                    nxt |= adj[low.bit_length() - 1]
                    f ^= low
                frontier = nxt & ~seen
                seen |= nxt
                if not frontier:
                    break
            for v in range(s + 1, G.n):
                if seen >> v & 1:
                    edges[(s, v)] = 1
    else:
        raise GraphError(f"unknown simplification {kind!r}; expected one of {SIMPLIFY_KINDS}")
    return MultiHypergraph(G.n, edges)


def is_sunflower(H: MultiHypergraph) -> VertexSet | None:
    """Return the common pairwise intersection of all edges, or ``None``.

    A single edge (with multiplicity one) is its own core.  Parallel copies of
    an edge are only allowed when they are the whole graph, in which case the
    core is that edge.
    """
    keys = list(H.edges)
    if not keys:
        return None
    if len(keys) == 1:
        return VertexSet.of(H.n, keys[0])
    if any(m > 1 for m in H.edges.values()):
        return None
    sets = [set(k) for k in keys]
    core = sets[0] & sets[1]
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            if sets[i] & sets[j] != core:
                return None
    return VertexSet.of(H.n, core)
