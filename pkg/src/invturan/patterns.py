"""Forbidden families with containment predicates.

Every pattern answers two questions about a host: does it contain a member
(``contains``), and, when the host was member-free before some copies of one
edge were added, did those copies create a member (``creates``).  The second
is what the branch-and-bound and the host enumeration call in their inner
loops.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from .graphs import (
    GraphError,
    HostView,
    Matcher,
    MultiHypergraph,
    clique,
    dumbbell,
    load_graph,
    parse_graph_literal,
    path,
)


class PatternError(ValueError):
    pass


def _adjacency(view: HostView) -> list[int]:
    adj = [0] * view.n
    for k in view.edges:
        if len(k) == 2 and k[0] != k[1]:
            u, v = k
            adj[u] |= 1 << v
            adj[v] |= 1 << u
    return adj


def _reach(adj: list[int], s: int) -> int:
    seen = frontier = 1 << s
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= adj[low.bit_length() - 1]
            f ^= low
        frontier = nxt & ~seen
        seen |= nxt
    return seen


def has_clique(cand: int, size: int, adj: list[int]) -> bool:
    """Is there a clique of ``size`` vertices inside the bitmask ``cand``?"""
    if size <= 0:
        return True
    if bin(cand).count("1") < size:
        return False
    while cand:
        low = cand & -cand
        cand ^= low
        v = low.bit_length() - 1
        if has_clique(cand & adj[v], size - 1, adj):
            return True
    return False


def _blocks_have_even_cycle(adj: list[int]) -> bool:
    """Some biconnected block is neither a bridge nor an odd cycle."""
    n = len(adj)
    disc = [-1] * n
    low = [0] * n
    counter = 0
    stack: list[tuple[int, int]] = []

    def block_bad(edges: list[tuple[int, int]]) -> bool:
        if len(edges) == 1:
            return False
        verts = {x for e in edges for x in e}
        return not (len(edges) == len(verts) and len(edges) % 2 == 1)

    for root in range(n):
        if disc[root] != -1 or not adj[root]:
            continue
        disc[root] = low[root] = counter
        counter += 1
        it = [(root, -1, adj[root])]
        while it:
            v, parent, rest = it[-1]
            if rest:
                lowbit = rest & -rest
                it[-1] = (v, parent, rest ^ lowbit)
                w = lowbit.bit_length() - 1
                if disc[w] == -1:
                    stack.append((v, w))
                    disc[w] = low[w] = counter
                    counter += 1
                    it.append((w, v, adj[w]))
                elif w != parent and disc[w] < disc[v]:
                    stack.append((v, w))
                    low[v] = min(low[v], disc[w])
                continue
            it.pop()
            if parent == -1:
                continue
            low[parent] = min(low[parent], low[v])
            if low[v] >= disc[parent]:
                block = []
                while True:
                    e = stack.pop()
                    block.append(e)
                    if e == (parent, v):
                        break
                if block_bad(block):
                    return True
    return False


def _bipartite(adj: list[int]) -> bool:
    n = len(adj)
    side = [-1] * n
    for s in range(n):
        if side[s] != -1:
            continue
        side[s] = 0
        queue = [s]
        while queue:
            v = queue.pop()
            b = adj[v]
            while b:
                lowbit = b & -b
                b ^= lowbit
                w = lowbit.bit_length() - 1
                if side[w] == -1:
                    side[w] = side[v] ^ 1
                    queue.append(w)
                elif side[w] == side[v]:
                    return False
    return True


@dataclass(frozen=True)
class Characterization:
    """Structure of the member-free graphs, used to pick a closed-form solver."""

    kind: str
    components: tuple[str, ...]


class Pattern:
    """Base class; subclasses are immutable."""

    tag = "pattern"
    support_determined = True

    def literal(self) -> str:
        raise NotImplementedError

    def members(self) -> list[MultiHypergraph] | None:
        """The explicit member list, or ``None`` for infinite families."""
        return None

    def edge_sizes(self) -> frozenset[int]:
        mem = self.members()
        if mem is None:
            return frozenset({2})
        return frozenset(len(k) for H in mem for k in H.edges)

    def relevant(self, key) -> bool:
        """Can an edge with this key be the image of a member's edge?

        Irrelevant edges can always be kept by a member-free subgraph.
        """
        mem = self.members()
        if mem is None:
            return _simple_edge(key)
        shape = _shape(key)
        return any(_shape(h) == shape for H in mem for h in H.edges)

    def contains_view(self, view: HostView) -> bool:
        raise NotImplementedError

    def contains(self, F: MultiHypergraph) -> bool:
        return self.contains_view(HostView.of(F))

    def creates(self, view: HostView, key, old: int, new: int) -> bool:
        """``view`` holds ``new`` copies of ``key`` and was member-free with ``old``."""
        return self.contains_view(view)

    def __str__(self):
        return self.literal()


def _simple_edge(key) -> bool:
    return len(key) == 2 and key[0] != key[1]


def _shape(key) -> tuple[int, ...]:
    """Vertex repetition profile of an edge; injective maps preserve it."""
    counts: dict[int, int] = {}
    for v in key:
        counts[v] = counts.get(v, 0) + 1
    return tuple(sorted(counts.values()))


@dataclass(frozen=True)
class AllCycles(Pattern):
    """Cycles of length at least 3; parallel edges and loops are not cycles."""

    tag = "cycles"

    def literal(self):
        return "cycles"

    def contains_view(self, view):
        adj = _adjacency(view)
        parent = list(range(view.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for k in view.edges:
            if _simple_edge(k):
                a, b = find(k[0]), find(k[1])
                if a == b:
                    return True
                parent[a] = b
        return False

    def creates(self, view, key, old, new):
        if old or not _simple_edge(key):
            return False
        u, v = key
        adj = _adjacency(view)
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
        return bool(_reach(adj, u) >> v & 1)


@dataclass(frozen=True)
class EvenCycles(Pattern):
    """Even cycles of length at least 4."""

    tag = "even-cycles"

    def literal(self):
        return "even-cycles"

    def contains_view(self, view):
        return _blocks_have_even_cycle(_adjacency(view))

    def creates(self, view, key, old, new):
        if old or not _simple_edge(key):
            return False
        return self.contains_view(view)


@dataclass(frozen=True)
class OddCycles(Pattern):
    tag = "odd-cycles"

    def literal(self):
        return "odd-cycles"

    def contains_view(self, view):
        return not _bipartite(_adjacency(view))

    def creates(self, view, key, old, new):
        if old or not _simple_edge(key):
            return False
        return self.contains_view(view)


@dataclass(frozen=True)
class Clique(Pattern):
    t: int

    tag = "clique"

    def __post_init__(self):
        if self.t < 2:
            raise PatternError("clique patterns need t >= 2")

    def literal(self):
        return f"K{self.t}"

    def members(self):
        return [clique(self.t)]

    def contains_view(self, view):
        adj = _adjacency(view)
        return has_clique((1 << view.n) - 1, self.t, adj)

    def creates(self, view, key, old, new):
        if old or not _simple_edge(key):
            return False
        u, v = key
        adj = _adjacency(view)
        return has_clique(adj[u] & adj[v], self.t - 2, adj)


@dataclass(frozen=True)
class Dumbbell(Pattern):
    """One r-edge with a 1-uniform loop at each of its vertices."""

    r: int = 2

    tag = "dumbbell"

    def __post_init__(self):
        if self.r < 2:
            raise PatternError("dumbbell patterns need r >= 2")

    def literal(self):
        return f"dumbbell{self.r}"

    def members(self):
        return [dumbbell(self.r)]

    def _full_edges(self, view, looped: int):
        for k in view.edges:
            if len(k) == self.r and len(set(k)) == self.r and all(looped >> v & 1 for v in k):
                yield k

    def contains_view(self, view):
        looped = 0
        for k in view.edges:
            if len(k) == 1:
                looped |= 1 << k[0]
        return next(self._full_edges(view, looped), None) is not None

    def creates(self, view, key, old, new):
        if old:
            return False
        if len(key) == 1:
            looped = 0
            for k in view.edges:
                if len(k) == 1:
                    looped |= 1 << k[0]
            return any(key[0] in k for k in self._full_edges(view, looped))
        if len(key) == self.r and len(set(key)) == self.r:
            return all(view.edges.get((v,), 0) for v in key)
        return False


@dataclass(frozen=True)
class OneUniform(Pattern):
    """The 1-uniform graph with loop multiplicities d_1 >= ... >= d_t."""

    d: tuple[int, ...]

    tag = "oneuniform"
    support_determined = False

    def __post_init__(self):
        d = tuple(self.d)
        if not d or any(x < 1 for x in d):
            raise PatternError("one-uniform patterns need positive degrees")
        object.__setattr__(self, "d", tuple(sorted(d, reverse=True)))

    def literal(self):
        return "oneuniform:" + ",".join(map(str, self.d))

    def members(self):
        return [MultiHypergraph(len(self.d), {(i,): x for i, x in enumerate(self.d)})]

    def contains_view(self, view):
        loops = sorted((m for k, m in view.edges.items() if len(k) == 1), reverse=True)
        if len(loops) < len(self.d):
            return False
        return all(x >= d for x, d in zip(loops, self.d))

    def creates(self, view, key, old, new):
        if len(key) != 1:
            return False
        return self.contains_view(view)


@dataclass(frozen=True)
class Finite(Pattern):
    """An explicit finite family, optionally carrying a named tag."""

    graphs: tuple[MultiHypergraph, ...]
    name: str | None = None
    _matchers: tuple = field(default=(), compare=False, repr=False, hash=False)

    def __post_init__(self):
        graphs = tuple(self.graphs)
        if not graphs:
            raise PatternError("a finite family needs at least one member")
        for H in graphs:
            if H.e == 0:
                raise PatternError("family members must have at least one edge")
        object.__setattr__(self, "graphs", graphs)
        object.__setattr__(self, "_matchers", tuple(Matcher(H) for H in graphs))

    @property
    def tag(self):
        return self.name or "finite"

    @property
    def support_determined(self):
        return all(H.max_multiplicity() == 1 for H in self.graphs)

    def literal(self):
        if self.name:
            return self.name
        return "family:" + ";".join(
            ",".join(f"{'-'.join(map(str, k))}x{m}" for k, m in H.edges.items())
            for H in self.graphs
        )

    def members(self):
        return list(self.graphs)

    def contains_view(self, view):
        return any(m.find(view) is not None for m in self._matchers)

    def creates(self, view, key, old, new):
        return any(m.find_anchored(view, key, old, new) is not None for m in self._matchers)


def Path(t: int) -> Finite:
    """The path with ``t`` edges."""
    if t < 1:
        raise PatternError("paths need t >= 1")
    return Finite((path(t),), name=f"P{t}")


def StarUnionEdge() -> Finite:
    """P_1 ∪ P_2: an edge disjoint from a path with two edges."""
    return Finite((parse_graph_literal("P1+P2"),), name="P1uP2")


def P3K3() -> Finite:
    return Finite((path(3), clique(3)), name="P3K3")


def path_length(P: Pattern) -> int | None:
    if isinstance(P, Finite) and P.name and P.name[0] == "P" and P.name[1:].isdigit():
        return int(P.name[1:])
    return None


def family_contains(P: Pattern, F: MultiHypergraph) -> bool:
    return P.contains(F)


def free_characterization(P: Pattern) -> Characterization | None:
    if isinstance(P, Finite) and P.name == "P1uP2":
        return Characterization("p1p2", ("matching", "star", "subgraph of K4"))
    if isinstance(P, Finite) and P.name == "P3K3":
        return Characterization("p3k3", ("stars",))
    if isinstance(P, Finite) and P.name == "P3":
        return Characterization("p3", ("triangles", "stars"))
    if isinstance(P, Finite) and P.name == "P2":
        return Characterization("p2", ("single edges",))
    if isinstance(P, AllCycles):
        return Characterization("cycles", ("trees",))
    if isinstance(P, OneUniform):
        return Characterization("oneuniform", ("loops capped beyond the t'-1 largest",))
    return None


def _load_member(spec: str) -> MultiHypergraph:
    try:
        return load_graph(spec)
    except (GraphError, OSError) as exc:
        raise PatternError(f"cannot read pattern graph {spec!r}: {exc}") from None


def parse_pattern(text: str) -> Pattern:
    s = text.strip()
    low = s.lower()
    if low == "cycles":
        return AllCycles()
    if low == "even-cycles":
        return EvenCycles()
    if low == "odd-cycles":
        return OddCycles()
    if low == "p1up2":
        return StarUnionEdge()
    if low == "p3k3":
        return P3K3()
    if low.startswith("dumbbell"):
        rest = low[len("dumbbell"):]
        return Dumbbell(int(rest) if rest else 2)
    if low.startswith("oneuniform:"):
        try:
            return OneUniform(tuple(int(x) for x in s.split(":", 1)[1].split(",")))
        except ValueError:
            raise PatternError(f"bad degree sequence in {text!r}") from None
    if low.startswith("file:"):
        return Finite((_load_member(s[5:]),))
    if low.startswith("family:"):
        parts = [p for p in s[7:].split(",") if p]
        # K3,3 style literals contain commas: glue a numeric piece onto its predecessor
        items: list[str] = []
        for p in parts:
            if items and p.isdigit() and not os.path.exists(p):
                items[-1] += "," + p
            else:
                items.append(p)
        members = [_load_member(p) for p in items]
        return Finite(tuple(members))
    if s[:1] in "Kk" and s[1:].isdigit():
        return Clique(int(s[1:]))
    if s[:1] in "Pp" and s[1:].isdigit():
        return Path(int(s[1:]))
    try:
        return Finite((load_graph(s),), s)
    except (GraphError, OSError):
        pass
    raise PatternError(
        f"unknown pattern {text!r}; expected cycles, even-cycles, odd-cycles, K<t>, P<t>, "
        "P1uP2, P3K3, dumbbell<r>, oneuniform:<d1,...>, file:<path>, family:<p1,p2,...> or a graph literal"
    )

