"""Inverse Turán numbers by isomorph-free enumeration of host graphs.

Hosts are grown one edge unit (one copy of one edge) at a time by canonical
augmentation: a child C = P + e is accepted only when P is isomorphic to C
minus its canonical deletion unit, and the children of one parent are
deduplicated by canonical form.  Every isomorphism class is then reached
exactly once, and a host with ex(G, P) >= k is never expanded because adding
edges never lowers ex.
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import comb, factorial

from .extremal import Budget, UNLIMITED, ex_exact
from .extremal.solver import BudgetExhausted, branch_and_bound
from .graphs import MultiHypergraph, canonical_form, canonical_labeling, is_sunflower, simplify
from .graphs.core import SIMPLIFY_KINDS
from .patterns import AllCycles, Clique, Dumbbell, EvenCycles, OddCycles, OneUniform, Pattern

COMPRESSIONS = ("component_closure", "underlying_simple")


@dataclass(frozen=True)
class SearchSpace:
    """Which hosts are enumerated.

    ``edge_sizes`` defaults to the sizes the pattern uses.  Hosts never have
    isolated vertices during the search; with ``require_no_isolated`` off the
    reported hosts are additionally padded with isolated vertices up to
    ``n_max`` (isolated vertices change neither e nor ex).
    """

    simple_only: bool = True
    n_max: int = 8
    m_max: int = 12
    mult_max: int = 1
    compression: str | None = None
    require_no_isolated: bool = True
    edge_sizes: frozenset[int] | None = None

    def __post_init__(self):
        if self.n_max < 1 or self.m_max < 1 or self.mult_max < 1:
            raise ValueError("search caps must be positive")
        if self.simple_only and self.mult_max != 1:
            raise ValueError("simple-host search needs mult_max = 1")
        if self.compression is not None and self.compression not in COMPRESSIONS:
            raise ValueError(f"unknown compression {self.compression!r}; expected one of {COMPRESSIONS}")
        if self.edge_sizes is not None:
            object.__setattr__(self, "edge_sizes", frozenset(self.edge_sizes))


@dataclass
class InverseResult:
    pattern: str
    k: int
    status: str
    best_value: int | None
    hosts: list[MultiHypergraph] = field(default_factory=list)
    stats: dict = field(default_factory=dict)
    core_size: int | None = None

    def host_forms(self) -> list[str]:
        return [canonical_form(G).hex() for G in self.hosts]

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "pattern": self.pattern,
            "k": self.k,
            "status": self.status,
            "best_value": self.best_value,
            "hosts": [
                {
                    "canonical": canonical_form(G).hex(),
                    "n": G.n,
                    "edges": [[list(k), m] for k, m in G.edges.items()],
                }
                for G in self.hosts
            ],
            "nodes": self.stats.get("nodes", 0),
        }
        if self.core_size is not None:
            out["core_size"] = self.core_size
        if "caps_binding" in self.stats:
            out["caps_binding"] = self.stats["caps_binding"]
        if timing:
            # ex_calls depends on how the tree was split between workers
            out["ex_calls"] = self.stats.get("ex_calls", 0)
            out["seconds"] = round(self.stats.get("seconds", 0.0), 3)
        return out


# -- finiteness -----------------------------------------------------------

@dataclass(frozen=True)
class Verdict:
    """``infinite_from`` is the least k with E(k) = ∞ (``None`` if always finite)."""

    infinite_from: int | None
    core_size: int | None
    reason: str
    cap_rule: str | None = None

    def infinite_at(self, k: int) -> bool:
        return self.infinite_from is not None and k >= self.infinite_from

    def cap(self, k: int, simple: bool = False) -> int | None:
        """An upper bound on E(k) (E*(k) unless ``simple``) when finite at k."""
        if self.infinite_at(k) or self.cap_rule is None:
            return None
        kind, _, arg = self.cap_rule.partition(":")
        if kind == "uniform":
            caps = []
            for part in arg.split(","):
                r, _, nonuni = part.partition("/")
                r = int(r)
                if nonuni:
                    caps.append(k - 1)
                else:
                    caps.append(factorial(r) * (k - 1) ** (r if simple else r + 1))
            return sum(caps)
        if kind == "forest":
            n = 2 * (k - 1)
            return comb(n, 2) * (1 if simple else max(k - 1, 1))
        if kind == "bipartite":
            return 2 * (k - 1)
        return None


def finiteness_check(P: Pattern) -> Verdict:
    """Sunflower test: E(k) is infinite for large k iff a uniform member is a sunflower.

    A sunflower member with m edges makes E(k) infinite for every k >= m
    (arbitrarily many petals on the same core keep ex at m-1).  Otherwise
    each edge size contributes a finite cap: the sunflower-lemma bound
    r!(k-1)^(r+1) (r!(k-1)^r for simple hosts) if the size carries uniform
    members, and k-1 if only non-uniform members use it.
    """
    if isinstance(P, (AllCycles, EvenCycles)):
        return Verdict(None, None, "a spanning forest is member-free, so n <= 2(k-1)", "forest")
    if isinstance(P, OddCycles):
        return Verdict(None, None, "every graph has a bipartite subgraph with half its edges", "bipartite")
    members = P.members()
    k0, core = None, None
    sizes: dict[int, bool] = {}
    for H in members:
        hs = H.edge_sizes()
        if len(hs) == 1:
            (r,) = hs
            sizes[r] = True
            S = is_sunflower(H)
            if S is not None and (k0 is None or H.e < k0):
                k0, core = H.e, len(S)
        else:
            for r in hs:
                sizes.setdefault(r, False)
    if k0 is not None:
        return Verdict(k0, core, f"a member is a sunflower with {k0} edges and core size {core}")
    rule = "uniform:" + ",".join(f"{r}" if uni else f"{r}/nonuniform" for r, uni in sorted(sizes.items()))
    if all(not u for u in sizes.values()):
        reason = "all members are non-uniform: each edge size holds fewer than k edges"
    else:
        reason = "no member is a sunflower"
    return Verdict(None, None, reason, rule)


# -- compression ----------------------------------------------------------

def compression_allowed(P: Pattern, kind: str) -> bool:
    """The image of every member under the simplification must be a clique."""
    if kind not in SIMPLIFY_KINDS:
        return False
    if isinstance(P, (AllCycles, EvenCycles, OddCycles)):
        return kind == "component_closure"
    members = P.members()
    if members is None:
        return False
    for H in members:
        if not H.is_two_uniform() or any(k[0] == k[1] for k in H.edges):
            return False
        H = H.drop_isolated()
        f = simplify(H, kind)
        if f.e != comb(H.n, 2):
            return False
    return True


# -- enumeration ----------------------------------------------------------

@dataclass
class _Node:
    graph: MultiHypergraph
    form: bytes
    ub: int
    witness: dict


class _Search:
    def __init__(
        self, P: Pattern, k: int, space: SearchSpace, deadline: float | None, max_nodes: int | None, accept=None
    ):
        self.P = P
        self.accept = accept
        self.k = k
        self.space = space
        self.deadline = deadline
        self.max_nodes = max_nodes
        sizes = space.edge_sizes if space.edge_sizes is not None else P.edge_sizes()
        self.sizes = sorted(sizes)
        mult = space.mult_max
        members = P.members()
        if P.support_determined and (members is None or all(len(H.edges) >= 2 for H in members)):
            # a single parallel class is member-free, so it holds at most k-1 copies
            mult = min(mult, max(k - 1, 1))
        self.mult_max = mult
        self.best = -1
        self.hosts: dict[bytes, MultiHypergraph] = {}
        self.nodes = 0
        self.ex_calls = 0
        self.caps_binding = False

    # bookkeeping
    def _visit(self, node: _Node) -> None:
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise BudgetExhausted
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise BudgetExhausted
        e = node.graph.e
        if e > self.best:
            self.best = e
            self.hosts = {}
        if e == self.best:
            self.hosts[node.form] = node.graph

    def _ex_at_least_k(self, C: MultiHypergraph, key) -> bool:
        """Given ex(C - one copy of key) < k, decide ex(C) >= k."""
        self.ex_calls += 1
        res = branch_and_bound(C, self.P, required=key, at_least=self.k, stop_at=self.k, deadline=self.deadline)
        if not res.complete:
            raise BudgetExhausted
        return res.value >= self.k

    def roots(self) -> list[_Node]:
        empty = MultiHypergraph(0)
        out = [_Node(empty, canonical_form(empty), 0, {})]
        if self.space.compression == "underlying_simple":
            for n in range(2, self.space.n_max + 1):
                K = MultiHypergraph(n, {(u, v): 1 for u in range(n) for v in range(u + 1, n)})
                res = ex_exact(K, self.P)
                if res.value >= self.k:
                    break
                if K.e > self.space.m_max:
                    self.caps_binding = True
                    break
                out.append(_Node(K, canonical_form(K), res.value, dict(res.witness.edges)))
        return out

    def _admissible(self, C: MultiHypergraph) -> list:
        comp = self.space.compression
        if comp == "underlying_simple":
            return [key for key, m in C.edges.items() if m >= 2]
        if comp == "component_closure":
            out = []
            for key, m in C.edges.items():
                if m >= 2 or C.without_edge(key).is_connected():
                    out.append(key)
            return out
        return list(C.edges)

    def _candidates(self, G: MultiHypergraph):
        n = G.n
        sp = self.space
        comp = sp.compression
        for s in self.sizes:
            if comp == "underlying_simple":
                for key, m in G.edges.items():
                    if len(key) == s and m < self.mult_max:
                        yield key, 0
                continue
            for j in range(0, s + 1):
                if n == 0 and j != s:
                    continue
                if comp == "component_closure" and n > 0 and j == s:
                    continue
                new = tuple(range(n, n + j))
                for old in combinations(range(n), s - j):
                    key = old + new
                    if G.edges.get(key, 0) >= self.mult_max:
                        continue
                    yield key, j

    def children(self, node: _Node) -> list[_Node]:
        G = node.graph
        sp = self.space
        seen: set[bytes] = set()
        out: list[_Node] = []
        for key, j in self._candidates(G):
            C = G.with_edge(key)
            over_cap = C.e > sp.m_max or C.n > sp.n_max
            if over_cap:
                if not self.caps_binding and (node.ub + 1 < self.k or not self._ex_at_least_k(C, key)):
                    self.caps_binding = True
                continue
            degs = C.degrees()

            def inv(a):
                return (len(a), C.edges[a], tuple(sorted(degs[v] for v in a)))

            if self.accept is not None and not self.accept(C):
                continue
            adm = self._admissible(C)
            if key not in adm:
                continue
            invs = {a: inv(a) for a in adm}
            top = max(invs.values())
            if invs[key] != top:
                continue
            form, perm = canonical_labeling(C)
            if form in seen:
                continue
            ties = [a for a in adm if invs[a] == top]
            if len(ties) > 1:
                star = max(ties, key=lambda a: tuple(sorted(perm[v] for v in a)))
                if star != key:
                    parent = C.without_edge(star).drop_isolated()
                    if canonical_form(parent) != node.form:
                        continue
            seen.add(form)
            ub = node.ub + 1
            if ub >= self.k:
                if self._ex_at_least_k(C, key):
                    continue
                ub = self.k - 1
            canon = C.relabel(perm)
            wit = MultiHypergraph(C.n, node.witness).relabel(perm).edges if node.witness else {}
            out.append(_Node(canon, form, ub, dict(wit)))
        out.sort(key=lambda nd: nd.form)
        return out

    def dfs(self, node: _Node) -> None:
        self._visit(node)
        for child in self.children(node):
            self.dfs(child)

    def summary(self) -> dict:
        return {
            "best": self.best,
            "hosts": self.hosts,
            "nodes": self.nodes,
            "ex_calls": self.ex_calls,
            "caps_binding": self.caps_binding,
        }


def _subtree(args) -> dict:
    P, k, space, deadline, max_nodes, node = args
    s = _Search(P, k, space, deadline, max_nodes)
    try:
        s.dfs(node)
        done = True
    except BudgetExhausted:
        done = False
    out = s.summary()
    out["complete"] = done
    return out


def _merge(parts: list[dict]) -> dict:
    best = max((p["best"] for p in parts), default=-1)
    hosts: dict[bytes, MultiHypergraph] = {}
    for p in parts:
        if p["best"] == best:
            hosts.update(p["hosts"])
    return {
        "best": best,
        "hosts": hosts,
        "nodes": sum(p["nodes"] for p in parts),
        "ex_calls": sum(p["ex_calls"] for p in parts),
        "caps_binding": any(p["caps_binding"] for p in parts),
        "complete": all(p.get("complete", True) for p in parts),
    }


def default_threads() -> int:
    return os.cpu_count() or 1


def inverse_search(
    P: Pattern,
    k: int,
    space: SearchSpace,
    budget: Budget = UNLIMITED,
    threads: int = 1,
) -> InverseResult:
    """E_P(k) (or E*_P(k)) over the hosts allowed by ``space``.

    ``status`` is ``exact-within-caps`` when the enumeration finished; the
    ``caps_binding`` statistic then says whether some host with ex < k was cut
    off by ``n_max``/``m_max`` (if not, the value holds without caps for the
    chosen host class).
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if space.compression is not None and not compression_allowed(P, space.compression):
        raise ValueError(f"compression {space.compression!r} is not sound for pattern {P.literal()}")
    start = time.monotonic()
    verdict = finiteness_check(P)
    if verdict.infinite_at(k):
        return InverseResult(
            P.literal(), k, "infinite", None, [],
            {"nodes": 0, "seconds": time.monotonic() - start, "reason": verdict.reason},
            core_size=verdict.core_size,
        )
    deadline = budget.deadline()
    search = _Search(P, k, space, deadline, budget.max_nodes)
    parts: list[dict] = []
    try:
        roots = search.roots()
        if threads <= 1:
            for r in roots:
                search.dfs(r)
            parts.append(dict(search.summary(), complete=True))
        else:
            frontier = list(roots)
            depth = 0
            while frontier and len(frontier) < 4 * threads and depth < 4:
                nxt = []
                for nd in frontier:
                    search._visit(nd)
                    nxt.extend(search.children(nd))
                frontier = nxt
                depth += 1
            parts.append(dict(search.summary(), complete=True))
            work = [(P, k, space, deadline, budget.max_nodes, nd) for nd in frontier]
            if work:
                with ProcessPoolExecutor(max_workers=threads) as pool:
                    parts.extend(pool.map(_subtree, work))
    except BudgetExhausted:
        parts.append(dict(search.summary(), complete=False))
    merged = _merge(parts)
    hosts = [merged["hosts"][f] for f in sorted(merged["hosts"])]
    if not space.require_no_isolated:
        padded = []
        for G in hosts:
            for n in range(G.n, max(G.n, space.n_max) + 1):
                padded.append(MultiHypergraph(n, G.edges))
        hosts = padded
    status = "exact-within-caps" if merged["complete"] else "budget-exhausted"
    if budget.max_nodes is not None and merged["nodes"] > budget.max_nodes:
        status = "budget-exhausted"
    stats = {
        "nodes": merged["nodes"],
        "ex_calls": merged["ex_calls"],
        "caps_binding": merged["caps_binding"],
        "seconds": time.monotonic() - start,
    }
    return InverseResult(P.literal(), k, status, merged["best"], hosts, stats)


class _Unconstrained(Pattern):
    """Forbids nothing; drives plain enumeration."""

    tag = "none"
    support_determined = False

    def literal(self):
        return "none"

    def contains_view(self, view):
        return False


def enumerate_hosts(space: SearchSpace, accept=None):
    """Yield one representative of every host class allowed by ``space``.

    ``accept`` must be closed under deleting an edge unit (as the space caps
    are); rejected hosts are not expanded.  The empty host comes first.
    """
    if space.edge_sizes is None:
        raise ValueError("enumeration needs explicit edge_sizes")
    search = _Search(_Unconstrained(), space.m_max + 2, space, None, None, accept)
    stack = search.roots()
    while stack:
        node = stack.pop()
        yield node.graph
        stack.extend(reversed(search.children(node)))


# -- verification without search -------------------------------------------

@dataclass
class HostReport:
    passed: bool
    e: int
    ex: int
    witness: MultiHypergraph
    method: str
    complete: bool = True

    def to_json(self) -> dict:
        return {
            "pass": self.passed,
            "e": self.e,
            "ex": self.ex,
            "method": self.method,
            "complete": self.complete,
            "witness": {"n": self.witness.n, "edges": [[list(k), m] for k, m in self.witness.edges.items()]},
        }


def verify_host(P: Pattern, k: int, G: MultiHypergraph, budget: Budget = UNLIMITED) -> HostReport:
    """Check ex(G, P) < k exactly and report e(G) with a maximum free witness."""
    res = ex_exact(G, P, budget)
    passed = res.complete and res.value < k
    return HostReport(passed, G.e, res.value, res.witness, res.method, res.complete)


def compressed(G: MultiHypergraph, kind: str) -> bool:
    """Is the simplification image of G (isolated vertices dropped) complete?"""
    H = G.drop_isolated()
    return simplify(H, kind).e == math.comb(H.n, 2)
