"""Exact ex(G, P) by branch-and-bound over parallel classes."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from ..graphs import HostView, MultiHypergraph
from ..patterns import Pattern


@dataclass(frozen=True)
class Budget:
    max_nodes: int | None = None
    max_seconds: float | None = None

    def deadline(self) -> float | None:
        return None if self.max_seconds is None else time.monotonic() + self.max_seconds


UNLIMITED = Budget()


@dataclass
class ExtremalResult:
    """ex value with a maximum member-free witness.

    When ``complete`` is false the search ran out of budget and ``value`` is
    only a certified lower bound.
    """

    value: int
    witness: MultiHypergraph
    method: str
    nodes_explored: int = 0
    complete: bool = True
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "method": self.method,
            "complete": self.complete,
            "nodes": self.nodes_explored,
            "witness": {
                "n": self.witness.n,
                "edges": [[list(k), m] for k, m in self.witness.edges.items()],
            },
        }


class BudgetExhausted(Exception):
    pass


def relevant(P: Pattern, key) -> bool:
    """Can an edge with this key ever be the image of a member edge?"""
    return P.relevant(key)


def branch_and_bound(
    G: MultiHypergraph,
    P: Pattern,
    budget: Budget = UNLIMITED,
    *,
    seed: dict | None = None,
    stop_at: int | None = None,
    required=None,
    at_least: int | None = None,
    deadline: float | None = None,
) -> ExtremalResult:
    """Maximum member-free sub-multigraph of G.

    ``seed`` is a known member-free edge multiset used as the starting
    incumbent.  With ``stop_at`` the search returns as soon as it holds a
    witness of that size.  ``required`` names an edge key whose full
    multiplicity must be kept; the value is then -1 if no such subgraph is
    member-free.  ``at_least`` restricts the search to subgraphs with at
    least that many edges (value -1 if there are none), which turns the call
    into the decision "is ex(G, P) >= at_least?".
    """
    free_edges = {}
    classes = []
    for k, m in G.edges.items():
        if k == required or relevant(P, k):
            classes.append((k, m))
        else:
            free_edges[k] = m
    base = sum(free_edges.values())
    classes.sort(key=lambda km: (km[0] != required, -km[1], km[0]))
    binary = P.support_determined
    suffix = [0] * (len(classes) + 1)
    for i in range(len(classes) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + classes[i][1]

    view = HostView(G.n)
    chosen = [0] * len(classes)
    best_val = -1
    best_choice: list[int] | None = None
    if seed is not None:
        seed_val = sum(m for k, m in seed.items() if k in G.edges and relevant(P, k))
        if required is None or seed.get(required, 0) == G.edges[required]:
            best_val = seed_val
            best_choice = [min(seed.get(k, 0), m) for k, m in classes]
    if at_least is not None and best_val < at_least - base - 1:
        best_val = at_least - base - 1
        best_choice = None
    target = None if stop_at is None else stop_at - base
    nodes = 0
    max_nodes = budget.max_nodes
    own = budget.deadline()
    if deadline is None or (own is not None and own < deadline):
        deadline = own

    def rec(i: int, kept: int) -> bool:
        nonlocal best_val, best_choice, nodes
        nodes += 1
        if max_nodes is not None and nodes > max_nodes:
            raise BudgetExhausted
        if deadline is not None and nodes & 1023 == 0 and time.monotonic() > deadline:
            raise BudgetExhausted
        if i == len(classes):
            if kept > best_val:
                best_val = kept
                best_choice = list(chosen)
            return target is not None and best_val >= target
        if kept + suffix[i] <= best_val:
            return False
        k, m = classes[i]
        if binary:
            options = (m, 0)
        else:
            options = range(m, -1, -1)
        for c in options:
            if i == 0 and required is not None and c != m:
                break
            if kept + c + suffix[i + 1] <= best_val:
                break
            if c:
                view.add(k, c)
                if P.creates(view, k, 0, c):
                    view.remove(k, c)
                    continue
            chosen[i] = c
            stop = rec(i + 1, kept + c)
            if c:
                view.remove(k, c)
            chosen[i] = 0
            if stop:
                return True
        return False

    complete = True
    try:
        if target is not None and best_val >= target:
            pass
        else:
            rec(0, 0)
    except BudgetExhausted:
        complete = False
    if best_choice is None:
        return ExtremalResult(-1, MultiHypergraph(G.n), "generic", nodes, complete)
    witness = dict(free_edges)
    for (k, _), c in zip(classes, best_choice):
        if c:
            witness[k] = c
    return ExtremalResult(base + best_val, MultiHypergraph(G.n, witness), "generic", nodes, complete)
