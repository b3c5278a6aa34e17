"""Exact ex(G, P): dispatch between closed-form paths and branch-and-bound."""

from __future__ import annotations

from ..graphs import MultiHypergraph
from ..patterns import AllCycles, Dumbbell, OneUniform, Pattern, free_characterization
from .bounds import (
    averaging_bound,
    fractional_cover_number,
    genupper_exponent,
    pi_n,
    turan_graph,
    turan_graph_size,
)
from .fast import (
    LOOP_SUBSET_GUARD,
    ex_cycles,
    ex_dumbbell,
    ex_oneuniform,
    ex_oneuniform_graph,
    ex_p1p2,
    ex_p2,
    ex_p3,
    ex_p3k3,
    oneuniform_value,
)
from .matching import matching_number, maximum_matching, minimum_dominating_set
from .solver import UNLIMITED, Budget, ExtremalResult, branch_and_bound

_SIMPLE_FAST = {"p1p2": ex_p1p2, "p2": ex_p2, "p3": ex_p3, "p3k3": ex_p3k3}


def fast_path(G: MultiHypergraph, P: Pattern):
    """The closed-form solver that applies to (G, P), or ``None``."""
    char = free_characterization(P)
    if char is not None and char.kind in _SIMPLE_FAST and G.is_simple_graph():
        return _SIMPLE_FAST[char.kind]
    if isinstance(P, AllCycles) and all(len(k) == 2 and k[0] != k[1] for k in G.edges):
        return ex_cycles
    if isinstance(P, OneUniform):
        return lambda G: ex_oneuniform_graph(G, P.d)
    if isinstance(P, Dumbbell):
        looped = sum(1 for k in G.edges if len(k) == 1)
        if looped <= LOOP_SUBSET_GUARD:
            return lambda G: ex_dumbbell(G, P.r)
    return None


def ex_exact(
    G: MultiHypergraph, P: Pattern, budget: Budget = UNLIMITED, *, fast: bool = True
) -> ExtremalResult:
    """Exact ex(G, P) with a witness.

    ``fast=False`` forces the generic branch-and-bound, which is what the
    closed forms are tested against.
    """
    if fast:
        solver = fast_path(G, P)
        if solver is not None:
            return solver(G)
    return branch_and_bound(G, P, budget)


__all__ = [
    "Budget",
    "ExtremalResult",
    "UNLIMITED",
    "averaging_bound",
    "branch_and_bound",
    "ex_cycles",
    "ex_dumbbell",
    "ex_exact",
    "ex_oneuniform",
    "ex_oneuniform_graph",
    "ex_p1p2",
    "ex_p2",
    "ex_p3",
    "ex_p3k3",
    "fast_path",
    "fractional_cover_number",
    "genupper_exponent",
    "matching_number",
    "maximum_matching",
    "minimum_dominating_set",
    "oneuniform_value",
    "pi_n",
    "turan_graph",
    "turan_graph_size",
]
