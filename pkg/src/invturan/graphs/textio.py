"""Text graph format and inline graph literals.

File format::

    # comment
    n 4
    0 1 x3      triple edge {0,1}
    2 x1        one 1-uniform loop at vertex 2
    3 3         the 2-uniform loop {3,3}

Literals: ``K5``, ``K3,3``, ``C6``, ``P3`` (path with 3 edges), ``E4`` (4
isolated vertices), ``S3,2,1`` (multi-star), ``D`` / ``D3`` (dumbbell with a
2- or 3-edge), an optional copy count prefix (``2K7``) and ``+`` for disjoint
union (``K3+P2``).
"""

from __future__ import annotations

import os
import re
from collections import Counter

from .core import MAX_VERTICES, GraphError, MultiHypergraph, edge_key


class GraphFormatError(GraphError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def parse_graph_text(text: str) -> MultiHypergraph:
    n = None
    edges: Counter = Counter()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "n":
            if n is not None:
                raise GraphFormatError("duplicate 'n' header", lineno)
            if len(parts) != 2 or not parts[1].isdigit():
                raise GraphFormatError(f"expected 'n <int>', got {line!r}", lineno)
            n = int(parts[1])
            if n > MAX_VERTICES:
                raise GraphFormatError(f"{n} vertices exceeds the cap of {MAX_VERTICES}", lineno)
            continue
        if n is None:
            raise GraphFormatError("edge before the 'n <int>' header", lineno)
        mult = 1
        if parts[-1].startswith("x"):
            tail = parts.pop()
            if not tail[1:].isdigit() or int(tail[1:]) < 1:
                raise GraphFormatError(f"bad multiplicity {tail!r}", lineno)
            mult = int(tail[1:])
        if not parts:
            raise GraphFormatError("edge without vertices", lineno)
        try:
            vs = [int(p) for p in parts]
        except ValueError:
            raise GraphFormatError(f"non-integer vertex in {line!r}", lineno) from None
        for v in vs:
            if not 0 <= v < n:
                raise GraphFormatError(f"vertex {v} out of range 0..{n - 1}", lineno)
        edges[edge_key(vs)] += mult
    if n is None:
        raise GraphFormatError("missing 'n <int>' header")
    return MultiHypergraph(n, dict(edges))


def format_graph(G: MultiHypergraph) -> str:
    lines = [f"n {G.n}"]
    for k, m in G.edges.items():
        body = " ".join(map(str, k))
        if m > 1 or len(k) == 1:
            body += f" x{m}"
        lines.append(body)
    return "\n".join(lines) + "\n"


# -- literals -------------------------------------------------------------

def clique(n: int) -> MultiHypergraph:
    return MultiHypergraph(n, {(u, v): 1 for u in range(n) for v in range(u + 1, n)})


def complete_bipartite(a: int, b: int) -> MultiHypergraph:
    return MultiHypergraph(a + b, {(u, v): 1 for u in range(a) for v in range(a, a + b)})


def cycle(n: int) -> MultiHypergraph:
    if n < 3:
        raise GraphError("cycles need at least 3 vertices")
    return MultiHypergraph(n, {edge_key((i, (i + 1) % n)): 1 for i in range(n)})


def path(t: int) -> MultiHypergraph:
    """Path with ``t`` edges on ``t + 1`` vertices."""
    return MultiHypergraph(t + 1, {(i, i + 1): 1 for i in range(t)})


def multistar(mults) -> MultiHypergraph:
    """Centre 0 joined to leaf i by ``mults[i-1]`` parallel edges."""
    mults = list(mults)
    return MultiHypergraph(len(mults) + 1, {(0, i + 1): m for i, m in enumerate(mults) if m})


def dumbbell(r: int = 2) -> MultiHypergraph:
    """One r-edge with a 1-uniform loop at each of its vertices."""
    edges = {tuple(range(r)): 1}
    edges.update({(v,): 1 for v in range(r)})
    return MultiHypergraph(r, edges)


_TOKEN = re.compile(r"\s*(?:(\d*)([A-Za-z])([\d,]*))\s*")


def _base(letter: str, nums: list[int], lit: str) -> MultiHypergraph:
    def want(lo, hi=None):
        hi = lo if hi is None else hi
        if not lo <= len(nums) <= hi:
            raise GraphFormatError(f"bad graph literal {lit!r}")

    if letter == "K":
        want(1, 2)
        return clique(nums[0]) if len(nums) == 1 else complete_bipartite(*nums)
    if letter == "C":
        want(1)
        return cycle(nums[0])
    if letter == "P":
        want(1)
        return path(nums[0])
    if letter == "E":
        want(1)
        return MultiHypergraph(nums[0])
    if letter == "S":
        want(1, MAX_VERTICES)
        return multistar(nums)
    if letter == "D":
        want(0, 1)
        return dumbbell(nums[0] if nums else 2)
    raise GraphFormatError(f"unknown graph literal {lit!r}")


def parse_graph_literal(lit: str) -> MultiHypergraph:
    """Parse ``term ('+' term)*`` where ``term = [count] letter [numbers]``."""
    G = MultiHypergraph(0)
    for term in lit.split("+"):
        m = _TOKEN.fullmatch(term)
        if not m:
            raise GraphFormatError(f"bad graph literal {lit!r}")
        count, letter, digits = m.groups()
        try:
            nums = [int(x) for x in digits.split(",")] if digits else []
        except ValueError:
            raise GraphFormatError(f"bad graph literal {lit!r}") from None
        base = _base(letter.upper(), nums, lit)
        for _ in range(int(count) if count else 1):
            G = G.disjoint_union(base)
            if G.n > MAX_VERTICES:
                raise GraphFormatError(f"{lit!r} exceeds the cap of {MAX_VERTICES} vertices")
    return G


def load_graph(spec: str) -> MultiHypergraph:
    """A path to a graph file, or an inline literal."""
    if os.path.exists(spec):
        with open(spec) as fh:
            return parse_graph_text(fh.read())
    return parse_graph_literal(spec)
