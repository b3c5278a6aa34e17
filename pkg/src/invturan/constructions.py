"""Deterministic generators for extremal and lower-bound host graphs."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .extremal import turan_graph
from .graphs import GraphError, MultiHypergraph, clique, complete_bipartite
from .graphs.textio import dumbbell


def pendant_graph(k: int, parts) -> MultiHypergraph:
    """Clique on 0..k-1 plus one pendant vertex per block of a partition of the clique.

    Blocks are consecutive: the pendant for ``parts[i]`` is joined to the next
    ``parts[i]`` clique vertices.
    """
    parts = list(parts)
    if k < 1 or not parts or any(r < 1 for r in parts) or sum(parts) != k:
        raise GraphError(f"pendant parts {parts} must be positive and sum to k = {k}")
    edges = {(u, v): 1 for u in range(k) for v in range(u + 1, k)}
    start = 0
    for i, r in enumerate(parts):
        p = k + i
        for v in range(start, start + r):
            edges[(v, p)] = 1
        start += r
    return MultiHypergraph(k + len(parts), edges)


def gk_graph(k: int) -> MultiHypergraph:
    """K_{k+1} minus a perfect matching (odd k) or minus ((k-2)/2)K2 ∪ P2 (even k)."""
    if k < 3:
        raise GraphError("gk_graph needs k >= 3")
    n = k + 1
    removed = set()
    if k % 2:
        removed = {(2 * i, 2 * i + 1) for i in range(n // 2)}
    else:
        removed = {(2 * i, 2 * i + 1) for i in range((k - 2) // 2)}
        removed |= {(k - 2, k - 1), (k - 1, k)}
    return MultiHypergraph(
        n, {(u, v): 1 for u in range(n) for v in range(u + 1, n) if (u, v) not in removed}
    )


def two_cliques(k: int) -> MultiHypergraph:
    return clique(k).disjoint_union(clique(k))


def p1p2_host(k: int) -> MultiHypergraph:
    """Host with ex(G, P1 ∪ P2) = k - 1.

    Odd k: 2K_k.  Even k: the Cayley graph on Z_{2k-1} with connection set
    ±1..±(k-2)/2, plus k-1 edges of difference k/2 taken alternately along
    the Hamilton cycle 0, k/2, 2(k/2), ... so that exactly one vertex misses
    the extra matching.
    """
    if k < 7:
        raise GraphError("p1p2_host needs k >= 7")
    if k % 2:
        return two_cliques(k)
    N = 2 * k - 1
    h = k // 2
    edges = {}
    for v in range(N):
        for d in range(1, (k - 2) // 2 + 1):
            u = (v + d) % N
            edges[(min(u, v), max(u, v))] = 1
    cyc = [(i * h) % N for i in range(N)]
    for i in range(0, 2 * k - 2, 2):
        a, b = cyc[i], cyc[i + 1]
        edges[(min(a, b), max(a, b))] = 1
    return MultiHypergraph(N, edges)


# -- dumbbell hosts ---------------------------------------------------------

PHI_HAT_TOLERANCE = Fraction(1, 10**12)


def phi_hat_approx() -> Fraction:
    """A ratio of consecutive Fibonacci numbers within 1e-12 of 1/φ.

    |F_m/F_{m+1} - 1/φ| < 1/F_{m+1}², so stopping once F_{m+1}² > 10^12
    meets the tolerance.
    """
    a, b = 1, 1
    while b * b <= 10**12:
        a, b = b, a + b
    return Fraction(a, b)


def _safe_floor(x: Fraction, slack: Fraction) -> int:
    """floor(x), refusing when an error of ``slack`` could change the answer."""
    f = x.numerator // x.denominator
    if x - f < slack or (f + 1) - x < slack:
        raise ArithmeticError(f"{float(x)} is within {float(slack)} of an integer; floor is not certified")
    return f


def dumbbell_multihost_params(k: int, n: int) -> tuple[int, int]:
    """(t, s): t parallel 2-edges per pair, s loops per vertex."""
    if n < 2:
        raise GraphError("dumbbell_multihost needs n >= 2")
    p = phi_hat_approx()
    denom = p + 2 * p * p
    tv = Fraction(k, comb(n, 2)) / denom
    sv = Fraction(k, n) * (2 * p - Fraction(1, n)) / denom
    # each value is Lipschitz in φ̂ with a constant well below 10k
    slack = 10 * k * PHI_HAT_TOLERANCE
    return _safe_floor(tv, slack), _safe_floor(sv, slack)


def multihost(n: int, t: int, s: int) -> MultiHypergraph:
    edges = {(u, v): t for u in range(n) for v in range(u + 1, n)} if t else {}
    if s:
        edges.update({(v,): s for v in range(n)})
    return MultiHypergraph(n, edges)


def dumbbell_multihost(k: int, n: int) -> MultiHypergraph:
    t, s = dumbbell_multihost_params(k, n)
    if t == 0 or s == 0:
        raise GraphError(f"k = {k}, n = {n} gives t = {t}, s = {s}; both must be positive")
    return multihost(n, t, s)


def multihost_ex(n: int, t: int, s: int) -> int:
    """ex of the (n, t, s) host: keep loops on ℓ vertices, drop 2-edges among them."""
    return max(l * s + t * (comb(n, 2) - comb(l, 2)) for l in range(n + 1))


def dumbbell_multihost_ex(k: int, n: int) -> int:
    t, s = dumbbell_multihost_params(k, n)
    return multihost_ex(n, t, s)


def dumbbell_multihost_best(k: int, n_max: int | None = None) -> tuple[int, MultiHypergraph]:
    """The n giving the most edges among hosts that keep ex below k."""
    if n_max is None:
        n_max = max(4, int(round(4 * k ** (1 / 3))) + 8)
    best = None
    for n in range(2, n_max + 1):
        t, s = dumbbell_multihost_params(k, n)
        if t == 0 or s == 0:
            continue
        if multihost_ex(n, t, s) >= k:
            continue
        e = t * comb(n, 2) + s * n
        if best is None or e > best[0]:
            best = (e, n)
    if best is None:
        raise GraphError(f"no admissible dumbbell host for k = {k}")
    return best[1], dumbbell_multihost(k, best[1])


def dumbbell_simplehost(k: int) -> MultiHypergraph:
    """(k-1)/2 disjoint dumbbells (odd k), or k/2 - 1 dumbbells plus an edge (even k)."""
    if k < 2:
        raise GraphError("dumbbell_simplehost needs k >= 2")
    copies = (k - 1) // 2 if k % 2 else k // 2 - 1
    G = MultiHypergraph(0)
    for _ in range(copies):
        G = G.disjoint_union(dumbbell(2))
    if k % 2 == 0:
        G = G.disjoint_union(MultiHypergraph(2, {(0, 1): 1}))
    return G


def nested_cliques(rs) -> MultiHypergraph:
    """Overlay K_{r_i} on the first r_i vertices for each i."""
    rs = list(rs)
    if not rs or any(r < 2 for r in rs) or any(a < b for a, b in zip(rs, rs[1:])):
        raise GraphError("nested_cliques needs r_1 >= ... >= r_l >= 2")
    edges: dict = {}
    for r in rs:
        for u in range(r):
            for v in range(u + 1, r):
                edges[(u, v)] = edges.get((u, v), 0) + 1
    return MultiHypergraph(rs[0], edges)


@dataclass(frozen=True)
class Construction:
    name: str
    graph: MultiHypergraph
    pattern: str | None = None
    expected_e: int | None = None
    ex_below: int | None = None


def build(name: str, params: list[int]) -> Construction:
    """Generator lookup for the command line."""
    def need(lo, hi=None):
        hi = lo if hi is None else hi
        if not lo <= len(params) <= hi:
            raise GraphError(f"construction {name!r} takes {lo}..{hi} integer parameters")

    if name == "pendant":
        need(2, 64)
        k = params[0]
        return Construction(name, pendant_graph(k, params[1:]), "P3", comb(k + 1, 2))
    if name == "gk":
        need(1)
        k = params[0]
        drop = (k + 2) // 2 if k % 2 == 0 else (k + 1) // 2
        return Construction(name, gk_graph(k), "P3K3", comb(k + 1, 2) - drop, k)
    if name == "p1p2":
        need(1)
        k = params[0]
        e = k * k - k if k % 2 else k * k - 3 * k // 2
        return Construction(name, p1p2_host(k), "P1uP2", e, k)
    if name == "dumbbell-multi":
        need(1, 2)
        k = params[0]
        if len(params) == 2:
            G = dumbbell_multihost(k, params[1])
        else:
            _, G = dumbbell_multihost_best(k)
        return Construction(name, G, "dumbbell2", G.e, k)
    if name == "dumbbell-simple":
        need(1)
        k = params[0]
        return Construction(name, dumbbell_simplehost(k), "dumbbell2", 3 * (k - 1) // 2, k)
    if name == "nested":
        need(1, 64)
        return Construction(name, nested_cliques(params), None, sum(comb(r, 2) for r in params))
    if name == "bipartite":
        need(2)
        return Construction(name, complete_bipartite(*params), None, params[0] * params[1])
    if name == "clique":
        need(1)
        return Construction(name, clique(params[0]), None, comb(params[0], 2))
    if name == "two-cliques":
        need(1)
        return Construction(name, two_cliques(params[0]), None, 2 * comb(params[0], 2))
    if name == "turan":
        need(2)
        G = turan_graph(*params)
        return Construction(name, G, None, G.e)
    raise GraphError(
        f"unknown construction {name!r}; expected pendant, gk, p1p2, dumbbell-multi, "
        "dumbbell-simple, nested, bipartite, clique, two-cliques or turan"
    )


CONSTRUCTIONS = (
    "pendant", "gk", "p1p2", "dumbbell-multi", "dumbbell-simple",
    "nested", "bipartite", "clique", "two-cliques", "turan",
)
