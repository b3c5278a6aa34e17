"""Regression battery behind ``verify-paper``.

Each check recomputes a family of known values or inequalities from scratch
and reports pass/fail under a short descriptive tag.  ``quick`` trims the
instance ranges; ``full`` runs the whole desk-scale battery.  A failing
check carries the first offending instance in ``failure``.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from math import comb, ceil

from . import constructions as cons
from . import oneuniform as ou
from .extremal import (
    averaging_bound,
    branch_and_bound,
    ex_exact,
    ex_oneuniform,
    fast_path,
    fractional_cover_number,
    genupper_exponent,
    matching_number,
    turan_graph,
    turan_graph_size,
)
from .graphs import (
    MultiHypergraph,
    canonical_form,
    clique,
    complete_bipartite,
    contract,
    cycle,
    format_graph,
    multistar,
    path,
    simplify,
)
from .inverse import SearchSpace, enumerate_hosts, finiteness_check, inverse_search, verify_host
from .patterns import (
    AllCycles,
    Clique,
    Dumbbell,
    EvenCycles,
    Finite,
    P3K3,
    Path,
    StarUnionEdge,
)

PROFILES = ("quick", "full")
FAULTS = ("turan-size",)


@dataclass
class CheckResult:
    tag: str
    passed: bool
    summary: str
    details: dict = field(default_factory=dict)
    failure: dict | None = None
    seconds: float = 0.0

    def to_json(self, timing: bool = False) -> dict:
        out = {"tag": self.tag, "pass": self.passed, "summary": self.summary, "details": self.details}
        if self.failure is not None:
            out["failure"] = self.failure
        if timing:
            out["seconds"] = round(self.seconds, 3)
        return out


class _Fail(Exception):
    def __init__(self, message: str, **instance):
        super().__init__(message)
        self.instance = instance


def _expect(cond: bool, message: str, **instance) -> None:
    if not cond:
        raise _Fail(message, **instance)


def _graph_json(G: MultiHypergraph) -> str:
    return format_graph(G)


def _same(G: MultiHypergraph, H: MultiHypergraph) -> bool:
    return canonical_form(G.drop_isolated()) == canonical_form(H.drop_isolated())


def _search(P, k, **kw):
    res = inverse_search(P, k, SearchSpace(**kw))
    _expect(res.status == "exact-within-caps", f"search for {P.literal()} at k={k} did not finish", k=k)
    return res


def _unique_host(res, G, label):
    _expect(
        len(res.hosts) == 1 and _same(res.hosts[0], G),
        f"expected the unique host {label}",
        k=res.k,
        found=[_graph_json(h) for h in res.hosts],
    )


# -- individual checks --------------------------------------------------------


def _corrupt_turan_size(n: int, t: int) -> int:
    # rounds the density bound up instead of counting the parts
    return ceil((t - 2) * n * n / (2 * (t - 1)))


def check_cliques(profile, faults):
    size = _corrupt_turan_size if "turan-size" in faults else turan_graph_size
    top = 6 if profile == "quick" else 7
    rows = []
    # n = t is the trivial case k = C(t,2); the family starts at K_{t+1}
    for t in (3, 4):
        for n in range(t + 1, top + 1):
            K = clique(n)
            exact = branch_and_bound(K, Clique(t)).value
            expect = size(n, t)
            _expect(exact == expect, f"ex(K_{n}, K_{t}) differs from the Turán size",
                    host=f"K{n}", t=t, turan_size=expect, ex=exact)
            T = turan_graph(n, t)
            _expect(T.e == expect and not Clique(t).contains(T), "Turán graph has the wrong size or a clique",
                    host=f"K{n}", t=t)
            rep = verify_host(Clique(t), expect + 1, K)
            _expect(rep.passed, "K_n does not keep ex below k", host=f"K{n}", t=t)
            rows.append([n, t, exact])
    res = _search(Clique(3), 7, n_max=7, m_max=12)
    _expect(res.best_value == 10, "E_K3(7) != 10", k=7, value=res.best_value)
    _unique_host(res, clique(5), "K5")
    multi = _search(Clique(3), 7, simple_only=False, mult_max=3, n_max=7, m_max=12,
                    compression="underlying_simple")
    _expect(multi.best_value == 10, "E*_K3(7) != 10", k=7, value=multi.best_value)
    _unique_host(multi, clique(5), "K5")
    small = _search(Clique(3), 5, n_max=6, m_max=8)
    _expect(small.best_value == 6, "E_K3(5) != 6", k=5, value=small.best_value)
    return "Turán sizes, K_n hosts and E_K3 at k = 7 confirmed", {
        "turan_rows": rows,
        "k5_hosts": [_graph_json(h) for h in small.hosts],
    }


def check_cycles(profile, faults):
    ks = (3, 4) if profile == "quick" else (3, 4, 5)
    for k in ks:
        res = _search(AllCycles(), k, n_max=k + 1, m_max=comb(k, 2) + 2)
        _expect(res.best_value == comb(k, 2), "E_C(k) != C(k,2)", k=k, value=res.best_value)
        _unique_host(res, clique(k), f"K{k}")
    return f"E_C(k) = C(k,2) with unique host K_k for k in {list(ks)}", {}


def check_even_cycles(profile, faults):
    ks = (4, 5) if profile == "quick" else (4, 5, 6)
    out = {}
    for k in ks:
        res = _search(EvenCycles(), k, n_max=k + 1, m_max=k * k // 4 + 2)
        _expect(res.best_value == k * k // 4, "E_Ce(k) != floor(k^2/4)", k=k, value=res.best_value)
        if k == 5:
            want = {canonical_form(clique(4)), canonical_form(complete_bipartite(2, 3))}
            _expect({canonical_form(h) for h in res.hosts} == want, "hosts at k = 5 are not {K4, K2,3}",
                    k=k, found=[_graph_json(h) for h in res.hosts])
        elif k == 6:
            _unique_host(res, complete_bipartite(3, 3), "K3,3")
        out[k] = len(res.hosts)
    G = clique(6)
    for u, v in ((0, 1), (0, 2), (1, 2)):
        G = G.without_edge((u, v))
    r = ex_exact(G, EvenCycles())
    _expect(r.value == 7, "ex(K6 minus K3, even cycles) != 7", value=r.value)
    return "E_Ce(k) = floor(k^2/4) with the expected hosts", {"host_counts": out}


def check_path3(profile, faults):
    res = _search(Path(3), 3, n_max=6, m_max=8)
    _expect(res.best_value == 4, "E_P3(3) != 4", k=3, value=res.best_value)
    _unique_host(res, cycle(4), "C4")
    res = _search(Path(3), 4, n_max=7, m_max=9)
    forms = {canonical_form(h) for h in res.hosts}
    _expect(res.best_value == 6, "E_P3(4) != 6", k=4, value=res.best_value)
    for G, name in ((clique(4), "K4"), (cons.pendant_graph(3, [1, 1, 1]), "pendant K3*(1,1,1)")):
        _expect(canonical_form(G) in forms, f"{name} missing from the E_P3(4) hosts", k=4)
    top = 6 if profile == "quick" else 8
    for k in range(4, top + 1):
        G = cons.pendant_graph(k - 1, [1] * (k - 1))
        _expect(ex_exact(G, Path(3)).value == k - 1, "pendant graph does not keep ex at k-1", k=k)
    return "E_P3 at k = 3, 4 and pendant hosts confirmed", {"k4_hosts": len(res.hosts)}


def check_path3_triangle(profile, faults):
    for k in (3, 4):
        res = _search(P3K3(), k, n_max=k + 3, m_max=comb(k + 1, 2) + 2)
        want = comb(k + 1, 2) - ((k + 1) // 2 if k % 2 else (k + 2) // 2)
        _expect(res.best_value == want, "E_{P3,K3}(k) off", k=k, value=res.best_value, expected=want)
        _unique_host(res, cons.gk_graph(k), "G_k")
    top = 6 if profile == "quick" else 9
    for k in range(3, top + 1):
        G = cons.gk_graph(k)
        _expect(ex_exact(G, P3K3()).value == k - 1, "ex(G_k, {P3,K3}) != k-1", k=k)
        if k <= top - 1:
            # the generic search grows about tenfold per step; k = 9 alone takes most of a minute
            _expect(branch_and_bound(G, P3K3()).value == k - 1, "generic solver disagrees on G_k", k=k)
    return "E_{P3,K3}(k) at k = 3, 4 with unique host G_k", {}


def check_dumbbell(profile, faults):
    vals = {}
    for k in (2, 3, 4, 5):
        res = _search(Dumbbell(), k, n_max=2 * (k - 1), m_max=2 * k)
        want = 3 * (k - 1) // 2
        _expect(res.best_value == want, "E_D(k) != floor(3(k-1)/2)", k=k, value=res.best_value)
        G = cons.dumbbell_simplehost(k)
        rep = verify_host(Dumbbell(), k, G)
        _expect(rep.passed and G.e == want, "disjoint dumbbell host fails", k=k, e=G.e, ex=rep.ex)
        vals[k] = res.best_value
    return "E_D(k) = floor(3(k-1)/2) for k = 2..5", {"values": vals}


def check_star_union_edge(profile, faults):
    ks = (7, 8) if profile == "quick" else (7, 8, 9, 10)
    rows = []
    for k in ks:
        G = cons.p1p2_host(k)
        want = k * k - k if k % 2 else k * k - 3 * k // 2
        rep = verify_host(StarUnionEdge(), k, G)
        _expect(G.e == want and rep.ex == k - 1, "P1uP2 host has the wrong size or ex", k=k, e=G.e, ex=rep.ex)
        adj = G.adjacency()
        delta = max(bin(a).count("1") for a in adj)
        m = matching_number(adj)
        _expect(delta == m == k - 1, "Δ and M should both be k-1", k=k, delta=delta, matching=m)
        rows.append([k, G.e, rep.ex])
    return "P1uP2 hosts reach k^2 - k (odd) and k^2 - 3k/2 (even)", {"rows": rows}


def check_dumbbell_multigraph(profile, faults):
    for n, t, s in ((2, 1, 1), (3, 1, 1), (3, 2, 1), (4, 1, 2), (3, 1, 3)):
        G = cons.multihost(n, t, s)
        _expect(cons.multihost_ex(n, t, s) == branch_and_bound(G, Dumbbell()).value,
                "closed-form ex disagrees with the generic solver", n=n, t=t, s=s)
    ks = (200, 1000) if profile == "quick" else (100, 200, 500, 1000, 2000)
    rows = []
    for k in ks:
        n, G = cons.dumbbell_multihost_best(k)
        ex = cons.dumbbell_multihost_ex(k, n)
        _expect(ex < k, "multigraph dumbbell host reaches ex >= k", k=k, n=n, ex=ex)
        if k >= 1000:
            _expect(G.e >= 1.55 * k, "e(G)/k below 1.55", k=k, e=G.e)
        rows.append([k, n, G.e, ex])
    return "multigraph dumbbell hosts beat 3k/2 with ex < k", {"rows": rows}


def simple_graphs(n_max: int):
    """Every simple graph with at most ``n_max`` non-isolated vertices, one per class."""
    return enumerate_hosts(SearchSpace(n_max=n_max, m_max=comb(n_max, 2), edge_sizes={2}))


def _independence_number(adj: list[int], n: int) -> int:
    best = 0

    def rec(cand: int, size: int):
        nonlocal best
        if size + bin(cand).count("1") <= best:
            return
        if not cand:
            best = size
            return
        v = cand.bit_length() - 1
        rec(cand & ~(1 << v) & ~adj[v], size + 1)
        rec(cand & ~(1 << v), size)

    rec((1 << n) - 1, 0)
    return best


def check_degree_matching(profile, faults):
    top = 7 if profile == "quick" else 8
    count = 0
    for G in simple_graphs(top):
        adj = G.adjacency()
        delta = max((bin(a).count("1") for a in adj), default=0)
        m = matching_number(adj)
        _expect(G.e <= (delta + 1) * m, "e > (Δ+1)M", graph=_graph_json(G))
        count += 1
    return f"e(G) <= (Δ+1)M(G) on all {count} graphs with <= {top} vertices", {"graphs": count}


def check_mantel_independence(profile, faults):
    top = 7 if profile == "quick" else 8
    count = 0
    K3 = Clique(3)
    for G in simple_graphs(top):
        if K3.contains(G):
            continue
        a = _independence_number(G.adjacency(), G.n)
        _expect(G.e <= a * (G.n - a), "triangle-free graph with e > α(n-α)", graph=_graph_json(G))
        count += 1
    return f"e <= α(n-α) on all {count} triangle-free graphs with <= {top} vertices", {"graphs": count}


CONTRACTION_CASES = (
    ("underlying_simple", None, Clique(3)),
    ("underlying_simple", None, Clique(4)),
    ("component_closure", None, Path(3)),
    ("component_closure", None, P3K3()),
    ("component_closure", None, Finite((cycle(4),), "C4")),
    ("component_closure", None, AllCycles()),
    ("distance_closure", 2, Finite((cycle(4),), "C4")),
    ("distance_closure", 3, Path(3)),
)


def contraction_triples(count: int, seed: int = 0):
    """Random (G, I, kind, t, P) with I independent in f(G) and f(H) a clique for every member."""
    rng = random.Random(seed)
    made = 0
    while made < count:
        kind, t, P = CONTRACTION_CASES[made % len(CONTRACTION_CASES)]
        n = rng.randint(4, 7)
        edges = {}
        for u in range(n):
            for v in range(u + 1, n):
                if rng.random() < 0.4:
                    edges[(u, v)] = rng.choice((1, 1, 1, 2))
        G = MultiHypergraph(n, edges)
        fadj = simplify(G, kind, t).adjacency()
        verts = list(range(n))
        rng.shuffle(verts)
        I = []
        for v in verts:
            if all(not fadj[v] >> u & 1 for u in I):
                I.append(v)
            if len(I) == 3:
                break
        if len(I) < 2:
            continue
        made += 1
        yield G, sorted(I[: rng.randint(2, len(I))]), kind, t, P


def check_contraction(profile, faults):
    count = 100 if profile == "quick" else 500
    for kind, t, P in CONTRACTION_CASES:
        members = P.members() or [cycle(3)]
        for H in members:
            H = H.drop_isolated()
            _expect(simplify(H, kind, t).e == comb(H.n, 2), "member image is not a clique", kind=kind, pattern=P.literal())
    for G, I, kind, t, P in contraction_triples(count):
        C = contract(G, I)
        a, b = ex_exact(C, P).value, ex_exact(G, P).value
        _expect(a <= b, "contraction increased ex", graph=_graph_json(G), I=I, kind=kind, pattern=P.literal())
    return f"ex(C_I(G)) <= ex(G) on {count} random triples", {"triples": count}


def dumbbell_test_hosts(m_max: int = 7):
    """Hosts with loops and 2-edges, at most one loop per vertex, <= m_max edges."""
    space = SearchSpace(simple_only=False, n_max=2 * m_max, m_max=m_max, mult_max=m_max, edge_sizes={1, 2})
    return enumerate_hosts(space, accept=lambda G: all(m == 1 for k, m in G.edges.items() if len(k) == 1))


def check_dumbbell_two_thirds(profile, faults):
    top = 6 if profile == "quick" else 7
    count = 0
    D = Dumbbell()
    for G in dumbbell_test_hosts(top):
        ex = ex_exact(G, D).value
        _expect(3 * ex >= 2 * G.e, "ex(G, D) < 2e/3", graph=_graph_json(G), ex=ex)
        count += 1
    return f"ex(G, D) >= 2e(G)/3 on all {count} hosts with <= {top} edges", {"hosts": count}


def check_sunflower(profile, faults):
    infinite = {
        "K1,3": (complete_bipartite(1, 3), 3),
        "3K2": (MultiHypergraph(6, {(0, 1): 1, (2, 3): 1, (4, 5): 1}), 3),
        "double edge": (MultiHypergraph(2, {(0, 1): 2}), 2),
        "S2,2": (multistar([2, 2]), None),
    }
    for name, (H, k0) in infinite.items():
        v = finiteness_check(Finite((H,), name))
        if k0 is None:
            _expect(v.infinite_from is None, f"{name} is not a sunflower", pattern=name)
        else:
            _expect(v.infinite_from == k0, f"{name} should be infinite from k = {k0}", pattern=name,
                    got=v.infinite_from)
    for name, P in (("P3", Path(3)), ("K3", Clique(3)), ("C4", Finite((cycle(4),), "C4"))):
        _expect(finiteness_check(P).infinite_from is None, f"{name} should be finite", pattern=name)
    return "sunflower members are exactly the infinite ones", {}


def check_one_uniform(profile, faults):
    from fractions import Fraction
    from itertools import combinations_with_replacement, product

    r = ou.c_constant((2, 2))
    _expect(r.c_H == Fraction(1, 4) and (r.x, r.j) == (Fraction(1, 2), Fraction(1, 2)), "c_H(2,2) != 1/4",
            got=r.to_json())
    rng = random.Random(1)
    for _ in range(200):
        t = rng.randint(2, 6)
        d = sorted((rng.randint(1, 6) for _ in range(t)), reverse=True)
        if d[0] < 2:
            d[0] = 2
        r = ou.c_constant(d)
        lo, hi = r.bounds()
        _expect(lo <= r.c_H <= hi, "c_H outside its bounds", d=d, c_H=str(r.c_H))
    count = 0
    for t in (1, 2, 3):
        for dd in product(range(1, 4), repeat=t):
            d = sorted(dd, reverse=True)
            for n in range(0, 6 if profile == "full" else 5):
                for x in combinations_with_replacement(range(4, -1, -1), n):
                    val = ex_oneuniform(list(x), d).value
                    _expect(val == _oneuniform_brute(list(x), d), "formula differs from brute force", x=list(x), d=d)
                    count += 1
    ks = range(4, 13) if profile == "full" else range(4, 10)
    vals = [ou.estar_bruteforce((2, 1), k) for k in ks]
    _expect(all(a <= b for a, b in zip(vals, vals[1:])), "E*(k) decreases", values=vals)
    c = ou.c_constant((2, 1)).c_H
    gaps = [abs(Fraction(v, (k - 1) ** 2) - c) for v, k in zip(vals, ks)]
    _expect(all(a >= b for a, b in zip(gaps, gaps[1:])), "normalised E* moves away from c_H", gaps=[str(g) for g in gaps])
    chain = ou.reduction_chain_check((2, 2), 10)
    _expect(chain.ok, "reduction chain inequality fails", report=chain.to_json())
    return "c_H, the ex formula and E* for 1-uniform patterns", {
        "formula_cases": count,
        "estar_2_1": vals,
        "chain_2_2_k10": chain.to_json(),
    }


def _oneuniform_brute(x, d) -> int:
    """Largest sub-sequence y <= x (entrywise) that does not dominate d."""
    from itertools import product

    t = len(d)
    best = 0
    for y in product(*(range(v + 1) for v in x)):
        ys = sorted(y, reverse=True)
        if len(ys) >= t and all(a >= b for a, b in zip(ys, d)):
            continue
        best = max(best, sum(y))
    return best


def check_multistar(profile, faults):
    rng = random.Random(2)
    count = 100 if profile == "full" else 40
    for _ in range(count):
        d = sorted((rng.randint(1, 3) for _ in range(rng.randint(2, 3))), reverse=True)
        x = sorted((rng.randint(1, 4) for _ in range(rng.randint(1, 4))), reverse=True)
        S = Finite((multistar(d),))
        a = branch_and_bound(ou.transport_host(x), S).value
        b = ex_oneuniform(x, d).value
        _expect(a == b, "ex(S_x, S_d) != ex(x, d)", x=x, d=d, star=a, loops=b)
        _expect(ou.multistar_to_oneuniform(multistar(d)).d == tuple(d), "multi-star map is wrong", d=d)
    return f"ex(S_x, S_d) = ex(x, d) on {count} random instances", {}


def check_cover_exponent(profile, faults):
    from fractions import Fraction

    cases = {"edge": (path(1), Fraction(1)), "K3": (clique(3), Fraction(3, 2)), "C4": (cycle(4), Fraction(2))}
    for name, (H, want) in cases.items():
        got = fractional_cover_number(H)
        _expect(got == want, "ρ* differs", graph=name, got=str(got), expected=str(want))
    _expect(genupper_exponent(cycle(4)) == Fraction(3, 2), "exponent for C4 != 3/2")
    _expect(genupper_exponent(clique(3)) == Fraction(4, 3), "exponent for K3 != 4/3")
    return "ρ*(K2, K3, C4) = 1, 3/2, 2 and the C4 exponent 3/2", {}


def check_averaging(profile, faults):
    top = 5 if profile == "quick" else 6
    tables = {}
    for t in (3, 4):
        tables[t] = {n: ex_exact(clique(n), Clique(t)).value for n in range(1, top + 1)}
    count = 0
    for G in simple_graphs(top):
        if G.e == 0:
            continue
        for t in (3, 4):
            lb = averaging_bound(G, tables[t])
            ex = ex_exact(G, Clique(t)).value
            _expect(lb <= ex, "averaging bound above ex", graph=_graph_json(G), t=t, bound=lb, ex=ex)
            count += 1
    return f"averaging bound <= ex on {count} (graph, clique) pairs", {"pairs": count}


def check_layers(profile, faults):
    top = 4 if profile == "quick" else 5
    patterns = (Clique(3), Path(3), Finite((cycle(4),), "C4"))
    count = 0
    for S in simple_graphs(top):
        if S.e == 0:
            continue
        for r in (2, 3):
            G = MultiHypergraph(S.n, {k: r for k in S.edges})
            layers = S
            for _ in range(r - 1):
                layers = layers.disjoint_union(S)
            for P in patterns:
                a, b = ex_exact(layers, P).value, ex_exact(G, P).value
                _expect(a <= b, "layer union has larger ex", graph=_graph_json(S), r=r, pattern=P.literal())
                count += 1
    return f"disjoint layers never raise ex ({count} cases)", {"cases": count}


def check_oracle_equivalence(profile, faults):
    top = 5 if profile == "quick" else 6
    patterns = (Clique(3), Clique(4), Path(2), Path(3), StarUnionEdge(), P3K3(), AllCycles(), EvenCycles())
    count = 0
    for G in simple_graphs(top):
        if G.e > 9:
            continue
        for P in patterns:
            solver = fast_path(G, P)
            if solver is None:
                continue
            a, b = solver(G).value, branch_and_bound(G, P).value
            _expect(a == b, "fast path differs from branch-and-bound", graph=_graph_json(G), pattern=P.literal())
            count += 1
    return f"closed forms agree with branch-and-bound on {count} cases", {"cases": count}


CHECKS = {
    "cliques": check_cliques,
    "cycles": check_cycles,
    "even-cycles": check_even_cycles,
    "path3": check_path3,
    "path3-triangle": check_path3_triangle,
    "dumbbell": check_dumbbell,
    "star-union-edge": check_star_union_edge,
    "dumbbell-multigraph": check_dumbbell_multigraph,
    "degree-matching": check_degree_matching,
    "mantel-independence": check_mantel_independence,
    "contraction": check_contraction,
    "dumbbell-two-thirds": check_dumbbell_two_thirds,
    "sunflower": check_sunflower,
    "one-uniform": check_one_uniform,
    "multistar": check_multistar,
    "cover-exponent": check_cover_exponent,
    "averaging": check_averaging,
    "layers": check_layers,
    "oracle-equivalence": check_oracle_equivalence,
}


def run_check(tag: str, profile: str = "quick", faults=frozenset()) -> CheckResult:
    fn = CHECKS[tag]
    start = time.monotonic()
    try:
        summary, details = fn(profile, frozenset(faults))
        res = CheckResult(tag, True, summary, details)
    except _Fail as exc:
        res = CheckResult(tag, False, str(exc), {}, exc.instance)
    res.seconds = time.monotonic() - start
    return res


def verify_suite(profile: str = "quick", faults=frozenset(), tags=None) -> list[CheckResult]:
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}; expected one of {PROFILES}")
    bad = set(faults) - set(FAULTS)
    if bad:
        raise ValueError(f"unknown fault {sorted(bad)}; expected one of {FAULTS}")
    tags = list(CHECKS) if tags is None else list(tags)
    for t in tags:
        if t not in CHECKS:
            raise ValueError(f"unknown check {t!r}")
    return [run_check(t, profile, faults) for t in tags]
