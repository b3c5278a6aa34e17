"""Inverse Turán numbers of 1-uniform patterns.

A 1-uniform (multi)graph is determined by its sorted loop counts, so a
pattern is a sequence d_1 >= ... >= d_t and a host is x_1 >= ... >= x_n.
Everything here works in exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .extremal import oneuniform_value
from .graphs import MultiHypergraph, multistar
from .patterns import OneUniform, PatternError

ESTAR_GUARD = 16


def validate_pattern(d) -> tuple[int, ...]:
    """Sorted copy of ``d``; rejects the sunflower regime (t = 1 or d_1 = 1)."""
    d = tuple(sorted((int(v) for v in d), reverse=True))
    if not d or d[-1] < 1:
        raise PatternError("degrees must be positive")
    if len(d) < 2 or d[0] < 2:
        raise PatternError(
            f"pattern {d} is a sunflower (needs t >= 2 and d_1 >= 2); E*_H(k) is infinite from k = {sum(d)}"
        )
    return d


def _constraints(d) -> list[tuple[int, int]]:
    """(a, b) for each row a·x + b·j <= rhs, t' = 1..t."""
    return [(tp, dv - 1) for tp, dv in enumerate(d)]


def _feasible(rows, x, j, rhs) -> bool:
    return x >= 0 and j >= 0 and all(a * x + b * j <= rhs for a, b in rows)


@dataclass(frozen=True)
class CHResult:
    c_H: Fraction
    x: Fraction
    j: Fraction
    active: tuple[int, ...]
    d: tuple[int, ...] = ()

    def bounds(self) -> tuple[Fraction, Fraction]:
        """The guaranteed window 1/(4(t-1)(d_1-1)) <= c_H <= 1/((t-1)(d_1-1))."""
        base = (len(self.d) - 1) * (self.d[0] - 1)
        return Fraction(1, 4 * base), Fraction(1, base)

    def to_json(self) -> dict:
        return {
            "d": list(self.d),
            "c_H": str(self.c_H),
            "x": str(self.x),
            "j": str(self.j),
            "active": list(self.active),
        }


def _maximize_product(rows, rhs) -> tuple[Fraction, Fraction, Fraction]:
    """max x·j over the polygon {a·x + b·j <= rhs, x, j >= 0}.

    The product is maximised either at a vertex or at the tangency point of
    a level curve with one edge, which for the line a·x + b·j = rhs is
    (rhs/2a, rhs/2b).  Both sets of points are enumerated.
    """
    rhs = Fraction(rhs)
    lines = [(Fraction(a), Fraction(b), rhs) for a, b in rows if a or b]
    lines += [(Fraction(1), Fraction(0), Fraction(0)), (Fraction(0), Fraction(1), Fraction(0))]
    cands = []
    for (a1, b1, c1), (a2, b2, c2) in combinations(lines, 2):
        det = a1 * b2 - a2 * b1
        if det:
            cands.append(((c1 * b2 - c2 * b1) / det, (a1 * c2 - a2 * c1) / det))
    for a, b, c in lines:
        if a and b and c:
            cands.append((c / (2 * a), c / (2 * b)))
    best = None
    for x, j in cands:
        if not _feasible(rows, x, j, rhs):
            continue
        key = (-(x * j), x, j)
        if best is None or key < best:
            best = key
    if best is None:
        raise ArithmeticError("empty feasible region")
    return -best[0], best[1], best[2]


def c_constant(d) -> CHResult:
    """c_H = max x·j subject to (t'-1)x + (d_t' - 1)j <= 1 for every t'."""
    d = validate_pattern(d)
    rows = _constraints(d)
    c, x, j = _maximize_product(rows, 1)
    active = tuple(i + 1 for i, (a, b) in enumerate(rows) if a * x + b * j == 1)
    return CHResult(c, x, j, active, d)


# -- exact small-k values ------------------------------------------------------


def estar_bruteforce(d, k: int, guard: int = ESTAR_GUARD) -> int:
    """E*_H(k): the most loops in a 1-uniform host with ex(G, H) < k.

    Such a host has at most k-1 looped vertices and x_1 <= k-1, so a DFS
    over nonincreasing sequences is finite.  ex only grows when an entry
    grows or a vertex is appended, which makes both loops below safe to cut
    at the first infeasible value.
    """
    d = validate_pattern(d)
    if k < 1:
        raise ValueError("k must be positive")
    if k > guard:
        raise ValueError(f"k = {k} exceeds the brute-force guard {guard}")
    if k == 1:
        return 0
    limit = k - 1
    best = 0
    seq: list[int] = []

    def rec(total: int, cap: int) -> None:
        nonlocal best
        best = max(best, total)
        if len(seq) == limit:
            return
        if total + cap * (limit - len(seq)) <= best:
            return
        for v in range(1, cap + 1):
            seq.append(v)
            ok = oneuniform_value(seq, d)[0] <= limit
            if ok:
                rec(total + v, v)
            seq.pop()
            if not ok:
                break

    rec(0, limit)
    return best


# -- multi-star transport ---------------------------------------------------


def multistar_to_oneuniform(H: MultiHypergraph) -> OneUniform:
    """The 1-uniform pattern with the same extremal behaviour as a multi-star.

    A multi-star maps to the sequence of its edge multiplicities.
    """
    if not H.edges:
        raise PatternError("a multi-star needs at least one edge")
    common = None
    for k in H.edges:
        if len(k) != 2 or k[0] == k[1]:
            raise PatternError("a multi-star has only 2-edges")
        common = set(k) if common is None else common & set(k)
    if not common:
        raise PatternError("not a multi-star: the edges share no common centre")
    mults = list(H.edges.values())
    return OneUniform(tuple(mults))


def oneuniform_host(x) -> MultiHypergraph:
    xs = sorted((v for v in x if v), reverse=True)
    return MultiHypergraph(len(xs), {(i,): v for i, v in enumerate(xs)})


def transport_host(x) -> MultiHypergraph:
    """1-uniform host (x_1, ..., x_n) as the multi-star S_{x_1, ..., x_n}."""
    return multistar(sorted((v for v in x if v), reverse=True))


# -- reduction chain ----------------------------------------------------------


def f1(d, k: int) -> tuple[int, int, int]:
    """max j·x over integers, x >= d_1, with every row
    (t'-1)x + sum_{i=t'}^{j} min(x, d_t' - 1) <= k-1.

    Returns (value, x, j).  Any feasible (x, j) gives the host
    (x, ..., x, 0, ...) with j copies of x, so this is a lower bound on E*.
    """
    d = validate_pattern(d)
    best = (0, d[0], 0)
    for x in range(d[0], k):
        j = 0
        while True:
            nj = j + 1
            if not all(
                (tp - 1) * x + max(0, nj - tp + 1) * min(x, d[tp - 1] - 1) <= k - 1
                for tp in range(1, len(d) + 1)
            ):
                break
            j = nj
        if not all((tp - 1) * x <= k - 1 for tp in range(1, len(d) + 1)):
            continue
        if (j * x, -x) > (best[0], -best[1]):
            best = (j * x, x, j)
    return best


def f2(d, k: int) -> tuple[int, int, int] | None:
    """As f1 with the sum evaluated at x > d_t' - 1 and j >= t imposed.

    None when no pair is feasible (k too small for the restriction).
    """
    d = validate_pattern(d)
    t = len(d)
    best = None
    for x in range(d[0], k):
        jmax = None
        ok = True
        for tp in range(1, t + 1):
            a, b = (tp - 1) * x, d[tp - 1] - 1
            if a > k - 1:
                ok = False
                break
            if b:
                lim = (k - 1 - a) // b + tp - 1
                jmax = lim if jmax is None else min(jmax, lim)
        if not ok or jmax is None or jmax < t:
            continue
        if best is None or (jmax * x, -x) > (best[0], -best[1]):
            best = (jmax * x, x, jmax)
    return best


def f3(d, k: int) -> tuple[int, int, int]:
    """max j·x over nonnegative integers with (t'-1)x + (d_t' - 1)j <= k-1."""
    d = validate_pattern(d)
    rows = _constraints(d)
    best = (0, 0, 0)
    for x in range(0, k):
        if any(a * x > k - 1 for a, b in rows):
            break
        j = min((k - 1 - a * x) // b for a, b in rows if b)
        if (j * x, -x) > (best[0], -best[1]):
            best = (j * x, x, j)
    return best


def f4(d, k: int) -> tuple[Fraction, Fraction, Fraction]:
    """The real relaxation of f3, solved exactly."""
    d = validate_pattern(d)
    return _maximize_product(_constraints(d), k - 1)


@dataclass
class ChainReport:
    d: tuple[int, ...]
    k: int
    f1: int
    f2: int | None
    f3: int
    f4: Fraction
    estar: int | None
    host: tuple[int, ...]
    host_ex: int
    checks: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def slacks(self) -> dict:
        out = {"f4-f3": self.f4 - self.f3}
        if self.f2 is not None:
            out["f1-f2"] = self.f1 - self.f2
            out["f2-f3"] = self.f2 - self.f3
        if self.estar is not None:
            out["estar-f1"] = self.estar - self.f1
        return out

    def empirical_c(self) -> Fraction:
        """Largest |slack| / k: the observed constant in the O(k) terms."""
        return max(abs(Fraction(v)) for v in self.slacks().values()) / self.k

    def to_json(self) -> dict:
        return {
            "d": list(self.d),
            "k": self.k,
            "f1": self.f1,
            "f2": self.f2,
            "f3": self.f3,
            "f4": str(self.f4),
            "estar": self.estar,
            "f1_host": list(self.host),
            "f1_host_ex": self.host_ex,
            "slacks": {n: str(v) for n, v in self.slacks().items()},
            "empirical_C": str(self.empirical_c()),
            "checks": self.checks,
            "ok": self.ok,
        }


def reduction_chain_check(d, k: int, guard: int = ESTAR_GUARD) -> ChainReport:
    """Evaluate f1..f4 and check the inequalities that hold at every k.

    Checked: the f1 host really has ex < k, f1 <= E* (when k is within the
    brute-force guard), f2 <= f1 and f3 <= f4.  The remaining directions
    hold only up to O(k) and are reported as slacks.
    """
    d = validate_pattern(d)
    if k < 2:
        raise ValueError("k must be at least 2")
    v1, x1, j1 = f1(d, k)
    r2 = f2(d, k)
    v3 = f3(d, k)[0]
    v4 = f4(d, k)[0]
    host = (x1,) * j1
    host_ex = oneuniform_value(host, d)[0] if host else 0
    estar = estar_bruteforce(d, k, guard) if k <= guard else None
    checks = {
        "f1_host_feasible": host_ex < k and sum(host) == v1,
        "f3<=f4": v3 <= v4,
        "f4=c_H(k-1)^2": v4 == c_constant(d).c_H * (k - 1) ** 2,
    }
    if r2 is not None:
        checks["f2<=f1"] = r2[0] <= v1
    if estar is not None:
        checks["f1<=estar"] = v1 <= estar
    return ChainReport(d, k, v1, None if r2 is None else r2[0], v3, v4, estar, host, host_ex, checks)
