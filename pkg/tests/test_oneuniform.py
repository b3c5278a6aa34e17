import itertools
from fractions import Fraction

import pytest
from scipy.optimize import minimize_scalar

from invturan.extremal import ex_exact, oneuniform_value
from invturan.graphs import clique, multistar, parse_graph_literal
from invturan.patterns import Finite, OneUniform, PatternError
from invturan.oneuniform import (
    c_constant,
    estar_bruteforce,
    f1,
    f2,
    f3,
    f4,
    multistar_to_oneuniform,
    oneuniform_host,
    reduction_chain_check,
    transport_host,
    validate_pattern,
)


def _ex_naive(x, d) -> int:
    """Largest loop sub-multiset of ``x`` avoiding ``d``, by enumeration."""
    best = 0
    for kept in itertools.product(*(range(v + 1) for v in x)):
        srt = sorted(kept, reverse=True)
        if not (len(srt) >= len(d) and all(a >= b for a, b in zip(srt, d))):
            best = max(best, sum(kept))
    return best


def _estar_naive(d, k) -> int:
    best = 0
    for length in range(0, k):
        for x in itertools.combinations_with_replacement(range(1, k), length):
            if sum(x) > best and _ex_naive(x, d) < k:
                best = sum(x)
    return best


def _c_scipy(d) -> float:
    d = sorted(d, reverse=True)
    rows = [(tp, dv - 1) for tp, dv in enumerate(d)]
    xmax = min((1 / a for a, b in rows if a), default=1.0)

    def neg(x):
        return -x * min((1 - a * x) / b for a, b in rows if b)

    res = minimize_scalar(neg, bounds=(0, xmax), method="bounded", options={"xatol": 1e-12})
    # Brent's bounded method never evaluates the endpoint itself
    return max(-res.fun, -neg(xmax))


# -- c_H ----------------------------------------------------------------------------


def test_c_examples():
    r = c_constant((2, 2))
    assert (r.c_H, r.x, r.j) == (Fraction(1, 4), Fraction(1, 2), Fraction(1, 2))
    assert r.bounds() == (Fraction(1, 4), Fraction(1))
    r = c_constant((3, 1))
    assert (r.c_H, r.x, r.j) == (Fraction(1, 2), Fraction(1), Fraction(1, 2))
    assert r.to_json()["c_H"] == "1/2"


def test_c_vs_scipy_and_bounds(rng):
    for _ in range(200):
        t = rng.randint(2, 5)
        d = sorted((rng.randint(1, 6) for _ in range(t)), reverse=True)
        if d[0] < 2:
            d[0] = 2
        r = c_constant(d)
        lo, hi = r.bounds()
        assert lo <= r.c_H <= hi
        assert r.c_H == r.x * r.j
        for tp, dv in enumerate(sorted(d, reverse=True)):
            assert tp * r.x + (dv - 1) * r.j <= 1
        assert float(r.c_H) == pytest.approx(_c_scipy(d), abs=1e-8)


def test_sunflower_patterns_rejected():
    for d in ((3,), (1, 1, 1), ()):
        with pytest.raises(PatternError):
            c_constant(d)
    assert validate_pattern((1, 2)) == (2, 1)


# -- E* by brute force -------------------------------------------------------------


@pytest.mark.parametrize("d", [(2, 2), (2, 1), (3, 1), (2, 2, 1), (3, 2)])
def test_estar_vs_naive(d):
    for k in range(1, 7):
        assert estar_bruteforce(d, k) == _estar_naive(d, k), (d, k)


def test_estar_edge_cases():
    assert estar_bruteforce((2, 2), 1) == 0
    with pytest.raises(ValueError):
        estar_bruteforce((2, 2), 17)
    with pytest.raises(ValueError):
        estar_bruteforce((2, 2), 0)


def test_estar_trend_towards_c():
    d = (2, 1)
    c = c_constant(d).c_H
    ratios = [Fraction(estar_bruteforce(d, k), (k - 1) ** 2) for k in (6, 10, 14)]
    gaps = [abs(r - c) for r in ratios]
    assert gaps == sorted(gaps, reverse=True)


def test_formula_vs_naive(rng):
    for _ in range(200):
        x = [rng.randint(0, 4) for _ in range(rng.randint(1, 4))]
        d = [rng.randint(1, 3) for _ in range(rng.randint(1, 3))]
        assert oneuniform_value(x, d)[0] == _ex_naive(x, sorted(d, reverse=True))


# -- multi-star transport -------------------------------------------------------------


def test_multistar_examples():
    assert multistar_to_oneuniform(multistar([2, 2])) == OneUniform((2, 2))
    S = multistar([3, 2, 1])
    assert ex_exact(S, Finite((multistar([2, 2]),))).value == 5
    assert oneuniform_value((3, 2, 1), (2, 2))[0] == 5
    assert transport_host((4, 0, 2)).e == 6


def test_multistar_equivalence(rng):
    for _ in range(40):
        x = [rng.randint(1, 4) for _ in range(rng.randint(1, 4))]
        d = sorted((rng.randint(1, 3) for _ in range(rng.randint(2, 3))), reverse=True)
        star_ex = ex_exact(transport_host(x), Finite((multistar(d),))).value
        loop_ex = ex_exact(oneuniform_host(x), OneUniform(tuple(d))).value
        assert star_ex == loop_ex == oneuniform_value(x, d)[0]


def test_multistar_rejects_other_graphs():
    with pytest.raises(PatternError):
        multistar_to_oneuniform(clique(3))
    with pytest.raises(PatternError):
        multistar_to_oneuniform(parse_graph_literal("2K2"))


# -- reduction chain ------------------------------------------------------------------


def test_chain_example():
    rep = reduction_chain_check((2, 2), 10)
    assert rep.ok
    assert rep.f4 == Fraction(1, 4) * 81
    assert rep.f3 <= rep.f4
    assert rep.estar == estar_bruteforce((2, 2), 10)
    out = rep.to_json()
    assert out["f4"] == "81/4" and out["ok"] is True


def test_chain_programs_vs_enumeration():
    for d in ((2, 2), (3, 2), (2, 2, 1), (3, 1)):
        d = validate_pattern(d)
        rows = [(tp, dv - 1) for tp, dv in enumerate(d)]
        for k in range(2, 14):
            want3 = max(x * j for x in range(k) for j in range(k * k)
                        if all(a * x + b * j <= k - 1 for a, b in rows))
            assert f3(d, k)[0] == want3
            want1 = max([x * j for x in range(d[0], k) for j in range(k)
                         if all((tp - 1) * x + max(0, j - tp + 1) * min(x, d[tp - 1] - 1) <= k - 1
                                for tp in range(1, len(d) + 1))] or [0])
            assert f1(d, k)[0] == want1
            v4 = f4(d, k)[0]
            assert v4 == c_constant(d).c_H * (k - 1) ** 2
            r2 = f2(d, k)
            if r2 is not None:
                assert r2[2] >= len(d)


@pytest.mark.parametrize("d", [(2, 2), (2, 1), (3, 2, 2), (4, 2)])
def test_chain_holds(d):
    for k in range(2, 17):
        rep = reduction_chain_check(d, k)
        assert rep.ok, rep.to_json()
        assert rep.empirical_c() >= 0
