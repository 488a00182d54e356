import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, strategies as st

from bouquet import contraction as C

# 30-digit mpmath oracles, frozen
EIGHT_PI_LN_1000 = 173.610825897971155499761117206
E_OF_200 = 2857.62790149282191094806121435
ELL_10 = 57.6650390625
SMALL_C = 10.1904496393568042474650534846
M0_ORACLE = 2.96604660558277659945536483282
M1_ORACLE = 4.43209321116555319891072966565


def oracle_L(t):
    t = mp.mpf(t)
    if t == 0:
        return mp.mpf(0)
    log_branch = 8 * mp.pi * mp.log(t) if t > 1 else mp.mpf(-1)
    return min(t / 2, max(2, log_branch))


def test_L_examples():
    assert C.L_eval(0) == 0.0
    assert C.L_eval(1) == 0.5
    assert C.L_eval(4) == 2.0
    assert C.L_eval(1000) == pytest.approx(EIGHT_PI_LN_1000, abs=1e-9)
    assert EIGHT_PI_LN_1000 < 500


def test_E_examples():
    assert C.E_eval(0.5) == 1.0
    assert C.E_eval(2) == 4.0
    assert C.E_eval(200) == pytest.approx(E_OF_200, rel=1e-12)
    assert C.L_eval(C.E_eval(200)) == pytest.approx(200, rel=1e-12)


def test_ell():
    assert C.ell(0) == 1.0
    assert C.ell(1) == 1.5
    assert C.ell(10) == pytest.approx(ELL_10, abs=1e-9)


@given(st.floats(0, 1e12))
def test_L_matches_oracle(t):
    assert C.L_eval(t) == pytest.approx(float(oracle_L(t)), rel=1e-12, abs=1e-300)


@given(st.floats(0, 1e9))
def test_L_two_sided_structure(t):
    assert C.L_eval(t) <= t / 2
    if t >= 4:
        assert C.L_eval(t) >= 2


def test_L_strictly_increasing_and_inverse_on_grid():
    ts = np.logspace(-3, 9, 10_000)
    values = np.array([C.L_eval(t) for t in ts])
    assert np.all(np.diff(values) > 0)
    for t, v in zip(ts, values):
        assert abs(C.E_eval(v) - t) <= 1e-9 * max(1.0, t)
        assert abs(C.L_eval(C.E_eval(v)) - v) <= 1e-9 * max(1.0, v)


def test_M_sum_against_brute_force():
    v0, tail0 = C.M_sum(0)
    v1, tail1 = C.M_sum(1)
    assert v0 == pytest.approx(M0_ORACLE, abs=2e-9)
    assert v1 == pytest.approx(M1_ORACLE, abs=2e-9)
    assert tail0 <= 1e-9 and tail1 <= 1e-9
    # early terms follow (3/4)^k and 1.5 (3/4)^k
    for k in range(1, 5):
        assert C.L_iter(k, C.ell(k)) == pytest.approx(0.75 ** k)
        assert C.L_iter(k, C.ell(k + 1)) == pytest.approx(1.5 * 0.75 ** k)


def test_M_sum_tail_is_rigorous():
    for n in (0, 3, 20):
        v, tail = C.M_sum(n, tol=1e-3)
        full, _ = C.M_sum(n, tol=1e-14)
        assert 0 <= full - v <= tail


def test_sum_constant():
    assert C.log_ratio_constant() == pytest.approx(SMALL_C, abs=1e-12)
    assert 8 * C.log_ratio_constant() == pytest.approx(81.52, abs=1e-2)
    assert C.sum_constant_C() == pytest.approx(8 * SMALL_C + 1, abs=1e-12)


def test_partial_sums_below_linear_bound():
    Cc = C.sum_constant_C()
    for n in range(65):
        v, tail = C.M_sum(n)
        assert tail <= 1e-9
        assert v + tail < Cc * (n + 1)


def test_hook_constants():
    bad = C.hook_constants_check(450, 450, 10)
    assert not bad.ok and bad.family == C.FAMILY_SPREAD and bad.n == 0
    good = C.hook_constants_check(1350, 450, 1000)
    assert good.ok and good.certificate["spread_ratio_nondecreasing"]
    assert not C.hook_constants_check(2, 1, 0).ok
    assert C.hook_constants_check(2, 1, 0).family == C.FAMILY_C3
    assert C.hook_constants_check(1.0, 450, 3).family == C.FAMILY_C2
    # min over n of 3^n/(2^{n+1}(n+1)) is 3/8, attained at n = 1, 2
    ratios = [3 ** n / (2 ** (n + 1) * (n + 1)) for n in range(30)]
    assert min(ratios) == pytest.approx(0.375)
    assert 0.375 * 1349 > 450


def test_canonical_constants_valid():
    k = C.constants()
    assert (k.C2, k.C3) == (1350.0, 450.0)
    assert k.C > 2 and k.C2 > 1 and k.C3 > 3 * k.C
    assert k.C > max(C.M_sum(0)[0], C.M_sum(1)[0], 8 * k.c)


def test_diam_bounds():
    assert C.diam_bounds(2) == (1.0, 4.0)
    assert C.diam_bounds(4) == (2.0, 8.0)
    lo, hi = C.diam_bounds(1000)
    assert lo == pytest.approx(EIGHT_PI_LN_1000, abs=1e-9)
    assert hi == pytest.approx(float(mp.exp(mp.mpf(1000) / (8 * mp.pi))), rel=1e-12)


@given(st.floats(1e-3, 1e6), st.floats(1e-3, 1e6))
def test_diam_bounds_monotone(a, b):
    a, b = sorted((a, b))
    la, ha = C.diam_bounds(a)
    lb, hb = C.diam_bounds(b)
    assert la <= lb and ha <= hb
