"""Diameter calculus for pullbacks: L, its inverse E, the series M_n and the
constants that control the hook construction.
"""
import math
from collections import namedtuple
from functools import lru_cache

from scipy.optimize import brentq

from .errors import DomainError, PreconditionError

LOG_SLOPE = 8.0 * math.pi
RATIO = 1.5
SERIES_TOL = 1e-9

# The repository's canonical hook constants; (450, 450) fails at n = 0.
CANONICAL_C2 = 1350.0
CANONICAL_C3 = 450.0

ContractionConstants = namedtuple("ContractionConstants", "c C C2 C3")
HookCheck = namedtuple("HookCheck", "ok family n certificate")

FAMILY_C2 = "C2 > 1"
FAMILY_C3 = "C3 > 3C"
FAMILY_IMAGE = "L(C2*l_{n+1}) < C3(n+1)"
FAMILY_SPREAD = "(C2-1)l_n > 2C3(n+1)"
FAMILY_SANDWICH = "8pi log(3C2/2) < C3 < 3^n(C2-1)/(2^{n+1}(n+1))"


def L_eval(t):
    t = float(t)
    if t < 0:
        raise DomainError("L is defined for t >= 0")
    if t == 0.0:
        return 0.0
    branch = max(2.0, LOG_SLOPE * math.log(t)) if t > 1.0 else 2.0
    return min(t / 2.0, branch)


@lru_cache(maxsize=1)
def _crossover():
    # Largest t where t/2 = 8 pi ln t; beyond it the log branch is the minimum.
    return brentq(lambda t: t / 2.0 - LOG_SLOPE * math.log(t), 10.0, 1e4, xtol=1e-14, rtol=1e-15)


def E_eval(s):
    """Inverse of L on [0, inf)."""
    s = float(s)
    if s < 0:
        raise DomainError("E is defined for s >= 0")
    linear = 2.0 * s
    logarithmic = math.exp(s / LOG_SLOPE) if s / LOG_SLOPE < 700 else math.inf
    tol = 1e-9 * max(1.0, s)
    candidates = [linear, logarithmic] if s <= _crossover() / 2.0 else [logarithmic, linear]
    for t in candidates:
        if math.isfinite(t) and abs(L_eval(t) - s) <= tol:
            return t
    return candidates[0]


def ell(n):
    if n < 0:
        raise DomainError("n must be nonnegative")
    return RATIO ** int(n)


def L_iter(k, t):
    for _ in range(k):
        t = L_eval(t)
    return t


def _tail_bound(n, K):
    # L(l_m) <= c m for m >= 1 and L(t) <= t/2, so the k-th term is at most
    # c (n+k) 2^{-(k-1)}; summing k > K gives c 2^{1-K} (n + K + 2).
    return log_ratio_constant() * 2.0 ** (1 - K) * (n + K + 2)


def log_ratio_constant():
    return LOG_SLOPE * math.log(RATIO)


def M_sum(n, tol=SERIES_TOL):
    """Truncated series sum_{k>=1} L^k(l_{n+k}) and a rigorous tail bound."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    K = 1
    while _tail_bound(n, K) > tol:
        K += 1
    value = sum(L_iter(k, ell(n + k)) for k in range(1, K + 1))
    return value, _tail_bound(n, K)


def sum_constant_C():
    c = log_ratio_constant()
    m0 = sum(M_sum(0))
    m1 = sum(M_sum(1))
    return max(m0, m1, 8.0 * c) + 1.0


def constants(C2=CANONICAL_C2, C3=CANONICAL_C3):
    return ContractionConstants(log_ratio_constant(), sum_constant_C(), float(C2), float(C3))


def _families(C2, C3, n):
    """Yield (family, holds) for index n in the checking order."""
    yield FAMILY_IMAGE, L_eval(C2 * ell(n + 1)) < C3 * (n + 1)
    yield FAMILY_SPREAD, (C2 - 1.0) * ell(n) > 2.0 * C3 * (n + 1)
    upper = (C2 - 1.0) * ell(n) / (2.0 * (n + 1))
    yield FAMILY_SANDWICH, LOG_SLOPE * math.log(C2 * RATIO) < C3 < upper


def hook_constants_check(C2, C3, n_max):
    """Check the three inequality families for 0 <= n <= n_max.

    Beyond n_max a certificate covers the rest: the ratio of consecutive
    spread terms, 1.5 (n+1)/(n+2), is >= 1 for n >= 1, and the image family's
    slack (n+1)(C3 - c) - 8 pi log C2 grows once C3 > c.
    """
    C2, C3 = float(C2), float(C3)
    if not C2 > 1.0:
        return HookCheck(False, FAMILY_C2, None, None)
    if not C3 > 3.0 * sum_constant_C():
        return HookCheck(False, FAMILY_C3, None, None)
    for n in range(int(n_max) + 1):
        for family, holds in _families(C2, C3, n):
            if not holds:
                return HookCheck(False, family, n, None)
    c = log_ratio_constant()
    start = max(int(n_max), 1)
    certificate = {
        "from_n": start + 1,
        "spread_ratio_at_start": RATIO * (start + 1) / (start + 2),
        "spread_ratio_nondecreasing": RATIO * (start + 1) / (start + 2) >= 1.0,
        "image_slack_slope": C3 - c,
        "image_slack_at_start": (start + 1) * (C3 - c) - LOG_SLOPE * math.log(C2),
    }
    ok = (certificate["spread_ratio_nondecreasing"]
          and certificate["image_slack_slope"] > 0
          and certificate["image_slack_at_start"] > 0
          and all(h for _, h in _families(C2, C3, start)))
    if not ok:
        return HookCheck(False, "eventual monotonicity", start + 1, certificate)
    return HookCheck(True, None, None, certificate)


def diam_bounds(diam_B):
    d = float(diam_B)
    if not d > 0:
        raise PreconditionError("diameter must be positive")
    return min(d / 2.0, L_eval(d)), max(2.0 * d, E_eval(d))
