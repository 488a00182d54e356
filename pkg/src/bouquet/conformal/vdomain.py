"""The spike domain V = {x > 0, |y| < rho(x)} and its normalized map onto the
right half-plane.

Interval endpoints can be astronomically large, so the profile keeps them as
mpmath numbers and works with their logarithms.
"""
import math
from collections import namedtuple

import mpmath as mp
import numpy as np
from scipy.optimize import least_squares

from ..errors import AccuracyError, DomainError
from .numeric import NumericMap, segment_distance
from .schwarz import SCMap, StripSC

Normalized = namedtuple("Normalized", "alphas betas")


def _mpf(x):
    return x if isinstance(x, mp.mpf) else mp.mpf(x)


def normalize_intervals(intervals):
    """Replace [alpha_j, beta_j] (alpha_j >= 1) by a chain [1, 2], [2, b1], ...

    Each new right endpoint is at least the tenth power of the previous one
    and at least every beta whose alpha lies left of the previous endpoint;
    the chain stops once every input interval is covered.
    """
    ivs = sorted(((_mpf(a), _mpf(b)) for a, b in intervals), key=lambda ab: ab[0])
    if not ivs:
        raise DomainError("need at least one interval")
    for a, b in ivs:
        if a < 1:
            raise DomainError("interval left endpoints must be >= 1, got %s" % mp.nstr(a, 6))
        if b < a:
            raise DomainError("interval with right endpoint below left endpoint")
    top = max(b for _, b in ivs)
    alphas, betas = [mp.mpf(1)], [mp.mpf(2)]
    while betas[-1] < top:
        prev = betas[-1]
        reach = max([b for a, b in ivs if a < prev] + [prev])
        nxt = max(prev ** 10, reach)
        alphas.append(prev)
        betas.append(nxt)
    return Normalized(alphas, betas)


class VProfile:
    """Piecewise linear half-width rho of V.

    rho = dhat/(2 l_0) on [0, 1], rho(x_j) = dhat/(2 l_j) at x_j = 1 + dhat j,
    linear in between and constant after the last breakpoint.
    """

    def __init__(self, delta, normalized):
        if not 0 < delta < math.pi:
            raise DomainError("delta must lie in (0, pi)")
        self.delta = float(delta)
        self.delta_hat = self.delta / 3.0
        self.alphas = list(normalized.alphas)
        self.betas = list(normalized.betas)
        self.log_betas = [mp.log(b) for b in self.betas]
        self.lengths = [mp.log(b) - mp.log(a) for a, b in zip(self.alphas, self.betas)]
        self.breakpoints = [1.0 + self.delta_hat * j for j in range(len(self.lengths))]
        # values below the float range are kept as 0.0 and flagged unusable
        self.values = [float(self.delta_hat / (2 * l)) for l in self.lengths]

    def rho(self, x):
        x = float(x)
        if x <= 1.0:
            return self.values[0]
        xs, vs = self.breakpoints, self.values
        if x >= xs[-1]:
            return vs[-1]
        j = int((x - 1.0) / self.delta_hat)
        j = min(j, len(xs) - 2)
        t = (x - xs[j]) / (xs[j + 1] - xs[j])
        return (1 - t) * vs[j] + t * vs[j + 1]

    def truncation(self, min_width=1e-12, max_strip_length=5000.0):
        """Index J of the last breakpoint kept; V continues with constant width after x_J."""
        total = math.pi / (2 * self.values[0])
        J = 0
        for j in range(1, len(self.values)):
            a, b = self.values[j - 1], self.values[j]
            if b < min_width:
                break
            seg = math.pi / 2 * self.delta_hat * (math.log(a / b) / (a - b) if a != b else 1.0 / a)
            if total + seg > max_strip_length:
                break
            total += seg
            J = j
        return J


def v_profile(delta, intervals):
    """Build the profile from normalized (or raw) intervals."""
    if not isinstance(intervals, Normalized):
        intervals = normalize_intervals(intervals)
    return VProfile(delta, intervals)


class VMap(NumericMap):
    """psi : V -> {Re > 0} with psi(1) = 1, psi(inf) = inf, real on the axis.

    V is truncated after breakpoint x_J (constant width beyond).  The strip
    map f : S -> V sends the left end to the origin and the right end down
    the channel; psi = exp(f^{-1} - i pi/2 - Re f^{-1}(1)).
    """

    def __init__(self, profile, accuracy=1e-6, truncate=None):
        self.profile = profile
        J = profile.truncation() if truncate is None else int(truncate)
        self.J = J
        self.x_max = profile.breakpoints[J]
        rho = [profile.values[0]] + [profile.values[j] for j in range(J + 1)]
        xs = [0.0] + [profile.breakpoints[j] for j in range(J + 1)]
        lower = [complex(x, -r) for x, r in zip(xs, rho)]
        self.lower_vertices = lower
        self.channel_half_width = rho[-1]
        self._solve(lower)
        self._calibrate()
        self.boundary_accuracy = self._measure_boundary()
        if self.boundary_accuracy > accuracy:
            raise AccuracyError(self.boundary_accuracy, accuracy, "V map")

    def _solve(self, lower):
        # bottom edge: down the wall from the origin to (0, -rho0), then the
        # flat part, the tapers and the channel edge; the top edge mirrors it
        dirs = [lower[0]] + [lower[k + 1] - lower[k] for k in range(len(lower) - 1)] + [1.0 + 0j]
        ang = np.unwrap(np.angle(np.asarray(dirs)))
        betas_half = [-(ang[k + 1] - ang[k]) / math.pi for k in range(len(ang) - 1)]
        n = len(betas_half)
        sides = [abs(lower[k + 1] - lower[k]) for k in range(n - 1)]
        width = 2 * self.channel_half_width
        log_c = math.log(width / math.pi)

        # strip-length estimates give the initial gaps
        gaps0 = []
        for k in range(n - 1):
            a, b = -lower[k].imag, -lower[k + 1].imag
            L = sides[k] if abs(a - b) < 1e-15 else abs(lower[k + 1].real - lower[k].real)
            est = math.pi / 2 * L * (math.log(a / b) / (a - b) if abs(a - b) > 1e-15 * a else 1.0 / a)
            gaps0.append(max(est, 1e-3))

        def build(gaps):
            q = np.concatenate([[0.0], np.cumsum(gaps)])
            prev = np.concatenate([q, q])
            top = [False] * n + [True] * n
            return StripSC(prev, top, betas_half + betas_half, 1.0, log_c), q

        def residual(x):
            sc, q = build(np.exp(x))
            out = []
            for k in range(n - 1):
                L = abs(sc.quad(q[k], q[k + 1], k, k + 1))
                out.append(math.log(L / sides[k]))
            return out

        x0 = np.log(gaps0)
        sol = least_squares(residual, x0, xtol=1e-15, ftol=1e-15, gtol=1e-15, method="lm")
        self._residual = float(np.max(np.abs(residual(sol.x))))
        sc, q = build(np.exp(sol.x))
        self.q = q
        self.sc = sc
        self.map = SCMap(sc, anchor_index=0, anchor_image=lower[0])

    def _calibrate(self):
        w1 = self.map.inverse(1.0 + 0j, w0=self._axis_guess(1.0))
        self.shift = w1.real
        self._w1 = w1

    def _axis_guess(self, x):
        # the axis is the image of Im w = pi/2; scan the vertex-free guess
        lo, hi = self.q[0] - 30.0, self.q[-1] + 30.0
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if self.map(complex(mid, math.pi / 2)).real < x:
                lo = mid
            else:
                hi = mid
            if hi - lo < 1e-6:
                break
        return complex(0.5 * (lo + hi), math.pi / 2)

    def _measure_boundary(self):
        poly = [0j] + self.lower_vertices + [self.lower_vertices[-1] + 50.0]
        ws = []
        for k in range(len(self.q) - 1):
            ws.extend(np.linspace(self.q[k], self.q[k + 1], 9)[1:-1])
        ws.extend(self.q[0] - np.linspace(0.5, 20, 6))
        ws.extend(self.q[-1] + np.linspace(0.5, 20, 6))
        pts = np.array([self.map(complex(w, 0.0)) for w in ws])
        top = np.array([self.map(complex(w, math.pi)) for w in ws])
        err_lo = segment_distance(pts, poly).max()
        err_hi = segment_distance(np.conj(top), poly).max()
        return float(max(err_lo, err_hi))

    # strip coordinate helpers; far down the channel the map is affine and
    # arguments may be mpmath numbers of any size
    def _far(self, x):
        return isinstance(x, (mp.mpc, mp.mpf)) or complex(x).real > self.map.hi + 40.0

    def strip_of(self, v):
        kind, slope, intercept, edge = self.map.end(1)
        if self._far(v) and mp.mpf(mp.mpc(v).real) > self.x_max + 5.0:
            w = (mp.mpc(v) - intercept) / slope
            if abs(w.real) < 1e12:
                return complex(w)
            return w
        return self.map.inverse(complex(v))

    def log_forward(self, v):
        """log psi(v) for v in V (psi itself may overflow)."""
        return self.strip_of(v) - complex(self.shift, math.pi / 2)

    def forward(self, v):
        lg = self.log_forward(v)
        if isinstance(lg, mp.mpc) or lg.real > 700:
            return mp.exp(mp.mpc(lg))
        return np.exp(lg)

    def inverse_log(self, log_u):
        """psi^{-1}(exp(log_u)) for log_u with |Im| <= pi/2."""
        w = log_u + complex(self.shift, math.pi / 2)
        if self._far(w):
            kind, slope, intercept, edge = self.map.end(1)
            v = slope * mp.mpc(w) + intercept
            return complex(v) if abs(v.real) < 1e12 else v
        return self.map(complex(w))

    def inverse(self, u):
        if isinstance(u, (mp.mpc, mp.mpf)):
            return self.inverse_log(mp.log(u))
        u = complex(u)
        if u.real <= 0 and u.imag == 0:
            raise DomainError("psi^{-1} needs a point of the right half-plane")
        return self.inverse_log(np.log(u))

    def derivative(self, v):
        # psi' = psi / f'(f^{-1}(v))
        w = self.strip_of(v)
        return np.exp(w - complex(self.shift, math.pi / 2)) / complex(self.map.deriv(w))

    def contains(self, v):
        x, y = mp.mpc(v).real, mp.mpc(v).imag
        if x <= 0:
            return False
        rho = self.profile.rho(float(x)) if x < self.x_max else self.channel_half_width
        return abs(float(y)) < rho

    def chain_check(self):
        """Pairs (log beta_j, log psi(x_{j+1}), 8 log beta_{j+1}) for kept breakpoints."""
        rows = []
        for j in range(self.J):
            x = self.profile.breakpoints[j + 1]
            lp = self.log_forward(x).real
            rows.append((float(self.profile.log_betas[j]), lp, 8 * float(self.profile.log_betas[j + 1])))
        return rows


def map_v_to_halfplane(profile, accuracy=1e-6, truncate=None):
    if accuracy < 1e-12:
        raise DomainError("accuracy below the practical floor")
    return VMap(profile, accuracy, truncate)
