"""The hooked regions and their normalized maps from the strip {|Im| < pi}.

For n >= 1 the region is a hairpin made of three axis-parallel pieces,
with heights measured by y/pi - 1:

    upper band   x > a_n,            (1/(3n+1), 1/(3n))
    connector    a_n < x < a_n + 1,  [1/(3n+2), 1/(3n+1)]
    lower band   a_n < x < b_n,      (1/(3n+3), 1/(3n+2))

The map is assembled from two charts that agree to within exp(-s/2) on the
long lower band, where s (in strip units) exceeds 2000 for every n >= 1:

* a tip chart near the closed end x = b_n, given in closed form by
  P - (2 w_B/pi) arccosh(exp(w/2)) on {0 < Im w < pi};
* a block chart around x in [a_n, a_n + 1] (the turn of the hairpin), a
  four-vertex Schwarz-Christoffel map with a channel at each end.

Because a_n and b_n are astronomically large for n >= 2, image points are
returned as offsets from an exact anchor, a_n or b_n (see Anchored).
"""
import math
from collections import namedtuple

import mpmath as mp
import numpy as np
from scipy.optimize import brentq, least_squares

from ..errors import AccuracyError, DomainError, GeodesicError, PrecisionError
from .numeric import NumericMap, segment_distance
from .schwarz import SCMap, StripSC

PI = math.pi
LN2 = math.log(2.0)
SINH1 = math.sinh(1.0)
DERIVATIVE_BOUND = 1.0 / (2.0 * math.sqrt(2.0))
DEFAULT_SEED = 6


class Anchored(namedtuple("Anchored", "label index offset")):
    """The point seq[index] + offset, with seq the a- or b-sequence.

    label is "a", "b" or None; with None the offset is the point itself.
    """

    __slots__ = ()

    def value(self, seqs):
        if self.label is None:
            return self.offset
        return seqs[self.label][self.index] + self.offset


def f0_mp(x):
    x = mp.mpf(x) if not isinstance(x, (mp.mpf, mp.mpc)) else x
    return 5 * mp.sinh(x - 4) / mp.sinh(1)


def log_f0_mp(x):
    """log(5 sinh(x - 4)/sinh 1) for real x > 4, usable when the value overflows."""
    x = mp.mpf(x)
    t = x - 4
    tail = mp.log1p(-mp.exp(-2 * t)) if t < 1e6 else 0
    return t + mp.log(mp.mpf(5) / (2 * mp.sinh(1))) + tail


class HookSequences:
    """a_k = F0^k(a), b_k = F0^k(a + 2) as exact-enough mpf values.

    Entries are computed with enough working precision that the next
    iterate keeps 30 significant digits; beyond that only logarithms are
    available (log_a, log_b extend one step further).
    """

    def __init__(self, a=DEFAULT_SEED, count=3, digits=30):
        a = mp.mpf(a)
        b = a + 2
        if a < 6:
            raise DomainError("the seed must satisfy a >= 6")
        if not b < f0_mp(a):
            raise DomainError("the seed must satisfy a + 2 < F0(a)")
        self.digits = digits
        self.a, self.b = [a], [b]
        for _ in range(count):
            self.a.append(self._step(self.a[-1]))
            self.b.append(self._step(self.b[-1]))
        self.log_a = [mp.log(x) for x in self.a] + [log_f0_mp(self.a[-1])]
        self.log_b = [mp.log(x) for x in self.b] + [log_f0_mp(self.b[-1])]

    def _step(self, x):
        mag = max(0, int(mp.log10(x)) + 1) if x > 1 else 0
        with mp.workdps(self.digits + mag + 10):
            return +f0_mp(x)

    def __getitem__(self, label):
        return self.a if label == "a" else self.b

    def gap(self, n):
        """b_n - a_n with full precision (just b_n when a_n is negligible)."""
        mag = int(mp.log10(self.b[n])) + 1
        if mag > 10 * self.digits + mp.log10(self.a[n]):
            return self.b[n]
        with mp.workdps(self.digits + mag + 10):
            return self.b[n] - self.a[n]


HookGeometry = namedtuple("HookGeometry", "n y_bot y_low_top y_up_bot y_top w_lower gap w_upper height")


def hook_geometry(n):
    if n < 1:
        raise DomainError("hooked regions exist for n >= 1")
    lv = [PI * (1 + 1.0 / d) for d in (3 * n + 3, 3 * n + 2, 3 * n + 1, 3 * n)]
    w_lower = PI / ((3 * n + 2) * (3 * n + 3))
    gap = PI / ((3 * n + 1) * (3 * n + 2))
    w_upper = PI / (3 * n * (3 * n + 1))
    height = PI / (3 * n) - PI / (3 * n + 3)
    return HookGeometry(n, lv[0], lv[1], lv[2], lv[3], w_lower, gap, w_upper, height)


# tip chart: closed end of the lower band, frame relative to (b_n, 0)

def _arccosh_exp_half(w):
    """arccosh(exp(w/2)) for 0 <= Im w <= pi, overflow-free."""
    if isinstance(w, mp.mpc) or abs(w.real) > 700:
        w = mp.mpc(w)
        if w.real > 0:
            return w / 2 + mp.log(1 + mp.sqrt(1 - mp.exp(-w)))
        return mp.acosh(mp.exp(w / 2))
    if w.real > 0:
        return w / 2 + np.log(1 + np.sqrt(1 - np.exp(-w)))
    return complex(np.arccosh(np.exp(w / 2)))


class TipChart:
    def __init__(self, geom):
        self.geom = geom
        self.k = 2.0 * geom.w_lower / PI
        self.corner = 1j * geom.y_low_top

    def forward(self, w):
        return self.corner - self.k * _arccosh_exp_half(w)

    def inverse(self, offset):
        A = (self.corner - offset) / self.k
        if isinstance(A, mp.mpc) or abs(complex(A).real) > 300:
            A = mp.mpc(A)
            return 2 * (A - mp.log(2) + mp.log1p(mp.exp(-2 * A)))
        A = complex(A)
        return complex(2 * np.log(np.cosh(A)))

    def derivative(self, w):
        w = complex(w)
        if w.real > 0:
            return -(self.k / 2) / np.sqrt(1 - np.exp(-w))
        x = np.exp(w / 2)
        return -(self.k / 2) * x / (np.sqrt(x - 1) * np.sqrt(x + 1))


class BlockChart:
    """Hairpin turn: strip map with the lower channel at +inf and the upper at -inf.

    Frame relative to (a_n, y_bot).  Bottom edge = outer boundary with
    corners (0, H) and (0, 0); top edge = the tongue with corners
    (1, w_B + g) and (1, w_B).
    """

    def __init__(self, geom, offset=1.0):
        self.geom = geom
        self.offset = float(offset)
        self._solve()

    def _sc(self, x):
        g = self.geom
        eps, gam = math.exp(x[0]), math.exp(x[1])
        u = -eps / 2 + math.log(g.w_upper / g.w_lower)
        p = [-eps, 0.0, u - gam, u + gam]
        top = [False, False, True, True]
        betas = [-0.5, -0.5, 0.5, 0.5]
        return StripSC(p, top, betas, 0.0, math.log(g.w_lower / PI))

    def _residual(self, x):
        sc = self._sc(x)
        side = sc.quad(sc.vertex[2], sc.vertex[3], 2, 3)
        reach = sc.quad(sc.vertex[1], sc.vertex[3], 1, 3)
        return [math.log(abs(side) / self.geom.gap), reach.real - self.offset]

    def _solve(self):
        g = self.geom
        best = None
        for e0 in (PI * self.offset / g.height, 0.5 * PI * self.offset / g.height):
            for c0 in (0.0, -1.0, 1.0):
                x0 = [-e0, math.log(PI * g.gap / (2 * g.height)) + c0]
                try:
                    sol = least_squares(self._residual, x0, method="lm", xtol=1e-15, ftol=1e-15, gtol=1e-15)
                except (ValueError, FloatingPointError, OverflowError):
                    continue
                r = float(np.max(np.abs(sol.fun)))
                if best is None or r < best[0]:
                    best = (r, sol.x)
            if best is not None and best[0] < 1e-12:
                break
        self.residual = best[0]
        self.params = best[1]
        self.sc = self._sc(best[1])
        self.map = SCMap(self.sc, anchor_index=1, anchor_image=0j)
        kind, slope, intercept, _ = self.map.end(1)
        self.lower_intercept = complex(intercept)
        kind, slope_u, intercept_u, _ = self.map.end(-1)
        self.upper_slope = complex(slope_u)
        self.upper_intercept = complex(intercept_u)
        self.slope = complex(slope)

    def polygon(self, reach=50.0):
        g = self.geom
        outer = [complex(reach, g.height), complex(0, g.height), 0j, complex(reach, 0)]
        tongue = [complex(reach, g.w_lower + g.gap), complex(self.offset, g.w_lower + g.gap),
                  complex(self.offset, g.w_lower), complex(reach, g.w_lower)]
        return outer, tongue

    def forward(self, wb):
        """Offset from (a_n, 0)."""
        base = 1j * self.geom.y_bot
        if isinstance(wb, mp.mpc) or abs(complex(wb).real) > 1e6:
            wb = mp.mpc(wb)
            if wb.real > 0:
                return base + self.slope * wb + self.lower_intercept
            return base + self.upper_slope * wb + self.upper_intercept
        return base + self.map(complex(wb))

    def inverse(self, offset):
        z = offset - 1j * self.geom.y_bot
        if isinstance(z, mp.mpc) or abs(complex(z).real) > 1e5:
            z = mp.mpc(z)
            if z.imag < self.geom.w_lower + self.geom.gap / 2:
                w = (z - self.lower_intercept) / self.slope
            else:
                w = (z - self.upper_intercept) / self.upper_slope
            return mp.mpc(w.real, min(max(w.imag, 0), PI))
        return self.map.inverse(complex(z))

    def derivative(self, wb):
        if abs(complex(wb).real) > 1e6:
            return self.slope if complex(wb).real > 0 else self.upper_slope
        return complex(self.map.deriv(complex(wb)))


class BlockCoord(namedtuple("BlockCoord", "wb")):
    """A strip point given by its block-chart coordinate wb.

    Its strip coordinate is S + i pi - 2 wb with S = HookMap.turn_origin, a
    number that cannot be stored to unit resolution once n >= 3.
    """

    __slots__ = ()


MAX_DPS = 200


class HookMap(NumericMap):
    """phi_n from {|Im z| < pi} onto the hooked region, normalized by
    phi(-inf) = (b_n, y_bot), phi(+inf) = inf and phi(1) on the central
    geodesic at real part b_n - 1.

    Strip points are complex/mpc numbers or BlockCoord; images are Anchored.
    """

    def __init__(self, n, accuracy=1e-3, seqs=None):
        self.n = int(n)
        self.geom = hook_geometry(self.n)
        self.seqs = seqs if seqs is not None else HookSequences(count=max(3, self.n))
        self.tip = TipChart(self.geom)
        self.block = BlockChart(self.geom)
        self._normalize()
        self.accuracy = accuracy
        self.boundary_accuracy = self.measure_boundary()
        if self.boundary_accuracy > accuracy:
            raise AccuracyError(self.boundary_accuracy, accuracy, "hook map n=%d" % n)

    def _normalize(self):
        g = self.geom

        def target(x):
            return self.tip.forward(complex(x, PI / 2)).real + 1.0

        try:
            self.x_tip = brentq(target, -40.0, 400.0, xtol=1e-15, rtol=1e-15)
        except ValueError as exc:
            raise GeodesicError("central geodesic does not cross Re = b_n - 1") from exc
        zeta = self.tip.forward(complex(self.x_tip, PI / 2))
        if not zeta.imag < PI * (1 + 1.0 / (3 * self.n + 2)):
            raise GeodesicError("normalization point left the lower band")
        self.zeta = Anchored("b", self.n, zeta)
        gap = self.seqs.gap(self.n)
        self.resolvable = mp.log10(gap) < MAX_DPS - 30
        self.dps = int(min(MAX_DPS, max(30, mp.log10(gap) + 30)))
        with mp.workdps(self.dps):
            s_block = (PI / g.w_lower) * (gap - mp.mpf(self.block.lower_intercept.real)) - 2 * LN2
            self.s_block = +s_block
            self.turn_origin = 1 + 2 * (s_block - mp.mpf(self.x_tip))
            self.split = 1 + s_block - 2 * mp.mpf(self.x_tip)
        mid = s_block / 2
        # chart mismatch on the lower band decays like exp(-distance to either end)
        self.decoupling_error = float(g.w_lower * mp.exp(-mid + 10)) if mid < 1e4 else 0.0

    # coordinate changes
    def strip_value(self, z):
        """The strip coordinate as a number (approximate for BlockCoord when n >= 3)."""
        if isinstance(z, BlockCoord):
            with mp.workdps(self.dps):
                return self.turn_origin + mp.mpc(0, PI) - 2 * mp.mpc(z.wb)
        return z

    def potential(self, z):
        return mp.mpf(mp.mpc(self.strip_value(z)).real)

    def to_block(self, z):
        """BlockCoord of a plain strip point."""
        if isinstance(z, BlockCoord):
            return z
        if not self.resolvable:
            raise PrecisionError("strip coordinates near the hairpin of T_%d are not representable" % self.n)
        with mp.workdps(self.dps):
            wb = (self.turn_origin + mp.mpc(0, PI) - mp.mpc(z)) / 2
            return BlockCoord(complex(wb) if abs(wb.real) < 1e6 else wb)

    def _in_tip(self, z):
        if isinstance(z, BlockCoord):
            return False
        return mp.mpf(mp.mpc(z).real) < self.split

    def forward(self, z):
        if self._in_tip(z):
            w = self.x_tip + 0.5j * PI + (z - 1) / 2
            if not isinstance(w, mp.mpc):
                w = complex(w)
            return Anchored("b", self.n, self.tip.forward(w))
        wb = self.to_block(z).wb
        return Anchored("a", self.n, self.block.forward(wb))

    def inverse(self, point):
        """Strip point (complex, mpc or BlockCoord) of an image point."""
        if not isinstance(point, Anchored):
            point = self.anchor(point)
        if point.index != self.n or point.label is None:
            point = self.anchor(point.value(self.seqs))
        if point.label == "b":
            w = self.tip.inverse(point.offset)
            return 1 + 2 * (w - self.x_tip - 0.5j * PI)
        return BlockCoord(self.block.inverse(point.offset))

    def anchor(self, z):
        """Express a plain point of the region relative to the chart it belongs to."""
        g = self.geom
        a, b = self.seqs.a[self.n], self.seqs.b[self.n]
        if not self.resolvable:
            raise PrecisionError("plain coordinates in T_%d are not representable" % self.n)
        with mp.workdps(self.dps):
            z = mp.mpc(z)
            if z.imag >= g.y_low_top or z.real - a < (b - a) / 2:
                return Anchored("a", self.n, complex(z - a))
            return Anchored("b", self.n, complex(z - b))

    def derivative(self, z):
        if self._in_tip(z):
            w = self.x_tip + 0.5j * PI + (z - 1) / 2
            return self.tip.derivative(complex(w)) / 2
        return -self.block.derivative(self.to_block(z).wb) / 2

    # validation
    def boundary_samples(self, count=40):
        """Images of boundary points of the strip near both charts, with their target polylines."""
        g = self.geom
        xs = np.concatenate([-np.logspace(-3, 1.7, count)[::-1], [0.0], np.logspace(-3, 1.7, count)])
        tip_pts = np.array([self.tip.forward(complex(x, y)) for x in xs for y in (0.0, PI)])
        tip_poly = [complex(-60, g.y_low_top), 1j * g.y_low_top, 1j * g.y_bot, complex(-60, g.y_bot)]
        ws = set(np.concatenate([xs + p for p in self.block.sc.p]).tolist())
        blk = np.array([self.block.forward(complex(x, y)) for x in sorted(ws) for y in (0.0, PI)])
        outer, tongue = self.block.polygon(reach=200.0)
        shift = 1j * g.y_bot
        return (tip_pts, [tip_poly]), (blk, [[v + shift for v in outer], [v + shift for v in tongue]])

    def measure_boundary(self):
        err = 0.0
        for pts, polys in self.boundary_samples():
            d = np.min([segment_distance(pts, poly) for poly in polys], axis=0)
            err = max(err, float(d.max()))
        # every corner of the target is attained (Hausdorff in the other direction)
        corners = [self.block.map.images[k] for k in range(4)]
        outer, tongue = self.block.polygon()
        want = [outer[1], outer[2], tongue[1], tongue[2]]
        err = max(err, max(abs(c - t) for c, t in zip(corners, want)))
        return max(err, self.decoupling_error)

    def interior_grid(self, im_max=PI / 2, count=25):
        """Strip samples with |Im| <= im_max near the tip and around the hairpin turn."""
        ys = np.linspace(-im_max, im_max, 7)
        pts = [complex(x, y) for x in np.linspace(-30.0, 30.0, count) for y in ys]
        xb = self.turn_point()[0].wb.real
        pts += [BlockCoord(complex(xb + x, (PI - y) / 2)) for x in np.linspace(-15.0, 15.0, count) for y in ys]
        return pts

    def max_derivative(self, samples=None):
        samples = self.interior_grid() if samples is None else samples
        return max(abs(self.derivative(z)) for z in samples)

    def round_trip_error(self, samples):
        worst = 0.0
        for z in samples:
            back = self.inverse(self.forward(z))
            if isinstance(z, BlockCoord):
                # strip distance is twice the block-chart distance
                worst = max(worst, 2 * abs(complex(back.wb) - complex(z.wb)))
            else:
                worst = max(worst, abs(complex(back) - complex(z)))
        return worst

    def orientation_ok(self, samples):
        h = 1e-5
        for z in samples:
            if isinstance(z, BlockCoord):
                # strip z moves opposite to wb
                f = lambda d: self.forward(BlockCoord(z.wb - d / 2)).offset
            else:
                f = lambda d: self.forward(z + d).offset
            d1 = complex(f(h) - f(-h))
            d2 = complex(f(1j * h) - f(-1j * h))
            if not d1.real * d2.imag - d1.imag * d2.real > 0:
                return False
        return True

    def hair_point(self, s):
        """phi_n(s) for real s >= 1: the hair of the address T_n T_0 T_0 ..."""
        return self.forward(s)

    def turn_point(self):
        """Where the central geodesic crosses the middle of the connector.

        Returns (BlockCoord, Anchored image).
        """
        g = self.geom
        level = g.w_lower + g.gap / 2

        def height(x):
            return self.block.map(complex(x, PI / 2)).imag - level

        lo, hi = min(self.block.sc.p) - 20.0, max(self.block.sc.p) + 20.0
        xb = brentq(height, lo, hi, xtol=1e-14)
        wb = complex(xb, PI / 2)
        return BlockCoord(wb), Anchored("a", self.n, self.block.forward(wb))


def hooked_tract_map(n, accuracy=1e-3, seqs=None):
    return HookMap(n, accuracy, seqs)
