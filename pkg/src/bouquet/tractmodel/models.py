"""Logarithmic tract models: base tracts, their 2 pi i translates and the
maps onto the target half-plane H_Q = {Re > Q}.

Three built-in models:

exp          F(w) = e^w + ln a on {Re e^w > ln(L/a)}
hook         T_0 = {Re > 4, |Im| < pi/2} with F_0 = 5 sinh(z - 4)/sinh 1, and
             hooked tracts T_n = phi_n(V) with F_n = 5 psi(phi_n^{-1})
hook_strips  T_0 plus half-strips S_n inside the hairpin tongue bands
"""
import cmath
import functools
import math

import mpmath as mp
import numpy as np
from scipy.optimize import brentq
from scipy.spatial.distance import pdist

from ..conformal.hook import Anchored, BlockCoord, HookSequences, hook_geometry, hooked_tract_map, f0_mp
from ..conformal.vdomain import VMap, normalize_intervals, v_profile
from ..errors import (AccuracyError, BouquetError, DisjointTypeError, DomainError, NotInDomainError,
                      PrecisionError, SpecError)
from .address import TractRef, base_name
from .points import (EVAL_LIMIT, TWO_PI, demote, distance, imag_part, is_mp, log_point, real_part,
                     to_complex, translate, value)

PI = math.pi
SINH1 = math.sinh(1.0)


class ExpTract:
    """{w : Re e^w > tau} with F(w) = e^w + ln a."""

    name = 0

    def __init__(self, a, L):
        self.log_a = math.log(a)
        self.tau = math.log(L / a)

    def contains(self, z, seqs=None):
        z = value(z)
        x, y = float(mp.mpc(z).real), float(mp.mpc(z).imag)
        if abs(y) >= PI / 2:
            return False
        if x > 700:
            return True
        return math.exp(x) * math.cos(y) > self.tau

    def forward(self, z, seqs=None):
        z = value(z)
        if is_mp(z) or complex(z).real > 700:
            if mp.mpc(z).real > EVAL_LIMIT:
                raise PrecisionError("exp of a real part beyond %g" % EVAL_LIMIT)
            return demote(mp.exp(mp.mpc(z)) + self.log_a)
        return cmath.exp(z) + self.log_a

    def inverse(self, zeta, seqs=None):
        zeta = value(zeta)
        if is_mp(zeta):
            return demote(mp.log(mp.mpc(zeta) - self.log_a))
        return cmath.log(complex(zeta) - self.log_a)

    def derivative(self, z, seqs=None):
        z = value(z)
        if is_mp(z) or complex(z).real > 700:
            return demote(mp.exp(mp.mpc(z)))
        return cmath.exp(z)

    def inf_re(self):
        return math.log(self.tau)

    def boundary_samples(self, count=41):
        ys = np.linspace(-PI / 2, PI / 2, count + 2)[1:-1]
        return [complex(math.log(self.tau / math.cos(y)), y) for y in ys]

    def sublevel_hull(self, alpha, count=60):
        """Points whose convex hull is {z in closure : Re z <= alpha}."""
        alpha = float(alpha)
        if alpha <= self.inf_re():
            return np.zeros(0, dtype=complex)
        y_top = math.acos(min(1.0, self.tau * math.exp(-alpha)))
        ys = np.linspace(-y_top, y_top, count)
        curve = np.log(self.tau / np.cos(ys)) + 1j * ys
        return np.concatenate([curve, alpha + 1j * ys])


class HalfStripT0:
    """T_0 = {Re > 4, |Im| < pi/2} with F_0(z) = 5 sinh(z - 4)/sinh 1."""

    name = 0

    def contains(self, z, seqs=None):
        return real_part(z, seqs) > 4 and abs(imag_part(z)) < PI / 2

    def forward(self, z, seqs=None):
        if isinstance(z, Anchored) and z.label is not None:
            k, d = z.index, mp.mpc(z.offset)
            s = seqs[z.label]
            if k + 1 < len(s):
                off = (10 / mp.sinh(1)) * mp.cosh(s[k] - 4 + d / 2) * mp.sinh(d / 2)
                return Anchored(z.label, k + 1, demote(off))
            if mp.re(s[k] + d) > EVAL_LIMIT:
                raise PrecisionError("sinh of a real part beyond %g" % EVAL_LIMIT)
            return demote(f0_mp(s[k] + d))
        z = value(z, seqs)
        if is_mp(z) or abs(complex(z).real) > 700:
            if mp.mpc(z).real > EVAL_LIMIT:
                raise PrecisionError("sinh of a real part beyond %g" % EVAL_LIMIT)
            return demote(f0_mp(mp.mpc(z)))
        return 5.0 * cmath.sinh(z - 4.0) / SINH1

    def inverse(self, zeta, seqs=None):
        if isinstance(zeta, Anchored) and zeta.label is not None and zeta.index >= 1:
            # asinh(U + d) - asinh(U) without cancellation; U = seq_k sinh(1)/5
            k = zeta.index
            s = seqs[zeta.label]
            U = s[k] * mp.sinh(1) / 5
            d = mp.mpc(zeta.offset) * mp.sinh(1) / 5
            S0 = mp.sqrt(U * U + 1)
            S1 = mp.sqrt((U + d) ** 2 + 1)
            delta = mp.log1p((d + (2 * U * d + d * d) / (S1 + S0)) / (U + S0))
            # offsets below double range stay mpc so distances to the anchor survive
            return Anchored(zeta.label, k - 1, delta if 0 < abs(delta) < 1e-300 else demote(delta))
        zeta = value(zeta, seqs)
        if is_mp(zeta):
            return demote(4 + mp.asinh(mp.mpc(zeta) * mp.sinh(1) / 5))
        return 4.0 + cmath.asinh(complex(zeta) * SINH1 / 5.0)

    def derivative(self, z, seqs=None):
        z = value(z, seqs)
        if is_mp(z) or abs(complex(z).real) > 700:
            return demote(5 * mp.cosh(mp.mpc(z) - 4) / mp.sinh(1))
        return 5.0 * cmath.cosh(z - 4.0) / SINH1

    def inf_re(self):
        return 4.0

    def boundary_samples(self, count=41):
        xs = 4.0 + np.logspace(-3, 1.5, count // 2)
        ys = np.linspace(-PI / 2, PI / 2, count // 2 + 2)[1:-1]
        return [complex(x, s * PI / 2) for x in xs for s in (-1, 1)] + [complex(4.0, y) for y in ys]

    def sublevel_hull(self, alpha, count=2):
        alpha = float(alpha)
        if alpha <= 4.0:
            return np.zeros(0, dtype=complex)
        return np.array([complex(4, -PI / 2), complex(4, PI / 2), complex(alpha, -PI / 2), complex(alpha, PI / 2)])


class HookedTract:
    """T_n = phi_n(V) with F_n = 5 psi(phi_n^{-1}(z)).

    Strip points near the hairpin are BlockCoord; for n >= 3 plain strip
    coordinates there are not representable and such queries raise
    PrecisionError.
    """

    def __init__(self, n, hook, vmap):
        self.name = n
        self.n = n
        self.hook = hook
        self.vmap = vmap
        self.geom = hook.geom
        self.log5 = math.log(5.0)

    def _in_v(self, v):
        if isinstance(v, BlockCoord):
            # far along the channel: Re v = S - 2 Re wb exceeds x_max by construction
            return abs(PI - 2 * float(mp.mpc(v.wb).imag)) < self.vmap.channel_half_width
        return self.vmap.contains(v)

    def contains(self, z, seqs=None):
        g = self.geom
        y = imag_part(z)
        if not (g.y_bot < y < g.y_top):
            return False
        try:
            if real_part(z, seqs) <= seqs.a[self.n]:
                return False
            return self._in_v(self.hook.inverse(z))
        except (BouquetError, ValueError, ZeroDivisionError, OverflowError):
            return False

    def _log_psi(self, v):
        if isinstance(v, BlockCoord):
            if not self.hook.resolvable:
                raise PrecisionError("F_%d near the hairpin is beyond representable range" % self.n)
            v = self.hook.strip_value(v)
        return self.vmap.log_forward(v)

    def forward(self, z, seqs=None):
        lg = self._log_psi(self.hook.inverse(z))
        if abs(mp.mpc(lg).real) > EVAL_LIMIT:
            raise PrecisionError("F_%d value beyond evaluable range" % self.n)
        if is_mp(lg) or complex(lg).real > 700:
            return demote(5 * mp.exp(mp.mpc(lg)))
        return 5.0 * cmath.exp(lg)

    def inverse(self, zeta, seqs=None):
        lg = log_point(zeta, seqs) - self.log5
        if not is_mp(lg):
            lg = complex(lg)
        v = self.vmap.inverse_log(lg)
        return self.hook.forward(v)

    def derivative(self, z, seqs=None):
        v = self.hook.inverse(z)
        lg = self._log_psi(v)
        w = self.vmap.strip_of(self.hook.strip_value(v) if isinstance(v, BlockCoord) else v)
        fprime = self.vmap.map.end(1)[1] if is_mp(w) else complex(self.vmap.map.deriv(complex(w)))
        log_d = self.log5 + mp.mpc(lg) - mp.log(fprime) - mp.log(complex(self.hook.derivative(v)))
        return demote(mp.exp(log_d))

    def inf_re(self):
        return self.hook.seqs.a[self.n]

    def boundary_samples(self, count=41):
        """Images of boundary points of V (upper and lower edges, left end)."""
        xs = np.concatenate([np.linspace(0.0, 1.0, count // 4), np.linspace(1.0, self.vmap.x_max + 2.0, count // 4)])
        out = []
        for x in xs:
            r = self.vmap.profile.rho(x) if x < self.vmap.x_max else self.vmap.channel_half_width
            for s in (-1, 1):
                out.append(self.hook.forward(complex(x, s * r)))
        return out

    def sublevel_hull(self, alpha, count=2):
        """Corners of the hooked region clipped at Re <= alpha, as offsets from a_n.

        The hooked region contains T_n, so this overestimates the diameter.
        """
        g = self.geom
        a = self.hook.seqs.a[self.n]
        u = alpha - a
        if u <= 0:
            return np.zeros(0, dtype=complex)
        u = float(u)
        lower = min(u, float(self.hook.seqs.gap(self.n)))
        pts = [0j + 1j * g.y_top, 0j + 1j * g.y_bot, complex(u, g.y_top), complex(u, g.y_up_bot),
               complex(min(u, 1.0), g.y_up_bot), complex(min(u, 1.0), g.y_low_top),
               complex(lower, g.y_low_top), complex(lower, g.y_bot)]
        return np.array(pts)


class StripTract:
    """S_n = {x > a_n + 1} inside the tongue band of the n-th hairpin.

    G_n(z) = X sinh(k (z - x0 - i c))/sinh(k) + i c with k = pi/(2h),
    X = a_{n+1} + 2: the half-strip map onto H with G_n(p_n) = p_{n+1},
    p_n = a_n + 2 + i c, and a positive derivative at p_n.
    """

    def __init__(self, n, seqs):
        g = hook_geometry(n)
        self.name = "S%d" % n
        self.n = n
        self.geom = g
        self.center = 0.5 * (g.y_low_top + g.y_up_bot)
        self.h = 0.5 * (g.y_up_bot - g.y_low_top)
        self.k = PI / (2 * self.h)
        self.seqs = seqs

    def contains(self, z, seqs=None):
        if abs(imag_part(z) - self.center) >= self.h:
            return False
        return real_part(z, seqs) > self.seqs.a[self.n] + 1

    def _u(self, z):
        # offset from a_n
        if isinstance(z, Anchored) and z.label == "a" and z.index == self.n:
            return mp.mpc(z.offset)
        return mp.mpc(value(z, self.seqs)) - self.seqs.a[self.n]

    def forward(self, z, seqs=None):
        u = self._u(z)
        X = self.seqs.a[self.n + 1] + 2
        arg = self.k * (u - 1 - 1j * self.center)
        if arg.real > EVAL_LIMIT:
            raise PrecisionError("G_%d value beyond evaluable range" % self.n)
        return demote(X * mp.sinh(arg) / mp.sinh(self.k) + 1j * self.center)

    def inverse(self, zeta, seqs=None):
        X = self.seqs.a[self.n + 1] + 2
        if isinstance(zeta, Anchored) and zeta.label == "a" and zeta.index == self.n + 1:
            r = 1 + (mp.mpc(zeta.offset) - 2 - 1j * self.center) / X
        else:
            r = (mp.mpc(value(zeta, self.seqs)) - 1j * self.center) / X
        u = 1 + 1j * self.center + mp.asinh(r * mp.sinh(self.k)) / self.k
        return Anchored("a", self.n, demote(u))

    def derivative(self, z, seqs=None):
        u = self._u(z)
        X = self.seqs.a[self.n + 1] + 2
        return demote(X * self.k * mp.cosh(self.k * (u - 1 - 1j * self.center)) / mp.sinh(self.k))

    def inf_re(self):
        return self.seqs.a[self.n] + 1

    def boundary_samples(self, count=41):
        xs = 1.0 + np.logspace(-3, 0.5, count // 2)
        out = [Anchored("a", self.n, complex(x, self.center + s * self.h)) for x in xs for s in (-1, 1)]
        ys = np.linspace(-self.h, self.h, 5)
        return out + [Anchored("a", self.n, complex(1.0, self.center + y)) for y in ys]

    def sublevel_hull(self, alpha, count=2):
        u = alpha - (self.seqs.a[self.n] + 1)
        if u <= 0:
            return np.zeros(0, dtype=complex)
        u = float(u)
        lo, hi = self.center - self.h, self.center + self.h
        return np.array([complex(1, lo), complex(1, hi), complex(1 + u, lo), complex(1 + u, hi)])


class LogModel:
    """A disjoint-type model: base tracts, their 2 pi i m translates, target H_Q.

    lam bounds |(F_T^{-1})'| on the convex region {Re > contraction_abscissa}
    that contains every tract; anchor_point lies there.
    """

    def __init__(self, kind, tracts, Q, lam, contraction_abscissa, base_point, anchor_point,
                 growth, endpoint_potential, params, seqs=None):
        self.kind = kind
        self.tracts = {t.name: t for t in tracts}
        self.base_ids = [t.name for t in tracts]
        self.Q = float(Q)
        self.lam = float(lam)
        self.contraction_abscissa = float(contraction_abscissa)
        self.base_point = base_point
        self.anchor_point = anchor_point
        self.growth = growth
        self.endpoint_potential = endpoint_potential
        self.params = dict(params)
        self.seqs = seqs
        self.period = TWO_PI
        self.report = None

    def __repr__(self):
        return "LogModel(%s, tracts=%s)" % (self.kind, [base_name(b) for b in self.base_ids])

    # point helpers bound to this model's anchor sequences
    def value(self, z):
        return value(z, self.seqs)

    def re(self, z):
        return real_part(z, self.seqs)

    def distance(self, z, w):
        return distance(z, w, self.seqs)

    def tract(self, ref):
        try:
            return self.tracts[ref.base]
        except KeyError:
            raise DomainError("unknown tract %r for the %s model" % (base_name(ref.base), self.kind)) from None

    # dynamics
    def ref_of(self, z):
        """The tract containing z; NotInDomainError when there is none."""
        y = imag_part(z)
        if not abs(y) < EVAL_LIMIT:
            raise PrecisionError("imaginary part %g is too large to reduce mod 2 pi" % y)
        m = math.floor((y + PI / 2) / TWO_PI)
        zr = translate(z, -TWO_PI * m * 1j)
        for name, t in self.tracts.items():
            if t.contains(zr, self.seqs):
                return TractRef(name, m)
        raise NotInDomainError("point is not in any tract of the %s model" % self.kind)

    def contains(self, ref, z):
        return self.tract(ref).contains(translate(z, -TWO_PI * ref.offset * 1j), self.seqs)

    def forward(self, z):
        ref = self.ref_of(z)
        t = self.tracts[ref.base]
        return t.forward(translate(z, -TWO_PI * ref.offset * 1j), self.seqs), ref

    def derivative(self, z):
        ref = self.ref_of(z)
        return self.tracts[ref.base].derivative(translate(z, -TWO_PI * ref.offset * 1j), self.seqs)

    def inverse_branch(self, ref, zeta):
        if not self.re(zeta) > self.Q:
            raise DomainError("inverse branches are defined on Re > %g" % self.Q)
        z = self.tract(ref).inverse(zeta, self.seqs)
        return translate(z, TWO_PI * ref.offset * 1j)


# model assembly

def _exp_model(a=0.25, L=1.0):
    a, L = float(a), float(L)
    if not 0 < a < 1 / math.e:
        raise SpecError("exp model needs 0 < a < 1/e, got %g" % a)
    if not L > 0:
        raise SpecError("exp model needs L > 0")
    t = ExpTract(a, L)
    if not t.tau > 1:
        raise SpecError("ln(L/a) must exceed 1 for the tracts to lie right of the imaginary axis")
    Q = math.log(L)
    x_left = math.log(t.tau)
    if not x_left > Q:
        raise DisjointTypeError("tract closure leaves H_Q: inf Re = %g <= Q = %g" % (x_left, Q))
    # on {Re > ln tau}: |(F^{-1})'(z)| = 1/|z - ln a| <= 1/(ln tau - ln a)
    lam = 1.0 / (x_left - t.log_a)
    if not lam < 1:
        raise SpecError("the inverse branches are not contracting for these parameters")
    base = complex(Q + 1, 0)
    anchor = base if base.real > x_left else complex(x_left + 1, 0)

    def growth(x):
        x = mp.mpf(x)
        return mp.exp(x) + t.log_a

    def g(x):
        return math.exp(x) + t.log_a - x

    endpoint = brentq(g, x_left, 50.0, xtol=1e-15, rtol=1e-15) if g(x_left) < 0 else None
    return LogModel("exp", [t], Q, lam, x_left, base, anchor, growth, endpoint, {"a": a, "L": L})


@functools.lru_cache(maxsize=8)
def hook_sequences(a=6.0, count=3):
    return HookSequences(a=a, count=count)


def hook_intervals(seqs, offsets=2, levels=None):
    """The sets J_{k,m} = ([max(5, a_k/10), 100 a_{k+1}] + 2 pi i m)/5 reduced to
    modulus intervals [min|z|, max|z|]."""
    levels = len(seqs.a) if levels is None else levels
    out = []
    for k in range(levels):
        lo = max(mp.mpf(1), seqs.a[k] / 50)
        log_hi = mp.log(20) + seqs.log_a[k + 1]
        for m in range(-offsets, offsets + 1):
            im = 2 * mp.pi * m / 5
            out.append((mp.sqrt(lo ** 2 + im ** 2), mp.exp(log_hi) * mp.sqrt(1 + (im * mp.exp(-log_hi)) ** 2)))
    return out


@functools.lru_cache(maxsize=4)
def hook_vmap(a=6.0, delta=1.0, harmonic_constant=10.0, accuracy=1e-6):
    """psi for the hook tracts; the strip half-width target is delta/(2(2C + 3))."""
    seqs = hook_sequences(a, 3)
    d = delta / (2.0 * (2.0 * harmonic_constant + 3.0))
    return VMap(v_profile(d, normalize_intervals(hook_intervals(seqs))), accuracy=accuracy)


@functools.lru_cache(maxsize=8)
def hook_map(n, a=6.0, accuracy=1e-3):
    return hooked_tract_map(n, accuracy, seqs=hook_sequences(a, 3))


def _hook_common(a):
    seqs = hook_sequences(a, 3)

    def growth(x):
        return f0_mp(mp.mpf(x))

    return seqs, growth


def _hook_model(n_max=3, eps=1e-3, a=6.0, delta=1.0, harmonic_constant=10.0):
    n_max = int(n_max)
    if not 0 <= n_max <= 3:
        raise SpecError("hook model supports 0 <= n_max <= 3")
    if float(a) != 6.0 and n_max > 0:
        raise SpecError("hooked tracts are tabulated for a = 6 only")
    seqs, growth = _hook_common(a)
    tracts = [HalfStripT0()]
    if n_max:
        vmap = hook_vmap(a, delta, harmonic_constant)
        for n in range(1, n_max + 1):
            tracts.append(HookedTract(n, hook_map(n, a, eps), vmap))
    params = {"n_max": n_max, "eps": eps, "a": a, "delta": delta, "harmonic_constant": harmonic_constant}
    return LogModel("hook", tracts, 0.0, 0.5, 4.0, complex(1, 0), complex(5, 0), growth, 5.0, params, seqs)


def _strips_model(n_max=2, eps=1e-3, a=6.0):
    n_max = int(n_max)
    if not 0 <= n_max <= 2:
        raise SpecError("hook_strips model supports 0 <= n_max <= 2")
    seqs, growth = _hook_common(a)
    tracts = [HalfStripT0()] + [StripTract(n, seqs) for n in range(1, n_max + 1)]
    params = {"n_max": n_max, "eps": eps, "a": a}
    return LogModel("hook_strips", tracts, 0.0, 0.5, 4.0, complex(1, 0), complex(5, 0), growth, 5.0, params, seqs)


_BUILDERS = {"exp": _exp_model, "hook": _hook_model, "hook_strips": _strips_model}
_KEYS = {"exp": {"a", "L"}, "hook": {"n_max", "eps", "a", "delta", "harmonic_constant"},
         "hook_strips": {"n_max", "eps", "a"}}


def parse_spec(spec):
    """dict, or a string like "exp" / "hook:n_max=2,eps=1e-3"."""
    if isinstance(spec, dict):
        spec = dict(spec)
        kind = spec.pop("model", spec.pop("kind", None))
    else:
        kind, _, rest = str(spec).partition(":")
        spec = {}
        for item in filter(None, (s.strip() for s in rest.split(","))):
            k, eq, v = item.partition("=")
            if not eq:
                raise SpecError("malformed model parameter %r" % item)
            spec[k.strip()] = v.strip()
    kind = (kind or "").strip()
    if kind not in _BUILDERS:
        raise SpecError("unknown model %r (expected one of %s)" % (kind, ", ".join(sorted(_BUILDERS))))
    unknown = set(spec) - _KEYS[kind]
    if unknown:
        raise SpecError("unknown %s parameters: %s" % (kind, ", ".join(sorted(unknown))))
    out = {}
    for k, v in spec.items():
        try:
            out[k] = int(v) if k == "n_max" else float(v)
        except (TypeError, ValueError):
            raise SpecError("parameter %s=%r is not a number" % (k, v)) from None
    return kind, out


def build_model(spec, check=True):
    """Assemble a model from a spec and attach a sampled invariant report."""
    kind, params = parse_spec(spec)
    try:
        model = _BUILDERS[kind](**params)
    except AccuracyError:
        raise
    if check:
        model.report = model_report(model)
        if not model.report["disjoint_type"]["passed"]:
            raise DisjointTypeError("sampled tract closure leaves H_Q")
    return model


# sampled invariants

def _target_samples(Q):
    xs = Q + np.array([0.05, 0.5, 1.0, 3.0, 10.0, 50.0])
    ys = np.array([-20.0, -3.0, 0.0, 1.0, 7.5])
    return [complex(x, y) for x in xs for y in ys]


def model_report(model, tol=1e-6):
    """Disjoint type, pairwise disjointness and round trips, all sampled."""
    seqs = model.seqs
    closure_min = math.inf
    overlaps = 0
    checked = 0
    for name, t in model.tracts.items():
        pts = t.boundary_samples()
        for z in pts:
            closure_min = min(closure_min, float(real_part(z, seqs)) if real_part(z, seqs) < 1e300 else math.inf)
        for other_name, other in model.tracts.items():
            for m in (-1, 0, 1):
                if other_name == name and m == 0:
                    continue
                for z in pts[:: max(1, len(pts) // 8)]:
                    checked += 1
                    if other.contains(translate(z, -TWO_PI * m * 1j), seqs):
                        overlaps += 1
    worst = 0.0
    for name, t in model.tracts.items():
        for zeta in _target_samples(model.Q):
            z = t.inverse(zeta, seqs)
            back = t.forward(z, seqs)
            worst = max(worst, abs(complex(back) - zeta) / max(1.0, abs(zeta)))
    eps = float(model.params.get("eps", 1e-12))
    return {
        "disjoint_type": {"passed": closure_min > model.Q, "min_closure_re": closure_min, "Q": model.Q},
        "pairwise_disjoint": {"passed": overlaps == 0, "overlaps": overlaps, "checked": checked},
        "round_trip": {"passed": worst <= max(10 * eps, tol), "max_relative_error": worst},
    }


def expansion_samples(model, depth=3, count=20, seed=0):
    """(z, |F'(z)|, Re F(z)) at traced points of depth-`depth` enclosures."""
    from .dynamics import trace_point
    from .address import random_address, default_rng
    rng = default_rng(seed)
    out = []
    for _ in range(10 * count):
        if len(out) == count:
            break
        addr = random_address(rng, model.base_ids, max_offset=2)
        z, _ = trace_point(model, addr, depth)
        try:
            zeta, _ = model.forward(z)
            d = model.derivative(z)
        except (PrecisionError, NotInDomainError):
            # image beyond the evaluable range, or a pullback that sits on a
            # tract edge to working precision
            continue
        out.append((z, float(abs(mp.mpc(d))), float(model.re(zeta))))
    return out
