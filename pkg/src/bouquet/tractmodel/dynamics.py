"""Forward/inverse dynamics on a model: pullback tracing, hairs, orbits."""
import math
from collections import namedtuple

import mpmath as mp
import numpy as np
from scipy.spatial.distance import pdist

from ..contraction import ell
from ..errors import BouquetError, InadmissibleAddressError, NotInDomainError, PreconditionError, DomainError
from .address import TractRef
from .points import FLOAT_LIMIT, TWO_PI, demote, finite, translate

# relative float error allowance per pullback step
ROUNDING = 4e-16

Hair = namedtuple("Hair", "address samples depth")
HairSample = namedtuple("HairSample", "t z error_bound")


def forward(model, z):
    return model.forward(z)


def inverse_branch(model, ref, zeta):
    return model.inverse_branch(ref, zeta)


def _pull(model, address, depth, start):
    z = start
    for k in range(depth - 1, -1, -1):
        try:
            z = model.inverse_branch(address[k], z)
        except (BouquetError, ValueError, ZeroDivisionError, OverflowError) as exc:
            raise InadmissibleAddressError(k, str(exc)) from exc
        if not finite(z):
            raise InadmissibleAddressError(k, "pullback is not finite")
    return z


def _mag(x):
    x = mp.mpf(x) if not isinstance(x, float) else x
    return float(x) if abs(x) < FLOAT_LIMIT else math.inf


def _refs(address, depth):
    return set(address.entries(depth)) | set(address.cycle)


def initial_diameter(model, address, depth):
    """D_0 with |trace(s, d) - J_s| <= D_0 lam^d.

    With b the base point and b* the anchor point in the contracting
    region: D_0 = max_T |F_T^{-1}(b) - F_T^{-1}(b*)|/lam + max_T |F_T^{-1}(b*) - b*|/(1 - lam).
    """
    lam = model.lam
    b, bs = model.base_point, model.anchor_point
    shift, reach = 0.0, 0.0
    for ref in _refs(address, depth):
        fb = model.inverse_branch(ref, b)
        fbs = model.inverse_branch(ref, bs)
        if b != bs:
            shift = max(shift, model.distance(fb, fbs))
        reach = max(reach, model.distance(fbs, bs))
    return shift / lam + reach / (1.0 - lam)


def trace_point(model, address, depth):
    """Pull the base point back along the first `depth` entries.

    Returns (z, error_bound) with error_bound = D_0 lam^depth plus rounding.
    """
    if depth < 1:
        raise PreconditionError("depth must be >= 1")
    z = _pull(model, address, depth, model.base_point)
    d0 = initial_diameter(model, address, depth)
    mag = abs(complex(model.value(z))) if _mag(model.re(z)) < math.inf else 0.0
    err = d0 * model.lam ** depth + ROUNDING * depth * max(1.0, mag)
    return z, err


def trace_enclosures(model, address, depths):
    """(depth, z, radius) for several depths, for nesting checks."""
    return [(d,) + trace_point(model, address, d) for d in depths]


def _potential_orbit(model, t, depth):
    """t_j = growth^j(t) until depth or until it leaves the float range."""
    orbit = [mp.mpf(t)]
    while len(orbit) <= depth:
        nxt = model.growth(orbit[-1])
        if not nxt > model.Q:
            raise DomainError("potential %g lies below the hair's endpoint" % float(t))
        orbit.append(nxt)
        if nxt > 1e12:
            break
    return orbit


def _hair_point(model, address, t, depth):
    orbit = _potential_orbit(model, t, depth)
    d = len(orbit) - 1
    start = demote(mp.mpc(orbit[d], TWO_PI * address[d].offset))
    z = _pull(model, address, d, start)
    # |G_d(t_d + 2 pi i m_d) - limit| <= lam^d sum_j lam^(j-d) e_j with
    # e_j = |F_{s_j}^{-1}(t_{j+1} + 2 pi i m_{j+1}) - (t_j + 2 pi i m_j)|
    lam = model.lam
    err, weight, j = 0.0, lam ** d, d
    t_j = orbit[d]
    while weight > 0 and j < d + 200:
        t_next = model.growth(t_j) if t_j < 1e12 else None
        if t_next is None:
            # beyond: the pullback of any bounded offset shrinks by 1/t_j per level
            err += weight * TWO_PI * (abs(address[j + 1].offset) + 1) / float(t_j)
            break
        target = demote(mp.mpc(t_next, TWO_PI * address[j + 1].offset))
        try:
            back = model.inverse_branch(address[j], target)
        except (BouquetError, ValueError, OverflowError):
            err = math.inf
            break
        e_j = model.distance(back, demote(mp.mpc(t_j, TWO_PI * address[j].offset)))
        err += weight * e_j
        weight *= lam
        t_j = t_next
        j += 1
        if e_j == 0.0 and address[j].offset == 0 and j > d + len(address.prefix) + len(address.cycle):
            break
    mag = abs(complex(model.value(z))) if _mag(model.re(z)) < math.inf else 0.0
    return z, err + ROUNDING * (d + 1) * max(1.0, mag), d


def trace_hair(model, address, potentials, depth):
    """Hair samples z(t) = lim G_d(t_d + 2 pi i m_d), t_d the potential orbit.

    Each sample carries a bound on its distance to that limit point of J_s.
    """
    ts = [float(t) for t in potentials]
    if any(t <= 0 for t in ts) or any(b <= a for a, b in zip(ts, ts[1:])):
        raise PreconditionError("potentials must be positive and strictly increasing")
    samples = []
    for t in ts:
        z, err, _ = _hair_point(model, address, t, depth)
        samples.append(HairSample(t, z, err))
    return Hair(address, samples, depth)


def default_potentials(model, count=16, span=3.0):
    p0 = model.endpoint_potential
    return list(p0 + np.geomspace(1e-3, span, count))


def ray_tail_check(model, hair, steps=4):
    """Real parts of forward orbits are nondecreasing in t, step by step."""
    pts = [s.z for s in hair.samples]
    ok = True
    for _ in range(steps):
        res = [float(model.re(z)) if model.re(z) < FLOAT_LIMIT else math.inf for z in pts]
        ok = ok and all(b >= a - 1e-9 * max(1.0, abs(a)) for a, b in zip(res, res[1:]))
        try:
            pts = [model.forward(z)[0] for z in pts]
        except BouquetError:
            break
    return ok


def orbit_escape(model, z, Q_test, N):
    """Iterate up to N steps; report real parts, tracts visited and J_Q membership."""
    reals, refs = [], []
    left, overflow = False, False
    for _ in range(N + 1):
        r = model.re(z)
        reals.append(float(r) if r < FLOAT_LIMIT else math.inf)
        if len(reals) > N:
            break
        try:
            z, ref = model.forward(z)
        except NotInDomainError:
            left = True
            break
        except BouquetError:
            overflow = True
            break
        refs.append(ref)
    in_jq = not left and all(r > Q_test for r in reals)
    return {"real_parts": reals, "tracts": refs, "steps": len(refs), "left_domain": left,
            "beyond_range": overflow, "in_JQ": in_jq}


def preimage_proximity(model, ref, z, w, search=3):
    """Offset m minimizing |F_T^{-1}(w + 2 pi i m) - z| and that distance."""
    if not model.contains(ref, z):
        raise PreconditionError("z is not in the given tract")
    fz = model.tract(ref).forward(translate(z, -TWO_PI * ref.offset * 1j), model.seqs)
    rw, rf = float(model.re(w)), float(model.re(fz))
    if not 1 <= rw < rf:
        raise PreconditionError("need 1 <= Re w < Re F(z), got Re w = %g, Re F(z) = %g" % (rw, rf))
    dy = (complex(fz).imag - complex(w).imag) / TWO_PI
    m0 = int(round(dy))
    best = None
    for m in range(m0 - search, m0 + search + 1):
        p = model.inverse_branch(ref, complex(w) + TWO_PI * m * 1j)
        d = model.distance(p, z)
        if best is None or d < best[1]:
            best = (m, d)
    return best


# sub-level diameters

def alpha_translation(model):
    """Shift that moves every tract into Re > 2 pi + 3 (> 2 pi + 2)."""
    inf = min(float(t.inf_re()) for t in model.tracts.values())
    return 2 * math.pi + 3 - inf


def _sublevel_diam(tract, alpha):
    pts = tract.sublevel_hull(alpha)
    if len(pts) < 2:
        return 0.0
    xy = np.column_stack([pts.real, pts.imag])
    return float(pdist(xy).max())


def _tract_alpha(tract, target):
    """sup{alpha : diam(closure ∩ {Re <= alpha}) <= target}, by bisection on
    the offset from the tract's leftmost real part."""
    base = tract.inf_re()

    def small(u):
        return _sublevel_diam(tract, base + u) <= target

    lo, hi = 0.0, max(1.0, 2.0 * target)
    while small(hi):
        lo, hi = hi, 2.0 * hi
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if small(mid):
            lo = mid
        else:
            hi = mid
    return base + lo


def alpha_sequence(model, n):
    """alpha_n in the frame translated by alpha_translation(model)."""
    target = ell(n)
    best = min(_tract_alpha(t, target) for t in model.tracts.values())
    return float(best) + alpha_translation(model)
