"""Hyperbolic geometry on the right half-plane and the strip {|Im z| < pi}.

The half-plane density is normalized to 1/Re z (curvature -1), so that the
density of any simply connected domain U at z lies between
1/(2 dist(z, dU)) and 2/dist(z, dU).
"""
import math
from collections import namedtuple

import numpy as np
from scipy import integrate

from .errors import AccuracyError, DomainError, PreconditionError

DensityBounds = namedtuple("DensityBounds", "lower upper")

AHLFORS_CONSTANT = 2.0 * math.log(32.0)
QUAD_TOL = 1e-9


def _finite(z):
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError("point must be finite, got %r" % (z,))
    return z


def hyp_dist_halfplane(z, w):
    """Hyperbolic distance between z and w in {Re > 0}."""
    z, w = _finite(z), _finite(w)
    if z.real <= 0 or w.real <= 0:
        raise DomainError("both points must have positive real part")
    # 2 asinh(|z-w| / (2 sqrt(Re z Re w))) equals the arccosh form but keeps
    # precision for nearby points.
    return 2.0 * math.asinh(abs(z - w) / (2.0 * math.sqrt(z.real * w.real)))


def density_bounds(dist_to_boundary):
    d = float(dist_to_boundary)
    if not d > 0 or not math.isfinite(d):
        raise DomainError("distance to the boundary must be positive and finite")
    return DensityBounds(1.0 / (2.0 * d), 2.0 / d)


def strip_density(z):
    """Density of {|Im z| < pi} at z; independent of Re z."""
    z = _finite(z)
    if abs(z.imag) >= math.pi:
        raise DomainError("|Im z| must be below pi")
    return 1.0 / (2.0 * math.cos(z.imag / 2.0))


def _as_callable(theta):
    if callable(theta):
        return theta
    s, values = theta
    s = np.asarray(s, dtype=float)
    values = np.asarray(values, dtype=float)
    if s.ndim != 1 or s.shape != values.shape or s.size < 2:
        raise DomainError("sampled theta needs matching 1-d arrays of length >= 2")
    return lambda x: float(np.interp(x, s, values))


def reciprocal_integral(theta, t, t_prime, tol=QUAD_TOL):
    """Return (integral of 1/theta over [t, t'], reported absolute error)."""
    if not t < t_prime:
        raise PreconditionError("need t < t'")
    f = _as_callable(theta)

    def integrand(s):
        v = f(s)
        if not v > 0:
            raise PreconditionError("theta must be positive, got %r at s=%r" % (v, s))
        return 1.0 / v

    # Break long intervals so QUADPACK's local error control sees every scale.
    pieces = max(1, min(200, int(math.ceil((t_prime - t) / 50.0))))
    edges = np.linspace(t, t_prime, pieces + 1)
    total, err = 0.0, 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        val, e = integrate.quad(integrand, a, b, epsabs=tol / pieces, epsrel=0.0, limit=200)
        total += val
        err += e
    if err > tol:
        raise AccuracyError(err, tol, "quadrature")
    return total, err


def ahlfors_lower_bound(theta, t, t_prime, tol=QUAD_TOL):
    """Lower bound on the hyperbolic distance across a strip-like domain.

    theta(s) is the length of the shortest vertical cross-cut at abscissa s;
    it may be a callable or a pair (abscissae, values) interpolated linearly.
    """
    value, _ = reciprocal_integral(theta, t, t_prime, tol)
    if value < 0.5:
        raise PreconditionError("integral of 1/theta is %.6g < 1/2" % value)
    return value - AHLFORS_CONSTANT
