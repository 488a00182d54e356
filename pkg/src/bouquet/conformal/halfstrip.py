"""Closed-form maps: right half-plane automorphisms and half-strips onto the
right half-plane."""
import math

import numpy as np

from ..errors import NormalizationError, DomainError
from .numeric import NumericMap


class HalfplaneAutomorphism(NumericMap):
    """The automorphism of {Re > 0} sending p to q with M'(p) > 0.

    The stabiliser of p acts on directions at p by rotation, so the positive
    derivative pins the map down to s -> q + (Re q / Re p)(s - p). The affine
    form stays accurate where a disk-model composition loses digits near
    infinity.
    """

    def __init__(self, p, q):
        p, q = complex(p), complex(q)
        if not (p.real > 0 and q.real > 0):
            raise DomainError("both points must lie in the right half-plane")
        self.p, self.q = p, q
        self.scale = q.real / p.real

    def forward(self, z):
        return self.q + self.scale * (z - self.p)

    def inverse(self, w):
        return self.p + (w - self.q) / self.scale

    def derivative(self, z):
        return self.scale + 0.0 * np.asarray(z, dtype=complex)


def halfplane_automorphism(p, q, positive_derivative=True):
    if not positive_derivative:
        raise NormalizationError("only the positive-derivative normalization is unique")
    return HalfplaneAutomorphism(p, q)


class HalfstripMap(NumericMap):
    """{Re > x0, |Im| < h} onto {Re > 0}: affine rescale, sinh, automorphism."""

    def __init__(self, x0, half_width, anchor, anchor_image):
        if half_width <= 0:
            raise DomainError("half_width must be positive")
        self.x0 = float(x0)
        self.h = float(half_width)
        self.k = math.pi / (2.0 * self.h)
        anchor = complex(anchor)
        if not (anchor.real > self.x0 and abs(anchor.imag) < self.h):
            raise DomainError("anchor must be interior to the half-strip")
        if not complex(anchor_image).real > 0:
            raise NormalizationError("anchor image must lie in the right half-plane")
        self.mobius = HalfplaneAutomorphism(np.sinh(self.k * (anchor - self.x0)), anchor_image)

    def forward(self, z):
        return self.mobius.forward(np.sinh(self.k * (np.asarray(z) - self.x0)))

    def inverse(self, w):
        return self.x0 + np.arcsinh(self.mobius.inverse(np.asarray(w))) / self.k

    def derivative(self, z):
        s = np.sinh(self.k * (np.asarray(z) - self.x0))
        return self.mobius.derivative(s) * self.k * np.cosh(self.k * (np.asarray(z) - self.x0))

    def contains(self, z):
        z = complex(z)
        return z.real > self.x0 and abs(z.imag) < self.h


def halfstrip_map(x0, half_width, anchor, anchor_image):
    return HalfstripMap(x0, half_width, anchor, anchor_image)
