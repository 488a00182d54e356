"""Common interface for numerically constructed conformal maps."""
import numpy as np

from ..errors import AccuracyError


def segment_distance(points, polyline):
    """Distance from each point to a polyline given as a sequence of vertices."""
    pts = np.asarray(points, dtype=complex).reshape(-1)
    poly = np.asarray(polyline, dtype=complex)
    a, b = poly[:-1], poly[1:]
    ab = b - a
    denom = np.where(np.abs(ab) > 0, np.abs(ab) ** 2, 1.0)
    t = ((pts[:, None] - a[None, :]) * np.conj(ab)[None, :]).real / denom[None, :]
    t = np.clip(t, 0.0, 1.0)
    nearest = a[None, :] + t * ab[None, :]
    return np.abs(pts[:, None] - nearest).min(axis=1)


class NumericMap:
    """A conformal map with forward/inverse evaluators and a measured accuracy.

    Subclasses implement forward, inverse and derivative; boundary_accuracy
    is the sup distance of mapped boundary samples from the target boundary.
    """

    boundary_accuracy = 0.0

    def forward(self, z):
        raise NotImplementedError

    def inverse(self, w):
        raise NotImplementedError

    def derivative(self, z):
        raise NotImplementedError

    def __call__(self, z):
        return self.forward(z)

    def round_trip_error(self, samples):
        return max(abs(self.inverse(self.forward(z)) - z) for z in samples)

    def orientation_ok(self, samples):
        # a holomorphic map has Jacobian |f'|^2, so orientation is preserved
        # exactly when the derivative does not vanish; check via finite
        # differences to catch a conjugated (reflected) evaluator
        ok = True
        for z in samples:
            h = 1e-6 * max(1.0, abs(z))
            dx = (self.forward(z + h) - self.forward(z - h)) / (2 * h)
            dy = (self.forward(z + 1j * h) - self.forward(z - 1j * h)) / (2 * h)
            jac = dx.real * dy.imag - dx.imag * dy.real
            ok = ok and jac > 0
        return ok

    def validate(self, samples, target):
        if self.boundary_accuracy > target:
            raise AccuracyError(self.boundary_accuracy, target, type(self).__name__)
        err = self.round_trip_error(samples)
        if err > 10 * max(target, 1e-12) * max(1.0, max(abs(z) for z in samples)):
            raise AccuracyError(err, 10 * target, type(self).__name__ + " round trip")
        if not self.orientation_ok(samples):
            raise AccuracyError(float("inf"), target, type(self).__name__ + " orientation")
        return err
