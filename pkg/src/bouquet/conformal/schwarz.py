"""Schwarz-Christoffel maps from the strip S = {0 < Im w < pi}.

A map is described by prevertices p_k on the bottom edge (Im w = 0) or the
top edge (Im w = pi), turning exponents beta_k = (interior angle)/pi - 1 and
the exponent alpha_minus of the left end (0 for a channel, 1/2 for a right
angle corner, 1 for a straight boundary point).  The derivative is

    f'(w) = C exp(alpha_minus w) prod (e^w - e^{p_k})^{beta_k}   (bottom)
                                  prod (e^w + e^{p_k})^{beta_k}   (top)

Each factor is evaluated through the offset d = w - (p_k or p_k + i pi) with
expm1/log1p so that prevertices clustered near w = 0 keep full relative
precision.  Integrals use Gauss-Jacobi rules at singular endpoints and
geometrically graded Gauss-Legendre panels elsewhere.
"""
import math

import numpy as np
from scipy.special import roots_jacobi, roots_legendre

NODES = 16
PANEL_MAX = 1.0
_PI = math.pi

_legendre = roots_legendre(NODES)
_jacobi_cache = {}


def _jacobi(alpha, beta):
    key = (round(alpha, 14), round(beta, 14))
    rule = _jacobi_cache.get(key)
    if rule is None:
        x, wts = roots_jacobi(NODES, alpha, beta)
        rule = (x, wts)
        _jacobi_cache[key] = rule
    return rule


def cexpm1(d):
    d = np.asarray(d, dtype=complex)
    x, y = d.real, d.imag
    half = np.sin(y / 2.0)
    re = np.expm1(x) * np.cos(y) - 2.0 * half * half
    im = np.exp(x) * np.sin(y)
    return re + 1j * im


def _fix_branch(v):
    # the true argument lies in [0, pi]; a signed zero can push it to -pi
    return np.where(v.imag < -_PI / 2, v + 2j * _PI, v)


def log_bottom(d):
    """log(e^d - 1) for 0 <= Im d <= pi, continuous in the closed strip."""
    d = np.asarray(d, dtype=complex)
    out = np.empty_like(d)
    big = d.real > 1.0
    small = d.real < -1.0
    mid = ~(big | small)
    out[big] = d[big] + np.log1p(-np.exp(-d[big]))
    out[small] = 1j * _PI + np.log1p(-np.exp(d[small]))
    out[mid] = _fix_branch(np.log(cexpm1(d[mid])))
    return out


def log_top(d):
    """log(1 - e^d) for -pi <= Im d <= 0, continuous in the closed strip."""
    d = np.asarray(d, dtype=complex)
    out = np.empty_like(d)
    big = d.real > 1.0
    small = d.real < -1.0
    mid = ~(big | small)
    out[big] = d[big] + 1j * _PI + np.log1p(-np.exp(-d[big]))
    out[small] = np.log1p(-np.exp(d[small]))
    out[mid] = _fix_branch(np.log(-cexpm1(d[mid])))
    return out


class StripSC:
    """Derivative and path integrals of a strip Schwarz-Christoffel map."""

    def __init__(self, prevertices, top, betas, alpha_minus=0.0, log_c=0j):
        self.p = np.asarray(prevertices, dtype=float)
        self.top = np.asarray(top, dtype=bool)
        self.betas = np.asarray(betas, dtype=float)
        self.alpha_minus = float(alpha_minus)
        self.log_c = complex(log_c)
        self.vertex = self.p + 1j * _PI * self.top
        # alpha_plus follows from the total turning of the polygon
        self.alpha_plus = -self.alpha_minus - float(self.betas.sum())

    def with_constant(self, log_c):
        return StripSC(self.p, self.top, self.betas, self.alpha_minus, log_c)

    def log_deriv(self, w):
        w = np.asarray(w, dtype=complex)
        flat = w.reshape(-1)
        total = self.log_c + self.alpha_minus * flat
        for p, top, beta, v in zip(self.p, self.top, self.betas, self.vertex):
            d = flat - v
            lam = log_top(d) if top else log_bottom(d)
            total = total + beta * (p + lam)
        return total.reshape(w.shape)

    def deriv(self, w):
        return np.exp(self.log_deriv(w))

    def end_log_deriv(self, end):
        """Limit of log f'(w) - (exponent) w at the left (-1) or right (+1) end."""
        total = self.log_c
        for p, top, beta in zip(self.p, self.top, self.betas):
            if end < 0:
                total += beta * (p + (0j if top else 1j * _PI))
        return total

    def _dist_to_vertices(self, w, skip=None):
        d = np.abs(self.vertex - w)
        if skip is not None:
            d = d.copy()
            d[skip] = np.inf
        return float(d.min()) if d.size else math.inf

    def _panel(self, a, b, ea=0.0, eb=0.0):
        """Integral of f' over [a, b] with endpoint singular exponents ea, eb."""
        half = (b - a) / 2.0
        if ea == 0.0 and eb == 0.0:
            x, wts = _legendre
            w = a + half * (x + 1.0)
            return half * np.dot(wts, self.deriv(w))
        x, wts = _jacobi(eb, ea)
        w = a + half * (x + 1.0)
        # dividing by the real Jacobi weight leaves a smooth integrand
        vals = self.deriv(w) / ((1.0 - x) ** eb * (1.0 + x) ** ea)
        return half * np.dot(wts, vals)

    def _march(self, a, b, ka):
        """Integrate from a (possibly the singular prevertex ka) to a regular b."""
        total = 0j
        start, exp_a, skip = a, (self.betas[ka] if ka is not None else 0.0), ka
        length = abs(b - a)
        if length == 0:
            return total
        direction = (b - a) / length
        done = 0.0
        while done < length:
            dist = self._dist_to_vertices(start, skip)
            step = min(length - done, dist, PANEL_MAX)
            if exp_a != 0.0:
                # keep the first panel clear of other vertices by a safe margin
                step = min(length - done, 0.5 * dist, PANEL_MAX)
            end = b if done + step >= length else start + direction * step
            total += self._panel(start, end, exp_a, 0.0)
            done += step
            start, exp_a, skip = end, 0.0, None
        return total

    def quad(self, a, b, ka=None, kb=None):
        """Integral of f' along the segment [a, b].

        ka / kb name the prevertex sitting exactly at an endpoint.
        """
        a, b = complex(a), complex(b)
        if a == b:
            return 0j
        if kb is None:
            return self._march(a, b, ka)
        if ka is None:
            return -self._march(b, a, kb)
        mid = 0.5 * (a + b)
        return self._march(a, mid, ka) - self._march(b, mid, kb)



FAR = 40.0


class SCMap:
    """A solved strip map: prevertex images, end asymptotes and an inverse."""

    def __init__(self, sc, anchor_index=0, anchor_image=0j):
        self.sc = sc
        n = len(sc.p)
        self.images = np.zeros(n, dtype=complex)
        order_b = [k for k in np.argsort(sc.p) if not sc.top[k]]
        order_t = [k for k in np.argsort(sc.p) if sc.top[k]]
        known = {}
        chains = [order_b, order_t]
        start_chain = 0 if anchor_index in order_b else 1
        known[anchor_index] = complex(anchor_image)
        self._walk(chains[start_chain], anchor_index, known)
        other = chains[1 - start_chain]
        if other:
            a = chains[start_chain][0]
            b = other[0]
            known[b] = known[a] + sc.quad(sc.vertex[a], sc.vertex[b], a, b)
            self._walk(other, b, known)
        for k, z in known.items():
            self.images[k] = z
        self.lo = float(sc.p.min())
        self.hi = float(sc.p.max())
        self._ends = {}
        for end in (-1, 1):
            self._ends[end] = self._end_data(end)
        self._tree = None

    def _walk(self, chain, start, known):
        sc = self.sc
        i0 = chain.index(start)
        for i in range(i0, len(chain) - 1):
            a, b = chain[i], chain[i + 1]
            known[b] = known[a] + sc.quad(sc.vertex[a], sc.vertex[b], a, b)
        for i in range(i0, 0, -1):
            a, b = chain[i], chain[i - 1]
            known[b] = known[a] + sc.quad(sc.vertex[a], sc.vertex[b], a, b)

    def _direct(self, w):
        sc = self.sc
        k = int(np.argmin(np.abs(sc.vertex - w)))
        if sc.vertex[k] == w:
            return self.images[k]
        return self.images[k] + sc.quad(sc.vertex[k], w, ka=k)

    def _end_data(self, end):
        sc = self.sc
        exponent = sc.alpha_minus if end < 0 else sc.alpha_plus
        edge = self.lo - FAR if end < 0 else self.hi + FAR
        w_far = complex(edge, math.pi / 2)
        if exponent == 0.0:
            slope = np.exp(sc.end_log_deriv(end) if end < 0 else sc.log_c)
            return ("channel", slope, self._direct(w_far) - slope * w_far, edge)
        if exponent > 0:
            # a finite vertex: f(w) - z_end ~ -end f'(w)/exponent
            z_far = self._direct(w_far)
            z_end = z_far + end * complex(sc.deriv(w_far)) / exponent
            return ("vertex", exponent, z_end, edge)
        return ("open", exponent, None, edge)

    def end(self, end):
        return self._ends[end]

    def channel_slope(self, end):
        kind, slope, _, _ = self._ends[end]
        return slope if kind == "channel" else None

    def __call__(self, w):
        if np.ndim(w):
            return np.array([self._eval(x) for x in np.ravel(w)]).reshape(np.shape(w))
        return self._eval(complex(w))

    def _eval(self, w):
        for end in (-1, 1):
            kind, a, b, edge = self._ends[end]
            beyond = w.real < edge if end < 0 else w.real > edge
            if beyond and kind == "channel":
                return a * w + b
            if beyond and kind == "vertex":
                return b - end * complex(self.sc.deriv(w)) / a
        return self._direct(w)

    def deriv(self, w):
        return self.sc.deriv(w)

    def _build_tree(self):
        from scipy.spatial import cKDTree
        xs = np.arange(self.lo - FAR, self.hi + FAR + 0.25, 0.25)
        ys = math.pi * (np.arange(8) + 0.5) / 8
        nodes, images = [], []
        for y in ys:
            w = complex(xs[0], y)
            z = self._eval(w)
            nodes.append(w)
            images.append(z)
            for x in xs[1:]:
                w_next = complex(x, y)
                z = z + self.sc._march(w, w_next, None)
                w = w_next
                nodes.append(w)
                images.append(z)
        self._nodes = np.array(nodes)
        self._node_images = np.array(images)
        self._tree = cKDTree(np.column_stack([self._node_images.real, self._node_images.imag]))

    def initial_guess(self, z):
        for end in (-1, 1):
            kind, slope, intercept, edge = self._ends[end]
            if kind == "channel":
                w = (z - intercept) / slope
                if (end < 0 and w.real < edge) or (end > 0 and w.real > edge):
                    return complex(w.real, min(max(w.imag, 0.0), math.pi))
        if self._tree is None:
            self._build_tree()
        _, i = self._tree.query([z.real, z.imag])
        return complex(self._nodes[i])

    def inverse(self, z, w0=None, tol=1e-13, max_iter=60):
        z = complex(z)
        w = self.initial_guess(z) if w0 is None else complex(w0)
        scale = max(1.0, abs(z))
        fw = self._eval(w)
        for _ in range(max_iter):
            r = fw - z
            if abs(r) <= tol * scale:
                return w
            dw = -r / complex(self.sc.deriv(w))
            step = 1.0
            while True:
                cand = w + step * dw
                cand = complex(cand.real, min(max(cand.imag, 0.0), math.pi))
                fc = self._eval(cand)
                if abs(fc - z) < abs(r) or step < 1e-6:
                    break
                step *= 0.5
            w, fw = cand, fc
        if abs(fw - z) <= 1e3 * tol * scale:
            return w
        raise ArithmeticError("inverse did not converge for %r (residual %.3g)" % (z, abs(fw - z)))
