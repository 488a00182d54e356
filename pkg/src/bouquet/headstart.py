"""Head-start comparison functions and their finite-sample verification.

Throughout, the height of a point is its real part.
"""
import math
import random
from collections import namedtuple

import mpmath as mp
import numpy as np

from .errors import BouquetError, DomainError, NotInDomainError
from .tractmodel.address import random_address
from .tractmodel.dynamics import trace_hair
from .tractmodel.models import hook_sequences
from .tractmodel.points import FLOAT_LIMIT


class PhiStep:
    """phi(x) = y_n for alpha_n <= x < alpha_{n+1}, or phi(x) = a x + b.

    A finite step function stands for a longer one only up to the next,
    untabulated alpha_{N+1} (`limit`), and dominates the identity only below
    y_N. `upper` is the smaller of the two; the checks report heights at or
    above it as beyond range.
    """

    def __init__(self, alphas=None, ys=None, linear=None, limit=None):
        if linear is not None:
            a, b = (float(c) for c in linear)
            if a < 1 or (a == 1 and b <= 0) or (a * 1.0 + b <= 1.0):
                raise DomainError("linear phi(t) = %g t + %g does not exceed t on t >= 1" % (a, b))
            self.linear = (a, b)
            self.alphas, self.ys = [], []
            self.upper = math.inf
            return
        if not alphas or len(alphas) != len(ys):
            raise DomainError("need matching nonempty alpha and y sequences")
        self.linear = None
        self.alphas = [mp.mpf(a) for a in alphas]
        self.ys = [mp.mpf(y) for y in ys]
        if any(a <= 0 for a in self.alphas) or any(y <= 0 for y in self.ys):
            raise DomainError("alphas and ys must be positive")
        if any(b <= a for a, b in zip(self.alphas, self.alphas[1:])) or \
                any(b < a for a, b in zip(self.ys, self.ys[1:])):
            raise DomainError("alphas must increase and ys must not decrease")
        # phi(x) > x on [alpha_n, alpha_{n+1}) needs y_n >= alpha_{n+1}
        for n in range(len(self.alphas) - 1):
            if not self.ys[n] >= self.alphas[n + 1]:
                raise DomainError("y_%d = %s does not exceed the step [alpha_%d, alpha_%d)" %
                                  (n, mp.nstr(self.ys[n], 6), n, n + 1))
        if not self.ys[-1] > self.alphas[-1]:
            raise DomainError("the last step value must exceed its left endpoint")
        self.upper = self.ys[-1]
        if limit is not None:
            limit = mp.mpf(limit)
            if not limit > self.alphas[-1]:
                raise DomainError("limit must lie beyond the last alpha")
            self.upper = min(self.upper, limit)

    @classmethod
    def linear_phi(cls, a=2.0, b=0.0):
        return cls(linear=(a, b))

    def __call__(self, x):
        return phi_eval(self, x)

    def probe(self, count=200):
        """(x, phi(x)) on a grid covering every step below `upper`."""
        if self.linear:
            xs = np.geomspace(1.0, 1e6, count)
        else:
            pts = []
            for n, a in enumerate(self.alphas):
                b = self.alphas[n + 1] if n + 1 < len(self.alphas) else self.upper
                for s in np.linspace(0.0, 1.0, 7, endpoint=False):
                    pts.append(a + (b - a) * mp.mpf(s))
            xs = pts
        return [(x, phi_eval(self, x)) for x in xs]

    def dominates(self, count=200):
        return all(y > x for x, y in self.probe(count))


def phi_eval(phi, x):
    if phi.linear is not None:
        a, b = phi.linear
        return a * x + b
    if x < phi.alphas[0]:
        raise DomainError("phi is defined for x >= alpha_0 = %s" % mp.nstr(phi.alphas[0], 8))
    n = 0
    for k, a in enumerate(phi.alphas):
        if x >= a:
            n = k
        else:
            break
    y = phi.ys[n]
    return float(y) if y < FLOAT_LIMIT else y


def hook_phi(variant="hook", n_max=2, a=6.0):
    """Step functions from a_n: alpha_n = a_n/2 ("hook") or a_n/n^3 ("strips",
    with alpha_0 = a_0/2), and y_n = 100 a_{n+1}."""
    if not 0 <= n_max <= 2:
        raise DomainError("n_max must lie in 0..2 (a_{n+1} is tabulated up to a_3)")
    seqs = hook_sequences(a, 3)
    an = seqs.a
    if variant == "hook":
        alphas = [an[n] / 2 for n in range(n_max + 1)]
    elif variant == "strips":
        alphas = [an[0] / 2] + [an[n] / mp.mpf(n) ** 3 for n in range(1, n_max + 1)]
    else:
        raise DomainError("unknown variant %r (hook or strips)" % variant)
    ys = [100 * an[n + 1] for n in range(n_max + 1)]
    n = n_max + 1
    limit = an[n] / 2 if variant == "hook" else an[n] / mp.mpf(n) ** 3
    return PhiStep(alphas, ys, limit=limit)


Verdict = namedtuple("Verdict", "status step detail")


def _fwd(model, z):
    return model.forward(z)


def _num(x):
    return float(x) if x < FLOAT_LIMIT else x


def check_forward_condition(model, z, w, phi, depth, rel_tol=1e-9):
    """Condition (i) along `depth` forward steps, both orders of the pair.

    Returns a Verdict with status "pass", "violation", "ambiguous" (a value
    within rel_tol of the phi threshold), "different-tracts" or
    "beyond-range"; `step` is where the check stopped.
    """
    for step in range(depth):
        try:
            fz, rz_ref = _fwd(model, z)
            fw, rw_ref = _fwd(model, w)
        except NotInDomainError as exc:
            return Verdict("beyond-range", step, "orbit left the tracts: %s" % exc)
        except BouquetError as exc:
            return Verdict("beyond-range", step, str(exc))
        if rz_ref != rw_ref:
            return Verdict("different-tracts", step, (rz_ref, rw_ref))
        for p, q, fp, fq in ((z, w, fz, fw), (w, z, fw, fz)):
            rp, rq = model.re(p), model.re(q)
            if rp < _lower(phi):
                continue
            if rp >= phi.upper:
                return Verdict("beyond-range", step, "height %s is beyond phi's range" % mp.nstr(mp.mpf(rp), 8))
            thr = phi_eval(phi, rp)
            if abs(rq - thr) <= rel_tol * abs(thr):
                return Verdict("ambiguous", step, {"re": _num(rq), "phi": _num(thr)})
            if rq > thr:
                rfp, rfq = model.re(fp), model.re(fq)
                if rfp < _lower(phi):
                    return Verdict("violation", step, {"re_next": _num(rfq), "phi_next": None})
                if rfp >= phi.upper:
                    return Verdict("beyond-range", step + 1,
                                   "height %s is beyond phi's range" % mp.nstr(mp.mpf(rfp), 8))
                thr_next = phi_eval(phi, rfp)
                if abs(rfq - thr_next) <= rel_tol * abs(thr_next):
                    return Verdict("ambiguous", step + 1, {"re": _num(rfq), "phi": _num(thr_next)})
                if not rfq > thr_next:
                    return Verdict("violation", step, {"re_next": _num(rfq), "phi_next": _num(thr_next)})
        z, w = fz, fw
    return Verdict("pass", depth, None)


def _lower(phi):
    return phi.alphas[0] if phi.linear is None else -math.inf


def _witnesses(model, z, w, phi, max_n, stop_first=True):
    """Steps at which "w ahead" / "z ahead" is witnessed, and why the scan ended."""
    seen = []
    for n in range(max_n + 1):
        rz, rw = model.re(z), model.re(w)
        if max(rz, rw) >= phi.upper:
            return seen, "beyond phi's range at step %d" % n
        if rz >= _lower(phi) and rw > phi_eval(phi, rz):
            seen.append((n, "w ahead"))
        elif rw >= _lower(phi) and rz > phi_eval(phi, rw):
            seen.append((n, "z ahead"))
        if seen and stop_first:
            return seen, "separated"
        if n == max_n:
            break
        try:
            z, _ = model.forward(z)
            w, _ = model.forward(w)
        except BouquetError as exc:
            return seen, "stopped: %s" % exc
    return seen, "scanned %d steps" % max_n


def _separation(model, z, w, phi, max_n):
    seen, why = _witnesses(model, z, w, phi, max_n)
    return (seen[0] if seen else (None, why))


def separation_time(model, z, w, phi, max_n):
    """Least n <= max_n at which one orbit is ahead of phi of the other, else None."""
    return _separation(model, z, w, phi, max_n)[0]


def pair_sampler(model, bases=None, max_offset=2, t_low=0.2, t_span=3.0, gap=(0.05, 2.0)):
    """Random same-address pairs drawn from traced hairs.

    Potentials are p* + t_low + U(0, t_span) and the partner is ahead by a
    U(gap) amount, p* being the model's endpoint potential.
    """
    bases = list(model.base_ids if bases is None else bases)

    def draw(rng):
        addr = random_address(rng, bases, max_offset=max_offset, max_prefix=3, max_cycle=3)
        t1 = model.endpoint_potential + t_low + rng.uniform(0.0, t_span)
        t2 = t1 + rng.uniform(*gap)
        return addr, (t1, t2)

    return draw


def verify_uniform_sampled(model, phi, sampler, pair_count, depth, max_n=None, seed=0):
    """Trace same-address pairs, then run both head-start conditions on each."""
    rng = random.Random(seed)
    max_n = depth if max_n is None else max_n
    violations, inconclusive, separated, both_ways = [], 0, 0, 0
    for i in range(pair_count):
        addr, (t1, t2) = sampler(rng)
        hair = trace_hair(model, addr, [t1, t2], depth)
        z, w = hair.samples[0].z, hair.samples[1].z
        verdict = check_forward_condition(model, z, w, phi, max_n)
        if verdict.status == "violation":
            violations.append({"pair": i, "address": str(addr), "t": [t1, t2], "step": verdict.step,
                               "detail": verdict.detail})
        seen, _ = _witnesses(model, z, w, phi, max_n, stop_first=False)
        if not seen:
            inconclusive += 1
        else:
            separated += 1
            # antisymmetry: only one direction may ever be witnessed
            if len({how for _, how in seen}) > 1:
                both_ways += 1
    return {"pairs": pair_count, "depth": depth, "max_n": max_n, "violations": violations,
            "inconclusive": inconclusive, "separated": separated, "order_conflicts": both_ways}
