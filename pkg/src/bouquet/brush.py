"""Order on hairs, bad pairs, brush convergence and fast-escape points."""
import math
from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor

import mpmath as mp
import numpy as np

from .conformal.hook import Anchored
from .conformal.numeric import segment_distance
from .contraction import L_iter, M_sum, ell
from .errors import AccuracyError, BouquetError, HypothesisError, NotInDomainError, PreconditionError
from .hyperbolic import hyp_dist_halfplane
from .tractmodel.address import ExternalAddress, TractRef, parse_address
from .tractmodel.dynamics import _tract_alpha, trace_hair, trace_point

BadPairWitness = namedtuple("BadPairWitness", "z w z_seq w_seq errors addresses depth probes")
BrushReport = namedtuple("BrushReport", "address N distances endpoint_gaps ratios resolution window anguine")


def hair_order(hair, z_index, w_index):
    """-1 if sample z precedes w on the hair (lower potential), 1 if it follows, 0 if equal."""
    n = len(hair.samples)
    if not (0 <= z_index < n and 0 <= w_index < n):
        raise PreconditionError("sample index out of range")
    tz, tw = hair.samples[z_index].t, hair.samples[w_index].t
    return (tz > tw) - (tz < tw)


# bad pairs

def probe_address(k, tract, base=0):
    """s_k = T_base^k T_tract T_base T_base ..."""
    return ExternalAddress([TractRef(base, 0)] * k + [tract], [TractRef(base, 0)])


def _hook_probe(model, k):
    """zeta_k, omega_k on J_{s_k} for s_k = T_0^k T_k T_0^inf, with their
    strip potentials and position errors.

    The hair of T_k T_0^inf is phi_k([1, inf)); omega is its endpoint
    phi_k(1) next to b_k and zeta the hairpin turn next to a_k.
    """
    if k not in model.tracts:
        raise PreconditionError("the model has no tract T_%d" % k)
    hook = model.tracts[k].hook
    wb, turn = hook.turn_point()
    pts = {"zeta": (turn, hook.potential(wb)), "omega": (hook.hair_point(1.0), mp.mpf(1))}
    t0 = model.tracts[0]
    # interior error of phi_k is bounded by its boundary error
    base_err = hook.boundary_accuracy + hook.round_trip_error([wb, 1.0 + 0j])
    out = {}
    for name, (p, pot) in pts.items():
        gain = 1.0
        for _ in range(k):
            p = model.inverse_branch(TractRef(0, 0), p)
            gain /= abs(complex(t0.derivative(p, model.seqs)))
        out[name] = (p, pot, base_err * gain * 1.01)
    return out


def _sampled_probe(model, addr, a, b, potentials, depth):
    hair = trace_hair(model, addr, potentials, depth)
    vals = [complex(model.value(s.z)) for s in hair.samples]
    out = {}
    for name, target in (("zeta", a), ("omega", b)):
        i = int(np.argmin([abs(v - target) for v in vals]))
        s = hair.samples[i]
        # grid spacing enters the position error of the nearest sample
        step = max((abs(vals[j] - vals[i]) for j in (i - 1, i + 1) if 0 <= j < len(vals)), default=0.0)
        out[name] = (s.z, s.t, s.error_bound + step / 2)
    return out


def probe_bad_pairs(model, target_address, a_t, b_t, ks, depth=40, probe_tract=None, potentials=None):
    """Per-k records: zeta_k (near a) and omega_k (near b) on the probe hair J_{s_k},
    their potentials, errors, distances to the targets and the margin."""
    target = trace_hair(model, target_address, [a_t, b_t], depth)
    a_pt, b_pt = (s.z for s in target.samples)
    a, b = (complex(model.value(p)) for p in (a_pt, b_pt))
    errs_ab = [s.error_bound for s in target.samples]
    hook_like = model.kind == "hook" and probe_tract is None
    if hook_like and (a, b) == (float(model.seqs.a[0]), float(model.seqs.b[0])):
        # anchored targets keep distances exact below float resolution
        a_pt, b_pt = Anchored("a", 0, 0j), Anchored("b", 0, 0j)
    if potentials is None:
        potentials = list(model.endpoint_potential + np.geomspace(1e-3, 4.0, 400))

    def one(k):
        if hook_like:
            addr = probe_address(k, TractRef(k, 0))
            pts = _hook_probe(model, k)
        else:
            addr = probe_address(k, probe_tract or TractRef(target_address[0].base, 1))
            pts = _sampled_probe(model, addr, a, b, potentials, depth)
        (z, tz, ez), (w, tw, ew) = pts["zeta"], pts["omega"]
        zc, wc = complex(model.value(z)), complex(model.value(w))
        err = max(ez, ew) + max(errs_ab)
        margin = min(abs(zc - b) - abs(zc - a), abs(wc - a) - abs(wc - b), abs(zc - wc))
        return {"k": k, "address": str(addr), "zeta": zc, "omega": wc, "t_zeta": tz, "t_omega": tw,
                "dist_a": model.distance(z, a_pt), "dist_b": model.distance(w, b_pt), "error": err, "margin": margin,
                "reversed": tw < tz, "unambiguous": margin >= 2 * err}

    with ThreadPoolExecutor() as pool:
        records = list(pool.map(one, ks))
    return {"a": a, "b": b, "t_a": a_t, "t_b": b_t, "records": records}


def detect_bad_pair(model, target_address="0", ks=(1, 2, 3), depth=40, a_t=6.0, b_t=8.0,
                    probe_tract=None, run=3):
    """A witness when order reversal holds with unambiguous margins for `run`
    consecutive k, else None.

    Raises AccuracyError when reversals are seen but margins sit below the
    position error.
    """
    if isinstance(target_address, str):
        target_address = parse_address(target_address)
    if not a_t < b_t:
        raise PreconditionError("need a before b on the target hair")
    probes = probe_bad_pairs(model, target_address, a_t, b_t, ks, depth, probe_tract)
    recs = probes["records"]
    good, best = [], []
    for r in recs:
        if r["reversed"] and r["unambiguous"]:
            good.append(r)
            if len(good) > len(best):
                best = list(good)
        else:
            good = []
    if len(best) >= run:
        return BadPairWitness(probes["a"], probes["b"], [r["zeta"] for r in best], [r["omega"] for r in best],
                              [r["error"] for r in best], [r["address"] for r in best], depth, probes)
    noisy = [r for r in recs if r["reversed"] and not r["unambiguous"]]
    if noisy:
        r = noisy[0]
        raise AccuracyError(r["margin"], 2 * r["error"], "bad-pair margin at k=%d" % r["k"])
    return None


# brush convergence

def neighbor_address(address, N, step=1):
    """Agree with `address` before index N, shift the offset of entry N by `step`."""
    e = address[N]
    tail = address.shift(N + 1)
    prefix = list(address.entries(N)) + [TractRef(e.base, e.offset + step)] + list(tail.prefix)
    return ExternalAddress(prefix, tail.cycle)


def hausdorff(p, q):
    """Hausdorff distance between two polylines (arrays of complex vertices)."""
    p, q = np.asarray(p, dtype=complex), np.asarray(q, dtype=complex)
    if len(p) == 1 and len(q) == 1:
        return float(abs(p[0] - q[0]))
    pp = p if len(p) > 1 else np.repeat(p, 2)
    qq = q if len(q) > 1 else np.repeat(q, 2)
    return float(max(segment_distance(p, qq).max(), segment_distance(q, pp).max()))


def _window(model, address, potentials, depth):
    e, e_err = trace_point(model, address, depth)
    hair = trace_hair(model, address, potentials, depth)
    pts = [complex(model.value(e))] + [complex(model.value(s.z)) for s in hair.samples]
    err = max([e_err] + [s.error_bound for s in hair.samples])
    return np.array(pts), err


def anguine_slice_diameter(model, ref, t, count=64):
    """Hyperbolic diameter of the slice {Re = t} of a tract, measured in H_Q
    through the tract map."""
    tract = model.tract(ref)
    ys = np.linspace(-math.pi, math.pi, count)
    pts = [complex(t, y) for y in ys if tract.contains(complex(t, y), model.seqs)]
    if len(pts) < 2:
        return 0.0
    img = [complex(model.value(tract.forward(z, model.seqs))) - model.Q for z in pts]
    return max(hyp_dist_halfplane(img[i], img[j]) for i in range(len(img)) for j in range(i + 1, len(img)))


def brush_convergence_probe(model, address, neighbor_generator=None, N_range=range(5, 21), window=None,
                            depth=60):
    """Distances between the hair window of `address` and of neighbours agreeing
    up to index N; the window is the endpoint plus hair samples on `window`."""
    if isinstance(address, str):
        address = parse_address(address)
    neighbor_generator = neighbor_generator or neighbor_address
    Ns = list(N_range)
    if depth <= max(Ns):
        raise PreconditionError("depth must exceed the largest N")
    if window is None:
        window = list(model.endpoint_potential + np.geomspace(0.05, 3.0, 16))
    base, res = _window(model, address, window, depth)

    def one(N):
        other = neighbor_generator(address, N)
        pts, err = _window(model, other, window, depth)
        return hausdorff(base, pts), abs(pts[0] - base[0]), err

    with ThreadPoolExecutor() as pool:
        out = list(pool.map(one, Ns))
    dists = [d for d, _, _ in out]
    gaps = [g for _, g, _ in out]
    resolution = max([res] + [e for _, _, e in out])
    ratios = [(d1 / d0 if d0 > resolution and d1 > resolution else None) for d0, d1 in zip(dists, dists[1:])]
    ang = {}
    for t in (model.endpoint_potential + 0.5, model.endpoint_potential + 2.0):
        ang[float(t)] = anguine_slice_diameter(model, TractRef(model.base_ids[0], 0), t)
    return BrushReport(str(address), Ns, dists, gaps, ratios, resolution, [float(t) for t in window], ang)


# fast escape

def _chain_connected(pts, step):
    return bool(np.all(np.abs(np.diff(pts)) <= step))


def fast_escape_point(model, arc, n, depth, step=None):
    """A sample z of the arc with F^j(z) right of alpha_{n+j} for j <= depth, or None.

    The arc should lie on the Julia set with every image inside a single
    tract; images that split across tracts raise HypothesisError. D_j is the
    set of samples whose j-th image has Re <= alpha_{n+j}; its sampled
    diameter is reported next to the bound L^j(ell_{n+j}). alpha_k are the
    sub-level abscissas of the model's tracts (model frame).
    """
    pts = np.asarray([complex(z) for z in arc])
    if len(pts) < 2:
        raise PreconditionError("need at least two samples")
    step = step if step is not None else 1.0
    if not _chain_connected(pts, step):
        raise PreconditionError("samples are not chain-connected at spacing %g" % step)
    diam = float(np.max(np.abs(pts[:, None] - pts[None, :])))
    m_n = sum(M_sum(n))
    if not diam > m_n:
        raise HypothesisError("arc diameter %.6g does not exceed M_%d = %.6g" % (diam, n, m_n))
    alphas = [min(_tract_alpha(t, ell(k)) for t in model.tracts.values()) for k in range(n, n + depth + 1)]
    if not np.all(pts.real > alphas[0]):
        raise PreconditionError("arc is not contained in Re > alpha_%d = %.6g" % (n, alphas[0]))
    # None marks an orbit beyond the evaluable range, hence escaping
    orbit = list(pts)
    in_d = np.zeros(len(pts), dtype=bool)
    excluded, diams = [], []
    for j in range(1, depth + 1):
        refs = set()
        members = []
        for i, z in enumerate(orbit):
            if z is None:
                continue
            try:
                z, ref = model.forward(z)
            except NotInDomainError:
                raise HypothesisError("image %d of the arc leaves the tracts" % j) from None
            except BouquetError:
                orbit[i] = None
                continue
            refs.add(ref)
            orbit[i] = z
            if model.re(z) <= alphas[j]:
                members.append(i)
        if len(refs) > 1:
            raise HypothesisError("image %d of the arc meets more than one tract" % j)
        in_d[members] = True
        d = float(np.max(np.abs(pts[members][:, None] - pts[members][None, :]))) if len(members) > 1 else 0.0
        excluded.append(len(members))
        diams.append(d)
    bounds = [L_iter(j, ell(n + j)) for j in range(1, len(diams) + 1)]
    report = {"M_n": m_n, "diameter": diam, "excluded": excluded, "exclusion_diameters": diams,
              "exclusion_bounds": bounds, "sum_exclusion": float(sum(diams)), "alphas": [float(a) for a in alphas]}
    alive = ~in_d
    if not alive.any():
        return None, report
    idx = np.flatnonzero(alive)
    return complex(pts[idx[len(idx) // 2]]), report
