"""Verification suites behind `bouquet verify`.

Each suite returns {schema, suite, passed, checks[]}; a check is a dict with
at least `name` and `passed`.
"""
import math
import random
import time

import mpmath as mp
import numpy as np

from . import contraction, hyperbolic
from .brush import brush_convergence_probe, detect_bad_pair
from .errors import BouquetError
from .headstart import PhiStep, pair_sampler, verify_uniform_sampled
from .render import RenderConfig, render
from .tractmodel.address import TractRef, default_rng, parse_address, random_address
from .tractmodel.dynamics import preimage_proximity, trace_point
from .tractmodel.models import build_model, hook_map, hook_vmap

SCHEMA = "bouquet.verify/1"
DISTPREIM_BOUND = 2 * math.pi ** 2 + math.pi
# escaping fraction of the canonical render, recorded at its first run
RENDER_SNAPSHOT = 0.0908625
PHI_SLOPE_BOUND = 1.05 / (2 * math.sqrt(2))


def _check(name, passed, **info):
    return dict(name=name, passed=bool(passed), **info)


def _timed(fn):
    t = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t


def suite_contraction(model_spec=None):
    def run():
        ts = np.geomspace(1e-3, 1e9, 10 ** 4)
        Ls = [contraction.L_eval(t) for t in ts]
        worst = max(abs(contraction.E_eval(L) - t) / max(1.0, t) for t, L in zip(ts, Ls))
        return worst, all(b > a for a, b in zip(Ls, Ls[1:]))
    (worst, mono), secs = _timed(run)
    return [_check("E(L(t)) = t", worst <= 1e-9, worst_relative=worst, tolerance=1e-9),
            _check("L strictly increasing", mono),
            _check("runtime", secs < 1.0, seconds=secs, limit=1.0)]


def suite_sum(model_spec=None):
    def run():
        C = contraction.sum_constant_C()
        rows = [(n,) + contraction.M_sum(n) for n in range(65)]
        return C, rows
    (C, rows), secs = _timed(run)
    bad = [n for n, m, tail in rows if not m + tail < C * (n + 1)]
    worst_tail = max(tail for _, _, tail in rows)
    return [_check("M_n + tail < C (n+1), n <= 64", not bad, C=C, failing=bad),
            _check("tail bound", worst_tail <= 1e-9, worst_tail=worst_tail),
            _check("runtime", secs < 1.0, seconds=secs, limit=1.0)]


def suite_hookconstants(model_spec=None):
    (good, bad), secs = _timed(lambda: (contraction.hook_constants_check(1350, 450, 1000),
                                       contraction.hook_constants_check(450, 450, 10)))
    return [_check("(1350, 450) up to n = 1000 with certificate", good.ok, certificate=good.certificate),
            _check("(450, 450) fails at n = 0", (not bad.ok) and bad.n == 0,
                   family=bad.family, index=bad.n),
            _check("runtime", secs < 1.0, seconds=secs, limit=1.0)]


def _fixed_point_oracle():
    w = 1.0
    for _ in range(200):
        w = math.log(w + math.log(4.0))
    return w


def suite_endpoint(model_spec=None):
    def run():
        model = build_model("exp")
        return trace_point(model, parse_address("0 | 0"), 60)
    (z, err), secs = _timed(run)
    ref = _fixed_point_oracle()
    diff = abs(complex(z) - ref)
    return [_check("trace_point((0)^inf, 60) vs fixed point", diff <= 1e-9, value=complex(z).real,
                   oracle=ref, difference=diff, error_bound=err),
            _check("runtime", secs < 1.0, seconds=secs, limit=1.0)]


def suite_conjugacy(model_spec=None, count=100, depth=40, seed=1):
    model = build_model(model_spec or "exp")
    rng = default_rng(seed)
    worst, failures = 0.0, []
    for _ in range(count):
        addr = random_address(rng, model.base_ids, max_offset=3)
        try:
            z, _ = trace_point(model, addr, depth)
            w, _ = trace_point(model, addr.shift(1), depth - 1)
            fz, _ = model.forward(z)
            d = model.distance(fz, w)
        except BouquetError as exc:
            failures.append({"address": str(addr), "error": str(exc)})
            continue
        worst = max(worst, d)
    return [_check("|F(trace(s,d)) - trace(sigma s, d-1)| <= 1e-6", worst <= 1e-6 and not failures,
                   worst=worst, addresses=count, depth=depth, failures=failures)]


def suite_proximity(model_spec=None, count=10 ** 4, seed=2):
    model = build_model("exp")
    rng = random.Random(seed)
    t = model.tracts[0]
    worst, n = 0.0, 0
    while n < count:
        z = complex(rng.uniform(0.3, 8.0), rng.uniform(-math.pi / 2, math.pi / 2))
        if not t.contains(z):
            continue
        rf = complex(t.forward(z)).real
        if not rf > 1.0:
            continue
        w = complex(rng.uniform(1.0, rf), rng.uniform(-50.0, 50.0))
        _, d = preimage_proximity(model, TractRef(0, 0), z, w)
        worst = max(worst, d)
        n += 1
    return [_check("dist <= 2 pi^2 + pi", worst <= DISTPREIM_BOUND, worst=worst, bound=DISTPREIM_BOUND, pairs=n)]


def suite_headstart(model_spec=None, pairs=1000, depth=50):
    model = build_model(model_spec or "exp")
    rep = verify_uniform_sampled(model, PhiStep.linear_phi(2.0, 0.0), pair_sampler(model), pairs, depth)
    return [_check("no violations of condition (i)", not rep["violations"], violations=rep["violations"][:10]),
            _check("every pair separates within depth", rep["separated"] == pairs,
                   separated=rep["separated"], inconclusive=rep["inconclusive"]),
            _check("order antisymmetric", rep["order_conflicts"] == 0, conflicts=rep["order_conflicts"]),
            _check("report", True, pairs=rep["pairs"], depth=rep["depth"], inconclusive=rep["inconclusive"])]


def suite_conformal(model_spec=None, n_max=3):
    def run():
        checks = []
        for n in range(1, n_max + 1):
            h = hook_map(n)
            grid = h.interior_grid()
            slope = h.max_derivative(grid)
            checks.append(_check("phi_%d boundary error <= 1e-3" % n, h.boundary_accuracy <= 1e-3,
                                 error=h.boundary_accuracy))
            checks.append(_check("|phi_%d'| <= 1.05/(2 sqrt 2) on |Im| <= pi/2" % n, slope <= PHI_SLOPE_BOUND,
                                 max_derivative=float(slope), bound=PHI_SLOPE_BOUND))
        rows = hook_vmap().chain_check()
        ok = all(lo <= mid <= hi for lo, mid, hi in rows)
        checks.append(_check("psi distance chain", ok, rows=[[float(v) for v in r] for r in rows]))
        return checks
    checks, secs = _timed(run)
    return checks + [_check("runtime", secs <= 120.0, seconds=secs, limit=120.0)]


def suite_badpair(model_spec=None):
    def run():
        model = build_model(model_spec or "hook:n_max=3")
        return detect_bad_pair(model, "0", ks=(1, 2, 3), a_t=6.0, b_t=8.0)
    wit, secs = _timed(run)
    if wit is None:
        return [_check("witness emitted", False), _check("runtime", secs <= 300.0, seconds=secs)]
    recs = wit.probes["records"]
    da = [r["dist_a"] for r in recs]
    db = [r["dist_b"] for r in recs]
    return [
        _check("witness emitted", True, addresses=wit.addresses, depth=wit.depth),
        _check("reversal at every k", all(r["reversed"] for r in recs),
               potentials=[[mp.nstr(mp.mpf(r["t_omega"]), 8), mp.nstr(mp.mpf(r["t_zeta"]), 8)] for r in recs]),
        _check("margins >= 2x position error", all(r["margin"] >= 2 * r["error"] for r in recs),
               margins=[r["margin"] for r in recs], errors=[r["error"] for r in recs]),
        _check("|zeta_k - a| decreasing", all(b < a for a, b in zip(da, da[1:])), distances=da),
        _check("|omega_k - b| decreasing", all(b < a for a, b in zip(db, db[1:])), distances=db),
        _check("runtime", secs <= 300.0, seconds=secs, limit=300.0),
    ]


def suite_brush(model_spec=None, addresses=("0 | 0", "0+1 | 0", "0-1 0+2 | 0")):
    model = build_model(model_spec or "exp")
    checks = []
    for a in addresses:
        rep = brush_convergence_probe(model, a, N_range=range(5, 21))
        resolved = [r for r in rep.ratios if r is not None]
        ok = bool(resolved) and max(resolved) <= 0.75
        checks.append(_check("ratios <= 0.75 for %s" % a, ok, ratios=rep.ratios, resolution=rep.resolution,
                             distances=rep.distances))
    return checks


def suite_render(model_spec=None):
    cfg = RenderConfig(out="")
    d1, s1 = render(cfg, threads=1, write=False)
    d1b, _ = render(cfg, threads=1, write=False)
    d8, _ = render(cfg, threads=8, write=False)
    frac = s1["escaping_fraction"]
    return [_check("identical bytes on a rerun", d1 == d1b, sha256=s1["sha256"]),
            _check("identical bytes with 1 and 8 threads", d1 == d8),
            _check("escaping fraction matches snapshot", abs(frac - RENDER_SNAPSHOT) <= 0.005,
                   fraction=frac, snapshot=RENDER_SNAPSHOT)]


def suite_ahlfors(model_spec=None):
    checks = []
    for t, tp in ((0.0, 10.0), (1.0, 50.0), (-3.0, 300.0)):
        got = hyperbolic.ahlfors_lower_bound(lambda s: math.pi, t, tp)
        want = (tp - t) / math.pi - 2 * math.log(32)
        checks.append(_check("constant width, [%g, %g]" % (t, tp), abs(got - want) <= 1e-9, value=got, expected=want))
    return checks


SUITES = {
    "contraction": suite_contraction,
    "sum": suite_sum,
    "hookconstants": suite_hookconstants,
    "endpoint": suite_endpoint,
    "conjugacy": suite_conjugacy,
    "proximity": suite_proximity,
    "headstart": suite_headstart,
    "conformal": suite_conformal,
    "badpair": suite_badpair,
    "brush": suite_brush,
    "render": suite_render,
    "ahlfors": suite_ahlfors,
}


def run_suite(name, model_spec=None):
    if name not in SUITES:
        raise KeyError(name)
    try:
        checks = SUITES[name](model_spec)
    except BouquetError as exc:
        checks = [_check("suite ran", False, error="%s: %s" % (type(exc).__name__, exc))]
    return {"schema": SCHEMA, "suite": name, "model": model_spec, "passed": all(c["passed"] for c in checks),
            "checks": checks}
