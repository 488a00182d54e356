import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, strategies as st

from bouquet.conformal import (BlockCoord, halfplane_automorphism, halfstrip_map, hook_geometry,
                               normalize_intervals, v_profile, VMap)
from bouquet.conformal.vdomain import Normalized
from bouquet.conformal.hook import DERIVATIVE_BOUND, HookSequences
from bouquet.errors import DomainError, NormalizationError
from bouquet.tractmodel.models import hook_map, hook_vmap

# 5 sinh 2 / sinh 1 and (1/3)/(2 ln 2), 30-digit mpmath
F0_AT_6 = 15.4308063481524377847790562075
RHO_ONE_INTERVAL = 0.240449173481493873627768489765


def f0(z):
    return 5 * np.sinh(np.asarray(z) - 4) / np.sinh(1.0)


@pytest.fixture(scope="module")
def t0_map():
    return halfstrip_map(4.0, math.pi / 2, 5.0, 5.0)


def test_halfstrip_normalization(t0_map):
    assert t0_map(5.0) == pytest.approx(5.0, abs=1e-12)
    assert t0_map.derivative(5.0).real > 0
    assert abs(t0_map.derivative(5.0).imag) < 1e-12
    assert t0_map(6.0).real == pytest.approx(F0_AT_6, abs=1e-9)


@given(st.floats(4.01, 30.0), st.floats(-1.55, 1.55))
def test_halfstrip_matches_closed_form(t0_map, x, y):
    z = complex(x, y)
    assert abs(t0_map(z) - f0(z)) <= 1e-12 * max(1.0, abs(f0(z)))


@given(st.floats(4.01, 30.0))
def test_halfstrip_real_axis(t0_map, x):
    w = t0_map(x)
    assert abs(w.imag) <= 1e-12 * abs(w)


@given(st.floats(4.05, 15.0), st.floats(-1.5, 1.5))
def test_halfstrip_round_trip(t0_map, x, y):
    z = complex(x, y)
    assert abs(t0_map.inverse(t0_map(z)) - z) < 1e-9


def test_halfstrip_rejects_bad_normalization():
    with pytest.raises(NormalizationError):
        halfstrip_map(4.0, math.pi / 2, 5.0, -1.0)
    with pytest.raises(DomainError):
        halfstrip_map(4.0, math.pi / 2, 3.0, 5.0)


def test_automorphism_examples():
    ident = halfplane_automorphism(1, 1)
    for z in (0.5 + 2j, 3 - 1j, 1e-3 + 0j):
        assert ident(z) == pytest.approx(z, abs=1e-14)
        assert halfplane_automorphism(1, 2)(z) == pytest.approx(2 * z, abs=1e-13)
    m = halfplane_automorphism(1 + 1j, 3)
    assert abs(m(1 + 1j) - 3) <= 1e-12
    d = m.derivative(1 + 1j)
    assert d.real > 0 and abs(d.imag) <= 1e-12


@given(st.builds(complex, st.floats(0.1, 10), st.floats(-10, 10)),
       st.builds(complex, st.floats(0.1, 10), st.floats(-10, 10)),
       st.builds(complex, st.floats(0.01, 50), st.floats(-50, 50)))
def test_automorphism_properties(p, q, z):
    m = halfplane_automorphism(p, q)
    assert abs(m(p) - q) <= 1e-9 * max(1.0, abs(q))
    assert m(z).real > 0
    assert abs(m.inverse(m(z)) - z) <= 1e-7 * max(1.0, abs(z))


def test_automorphism_requires_positive_derivative():
    with pytest.raises(NormalizationError):
        halfplane_automorphism(1, 2, positive_derivative=False)


def test_normalize_examples():
    n = normalize_intervals([[1, 2]])
    assert (n.alphas, n.betas) == ([1], [2])
    n = normalize_intervals([[1, 2], [3, 5]])
    assert [int(a) for a in n.alphas] == [1, 2]
    assert [int(b) for b in n.betas] == [2, 1024]
    with pytest.raises(DomainError):
        normalize_intervals([[0.5, 2]])


intervals = st.lists(st.tuples(st.floats(1.0, 1e6), st.floats(1e-3, 1e4)).map(lambda t: (t[0], t[0] + t[1])),
                     min_size=1, max_size=8)


@given(intervals)
def test_normalize_structure_and_cover(ivs):
    n = normalize_intervals(ivs)
    assert n.alphas[0] == 1 and n.betas[0] >= 2
    for j in range(1, len(n.betas)):
        assert n.alphas[j] == n.betas[j - 1]
        assert n.betas[j] >= n.betas[j - 1] ** 10
    for a, b in ivs:
        hit = [j for j in range(len(n.betas)) if n.alphas[j] < b and a < n.betas[j]]
        assert 1 <= len(hit) <= 2
        assert n.alphas[hit[0]] <= a and b <= n.betas[hit[-1]]


def test_profile_single_interval():
    p = v_profile(1.0, [[1, 2]])
    for x in (0.0, 0.5, 1.0, 7.0):
        assert p.rho(x) == pytest.approx(RHO_ONE_INTERVAL, abs=1e-15)


@given(intervals, st.floats(0.01, 3.0))
def test_profile_invariants(ivs, delta):
    p = v_profile(delta, ivs)
    xs = np.linspace(0.0, p.breakpoints[-1] + 1, 50)
    vals = [p.rho(x) for x in xs]
    assert all(b <= a + 1e-15 for a, b in zip(vals, vals[1:]))
    assert p.rho(0.0) <= delta
    for j, l in enumerate(p.lengths):
        assert p.values[j] == pytest.approx(float(p.delta_hat / (2 * l)), rel=1e-12)


def test_profile_halves_when_length_doubles():
    p = v_profile(1.0, Normalized([1, 2], [2, 2 ** 10]))
    q = v_profile(1.0, Normalized([1, 2], [2, 2 ** 19]))
    assert q.values[0] == p.values[0]
    assert q.values[1] == pytest.approx(p.values[1] / 2, rel=1e-14)


@pytest.fixture(scope="module")
def small_v():
    return VMap(v_profile(1.0, [[1, 2]]))


def test_vmap_normalization(small_v):
    assert abs(small_v.forward(1.0) - 1) <= 1e-9
    for x in (0.3, 2.0, 4.0):
        w = small_v.forward(x)
        assert w.real > 0 and abs(w.imag) <= 1e-8 * abs(w)
    assert small_v.boundary_accuracy <= 1e-6


@given(st.floats(0.05, 6.0), st.floats(-0.9, 0.9))
def test_vmap_round_trip(small_v, x, s):
    v = complex(x, s * small_v.profile.rho(x))
    assert abs(small_v.inverse(small_v.forward(v)) - v) <= 1e-7


@pytest.fixture(scope="module")
def hook_v():
    return hook_vmap()


def test_hook_v_chain(hook_v):
    logs = [float(x) for x in hook_v.profile.log_betas]
    for j, (lo, mid, hi) in enumerate(hook_v.chain_check()):
        assert lo <= mid <= hi
        if j + 2 < len(logs):
            assert logs[j] <= mid <= logs[j + 2]


def test_hook_v_preimage_diameters(hook_v):
    p = hook_v.profile
    for j in range(hook_v.J + 1):
        lo = hook_v.inverse_log(mp.log(p.alphas[j]))
        hi = hook_v.inverse_log(mp.log(p.betas[j]))
        assert abs(complex(hi) - complex(lo)) <= p.delta


def test_hook_v_real_axis(hook_v):
    for x in (0.5, 1.0, 1.02, 3.0):
        lg = complex(hook_v.log_forward(x))
        # Im log psi is arg psi; the map is solved to 1e-6
        assert abs(lg.imag) <= 1e-6


def test_hook_sequences():
    s = HookSequences()
    assert s.a[0] == 6 and s.b[0] == 8
    assert float(s.a[1]) == pytest.approx(F0_AT_6, abs=1e-12)
    with mp.workdps(40):
        assert mp.almosteq(s.b[1], 5 * mp.sinh(4) / mp.sinh(1), 1e-25)
    with pytest.raises(DomainError):
        HookSequences(a=5)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_hook_map_contract(n):
    h = hook_map(n)
    g = hook_geometry(n)
    grid = h.interior_grid()
    assert h.boundary_accuracy <= 1e-3
    assert h.max_derivative(grid) <= DERIVATIVE_BOUND * 1.05
    assert h.round_trip_error(grid) <= 1e-9
    assert h.orientation_ok(grid[::5])
    # phi(1) is at real part b_n - 1
    z1 = h.forward(1.0 + 0j)
    assert z1.label == "b" and abs(complex(z1.offset).real + 1) <= 1e-9
    for z in grid:
        y = complex(h.forward(z).offset).imag
        assert g.y_bot < y < g.y_top


def test_hook_image_band_n1():
    h = hook_map(1)
    for z in h.interior_grid():
        y = complex(h.forward(z).offset).imag
        assert math.pi * (1 + 1 / 6) < y < math.pi * (1 + 1 / 3)


def test_hook_turn_point_on_axis():
    h = hook_map(1)
    wb, img = h.turn_point()
    assert isinstance(wb, BlockCoord)
    assert img.label == "a"
    g = h.geom
    assert g.y_low_top < complex(img.offset).imag < g.y_up_bot
