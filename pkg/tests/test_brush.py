import numpy as np
import pytest
from hypothesis import given, strategies as st

from bouquet.brush import (brush_convergence_probe, detect_bad_pair, fast_escape_point, hair_order, hausdorff,
                           neighbor_address)
from bouquet.contraction import M_sum
from bouquet.errors import HypothesisError, PreconditionError
from bouquet.tractmodel import TractRef, build_model, orbit_escape, parse_address, trace_hair

HOOK_A, HOOK_B = 6.0, 8.0


@pytest.fixture(scope="module")
def exp():
    return build_model("exp")


@pytest.fixture(scope="module")
def hair(exp):
    return trace_hair(exp, parse_address("0+1 | 0"), list(exp.endpoint_potential + np.geomspace(0.01, 3, 12)), 40)


def test_hair_order_examples(hair):
    assert hair_order(hair, 0, 5) == -1
    assert hair_order(hair, 5, 0) == 1
    assert hair_order(hair, 3, 3) == 0
    with pytest.raises(PreconditionError):
        hair_order(hair, 0, 12)


@given(st.integers(0, 11), st.integers(0, 11), st.integers(0, 11))
def test_hair_order_is_strict_total(hair, i, j, k):
    assert hair_order(hair, i, j) == -hair_order(hair, j, i)
    assert (hair_order(hair, i, j) == 0) == (i == j)
    if hair_order(hair, i, j) < 0 and hair_order(hair, j, k) < 0:
        assert hair_order(hair, i, k) < 0


def test_hausdorff_examples():
    assert hausdorff([0j, 1 + 0j], [1j, 1 + 1j]) == 1.0
    assert hausdorff([0j], [3 + 4j]) == 5.0
    assert hausdorff([0j, 2 + 0j], [0j, 2 + 0j]) == 0.0
    # a point on the segment is at distance 0 from it
    assert hausdorff([1 + 0j], [0j, 2 + 0j]) == 1.0


def test_neighbor_address():
    a = parse_address("0 | 0")
    b = neighbor_address(a, 3)
    assert b.agree_until(a, 10) == 3
    assert b[3] == TractRef(0, 1) and all(b[k] == a[k] for k in range(4, 20))
    c = neighbor_address(parse_address("0+1 0-2 | 0"), 1, step=-1)
    assert c[1] == TractRef(0, -3)


def test_brush_ratios(exp):
    rep = brush_convergence_probe(exp, "0 | 0", N_range=range(5, 12))
    assert all(d >= 0 for d in rep.distances)
    resolved = [r for r in rep.ratios if r is not None]
    assert resolved and max(resolved) <= 0.75
    assert rep.resolution < min(rep.distances)
    assert rep.window[0] > exp.endpoint_potential


def test_brush_identical_neighbor(exp):
    rep = brush_convergence_probe(exp, "0 | 0", neighbor_generator=lambda a, N: a, N_range=range(5, 8))
    assert rep.distances == [0.0, 0.0, 0.0]
    assert rep.ratios == [None, None]


def test_brush_depth_guard(exp):
    with pytest.raises(PreconditionError):
        brush_convergence_probe(exp, "0", N_range=range(5, 30), depth=20)


def test_no_bad_pair_on_exp(exp):
    assert detect_bad_pair(exp, "0", ks=(1, 2, 3), a_t=2.0, b_t=3.0) is None
    with pytest.raises(PreconditionError):
        detect_bad_pair(exp, "0", a_t=3.0, b_t=2.0)


@pytest.mark.slow
def test_hook_bad_pair():
    model = build_model("hook:n_max=3")
    wit = detect_bad_pair(model, "0", ks=(1, 2, 3), a_t=HOOK_A, b_t=HOOK_B)
    assert wit is not None
    assert (wit.z, wit.w) == (HOOK_A, HOOK_B)
    recs = wit.probes["records"]
    assert [r["k"] for r in recs] == [1, 2, 3]
    for r in recs:
        assert r["reversed"] and r["margin"] >= 2 * r["error"]
    da = [r["dist_a"] for r in recs]
    db = [r["dist_b"] for r in recs]
    assert all(b < a for a, b in zip(da, da[1:]))
    assert all(b < a for a, b in zip(db, db[1:]))


@pytest.mark.parametrize("n", [0, 1])
def test_fast_escape_on_invariant_hair(exp, n):
    m_n = sum(M_sum(n))
    arc = np.linspace(0.8, 0.8 + 2 * m_n, 801) + 0j
    z, rep = fast_escape_point(exp, arc, n, 8)
    assert z is not None
    # the point stays right of alpha_{n+j}
    reals = orbit_escape(exp, z, 0.0, 8)["real_parts"]
    for j, r in enumerate(reals[1:], 1):
        assert r > rep["alphas"][j]
    for d, bound in zip(rep["exclusion_diameters"], rep["exclusion_bounds"]):
        assert d <= bound
    assert rep["sum_exclusion"] <= m_n


def test_fast_escape_hypotheses(exp):
    m0 = sum(M_sum(0))
    with pytest.raises(HypothesisError):
        fast_escape_point(exp, np.linspace(3, 3 + 0.9 * m0, 200) + 0j, 0, 3)
    with pytest.raises(HypothesisError):
        fast_escape_point(exp, np.linspace(3, 9, 601) + 0.2j, 0, 3)
    with pytest.raises(PreconditionError):
        fast_escape_point(exp, np.array([3, 9]) + 0j, 0, 3)
    with pytest.raises(PreconditionError):
        fast_escape_point(exp, np.linspace(0.1, 9, 601) + 0j, 0, 3)
