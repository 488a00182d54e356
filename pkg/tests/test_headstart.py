import math

import mpmath as mp
import pytest
from hypothesis import given, strategies as st

from bouquet.errors import DomainError
from bouquet.headstart import (PhiStep, _witnesses, check_forward_condition, hook_phi, pair_sampler, phi_eval,
                               separation_time, verify_uniform_sampled)
from bouquet.tractmodel import build_model

# 30-digit mpmath oracles, frozen
A1 = 15.4308063481524377847790562076           # 5 sinh 2 / sinh 1
HUNDRED_A1 = 1543.08063481524377847790562076
EXP_RE_F2 = 6.00276173781075960839596321766    # e^2 - ln 4
EXP_RE_F3 = 18.6992425620677771220940654117    # e^3 - ln 4


@pytest.fixture(scope="module")
def exp():
    return build_model("exp")


@pytest.fixture(scope="module")
def strips():
    return build_model("hook_strips")


def test_linear_phi():
    phi = PhiStep.linear_phi(2.0, 0.0)
    assert phi(10) == 20
    assert phi.dominates()
    for a, b in ((1.0, 0.0), (0.5, 3.0), (1.0, -1.0)):
        with pytest.raises(DomainError):
            PhiStep.linear_phi(a, b)


def test_hook_phi_examples():
    phi = hook_phi("hook")
    assert float(phi.alphas[0]) == 3.0
    assert float(phi.alphas[1]) == pytest.approx(A1 / 2, abs=1e-12)
    assert phi(6.5) == pytest.approx(HUNDRED_A1, abs=1e-9)
    assert float(hook_phi("strips").alphas[1]) == pytest.approx(A1, abs=1e-12)
    for variant in ("hook", "strips"):
        p = hook_phi(variant)
        assert p.dominates()
        for a, y in zip(p.alphas, p.ys):
            assert phi_eval(p, a) == (float(y) if y < 1e300 else y)


def test_hook_phi_errors():
    with pytest.raises(DomainError):
        hook_phi("hook")(2.9)
    with pytest.raises(DomainError):
        hook_phi("hook", n_max=3)
    with pytest.raises(DomainError):
        hook_phi("zigzag")


def test_step_validation():
    with pytest.raises(DomainError):
        PhiStep([1, 2], [1.5, 3])           # y_0 below alpha_1
    with pytest.raises(DomainError):
        PhiStep([2, 1], [5, 6])
    with pytest.raises(DomainError):
        PhiStep([1, 2], [5, 4])
    with pytest.raises(DomainError):
        PhiStep([1], [1])
    with pytest.raises(DomainError):
        PhiStep([1, 2], [2, 3], limit=1.5)


@given(st.lists(st.floats(0.1, 100.0), min_size=1, max_size=6, unique=True), st.floats(1.01, 5.0),
       st.floats(0.0, 1.0))
def test_step_phi_invariants(points, factor, u):
    alphas = sorted(points)
    ys = [max(alphas[n + 1] if n + 1 < len(alphas) else 0.0, alphas[n]) * factor for n in range(len(alphas))]
    phi = PhiStep(alphas, ys)
    assert phi.dominates()
    xs = [alphas[0] + u * k for k in range(30)]
    vals = [phi(x) for x in xs]
    assert all(b >= a for a, b in zip(vals, vals[1:]))
    # right-open steps: the value at alpha_n is y_n
    for a, y in zip(phi.alphas, phi.ys):
        assert phi(a) == float(y)


def test_real_pair(exp):
    phi = PhiStep.linear_phi(2.0, 0.0)
    v = check_forward_condition(exp, 2 + 0j, 3 + 0j, phi, 1)
    assert v.status == "pass"
    assert EXP_RE_F3 > 2 * EXP_RE_F2
    assert separation_time(exp, 2 + 0j, 3 + 0j, phi, 5) == 1


def test_identical_points(exp):
    phi = PhiStep.linear_phi(2.0, 0.0)
    assert check_forward_condition(exp, 2 + 0j, 2 + 0j, phi, 2).status == "pass"
    assert separation_time(exp, 2 + 0j, 2 + 0j, phi, 5) is None


def test_boundary_pair_is_reported(exp):
    v = check_forward_condition(exp, 2 + 0j, 4 + 0j, PhiStep.linear_phi(2.0, 0.0), 3)
    assert v.status == "ambiguous" and v.step == 0


def test_different_tracts(exp):
    v = check_forward_condition(exp, 2 + 0j, 2 + 2j * math.pi, PhiStep.linear_phi(2.0, 0.0), 3)
    assert v.status == "different-tracts"


@given(st.floats(0.8, 3.0), st.floats(0.8, 3.0), st.floats(-1.0, 1.0), st.floats(-1.0, 1.0))
def test_order_antisymmetric(exp, x, y, s, t):
    phi = PhiStep.linear_phi(2.0, 0.0)
    z, w = complex(x, s * 0.3), complex(y, t * 0.3)
    if not (exp.tracts[0].contains(z) and exp.tracts[0].contains(w)):
        return
    assert separation_time(exp, z, w, phi, 10) == separation_time(exp, w, z, phi, 10)
    seen, _ = _witnesses(exp, z, w, phi, 10, stop_first=False)
    assert len({how for _, how in seen}) <= 1


@given(st.floats(5.0, 60.0))
def test_sinh_growth_bound(x):
    with mp.workdps(30):
        f = 5 * mp.sinh(mp.mpf(x) - 4) / mp.sinh(1)
        assert f <= 5 * mp.exp(2 * (mp.mpf(x) - 5)) * (1 + mp.mpf(10) ** -25)


def test_exp_sampled(exp):
    rep = verify_uniform_sampled(exp, PhiStep.linear_phi(2.0, 0.0), pair_sampler(exp), 100, 50)
    assert rep["violations"] == []
    assert rep["separated"] == 100 and rep["order_conflicts"] == 0


@pytest.mark.parametrize("variant", ["hook", "strips"])
def test_strips_model_sampled(strips, variant):
    rep = verify_uniform_sampled(strips, hook_phi(variant), pair_sampler(strips), 100, 30)
    assert rep["violations"] == [] and rep["order_conflicts"] == 0
    assert rep["separated"] + rep["inconclusive"] == 100


@pytest.mark.slow
def test_hook_model_sampled():
    model = build_model("hook:n_max=3")
    rep = verify_uniform_sampled(model, hook_phi("hook"), pair_sampler(model), 100, 30)
    assert rep["violations"] == [] and rep["order_conflicts"] == 0
