"""Closed-form multiplier symbols, limits, and expansion-gap measurements."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import intwave as iw


def test_params_ranges():
    iw.Params()  # defaults valid
    with pytest.raises(ValueError):
        iw.Params(eps=1.0)
    with pytest.raises(ValueError):
        iw.Params(eps=-0.1)
    with pytest.raises(ValueError):
        iw.Params(mu=1.5)
    with pytest.raises(ValueError):
        iw.Params(gamma=-0.2)
    with pytest.raises(ValueError):
        iw.Params(bo_inv=2.0)
    with pytest.raises(ValueError):
        iw.Params(mu_minus=0.5)
    with pytest.raises(ValueError):
        iw.Params(alpha=-1.0)
    with pytest.raises(ValueError):
        iw.Params(mu=float("nan"))


def test_require_bond():
    iw.Params(eps=0.1, bo_inv=0.04).require_bond()
    with pytest.raises(ValueError):
        iw.Params(eps=0.3, bo_inv=0.04).require_bond()


def test_symbol_limits_at_zero():
    p = iw.Params(eps=0.1, mu=0.5, gamma=0.4, bo_inv=0.2, mu_minus=4.0)
    for tag in ("T", "I", "t", "k", "sqrt_k", "sqrt_t", "t_inv_half"):
        assert iw.eval_symbol(tag, 0.0, p) == pytest.approx(1.0, abs=1e-14)
    for tag in ("G0", "Gp0", "Gm0", "L_ilw", "P_frak"):
        assert iw.eval_symbol(tag, 0.0, p) == 0.0
    assert iw.eval_symbol("lin_bo", 0.0, p) == 1.0


def test_symbol_values_frozen():
    # independently evaluated closed forms at xi = 2, mu = 0.25, gamma = 0.5,
    # bo_inv = 0.1 (so r = sqrt(mu)|xi| = 1)
    p = iw.Params(eps=0.0, mu=0.25, gamma=0.5, bo_inv=0.1)
    th = math.tanh(1.0)  # 0.7615941559557649
    assert iw.eval_symbol("T", 2.0, p) == pytest.approx(th / 1.0, rel=1e-15)
    assert iw.eval_symbol("I", 2.0, p) == pytest.approx(1.0 / (1.0 + 0.5 * th), rel=1e-15)
    t_val = (th / 1.0) / (1.0 + 0.5 * th)
    assert iw.eval_symbol("t", 2.0, p) == pytest.approx(t_val, rel=1e-15)
    k_val = t_val * (1.0 + 0.1 * 4.0)
    assert iw.eval_symbol("k", 2.0, p) == pytest.approx(k_val, rel=1e-15)
    assert iw.eval_symbol("sqrt_k", 2.0, p) == pytest.approx(math.sqrt(k_val), rel=1e-15)
    assert iw.eval_symbol("Gp0", 2.0, p) == pytest.approx(th, rel=1e-15)
    assert iw.eval_symbol("Gm0", 2.0, p) == -1.0
    assert iw.eval_symbol("lin_bo", 2.0, p) == pytest.approx(1.0 - 0.25, rel=1e-15)
    assert iw.eval_symbol("lin_benjamin", 2.0, p) == pytest.approx(0.75 + 0.2, rel=1e-15)
    assert iw.eval_symbol("P_frak", 2.0, p) == pytest.approx(2.0 / math.sqrt(2.0), rel=1e-15)
    # coupled flat operator factors exactly
    g0 = iw.eval_symbol("Gp0", 2.0, p) * iw.eval_symbol("I", 2.0, p)
    assert iw.eval_symbol("G0", 2.0, p) == pytest.approx(g0, rel=1e-15)


def test_symbols_even_and_shape_preserving():
    p = iw.Params(mu=0.3, gamma=0.6, bo_inv=0.05, mu_minus=3.0)
    xi = np.array([[0.5, -0.5], [2.0, -2.0]])
    for tag in iw.SYMBOL_TAGS:
        out = iw.eval_symbol(tag, xi, p)
        assert out.shape == xi.shape
        assert np.array_equal(out[:, 0], out[:, 1])  # even in xi
    assert isinstance(iw.eval_symbol("T", 1.0, p), float)


def test_unknown_tag_and_nonfinite_xi():
    p = iw.Params()
    with pytest.raises(ValueError):
        iw.eval_symbol("nope", 1.0, p)
    with pytest.raises(ValueError):
        iw.eval_symbol("T", float("inf"), p)
    with pytest.raises(ValueError):
        iw.symbol_fn("nope", p)


def test_symbol_fn_closure():
    p = iw.Params(mu=0.4, gamma=0.3)
    xi = np.linspace(-8.0, 8.0, 33)
    assert np.array_equal(iw.symbol_fn("t", p)(xi), iw.eval_symbol("t", xi, p))


def test_ilw_symbol_series_continuity_and_deep_limit():
    p = iw.Params(mu_minus=4.0)
    # continuity across the series/direct switch at r = 1e-3
    below = iw.eval_symbol("L_ilw", 0.9999e-3 / 2.0, p)
    above = iw.eval_symbol("L_ilw", 1.0001e-3 / 2.0, p)
    assert abs(above - below) < 1e-10
    # deep lower layer: L_ilw -> |xi| with defect 1/sqrt(mu_minus) + exp tail
    xi = np.array([0.5, 1.0, 3.0])
    for mm in (100.0, 2500.0):
        pm = iw.Params(mu_minus=mm)
        gap = np.abs(iw.eval_symbol("L_ilw", xi, pm) - np.abs(xi))
        assert np.all(gap <= 1.0 / math.sqrt(mm) + 1e-12)


def test_t_symbol_two_sided_bounds():
    # 1/(1+gamma) <= t <= 1 for every xi
    xi = np.linspace(0.0, 200.0, 2001)
    for gamma in (0.0, 0.3, 0.9):
        p = iw.Params(mu=1.0, gamma=gamma)
        t = iw.eval_symbol("t", xi, p)
        assert np.all(t <= 1.0 + 1e-14)
        assert np.all(t >= 1.0 / (1.0 + gamma) - 1e-14)


def test_expansion_gap_single_mode_identities():
    # On a pure mode sin(k x) each gap collapses to a symbol ratio.
    g = iw.make_grid(128, 2.0 * np.pi)
    k = 4.0
    p = iw.Params(eps=0.1, mu=0.3, gamma=0.5, bo_inv=0.09)
    f = iw.field_from_function(g, lambda x: np.sin(k * x))
    want = abs(iw.eval_symbol("T", k, p) - 1.0) / k**2
    assert iw.expansion_gap("est_T", f, p) == pytest.approx(want, rel=1e-12)
    want = abs(iw.eval_symbol("I", k, p) - 1.0) / k
    assert iw.expansion_gap("inv_tanh", f, p) == pytest.approx(want, rel=1e-12)
    want = abs(iw.eval_symbol("sqrt_k", k, p) - 1.0) / (k * (1.0 + k * k) ** 0.5)
    assert iw.expansion_gap("est_sqrtK", f, p) == pytest.approx(want, rel=1e-12)
    num = abs(iw.eval_symbol("sqrt_k", k, p) - iw.eval_symbol("lin_benjamin", k, p))
    want = num / (k**2 * (1.0 + k * k) ** 0.5)
    assert iw.expansion_gap("precise_sqrtK", f, p) == pytest.approx(want, rel=1e-12)


def test_expansion_gap_errors():
    g = iw.make_grid(32, 2.0 * np.pi)
    p = iw.Params()
    f = iw.field_from_values(g, np.ones(g.n))
    with pytest.raises(ValueError):
        iw.expansion_gap("est_T", f, p)  # derivative of a constant vanishes
    f2 = iw.field_from_function(g, np.sin)
    with pytest.raises(ValueError):
        iw.expansion_gap("unknown", f2, p)


def test_coercivity_constants_and_check():
    p = iw.Params(mu=0.25, gamma=0.5)
    xi = np.linspace(0.0, 40.0, 401)
    c = iw.coercivity_constants(xi, p, h0=0.5)
    assert c["floor_ok"]
    assert c["C_lower"] > 0.0
    assert c["C_upper"] <= (1.0 + p.gamma) + 1e-12
    assert iw.coercivity_check(xi, p, h0=0.5)
    with pytest.raises(ValueError):
        iw.coercivity_constants(xi, p, h0=0.0)
    with pytest.raises(ValueError):
        iw.coercivity_constants(xi, p, h0=1.0)


@settings(max_examples=60, deadline=None)
@given(
    st.floats(0.0, 0.99),
    st.floats(0.0, 1.0),
    st.floats(0.0, 1.0),
    st.floats(0.0, 50.0),
)
def test_t_inverse_bounded_property(eps, mu, gamma, xi):
    p = iw.Params(eps=eps, mu=mu, gamma=gamma)
    t = iw.eval_symbol("t", xi, p)
    assert 1.0 / (1.0 + gamma) - 1e-12 <= t <= 1.0 + 1e-12
