"""Model tendencies against closed-form single-mode oracles, initial-data
constructors, and representation changes."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import intwave as iw


def test_state_validation():
    g = iw.make_grid(16, 1.0)
    f = iw.field_from_values(g, np.zeros(g.n))
    iw.State((f,))
    iw.State((f, f), time=2.0)
    with pytest.raises(ValueError):
        iw.State((f, f, f))
    g2 = iw.make_grid(32, 1.0)
    f2 = iw.field_from_values(g2, np.zeros(g2.n))
    with pytest.raises(ValueError):
        iw.State((f, f2))
    with pytest.raises(ValueError):
        iw.State((f,), time=-1.0)


def test_state_kind_and_spectra():
    g = iw.make_grid(16, 1.0)
    f = iw.field_from_function(g, lambda x: np.sin(2.0 * np.pi * x))
    assert iw.State((f,)).kind == "scalar"
    assert iw.State((f, f)).kind == "system"
    assert iw.State((f, f)).spectra().shape == (2, g.n)


def test_model_spec_validation():
    with pytest.raises(ValueError):
        iw.ModelSpec("KDV", iw.Params())
    m = iw.ModelSpec("WB_SYS", iw.Params())
    assert m.is_system and m.field_names == ("zeta", "u")
    g = iw.make_grid(16, 1.0)
    f = iw.field_from_values(g, np.zeros(g.n))
    with pytest.raises(ValueError):
        m.rhs(iw.State((f,)))  # scalar state into a system model


def test_scalar_linear_blocks_skew():
    # purely imaginary odd diagonal symbols: the linear flow is an L2 isometry
    g = iw.make_grid(64, 10.0)
    neg = (-np.arange(g.n)) % g.n
    for mid in ("BO", "BENJAMIN", "WB_EQ", "ILW"):
        m = iw.ModelSpec(mid, iw.Params(mu=0.3, gamma=0.5, bo_inv=0.1, mu_minus=2.0))
        kind, lam = m.linear_blocks(g)
        assert kind == "diag"
        assert np.max(np.abs(lam.real)) == 0.0
        assert np.max(np.abs(lam + lam[neg])) < 1e-14


def test_bo_tendency_single_mode_oracle():
    """zeta = a sin(kx): the full tendency is
    -a k (1 - gamma sqrt(mu) k / 2) cos(kx) - (3 eps/4) a^2 k sin(2kx)."""
    g = iw.make_grid(256, 2.0 * np.pi)
    p = iw.Params(eps=0.3, mu=0.25, gamma=0.5)
    k, a = 3.0, 0.7
    x = g.points
    st_ = iw.State((iw.field_from_values(g, a * np.sin(k * x)),))
    (dz,) = iw.rhs_bo(st_, p)
    lin = -a * k * (1.0 - 0.5 * p.gamma * np.sqrt(p.mu) * k) * np.cos(k * x)
    nl = -0.75 * p.eps * a * a * k * np.sin(2.0 * k * x)
    assert np.max(np.abs(dz.values - (lin + nl))) < 1e-11


def test_benjamin_capillary_term():
    # BENJAMIN minus BO on shared data isolates the capillary symbol
    g = iw.make_grid(256, 2.0 * np.pi)
    p = iw.Params(eps=0.3, mu=0.25, gamma=0.5, bo_inv=0.1)
    k, a = 3.0, 0.7
    x = g.points
    st_ = iw.State((iw.field_from_values(g, a * np.sin(k * x)),))
    (d_bo,) = iw.rhs_bo(st_, p)
    (d_ben,) = iw.rhs_benjamin(st_, p)
    extra = -a * k * (0.5 * p.bo_inv * k * k) * np.cos(k * x)
    assert np.max(np.abs(d_ben.values - d_bo.values - extra)) < 1e-9


def test_wb_equation_linear_symbol():
    g = iw.make_grid(256, 2.0 * np.pi)
    p = iw.Params(eps=0.0, mu=0.25, gamma=0.5, bo_inv=0.1)
    k, a = 4.0, 0.5
    x = g.points
    st_ = iw.State((iw.field_from_values(g, a * np.sin(k * x)),))
    (dz,) = iw.rhs_wb_equation(st_, p)
    want = -a * k * iw.eval_symbol("sqrt_k", k, p) * np.cos(k * x)
    assert np.max(np.abs(dz.values - want)) < 1e-12


def test_wb_system_tendency_oracle():
    """zeta = a cos(kx), u = b sin(kx); products land on mode 2k and pass
    through the t(D) smoothing symbol."""
    g = iw.make_grid(256, 2.0 * np.pi)
    p = iw.Params(eps=0.3, mu=0.25, gamma=0.5, bo_inv=0.1)
    k, a, b = 3.0, 0.7, 0.4
    x = g.points
    zc = iw.field_from_values(g, a * np.cos(k * x))
    u = iw.field_from_values(g, b * np.sin(k * x))
    dz, du = iw.rhs_wb_system(iw.State((zc, u)), p)
    t2k = iw.eval_symbol("t", 2.0 * k, p)
    kk = iw.eval_symbol("k", k, p)
    want_dz = -b * k * np.cos(k * x) - p.eps * t2k * a * b * k * np.cos(2.0 * k * x)
    want_du = a * k * kk * np.sin(k * x) - 0.5 * p.eps * t2k * b * b * k * np.sin(2.0 * k * x)
    assert np.max(np.abs(dz.values - want_dz)) < 1e-11
    assert np.max(np.abs(du.values - want_du)) < 1e-11


def test_regbo_system_tendency_oracle():
    g = iw.make_grid(256, 2.0 * np.pi)
    p = iw.Params(eps=0.3, mu=0.25, gamma=0.5, alpha=2.0)
    k, a, b = 3.0, 0.7, 0.4
    x = g.points
    zc = iw.field_from_values(g, a * np.cos(k * x))
    v = iw.field_from_values(g, b * np.sin(k * x))
    dz, dv = iw.rhs_regbo_system(iw.State((zc, v)), p)
    root = lambda q: p.gamma * np.sqrt(p.mu) * abs(q)
    a_sym = lambda q: (1.0 + (p.alpha - 1.0) * root(q)) / (1.0 + p.alpha * root(q))
    m_inv = lambda q: 1.0 / (1.0 + p.alpha * root(q))
    want_dz = -a_sym(k) * b * k * np.cos(k * x) - p.eps * m_inv(2.0 * k) * a * b * k * np.cos(2.0 * k * x)
    want_dv = a * k * np.sin(k * x) - 0.5 * p.eps * b * b * k * np.sin(2.0 * k * x)
    assert np.max(np.abs(dz.values - want_dz)) < 1e-11
    assert np.max(np.abs(dv.values - want_dv)) < 1e-11


def test_tendencies_conserve_mean():
    # every tendency is an exact x-derivative: its mean mode vanishes
    g = iw.make_grid(128, 20.0)
    rng = np.random.default_rng(7)
    z = iw.field_from_values(g, rng.standard_normal(g.n))
    w = iw.field_from_values(g, rng.standard_normal(g.n))
    p = iw.Params(eps=0.4, mu=0.3, gamma=0.6, bo_inv=0.2, mu_minus=2.0, alpha=1.5)
    for mid in iw.MODEL_IDS:
        m = iw.ModelSpec(mid, p)
        state = iw.State((z,)) if not m.is_system else iw.State((z, w))
        for f in m.rhs(state):
            assert abs(f.spectrum[0].real) < 1e-15


def test_ilw_tendency_approaches_bo():
    g = iw.make_grid(256, 100.0)
    st_ = iw.State((iw.gaussian_bump(g),))
    (d_bo,) = iw.rhs_bo(st_, iw.Params(eps=0.1, mu=0.25, gamma=0.5))
    gaps = []
    for mm in (16.0, 256.0):
        (d_ilw,) = iw.rhs_ilw(st_, iw.Params(eps=0.1, mu=0.25, gamma=0.5, mu_minus=mm))
        gaps.append(np.max(np.abs(d_ilw.values - d_bo.values)))
    assert gaps[1] < gaps[0]
    assert 2.5 < gaps[0] / gaps[1] < 6.0  # defect is O(1/sqrt(mu_minus))


def test_u_v_representation_roundtrip():
    g = iw.make_grid(128, 30.0)
    rng = np.random.default_rng(5)
    p = iw.Params(mu=0.25, gamma=0.5)
    v = iw.field_from_values(g, rng.standard_normal(g.n))
    back = iw.v_from_u(iw.u_from_v(v, p), p)
    assert np.max(np.abs(back.values - v.values)) < 1e-12


def test_make_unidirectional_data():
    g = iw.make_grid(128, 40.0)
    p = iw.Params(eps=0.2, mu=0.25, gamma=0.5, bo_inv=0.04)
    z0 = iw.gaussian_bump(g)
    zeta0, v0, u0 = iw.make_unidirectional_data(z0, p)
    assert zeta0 is z0
    sq = iw.dealias(iw.field_from_values(g, z0.values**2))
    want = iw.eval_symbol("sqrt_k", g.wavenumbers, p) * z0.spectrum - 0.25 * p.eps * sq.spectrum
    assert np.max(np.abs(u0.spectrum - want)) < 1e-14
    assert np.max(np.abs(iw.u_from_v(v0, p).values - u0.values)) < 1e-12


def test_bo_soliton_shape_and_speed():
    g = iw.make_grid(1024, 400.0)
    p = iw.Params(eps=0.2, mu=0.25, gamma=0.5)
    c, x0 = 1.5, 10.0
    f = iw.bo_soliton(g, c, x0, p)
    amp = 4.0 * p.gamma * np.sqrt(p.mu) * c / (3.0 * p.eps)
    j = np.argmax(f.values)
    assert abs(g.points[j] - x0) <= g.spacing
    assert f.values[j] == pytest.approx(amp, rel=1e-3)
    assert iw.bo_soliton_speed(c, p) == pytest.approx(1.0 + 0.5 * p.gamma * np.sqrt(p.mu) * c)
    with pytest.raises(ValueError):
        iw.bo_soliton(g, -1.0, 0.0, p)
    with pytest.raises(ValueError):
        iw.bo_soliton(g, 1.0, 0.0, iw.Params(eps=0.0, mu=0.25, gamma=0.5))


def test_gaussian_bump_defaults():
    g = iw.make_grid(256, 100.0)
    f = iw.gaussian_bump(g)
    assert abs(f.mean()) < 1e-15  # mean-subtracted
    j = np.argmax(f.values)
    assert abs(g.points[j]) <= g.spacing
    two = iw.gaussian_bump(g, amplitude=2.0)
    assert np.max(np.abs(two.values - 2.0 * f.values)) < 1e-13


@settings(max_examples=25, deadline=None)
@given(
    st.floats(0.01, 0.9),
    st.floats(0.01, 1.0),
    st.floats(0.0, 1.0),
    st.integers(0, 2**31 - 1),
)
def test_mean_conservation_property(eps, mu, gamma, seed):
    g = iw.make_grid(64, 10.0)
    rng = np.random.default_rng(seed)
    z = iw.field_from_values(g, rng.standard_normal(g.n))
    p = iw.Params(eps=eps, mu=mu, gamma=gamma)
    (dz,) = iw.rhs_bo(iw.State((z,)), p)
    assert abs(dz.spectrum[0].real) < 1e-14
