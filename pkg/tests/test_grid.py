"""Spectral substrate: grids, fields, multipliers, norms, dealiasing."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import intwave as iw
from intwave.grid import dealias, dealias_mask, derivative


def test_grid_validation():
    with pytest.raises(ValueError):
        iw.make_grid(7, 1.0)  # odd
    with pytest.raises(ValueError):
        iw.make_grid(4, 1.0)  # too small
    with pytest.raises(ValueError):
        iw.make_grid(16, 0.0)
    with pytest.raises(ValueError):
        iw.make_grid(16, -2.0)
    with pytest.raises(TypeError):
        iw.make_grid(16.0, 1.0)


def test_grid_geometry():
    g = iw.make_grid(16, 8.0)
    assert g.points[0] == -4.0
    assert np.allclose(np.diff(g.points), 0.5)
    assert g.spacing == 0.5
    assert g.xi_min == pytest.approx(2.0 * np.pi / 8.0)
    # FFT-ordered integer multiples of xi_min, Nyquist at -n/2
    k = np.fft.fftfreq(16, d=1.0 / 16)
    assert np.allclose(g.wavenumbers, 2.0 * np.pi * k / 8.0)


def test_roundtrip_values_to_spectrum_and_back():
    g = iw.make_grid(64, 5.0)
    rng = np.random.default_rng(0)
    v = rng.standard_normal(g.n)
    f = iw.field_from_values(g, v)
    back = iw.field_from_spectrum(g, f.spectrum)
    assert np.max(np.abs(back.values - v)) < 1e-13


def test_parseval_identity():
    g = iw.make_grid(64, 3.0)
    rng = np.random.default_rng(1)
    f = iw.field_from_values(g, rng.standard_normal(g.n))
    phys = np.sum(f.values**2) * g.length / g.n
    spec = g.length * np.sum(np.abs(f.spectrum) ** 2)
    assert phys == pytest.approx(spec, rel=1e-13)
    assert iw.norm(f, iw.NormSpec.l2()) == pytest.approx(np.sqrt(phys), rel=1e-13)


def test_multiplier_composition_is_pointwise_product():
    g = iw.make_grid(64, 2.0 * np.pi)
    rng = np.random.default_rng(2)
    f = iw.field_from_values(g, rng.standard_normal(g.n))
    m1 = 1.0 / (1.0 + g.wavenumbers**2)
    m2 = np.tanh(np.abs(g.wavenumbers))
    once = iw.apply_multiplier(f, m1 * m2)
    twice = iw.apply_multiplier(iw.apply_multiplier(f, m1), m2)
    assert np.max(np.abs(once.values - twice.values)) < 1e-14


def test_multiplier_callable_matches_array():
    g = iw.make_grid(32, 1.0)
    f = iw.field_from_function(g, lambda x: np.cos(2.0 * np.pi * x))
    arr = np.exp(-np.abs(g.wavenumbers))
    a = iw.apply_multiplier(f, arr)
    b = iw.apply_multiplier(f, lambda xi: np.exp(-np.abs(xi)))
    assert np.array_equal(a.values, b.values)


def test_multiplier_enforces_reality():
    g = iw.make_grid(32, 2.0 * np.pi)
    rng = np.random.default_rng(3)
    f = iw.field_from_values(g, rng.standard_normal(g.n))
    out = iw.apply_multiplier(f, 1j * g.wavenumbers)  # odd imaginary symbol
    # exact conjugate symmetry, not just approximate realness
    neg = (-np.arange(g.n)) % g.n
    assert np.array_equal(out.spectrum, np.conj(out.spectrum[neg]))


def test_multiplier_rejects_bad_symbols():
    g = iw.make_grid(16, 1.0)
    f = iw.field_from_values(g, np.ones(g.n))
    with pytest.raises(ValueError):
        iw.apply_multiplier(f, np.ones(g.n - 1))
    bad = np.ones(g.n)
    bad[3] = np.inf
    with pytest.raises(ValueError):
        iw.apply_multiplier(f, bad)
    with pytest.raises(ValueError):
        iw.apply_multiplier(f, lambda xi: 1.0 / xi)  # inf at the mean mode


def test_derivative_exact_on_trig():
    g = iw.make_grid(64, 2.0 * np.pi)
    k = 5.0
    f = iw.field_from_function(g, lambda x: np.sin(k * x))
    d1 = derivative(f)
    assert np.max(np.abs(d1.values - k * np.cos(k * g.points))) < 1e-12
    d2 = derivative(f, order=2)
    assert np.max(np.abs(d2.values + k * k * np.sin(k * g.points))) < 1e-11


def test_norm_single_mode_values():
    # |sin(kx)|_{H^s}^2 = L/2 (1+k^2)^s on a 2 pi / k - periodic box
    g = iw.make_grid(64, 2.0 * np.pi)
    k = 3.0
    f = iw.field_from_function(g, lambda x: np.sin(k * x))
    want_l2 = np.sqrt(g.length / 2.0)
    assert iw.norm(f, iw.NormSpec.l2()) == pytest.approx(want_l2, rel=1e-13)
    s = 1.5
    want_hs = want_l2 * (1.0 + k * k) ** (s / 2.0)
    assert iw.norm(f, iw.NormSpec.hs(s)) == pytest.approx(want_hs, rel=1e-13)
    bo = 0.25
    want_bo = want_l2 * np.sqrt((1.0 + k * k) ** s * (1.0 + bo * k * k))
    assert iw.norm(f, iw.NormSpec.hs_bo(s, bo)) == pytest.approx(want_bo, rel=1e-13)


def test_homogeneous_norms_kill_constants():
    g = iw.make_grid(32, 4.0)
    const = iw.field_from_values(g, 2.5 * np.ones(g.n))
    assert iw.norm(const, iw.NormSpec.hdot_half_mu(0.3)) == 0.0
    assert iw.norm(const, iw.NormSpec.hring_half(1.0)) == 0.0
    assert iw.norm(const, iw.NormSpec.l2()) > 0.0


def test_norm_spec_validation():
    with pytest.raises(ValueError):
        iw.NormSpec("H_infinity")


def test_dealias_mask_cutoff_and_nyquist():
    g = iw.make_grid(64, 2.0 * np.pi)
    keep = dealias_mask(g)
    xi_max = np.max(np.abs(g.wavenumbers))
    assert np.array_equal(keep, np.abs(g.wavenumbers) <= (2.0 / 3.0) * xi_max)
    assert not keep[g.n // 2]  # Nyquist always dropped


def test_dealias_idempotent_and_projective():
    g = iw.make_grid(64, 2.0 * np.pi)
    rng = np.random.default_rng(4)
    f = iw.field_from_values(g, rng.standard_normal(g.n))
    once = dealias(f)
    twice = dealias(once)
    assert np.array_equal(once.values, twice.values)
    assert np.all(once.spectrum[~dealias_mask(g)] == 0.0)


def test_field_arrays_read_only():
    g = iw.make_grid(16, 1.0)
    f = iw.field_from_values(g, np.ones(g.n))
    with pytest.raises(ValueError):
        f.values[0] = 2.0
    with pytest.raises(ValueError):
        f.spectrum[0] = 0.0


def test_field_rejects_bad_shapes_and_nonfinite():
    g = iw.make_grid(16, 1.0)
    with pytest.raises(ValueError):
        iw.field_from_values(g, np.ones(g.n + 2))
    v = np.ones(g.n)
    v[5] = np.nan
    with pytest.raises(ValueError):
        iw.field_from_values(g, v)


def test_field_mean():
    g = iw.make_grid(32, 2.0)
    f = iw.field_from_function(g, lambda x: 1.5 + np.sin(np.pi * x))
    assert f.mean() == pytest.approx(1.5, abs=1e-13)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(-100.0, 100.0), min_size=16, max_size=16))
def test_roundtrip_property(vals):
    g = iw.make_grid(16, 3.0)
    f = iw.field_from_values(g, np.asarray(vals))
    back = iw.field_from_spectrum(g, f.spectrum)
    scale = max(1.0, np.max(np.abs(vals)))
    assert np.max(np.abs(back.values - np.asarray(vals))) < 1e-12 * scale


@settings(max_examples=50, deadline=None)
@given(
    st.lists(st.floats(-10.0, 10.0), min_size=16, max_size=16),
    st.floats(-5.0, 5.0).filter(lambda c: abs(c) > 1e-6),
)
def test_norm_absolute_homogeneity(vals, c):
    g = iw.make_grid(16, 2.0)
    f = iw.field_from_values(g, np.asarray(vals))
    cf = iw.field_from_values(g, c * np.asarray(vals))
    for spec in (iw.NormSpec.l2(), iw.NormSpec.hs(1.0), iw.NormSpec.hring_half(0.5)):
        assert iw.norm(cf, spec) == pytest.approx(abs(c) * iw.norm(f, spec), rel=1e-10, abs=1e-12)
