"""Shared helpers for the test suite."""

import numpy as np
import pytest

import intwave as iw


def make_band_limited(grid, band=6, seed=0):
    """Zero-mean real field on modes 1..band, unit discrete L2 norm."""
    rng = np.random.default_rng(seed)
    coeffs = rng.standard_normal(band) + 1j * rng.standard_normal(band)
    spec = np.zeros(grid.n, dtype=complex)
    spec[1 : band + 1] = coeffs
    spec[-band:] = np.conj(coeffs[::-1])
    f = iw.field_from_spectrum(grid, spec)
    return iw.field_from_values(grid, f.values / iw.norm(f, iw.NormSpec.l2()))


@pytest.fixture
def band_limited():
    return make_band_limited


def grid_inner(f, g):
    """Discrete L2 pairing (L/n) sum f g."""
    return float(np.sum(f.values * g.values) * f.grid.length / f.grid.n)
