"""Spectral substrate: periodic grid, real fields with cached spectra,
Fourier-multiplier application, Sobolev-type norms, and 2/3-rule dealiasing.

Conventions
-----------
The box is [-L/2, L/2) sampled at x_j = -L/2 + j L / n.  Spectra are stored
in numpy FFT order as normalized coefficients c_k = DFT(values)_k / n, so the
discrete Parseval identity reads (L/n) sum_j f_j^2 = L sum_k |c_k|^2 and every
norm below is a plain weighted l2 sum over modes.  Wavenumbers are
xi_k = 2 pi k / L for k in {-n/2, ..., n/2 - 1}; the Nyquist slot sits at
k = -n/2 and has no conjugate partner.  Homogeneous norm weights skip xi = 0;
constants pass through multipliers whose symbol has a finite limit there.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

__all__ = [
    "Grid",
    "Field",
    "NormSpec",
    "make_grid",
    "field_from_values",
    "field_from_function",
    "field_from_spectrum",
    "apply_multiplier",
    "norm",
    "dealias",
    "dealias_mask",
    "derivative",
]


@dataclass(frozen=True)
class Grid:
    """Uniform periodic grid on a box of length ``length`` with ``n`` points.

    Parameters
    ----------
    n : int
        Number of points; must be even and at least 8.
    length : float
        Box size L > 0.

    Attributes
    ----------
    points : ndarray
        Sample locations x_j = -L/2 + j L / n.
    wavenumbers : ndarray
        xi_k = 2 pi k / L in FFT order; the Nyquist slot carries k = -n/2.
    """

    n: int
    length: float

    def __post_init__(self) -> None:
        if not isinstance(self.n, (int, np.integer)):
            raise TypeError(f"n must be an integer, got {type(self.n).__name__}")
        if self.n < 8 or self.n % 2 != 0:
            raise ValueError(f"n must be even and >= 8, got {self.n}")
        if not np.isfinite(self.length) or self.length <= 0:
            raise ValueError(f"length must be positive and finite, got {self.length}")
        object.__setattr__(self, "length", float(self.length))
        x = -0.5 * self.length + self.length * np.arange(self.n) / self.n
        k = np.fft.fftfreq(self.n, d=1.0 / self.n)  # integer mode numbers
        xi = 2.0 * np.pi * k / self.length
        for name, arr in (("points", x), ("_modes", k), ("wavenumbers", xi)):
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    @property
    def spacing(self) -> float:
        return self.length / self.n

    @property
    def xi_min(self) -> float:
        """Smallest nonzero wavenumber magnitude, 2 pi / L."""
        return 2.0 * np.pi / self.length


def make_grid(n: int, length: float) -> Grid:
    """Build a periodic grid; rejects odd or tiny n and non-positive length."""
    return Grid(n=n, length=length)


# Index permutation sending mode k to mode -k (Nyquist and DC map to themselves
# modulo n, which is exactly the pairing used to enforce conjugate symmetry).
def _neg_index(n: int) -> np.ndarray:
    return (-np.arange(n)) % n


@dataclass(frozen=True)
class Field:
    """Real periodic grid function with its spectrum kept consistent.

    ``values`` are the samples f(x_j); ``spectrum`` holds the normalized DFT
    coefficients c_k (FFT order).  Both arrays are read-only; construct new
    fields through the ``field_from_*`` helpers or the operations below.
    """

    grid: Grid
    values: np.ndarray
    spectrum: np.ndarray

    def __post_init__(self) -> None:
        # Private copies: fields are value-semantic and their arrays read-only.
        v = np.array(self.values, dtype=float, copy=True)
        c = np.array(self.spectrum, dtype=complex, copy=True)
        if v.shape != (self.grid.n,) or c.shape != (self.grid.n,):
            raise ValueError(
                f"field arrays must have shape ({self.grid.n},), "
                f"got values {v.shape} and spectrum {c.shape}"
            )
        if not np.all(np.isfinite(v)) or not np.all(np.isfinite(c.view(float))):
            raise ValueError("field contains non-finite entries")
        v.flags.writeable = False
        c.flags.writeable = False
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "spectrum", c)

    def mean(self) -> float:
        return float(self.spectrum[0].real)


def field_from_values(grid: Grid, values: np.ndarray) -> Field:
    values = np.asarray(values, dtype=float)
    spectrum = np.fft.fft(values) / grid.n
    return Field(grid=grid, values=values, spectrum=spectrum)


def field_from_function(grid: Grid, func: Callable[[np.ndarray], np.ndarray]) -> Field:
    return field_from_values(grid, np.asarray(func(grid.points), dtype=float))


def field_from_spectrum(grid: Grid, spectrum: np.ndarray) -> Field:
    """Field from normalized FFT-order coefficients.

    The inverse transform's imaginary residue is discarded: callers are
    expected to hand in (numerically) conjugate-symmetric spectra.
    """
    spectrum = np.asarray(spectrum, dtype=complex)
    values = np.fft.ifft(spectrum * grid.n).real
    return Field(grid=grid, values=values, spectrum=spectrum)


def _is_reality_preserving(m: np.ndarray, n: int) -> bool:
    # m preserves realness iff m(-xi) = conj(m(xi)) pairwise and m is real on
    # the two self-paired slots (DC and Nyquist).  Exact comparison: symbols
    # built from |xi| are bit-symmetric, and a last-ulp miss only skips an
    # optional cleanup.
    if m[0].imag != 0.0 or m[n // 2].imag != 0.0:
        return False
    return bool(np.array_equal(m[_neg_index(n)], np.conj(m)))


MultiplierLike = Union[Callable[[np.ndarray], np.ndarray], np.ndarray]


def apply_multiplier(f: Field, m: MultiplierLike) -> Field:
    """Apply a Fourier multiplier: output spectrum is m(xi_k) * c_k.

    Parameters
    ----------
    f : Field
    m : callable or ndarray
        Symbol evaluated on ``f.grid.wavenumbers`` (callables must accept an
        ndarray).  Must be finite at every grid mode; symbols with removable
        singularities declare their xi = 0 limit explicitly.

    Returns
    -------
    Field
        When the sampled symbol satisfies m(-xi) = conj(m(xi)), conjugate
        symmetry of the output is enforced exactly; otherwise the product
        spectrum is kept verbatim (the application is purely diagonal, so
        composing multipliers equals applying their pointwise product).
    """
    grid = f.grid
    mv = np.asarray(m(grid.wavenumbers) if callable(m) else m, dtype=complex)
    if mv.shape != (grid.n,):
        raise ValueError(f"multiplier sampled to shape {mv.shape}, expected ({grid.n},)")
    bad = ~np.isfinite(mv.real) | ~np.isfinite(mv.imag)
    if np.any(bad):
        j = int(np.argmax(bad))
        raise ValueError(
            f"multiplier is not finite at mode index {j} (xi = {grid.wavenumbers[j]!r})"
        )
    out = mv * f.spectrum
    if _is_reality_preserving(mv, grid.n):
        out = 0.5 * (out + np.conj(out[_neg_index(grid.n)]))
    return field_from_spectrum(grid, out)


@dataclass(frozen=True)
class NormSpec:
    """Which Sobolev-type norm to take.

    kind is one of ``L2``, ``Hs``, ``Hs_bo``, ``Hdot_half_mu``, ``Hring_half``
    with spectral weights 1, <xi>^{2s}, <xi>^{2s}(1 + bo_inv xi^2),
    xi^2/(1 + sqrt(mu)|xi|), and <xi>^{2s}|xi|.  The last two are homogeneous
    and skip the xi = 0 mode.
    """

    kind: str
    s: float = 0.0
    bo_inv: float = 0.0
    mu: float = 0.0

    _KINDS = ("L2", "Hs", "Hs_bo", "Hdot_half_mu", "Hring_half")

    def __post_init__(self) -> None:
        if self.kind not in self._KINDS:
            raise ValueError(f"unknown norm kind {self.kind!r}; expected one of {self._KINDS}")

    @staticmethod
    def l2() -> "NormSpec":
        return NormSpec("L2")

    @staticmethod
    def hs(s: float) -> "NormSpec":
        return NormSpec("Hs", s=s)

    @staticmethod
    def hs_bo(s: float, bo_inv: float) -> "NormSpec":
        return NormSpec("Hs_bo", s=s, bo_inv=bo_inv)

    @staticmethod
    def hdot_half_mu(mu: float) -> "NormSpec":
        return NormSpec("Hdot_half_mu", mu=mu)

    @staticmethod
    def hring_half(s: float) -> "NormSpec":
        return NormSpec("Hring_half", s=s)

    @property
    def homogeneous(self) -> bool:
        return self.kind in ("Hdot_half_mu", "Hring_half")

    def weight(self, xi: np.ndarray) -> np.ndarray:
        xi = np.asarray(xi, dtype=float)
        if self.kind == "L2":
            w = np.ones_like(xi)
        elif self.kind == "Hs":
            w = (1.0 + xi * xi) ** self.s
        elif self.kind == "Hs_bo":
            w = (1.0 + xi * xi) ** self.s * (1.0 + self.bo_inv * xi * xi)
        elif self.kind == "Hdot_half_mu":
            w = xi * xi / (1.0 + np.sqrt(self.mu) * np.abs(xi))
        else:  # Hring_half
            w = (1.0 + xi * xi) ** self.s * np.abs(xi)
        if self.homogeneous:
            w = np.where(xi == 0.0, 0.0, w)
        return w


def norm(f: Field, spec: NormSpec) -> float:
    """Spectral quadrature norm sqrt(L sum_k weight(xi_k) |c_k|^2)."""
    w = spec.weight(f.grid.wavenumbers)
    total = np.sum(w * np.abs(f.spectrum) ** 2)
    return float(np.sqrt(f.grid.length * total))


def dealias_mask(grid: Grid) -> np.ndarray:
    """Boolean keep-mask of the 2/3 rule: |xi_k| <= (2/3) xi_max.

    The Nyquist mode always lies outside the kept band, so dealiasing after a
    quadratic product also performs the required Nyquist zeroing.
    """
    xi_max = np.max(np.abs(grid.wavenumbers))
    return np.abs(grid.wavenumbers) <= (2.0 / 3.0) * xi_max


def dealias(f: Field) -> Field:
    return field_from_spectrum(f.grid, np.where(dealias_mask(f.grid), f.spectrum, 0.0))


def derivative(f: Field, order: int = 1) -> Field:
    # (i xi)^order; odd orders leave the (unpaired) Nyquist slot non-real, so
    # band-limited content is assumed, as everywhere else in the package.
    return apply_multiplier(f, (1j * f.grid.wavenumbers) ** order)
