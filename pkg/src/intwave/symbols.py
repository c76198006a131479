"""Closed-form Fourier multiplier symbols for the two-layer internal-wave
hierarchy, and checkers that measure their expansion inequalities numerically.

Every symbol is an even, real function of the wavenumber xi, parameterized by
the physical bundle ``Params``.  Removable singularities at xi = 0 are
hard-coded through their analytic limits (T = I = t = k = 1, the operator
symbols G0, Gp0, Gm0, L_ilw vanish).  Inequality checkers never assert
constants: they return measured ratios, and tests judge scaling exponents.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import Field, NormSpec, apply_multiplier, norm

__all__ = [
    "Params",
    "SYMBOL_TAGS",
    "EXPANSION_IDS",
    "eval_symbol",
    "symbol_fn",
    "expansion_gap",
    "coercivity_check",
    "coercivity_constants",
]


@dataclass(frozen=True)
class Params:
    """Physical parameter bundle.

    Parameters
    ----------
    eps : float
        Nonlinearity (amplitude over depth), 0 <= eps < 1.
    mu : float
        Shallowness (depth over wavelength squared), 0 <= mu <= 1.
    gamma : float
        Density ratio of upper to lower fluid, 0 <= gamma <= 1.
    bo_inv : float
        Inverse Bond number, 0 <= bo_inv <= 1.
    mu_minus : float
        Upper-layer squared depth ratio (intermediate-depth models), >= 1.
    alpha : float
        Regularization weight of the regularized BO system, >= 0.
    """

    eps: float = 0.0
    mu: float = 1.0
    gamma: float = 0.5
    bo_inv: float = 0.0
    mu_minus: float = 1.0
    alpha: float = 2.0

    def __post_init__(self) -> None:
        checks = [
            ("eps", self.eps, 0.0 <= self.eps < 1.0),
            ("mu", self.mu, 0.0 <= self.mu <= 1.0),
            ("gamma", self.gamma, 0.0 <= self.gamma <= 1.0),
            ("bo_inv", self.bo_inv, 0.0 <= self.bo_inv <= 1.0),
            ("mu_minus", self.mu_minus, self.mu_minus >= 1.0),
            ("alpha", self.alpha, self.alpha >= 0.0),
        ]
        for name, value, ok in checks:
            if not np.isfinite(value) or not ok:
                raise ValueError(f"parameter {name} out of range: {value!r}")

    def require_bond(self) -> None:
        """Enforce eps^2 <= bo_inv (needed when capillarity and nonlinearity
        are compared against each other)."""
        if self.eps**2 > self.bo_inv:
            raise ValueError(
                f"eps^2 = {self.eps**2} exceeds bo_inv = {self.bo_inv}; "
                "the comparison regime requires eps^2 <= bo_inv"
            )


SYMBOL_TAGS = (
    "T",
    "I",
    "t",
    "k",
    "sqrt_k",
    "sqrt_t",
    "t_inv_half",
    "G0",
    "Gp0",
    "Gm0",
    "L_ilw",
    "lin_bo",
    "lin_benjamin",
    "P_frak",
)


def _tanhc(r: np.ndarray) -> np.ndarray:
    """tanh(r)/r with the limit value 1 at r = 0."""
    out = np.ones_like(r)
    nz = r != 0.0
    out[nz] = np.tanh(r[nz]) / r[nz]
    return out


def _ilw_symbol(xi: np.ndarray, mu_minus: float) -> np.ndarray:
    # |xi| coth(sqrt(mu_minus)|xi|) - 1/sqrt(mu_minus), with the 1/r pole of
    # coth cancelled analytically: near r = 0 the value is |xi|(r/3 - r^3/45).
    root = np.sqrt(mu_minus)
    a = np.abs(xi)
    r = root * a
    out = np.empty_like(a)
    small = r < 1e-3
    rs = r[small]
    out[small] = a[small] * (rs / 3.0 - rs**3 / 45.0)
    rl = r[~small]
    out[~small] = a[~small] / np.tanh(rl) - 1.0 / root
    return out


def eval_symbol(tag: str, xi, p: Params):
    """Evaluate one closed-form symbol at wavenumber(s) xi.

    Returns a float for scalar input, an ndarray otherwise.
    """
    xi_arr = np.asarray(xi, dtype=float)
    scalar = xi_arr.ndim == 0
    a = np.abs(np.atleast_1d(xi_arr))
    if not np.all(np.isfinite(a)):
        raise ValueError("xi must be finite")
    r = np.sqrt(p.mu) * a

    if tag == "T":
        out = _tanhc(r)
    elif tag == "I":
        out = 1.0 / (1.0 + p.gamma * np.tanh(r))
    elif tag == "t":
        out = _tanhc(r) / (1.0 + p.gamma * np.tanh(r))
    elif tag == "k":
        out = eval_symbol("t", a, p) * (1.0 + p.bo_inv * a * a)
    elif tag == "sqrt_k":
        out = np.sqrt(eval_symbol("k", a, p))
    elif tag == "sqrt_t":
        out = np.sqrt(eval_symbol("t", a, p))
    elif tag == "t_inv_half":
        out = 1.0 / np.sqrt(eval_symbol("t", a, p))
    elif tag == "G0":
        # Exactly Gp0 * I, the flat coupled operator identity.
        out = eval_symbol("Gp0", a, p) * eval_symbol("I", a, p)
    elif tag == "Gp0":
        out = r * np.tanh(r)
    elif tag == "Gm0":
        out = -r
    elif tag == "L_ilw":
        out = _ilw_symbol(a, p.mu_minus)
    elif tag == "lin_bo":
        out = 1.0 - 0.5 * p.gamma * r
    elif tag == "lin_benjamin":
        out = 1.0 - 0.5 * p.gamma * r + 0.5 * p.bo_inv * a * a
    elif tag == "P_frak":
        out = a / np.sqrt(1.0 + r)
    else:
        raise ValueError(f"unknown symbol tag {tag!r}; expected one of {SYMBOL_TAGS}")
    return float(out[0]) if scalar else out.reshape(xi_arr.shape)


def symbol_fn(tag: str, p: Params):
    """Closure xi -> symbol values, suitable for ``apply_multiplier``."""
    if tag not in SYMBOL_TAGS:
        raise ValueError(f"unknown symbol tag {tag!r}; expected one of {SYMBOL_TAGS}")

    def m(xi):
        return eval_symbol(tag, xi, p)

    return m


EXPANSION_IDS = ("est_T", "inv_tanh", "est_sqrtK", "precise_sqrtK")


def expansion_gap(which: str, f: Field, p: Params, s: float = 0.0) -> float:
    """LHS/RHS ratio of one expansion inequality, measured on the field f.

    est_T            |(T(D)-1) f|_{H^s}                    / |f''|_{H^s}
    inv_tanh         |(I(D)-1) f|_{H^s}                    / |f'|_{H^s}
    est_sqrtK        |(sqrt_k(D)-1) f|_{H^s}               / |f'|_{H^{s+1}}
    precise_sqrtK    |(sqrt_k(D)-lin_benjamin(D)) f|_{H^s} / |f''|_{H^{s+1}}

    The caller sweeps a parameter and fits the exponent; no constant is
    asserted here.
    """
    xi = f.grid.wavenumbers
    ixi = 1j * xi
    if which == "est_T":
        num_m = eval_symbol("T", xi, p) - 1.0
        den_m, den_s = ixi * ixi, s
    elif which == "inv_tanh":
        num_m = eval_symbol("I", xi, p) - 1.0
        den_m, den_s = ixi, s
    elif which == "est_sqrtK":
        num_m = eval_symbol("sqrt_k", xi, p) - 1.0
        den_m, den_s = ixi, s + 1.0
    elif which == "precise_sqrtK":
        num_m = eval_symbol("sqrt_k", xi, p) - eval_symbol("lin_benjamin", xi, p)
        den_m, den_s = ixi * ixi, s + 1.0
    else:
        raise ValueError(f"unknown expansion id {which!r}; expected one of {EXPANSION_IDS}")
    num = norm(apply_multiplier(f, num_m), NormSpec.hs(s))
    den = norm(apply_multiplier(f, den_m), NormSpec.hs(den_s))
    if den == 0.0:
        raise ValueError(f"expansion gap {which}: denominator norm vanishes")
    return num / den


def coercivity_constants(xi_samples, p: Params, h0: float) -> dict:
    """Measured constants of the two-sided bound
    (1 - h0/2) + C_lower sqrt(mu)|xi| <= t^{-1}(xi) <= C_upper (1 + sqrt(mu)|xi|).
    """
    if not 0.0 < h0 < 1.0:
        raise ValueError(f"h0 must lie in (0, 1), got {h0}")
    xi = np.abs(np.asarray(xi_samples, dtype=float))
    t_inv = 1.0 / eval_symbol("t", xi, p)
    r = np.sqrt(p.mu) * xi
    floor = 1.0 - 0.5 * h0
    nz = r > 0.0
    c_lower = float(np.min((t_inv[nz] - floor) / r[nz])) if np.any(nz) else np.inf
    c_upper = float(np.max(t_inv / (1.0 + r)))
    return {
        "h0": h0,
        "floor_ok": bool(np.all(t_inv >= floor)),
        "C_lower": c_lower,
        "C_upper": c_upper,
    }


def coercivity_check(xi_samples, p: Params, h0: float) -> bool:
    """Two-sided symbol bound holds on the samples with a positive lower
    constant and an O(1) upper constant (analytic ceiling 1 + gamma)."""
    c = coercivity_constants(xi_samples, p, h0)
    upper_ok = c["C_upper"] <= (1.0 + p.gamma) * (1.0 + 1e-12)
    return bool(c["floor_ok"] and c["C_lower"] > 0.0 and upper_ok)
