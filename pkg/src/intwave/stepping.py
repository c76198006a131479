"""Exponential time stepping for the stiff dispersive models.

Both schemes treat the linear multiplier exactly through its matrix
exponential and are classically fourth order in the nonlinearity:

    IF_RK4   classical RK4 on the integrating-factor transform w = e^{-tL} U
    ETD_RK4  the four-stage exponential time-differencing scheme with
             phi-functions

For the two-field systems the linear block per mode is M = [[0, c12],
[c21, 0]] with M^2 = (c12 c21) I, so every analytic function of M reduces to
a I + b M with scalar even/odd parts; phi-functions are evaluated by Taylor
series for |z| < 1/2 and in closed form otherwise, which avoids the
cancellation catastrophe near z = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .grid import Field, Grid, field_from_spectrum
from .models import ModelSpec, State

__all__ = [
    "SCHEMES",
    "StepperConfig",
    "Trajectory",
    "step",
    "evolve",
    "conserved",
]

SCHEMES = ("IF_RK4", "ETD_RK4")


@dataclass(frozen=True)
class StepperConfig:
    dt: float
    t_end: float
    scheme: str = "IF_RK4"
    callback_stride: int = 1

    def __post_init__(self) -> None:
        if not np.isfinite(self.dt) or self.dt <= 0.0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if not np.isfinite(self.t_end) or self.t_end < 0.0:
            raise ValueError(f"t_end must be >= 0, got {self.t_end}")
        if self.callback_stride < 1:
            raise ValueError(f"callback_stride must be >= 1, got {self.callback_stride}")
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown scheme {self.scheme!r}; expected one of {SCHEMES}")


@dataclass
class Trajectory:
    times: list = field(default_factory=list)
    states: list = field(default_factory=list)
    observables: list = field(default_factory=list)


def _phi(k: int, z: np.ndarray) -> np.ndarray:
    """phi_k(z) = sum_m z^m / (m+k)!, vectorized and cancellation-safe."""
    z = np.asarray(z, dtype=complex)
    out = np.empty_like(z)
    small = np.abs(z) < 0.5
    zs = z[small]
    acc = np.zeros_like(zs)
    term = np.ones_like(zs) / math.factorial(k)
    acc = acc + term
    for m in range(1, 26):
        term = term * zs / (m + k)
        acc = acc + term
    out[small] = acc
    zl = z[~small]
    ez = np.exp(zl)
    if k == 0:
        out[~small] = ez
    elif k == 1:
        out[~small] = (ez - 1.0) / zl
    elif k == 2:
        out[~small] = (ez - 1.0 - zl) / zl**2
    elif k == 3:
        out[~small] = (ez - 1.0 - zl - 0.5 * zl**2) / zl**3
    else:
        raise ValueError(f"phi_{k} not implemented")
    return out


def _phi_odd_over_z(k: int, z: np.ndarray) -> np.ndarray:
    """(phi_k(z) - phi_k(-z)) / (2 z) with its removable singularity filled."""
    z = np.asarray(z, dtype=complex)
    out = np.empty_like(z)
    small = np.abs(z) < 0.5
    zs = z[small]
    z2 = zs * zs
    acc = np.zeros_like(zs)
    term = np.ones_like(zs) / math.factorial(k + 1)
    acc = acc + term
    for j in range(1, 14):
        term = term * z2 / ((2 * j + k) * (2 * j + 1 + k))
        acc = acc + term
    out[small] = acc
    zl = z[~small]
    out[~small] = (_phi(k, zl) - _phi(k, -zl)) / (2.0 * zl)
    return out


class _ModeOp:
    """Diagonal-in-frequency operator a I + b M acting on stacked spectra."""

    __slots__ = ("a", "b", "c12", "c21")

    def __init__(self, a, b=None, c12=None, c21=None):
        self.a, self.b, self.c12, self.c21 = a, b, c12, c21

    def __call__(self, U: np.ndarray) -> np.ndarray:
        if self.b is None:
            return self.a[None, :] * U
        z, w = U
        return np.stack(
            [self.a * z + self.b * (self.c12 * w), self.a * w + self.b * (self.c21 * z)]
        )


class _LinearOps:
    """Exponentials and phi-functions of tau * L for one model on one grid."""

    def __init__(self, model: ModelSpec, grid: Grid):
        blocks = model.linear_blocks(grid)
        self.diag = blocks[0] == "diag"
        if self.diag:
            self.lam = blocks[1]
        else:
            _, self.c12, self.c21 = blocks
            self.lam = np.sqrt(self.c12 * self.c21 + 0j)

    def expm(self, tau: float) -> _ModeOp:
        if self.diag:
            return _ModeOp(np.exp(tau * self.lam))
        z = tau * self.lam
        return _ModeOp(np.cosh(z), tau * _phi_sinhc(z), self.c12, self.c21)

    def phi_op(self, k: int, tau: float) -> _ModeOp:
        if self.diag:
            return _ModeOp(_phi(k, tau * self.lam))
        z = tau * self.lam
        even = 0.5 * (_phi(k, z) + _phi(k, -z))
        return _ModeOp(even, tau * _phi_odd_over_z(k, z), self.c12, self.c21)

    @staticmethod
    def combine(ops_and_weights) -> _ModeOp:
        """Linear combination of _ModeOps sharing the same cross block."""
        a = sum(w * op.a for op, w in ops_and_weights)
        first = ops_and_weights[0][0]
        if first.b is None:
            return _ModeOp(a)
        b = sum(w * op.b for op, w in ops_and_weights)
        return _ModeOp(a, b, first.c12, first.c21)


def _phi_sinhc(z: np.ndarray) -> np.ndarray:
    """sinh(z)/z with the limit 1 at z = 0."""
    z = np.asarray(z, dtype=complex)
    out = np.empty_like(z)
    small = np.abs(z) < 1e-8
    out[small] = 1.0 + z[small] ** 2 / 6.0
    zl = z[~small]
    out[~small] = np.sinh(zl) / zl
    return out


class _Stepper:
    def __init__(self, model: ModelSpec, grid: Grid, cfg: StepperConfig):
        self.model = model
        self.grid = grid
        self.dt = cfg.dt
        self.scheme = cfg.scheme
        ops = _LinearOps(model, grid)
        dt = cfg.dt
        self.E = ops.expm(dt)
        self.E2 = ops.expm(0.5 * dt)
        if cfg.scheme == "ETD_RK4":
            self.Q = ops.phi_op(1, 0.5 * dt)  # phi_1(dt L / 2)
            p1, p2, p3 = (ops.phi_op(k, dt) for k in (1, 2, 3))
            self.W1 = ops.combine([(p1, 1.0), (p2, -3.0), (p3, 4.0)])
            self.W2 = ops.combine([(p2, 2.0), (p3, -4.0)])
            self.W3 = ops.combine([(p2, -1.0), (p3, 4.0)])

    def nonlinear(self, U: np.ndarray) -> np.ndarray:
        return self.model.nonlinear(self.grid, U)

    def advance(self, U: np.ndarray) -> np.ndarray:
        dt, N, E, E2 = self.dt, self.nonlinear, self.E, self.E2
        if self.scheme == "IF_RK4":
            k1 = N(U)
            a = E2(U + (0.5 * dt) * k1)
            k2 = N(a)
            b = E2(U) + (0.5 * dt) * k2
            k3 = N(b)
            c = E(U) + dt * E2(k3)
            k4 = N(c)
            return E(U) + (dt / 6.0) * (E(k1) + 2.0 * E2(k2 + k3) + k4)
        # ETD_RK4 (Cox-Matthews)
        Nu = N(U)
        a = E2(U) + (0.5 * dt) * self.Q(Nu)
        Na = N(a)
        b = E2(U) + (0.5 * dt) * self.Q(Na)
        Nb = N(b)
        c = E2(a) + (0.5 * dt) * self.Q(2.0 * Nb - Nu)
        Nc = N(c)
        return E(U) + dt * (self.W1(Nu) + self.W2(Na + Nb) + self.W3(Nc))


def _check_cfl(state: State, model: ModelSpec, cfg: StepperConfig) -> None:
    # Advective heuristic only: the linear part is integrated exactly.
    maxv = max(float(np.max(np.abs(f.values))) for f in state.fields)
    limit = state.grid.spacing / (model.params.eps * maxv + 1.0)
    if cfg.dt > limit:
        raise ValueError(
            f"dt = {cfg.dt} violates the advective stability heuristic "
            f"dt <= h/(eps max|fields| + 1) = {limit:.6g}"
        )


def _to_state(grid: Grid, U: np.ndarray, t: float) -> State:
    return State(tuple(field_from_spectrum(grid, U[i]) for i in range(U.shape[0])), time=t)


def step(s: State, m: ModelSpec, cfg: StepperConfig) -> State:
    """Advance one step of the configured scheme."""
    if len(s.fields) != m.nfields:
        raise ValueError(f"model {m.id} expects {m.nfields} field(s), state has {len(s.fields)}")
    _check_cfl(s, m, cfg)
    stepper = _Stepper(m, s.grid, cfg)
    U = stepper.advance(s.spectra())
    if not np.all(np.isfinite(U.view(float))):
        raise RuntimeError(f"non-finite state after one step from t = {s.time}")
    return _to_state(s.grid, U, s.time + cfg.dt)


def conserved(s: State, m: ModelSpec) -> dict:
    """Mass (grid mean times L) per field and momentum (discrete integral of
    zeta^2)."""
    grid = s.grid
    out = {}
    for name, f in zip(m.field_names, s.fields):
        out[f"mass_{name}"] = float(f.spectrum[0].real * grid.length)
    zeta = s.fields[0].values
    out["momentum"] = float(np.sum(zeta * zeta) * grid.length / grid.n)
    return out


def _observe(s: State, m: ModelSpec) -> dict:
    obs = {"t": s.time}
    obs.update(conserved(s, m))
    for name, f in zip(m.field_names, s.fields):
        obs[f"l2_{name}"] = float(
            np.sqrt(np.sum(f.values**2) * s.grid.length / s.grid.n)
        )
    return obs


def evolve(s: State, m: ModelSpec, cfg: StepperConfig) -> Trajectory:
    """Iterate ``step`` to t_end, recording observables every stride steps.

    t_end must be an integer multiple of dt (fixed-step integration); the
    initial and final states are always recorded.
    """
    if len(s.fields) != m.nfields:
        raise ValueError(f"model {m.id} expects {m.nfields} field(s), state has {len(s.fields)}")
    nsteps_f = cfg.t_end / cfg.dt
    nsteps = int(round(nsteps_f))
    if abs(nsteps_f - nsteps) > 1e-8 * max(1.0, nsteps_f):
        raise ValueError(f"t_end = {cfg.t_end} is not an integer multiple of dt = {cfg.dt}")
    _check_cfl(s, m, cfg)
    stepper = _Stepper(m, s.grid, cfg)

    traj = Trajectory()
    t0 = s.time
    U = s.spectra()

    def record(U: np.ndarray, t: float) -> None:
        snap = _to_state(s.grid, U, t)
        traj.times.append(t)
        traj.states.append(snap)
        traj.observables.append(_observe(snap, m))

    record(U, t0)
    for i in range(1, nsteps + 1):
        U = stepper.advance(U)
        if not np.all(np.isfinite(U.view(float))):
            raise RuntimeError(f"non-finite state at step {i} (t = {t0 + i * cfg.dt})")
        if i % cfg.callback_stride == 0 or i == nsteps:
            record(U, t0 + i * cfg.dt)
    return traj
