"""Experiment orchestration: convergence sweeps, rate fits, and emission.

Configs are plain JSON documents (see ``configs/`` for worked examples); all
numbers are dimensionless.  A convergence study evolves two models from the
same initial data at each sweep point, measures the sup-over-recorded-times
Sobolev distance of the interface, and fits log error against log axis.  Only
the exponent is asserted: constants depend on the initial energy and the box
and are not reproducible quantities.

Everything here is deterministic by construction: sweeps execute in axis
order, CSV/JSON emission uses fixed column orders and shortest round-trip
float formatting, and the SVG writer is hand-rolled with fixed precision.
"""

from __future__ import annotations

import dataclasses
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .dno import StripConfig, TwoLayerOperator, dn_minus, dn_plus
from .grid import Field, Grid, NormSpec, apply_multiplier, field_from_values, make_grid, norm
from .models import (
    MODEL_IDS,
    ModelSpec,
    State,
    bo_soliton,
    gaussian_bump,
    make_unidirectional_data,
)
from .stepping import StepperConfig, Trajectory, evolve
from .symbols import EXPANSION_IDS, Params, eval_symbol, expansion_gap

__all__ = [
    "ExperimentConfig",
    "RateReport",
    "CheckRow",
    "CheckReport",
    "load_config",
    "build_initial_state",
    "fit_rate",
    "run_simulate",
    "run_compare",
    "run_ilw_limit",
    "run_multiplier_check",
    "run_dno_validate",
    "emit",
]

KINDS = ("simulate", "compare", "ilw-limit", "dno-validate", "multiplier-check")

_PARAM_FIELDS = ("eps", "mu", "gamma", "bo_inv", "mu_minus", "alpha")

# models whose symbols involve the Bond number; the small-amplitude
# hypothesis eps^2 <= bo_inv is enforced per sweep point for these
_BOND_MODELS = ("BENJAMIN", "WB_EQ", "WB_SYS")


@dataclass(frozen=True)
class RateReport:
    """Fitted convergence rate along one sweep axis.

    slope/intercept/r_squared are NaN when every error vanishes (identical
    trajectories); passed then reports False and the errors stay inspectable.
    """

    label: str
    axis_name: str
    axis: tuple
    errors: tuple
    slope: float
    intercept: float
    r_squared: float
    predicted_exponent: float
    tolerance: float
    passed: bool

    def __post_init__(self) -> None:
        if len(self.axis) != len(self.errors):
            raise ValueError("axis and errors must have equal length")
        if len(self.axis) < 3:
            raise ValueError("a rate report needs at least 3 sweep points")
        diffs = np.diff(np.asarray(self.axis, dtype=float))
        if not (np.all(diffs > 0) or np.all(diffs < 0)):
            raise ValueError("sweep axis must be strictly monotone")


@dataclass(frozen=True)
class CheckRow:
    name: str
    observed: float
    expected: float
    tolerance: float
    passed: bool
    mode: str  # "abs_le": observed <= tolerance; "near": |observed-expected| <= tolerance


@dataclass(frozen=True)
class CheckReport:
    label: str
    rows: tuple

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)


@dataclass(frozen=True)
class ExperimentConfig:
    """Validated experiment description plus the raw document for echoing."""

    kind: str
    raw: dict

    # -- section accessors -------------------------------------------------

    def params(self, **overrides) -> Params:
        base = dict(self.raw.get("params", {}))
        unknown = set(base) - set(_PARAM_FIELDS)
        if unknown:
            raise ValueError(f"unknown params entries: {sorted(unknown)}")
        base.update(overrides)
        return Params(**base)

    def grid(self) -> Grid:
        g = self.raw.get("grid", {})
        return make_grid(int(g.get("n", 256)), float(g.get("length", 2.0 * np.pi)))

    def stepper(self) -> StepperConfig:
        s = self.raw.get("stepper", {})
        return StepperConfig(
            dt=float(s.get("dt", 1e-3)),
            t_end=float(s.get("t_end", 1.0)),
            scheme=s.get("scheme", "IF_RK4"),
            callback_stride=int(s.get("stride", 1)),
        )

    def initial_zeta(self, grid: Grid, p: Params) -> Field:
        init = self.raw.get("initial", {})
        profile = init.get("profile", "gaussian")
        if profile == "gaussian":
            width = init.get("width")
            return gaussian_bump(
                grid,
                amplitude=float(init.get("amplitude", 1.0)),
                width=None if width is None else float(width),
            )
        if profile == "soliton":
            return bo_soliton(
                grid, float(init.get("speed", 1.0)), float(init.get("x0", 0.0)), p
            )
        raise ValueError(f"unknown initial profile {profile!r}")

    def sweep(self) -> tuple:
        sw = self.raw.get("sweep", {})
        param = sw.get("param")
        values = tuple(float(v) for v in sw.get("values", ()))
        linked = dict(sw.get("linked", {}))
        for key, rule in linked.items():
            if key not in _PARAM_FIELDS:
                raise ValueError(f"linked parameter {key!r} is not a model parameter")
            if rule not in ("equal", "sqrt"):
                raise ValueError(f"unknown linked rule {rule!r}; expected 'equal' or 'sqrt'")
        return param, values, linked

    def fit_spec(self) -> tuple:
        fit = self.raw.get("fit", {})
        return float(fit["predicted_exponent"]), float(fit["tolerance"])

    def error_norm(self) -> NormSpec:
        en = self.raw.get("error_norm", {"kind": "hs", "s": 2.0})
        if en["kind"] == "l2":
            return NormSpec.l2()
        if en["kind"] == "hs":
            return NormSpec.hs(float(en.get("s", 2.0)))
        raise ValueError(f"unsupported error norm kind {en['kind']!r} in a config")


def load_config(path) -> ExperimentConfig:
    raw = json.loads(Path(path).read_text())
    if not isinstance(raw, dict):
        raise ValueError("config document must be a JSON object")
    kind = raw.get("kind")
    if kind == "sweep":  # accepted alias
        kind = "ilw-limit"
    if kind not in KINDS:
        raise ValueError(f"unknown experiment kind {kind!r}; expected one of {KINDS}")
    cfg = ExperimentConfig(kind=kind, raw=raw)

    # eager validation so a bad config fails at load, not mid-sweep
    cfg.params()
    cfg.grid()
    if kind in ("simulate", "compare", "ilw-limit"):
        cfg.stepper()
    if kind == "simulate":
        model = raw.get("model")
        if model not in MODEL_IDS:
            raise ValueError(f"simulate needs a model id from {MODEL_IDS}, got {model!r}")
    if kind == "compare":
        models = tuple(raw.get("models", ()))
        if len(models) != 2 or any(m not in MODEL_IDS for m in models):
            raise ValueError(f"compare needs two model ids from {MODEL_IDS}, got {models!r}")
        param, values, _ = cfg.sweep()
        if param not in _PARAM_FIELDS:
            raise ValueError(f"sweep parameter {param!r} is not a model parameter")
        if len(values) < 3:
            raise ValueError("a convergence sweep needs at least 3 points")
        cfg.fit_spec()
        cfg.error_norm()
    if kind == "ilw-limit":
        param, values, _ = cfg.sweep()
        if param not in (None, "mu_minus"):
            raise ValueError("ilw-limit sweeps mu_minus")
        if len(values) < 3:
            raise ValueError("a convergence sweep needs at least 3 points")
        cfg.fit_spec()
        cfg.error_norm()
    if kind == "multiplier-check":
        for which in raw.get("expansions", ()):
            if which not in EXPANSION_IDS:
                raise ValueError(f"unknown expansion {which!r}; expected one of {EXPANSION_IDS}")
        param, values, _ = cfg.sweep()
        if len(values) < 3:
            raise ValueError("a multiplier check sweeps at least 3 points")
    return cfg


# -- initial data ----------------------------------------------------------


def build_initial_state(model_id: str, zeta0: Field, p: Params) -> State:
    """Shared initial data: scalar models take zeta0 itself; the two systems
    take the unidirectional pair in their own velocity representation."""
    if model_id not in MODEL_IDS:
        raise ValueError(f"unknown model id {model_id!r}")
    if model_id in ("BO", "BENJAMIN", "WB_EQ", "ILW"):
        return State((zeta0,), time=0.0)
    z0, v0, u0 = make_unidirectional_data(zeta0, p)
    vel = u0 if model_id == "WB_SYS" else v0
    return State((z0, vel), time=0.0)


# -- rate fitting ----------------------------------------------------------


def fit_rate(points) -> tuple:
    """Least squares on (log axis, log error); returns (slope, intercept, R2).

    Needs >= 3 points with positive entries on both coordinates.  R2 of a
    constant-error fit is 1 by convention (the zero-slope model is exact).
    """
    pts = list(points)
    if len(pts) < 3:
        raise ValueError(f"rate fit needs at least 3 points, got {len(pts)}")
    x = np.asarray([p[0] for p in pts], dtype=float)
    y = np.asarray([p[1] for p in pts], dtype=float)
    if np.any(x <= 0.0) or np.any(y <= 0.0):
        raise ValueError("rate fit needs strictly positive axis and error values")
    lx, ly = np.log(x), np.log(y)
    slope, intercept = np.polyfit(lx, ly, 1)
    resid = ly - (slope * lx + intercept)
    ss_res = float(np.sum(resid**2))
    ss_tot = float(np.sum((ly - ly.mean()) ** 2))
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return float(slope), float(intercept), float(r2)


def _report_from_errors(label, axis_name, axis, errors, predicted, tolerance) -> RateReport:
    if all(e > 0.0 for e in errors):
        slope, intercept, r2 = fit_rate(zip(axis, errors))
        passed = abs(slope - predicted) <= tolerance
    else:
        # degenerate sweep (identical trajectories); nothing to fit
        slope = intercept = r2 = float("nan")
        passed = False
    return RateReport(
        label=label,
        axis_name=axis_name,
        axis=tuple(axis),
        errors=tuple(errors),
        slope=slope,
        intercept=intercept,
        r_squared=r2,
        predicted_exponent=predicted,
        tolerance=tolerance,
        passed=passed,
    )


# -- experiment runners -----------------------------------------------------


def trajectory_distance(ta: Trajectory, tb: Trajectory, spec: NormSpec) -> float:
    """Sup over recorded times of the norm of the interface difference."""
    if len(ta.times) != len(tb.times) or any(
        abs(s - t) > 1e-12 for s, t in zip(ta.times, tb.times)
    ):
        raise ValueError("trajectories were recorded at different times")
    worst = 0.0
    for sa, sb in zip(ta.states, tb.states):
        diff = field_from_values(sa.grid, sa.fields[0].values - sb.fields[0].values)
        worst = max(worst, norm(diff, spec))
    return worst


def _point_params(cfg: ExperimentConfig, param: str, value: float, linked: dict) -> Params:
    overrides = {param: value}
    for key, rule in linked.items():
        overrides[key] = value if rule == "equal" else math.sqrt(value)
    return cfg.params(**overrides)


def run_simulate(cfg: ExperimentConfig) -> Trajectory:
    model_id = cfg.raw["model"]
    p = cfg.params()
    grid = cfg.grid()
    zeta0 = cfg.initial_zeta(grid, p)
    state = build_initial_state(model_id, zeta0, p)
    return evolve(state, ModelSpec(model_id, p), cfg.stepper())


def run_compare(cfg: ExperimentConfig) -> RateReport:
    model_a, model_b = cfg.raw["models"]
    param, values, linked = cfg.sweep()
    predicted, tolerance = cfg.fit_spec()
    spec = cfg.error_norm()
    stepper = cfg.stepper()
    grid = cfg.grid()
    errors = []
    for v in values:
        p = _point_params(cfg, param, v, linked)
        if p.bo_inv > 0.0 and (model_a in _BOND_MODELS or model_b in _BOND_MODELS):
            p.require_bond()
        zeta0 = cfg.initial_zeta(grid, p)
        ta = evolve(build_initial_state(model_a, zeta0, p), ModelSpec(model_a, p), stepper)
        tb = evolve(build_initial_state(model_b, zeta0, p), ModelSpec(model_b, p), stepper)
        errors.append(trajectory_distance(ta, tb, spec))
    return _report_from_errors(
        f"compare({model_a},{model_b})", param, values, errors, predicted, tolerance
    )


def run_ilw_limit(cfg: ExperimentConfig) -> RateReport:
    """ILW against its infinite-lower-depth limit along a mu_minus sweep."""
    raw = dict(cfg.raw)
    raw["models"] = list(raw.get("models", ("ILW", "BO")))
    sweep = dict(raw.get("sweep", {}))
    sweep.setdefault("param", "mu_minus")
    raw["sweep"] = sweep
    return run_compare(ExperimentConfig(kind="compare", raw=raw))


def run_multiplier_check(cfg: ExperimentConfig) -> CheckReport:
    """Fit the small-mu scaling of each configured multiplier expansion gap."""
    param, values, linked = cfg.sweep()
    grid = cfg.grid()
    expansions = tuple(cfg.raw.get("expansions", EXPANSION_IDS))
    expected = cfg.raw.get("expected", {})
    tolerances = cfg.raw.get("tolerances", {})
    s = float(cfg.raw.get("s", 0.0))
    rows = []
    for which in expansions:
        gaps = []
        for v in values:
            p = _point_params(cfg, param, v, linked)
            f = cfg.initial_zeta(grid, p)
            gaps.append(expansion_gap(which, f, p, s=s))
        slope, _, _ = fit_rate(zip(values, gaps))
        exp_val = float(expected[which])
        tol = float(tolerances[which])
        rows.append(
            CheckRow(
                name=which,
                observed=slope,
                expected=exp_val,
                tolerance=tol,
                passed=abs(slope - exp_val) <= tol,
                mode="near",
            )
        )
    return CheckReport(label="multiplier-check", rows=tuple(rows))


def _band_limited(rng, grid: Grid, band: int) -> Field:
    """Zero-mean random real field supported on modes 1..band, unit L2."""
    coeffs = rng.standard_normal(band) + 1j * rng.standard_normal(band)
    spec = np.zeros(grid.n, dtype=complex)
    spec[1 : band + 1] = coeffs
    spec[-band:] = np.conj(coeffs[::-1])
    f = field_from_values(grid, np.fft.ifft(spec * grid.n).real)
    scale = norm(f, NormSpec.l2())
    return field_from_values(grid, f.values / scale)


def run_dno_validate(cfg: ExperimentConfig) -> CheckReport:
    """Flat-formula and bilinear-structure checks for the DN operators."""
    p = cfg.params()
    grid = cfg.grid()
    strip = cfg.raw.get("strip", {})
    nz = int(strip.get("nz", 64))
    z_max = strip.get("z_max")
    tol_solver = float(strip.get("tol", 1e-11))
    cfg_plus = StripConfig(side="plus", nz=nz, tol=tol_solver)
    cfg_minus = StripConfig(
        side="minus", nz=nz, z_max=None if z_max is None else float(z_max), tol=tol_solver
    )
    band = int(cfg.raw.get("band", 8))
    pairs = int(cfg.raw.get("pairs", 20))
    rng = np.random.default_rng(int(cfg.raw.get("seed", 0)))
    tolerances = cfg.raw.get("tolerances", {})
    checks = tuple(cfg.raw.get("checks", ()))

    def tol(name, default):
        return float(tolerances.get(name, default))

    inner = lambda f, g: float(np.sum(f.values * g.values) * grid.length / grid.n)
    rows = []

    flat_names = {"flat_plus", "flat_minus", "flat_coupled"}
    if flat_names & set(checks):
        flat_zeta = field_from_values(grid, np.zeros(grid.n))
        psi = _band_limited(rng, grid, band)
        l2 = NormSpec.l2()
        if "flat_plus" in checks:
            got = dn_plus(flat_zeta, psi, p, cfg_plus)
            want = apply_multiplier(psi, eval_symbol("Gp0", grid.wavenumbers, p))
            rel = norm(field_from_values(grid, got.values - want.values), l2) / norm(want, l2)
            rows.append(CheckRow("flat_plus", rel, 0.0, tol("flat_plus", 1e-8), rel <= tol("flat_plus", 1e-8), "abs_le"))
        if "flat_minus" in checks:
            got = dn_minus(flat_zeta, psi, p, cfg_minus)
            want = apply_multiplier(psi, eval_symbol("Gm0", grid.wavenumbers, p))
            rel = norm(field_from_values(grid, got.values - want.values), l2) / norm(want, l2)
            rows.append(CheckRow("flat_minus", rel, 0.0, tol("flat_minus", 1e-6), rel <= tol("flat_minus", 1e-6), "abs_le"))
        if "flat_coupled" in checks:
            op = TwoLayerOperator(flat_zeta, p, cfg_plus, cfg_minus)
            got = op.dn_coupled(psi)
            want = apply_multiplier(psi, eval_symbol("G0", grid.wavenumbers, p))
            rel = norm(field_from_values(grid, got.values - want.values), l2) / norm(want, l2)
            rows.append(CheckRow("flat_coupled", rel, 0.0, tol("flat_coupled", 1e-8), rel <= tol("flat_coupled", 1e-8), "abs_le"))

    structure = {"symmetry_plus", "symmetry_coupled", "negativity", "coercivity"}
    if structure & set(checks):
        zeta = cfg.initial_zeta(grid, p)
        op = TwoLayerOperator(zeta, p, cfg_plus, cfg_minus)
        coupled_tol = float(cfg.raw.get("coupled_tol", 1e-9))
        worst = {name: 0.0 for name in structure}
        # chain the pairs through a shared field list so each field needs
        # only one coupled solve
        fields = [_band_limited(rng, grid, band) for _ in range(pairs + 1)]
        need_coupled = bool({"symmetry_coupled", "coercivity"} & set(checks))
        coupled = (
            [op.dn_coupled(f, tol=coupled_tol) for f in fields] if need_coupled else None
        )
        for k in range(pairs):
            psi1, psi2 = fields[k], fields[k + 1]
            if "symmetry_plus" in checks:
                a12 = inner(psi1, op.dn_plus(psi2))
                a21 = inner(psi2, op.dn_plus(psi1))
                worst["symmetry_plus"] = max(
                    worst["symmetry_plus"], abs(a12 - a21) / max(abs(a12), abs(a21), 1e-30)
                )
            if "symmetry_coupled" in checks:
                a12 = inner(psi1, coupled[k + 1])
                a21 = inner(psi2, coupled[k])
                worst["symmetry_coupled"] = max(
                    worst["symmetry_coupled"], abs(a12 - a21) / max(abs(a12), abs(a21), 1e-30)
                )
            if "coercivity" in checks:
                # coercive: quad >= 0 up to solver noise, relative to |psi|=1
                worst["coercivity"] = max(worst["coercivity"], -inner(psi1, coupled[k]))
            if "negativity" in checks:
                worst["negativity"] = max(worst["negativity"], inner(psi1, op.dn_minus(psi1)))
        for name in ("symmetry_plus", "symmetry_coupled", "negativity", "coercivity"):
            if name in checks:
                t = tol(name, 1e-8)
                rows.append(CheckRow(name, worst[name], 0.0, t, worst[name] <= t, "abs_le"))

    return CheckReport(label="dno-validate", rows=tuple(rows))


# -- emission ----------------------------------------------------------------


def _fmt(v) -> str:
    """Shortest round-trip decimal for floats; plain str for the rest."""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _csv_lines(header, rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def _trajectory_csv(traj: Trajectory) -> str:
    if not traj.observables:
        return "time\n"
    keys = sorted(k for k in traj.observables[0] if k != "t")
    rows = [
        [t] + [obs[k] for k in keys] for t, obs in zip(traj.times, traj.observables)
    ]
    return _csv_lines(["time"] + keys, rows)


def _report_csv(rep: RateReport) -> str:
    return _csv_lines(
        [rep.axis_name, "error"], [[a, e] for a, e in zip(rep.axis, rep.errors)]
    )


def _checks_csv(rep: CheckReport) -> str:
    return _csv_lines(
        ["name", "observed", "expected", "tolerance", "passed"],
        [[r.name, r.observed, r.expected, r.tolerance, r.passed] for r in rep.rows],
    )


def _json_doc(obj, config_echo) -> dict:
    if isinstance(obj, RateReport):
        return {
            "type": "rate_report",
            "label": obj.label,
            "axis_name": obj.axis_name,
            "axis": list(obj.axis),
            "errors": list(obj.errors),
            "slope": obj.slope,
            "intercept": obj.intercept,
            "r_squared": obj.r_squared,
            "predicted_exponent": obj.predicted_exponent,
            "tolerance": obj.tolerance,
            "pass": obj.passed,
            "config": config_echo,
        }
    if isinstance(obj, CheckReport):
        return {
            "type": "check_report",
            "label": obj.label,
            "checks": [dataclasses.asdict(r) for r in obj.rows],
            "pass": obj.passed,
            "config": config_echo,
        }
    if isinstance(obj, Trajectory):
        keys = sorted(k for k in obj.observables[0] if k != "t") if obj.observables else []
        return {
            "type": "trajectory",
            "times": list(obj.times),
            "observables": {k: [obs[k] for obs in obj.observables] for k in keys},
            "config": config_echo,
        }
    raise TypeError(f"cannot emit object of type {type(obj).__name__}")


# minimal deterministic SVG plotting (no external renderer dependencies)

_SVG_W, _SVG_H, _SVG_M = 640, 480, 64.0
_COLORS = ("#1b6ca8", "#c0392b", "#27823b", "#8e44ad", "#b9770e", "#16727a")


def _svg_plot(series, title, xlabel, ylabel, logx=False, logy=False) -> str:
    """series: list of (label, xs, ys) with positive data when log-scaled."""

    def txf(v):
        return math.log10(v) if logx else v

    def tyf(v):
        return math.log10(v) if logy else v

    xs_all = [txf(x) for _, xs, _ in series for x in xs]
    ys_all = [tyf(y) for _, _, ys in series for y in ys]
    x_lo, x_hi = min(xs_all), max(xs_all)
    y_lo, y_hi = min(ys_all), max(ys_all)
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    if y_hi == y_lo:
        y_hi = y_lo + 1.0
    span_x = x_hi - x_lo
    span_y = y_hi - y_lo
    inner_w = _SVG_W - 2 * _SVG_M
    inner_h = _SVG_H - 2 * _SVG_M

    def px(v):
        return _SVG_M + (txf(v) - x_lo) / span_x * inner_w

    def py(v):
        return _SVG_H - _SVG_M - (tyf(v) - y_lo) / span_y * inner_h

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SVG_W}" height="{_SVG_H}" '
        f'viewBox="0 0 {_SVG_W} {_SVG_H}">',
        f'<rect width="{_SVG_W}" height="{_SVG_H}" fill="white"/>',
        f'<text x="{_SVG_W / 2:.1f}" y="28" text-anchor="middle" '
        f'font-family="monospace" font-size="15">{title}</text>',
    ]
    ax = (
        f'<line x1="{_SVG_M}" y1="{_SVG_H - _SVG_M}" x2="{_SVG_W - _SVG_M}" '
        f'y2="{_SVG_H - _SVG_M}" stroke="black"/>'
        f'<line x1="{_SVG_M}" y1="{_SVG_M}" x2="{_SVG_M}" y2="{_SVG_H - _SVG_M}" stroke="black"/>'
    )
    out.append(ax)
    for frac in (0.0, 0.5, 1.0):
        xv = x_lo + frac * span_x
        yv = y_lo + frac * span_y
        xl = 10.0**xv if logx else xv
        yl = 10.0**yv if logy else yv
        xp = _SVG_M + frac * inner_w
        yp = _SVG_H - _SVG_M - frac * inner_h
        out.append(
            f'<text x="{xp:.1f}" y="{_SVG_H - _SVG_M + 18:.1f}" text-anchor="middle" '
            f'font-family="monospace" font-size="11">{xl:.4g}</text>'
        )
        out.append(
            f'<text x="{_SVG_M - 8:.1f}" y="{yp:.1f}" text-anchor="end" '
            f'font-family="monospace" font-size="11">{yl:.4g}</text>'
        )
    out.append(
        f'<text x="{_SVG_W / 2:.1f}" y="{_SVG_H - 16:.1f}" text-anchor="middle" '
        f'font-family="monospace" font-size="12">{xlabel}</text>'
    )
    out.append(
        f'<text x="20" y="{_SVG_H / 2:.1f}" text-anchor="middle" '
        f'font-family="monospace" font-size="12" '
        f'transform="rotate(-90 20 {_SVG_H / 2:.1f})">{ylabel}</text>'
    )
    for i, (label, xs, ys) in enumerate(series):
        color = _COLORS[i % len(_COLORS)]
        pts = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(xs, ys))
        out.append(f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.5"/>')
        out.append(
            f'<text x="{_SVG_W - _SVG_M:.1f}" y="{_SVG_M + 16 * (i + 1):.1f}" text-anchor="end" '
            f'font-family="monospace" font-size="11" fill="{color}">{label}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _report_svg(rep: RateReport) -> str:
    series = [("measured", list(rep.axis), list(rep.errors))]
    if math.isfinite(rep.slope):
        fitted = [
            math.exp(rep.intercept + rep.slope * math.log(a)) for a in rep.axis
        ]
        series.append((f"fit slope {rep.slope:.3f}", list(rep.axis), fitted))
    return _svg_plot(
        series,
        title=rep.label,
        xlabel=rep.axis_name,
        ylabel="error",
        logx=True,
        logy=True,
    )


def _trajectory_svg(traj: Trajectory) -> str:
    keys = sorted(k for k in traj.observables[0] if k != "t") if traj.observables else []
    series = [
        (k, list(traj.times), [obs[k] for obs in traj.observables]) for k in keys
    ]
    return _svg_plot(series, title="trajectory observables", xlabel="t", ylabel="value")


def emit(obj, fmt: str, out_dir, stem: str = None, config_echo=None) -> list:
    """Write obj in the given format; returns the written paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    if stem is None:
        stem = {
            RateReport: "rate_report",
            CheckReport: "checks",
            Trajectory: "trajectory",
        }.get(type(obj), "result")
    path = out / f"{stem}.{fmt}"
    if fmt == "csv":
        if isinstance(obj, RateReport):
            text = _report_csv(obj)
        elif isinstance(obj, CheckReport):
            text = _checks_csv(obj)
        elif isinstance(obj, Trajectory):
            text = _trajectory_csv(obj)
        else:
            raise TypeError(f"cannot emit object of type {type(obj).__name__}")
    elif fmt == "json":
        text = json.dumps(_json_doc(obj, config_echo), indent=2) + "\n"
    elif fmt == "svg":
        if isinstance(obj, RateReport):
            text = _report_svg(obj)
        elif isinstance(obj, Trajectory):
            text = _trajectory_svg(obj)
        else:
            raise TypeError(f"no svg emission for {type(obj).__name__}")
    else:
        raise ValueError(f"unknown emission format {fmt!r}; expected csv, json, or svg")
    path.write_text(text)
    return [path]
