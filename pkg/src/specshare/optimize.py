"""Optimal sensing time and parameter sweeps.

The derivative of the energy efficiency in ``t`` is proportional (by the
positive factor ``c_c / p_c``) to :func:`stationarity_residual`; its roots are
the stationary points of ``mu(t)``.  No unimodality is assumed: every sign
change on a coarse scan is refined and the candidates are ranked by ``mu``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .channel import (
    JammingStatus,
    NetworkGeometry,
    Powers,
    link_capacity,
    min_jamming_power,
    secrecy_capacity,
    snr,
)
from .errors import DomainError, ValidationError
from .sensing import (
    SensingConfig,
    detector_coefficients,
    energy_efficiency,
    false_alarm_prob,
    mu_curve,
    perceived_idle_prob,
    q,
)

T_MIN = 1e-6
RESIDUAL_TOL = 1e-9
WIDTH_TOL = 1e-12
_INV_2SQRT2PI = 1.0 / (2.0 * math.sqrt(2.0 * math.pi))


@dataclass(frozen=True)
class OptimalPoint:
    t_star: float
    mu_star: float
    residual: float
    bracket: tuple[float, float]
    interior: bool = True

    @property
    def flag(self) -> str:
        return "interior" if self.interior else "no_interior_optimum"


def stationarity_residual(geom: NetworkGeometry, cfg: SensingConfig, powers: Powers, t):
    """``(p_c / c_c) * dmu/dt`` in closed form; accepts scalar or array ``t``."""
    t = np.asarray(t, dtype=float)
    if not np.all((t > 0) & (t < 1)):
        raise DomainError("sensing fraction t must lie in (0, 1)")
    coef = detector_coefficients(cfg, snr(powers.p_p, geom.d_pc, geom), powers.p_c)
    root_t = np.sqrt(t)
    d = coef.a + coef.b * root_t
    pr0 = 1.0 - cfg.pr1
    slope = (1.0 / root_t - root_t) * (pr0 * coef.b * _INV_2SQRT2PI) * np.exp(-0.5 * d * d)
    return (slope - 1.0 + cfg.pr1 * cfg.pd_target + pr0 * q(d))[()]


def _coarse_grid(t_min: float) -> np.ndarray:
    # log spacing near 0 where the 1/sqrt(t) term varies fastest
    near_zero = np.geomspace(t_min, 1e-2, 200)
    bulk = np.linspace(1e-2, 1.0 - t_min, 2000)
    return np.unique(np.concatenate([near_zero, bulk]))


def _bisect(f, lo: float, hi: float, f_lo: float) -> tuple[float, float, float, float]:
    """Shrink a sign-change bracket; returns (root, f(root), lo, hi)."""
    mid, f_mid = lo, f_lo
    while hi - lo > WIDTH_TOL:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        f_mid = f(mid)
        if abs(f_mid) <= RESIDUAL_TOL:
            break
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return mid, f_mid, lo, hi


def optimal_sensing_time(
    geom: NetworkGeometry, cfg: SensingConfig, powers: Powers, t_min: float = T_MIN
) -> OptimalPoint:
    """Sensing fraction in ``[t_min, 1 - t_min]`` with the largest energy efficiency."""

    def f(t):
        return float(stationarity_residual(geom, cfg, powers, t))

    def mu(t):
        return energy_efficiency(geom, cfg, powers.at(t)).mu

    grid = _coarse_grid(t_min)
    res = stationarity_residual(geom, cfg, powers, grid).tolist()
    grid = grid.tolist()
    candidates = []
    for i in range(len(grid) - 1):
        r0, r1 = res[i], res[i + 1]
        if r0 == 0.0:
            candidates.append(OptimalPoint(grid[i], mu(grid[i]), 0.0, (grid[i], grid[i])))
        elif r0 * r1 < 0:
            root, f_root, lo, hi = _bisect(f, grid[i], grid[i + 1], r0)
            candidates.append(OptimalPoint(root, mu(root), f_root, (lo, hi)))
    for t_end in (grid[0], grid[-1]):
        candidates.append(OptimalPoint(t_end, mu(t_end), f(t_end), (t_end, t_end), interior=False))
    # stable max keeps interior roots ahead of endpoints on exact ties
    return max(candidates, key=lambda c: c.mu_star)


def grid_argmax_mu(geom: NetworkGeometry, cfg: SensingConfig, powers: Powers, step: float = 1e-5):
    """Brute-force maximizer of ``mu`` on the grid ``step, 2*step, ... < 1``."""
    if not 0 < step <= 1e-3:
        raise DomainError(f"grid step must lie in (0, 1e-3], got {step!r}")
    n = int(math.floor(1.0 / step + 1e-9))
    t = np.arange(1, n) * step
    t = t[t < 1.0]
    mu = mu_curve(geom, cfg, powers.p_p, powers.p_c, t)
    i = int(np.argmax(mu))
    return float(t[i]), float(mu[i])


SWEEP_KINDS = ("pcmin", "mu_vs_t", "optimum")
_DEFAULT_KIND = {"t": "mu_vs_t", "r_s": "pcmin", "p_c": "optimum", "p_p": "optimum"}
_ALLOWED = {"pcmin": ("p_p", "r_s"), "mu_vs_t": ("t",), "optimum": ("p_p", "p_c")}


@dataclass(frozen=True)
class SweepSpec:
    """One swept variable over a grid, everything else held fixed.

    ``kind`` picks the output table: ``pcmin`` (minimum jamming power),
    ``mu_vs_t`` (efficiency curve) or ``optimum`` (optimal sensing point and
    secrecy capacity).  It defaults from the variable.
    """

    variable: str
    grid: tuple[float, ...]
    geometry: NetworkGeometry = field(default_factory=NetworkGeometry)
    sensing: SensingConfig = field(default_factory=SensingConfig)
    p_p: float = 1.0
    p_c: float = 1.0
    r_s: float | None = None
    kind: str | None = None

    def resolved_kind(self) -> str:
        return self.kind or _DEFAULT_KIND.get(self.variable, "")

    def validate(self) -> None:
        problems = []
        kind = self.resolved_kind()
        if self.variable not in _DEFAULT_KIND:
            problems.append(f"unknown sweep variable {self.variable!r}")
        elif kind not in SWEEP_KINDS:
            problems.append(f"unknown sweep kind {kind!r}")
        elif self.variable not in _ALLOWED[kind]:
            problems.append(f"variable {self.variable!r} cannot drive a {kind!r} sweep")
        grid = list(self.grid)
        if not grid:
            problems.append("grid is empty")
        for i, (a, b) in enumerate(zip(grid, grid[1:])):
            if not b > a:
                problems.append(f"grid[{i + 1}]={b!r} does not exceed grid[{i}]={a!r}")
        lower_open = {"p_p": kind == "pcmin", "p_c": True, "r_s": True, "t": True}
        for i, v in enumerate(grid):
            if not math.isfinite(v):
                problems.append(f"grid[{i}]={v!r} is not finite")
            elif self.variable == "t" and not 0 < v < 1:
                problems.append(f"grid[{i}]={v!r} outside (0, 1)")
            elif lower_open.get(self.variable) and not v > 0:
                problems.append(f"grid[{i}]={v!r} must be > 0")
            elif not v >= 0:
                problems.append(f"grid[{i}]={v!r} must be >= 0")
        if kind == "pcmin" and self.variable == "p_p" and not (self.r_s and self.r_s > 0):
            problems.append("pcmin sweep over p_p needs a positive r_s")
        if problems:
            raise ValidationError(problems)


def _pcmin_row(spec: SweepSpec, p_p: float, r_s: float) -> dict:
    result = min_jamming_power(spec.geometry, p_p, r_s)
    return {"r_s": r_s, "p_p": p_p, "p_c_min": result.power, "status": result.status.value}


def _mu_row(spec: SweepSpec, t: float) -> dict:
    m = energy_efficiency(spec.geometry, spec.sensing, Powers(spec.p_p, spec.p_c).at(t))
    return {"t": t, "pr_f": m.pr_f, "pr_idle": m.pr_idle, "r_c": m.r_c, "mu": m.mu}


def _optimum_row(spec: SweepSpec, p_p: float, p_c: float, value: float) -> dict:
    best = optimal_sensing_time(spec.geometry, spec.sensing, Powers(p_p, p_c))
    return {
        "var_value": value,
        "t_star": best.t_star,
        "mu_star": best.mu_star,
        "c_s": secrecy_capacity(spec.geometry, p_p, p_c),
        "flag": best.flag,
    }


def sweep(spec: SweepSpec) -> list[dict]:
    """Evaluate ``spec`` row by row, in grid order."""
    spec.validate()
    kind = spec.resolved_kind()
    rows = []
    for v in spec.grid:
        v = float(v)
        if kind == "pcmin":
            if spec.variable == "p_p":
                rows.append(_pcmin_row(spec, v, spec.r_s))
            else:
                rows.append(_pcmin_row(spec, spec.p_p, v))
        elif kind == "mu_vs_t":
            rows.append(_mu_row(spec, v))
        elif spec.variable == "p_p":
            rows.append(_optimum_row(spec, v, spec.p_c, v))
        else:
            rows.append(_optimum_row(spec, spec.p_p, v, v))
    return rows


def all_infeasible(rows: list[dict]) -> bool:
    return bool(rows) and all(r.get("status") == JammingStatus.INFEASIBLE.value for r in rows)
