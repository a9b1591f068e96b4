"""Energy-detector statistics and the CT energy-efficiency objective.

The sensing-path functions accept numpy arrays for ``t`` / ``pr_f`` so that
whole curves can be evaluated at once; scalars go through the same code.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from statistics import NormalDist

import numpy as np
from scipy.special import erfc

from .channel import (
    Metrics,
    NetworkGeometry,
    OperatingPoint,
    link_capacity,
    link_snrs,
    eavesdropper_capacity,
)
from .errors import DomainError

_STD_NORMAL = NormalDist()
SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class SensingConfig:
    """Target detection probability, sampling-rate constant ``k`` and PT prior."""

    pd_target: float = 0.9
    k: float = 100.0
    pr1: float = 0.3

    def __post_init__(self):
        if not 0 < self.pd_target < 1:
            raise DomainError(f"pd_target must lie in (0, 1), got {self.pd_target!r}")
        if not self.k > 0:
            raise DomainError(f"k must be > 0, got {self.k!r}")
        if not 0 <= self.pr1 <= 1:
            raise DomainError(f"pr1 must lie in [0, 1], got {self.pr1!r}")

    @property
    def pr0(self) -> float:
        return 1.0 - self.pr1


@dataclass(frozen=True)
class DetectorCoefficients:
    """Offset ``a`` and slope ``b`` of the false-alarm argument ``a + b*sqrt(t)``."""

    a: float
    b: float
    f_s: float
    gamma_pc: float


def q(x):
    """Standard normal tail probability (Gaussian complementary CDF)."""
    return 0.5 * erfc(np.asarray(x, dtype=float) / SQRT2)[()]


def q_inv(p: float) -> float:
    """Inverse of :func:`q` on the open interval (0, 1)."""
    if not 0 < p < 1:
        raise DomainError(f"q_inv needs p in (0, 1), got {p!r}")
    if p == 0.5:
        return 0.0
    # Q^{-1}(p) = Phi^{-1}(1 - p) = -Phi^{-1}(p); the latter keeps the tail exact.
    return -_STD_NORMAL.inv_cdf(p)


def detector_coefficients(cfg: SensingConfig, gamma_pc: float, p_c: float) -> DetectorCoefficients:
    if not gamma_pc >= 0:
        raise DomainError(f"gamma_pc must be >= 0, got {gamma_pc!r}")
    if not p_c > 0:
        raise DomainError(f"p_c must be > 0, got {p_c!r}")
    f_s = cfg.k * p_c
    a = q_inv(cfg.pd_target) * math.sqrt(1.0 + 2.0 * gamma_pc)
    b = gamma_pc * math.sqrt(f_s / 2.0)
    return DetectorCoefficients(a=a, b=b, f_s=f_s, gamma_pc=gamma_pc)


def _check_fraction(t):
    t = np.asarray(t, dtype=float)
    if not np.all((t > 0) & (t < 1)):
        raise DomainError("sensing fraction t must lie in (0, 1)")
    return t


def false_alarm_prob(coef: DetectorCoefficients, t):
    t = _check_fraction(t)
    return q(coef.a + coef.b * np.sqrt(t))


def perceived_idle_prob(cfg: SensingConfig, pr_f):
    """Probability that CT declares the channel idle.

    Correctly-detected idle frames plus missed detections of an active PT.
    """
    pr_f = np.asarray(pr_f, dtype=float)
    if not np.all((pr_f >= 0) & (pr_f <= 1)):
        raise DomainError("false-alarm probability must lie in [0, 1]")
    return ((1.0 - cfg.pr1) * (1.0 - pr_f) + cfg.pr1 * (1.0 - cfg.pd_target))[()]


def perceived_idle_prob_collapsed(cfg: SensingConfig, pr_f):
    """Same quantity as :func:`perceived_idle_prob`, in the collapsed form
    ``1 - pr1*pd + (pr1 - 1)*pr_f``."""
    pr_f = np.asarray(pr_f, dtype=float)
    return (1.0 - cfg.pr1 * cfg.pd_target + (cfg.pr1 - 1.0) * pr_f)[()]


def throughput(t, pr_idle, c_c):
    t = _check_fraction(t)
    return ((1.0 - t) * pr_idle * c_c)[()]


def energy_efficiency(geom: NetworkGeometry, cfg: SensingConfig, op: OperatingPoint) -> Metrics:
    """Evaluate the full metric chain at one operating point.

    CT spends ``p_c`` joules per 1 s frame whatever it does (sense, jam or
    transmit), so ``mu = r_c / p_c``.
    """
    g = link_snrs(geom, op.p_p, op.p_c)
    c_p = link_capacity(g["gamma_p"])
    c_c = link_capacity(g["gamma_c"])
    c_e = eavesdropper_capacity(g["gamma_pe"], g["gamma_ce"])
    coef = detector_coefficients(cfg, g["gamma_pc"], op.p_c)
    pr_f = float(false_alarm_prob(coef, op.t))
    pr_idle = float(perceived_idle_prob(cfg, pr_f))
    r_c = float(throughput(op.t, pr_idle, c_c))
    return Metrics(
        c_p=c_p,
        c_c=c_c,
        c_e=c_e,
        c_s=c_p - c_e,
        pr_f=pr_f,
        pr_idle=pr_idle,
        r_c=r_c,
        mu=r_c / op.p_c,
        **g,
    )


def mu_curve(geom: NetworkGeometry, cfg: SensingConfig, p_p: float, p_c: float, t):
    """Energy efficiency evaluated over an array of sensing fractions."""
    g = link_snrs(geom, p_p, p_c)
    coef = detector_coefficients(cfg, g["gamma_pc"], p_c)
    pr_idle = perceived_idle_prob(cfg, false_alarm_prob(coef, t))
    return throughput(t, pr_idle, link_capacity(g["gamma_c"])) / p_c

