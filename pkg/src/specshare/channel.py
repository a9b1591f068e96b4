"""Deterministic path-loss channel model for the PT/PR/CT/CR/EA network.

Every link shares one gain-to-noise ratio ``|h|^2/N``; link SNR is
``gain_over_noise * power / distance**alpha``.  Capacities are normalized by
bandwidth (bit/s/Hz).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DomainError

LN2 = math.log(2.0)


@dataclass(frozen=True)
class NetworkGeometry:
    """Inter-node distances (m), path-loss exponent and ``|h|^2/N`` (1/W)."""

    d_p: float = 2.0
    d_c: float = 2.0
    d_pc: float = 2.0
    d_pe: float = 2.0
    d_ce: float = 2.0
    alpha: float = 2.0
    gain_over_noise: float = 10.0

    def __post_init__(self):
        for name in ("d_p", "d_c", "d_pc", "d_pe", "d_ce"):
            value = getattr(self, name)
            if not value > 0 or not math.isfinite(value):
                raise DomainError(f"{name} must be a positive distance, got {value!r}")
        if not self.alpha >= 1:
            raise DomainError(f"alpha must be >= 1, got {self.alpha!r}")
        if not self.gain_over_noise > 0:
            raise DomainError(f"gain_over_noise must be > 0, got {self.gain_over_noise!r}")

    @classmethod
    def equidistant(cls, d: float = 2.0, alpha: float = 2.0, gain_over_noise: float = 10.0):
        return cls(d, d, d, d, d, alpha, gain_over_noise)


@dataclass(frozen=True)
class Powers:
    """PT transmit power and CT power budget, in watts."""

    p_p: float = 1.0
    p_c: float = 1.0

    def __post_init__(self):
        if not self.p_p >= 0:
            raise DomainError(f"p_p must be >= 0, got {self.p_p!r}")
        if not self.p_c > 0:
            raise DomainError(f"p_c must be > 0, got {self.p_c!r}")

    def at(self, t: float) -> OperatingPoint:
        return OperatingPoint(self.p_p, self.p_c, t)


@dataclass(frozen=True)
class OperatingPoint:
    """Powers plus the sensing fraction ``t`` of the 1 s frame."""

    p_p: float = 1.0
    p_c: float = 1.0
    t: float = 0.09

    def __post_init__(self):
        Powers(self.p_p, self.p_c)
        if not 0 < self.t < 1:
            raise DomainError(f"sensing fraction t must lie in (0, 1), got {self.t!r}")

    @property
    def powers(self) -> Powers:
        return Powers(self.p_p, self.p_c)


@dataclass(frozen=True)
class Metrics:
    """All derived quantities for one operating point."""

    gamma_p: float
    gamma_c: float
    gamma_pc: float
    gamma_pe: float
    gamma_ce: float
    c_p: float
    c_c: float
    c_e: float
    c_s: float
    pr_f: float
    pr_idle: float
    r_c: float
    mu: float

    @property
    def pr_busy(self) -> float:
        return 1.0 - self.pr_idle


class JammingStatus(str, enum.Enum):
    OK = "ok"
    INFEASIBLE = "infeasible"
    NO_JAMMING_NEEDED = "no_jamming_needed"


@dataclass(frozen=True)
class JammingResult:
    """Outcome of :func:`min_jamming_power`; ``power`` is set only when status is OK."""

    status: JammingStatus
    power: float | None = None

    @property
    def ok(self) -> bool:
        return self.status is JammingStatus.OK


def snr(power: float, distance: float, geom: NetworkGeometry) -> float:
    if not distance > 0:
        raise DomainError(f"distance must be > 0, got {distance!r}")
    if not power >= 0:
        raise DomainError(f"power must be >= 0, got {power!r}")
    return geom.gain_over_noise * power / distance**geom.alpha


def link_capacity(gamma: float) -> float:
    """Shannon capacity ``log2(1 + gamma)`` in bit/s/Hz."""
    if not gamma >= 0:
        raise DomainError(f"SNR must be >= 0, got {gamma!r}")
    return math.log1p(gamma) / LN2


def eavesdropper_capacity(gamma_pe: float, gamma_ce: float) -> float:
    """Capacity of the PT-EA link with CT's artificial noise treated as interference."""
    if not gamma_pe >= 0 or not gamma_ce >= 0:
        raise DomainError(f"SNRs must be >= 0, got {gamma_pe!r}, {gamma_ce!r}")
    return math.log1p(gamma_pe / (1.0 + gamma_ce)) / LN2


def link_snrs(geom: NetworkGeometry, p_p: float, p_c: float) -> dict[str, float]:
    return {
        "gamma_p": snr(p_p, geom.d_p, geom),
        "gamma_c": snr(p_c, geom.d_c, geom),
        "gamma_pc": snr(p_p, geom.d_pc, geom),
        "gamma_pe": snr(p_p, geom.d_pe, geom),
        "gamma_ce": snr(p_c, geom.d_ce, geom),
    }


def secrecy_capacity(geom: NetworkGeometry, p_p: float, p_c: float) -> float:
    """``C_P - C_E``.  Negative values (EA better off than PR) are returned as is."""
    gamma_p = snr(p_p, geom.d_p, geom)
    gamma_pe = snr(p_p, geom.d_pe, geom)
    gamma_ce = snr(p_c, geom.d_ce, geom)
    return link_capacity(gamma_p) - eavesdropper_capacity(gamma_pe, gamma_ce)


def min_jamming_power(geom: NetworkGeometry, p_p: float, r_s: float) -> JammingResult:
    """Smallest CT power that lifts the secrecy capacity to ``r_s``.

    Solves ``(1 + g_p) / (1 + g_pe / (1 + g_ce)) = 2**r_s`` for the jamming SNR
    ``g_ce`` and converts it back to watts through the CT-EA path loss.
    """
    if not r_s > 0:
        raise DomainError(f"target secrecy rate must be > 0, got {r_s!r}")
    if not p_p > 0:
        raise DomainError(f"p_p must be > 0, got {p_p!r}")
    gamma_p = snr(p_p, geom.d_p, geom)
    gamma_pe = snr(p_p, geom.d_pe, geom)
    target = 2.0**r_s
    margin = 1.0 + gamma_p - target
    if margin <= 0:
        # C_S -> C_P as p_c grows, so r_s >= C_P is out of reach.
        return JammingResult(JammingStatus.INFEASIBLE)
    # target*(1 + g_pe) - (1 + g_p) written as below to keep cancellation local
    gamma_ce_min = (target * gamma_pe - margin) / margin
    if gamma_ce_min <= 0:
        return JammingResult(JammingStatus.NO_JAMMING_NEEDED)
    power = gamma_ce_min * geom.d_ce**geom.alpha / geom.gain_over_noise
    return JammingResult(JammingStatus.OK, power)
