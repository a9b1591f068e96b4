"""Monte Carlo ground truth for the sensing statistics and the frame model.

The detector sees real-valued samples with unit noise power: ``y_i = n_i``
under H0 and ``y_i = sqrt(gamma_pc) + n_i`` under H1, and thresholds
``T = sum(y_i**2)``.  The threshold is the one for which the Gaussian (CLT)
approximation of ``T`` under H1 gives exactly the target detection
probability; under H0 the same approximation reproduces the closed-form
false-alarm probability used by :mod:`specshare.sensing`.

Work is split into fixed-size index chunks.  Each trial/frame draws from its
own counter-based stream, and chunk results are integer counts, so any
``workers`` setting returns identical numbers.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .. import channel, sensing
from ..channel import NetworkGeometry, OperatingPoint
from ..errors import DomainError
from ..sensing import SensingConfig
from . import _backend
from ._backend import BACKEND

CHUNK = 1 << 15
SEED_MASK = (1 << 64) - 1
CLT_ALLOWANCE = 0.01
DOMAIN_H0 = 1
DOMAIN_H1 = 2


def samples_for(f_s: float, t: float) -> int:
    """Integer sample count ``round(f_s * t)``, at least 1 (halves round up)."""
    return max(1, int(math.floor(f_s * t + 0.5)))


def detector_threshold(gamma_pc: float, n_samples: int, pd_target: float) -> float:
    mean_h1 = n_samples * (1.0 + gamma_pc)
    sd_h1 = math.sqrt(2.0 * n_samples * (1.0 + 2.0 * gamma_pc))
    return mean_h1 + sensing.q_inv(pd_target) * sd_h1


def clt_false_alarm(gamma_pc: float, n_samples: int, pd_target: float) -> float:
    """Closed-form false-alarm probability with ``f_s * t`` replaced by ``n_samples``."""
    a = sensing.q_inv(pd_target) * math.sqrt(1.0 + 2.0 * gamma_pc)
    return float(sensing.q(a + gamma_pc * math.sqrt(n_samples / 2.0)))


def binomial_halfwidth(p: float, n: int, k: float = 3.0) -> float:
    return k * math.sqrt(p * (1.0 - p) / n)


@dataclass(frozen=True)
class DetectorTrialConfig:
    gamma_pc: float
    n_samples: int
    pd_target: float = 0.9
    trials: int = 100_000
    seed: int = 0

    def __post_init__(self):
        if not self.gamma_pc >= 0:
            raise DomainError(f"gamma_pc must be >= 0, got {self.gamma_pc!r}")
        if int(self.n_samples) != self.n_samples or self.n_samples < 1:
            raise DomainError(f"n_samples must be a positive integer, got {self.n_samples!r}")
        if int(self.trials) != self.trials or self.trials < 1:
            raise DomainError(f"trials must be a positive integer, got {self.trials!r}")
        if not 0 < self.pd_target < 1:
            raise DomainError(f"pd_target must lie in (0, 1), got {self.pd_target!r}")

    @classmethod
    def from_scenario(cls, geom, cfg: SensingConfig, op: OperatingPoint, trials=100_000, seed=0):
        gamma_pc = channel.snr(op.p_p, geom.d_pc, geom)
        return cls(gamma_pc, samples_for(cfg.k * op.p_c, op.t), cfg.pd_target, trials, seed)

    @property
    def threshold(self) -> float:
        return detector_threshold(self.gamma_pc, self.n_samples, self.pd_target)

    @property
    def pf_predicted(self) -> float:
        return clt_false_alarm(self.gamma_pc, self.n_samples, self.pd_target)


@dataclass(frozen=True)
class DetectorResult:
    pd_hat: float
    pf_hat: float
    pd_halfwidth: float
    pf_halfwidth: float
    detections: int
    false_alarms: int
    trials: int
    backend: str

    @property
    def ci_halfwidth(self) -> float:
        return max(self.pd_halfwidth, self.pf_halfwidth)


def _chunks(total: int):
    return [(lo, min(lo + CHUNK, total)) for lo in range(0, total, CHUNK)]


def _run(fn, total: int, workers: int):
    """Apply ``fn(lo, hi)`` over fixed chunks of ``range(total)`` and sum the tuples."""
    parts = _chunks(total)
    if workers > 1 and len(parts) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda c: fn(*c), parts))
    else:
        results = [fn(*c) for c in parts]
    if not results:
        return ()
    if isinstance(results[0], tuple):
        return tuple(sum(col) for col in zip(*results))
    return sum(results)


def simulate_detector(cfg: DetectorTrialConfig, workers: int = 1, backend: str | None = None) -> DetectorResult:
    """Run ``cfg.trials`` experiments under each hypothesis."""
    name, k = _backend.load(backend) if backend else (BACKEND, _backend.kernels)
    seed = cfg.seed & SEED_MASK
    amp = math.sqrt(cfg.gamma_pc)
    thr = cfg.threshold
    n = int(cfg.n_samples)
    false_alarms = _run(lambda lo, hi: k.detector_count(seed, DOMAIN_H0, lo, hi, n, 0.0, thr), cfg.trials, workers)
    detections = _run(lambda lo, hi: k.detector_count(seed, DOMAIN_H1, lo, hi, n, amp, thr), cfg.trials, workers)
    pd_hat = detections / cfg.trials
    pf_hat = false_alarms / cfg.trials
    return DetectorResult(
        pd_hat=pd_hat,
        pf_hat=pf_hat,
        pd_halfwidth=binomial_halfwidth(pd_hat, cfg.trials),
        pf_halfwidth=binomial_halfwidth(pf_hat, cfg.trials),
        detections=detections,
        false_alarms=false_alarms,
        trials=cfg.trials,
        backend=name,
    )


FRAME_MODES = ("fast", "sample")


@dataclass(frozen=True)
class FrameSimConfig:
    geometry: NetworkGeometry = field(default_factory=NetworkGeometry)
    sensing: SensingConfig = field(default_factory=SensingConfig)
    op: OperatingPoint = field(default_factory=OperatingPoint)
    frames: int = 1_000_000
    seed: int = 0
    mode: str = "fast"

    def __post_init__(self):
        if int(self.frames) != self.frames or self.frames < 1:
            raise DomainError(f"frames must be a positive integer, got {self.frames!r}")
        if self.mode not in FRAME_MODES:
            raise DomainError(f"mode must be one of {FRAME_MODES}, got {self.mode!r}")


@dataclass(frozen=True)
class FrameSimResult:
    mu_hat: float
    pr_idle_hat: float
    pr_jam_hat: float
    throughput_hat: float
    mu_se: float
    pr_idle_se: float
    frames: int
    active_frames: int
    idle_frames: int
    busy_frames: int
    n_samples: int
    backend: str


def simulate_frames(cfg: FrameSimConfig, workers: int = 1, backend: str | None = None) -> FrameSimResult:
    """Sense/jam/transmit frame simulation.

    A perceived-idle frame credits ``(1 - t) * c_c`` of throughput, a
    perceived-busy frame (CT jams) credits nothing; every frame costs ``p_c``
    joules.  ``fast`` mode draws the detector decision from the target
    detection probability and the closed-form false alarm; ``sample`` mode
    runs the sample-level detector with ``round(f_s * t)`` samples.
    """
    name, k = _backend.load(backend) if backend else (BACKEND, _backend.kernels)
    geom, sc, op = cfg.geometry, cfg.sensing, cfg.op
    seed = cfg.seed & SEED_MASK
    metrics = sensing.energy_efficiency(geom, sc, op)
    n_samples = samples_for(sc.k * op.p_c, op.t)
    if cfg.mode == "fast":
        pd, pf = sc.pd_target, metrics.pr_f
        counts = _run(lambda lo, hi: k.frame_counts_fast(seed, lo, hi, sc.pr1, pd, pf), cfg.frames, workers)
    else:
        amp = math.sqrt(metrics.gamma_pc)
        thr = detector_threshold(metrics.gamma_pc, n_samples, sc.pd_target)
        counts = _run(
            lambda lo, hi: k.frame_counts_sample(seed, lo, hi, sc.pr1, n_samples, amp, thr),
            cfg.frames,
            workers,
        )
    active, active_busy, inactive_busy = counts
    busy = active_busy + inactive_busy
    idle = cfg.frames - busy
    pr_idle = idle / cfg.frames
    credit = (1.0 - op.t) * metrics.c_c
    throughput = credit * pr_idle
    if cfg.frames > 1:
        se = math.sqrt(pr_idle * (1.0 - pr_idle) / (cfg.frames - 1))
    else:
        se = math.inf
    return FrameSimResult(
        mu_hat=throughput / op.p_c,
        pr_idle_hat=pr_idle,
        pr_jam_hat=busy / cfg.frames,
        throughput_hat=throughput,
        mu_se=credit * se / op.p_c,
        pr_idle_se=se,
        frames=cfg.frames,
        active_frames=active,
        idle_frames=idle,
        busy_frames=busy,
        n_samples=n_samples,
        backend=name,
    )


@dataclass(frozen=True)
class BandCheck:
    name: str
    analytic: float
    empirical: float
    halfwidth: float

    @property
    def ok(self) -> bool:
        return abs(self.empirical - self.analytic) <= self.halfwidth


def frame_bands(cfg: FrameSimConfig, result: FrameSimResult) -> list[BandCheck]:
    """Analytic-vs-empirical checks for a frame run.

    Half-widths are 3 binomial sigmas at the analytic idle probability;
    ``sample`` mode adds the CLT allowance because its detector is only
    approximately the closed-form one.
    """
    m = sensing.energy_efficiency(cfg.geometry, cfg.sensing, cfg.op)
    half = binomial_halfwidth(m.pr_idle, result.frames)
    if cfg.mode == "sample":
        half += CLT_ALLOWANCE
    scale = (1.0 - cfg.op.t) * m.c_c / cfg.op.p_c
    return [
        BandCheck("pr_idle", m.pr_idle, result.pr_idle_hat, half),
        BandCheck("mu", m.mu, result.mu_hat, half * scale),
    ]


__all__ = [
    "BACKEND",
    "CLT_ALLOWANCE",
    "BandCheck",
    "DetectorResult",
    "DetectorTrialConfig",
    "FrameSimConfig",
    "FrameSimResult",
    "binomial_halfwidth",
    "clt_false_alarm",
    "detector_threshold",
    "frame_bands",
    "samples_for",
    "simulate_detector",
    "simulate_frames",
]
