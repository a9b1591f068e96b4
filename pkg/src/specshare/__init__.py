"""Secrecy capacity and energy efficiency of a spectrum-sharing network in
which a cognitive radio jams an eavesdropper in exchange for channel access.

Modules: :mod:`~specshare.channel` (SNRs, capacities, minimum jamming power),
:mod:`~specshare.sensing` (energy detector, throughput, efficiency),
:mod:`~specshare.optimize` (optimal sensing time, sweeps),
:mod:`~specshare.mc_oracle` (Monte Carlo validation) and
:mod:`~specshare.cli`.
"""
from .channel import (
    JammingResult,
    JammingStatus,
    Metrics,
    NetworkGeometry,
    OperatingPoint,
    Powers,
    eavesdropper_capacity,
    link_capacity,
    min_jamming_power,
    secrecy_capacity,
    snr,
)
from .errors import DomainError, ValidationError
from .optimize import OptimalPoint, SweepSpec, grid_argmax_mu, optimal_sensing_time, stationarity_residual, sweep
from .sensing import (
    DetectorCoefficients,
    SensingConfig,
    detector_coefficients,
    energy_efficiency,
    false_alarm_prob,
    perceived_idle_prob,
    q,
    q_inv,
    throughput,
)

__version__ = "0.1.0"
