"""Pure-numpy Monte Carlo kernels (reference implementation and fallback).

Random numbers come from a counter-based generator: stream ``(seed, domain,
index)`` is keyed by two SplitMix64 finalizer rounds and its ``j``-th draw is
``mix64(key + (j + 1) * GOLDEN)``.  Every trial or frame therefore owns its
stream, so results do not depend on how index ranges are split up.

Gaussian samples use Box-Muller on consecutive counter pairs; the energy
statistic is accumulated sample by sample in index order, matching the
compiled kernel.
"""
import numpy as np

MASK = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
STREAM = 0xD1B54A32D192ED03
M1 = np.uint64(0xBF58476D1CE4E5B9)
M2 = np.uint64(0x94D049BB133111EB)
TWO_M53 = 1.0 / 9007199254740992.0
TWO_PI = 6.283185307179586

DOMAIN_H0 = 1
DOMAIN_H1 = 2
DOMAIN_FRAMES = 3

# keep temporaries around ~1 MB
_BLOCK = 1 << 16

_S30, _S27, _S31, _S11 = (np.uint64(s) for s in (30, 27, 31, 11))


def _mix64(z):
    z = (z ^ (z >> _S30)) * M1
    z = (z ^ (z >> _S27)) * M2
    return z ^ (z >> _S31)


def _u64(x: int):
    return np.uint64(x & MASK)


def stream_keys(seed: int, domain: int, start: int, stop: int) -> np.ndarray:
    base = _mix64(np.array([(seed ^ (domain * GOLDEN)) & MASK], dtype=np.uint64))
    idx = np.arange(start, stop, dtype=np.uint64)
    return _mix64(base + idx * _u64(STREAM))


def _bits(keys, counter: int):
    return _mix64(keys + _u64((counter + 1) * GOLDEN)) >> _S11


def _unit(keys, counter: int):
    return _bits(keys, counter).astype(np.float64) * TWO_M53


def _unit_open0(keys, counter: int):
    return (_bits(keys, counter).astype(np.float64) + 1.0) * TWO_M53


def _energy(keys, c0: int, n: int, amp):
    acc = np.zeros(len(keys))
    for m in range((n + 1) // 2):
        c = c0 + 2 * m
        r = np.sqrt(-2.0 * np.log(_unit_open0(keys, c)))
        th = TWO_PI * _unit(keys, c + 1)
        y = amp + r * np.cos(th)
        acc += y * y
        if 2 * m + 1 < n:
            y = amp + r * np.sin(th)
            acc += y * y
    return acc


def _blocks(start: int, stop: int):
    for lo in range(start, stop, _BLOCK):
        yield lo, min(lo + _BLOCK, stop)


def uniforms(seed, domain, index, count):
    keys = stream_keys(seed, domain, index, index + 1)
    return [float(_unit(keys, j)[0]) for j in range(count)]


def energy_statistic(seed, domain, index, n_samples, amp):
    return float(_energy(stream_keys(seed, domain, index, index + 1), 0, n_samples, amp)[0])


def detector_count(seed, domain, start, stop, n_samples, amp, threshold):
    count = 0
    for lo, hi in _blocks(start, stop):
        keys = stream_keys(seed, domain, lo, hi)
        count += int(np.count_nonzero(_energy(keys, 0, n_samples, amp) > threshold))
    return count


def frame_counts_fast(seed, start, stop, pr1, pd, pf):
    active = active_busy = inactive_busy = 0
    for lo, hi in _blocks(start, stop):
        keys = stream_keys(seed, DOMAIN_FRAMES, lo, hi)
        is_active = _unit(keys, 0) < pr1
        u = _unit(keys, 1)
        active += int(np.count_nonzero(is_active))
        active_busy += int(np.count_nonzero(is_active & (u < pd)))
        inactive_busy += int(np.count_nonzero(~is_active & (u < pf)))
    return active, active_busy, inactive_busy


def frame_counts_sample(seed, start, stop, pr1, n_samples, amp, threshold):
    active = active_busy = inactive_busy = 0
    for lo, hi in _blocks(start, stop):
        keys = stream_keys(seed, DOMAIN_FRAMES, lo, hi)
        is_active = _unit(keys, 0) < pr1
        busy = _energy(keys, 1, n_samples, np.where(is_active, amp, 0.0)) > threshold
        active += int(np.count_nonzero(is_active))
        active_busy += int(np.count_nonzero(is_active & busy))
        inactive_busy += int(np.count_nonzero(~is_active & busy))
    return active, active_busy, inactive_busy
