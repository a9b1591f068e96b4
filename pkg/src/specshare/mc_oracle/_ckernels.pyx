# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Monte Carlo kernels.

Mirrors ``_pykernels`` operation for operation: same stream keys, same
counter layout, same sequential accumulation order.  Loops run without the
GIL so chunks can be spread over threads.
"""
from libc.math cimport cos, log, sin, sqrt
from libc.stdint cimport uint64_t

cdef extern from *:
    """
    #define SS_GOLDEN 0x9E3779B97F4A7C15ULL
    #define SS_STREAM 0xD1B54A32D192ED03ULL
    #define SS_M1 0xBF58476D1CE4E5B9ULL
    #define SS_M2 0x94D049BB133111EBULL
    """
    uint64_t SS_GOLDEN
    uint64_t SS_STREAM
    uint64_t SS_M1
    uint64_t SS_M2

cdef double TWO_M53 = 1.0 / 9007199254740992.0
cdef double TWO_PI = 6.283185307179586

cdef uint64_t FRAMES = 3

DOMAIN_H0 = 1
DOMAIN_H1 = 2
DOMAIN_FRAMES = FRAMES


cdef inline uint64_t mix64(uint64_t z) noexcept nogil:
    z = (z ^ (z >> 30)) * SS_M1
    z = (z ^ (z >> 27)) * SS_M2
    return z ^ (z >> 31)


cdef inline uint64_t stream_key(uint64_t seed, uint64_t domain, uint64_t index) noexcept nogil:
    return mix64(mix64(seed ^ (domain * SS_GOLDEN)) + index * SS_STREAM)


cdef inline double unit(uint64_t key, uint64_t counter) noexcept nogil:
    # [0, 1)
    return <double>(mix64(key + (counter + 1) * SS_GOLDEN) >> 11) * TWO_M53


cdef inline double unit_open0(uint64_t key, uint64_t counter) noexcept nogil:
    # (0, 1], safe for log
    return (<double>(mix64(key + (counter + 1) * SS_GOLDEN) >> 11) + 1.0) * TWO_M53


cdef double energy(uint64_t key, uint64_t c0, long n, double amp) noexcept nogil:
    cdef double acc = 0.0
    cdef double r, th, y
    cdef long m
    cdef uint64_t c
    for m in range((n + 1) // 2):
        c = c0 + 2 * <uint64_t>m
        r = sqrt(-2.0 * log(unit_open0(key, c)))
        th = TWO_PI * unit(key, c + 1)
        y = amp + r * cos(th)
        acc += y * y
        if 2 * m + 1 < n:
            y = amp + r * sin(th)
            acc += y * y
    return acc


def uniforms(uint64_t seed, uint64_t domain, uint64_t index, long count):
    """First ``count`` uniforms of one stream (for cross-backend checks)."""
    cdef uint64_t key = stream_key(seed, domain, index)
    return [unit(key, <uint64_t>j) for j in range(count)]


def energy_statistic(uint64_t seed, uint64_t domain, uint64_t index, long n_samples, double amp):
    return energy(stream_key(seed, domain, index), 0, n_samples, amp)


def detector_count(uint64_t seed, uint64_t domain, uint64_t start, uint64_t stop,
                   long n_samples, double amp, double threshold):
    """Number of trials in ``[start, stop)`` whose energy exceeds ``threshold``."""
    cdef uint64_t i
    cdef long count = 0
    with nogil:
        for i in range(start, stop):
            if energy(stream_key(seed, domain, i), 0, n_samples, amp) > threshold:
                count += 1
    return count


def frame_counts_fast(uint64_t seed, uint64_t start, uint64_t stop,
                      double pr1, double pd, double pf):
    """Frames drawn from the analytic detector outcome probabilities.

    Returns ``(active, active_busy, inactive_busy)`` counts.
    """
    cdef uint64_t i, key
    cdef long active = 0, active_busy = 0, inactive_busy = 0
    with nogil:
        for i in range(start, stop):
            key = stream_key(seed, FRAMES, i)
            if unit(key, 0) < pr1:
                active += 1
                if unit(key, 1) < pd:
                    active_busy += 1
            elif unit(key, 1) < pf:
                inactive_busy += 1
    return active, active_busy, inactive_busy


def frame_counts_sample(uint64_t seed, uint64_t start, uint64_t stop, double pr1,
                        long n_samples, double amp, double threshold):
    """Frames with a sample-level energy detector; same return layout as the fast kernel."""
    cdef uint64_t i, key
    cdef long active = 0, active_busy = 0, inactive_busy = 0
    with nogil:
        for i in range(start, stop):
            key = stream_key(seed, FRAMES, i)
            if unit(key, 0) < pr1:
                active += 1
                if energy(key, 1, n_samples, amp) > threshold:
                    active_busy += 1
            elif energy(key, 1, n_samples, 0.0) > threshold:
                inactive_busy += 1
    return active, active_busy, inactive_busy
