"""Independent reference computations used to freeze and check expected values.

Nothing here imports the package; formulas are re-derived with mpmath at
40 significant digits or solved by plain bisection.
"""
import mpmath as mp

mp.mp.dps = 40


def q(x):
    return mp.erfc(mp.mpf(x) / mp.sqrt(2)) / 2


def q_inv(p):
    return mp.sqrt(2) * mp.erfinv(1 - 2 * mp.mpf(p))


def snr(power, distance, alpha=2, gain_over_noise=10):
    return mp.mpf(gain_over_noise) * mp.mpf(power) / mp.mpf(distance) ** alpha


def secrecy(g_p, g_pe, g_ce):
    c_p = mp.log(1 + g_p, 2)
    c_e = mp.log(1 + g_pe / (1 + g_ce), 2)
    return c_p - c_e


def mu(t, p_p=1, p_c=1, pr1="0.3", pd="0.9", k=100, d=2, alpha=2, gain_over_noise=10):
    """Energy efficiency chain for an equidistant network, straight from the closed forms."""
    t, pr1, pd = mp.mpf(t), mp.mpf(pr1), mp.mpf(pd)
    g_pc = snr(p_p, d, alpha, gain_over_noise)
    g_c = snr(p_c, d, alpha, gain_over_noise)
    a = q_inv(pd) * mp.sqrt(1 + 2 * g_pc)
    b = g_pc * mp.sqrt(mp.mpf(k) * p_c / 2)
    pr_f = q(a + b * mp.sqrt(t))
    pr_idle = (1 - pr1) * (1 - pr_f) + pr1 * (1 - pd)
    return (1 - t) * pr_idle * mp.log(1 + g_c, 2) / p_c


def residual(t, p_p=1, p_c=1, pr1="0.3", pd="0.9", k=100, d=2):
    t, pr1, pd = mp.mpf(t), mp.mpf(pr1), mp.mpf(pd)
    g_pc = snr(p_p, d)
    a = q_inv(pd) * mp.sqrt(1 + 2 * g_pc)
    b = g_pc * mp.sqrt(mp.mpf(k) * p_c / 2)
    D = a + b * mp.sqrt(t)
    lead = (1 / mp.sqrt(t) - mp.sqrt(t)) * (1 - pr1) * b / (2 * mp.sqrt(2 * mp.pi)) * mp.exp(-D**2 / 2)
    return lead - 1 + pr1 * pd + (1 - pr1) * q(D)


def bisect(f, lo, hi, iters=400):
    """Root of ``f`` on a sign-change bracket, iterated until floats stop moving."""
    f_lo = f(lo)
    if f_lo == 0:
        return lo
    if f_lo * f(hi) > 0:
        raise ValueError("bracket does not change sign")
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        f_mid = f(mid)
        if f_mid == 0:
            return mid
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
