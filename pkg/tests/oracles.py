"""Independent reference computations used by the tests.

None of these touch the package's solver or log-sum-exp path.
"""

import math

import mpmath as mp


def naive_volume(gammas, dv0, t, hbar=1.0):
    """Direct summation of the evolved volume."""
    return dv0 / len(gammas) * sum(math.exp(2.0 * g * t / hbar) for g in gammas)


def gamow_T0(n, dv0, dps=40):
    """Bisection on the closed geometric sum (r^(n+1) - 1)/(r - 1), r = exp(2 T0)."""
    with mp.workdps(dps):
        dv = mp.mpf(dv0)

        def f(T):
            return dv * mp.expm1(2 * (n + 1) * T) / mp.expm1(2 * T) - (n + 1)

        lo, hi = mp.mpf("1e-30"), mp.mpf(50)
        for _ in range(250):
            mid = (lo + hi) / 2
            if f(mid) > 0:
                hi = mid
            else:
                lo = mid
        return float((lo + hi) / 2)


def fixed_point_x(dv0, iterations=5000):
    """Plain iteration x <- ln(x/dv0), convergent for the root x > 1."""
    x = math.log(1.0 / dv0)
    for _ in range(iterations):
        x = math.log(x / dv0)
    return x


def single_pole_t0(gamma, dv0, hbar=1.0):
    return hbar / (2.0 * gamma) * math.log(1.0 / dv0)


def symmetric_pair_t0(gamma, dv0, hbar=1.0):
    """Poles +-gamma: dv0*cosh(2 gamma t/hbar) = 1."""
    return hbar * math.acosh(1.0 / dv0) / (2.0 * gamma)
