"""Regenerate the frozen Kurepa reference values in helpers.py.

Deliberately independent of the package: tanh-sinh quadrature (mpmath.quad)
over a split contour with a binomial-series patch at the removable t = 1
singularity, plus mpmath.findroot for the inflection point.  Run manually:

    python3 tests/reference_oracle.py
"""

import mpmath
from mpmath import mp, mpf


def quotient_factor(t, x, j):
    # (t^x - 1)/(t - 1) for j = 0, else t^x log(t)^j / (t - 1)
    u = t - 1
    if abs(u) < mpf("0.125"):
        if j == 0:
            total = mpf(0)
            coef = mpf(1)
            upow = 1 / u if u != 0 else None
            term_tol = mpf(10) ** (-mp.dps - 5)
            for k in range(1, 500):
                coef = coef * (x - (k - 1)) / k
                upow = upow * u if upow is not None else (1 if k == 1 else 0)
                term = coef * upow
                total += term
                if abs(term) < term_tol and k > 2:
                    return total
            raise RuntimeError("series did not converge")
        ell = mpmath.log1p(u) / u if u != 0 else mpf(1)
        return mpmath.power(t, x) * u ** (j - 1) * ell ** j
    if j == 0:
        return (mpmath.power(t, x) - 1) / u
    return mpmath.power(t, x) * mpmath.log(t) ** j / u


def kurepa_ts(x, j=0):
    f = lambda t: mpmath.exp(-t) * quotient_factor(t, x, j)
    return mpmath.quad(f, [0, mpf("0.875"), mpf("1.125"), 3, 10, 40, mpmath.inf])


if __name__ == "__main__":
    mp.dps = 40
    print("K_HALF      =", kurepa_ts(mpf("0.5")))
    kp0 = kurepa_ts(0, 1)
    print("KP0         =", kp0)
    print("KPP0        =", kurepa_ts(0, 2))
    print("KPPP0       =", kurepa_ts(0, 3))
    c = mpmath.findroot(lambda t: kurepa_ts(t, 2), mpf("0.93"))
    print("C_INFLECT   =", c)
    print("KP0_TIMES_C =", kp0 * c)
    print("K(1) check  =", kurepa_ts(1))
