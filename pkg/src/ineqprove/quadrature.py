"""Adaptive Gauss-Legendre quadrature for the Kurepa function family.

The Kurepa function is the improper integral

    K(x) = integral_0^inf exp(-t) (t^x - 1)/(t - 1) dt        (x >= 0)

and its derivatives replace (t^x - 1) by t^x log(t)^j.  The integrand has a
removable singularity at t = 1 and an endpoint singularity of log type at
t = 0 for the derivative integrals.  The domain is therefore split:

* (0, 7/8]   -- substituted t = exp(-s), which turns the t -> 0 endpoint
               into a smooth exponential tail in s;
* [7/8, 9/8] -- the quotient factor is replaced by its power series in
               u = t - 1, truncated once terms drop below 10^-(p+10);
* [9/8, T]  -- integrated directly; T is chosen so the dropped tail is
               provably below the error target and its bound is added to
               ``error_bound``.

Each region is covered by adaptive Gauss-Legendre panels whose error is
estimated by comparing the n-node and 2n-node rules.  Everything is summed
in a fixed order, so results are bit-for-bit reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
from mpmath import mp

from .errors import (
    ConfigurationError,
    DomainError,
    PrecisionUnreachableError,
    RootBracketError,
)
from .precision import Precision, to_mpf, working

_node_cache = {}
_result_cache = {}
_RESULT_CACHE_LIMIT = 65536


@dataclass(frozen=True)
class QuadratureResult:
    """Value of one improper integral together with its accounting."""

    value: mpmath.mpf
    error_bound: mpmath.mpf
    nodes_used: int
    tail_cutoff: mpmath.mpf


def gauss_legendre_nodes(n: int):
    """Nodes and weights of the n-point rule on [-1, 1] at the current precision.

    Computed by Newton iteration on the Legendre recurrence and cached per
    (n, binary precision).  Nodes are returned in ascending order and are
    exactly symmetric about 0.
    """
    key = (n, mp.prec)
    cached = _node_cache.get(key)
    if cached is not None:
        return cached
    with mp.extraprec(40):
        half = []
        tol = mp.mpf(2) ** (-(mp.prec - 20))
        for i in range(1, n // 2 + 1):
            xseed = math.cos(math.pi * (i - 0.25) / (n + 0.5))
            xk = mp.mpf(xseed)
            for _ in range(100):
                p0, p1 = mp.mpf(1), xk
                for k in range(2, n + 1):
                    p0, p1 = p1, ((2 * k - 1) * xk * p1 - (k - 1) * p0) / k
                dp = n * (xk * p1 - p0) / (xk * xk - 1)
                dx = p1 / dp
                xk -= dx
                if abs(dx) <= tol:
                    break
            p0, p1 = mp.mpf(1), xk
            for k in range(2, n + 1):
                p0, p1 = p1, ((2 * k - 1) * xk * p1 - (k - 1) * p0) / k
            dp = n * (xk * p1 - p0) / (xk * xk - 1)
            half.append((xk, 2 / ((1 - xk * xk) * dp * dp)))
        nodes = []
        weights = []
        for xk, wk in half:
            nodes.append(-xk)
            weights.append(wk)
        if n % 2 == 1:
            x0 = mp.mpf(0)
            p0, p1 = mp.mpf(1), x0
            for k in range(2, n + 1):
                p0, p1 = p1, ((2 * k - 1) * x0 * p1 - (k - 1) * p0) / k
            dp = n * (x0 * p1 - p0) / (x0 * x0 - 1)
            nodes.append(x0)
            weights.append(2 / (dp * dp))
        for xk, wk in reversed(half):
            nodes.append(xk)
            weights.append(wk)
    result = (tuple(+x for x in nodes), tuple(+w for w in weights))
    _node_cache[key] = result
    return result


def _gauss_panel(f, lo, hi, n):
    """(n-node estimate, 2n-node estimate, evaluations used) on [lo, hi]."""
    half = (hi - lo) / 2
    mid = (lo + hi) / 2
    out = []
    for count in (n, 2 * n):
        xs, ws = gauss_legendre_nodes(count)
        acc = mp.mpf(0)
        for t, w in zip(xs, ws):
            acc += w * f(mid + half * t)
        out.append(half * acc)
    return out[0], out[1], 3 * n


def _adaptive(f, panels, tol_abs, n_nodes, state):
    """Adaptive bisection over an initial panel list, left to right."""
    span = mp.mpf(0)
    for lo, hi in panels:
        span += hi - lo
    min_width = span * mp.mpf("1e-30")
    total = mp.mpf(0)
    err = mp.mpf(0)
    stack = list(reversed(panels))
    while stack:
        lo, hi = stack.pop()
        width = hi - lo
        v1, v2, used = _gauss_panel(f, lo, hi, n_nodes)
        state["evals"] += used
        if state["evals"] > state["budget"]:
            raise PrecisionUnreachableError(
                f"quadrature budget of {state['budget']} evaluations exhausted "
                "before the error target was met"
            )
        e = abs(v2 - v1)
        if e <= tol_abs * width / span or width <= min_width:
            total += v2
            err += e
        else:
            mid = (lo + hi) / 2
            stack.append((mid, hi))
            stack.append((lo, mid))
    return total, err


def _geometric_panels(lo, hi, first_width):
    panels = []
    cur = lo
    width = first_width
    while cur < hi:
        nxt = min(cur + width, hi)
        panels.append((cur, nxt))
        cur = nxt
        width *= 2
    return panels


def _series_quotient(u, x, term_tol):
    """(t^x - 1)/(t - 1) as its power series in u = t - 1, |u| <= 1/8."""
    coef = +x
    acc = +coef
    upow = mp.mpf(1)
    k = 1
    while True:
        k += 1
        coef = coef * (x - (k - 1)) / k
        upow = upow * u
        term = coef * upow
        acc += term
        if abs(term) < term_tol:
            return acc
        if k > 600:
            raise PrecisionUnreachableError("series for the t=1 window did not converge")


def _window_integrand(x, j, term_tol):
    if j == 0:
        def f(u):
            return mp.exp(-(1 + u)) * _series_quotient(u, x, term_tol)
    else:
        def f(u):
            if u == 0:
                lr = mp.mpf(1)
            else:
                lr = mpmath.log1p(u) / u
            return mp.exp(-(1 + u)) * mp.power(1 + u, x) * u ** (j - 1) * lr ** j
    return f


def _low_integrand(x, j):
    # t in (0, 7/8] via t = exp(-s); includes the dt = -exp(-s) ds factor
    if j == 0:
        def f(s):
            w = mp.exp(-s)
            return mp.exp(-w) * w * mpmath.expm1(-x * s) / (w - 1)
    else:
        sign = (-1) ** j
        def f(s):
            w = mp.exp(-s)
            return mp.exp(-w) * w * mp.exp(-x * s) * (sign * s ** j) / (w - 1)
    return f


def _high_integrand(x, j):
    if j == 0:
        def f(t):
            return mp.exp(-t) * mpmath.expm1(x * mp.log(t)) / (t - 1)
    else:
        def f(t):
            return mp.exp(-t) * mp.power(t, x) * mp.log(t) ** j / (t - 1)
    return f


def _low_tail_bound(x, j, s_max, eps):
    # integrand bound: exp(-(x+1)s) s^j / eps for s >= s_max
    c = x + 1
    if j == 0:
        return mp.exp(-s_max) / eps
    total = mp.mpf(0)
    fall = mp.mpf(1)
    for i in range(j + 1):
        total += fall * s_max ** (j - i) / c ** (i + 1)
        fall *= j - i
    return mp.exp(-c * s_max) * total / eps


def _high_tail_bound(x, j, T):
    # uses log(t) <= sqrt(t) for t >= 1 and int_T t^q e^-t dt <= e^-T T^q/(1-q/T)
    if j == 0:
        gx = mp.exp(-T) * mp.power(T, x) / (1 - x / T) if x > 0 else mp.exp(-T)
        return (gx + mp.exp(-T)) / (T - 1)
    q = x + mp.mpf(j) / 2
    return mp.exp(-T) * mp.power(T, q) / (1 - q / T) / (T - 1)


def _kurepa_integral(x, j, p, node_factor, tail_factor, max_evaluations):
    digits = p.decimal_digits
    with working(p):
        x_probe = float(to_mpf(x))
    if x_probe > 1000:
        raise ConfigurationError(
            f"kurepa argument {x_probe} is too large: the integral has about "
            "Gamma(x) magnitude and an absolute error target is meaningless there"
        )
    guard = 15
    if x_probe > 2:
        # the integrals grow like Gamma(x); carry enough digits that the
        # absolute error target stays above the rounding floor
        guard += int(x_probe * math.log10(x_probe)) + 5
    with working(p, extra=guard):
        xv = to_mpf(x)
        if xv < 0:
            raise DomainError(f"kurepa integrals require x >= 0, got {xv}")
        tf = to_mpf(tail_factor)
        key = (xv, j, digits, node_factor, str(tf))
        cached = _result_cache.get(key)
        if cached is not None:
            return cached

        target = mp.mpf(10) ** (-(digits - 10))
        share = target / 8
        region_tol = target / 4
        term_tol = mp.mpf(10) ** (-(digits + 10))
        eps = mp.mpf(1) / 8
        n_base = max(20, (digits + 15) // 2) * node_factor
        state = {"evals": 0, "budget": max_evaluations}

        # low region (0, 1-eps], substituted t = exp(-s)
        s0 = -mpmath.log1p(-eps)
        s_max = mp.mpf(max(20, int((digits + 14) * 2.303 / (float(xv) + 1)) + 1))
        while _low_tail_bound(xv, j, s_max, eps) > share:
            s_max *= mp.mpf(5) / 4
        tail_low = _low_tail_bound(xv, j, s_max, eps)
        v_low, e_low = _adaptive(
            _low_integrand(xv, j), _geometric_panels(s0, s_max, mp.mpf(1)),
            region_tol, n_base, state,
        )

        # series window [1-eps, 1+eps] in u = t - 1
        v_win, e_win = _adaptive(
            _window_integrand(xv, j, term_tol), [(-eps, eps)],
            region_tol, n_base, state,
        )

        # high region [1+eps, T]; the closed tail bound needs T well above x+j
        T = mp.mpf(max(40, digits, 2 * (int(xv) + j) + 40))
        while (mp.exp(-T) * mp.power(T, xv + 1) > term_tol
               or _high_tail_bound(xv, j, T) > share):
            T *= mp.mpf(5) / 4
        T *= tf
        tail_high = _high_tail_bound(xv, j, T)
        v_high, e_high = _adaptive(
            _high_integrand(xv, j), _geometric_panels(1 + eps, T, mp.mpf(1)),
            region_tol, n_base, state,
        )

        value = v_low + v_win + v_high
        err = e_low + e_win + e_high + tail_low + tail_high
        if err > target:
            raise PrecisionUnreachableError(
                f"accumulated quadrature error {err} exceeds target {target}"
            )
        result = QuadratureResult(
            value=+value,
            error_bound=+err,
            nodes_used=state["evals"],
            tail_cutoff=+T,
        )
    if len(_result_cache) >= _RESULT_CACHE_LIMIT:
        _result_cache.clear()
    _result_cache[key] = result
    return result


def kurepa(x, p: Precision = Precision(), *, node_factor: int = 1,
           tail_factor=1, max_evaluations: int = 500000) -> QuadratureResult:
    """K(x) for x >= 0 with error_bound at most 10^-(digits-10).

    ``node_factor`` scales the per-panel node count and ``tail_factor``
    scales the truncation point, for self-convergence checks.
    """
    return _kurepa_integral(x, 0, p, node_factor, tail_factor, max_evaluations)


def kurepa_derivative(x, order: int, p: Precision = Precision(), *,
                      node_factor: int = 1, tail_factor=1,
                      max_evaluations: int = 500000) -> QuadratureResult:
    """j-th derivative of K at x (j in {1, 2, 3}), by the log-kernel integrals."""
    if order not in (1, 2, 3):
        raise ConfigurationError(f"derivative order must be 1, 2 or 3, got {order!r}")
    return _kurepa_integral(x, order, p, node_factor, tail_factor, max_evaluations)


def find_inflection(p: Precision = Precision(), bracket=(0, 1),
                    width_tol="1e-9") -> mpmath.mpf:
    """Bisection root of K'' on ``bracket``; K is concave left of the root.

    Bisection is preferred over Newton here: each K'' evaluation is an
    adaptive quadrature, so sign robustness matters more than step count.
    """
    with working(p):
        lo = to_mpf(bracket[0])
        hi = to_mpf(bracket[1])
        wtol = to_mpf(width_tol)
        if not lo < hi:
            raise ConfigurationError("bracket must satisfy lo < hi")
        f_lo = kurepa_derivative(lo, 2, p).value
        f_hi = kurepa_derivative(hi, 2, p).value
        if not (f_lo < 0 < f_hi):
            raise RootBracketError(
                "second derivative does not change sign over the bracket; "
                "the quadrature is likely misconfigured"
            )
        while hi - lo > wtol:
            mid = (lo + hi) / 2
            fm = kurepa_derivative(mid, 2, p).value
            if fm == 0:
                return mid
            if fm < 0:
                lo = mid
            else:
                hi = mid
        return (lo + hi) / 2
