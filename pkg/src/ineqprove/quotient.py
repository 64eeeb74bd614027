"""Continuous quotient extension of f over [a, b].

Given f with a root of order n at a and order m at b, the quotient
f(x) / ((x-a)^n (b-x)^m) extends continuously to the closed segment with
endpoint values alpha and beta.  The extension is positive everywhere iff
f is nonnegative with roots at most at the endpoints, which is what the
certification pipeline ultimately verifies.

Endpoint limits come from two routes:

* ``endpoint_limits_taylor`` -- exact Taylor coefficients for integer
  orders: alpha = f^(n)(a) / (n! (b-a)^m), beta = (-1)^m f^(m)(b) / (m! (b-a)^n),
  after checking that all lower-order derivatives vanish;
* ``endpoint_limits_numeric`` -- quotient samples along a + (b-a) 4^-j,
  j = 3..12 (mirrored at b), accelerated by iterated Aitken extrapolation;
  works for non-integer orders and doubles as a cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import mpmath
from mpmath import mp

from .errors import (
    ConfigurationError,
    DivergentLimitError,
    DomainError,
    MultiplicityError,
    UnstableLimitError,
    ZeroLimitError,
)
from .expr import Expression, differentiate, evaluate
from .precision import Precision, to_mpf, working

# width of the near-endpoint zone, relative to b - a, where the raw quotient
# is replaced by a linear blend toward the limit value
EDGE_FRACTION = "1e-8"


class LimitMethod(str, Enum):
    TAYLOR = "taylor"
    NUMERIC = "numeric"
    USER_SUPPLIED = "user_supplied"


def _pow(base, exponent):
    if exponent == 0:
        return mp.mpf(1)
    if exponent == int(exponent):
        return base ** int(exponent)
    return mp.power(base, exponent)


class QuotientFunction:
    """f(x)/((x-a)^n (b-x)^m) extended continuously to [a, b].

    Within (b-a)*1e-8 of an endpoint the raw quotient is 0/0-noisy, so
    evaluation switches to a linear blend between the endpoint limit and the
    quotient value at the zone boundary.  Instances are immutable once built.
    """

    def __init__(self, f: Expression, a, b, n, m, alpha, beta,
                 limit_method: LimitMethod, precision: Precision = Precision()):
        self.precision = precision
        with working(precision):
            self.a = to_mpf(a)
            self.b = to_mpf(b)
            self.n = to_mpf(n)
            self.m = to_mpf(m)
            self.alpha = to_mpf(alpha)
            self.beta = to_mpf(beta)
            if not self.a < self.b:
                raise ConfigurationError("segment must satisfy a < b")
            if self.n < 0 or self.m < 0:
                raise ConfigurationError("root orders n, m must be nonnegative")
            for name, v in (("alpha", self.alpha), ("beta", self.beta)):
                if not mpmath.isfinite(v) or v == 0:
                    raise ConfigurationError(
                        f"endpoint limit {name} must be finite and non-zero, got {v}"
                    )
            self._edge = (self.b - self.a) * to_mpf(EDGE_FRACTION)
        self.f = f
        self.limit_method = LimitMethod(limit_method)
        self._edge_values = {}

    def _quotient(self, x):
        fv = evaluate(self.f, x, self.precision)
        return fv / (_pow(x - self.a, self.n) * _pow(self.b - x, self.m))

    def _edge_value(self, which):
        v = self._edge_values.get(which)
        if v is None:
            x0 = self.a + self._edge if which == "a" else self.b - self._edge
            v = self._quotient(x0)
            self._edge_values[which] = v
        return v

    def evaluate(self, x):
        with working(self.precision):
            xv = to_mpf(x)
            if xv == self.a:
                return +self.alpha
            if xv == self.b:
                return +self.beta
            if not self.a < xv < self.b:
                raise DomainError(f"{xv} outside segment [{self.a}, {self.b}]")
            if xv - self.a < self._edge:
                g0 = self._edge_value("a")
                return self.alpha + (g0 - self.alpha) * (xv - self.a) / self._edge
            if self.b - xv < self._edge:
                g0 = self._edge_value("b")
                return self.beta + (g0 - self.beta) * (self.b - xv) / self._edge
            return self._quotient(xv)

    __call__ = evaluate


def _as_order(value, name):
    v = to_mpf(value)
    if v < 0 or v != int(v):
        raise ConfigurationError(f"{name} must be a nonnegative integer for the Taylor route, got {value}")
    return int(v)


def endpoint_limits_taylor(f: Expression, a, b, n, m, p: Precision = Precision(),
                           vanish_tol="1e-20"):
    """Endpoint limits from exact derivative values at the endpoints.

    Requires integer orders; every derivative of order below n (resp. m) must
    vanish at a (resp. b) to within ``vanish_tol``, which is loose enough to
    absorb quadrature noise in expressions containing kurepa nodes but tight
    enough to reject a genuinely wrong multiplicity.
    """
    with working(p):
        av = to_mpf(a)
        bv = to_mpf(b)
        if not av < bv:
            raise ConfigurationError("segment must satisfy a < b")
        ni = _as_order(n, "n")
        mi = _as_order(m, "m")
        tol = to_mpf(vanish_tol)
        derivs = [f]
        for _ in range(max(ni, mi)):
            derivs.append(differentiate(derivs[-1]))
        for i in range(ni):
            v = evaluate(derivs[i], av, p)
            if abs(v) > tol:
                raise MultiplicityError("a", i, v)
        for i in range(mi):
            v = evaluate(derivs[i], bv, p)
            if abs(v) > tol:
                raise MultiplicityError("b", i, v)
        fa = evaluate(derivs[ni], av, p)
        fb = evaluate(derivs[mi], bv, p)
        alpha = fa / (math.factorial(ni) * _pow(bv - av, mi))
        beta = (-1) ** mi * fb / (math.factorial(mi) * _pow(bv - av, ni))
        return +alpha, +beta


def _extrapolate(seq, endpoint, digits, stabilize_tol):
    scale = max(abs(v) for v in seq)
    if scale == 0:
        raise ZeroLimitError("quotient vanishes at every sample", endpoint=endpoint)
    ratios = []
    for u, v in zip(seq[-4:], seq[-3:]):
        if u != 0:
            ratios.append(abs(v) / abs(u))
    rho = mp.mpf(1)
    if ratios:
        prod = mp.mpf(1)
        for r in ratios:
            prod *= r
        rho = prod ** (mp.mpf(1) / len(ratios))
    log4 = mp.log(4)
    if rho >= mp.mpf("1.8"):
        raise DivergentLimitError(
            "quotient grows along the sample sequence; the supplied order is too large",
            hint_exponent=-mp.log(rho) / log4, endpoint=endpoint,
        )
    # iterated Aitken acceleration; the zero-denominator guard carries values
    # through, so exactly constant sequences stabilize immediately
    carry_tol = mp.mpf(10) ** (-(digits + 5)) * scale
    zero_floor = stabilize_tol * scale
    arr = list(seq)
    prev = arr[-1]
    stab = None
    while len(arr) >= 3:
        new = []
        for i in range(len(arr) - 2):
            d = arr[i + 2] - 2 * arr[i + 1] + arr[i]
            if abs(d) <= carry_tol:
                new.append(arr[i + 2])
            else:
                new.append(arr[i + 2] - (arr[i + 2] - arr[i + 1]) ** 2 / d)
        val = new[-1]
        if abs(val - prev) <= stabilize_tol * max(abs(val), abs(prev)) or \
                (abs(val) <= zero_floor and abs(prev) <= zero_floor):
            stab = val
            break
        prev = val
        arr = new
    if stab is None:
        raise UnstableLimitError(
            "accelerated quotient sequence did not stabilize; "
            "check the supplied orders or raise the precision",
            endpoint=endpoint,
        )
    if abs(stab) <= mp.mpf("1e-6") * scale:
        hint = mp.log(1 / rho) / log4 if rho > 0 else None
        if rho > mp.mpf("1.05"):
            raise DivergentLimitError(
                "quotient grows along the sample sequence; the supplied order is too large",
                hint_exponent=-mp.log(rho) / log4, endpoint=endpoint,
            )
        raise ZeroLimitError(
            "quotient tends to zero; the supplied order is too small",
            hint_exponent=hint, endpoint=endpoint,
        )
    return stab


def endpoint_limits_numeric(f: Expression, a, b, n, m, p: Precision = Precision(),
                            stabilize_tol="1e-8"):
    """Endpoint limits by geometric sampling plus iterated Aitken acceleration.

    Handles real (non-integer) orders.  Raises DivergentLimitError or
    ZeroLimitError with an observed-exponent hint when the supplied order is
    off, and UnstableLimitError when no limit emerges at the requested
    relative tolerance (1e-8 by default).
    """
    with working(p):
        av = to_mpf(a)
        bv = to_mpf(b)
        if not av < bv:
            raise ConfigurationError("segment must satisfy a < b")
        nv = to_mpf(n)
        mv = to_mpf(m)
        if nv < 0 or mv < 0:
            raise ConfigurationError("orders must be nonnegative")
        tol = to_mpf(stabilize_tol)
        span = bv - av

        def quotient(x):
            return evaluate(f, x, p) / (_pow(x - av, nv) * _pow(bv - x, mv))

        qa = [quotient(av + span * mp.mpf(4) ** (-j)) for j in range(3, 13)]
        qb = [quotient(bv - span * mp.mpf(4) ** (-j)) for j in range(3, 13)]
        alpha = _extrapolate(qa, "a", p.decimal_digits, tol)
        beta = _extrapolate(qb, "b", p.decimal_digits, tol)
        return +alpha, +beta


def build_quotient_function(f: Expression, a, b, n, m, alpha, beta,
                            limit_method=LimitMethod.USER_SUPPLIED,
                            p: Precision = Precision()) -> QuotientFunction:
    """Assemble the continuous quotient extension from precomputed limits."""
    return QuotientFunction(f, a, b, n, m, alpha, beta, limit_method, p)


@dataclass(frozen=True)
class SignCheckReport:
    samples: int
    violations: tuple
    passed: bool


def sign_equivalence_check(qf: QuotientFunction, samples: int) -> SignCheckReport:
    """Verify sign(g) == sign(f) at interior Chebyshev-distributed points.

    The denominator is positive inside (a, b), so any violation indicates a
    construction defect; the report is expected to be empty.
    """
    if samples < 2:
        raise ConfigurationError("need at least 2 samples")
    p = qf.precision
    with working(p):
        mid = (qf.a + qf.b) / 2
        hw = (qf.b - qf.a) / 2
        violations = []
        for i in range(samples):
            x = mid - hw * mp.cos(mp.pi * (2 * i + 1) / (2 * samples))
            fv = evaluate(qf.f, x, p)
            gv = qf.evaluate(x)
            sf = (fv > 0) - (fv < 0)
            sg = (gv > 0) - (gv < 0)
            if sf != sg:
                violations.append((+x, +fv, +gv))
        return SignCheckReport(samples=samples, violations=tuple(violations),
                               passed=not violations)
