"""Shared fixtures and frozen reference values for the test suite."""

from fractions import Fraction

import mpmath

# Independently computed reference values for the Kurepa integrals
# (tanh-sinh quadrature of the defining integrals plus a Newton root for the
# inflection point, at 40 digits; regenerate with tests/reference_oracle.py).
K_HALF = "0.5621865458988268638098252347126581000629"
KP0 = "1.432205734653224414811031006214889079479"
KPP0 = "-1.92664237918118435964409053110564992328"
KPPP0 = "6.163112789651740736462933542452474400223"
C_INFLECT = "0.9298756848087216524174230438346545443014"
KP0_TIMES_C = "1.331773288297645343858372160678385006729"

# Trigonometric form of the arcsin bound: substituting x = sin(t) into
# RHS - arcsin(x) clears the square roots, giving an entire function of t on
# [0, pi/2] with a triple root at 0 and a simple root at pi/2.
TRIG_ARCSIN_SOURCE = (
    "2*(pi*(2-sqrt2)/(pi-2*sqrt2))*sin(x/2)"
    " - x*((sqrt2*(4-pi)/(pi-2*sqrt2)) + 2*cos(x/2))"
)

# Right-hand side of the algebraic arcsin bound, entered with exact
# symbolic constants in pi and sqrt2.
ARCSIN_RHS_SOURCE = (
    "(pi*(2-sqrt2)/(pi-2*sqrt2))*(sqrt(1+x) - sqrt(1-x))"
    " / ((sqrt2*(4-pi)/(pi-2*sqrt2)) + sqrt(1+x) + sqrt(1-x))"
)
ARCSIN_DIFF_SOURCE = f"{ARCSIN_RHS_SOURCE} - arcsin(x)"


def frac_source(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"({value.numerator}/{value.denominator})"


def planted_endpoint_polynomial(rng):
    """Random polynomial with known root multiplicities at 0 and 1.

    Builds f(x) = x^n (1-x)^m q(x) with a random q bounded away from zero at
    both endpoints, so the exact endpoint limits are alpha = q(0), beta = q(1).
    Returns (source_text, n, m, alpha, beta) with exact Fraction limits.
    """
    n = rng.randint(0, 3)
    m = rng.randint(0, 3)
    while True:
        coeffs = [Fraction(rng.randint(-8, 8), rng.choice((1, 2, 4)))
                  for _ in range(rng.randint(1, 4))]
        q0 = coeffs[0]
        q1 = sum(coeffs)
        if abs(q0) >= Fraction(1, 4) and abs(q1) >= Fraction(1, 4):
            break
    parts = []
    if n:
        parts.append(f"x^{n}" if n > 1 else "x")
    if m:
        parts.append(f"(1-x)^{m}" if m > 1 else "(1-x)")
    q_src = " + ".join(
        f"{frac_source(c)}*x^{i}" if i > 1 else (f"{frac_source(c)}*x" if i == 1 else frac_source(c))
        for i, c in enumerate(coeffs)
    )
    parts.append(f"({q_src})")
    source = "*".join(parts)
    return source, n, m, q0, q1


def as_mpf(text):
    return mpmath.mpf(text)
