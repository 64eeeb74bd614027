"""Machine proof that K(x) <= K'(0) x on [0, 1].

The difference f = K'(0) x - K(x) has a double root at 0 (value and slope
both vanish) and a simple positive value at 1, so the quotient against
x^2 is continuous with positive endpoint limits; a degree-1 minimax
approximation of it separates from its own error bound, which certifies
the inequality.  K'(0) is the best possible constant: any smaller slope
makes the quotient's left limit negative.

Runs in about a minute.  Run:  python3 demos/prove_kurepa_bound.py
"""

import time

import mpmath

from ineqprove import (
    Precision,
    ProofSettings,
    decimal_str,
    kurepa_derivative,
    prove_inequality,
    report_to_json,
)

p40 = Precision(40)
slope = kurepa_derivative(0, 1, p40).value
slope_text = decimal_str(slope, p40)
print(f"best slope K'(0) = {slope_text}")

source = f"({slope_text})*x - kurepa(x)"
settings = ProofSettings(precision=Precision(35))

start = time.perf_counter()
report = prove_inequality(source, 0, 1, 2, 0, 1, settings)
elapsed = time.perf_counter() - start

print(f"\nverdict: {report.verdict}   ({elapsed:.0f}s)")
print(f"  alpha (left limit, = -K''(0)/2) : {mpmath.nstr(report.alpha, 20)}")
print(f"  beta  (right limit, = K'(0)-1)  : {mpmath.nstr(report.beta, 20)}")
print(f"  delta_hat                       : {mpmath.nstr(report.delta_hat, 10)}")
print(f"  certified min of P - delta      : {mpmath.nstr(report.global_min_bound, 10)}")
print(f"  work: {report.timings}")
print(f"\ncaveat: {report.caveat}")

with open("kurepa_bound_report.json", "w", encoding="utf-8") as fh:
    fh.write(report_to_json(report, settings.precision))
    fh.write("\n")
print("\nfull report written to kurepa_bound_report.json")
