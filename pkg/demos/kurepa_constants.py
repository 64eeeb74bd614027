"""The Kurepa function by adaptive Gauss-Legendre quadrature.

K(x) = integral_0^inf exp(-t) (t^x - 1)/(t - 1) dt is increasing on [0, 1],
concave up to its single inflection point, convex after.  This script
reproduces the classical constants with per-call error bounds.

Run:  python3 demos/kurepa_constants.py
"""

import mpmath

from ineqprove import Precision, find_inflection, kurepa, kurepa_derivative

p = Precision(50)

print("== values with error accounting ==")
for x in ("0", "0.5", "1"):
    r = kurepa(x, p)
    print(f"  K({x})   = {mpmath.nstr(r.value, 30):35s}"
          f" +/- {mpmath.nstr(r.error_bound, 3)}  ({r.nodes_used} evaluations,"
          f" tail cut at t = {mpmath.nstr(r.tail_cutoff, 5)})")

print("\n== derivatives at 0 ==")
for order in (1, 2, 3):
    r = kurepa_derivative(0, order, p)
    print(f"  K^({order})(0) = {mpmath.nstr(r.value, 30)}")

print("\n== the single inflection point ==")
p35 = Precision(35)
c = find_inflection(p35)
kp0 = kurepa_derivative(0, 1, p35).value
print(f"  c        = {mpmath.nstr(c, 15)}")
print(f"  K'(0)*c  = {mpmath.nstr(kp0 * c, 15)}")
print(f"  K''(c - 0.1) = {mpmath.nstr(kurepa_derivative(c - mpmath.mpf('0.1'), 2, p35).value, 8)}"
      f"   K''(c + 0.05) = {mpmath.nstr(kurepa_derivative(c + mpmath.mpf('0.05'), 2, p35).value, 8)}")

print("\n== self-convergence: doubled nodes move the value within the bound ==")
base = kurepa("0.5", p35)
dense = kurepa("0.5", p35, node_factor=2)
print(f"  |K_n - K_2n| = {mpmath.nstr(abs(base.value - dense.value), 3)}"
      f"  vs 2 * error_bound = {mpmath.nstr(2 * base.error_bound, 3)}")
