"""Tour of the expression layer: parsing, evaluation, differentiation.

Run:  python3 demos/expression_toolkit.py
"""

import mpmath

from ineqprove import (
    ExpressionSyntaxError,
    Precision,
    differentiate,
    evaluate,
    parse,
)

p = Precision(50)

print("== parsing and the canonical printer ==")
for source in ("arcsin(x)", "sqrt(1+x) - sqrt(1-x)", "pi*(2-sqrt2)/(pi-2*sqrt2)"):
    e = parse(source)
    print(f"  {source!r:42s} -> {e}")

print("\n== syntax errors carry character positions ==")
for bad in ("(1+x", "2*foo(x)", "x^x"):
    try:
        parse(bad)
    except ExpressionSyntaxError as err:
        print(f"  {bad!r:12s} -> {err}")

print("\n== evaluation at 50 digits ==")
for source, x in (("arcsin(x)", "1"), ("kurepa(x)", "1"), ("exp(sin(x))", "0.5")):
    value = evaluate(parse(source), x, p)
    print(f"  {source} at x={x}: {mpmath.nstr(value, 30)}")

print("\n== symbolic differentiation ==")
for source, order in (("arcsin(x)", 1), ("x*x", 2), ("kurepa(x)", 1)):
    d = differentiate(parse(source), order)
    print(f"  d^{order}/dx^{order} {source:12s} = {d}")

d1 = differentiate(parse("kurepa(x)"))
print(f"\n  the kurepa derivative evaluates through the quadrature module:")
print(f"  K'(0) = {mpmath.nstr(evaluate(d1, 0, p), 30)}")
