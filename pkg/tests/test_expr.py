import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st
from mpmath import mp

from ineqprove import (
    DomainError,
    ExpressionSyntaxError,
    UnknownIdentifierError,
    differentiate,
    evaluate,
    parse,
    working,
)
from ineqprove.expr import (
    BinaryOp,
    Constant,
    KurepaDerivNode,
    KurepaNode,
    UnaryOp,
    Variable,
)

from helpers import KP0


class TestParse:
    def test_arcsin_tree(self):
        e = parse("arcsin(x)")
        assert e.root == UnaryOp("arcsin", Variable())

    def test_sqrt_difference_tree(self):
        e = parse("sqrt(1+x) - sqrt(1-x)")
        assert isinstance(e.root, BinaryOp) and e.root.op == "sub"
        assert e.root.left == UnaryOp("sqrt", BinaryOp("add", Constant(1), Variable()))
        assert e.root.right == UnaryOp("sqrt", BinaryOp("sub", Constant(1), Variable()))

    def test_unbalanced_paren_position(self):
        with pytest.raises(ExpressionSyntaxError) as err:
            parse("(1+x")
        assert err.value.position == 4

    def test_unknown_identifier(self):
        with pytest.raises(UnknownIdentifierError) as err:
            parse("2*foo(x)")
        assert err.value.name == "foo"
        assert err.value.position == 2

    def test_empty_source(self):
        with pytest.raises(ExpressionSyntaxError):
            parse("   ")

    def test_trailing_operator(self):
        with pytest.raises(ExpressionSyntaxError) as err:
            parse("x+")
        assert err.value.position == 2

    def test_non_constant_exponent_rejected(self):
        with pytest.raises(ExpressionSyntaxError):
            parse("x^x")
        with pytest.raises(ExpressionSyntaxError):
            parse("2^pi")

    def test_rational_exponents_accepted(self):
        assert parse("x^(3/2)").root == BinaryOp("pow", Variable(), Constant(Fraction(3, 2)))
        assert parse("x^-1").root == BinaryOp("pow", Variable(), Constant(-1))

    def test_constant_folding(self):
        assert parse("2+3*4").root == Constant(14)
        assert parse("1/10").root == Constant(Fraction(1, 10))
        assert parse("0.1").root == Constant(Fraction(1, 10))
        assert parse("2^10").root == Constant(1024)
        assert parse("0*sin(x)").root == Constant(0)
        assert parse("1e-3").root == Constant(Fraction(1, 1000))

    def test_kurepa_nodes(self):
        assert parse("kurepa(x)").root == KurepaNode(Variable())
        assert parse("kurepa_deriv(2, x)").root == KurepaDerivNode(2, Variable())
        with pytest.raises(ExpressionSyntaxError):
            parse("kurepa_deriv(x, x)")


ROUND_TRIP_FIXTURES = [
    "arcsin(x)",
    "sqrt(1+x) - sqrt(1-x)",
    "x*(1-x)",
    "-x^2 + 3*x - 1/2",
    "pi*(2-sqrt2)/(pi-2*sqrt2)",
    "exp(sin(cos(x)))",
    "kurepa_deriv(3, x*x)",
    "kurepa(x)/arctan(1+x^2)",
    "log(e + x)",
    "2^(3/2) * x^(1/2)",
]


@pytest.mark.parametrize("source", ROUND_TRIP_FIXTURES)
def test_print_parse_round_trip(source):
    e = parse(source)
    printed = str(e)
    again = parse(printed)
    assert again.root == e.root
    assert str(again) == printed


_leaf = st.sampled_from(["x", "pi", "e", "sqrt2", "0", "1", "2", "7", "0.5", "3.25"])
_expr_text = st.recursive(
    _leaf,
    lambda inner: st.one_of(
        st.tuples(st.sampled_from(
            ["sqrt", "exp", "log", "sin", "cos", "arcsin", "arctan", "kurepa"]
        ), inner).map(lambda t: f"{t[0]}({t[1]})"),
        st.tuples(inner, st.sampled_from(["+", "-", "*", "/"]), inner).map(
            lambda t: f"({t[0]} {t[1]} {t[2]})"
        ),
        st.tuples(inner, st.sampled_from(["2", "3", "(1/2)", "(-2)"])).map(
            lambda t: f"({t[0]}^{t[1]})"
        ),
        inner.map(lambda s: f"-({s})"),
    ),
    max_leaves=12,
)


@settings(max_examples=80, deadline=None)
@given(_expr_text)
def test_round_trip_property(source):
    e = parse(source)
    assert parse(str(e)).root == e.root


class TestEvaluate:
    def test_arcsin_origin(self, p50):
        assert evaluate(parse("arcsin(x)"), 0, p50) == 0

    def test_arcsin_endpoint(self, p50):
        v = evaluate(parse("arcsin(x)"), 1, p50)
        with working(p50):
            assert abs(v - mp.pi / 2) < mp.mpf(10) ** -55

    def test_kurepa_at_one(self, p50):
        v = evaluate(parse("kurepa(x)"), 1, p50)
        assert abs(v - 1) < mpmath.mpf("1e-30")

    def test_named_constants(self, p50):
        v = evaluate(parse("sqrt2*sqrt2"), 0, p50)
        assert abs(v - 2) < mpmath.mpf("1e-55")

    def test_negative_base_integer_exponent(self, p50):
        assert evaluate(parse("(0-2)^3"), 0, p50) == -8

    @pytest.mark.parametrize("source, x", [
        ("arcsin(x)", "1.5"),
        ("log(x)", 0),
        ("sqrt(x)", -1),
        ("1/x", 0),
        ("x^(1/2)", -2),
        ("kurepa(x)", -1),
    ])
    def test_domain_errors(self, source, x, p50):
        with pytest.raises(DomainError):
            evaluate(parse(source), x, p50)

    def test_determinism(self, p50):
        e = parse("exp(sin(x)) - arctan(x/3)")
        x = mpmath.mpf("0.7381")
        a = evaluate(e, x, p50)
        b = evaluate(e, x, p50)
        assert a._mpf_ == b._mpf_

    def test_result_independent_of_ambient_context(self, p50):
        e = parse("exp(sin(x)) - arctan(x/3)")
        x = mpmath.mpf("0.7381")
        reference = evaluate(e, x, p50)
        old = mp.dps
        try:
            mp.dps = 15
            low_ambient = evaluate(e, x, p50)
        finally:
            mp.dps = old
        assert low_ambient._mpf_ == reference._mpf_


class TestDifferentiate:
    def test_arcsin_derivative(self, p50):
        d = differentiate(parse("arcsin(x)"))
        assert str(d) == "(1 / sqrt((1 - (x^2))))"

    def test_second_derivative_of_square(self):
        d2 = differentiate(parse("x*x"), 2)
        assert d2.root == Constant(2)

    def test_kurepa_chain(self, p50):
        d = differentiate(parse("kurepa(x)"))
        assert d.root == KurepaDerivNode(1, Variable())
        v = evaluate(d, 0, p50)
        assert abs(v - mpmath.mpf("1.432205735")) < mpmath.mpf("5e-9")
        assert abs(v - mpmath.mpf(KP0)) < mpmath.mpf("1e-30")

    def test_kurepa_deriv_order_increments(self):
        d = differentiate(parse("kurepa_deriv(1, x)"))
        assert d.root == KurepaDerivNode(2, Variable())

    def test_order_validation(self):
        with pytest.raises(Exception):
            differentiate(parse("x"), 0)

    def test_power_rule(self, p50):
        d = differentiate(parse("x^(3/2)"))
        v = evaluate(d, "0.25", p50)
        with working(p50):
            assert abs(v - mp.mpf(3) / 2 * mp.sqrt(mp.mpf("0.25"))) < mp.mpf(10) ** -55


def _random_source(rng, depth=0):
    roll = rng.random()
    if depth >= 3 or roll < 0.3:
        return rng.choice(["x", "x", "x", "pi", "2", "0.5", "(1/3)"])
    if roll < 0.55:
        fn = rng.choice(["sin", "cos", "arctan", "exp"])
        return f"{fn}({_random_source(rng, depth + 1)})"
    if roll < 0.65:
        return f"arcsin(({_random_source(rng, depth + 1)})/4)" if depth < 2 else "arcsin(x/2)"
    op = rng.choice(["+", "-", "*", "/", "^"])
    left = _random_source(rng, depth + 1)
    right = _random_source(rng, depth + 1) if op != "^" else rng.choice(["2", "3", "(1/2)"])
    return f"({left} {op} {right})" if op != "^" else f"(({left})^{right})"


def test_finite_difference_consistency(p50):
    """Symbolic first derivatives agree with central differences.

    20 random expressions from the grammar, 10 random interior points each,
    step 1e-8 at 50-digit precision, relative tolerance 1e-6.
    """
    rng = random.Random(20260809)
    checked = 0
    attempts = 0
    h = mpmath.mpf("1e-8")
    while checked < 20 and attempts < 400:
        attempts += 1
        source = _random_source(rng)
        try:
            e = parse(source)
            d = differentiate(e)
        except ExpressionSyntaxError:
            continue
        points = [mpmath.mpf(rng.uniform(0.1, 0.9)) for _ in range(10)]
        ok_points = 0
        try:
            for x in points:
                sym = evaluate(d, x, p50)
                f_plus = evaluate(e, x + h, p50)
                f_minus = evaluate(e, x - h, p50)
                if max(abs(f_plus), abs(f_minus), abs(sym)) > mpmath.mpf("1e6"):
                    break
                fd = (f_plus - f_minus) / (2 * h)
                assert abs(sym - fd) <= mpmath.mpf("1e-6") * max(1, abs(sym)), \
                    f"finite difference mismatch for {source} at {x}"
                ok_points += 1
        except (DomainError, ZeroDivisionError, OverflowError):
            continue
        if ok_points == 10:
            checked += 1
    assert checked == 20
