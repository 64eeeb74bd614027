import mpmath
import pytest
from mpmath import mp

from ineqprove import (
    ConfigurationError,
    DomainError,
    Precision,
    RootBracketError,
    find_inflection,
    gauss_legendre_nodes,
    kurepa,
    kurepa_derivative,
    working,
)

from helpers import C_INFLECT, KP0, KP0_TIMES_C, KPP0, KPPP0, K_HALF


class TestGaussLegendre:
    def test_exactness_on_polynomials(self, p50):
        # n-node rule integrates degree 2n-1 exactly
        with working(p50):
            xs, ws = gauss_legendre_nodes(6)
            for degree, exact in ((0, 2), (2, mp.mpf(2) / 3), (10, mp.mpf(2) / 11)):
                val = sum(w * x ** degree for x, w in zip(xs, ws))
                assert abs(val - exact) < mp.mpf(10) ** -55

    def test_symmetry(self, p50):
        with working(p50):
            xs, ws = gauss_legendre_nodes(9)
            assert xs[4] == 0
            for i in range(4):
                assert xs[i] == -xs[-1 - i]
                assert ws[i] == ws[-1 - i]
            assert abs(sum(ws) - 2) < mp.mpf(10) ** -55


class TestKurepaValues:
    def test_at_zero_integrand_vanishes(self, p50):
        r = kurepa(0, p50)
        assert r.value == 0
        assert r.error_bound < mpmath.mpf("1e-40")

    def test_at_one_reduces_to_exponential(self, p50):
        r = kurepa(1, p50)
        assert abs(r.value - 1) < mpmath.mpf("1e-38")

    def test_half_matches_reference(self, p50):
        r = kurepa("0.5", p50)
        assert abs(r.value - mpmath.mpf(K_HALF)) < mpmath.mpf("1e-38")

    def test_error_bound_contract(self, p35):
        for x in ("0", "0.25", "1"):
            r = kurepa(x, p35)
            assert r.error_bound <= mpmath.mpf(10) ** (-(35 - 10))
            assert mpmath.isfinite(r.value)
            assert r.nodes_used > 0
            assert r.tail_cutoff > 0

    def test_first_derivative_at_zero(self, p50):
        r = kurepa_derivative(0, 1, p50)
        assert abs(r.value - mpmath.mpf("1.432205735")) < mpmath.mpf("5e-9")
        assert abs(r.value - mpmath.mpf(KP0)) < mpmath.mpf("1e-38")

    def test_second_derivative_concave_at_zero(self, p50):
        r = kurepa_derivative(0, 2, p50)
        assert r.value < 0
        assert abs(r.value - mpmath.mpf(KPP0)) < mpmath.mpf("1e-37")

    def test_third_derivative_positive(self, p50):
        r = kurepa_derivative(0, 3, p50)
        assert r.value > 0
        assert abs(r.value - mpmath.mpf(KPPP0)) < mpmath.mpf("1e-37")

    def test_derivative_positivity_on_grid(self, p30):
        # orders 1 and 3 are positive wherever sampled
        for i in range(6):
            x = mpmath.mpf(i) / 5
            assert kurepa_derivative(x, 1, p30).value > 0
            assert kurepa_derivative(x, 3, p30).value > 0

    def test_integer_arguments_match_factorial_sums(self, p30):
        # for integer n the integrand telescopes: K(n) = 0! + 1! + ... + (n-1)!
        import math

        for n in (2, 5, 12, 25):
            exact = sum(math.factorial(k) for k in range(n))
            r = kurepa(n, p30)
            assert abs(r.value - exact) <= r.error_bound * 2
            assert r.error_bound <= mpmath.mpf(10) ** (-20)

    def test_domain_and_order_validation(self, p35):
        with pytest.raises(DomainError):
            kurepa(-1, p35)
        with pytest.raises(ConfigurationError):
            kurepa_derivative(0, 4, p35)
        with pytest.raises(ConfigurationError):
            kurepa_derivative(0, 0, p35)


class TestConvergenceInvariants:
    @pytest.mark.parametrize("order", [0, 1, 2, 3])
    def test_self_convergence_doubled_nodes(self, order, p35):
        x = mpmath.mpf("0.4")
        if order == 0:
            base = kurepa(x, p35)
            dense = kurepa(x, p35, node_factor=2)
        else:
            base = kurepa_derivative(x, order, p35)
            dense = kurepa_derivative(x, order, p35, node_factor=2)
        assert abs(base.value - dense.value) <= 2 * base.error_bound

    def test_self_convergence_doubled_tail(self, p35):
        x = mpmath.mpf("0.5")
        base = kurepa(x, p35)
        wide = kurepa(x, p35, node_factor=2, tail_factor=2)
        assert abs(base.value - wide.value) <= 2 * base.error_bound

    def test_tail_soundness(self, p35):
        for order in (0, 1):
            if order == 0:
                base = kurepa("0.3", p35)
                longer = kurepa("0.3", p35, tail_factor="1.5")
            else:
                base = kurepa_derivative("0.3", order, p35)
                longer = kurepa_derivative("0.3", order, p35, tail_factor="1.5")
            assert abs(base.value - longer.value) < base.error_bound or \
                base.value == longer.value

    def test_monotone_increasing_on_grid(self):
        p = Precision(20)
        values = [kurepa(mpmath.mpf(i) / 99, p).value for i in range(100)]
        assert all(lo < hi for lo, hi in zip(values, values[1:]))

    def test_determinism(self, p35):
        a = kurepa("0.77", p35)
        b = kurepa("0.77", p35)
        assert a.value._mpf_ == b.value._mpf_
        assert a.error_bound._mpf_ == b.error_bound._mpf_


class TestInflection:
    def test_location_and_products(self, p35):
        c = find_inflection(p35)
        assert abs(c - mpmath.mpf("0.929875685")) < mpmath.mpf("5e-9")
        assert abs(c - mpmath.mpf(C_INFLECT)) < mpmath.mpf("2e-9")
        kp0 = kurepa_derivative(0, 1, p35).value
        assert abs(kp0 * c - mpmath.mpf("1.331773289")) < mpmath.mpf("1e-8")
        assert abs(kp0 * c - mpmath.mpf(KP0_TIMES_C)) < mpmath.mpf("5e-9")

    def test_bracket_straddles(self, p35):
        c = find_inflection(p35)
        assert kurepa_derivative(c - mpmath.mpf("0.1"), 2, p35).value < 0
        assert kurepa_derivative(c + mpmath.mpf("0.05"), 2, p35).value > 0
        assert kurepa_derivative(c - mpmath.mpf("1e-9"), 2, p35).value < 0
        assert kurepa_derivative(c + mpmath.mpf("1e-9"), 2, p35).value > 0

    def test_no_sign_change_reported(self, p35):
        with pytest.raises(RootBracketError):
            find_inflection(p35, bracket=(0, "0.5"))
