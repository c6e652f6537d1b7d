from fractions import Fraction

import pytest

from periodpoly.exact_series import (QSeries, bernoulli_number, cusp_basis,
                                     cusp_dim, delta_qexp, eisenstein_qexp,
                                     sigma_power)

from oracles import TAU_KNOWN, bernoulli_oracle, sigma_trial, tau_coeffs_eta


class TestBernoulli:
    def test_small_values_exact(self):
        assert bernoulli_number(0) == 1
        assert bernoulli_number(1) == Fraction(-1, 2)
        assert bernoulli_number(2) == Fraction(1, 6)
        assert bernoulli_number(4) == Fraction(-1, 30)
        assert bernoulli_number(12) == Fraction(-691, 2730)

    def test_odd_vanish(self):
        assert all(bernoulli_number(n) == 0 for n in (3, 5, 7, 9, 21))

    @pytest.mark.parametrize("n", [2, 6, 10, 16, 30])
    def test_matches_mpmath(self, n):
        exact = bernoulli_number(n)
        approx = bernoulli_oracle(n)
        assert abs(float(exact) - float(approx)) <= 1e-12 * abs(float(approx))


class TestSigma:
    @pytest.mark.parametrize("n", [1, 2, 6, 12, 28, 97, 360])
    @pytest.mark.parametrize("r", [1, 3, 5, 11])
    def test_matches_trial_division(self, n, r):
        assert sigma_power(n, r) == sigma_trial(n, r)


class TestQSeries:
    def test_mul_is_convolution(self):
        a = QSeries((1, 2, 3))
        b = QSeries((4, 5, 6))
        assert (a * b).coeffs == (4, 13, 28)

    def test_pow_matches_repeated_mul(self):
        a = QSeries((1, -1, 2, 7))
        by_mul = a * a * a
        assert (a ** 3).coeffs == by_mul.coeffs

    def test_truncate_and_getitem(self):
        a = QSeries((5, 0, -2, 9))
        assert a[2] == -2
        assert a.order == 4
        assert a.truncate(2).coeffs == (5, 0)
        with pytest.raises(ValueError):
            a.truncate(9)


class TestEisenstein:
    def test_e4_initial_coeffs(self):
        e4 = eisenstein_qexp(4, 6)
        assert e4.coeffs == (1, 240, 2160, 6720, 17520, 30240)

    def test_e6_initial_coeffs(self):
        e6 = eisenstein_qexp(6, 5)
        assert e6.coeffs == (1, -504, -16632, -122976, -532728)

    def test_coefficients_follow_divisor_sums(self):
        e10 = eisenstein_qexp(10, 20)
        factor = e10[1]
        for n in range(1, 20):
            assert e10[n] == factor * sigma_trial(n, 9)


class TestDelta:
    def test_matches_eta_product(self):
        order = 60
        delta = delta_qexp(order)
        assert list(delta.coeffs) == tau_coeffs_eta(order)

    def test_known_tau_values(self):
        delta = delta_qexp(len(TAU_KNOWN))
        assert delta.coeffs == TAU_KNOWN

    def test_discriminant_identity(self):
        order = 40
        e4 = eisenstein_qexp(4, order)
        e6 = eisenstein_qexp(6, order)
        delta = delta_qexp(order)
        lhs = e4 ** 3 - e6 ** 2
        assert lhs.coeffs == delta.scale(1728).coeffs


class TestCuspDim:
    @pytest.mark.parametrize("k,d", [
        (12, 1), (14, 0), (16, 1), (18, 1), (20, 1), (22, 1), (24, 2),
        (26, 1), (34, 2), (68, 5), (120, 10), (144, 12), (200, 16)])
    def test_dimension_formula(self, k, d):
        assert cusp_dim(k) == d

    def test_odd_and_small_are_trivial(self):
        assert cusp_dim(11) == 0
        assert cusp_dim(10) == 0
        assert cusp_dim(2) == 0


class TestCuspBasis:
    @pytest.mark.parametrize("k", [12, 16, 24, 36, 48])
    def test_echelon_shape(self, k):
        d = cusp_dim(k)
        basis = cusp_basis(k, 4 * d + 8)
        assert basis.dim == d
        for i, form in enumerate(basis.forms):
            # leading coefficient pattern: form i starts at q^{i+1}
            assert form[i + 1] == 1
            for j in range(1, i + 1):
                assert form[j] == 0

    def test_weight12_is_delta(self):
        basis = cusp_basis(12, 30)
        assert basis.forms[0].coeffs == delta_qexp(30).coeffs

    def test_insufficient_order_raises(self):
        with pytest.raises(ValueError):
            cusp_basis(24, 2)
