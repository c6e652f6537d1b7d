from fractions import Fraction

import pytest
from mpmath import mp, mpf, workprec

from periodpoly.hecke import eigenforms
from periodpoly.lfunction import lvalue
from periodpoly.period_poly import (MOEBIUS_S, MOEBIUS_U, RealPoly,
                                    bernoulli_period_polynomial,
                                    check_cocycle_relations, normalized_p,
                                    odd_period_polynomial, q_split, slash,
                                    trivial_zero_certificate,
                                    _bernoulli_period_exact)

from oracles import moebius_eval, poly_eval


class TestRealPoly:
    def test_trims_and_parity(self):
        p = RealPoly.from_coeffs([0, 3, 0, -1, 0, 0], 160)
        assert p.degree == 3
        assert p.parity == "odd"
        q = RealPoly.from_coeffs([2, 0, 5], 160)
        assert q.parity == "even"
        r = RealPoly.from_coeffs([1, 1], 160)
        assert r.parity == "none"

    def test_eval_horner(self):
        p = RealPoly.from_coeffs([1, -2, 3], 160)
        with workprec(160):
            assert abs(p.eval(mpf(2)) - (1 - 4 + 12)) < mpf(2) ** -140

    def test_derivative_matches_finite_difference(self):
        p = RealPoly.from_coeffs([5, -1, 2, 4], 300)
        dp = p.derivative()
        with workprec(300):
            h = mpf(2) ** -60
            for x0 in ("0.3", "-1.7", "2.0"):
                x = mpf(x0)
                fd = (p.eval(x + h) - p.eval(x - h)) / (2 * h)
                assert abs(fd - dp.eval(x)) < mpf(2) ** -100


class TestSlash:
    @pytest.mark.parametrize("mat", [MOEBIUS_S, MOEBIUS_U])
    def test_matches_pointwise_oracle(self, mat):
        w = 8
        p = RealPoly.from_coeffs([1, -3, 0, 2, 0, 0, 1, 0, 4], 260)
        image = slash(p, mat, w)
        a, b, c, d = mat.a, mat.b, mat.c, mat.d
        with workprec(260):
            for x0 in ("0.31", "1.6", "-2.25", "5.0"):
                x = mpf(x0)
                if c * x + d == 0:
                    continue
                want = moebius_eval(p.coeffs, a, b, c, d, w, x)
                got = poly_eval(image.coeffs, x)
                assert abs(want - got) < mpf(2) ** -200 * max(1, abs(want))

    def test_identity_slash_is_identity(self):
        from periodpoly.period_poly import MOEBIUS_IDENTITY
        p = RealPoly.from_coeffs([2, 0, -7, 1], 160)
        assert slash(p, MOEBIUS_IDENTITY, 3).coeffs == p.coeffs

    def test_degree_checked(self):
        p = RealPoly.from_coeffs([1, 0, 0, 0, 1], 160)
        with pytest.raises(ValueError):
            slash(p, MOEBIUS_S, 3)


class TestOddPeriodPolynomial:
    @pytest.mark.parametrize("k", [12, 18, 24])
    def test_odd_parity_and_self_reciprocity(self, k):
        for f in eigenforms(k):
            r = odd_period_polynomial(f)
            w = k - 2
            assert r.parity == "odd"
            assert r.degree == w - 1
            coeffs = list(r.coeffs) + [0] * (w + 1 - len(r.coeffs))
            for n in range(w + 1):
                assert coeffs[n] == coeffs[w - n]  # bit-level mirror

    def test_normalized_linear_coefficient_is_2pi_lvalue(self):
        f = eigenforms(12)[0]
        p = normalized_p(f)
        with workprec(f.prec_bits):
            want = 2 * mp.pi * lvalue(f, 10)
            assert abs(p.coeffs[1] - want) < mpf(2) ** -150 * abs(want)

    @pytest.mark.parametrize("k", [12, 16, 18, 34])
    def test_reconstruction_residual_small(self, k):
        for f in eigenforms(k):
            q, resid = q_split(f)
            assert resid < mpf(2) ** (-(f.prec_bits // 2))
            assert all(i % 2 == 1 or c == 0 for i, c in enumerate(q.coeffs))

    @pytest.mark.parametrize("k", [12, 18, 34])
    def test_cocycle_relations(self, k):
        for f in eigenforms(k):
            r = odd_period_polynomial(f)
            res = check_cocycle_relations(r, k)
            stop = mpf(2) ** (-(f.prec_bits // 2))
            assert res.s_residual <= stop
            assert res.u_residual <= stop

    @pytest.mark.parametrize("k", [12, 20, 34])
    def test_trivial_zero_certificate(self, k):
        for f in eigenforms(k):
            cert = trivial_zero_certificate(odd_period_polynomial(f))
            assert cert.passed
            names = [row[0] for row in cert.checks]
            assert "P(0)" in names and len(names) == 11


class TestBernoulliPeriod:
    def test_exact_closed_form_at_w10(self):
        # (n, w) = (2, 10): proportional to X^9 - (25/4) X^7 + ...
        exact = _bernoulli_period_exact(2, 10)
        nonzero = [c for c in exact if c != 0]
        base = [Fraction(4), Fraction(-25), Fraction(42),
                Fraction(-25), Fraction(4)]
        ratio = nonzero[0] / base[0]
        assert ratio == Fraction(1024, 45)
        assert [c / ratio for c in nonzero] == base

    def test_n8_equals_n2_at_w10(self):
        assert _bernoulli_period_exact(8, 10) == _bernoulli_period_exact(2, 10)

    def test_odd_parity_all_cases(self):
        for w in (10, 14, 18):
            for n in range(2, w, 2):
                exact = _bernoulli_period_exact(n, w)
                assert all(c == 0 for i, c in enumerate(exact) if i % 2 == 0)

    def test_float_version_matches_exact(self):
        exact = _bernoulli_period_exact(4, 14)
        poly = bernoulli_period_polynomial(4, 14, 200)
        with workprec(200):
            for i, c in enumerate(exact):
                if i < len(poly.coeffs):
                    assert abs(poly.coeffs[i] - mpf(c.numerator) / c.denominator) \
                        <= mpf(2) ** -190 * max(1, abs(mpf(c.numerator) / c.denominator))

    def test_invalid_arguments(self):
        with pytest.raises(ValueError):
            _bernoulli_period_exact(3, 10)   # odd n
        with pytest.raises(ValueError):
            _bernoulli_period_exact(10, 10)  # n not below w
        with pytest.raises(ValueError):
            _bernoulli_period_exact(2, 7)    # odd w
