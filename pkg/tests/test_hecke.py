import math

import pytest
from mpmath import mp, mpf, workprec

from periodpoly.exact_series import cusp_basis, cusp_dim, delta_qexp
from periodpoly.hecke import (default_n_coeffs, default_prec_bits, eigenforms,
                              hecke_apply, hecke_matrix)

from oracles import TAU_KNOWN, tau_coeffs_eta


class TestHeckeApply:
    def test_tau_is_t2_eigenvector(self):
        # Delta spans the weight-12 cusp space, so T_m Delta = tau(m) Delta
        order = 40
        delta = delta_qexp(order)
        for m in (2, 3, 5):
            image = hecke_apply(delta, m, 12)
            tau_m = delta[m]
            for n in range(1, image.order):
                assert image[n] == tau_m * delta[n]

    def test_prime_action_formula(self):
        order = 30
        delta = delta_qexp(order)
        image = hecke_apply(delta, 3, 12)
        for n in range(1, 10):
            expect = delta[3 * n] + (3 ** 11) * delta[n // 3] if n % 3 == 0 \
                else delta[3 * n]
            assert image[n] == expect


class TestHeckeMatrix:
    def test_weight24_matrix(self):
        basis = cusp_basis(24, 12)
        t2 = hecke_matrix(basis, 2)
        assert all(isinstance(v, int) for row in t2 for v in row)
        # characteristic data: trace 1080, determinant -20468736
        assert t2[0][0] + t2[1][1] == 1080
        assert t2[0][0] * t2[1][1] - t2[0][1] * t2[1][0] == -20468736

    @pytest.mark.parametrize("k", [12, 16, 18, 20, 22, 26])
    def test_dim_one_matrix_is_tau_like_scalar(self, k):
        basis = cusp_basis(k, 8)
        t2 = hecke_matrix(basis, 2)
        assert len(t2) == 1
        f = eigenforms(k)[0]
        with workprec(f.prec_bits):
            assert f.t2_eigenvalue == t2[0][0]


class TestEigenforms:
    def test_weight12_matches_tau(self):
        f = eigenforms(12)[0]
        taus = tau_coeffs_eta(f.n_coeffs + 1)
        with workprec(f.prec_bits):
            for n in range(1, f.n_coeffs + 1):
                assert f.a(n) == taus[n]

    def test_weight24_eigenvalues_from_charpoly(self):
        forms = eigenforms(24)
        # x^2 - 1080 x - 20468736, roots 540 +- 12 sqrt(144169)
        with workprec(forms[0].prec_bits + 16):
            disc = mp.sqrt(mpf(144169))
            lo, hi = 540 - 12 * disc, 540 + 12 * disc
            assert abs(forms[0].t2_eigenvalue - lo) < mpf(2) ** -150
            assert abs(forms[1].t2_eigenvalue - hi) < mpf(2) ** -150
        assert [f.field_degree for f in forms] == [2, 2]

    def test_sorted_by_eigenvalue_and_indexed(self):
        forms = eigenforms(48)
        eigs = [f.t2_eigenvalue for f in forms]
        assert eigs == sorted(eigs)
        assert [f.conjugate_index for f in forms] == list(range(len(forms)))

    def test_normalization_and_leading_zero(self):
        f = eigenforms(26)[0]
        assert f.a(0) == 0
        assert f.a(1) == 1

    @pytest.mark.parametrize("k", [12, 24, 34, 48])
    def test_hecke_multiplicativity(self, k):
        for f in eigenforms(k):
            with workprec(f.prec_bits):
                tol = mpf(2) ** (-(f.prec_bits - 24))
                scale = max(abs(f.a(m)) for m in (2, 3, 5, 6, 10, 15, 4, 8, 9))
                pairs = [(2, 3), (2, 5), (3, 5), (2, 9), (4, 3), (5, 8)]
                for m, n in pairs:
                    assert math.gcd(m, n) == 1
                    assert abs(f.a(m) * f.a(n) - f.a(m * n)) <= tol * scale ** 2

    @pytest.mark.parametrize("k", [12, 24, 34])
    def test_prime_power_recursion(self, k):
        for f in eigenforms(k):
            with workprec(f.prec_bits):
                tol = mpf(2) ** (-(f.prec_bits - 24))
                for p in (2, 3, 5):
                    for r in (1, 2):
                        if p ** (r + 1) > f.n_coeffs:
                            continue
                        lhs = f.a(p) * f.a(p ** r)
                        rhs = f.a(p ** (r + 1)) + mpf(p) ** (k - 1) * f.a(p ** (r - 1))
                        scale = max(abs(lhs), abs(rhs), mpf(1))
                        assert abs(lhs - rhs) <= tol * scale

    @pytest.mark.parametrize("k", [12, 24, 34, 120])
    def test_deligne_bound(self, k):
        for f in eigenforms(k):
            assert f.deligne_margin() <= 1

    def test_no_cusp_forms_raises(self):
        with pytest.raises(ValueError):
            eigenforms(14)

    def test_defaults(self):
        assert default_prec_bits(12) == 192
        assert default_prec_bits(200) == 1200
        assert default_n_coeffs(12) == 64
        assert default_n_coeffs(200) == 400

    def test_field_degrees_partition_dimension(self):
        for k in (24, 36, 48, 68):
            forms = eigenforms(k)
            assert len(forms) == cusp_dim(k)
            degs = sorted({f.field_degree for f in forms})
            assert sum(1 for f in forms) == cusp_dim(k)
            assert all(d >= 1 for d in degs)
