"""End-to-end certification suite.

One test per headline claim, each printing a single pass/fail line under
pytest -v. Tolerances are pinned here as constants; loosening them is a
behavior change, not a test fix.
"""

from mpmath import mp, mpf, workprec

from sweep_cache import (ACCEPTANCE_SPOTS, ACCEPTANCE_SWEEP, LARGE_WEIGHTS,
                         forms_at)
from periodpoly.exact_series import delta_qexp, eisenstein_qexp
from periodpoly.hecke import eigenforms
from periodpoly.lfunction import (check_lemma4_bounds, completed_lvalue,
                                  functional_equation_residual)
from periodpoly.period_poly import (check_cocycle_relations,
                                    bernoulli_period_polynomial,
                                    odd_period_polynomial, q_split)
from periodpoly.report import lemma_s_certificate
from periodpoly.zero_engine import refine_all_roots

CIRCLE_TOL = mpf("1e-20")          # unit-circle modulus deviation, sweep
BERNOULLI_CIRCLE_TOL = mpf("1e-15")
CLOSED_FORM_RELTOL = mpf(2) ** -64
SINE_SUP_CAP = mpf("0.01")
SWEEP_WALL_CAP = 3600.0            # "minutes, not hours"
SINE_CERT_WALL_CAP = 10.0

WEIGHT12_CLOSED_FORM = (0, 4, 0, -25, 0, 42, 0, -25, 0, 4)
TRIVIAL_POINTS = (0, 1, -1, 2, -2, 0.5, -0.5)


def test_c1_sine_difference_annulus_certificate():
    cert = lemma_s_certificate()
    assert cert.winding == 10
    assert cert.winding_doubled == 10
    assert cert.boundary_min_value > 1
    assert cert.elapsed_seconds < SINE_CERT_WALL_CAP


def test_c2_all_nontrivial_zeros_on_unit_circle(sweep_reports, sweep_elapsed):
    for k in ACCEPTANCE_SWEEP + ACCEPTANCE_SPOTS:
        reports = sweep_reports[k]
        assert len(reports) == len(forms_at(k))
        for rep in reports:
            assert rep.accounted, f"weight {k}: zero census not accounted"
            assert rep.prec_bits == max(192, 6 * k)
            assert rep.degree == k - 3
            assert rep.n_trivial_zeros == 9
            assert rep.n_circle_zeros == k - 12
            assert rep.max_modulus_deviation < CIRCLE_TOL
    assert sweep_elapsed < SWEEP_WALL_CAP


def test_c3_weight12_closed_form():
    r = odd_period_polynomial(eigenforms(12)[0])
    coeffs = list(r.coeffs) + [0] * (10 - len(r.coeffs))
    with workprec(256):
        scale = coeffs[1] / WEIGHT12_CLOSED_FORM[1]
        for got, want in zip(coeffs, WEIGHT12_CLOSED_FORM):
            if want == 0:
                assert got == 0
            else:
                target = scale * want
                assert abs(got - target) <= CLOSED_FORM_RELTOL * abs(target)


def test_c4_lvalue_bounds_have_no_violations():
    for k in ACCEPTANCE_SWEEP:
        for f in forms_at(k):
            for s, ok1, ok2 in check_lemma4_bounds(f):
                assert ok2 is True, f"weight {k}, s={s}: size bound failed"
                if 4 * s >= 3 * k:
                    assert ok1 is True, f"weight {k}, s={s}: near-1 bound failed"
                else:
                    assert ok1 is None


def test_c5_sine_approximation_sup_bound(large_weight_results):
    for k in LARGE_WEIGHTS:
        for i in range(len(eigenforms(k))):
            sup, _, _, _ = large_weight_results[(k, i)]
            assert sup < SINE_SUP_CAP, f"weight {k} form {i}: sup {sup}"


def test_c6_annulus_comparison_and_winding(large_weight_results):
    for k in LARGE_WEIGHTS:
        for i in range(len(eigenforms(k))):
            _, rc, im_res, im_tol = large_weight_results[(k, i)]
            assert rc.verified, f"weight {k} form {i}: comparison not verified"
            assert rc.winding_g == 10
            assert rc.winding_f <= 10
            assert rc.winding_f == 10  # equality forced by the comparison
            assert im_res <= im_tol


def test_c7_structural_identities():
    e4 = eisenstein_qexp(4, 50)
    e6 = eisenstein_qexp(6, 50)
    assert (e4 ** 3 - e6 ** 2).coeffs == delta_qexp(50).scale(1728).coeffs

    for k in ACCEPTANCE_SWEEP + ACCEPTANCE_SPOTS:
        w = k - 2
        for f in forms_at(k):
            assert functional_equation_residual(f) == 0
            assert f.deligne_margin() <= 1

            r = odd_period_polynomial(f)
            coeffs = list(r.coeffs) + [0] * (w + 1 - len(r.coeffs))
            for n in range(w + 1):
                assert coeffs[n] == coeffs[w - n]

            stop = mpf(2) ** (-(f.prec_bits // 2))
            res = check_cocycle_relations(r, k)
            assert res.s_residual <= stop
            assert res.u_residual <= stop
            _, recon = q_split(f)
            assert recon < stop

            with workprec(f.prec_bits):
                # coefficient drift from the eigenvector solve grows with
                # the integer scale of T_2, roughly k bits at weight 200
                tol = mpf(2) ** (-(f.prec_bits - 48 - k))
                for m, n in ((2, 3), (2, 5), (3, 4), (3, 5), (4, 5), (2, 9)):
                    lhs = f.a(m) * f.a(n)
                    rhs = f.a(m * n)
                    cap = tol * max(1, abs(lhs), abs(rhs))
                    assert abs(lhs - rhs) <= cap
                for p in (2, 3):
                    for rr in (1, 2):
                        big = mpf(p) ** (k - 1) * f.a(p ** (rr - 1))
                        lhs = f.a(p) * f.a(p ** rr)
                        rhs = f.a(p ** (rr + 1)) + big
                        cap = tol * max(1, abs(lhs), abs(rhs), abs(big))
                        assert abs(lhs - rhs) <= cap


def test_c8_central_value_vanishes():
    for k in ACCEPTANCE_SWEEP + ACCEPTANCE_SPOTS:
        if k % 4 != 2:
            continue
        for f in forms_at(k):
            rec = completed_lvalue(f, k // 2)
            assert rec.completed == 0
            assert rec.value == 0


def test_c9_bernoulli_type_zeros_on_unit_circle():
    prec = 220
    with workprec(prec + 64):
        for w in (10, 14, 18, 22):
            for n in range(2, w, 2):
                poly = bernoulli_period_polynomial(n, w, prec)
                for z in refine_all_roots(poly, prec):
                    if min(abs(z - t) for t in TRIVIAL_POINTS) < mpf("1e-9"):
                        continue
                    dev = abs(abs(z) - 1)
                    assert dev < BERNOULLI_CIRCLE_TOL, \
                        f"(n={n}, w={w}): root off circle by {dev}"
