"""Verification orchestration, JSON reports, and CSV plot grids.

verify_weights drives the full certification pipeline weight by
weight and returns a plain-dict report serializable with json.dumps.
Numbers are emitted as decimal strings so no precision is lost to
binary floats in transit; consumers parse them with arbitrary
precision or plain float as needed.

CSV grids hold log10 of |f(z)| / max|coefficient| sampled over a
rectangle, one row per point, columns x,y,logabs, clamped to
[-16, 16]. This normalization keeps minima near zeros deep (below -8)
regardless of the raw coefficient scale.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np
from mpmath import mp, mpf, workprec

from .exact_series import cusp_dim
from .hecke import Eigenform, eigenforms
from .lfunction import (check_lemma4_bounds, choose_truncation,
                        functional_equation_residual, lvalue_records)
from .period_poly import (RealPoly, check_cocycle_relations, normalized_p,
                          odd_period_polynomial, q_split,
                          trivial_zero_certificate)
from .zero_engine import (Contour, build_zero_report, boundary_min,
                          rouche_compare, sin_approx_sup, sine_difference,
                          winding_count)

__all__ = [
    "SineCertificate",
    "lemma_s_certificate",
    "verify_form",
    "verify_weights",
    "grid_rows",
    "write_grid_csv",
    "ANNULUS_INNER",
    "ANNULUS_OUTER",
    "LARGE_WEIGHT_CUTOFF",
]

with workprec(160):
    ANNULUS_INNER = +(mpf(4) / 5)
    ANNULUS_OUTER = +(mpf(5) / 4)
LARGE_WEIGHT_CUTOFF = 80
SINE_ANNULUS_ZEROS = 10


@dataclass(frozen=True)
class SineCertificate:
    """Zero count of sin(2 pi z) - sin(2 pi / z) on the annulus 4/5 < |z| < 5/4."""

    winding: int
    winding_doubled: int
    boundary_min_value: mpf
    min_point: complex
    elapsed_seconds: float

    @property
    def passed(self) -> bool:
        return (self.winding == SINE_ANNULUS_ZEROS
                and self.winding == self.winding_doubled
                and self.boundary_min_value > 1)


def lemma_s_certificate(prec_bits: int = 113) -> SineCertificate:
    """Certify that the sine difference has exactly ten annulus zeros.

    The winding count is computed twice, the second time from twice as
    many initial samples, and must agree; the boundary minimum must
    exceed 1 so later Rouche comparisons have headroom.
    """
    t0 = time.monotonic()
    ann = Contour.annulus(ANNULUS_INNER, ANNULUS_OUTER)
    w1 = winding_count(sine_difference, ann, prec_bits, initial_samples=64)
    w2 = winding_count(sine_difference, ann, prec_bits, initial_samples=128)
    mn, pt = boundary_min(sine_difference, ann, prec_bits, samples=1024)
    return SineCertificate(w1, w2, mn, pt, time.monotonic() - t0)


def _nstr(x, digits=40):
    if isinstance(x, (int, float)):
        x = mpf(x)
    return mp.nstr(x, digits, strip_zeros=True)


def _num(x, digits=40):
    """Decimal-string form of a real scalar for JSON transport."""
    if isinstance(x, int):
        return str(x)
    return _nstr(x, digits)


def _cplx(z, digits=40):
    return {"re": _nstr(z.real, digits), "im": _nstr(z.imag, digits)}


def _sine_cert_dict(cert: SineCertificate) -> dict:
    return {
        "annulus": [_num(ANNULUS_INNER, 20), _num(ANNULUS_OUTER, 20)],
        "winding": cert.winding,
        "winding_doubled_samples": cert.winding_doubled,
        "boundary_min": _num(cert.boundary_min_value, 20),
        "min_point": _cplx(cert.min_point, 20),
        "elapsed_seconds": round(cert.elapsed_seconds, 3),
        "passed": cert.passed,
    }


def _lemma4_dict(rows) -> dict:
    violations = [
        {"s": s, "bound1_ok": ok1, "bound2_ok": ok2}
        for s, ok1, ok2 in rows
        if (ok1 is False) or (ok2 is False)
    ]
    return {
        "n_checked": len(rows),
        "n_violations": len(violations),
        "violations": violations,
        "passed": not violations,
    }


def _large_weight_checks(f: Eigenform, q: RealPoly) -> dict:
    """Sine comparison suite for weights at or past the cutoff.

    sup |sin(2 pi z) - q(z)| on |z| = 5/4 must stay below 0.01, the
    Rouche comparison of Q(z) = q(z) - q(1/z) against the sine
    difference must verify with matching windings, and Im q(e^{i t})
    must vanish at t = 0 and t = pi.
    """
    prec = 113
    qc = q.coeffs

    def q_of(z):
        acc = mp.zero
        for c in reversed(qc):
            acc = acc * z + c
        return acc

    def q_diff(z):
        return q_of(z) - q_of(1 / z)

    sup = sin_approx_sup(q, ANNULUS_OUTER, prec)
    ann = Contour.annulus(ANNULUS_INNER, ANNULUS_OUTER)
    rc = rouche_compare(q_diff, sine_difference, ann, prec)
    with workprec(f.prec_bits + 16):
        im0 = q_of(mp.mpc(1, 0)).imag
        impi = q_of(mp.mpc(-1, 0)).imag
        im_tol = mpf(2) ** (-(f.prec_bits // 2))
        scale = max(abs(mpf(c)) for c in qc if c != 0)
        im_ok = bool(abs(im0) <= im_tol * scale and abs(impi) <= im_tol * scale)
    return {
        "sin_sup_outer": _num(sup, 12),
        "sin_sup_bound": "0.01",
        "sin_sup_ok": bool(sup < mpf("0.01")),
        "rouche": {
            "max_diff": _num(rc.max_diff, 12),
            "min_g": _num(rc.min_g, 12),
            "verified": rc.verified,
            "winding_qdiff": rc.winding_f,
            "winding_sine": rc.winding_g,
            "winding_ok": rc.winding_f == SINE_ANNULUS_ZEROS,
        },
        "im_q_at_1": _num(im0, 12),
        "im_q_at_minus_1": _num(impi, 12),
        "im_q_ok": im_ok,
        "passed": bool(sup < mpf("0.01") and rc.verified
                       and rc.winding_f == SINE_ANNULUS_ZEROS and im_ok),
    }


def verify_form(f: Eigenform, circle_tol=None, with_large_weight=True) -> dict:
    """Run every certificate for one eigenform and collect the results."""
    k = f.weight
    w = k - 2
    records = lvalue_records(f)
    fe_res = functional_equation_residual(f)
    lemma4_rows = check_lemma4_bounds(f)

    r = odd_period_polynomial(f)
    p = normalized_p(f, r)
    q, recon_residual = q_split(f, p)
    cert = trivial_zero_certificate(r, w)
    coc = check_cocycle_relations(r, k)
    zrep = build_zero_report(k, r, q, f.prec_bits, circle_tol)

    with workprec(f.prec_bits + 16):
        stop = mpf(2) ** (-(f.prec_bits // 2))
        half_coeffs = r.coeffs

        def cc(i):
            return half_coeffs[i] if i < len(half_coeffs) else 0

        self_reciprocal = all(cc(i) == cc(w - i) for i in range(w + 1))
        central_zero = None
        if k % 4 == 2:
            lam = next(rec for rec in records if rec.s == k // 2)
            central_zero = bool(lam.completed == 0)
        cocycle_ok = bool(coc.s_residual <= stop and coc.u_residual <= stop)
        recon_ok = bool(recon_residual <= stop)

    large = None
    if with_large_weight and k >= LARGE_WEIGHT_CUTOFF:
        large = _large_weight_checks(f, q)

    passed = bool(
        cert.passed and cocycle_ok and recon_ok and self_reciprocal
        and zrep.accounted and (central_zero is not False)
        and not [1 for s, a, b in lemma4_rows if a is False or b is False]
        and (large is None or large["passed"]))

    lv = [{
        "s": rec.s,
        "lvalue": _num(rec.value),
        "completed": _num(rec.completed),
        "tail_bound": _num(rec.tail_bound, 12),
        "bound1_ok": rec.bound1_ok,
        "bound2_ok": rec.bound2_ok,
    } for rec in records]

    return {
        "index": f.conjugate_index,
        "t2_eigenvalue": _num(f.t2_eigenvalue, 60),
        "field_degree": f.field_degree,
        "deligne_margin": _num(f.deligne_margin(), 12),
        "n_coeffs": f.n_coeffs,
        "lvalues": lv,
        "functional_equation_residual": _num(fe_res, 12),
        "central_completed_zero": central_zero,
        "lemma4": _lemma4_dict(lemma4_rows),
        "period": {
            "degree": r.degree,
            "self_reciprocal_exact": bool(self_reciprocal),
            "reconstruction_residual": _num(recon_residual, 12),
            "reconstruction_ok": recon_ok,
            "cocycle": {
                "s_residual": _num(coc.s_residual, 12),
                "u_residual": _num(coc.u_residual, 12),
                "tolerance": _num(stop, 12),
                "passed": cocycle_ok,
            },
            "trivial_certificate": {
                "passed": cert.passed,
                "checks": [{
                    "name": name,
                    "residual": _num(res, 12),
                    "tolerance": _num(tol, 12),
                    "ok": ok,
                } for name, res, tol, ok in cert.checks],
            },
        },
        "zeros": {
            "n_trivial": zrep.n_trivial_zeros,
            "n_circle": zrep.n_circle_zeros,
            "expected_circle": w - 10,
            "max_modulus_deviation": _num(zrep.max_modulus_deviation, 12),
            "accounted": zrep.accounted,
            "angle_cross_check": _num(zrep.angle_cross_check, 12),
            "circle_angles": [_num(a) for a in zrep.circle_angles],
            "unit_trivial_angles": [_num(a, 12) for a in zrep.unit_trivial_angles],
            "lattice_angles": [_num(a) for a in zrep.lattice_angles],
            "skipped_intervals": list(zrep.skipped_intervals),
            "uncovered_intervals": list(zrep.uncovered_intervals),
            "interval_hits": list(zrep.interval_hits),
            "roots": [{"re": _nstr(z.real), "im": _nstr(z.imag), "label": lab}
                      for z, lab in zrep.roots],
        },
        "large_weight": large,
        "passed": passed,
    }


def verify_weights(weights, circle_tol=None, include_sine_certificate=True,
                   progress=None) -> dict:
    """Full verification report over an iterable of even weights >= 12."""
    t0 = time.monotonic()
    out_weights = []
    n_forms = 0
    all_passed = True
    for k in sorted(set(int(k) for k in weights)):
        tk = time.monotonic()
        forms = eigenforms(k) if cusp_dim(k) else ()
        entries = [verify_form(f, circle_tol) for f in forms]
        n_forms += len(entries)
        wp = all(e["passed"] for e in entries)
        all_passed = all_passed and wp
        out_weights.append({
            "weight": k,
            "dim_cusp": len(forms),
            "prec_bits": forms[0].prec_bits if forms else None,
            "truncation_terms": choose_truncation(
                k, forms[0].prec_bits) if forms else None,
            "forms": entries,
            "all_passed": wp,
            "elapsed_seconds": round(time.monotonic() - tk, 3),
        })
        if progress is not None:
            progress(k, wp, time.monotonic() - tk)
    report = {
        "schema_version": "1",
        "weights": out_weights,
        "summary": {
            "n_weights": len(out_weights),
            "n_forms": n_forms,
            "all_passed": all_passed,
            "elapsed_seconds": round(time.monotonic() - t0, 3),
        },
    }
    if include_sine_certificate:
        cert = lemma_s_certificate()
        report["sine_certificate"] = _sine_cert_dict(cert)
        report["summary"]["all_passed"] = bool(all_passed and cert.passed)
    return report


DEFAULT_GRID = (-2.5, 2.5, -2.5, 2.5, 501, 501)
_CLAMP = 16.0


def _grid_axes(grid):
    xmin, xmax, ymin, ymax, nx, ny = grid
    if nx < 2 or ny < 2:
        raise ValueError("grid needs at least 2 points per axis")
    xs = np.linspace(float(xmin), float(xmax), int(nx))
    ys = np.linspace(float(ymin), float(ymax), int(ny))
    return xs, ys


def grid_rows(poly: RealPoly | None = None, fn=None, grid=DEFAULT_GRID):
    """Yield (x, y, logabs) over the grid for a polynomial or a callable.

    Polynomials are normalized by their largest coefficient and run
    through a vectorized float64 Horner pass; points that overflow or
    land on a singularity fall back to mpmath. Callables are evaluated
    with mpmath throughout (e.g. the sine difference, whose essential
    singularity at 0 simply saturates the clamp).
    """
    if (poly is None) == (fn is None):
        raise ValueError("pass exactly one of poly or fn")
    xs, ys = _grid_axes(grid)
    if poly is not None:
        scale = poly.max_abs_coeff()
        if scale == 0:
            for y in ys:
                for x in xs:
                    yield float(x), float(y), -_CLAMP
            return
        with workprec(poly.prec_bits):
            cs = [mpf(c) / scale for c in poly.coeffs]
        cf = np.array([float(c) for c in cs])
        X, Y = np.meshgrid(xs, ys)
        Z = X + 1j * Y
        acc = np.zeros_like(Z)
        with np.errstate(all="ignore"):
            for c in cf[::-1]:
                acc = acc * Z + c
            vals = np.log10(np.abs(acc))
        for iy, y in enumerate(ys):
            for ix, x in enumerate(xs):
                v = vals[iy, ix]
                if not np.isfinite(v):
                    with workprec(max(poly.prec_bits, 160)):
                        a = mp.zero
                        zz = mp.mpc(float(x), float(y))
                        for c in reversed(cs):
                            a = a * zz + c
                        v = -_CLAMP if a == 0 else float(mp.log10(abs(a)))
                yield float(x), float(y), float(np.clip(v, -_CLAMP, _CLAMP))
    else:
        with workprec(160):
            for y in ys:
                for x in xs:
                    try:
                        v = fn(mp.mpc(float(x), float(y)))
                        lv = -_CLAMP if v == 0 else float(mp.log10(abs(v)))
                    except (ZeroDivisionError, ValueError, OverflowError):
                        lv = _CLAMP
                    yield float(x), float(y), float(min(max(lv, -_CLAMP), _CLAMP))


def write_grid_csv(stream, poly: RealPoly | None = None, fn=None,
                   grid=DEFAULT_GRID) -> int:
    """Write the x,y,logabs grid as CSV; returns the number of data rows."""
    stream.write("x,y,logabs\n")
    n = 0
    for x, y, v in grid_rows(poly, fn, grid):
        stream.write(f"{x:.17g},{y:.17g},{v:.17g}\n")
        n += 1
    return n
