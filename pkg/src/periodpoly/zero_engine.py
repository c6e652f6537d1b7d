"""Zero localization and certification on and off the unit circle.

Three independent mechanisms cooperate. Interval bisection of the real
circle function g(theta) = 2 cos(M theta) Re q + 2 sin(M theta) Im q
localizes unit-circle zeros with two-sided sign certificates;
simultaneous Aberth refinement recovers the full root multiset of the
period polynomial; and argument-principle winding counts over circles
and annulus boundaries certify the sine-difference comparison map. The
report assembly cross-validates the first two against each other.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from mpmath import mp, mpc, mpf, workprec

from .period_poly import RealPoly

__all__ = [
    "Contour",
    "CircleZeros",
    "ZeroReport",
    "RoucheResult",
    "sine_difference",
    "real_circle_function",
    "circle_zeros_by_intervals",
    "refine_all_roots",
    "winding_count",
    "boundary_min",
    "rouche_compare",
    "sin_approx_sup",
    "classify_roots",
    "build_zero_report",
]


@dataclass(frozen=True)
class Contour:
    """A circle |z| = r or an annulus boundary (outer ccw, inner cw)."""

    kind: str
    radii: tuple

    @classmethod
    def circle(cls, r) -> "Contour":
        return cls("circle", (r,))

    @classmethod
    def annulus(cls, inner, outer) -> "Contour":
        if not inner < outer:
            raise ValueError("annulus needs inner < outer")
        return cls("annulus", (inner, outer))


def sine_difference(z):
    """S(z) = sin(2 pi z) - sin(2 pi / z); the comparison map on the annulus."""
    return mp.sin(2 * mp.pi * z) - mp.sin(2 * mp.pi / z)


def _poly_eval_mpc(coeffs, z):
    acc = mp.zero
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def real_circle_function(q: RealPoly, m: int, theta, prec_bits: int | None = None) -> mpf:
    """g(theta) with F(e^{i theta}) = e^{i M theta} g(theta) for
    F(z) = q(z) + z^{2M} q(1/z); real valued because q has real coefficients."""
    prec = prec_bits or q.prec_bits
    with workprec(prec + 16):
        theta = mpf(theta)
        z = mp.expjpi(theta / mp.pi)  # e^{i theta} with argument reduction
        v = _poly_eval_mpc(q.coeffs, z)
        g = 2 * mp.cos(m * theta) * v.real + 2 * mp.sin(m * theta) * v.imag
        return +g


@dataclass(frozen=True)
class CircleZeros:
    """Certified unit-circle zero angles from the interval machinery.

    angles lie in [0, 2pi); interval_hits[j] counts zeros localized in
    I_j = [pi/2M + pi j/M, pi/2M + pi (j+1)/M); skipped_intervals are
    those where Im q(e^{i theta}) changes sign, so the one-zero
    guarantee does not apply; lattice_angles are interval endpoints
    that are themselves certified zeros.
    """

    M: int
    angles: tuple
    interval_hits: tuple
    skipped_intervals: tuple
    lattice_angles: tuple
    unit_trivial_angles: tuple  # the forced zeros at theta = 0 and pi

    @property
    def uncovered_intervals(self) -> tuple:
        return tuple(j for j, h in enumerate(self.interval_hits)
                     if h == 0 and j not in self.skipped_intervals)


def _g_factory(q: RealPoly, m: int):
    coeffs = q.coeffs

    def g(theta, prec):
        with workprec(prec):
            z = mp.expjpi(theta / mp.pi)
            v = _poly_eval_mpc(coeffs, z)
            return 2 * mp.cos(m * theta) * v.real + 2 * mp.sin(m * theta) * v.imag

    def im_part(theta, prec):
        with workprec(prec):
            z = mp.expjpi(theta / mp.pi)
            return _poly_eval_mpc(coeffs, z).imag

    return g, im_part


def circle_zeros_by_intervals(q: RealPoly, n_param: int,
                              prec_bits: int | None = None,
                              samples_per_interval: int = 16) -> CircleZeros:
    """Localize zeros of F(z) = q(z) + z^N q(1/z) on the unit circle.

    N = n_param must be even; M = N/2. Each interval is scanned for
    sign changes of g, every bracket is polished to angle width
    2^{-prec/2} and its final sign change re-certified at prec + 64
    bits. Lattice endpoints where Im q vanishes are recorded as exact
    zeros and never double-counted against the adjacent intervals.
    """
    if n_param % 2 or n_param <= 0:
        raise ValueError("N must be a positive even integer")
    m = n_param // 2
    prec = prec_bits or q.prec_bits
    full = prec + 64
    scan = min(160, full)
    g, im_part = _g_factory(q, m)

    with workprec(full):
        scale = mp.fsum(abs(mpf(c)) for c in q.coeffs if c != 0) + mpf(1)
        stop_theta = mpf(2) ** (-(prec // 2) - 2)
        lattice_eps = mpf(2) ** (-(prec // 2)) * scale
        pi = +mp.pi
        width = pi / m
        t0 = pi / (2 * m)

        def certify(lo, hi, depth=0):
            # two-sided sign certificate at full precision
            p_use = full * (2 if depth else 1)
            glo, ghi = g(lo, p_use), g(hi, p_use)
            floor = mpf(2) ** (-p_use) * scale * 16
            if glo * ghi < 0 and abs(glo) > floor and abs(ghi) > floor:
                return True
            if depth == 0:
                return certify(lo, hi, 1)
            return False

        noise_full = mpf(2) ** (-full) * scale * 64

        def polish(lo, hi, bisect_float=None):
            # positional refinement only; existence was already certified
            # on the incoming sample bracket, whose endpoint values sit
            # safely above the evaluation noise floor
            if bisect_float is not None:
                lo, hi = bisect_float(lo, hi)
            else:
                glo = g(lo, scan)
                for _ in range(44):
                    mid = (lo + hi) / 2
                    gm = g(mid, scan)
                    if abs(gm) < noise_scan:
                        break
                    if (gm > 0) == (glo > 0):
                        lo, glo = mid, gm
                    else:
                        hi = mid
            a, b = lo, hi
            fa, fb = g(a, full), g(b, full)
            # a value at the noise floor cannot be resolved further; the
            # point is already as close to the zero as full bits permit
            if abs(fa) < noise_full:
                return a
            if abs(fb) < noise_full:
                return b
            if (fa > 0) == (fb > 0):
                raise ArithmeticError("bracket lost its sign change")
            x_prev, f_prev = a, fa
            x_cur, f_cur = b, fb
            for it in range(80):
                if it % 4 == 3 or f_cur == f_prev:
                    x_new = (a + b) / 2
                else:
                    x_new = x_cur - f_cur * (x_cur - x_prev) / (f_cur - f_prev)
                    if not (a < x_new < b):
                        x_new = (a + b) / 2
                f_new = g(x_new, full)
                if abs(f_new) < noise_full:
                    return x_new
                if (f_new > 0) == (fa > 0):
                    a, fa = x_new, f_new
                else:
                    b, fb = x_new, f_new
                x_prev, f_prev = x_cur, f_cur
                x_cur, f_cur = x_new, f_new
                if abs(x_cur - x_prev) < stop_theta:
                    break
            return x_cur

        found: list = []
        skipped: list = []
        lattice: list = []
        s_per = samples_per_interval
        step = width / s_per
        noise_scan = mpf(2) ** (-scan) * scale * 64

        # one vectorized float64 sweep over all sample points; any value
        # too small for its float sign to be trusted is re-evaluated at
        # scan precision, and values at the scan noise floor drop to full
        # precision (certified on-sample zeros mask their neighbours)
        gf = ivf = None
        try:
            cf = np.array([float(c) for c in q.coeffs])
            fits = bool(np.all(np.isfinite(cf))) and bool(np.any(cf != 0))
        except (OverflowError, ValueError):
            fits = False
        if fits:
            theta_f = float(t0) + float(step) * np.arange(2 * m * s_per + 1)
            zf = np.exp(1j * theta_f)
            qvf = np.zeros_like(zf)
            for c in cf[::-1]:
                qvf = qvf * zf + c
            gf = 2 * np.cos(m * theta_f) * qvf.real + 2 * np.sin(m * theta_f) * qvf.imag
            ivf = qvf.imag
            tau = 1e-10 * float(scale)

            clist = [complex(c) for c in cf]

            def g_float(t):
                t = float(t)
                zv = cmath.exp(1j * t)
                acc = 0j
                for c in reversed(clist):
                    acc = acc * zv + c
                return 2 * math.cos(m * t) * acc.real + 2 * math.sin(m * t) * acc.imag

            def bisect_float(lo, hi):
                flo = g_float(lo)
                if abs(flo) < tau:
                    return lo, hi
                for _ in range(36):
                    mid = (lo + hi) / 2
                    fm = g_float(mid)
                    if abs(fm) < tau:
                        break
                    if (fm > 0) == (flo > 0):
                        lo, flo = mid, fm
                    else:
                        hi = mid
                return lo, hi
        else:
            bisect_float = None

        for j in range(2 * m):
            left = t0 + j * width
            if fits:
                base = j * s_per
                thetas = [mpf(theta_f[base + i]) for i in range(s_per + 1)]
                gv = list(gf[base: base + s_per + 1])
                iv = list(ivf[base: base + s_per + 1])
                for i in range(s_per + 1):
                    if abs(iv[i]) < tau:
                        iv[i] = im_part(thetas[i], scan)
                    if abs(gv[i]) < tau:
                        gv[i] = g(thetas[i], scan)
            else:
                thetas = [left + i * step for i in range(s_per + 1)]
                gv = [g(t, scan) for t in thetas]
                iv = [im_part(t, scan) for t in thetas]
            if any((iv[i] > 0) != (iv[i + 1] > 0) for i in range(len(iv) - 1)
                   if iv[i] != 0 and iv[i + 1] != 0):
                skipped.append(j)
            # lattice endpoint test at the left edge only (right edge belongs
            # to the next interval; the final wraparound edge is t0 again)
            ival = im_part(left, full)
            if abs(ival) < lattice_eps:
                lattice.append(left)
            for i, v in enumerate(gv):
                if isinstance(v, float):
                    continue
                if abs(v) < noise_scan:
                    vf = g(thetas[i], full)
                    if abs(vf) < lattice_eps:
                        gv[i] = mp.zero
                        found.append((thetas[i], j))
                    else:
                        gv[i] = vf
            for i in range(s_per):
                a, b = thetas[i], thetas[i + 1]
                if gv[i] == 0 or gv[i + 1] == 0:
                    continue
                if (gv[i] > 0) != (gv[i + 1] > 0):
                    if not certify(a, b):
                        raise ArithmeticError(
                            f"could not certify circle zero near theta={float(a):.6f}")
                    found.append((polish(a, b, bisect_float), j))

        # the reconstruction forces double zeros at z = 1 and z = -1; a
        # double zero produces no sign change, so probe both explicitly
        for theta, j in ((pi, m - 1), (2 * pi, 2 * m - 1)):
            if abs(g(theta, full)) < lattice_eps:
                found.append((theta, j))

        # dedupe: merge zeros closer than a few stop widths, and drop
        # bracket hits that coincide with a certified lattice endpoint
        merged: list = []
        for theta, j in sorted(found):
            if merged and theta - merged[-1][0] < 8 * stop_theta:
                continue
            if any(abs(theta - t) < 8 * stop_theta for t in lattice):
                continue
            merged.append((theta, j))

        # z = 1 and z = -1 are always double zeros of the reconstruction;
        # they live in skipped intervals and are tallied separately from
        # the simple circle zeros the interval argument counts
        eps_unit = mpf(2) ** (-(prec // 4))
        unit_angles: list = []
        counted: list = []
        for theta, j in merged:
            tm = theta % (2 * pi)
            if tm < eps_unit or (2 * pi) - tm < eps_unit:
                unit_angles.append(mp.zero)
            elif abs(tm - pi) < eps_unit:
                unit_angles.append(+pi)
            else:
                counted.append((theta, j))

        hits = [0] * (2 * m)
        angles = []
        for theta, j in counted:
            idx = int(mp.floor((theta % (2 * pi) - t0) / width))
            hits[min(max(idx, 0), 2 * m - 1)] += 1
            angles.append(+(theta % (2 * pi)))
        lattice_angles = tuple(+(t % (2 * pi)) for t in lattice)
        angles = tuple(sorted(angles + list(lattice_angles)))

    return CircleZeros(m, angles, tuple(hits), tuple(skipped), lattice_angles,
                       tuple(sorted(unit_angles)))


def _float_aberth(coeffs, max_iter=900):
    """Vectorized float64 simultaneous iteration; None if it leaves float range."""
    deg = len(coeffs) - 1
    with workprec(64):
        try:
            top = max(abs(mpf(c)) for c in coeffs if c != 0)
            cs = np.array([float(mpf(c) / top) if c != 0 else 0.0 for c in coeffs])
        except (OverflowError, ValueError):
            return None
    if not np.all(np.isfinite(cs)) or cs[-1] == 0:
        return None
    dcs = cs[1:] * np.arange(1, deg + 1)
    radii = np.array([0.5, 1.0, 2.0])[np.arange(deg) % 3]
    golden = 0.61803398874989484820
    ang = 2 * np.pi * ((np.arange(deg) * golden + 0.137) % 1.0)
    z = radii * np.exp(1j * ang)
    with np.errstate(all="ignore"):
        for _ in range(max_iter):
            pv = np.zeros_like(z)
            for c in cs[::-1]:
                pv = pv * z + c
            dv = np.zeros_like(z)
            for c in dcs[::-1]:
                dv = dv * z + c
            dv = np.where(dv == 0, 1e-300, dv)
            newton = pv / dv
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, np.inf)
            repulse = (1.0 / diff).sum(axis=1)
            denom = 1.0 - newton * repulse
            denom = np.where(denom == 0, 1e-300, denom)
            step = newton / denom
            z = z - step
            big = np.abs(z) > 6.0
            if big.any():
                z[big] = 6.0 * z[big] / np.abs(z[big])
            if not np.all(np.isfinite(z)):
                return None
            if np.max(np.abs(step)) < 1e-13 * max(1.0, np.max(np.abs(z))):
                break
    return [mpc(complex(v)) for v in z]


def _ring_starts(deg):
    radii = [mpf("0.5"), mpf(1), mpf(2)]
    golden = mpf("0.61803398874989484820")
    out = []
    for i in range(deg):
        t = (i * golden + mpf("0.137")) % 1
        out.append(radii[i % 3] * mp.expjpi(2 * t))
    return out


def refine_all_roots(p: RealPoly, prec_bits: int | None = None) -> list:
    """All deg(p) complex roots, clustered multiplicities repeated.

    Simultaneous Aberth iteration from ring starts (radii 0.5, 1, 2):
    a float64 stage followed by full-precision sweeps at 2*prec + 64
    working bits, stopping when the largest update drops below
    2^{-prec/2}. No deflation: exact zero constant terms peel roots at
    the origin, and persistent stalled pairs (double roots) are
    collapsed through Newton on the derivative, verified against |p|.
    Roots within 2^{-prec/4} are reported as one point with
    multiplicity.
    """
    prec = prec_bits or p.prec_bits
    coeffs = list(p.coeffs)
    origin = 0
    while len(coeffs) > 1 and coeffs[0] == 0:
        coeffs.pop(0)
        origin += 1
    deg = len(coeffs) - 1
    roots: list = [mpc(0)] * origin
    if deg == 0:
        return roots

    work = 2 * prec + 64
    with workprec(work):
        stop = mpf(2) ** (-(prec // 2))
        cluster_r = mpf(2) ** (-(prec // 4))
        cs = [mpf(c) if c != 0 else mp.zero for c in coeffs]
        dcs = [i * cs[i] for i in range(1, deg + 1)]
        maxc = max(abs(c) for c in cs)

        z = _float_aberth(coeffs)
        if z is None:
            z = _ring_starts(deg)
        z = [mpc(v) for v in z]
        starts = [+v for v in z]

        frozen = [False] * deg
        small_count = [0] * deg
        laststep = [mpf(1)] * deg
        stalled = [0] * deg

        def collapse(group):
            mult = len(group)
            center = sum(z[i] for i in group) / mult
            dk = cs
            for _ in range(mult - 1):
                dk = [i * dk[i] for i in range(1, len(dk) - 1 + 1)]
            dk1 = [i * dk[i] for i in range(1, len(dk) - 1 + 1)]
            x = center
            for _ in range(120):
                fv = _poly_eval_mpc(dk, x)
                dv = _poly_eval_mpc(dk1, x)
                if dv == 0:
                    break
                s = fv / dv
                x -= s
                if abs(s) < stop / 8:
                    break
            # the collapsed point must really be a near-zero of p itself
            mag = max(mpf(1), abs(x)) ** deg
            if abs(_poly_eval_mpc(cs, x)) > mpf(2) ** (-(prec // 2)) * maxc * mag * (deg + 1):
                raise ArithmeticError("cluster collapse left a non-root")
            for i in group:
                z[i] = x
                frozen[i] = True

        converged = False
        for sweep in range(400):
            max_step = mp.zero
            for i in range(deg):
                if frozen[i]:
                    continue
                zi = z[i]
                pv = _poly_eval_mpc(cs, zi)
                dv = _poly_eval_mpc(dcs, zi)
                if dv == 0:
                    dv = mpf(2) ** (-work) * (maxc + 1)
                newton = pv / dv
                # deep inside a basin the repulsion correction is second
                # order; dropping it there avoids the O(n^2) divisions
                if laststep[i] < mpf("1e-18"):
                    step = newton
                else:
                    acc = mp.zero
                    for jj in range(deg):
                        if jj != i and z[jj] != zi:
                            acc += 1 / (zi - z[jj])
                    denom = 1 - newton * acc
                    step = newton if denom == 0 else newton / denom
                z[i] = zi - step
                s = abs(step)
                stalled[i] = stalled[i] + 1 if s > laststep[i] / 4 else 0
                laststep[i] = s
                if s < stop / 8:
                    small_count[i] += 1
                    if small_count[i] >= 2:
                        frozen[i] = True
                else:
                    small_count[i] = 0
                if s > max_step:
                    max_step = s
            if all(frozen) or max_step < stop:
                converged = True
                break
            if sweep >= 10:
                live = [i for i in range(deg) if not frozen[i] and stalled[i] >= 4]
                used = set()
                for i in live:
                    if i in used:
                        continue
                    group = [i] + [j for j in live if j != i and j not in used
                                   and abs(z[i] - z[j]) < mpf("1e-6")]
                    if len(group) > 1:
                        collapse(group)
                        used.update(group)
        if not converged and not all(frozen):
            bad = [str(starts[i]) for i in range(deg) if not frozen[i]]
            raise RuntimeError(
                "root refinement did not converge; offending starts: "
                + ", ".join(bad[:8]))

        # cluster pass: union-find over the 2^{-prec/4} radius
        parent = list(range(deg))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for i in range(deg):
            for j in range(i + 1, deg):
                if abs(z[i] - z[j]) < cluster_r:
                    parent[find(i)] = find(j)
        groups: dict[int, list] = {}
        for i in range(deg):
            groups.setdefault(find(i), []).append(i)
        out = []
        for members in groups.values():
            center = sum(z[i] for i in members) / len(members)
            with workprec(prec):
                center = +center
            out.extend([center] * len(members))
    roots.extend(out)
    roots.sort(key=lambda r: (r.real, r.imag))
    return roots


def _wrap_angle(d):
    pi = mp.pi
    while d > pi:
        d -= 2 * pi
    while d <= -pi:
        d += 2 * pi
    return d


def _circle_winding(fn, radius, prec, initial, orientation=1):
    with workprec(prec + 16):
        two_pi = 2 * mp.pi

        def val(t):
            v = fn(radius * mp.expjpi(2 * t))
            if v == 0:
                raise ArithmeticError("zero on contour during winding count")
            return v

        ts = [mpf(i) / initial for i in range(initial + 1)]
        nodes = [(t, val(t)) for t in ts]
        total = mp.zero
        stack = [(nodes[i], nodes[i + 1]) for i in range(len(nodes) - 1)]
        half_pi = mp.pi / 2
        while stack:
            (t1, v1), (t2, v2) = stack.pop()
            d = _wrap_angle(mp.arg(v2) - mp.arg(v1))
            if abs(d) < half_pi:
                total += d
                continue
            if t2 - t1 < mpf(2) ** (-48):
                raise ArithmeticError(
                    "phase step would not refine below pi/2; zero near contour?")
            tm = (t1 + t2) / 2
            vm = val(tm)
            stack.append(((t1, v1), (tm, vm)))
            stack.append(((tm, vm), (t2, v2)))
        raw = orientation * total / two_pi
        snapped = int(mp.nint(raw))
        if abs(raw - snapped) > mpf("0.01"):
            raise ArithmeticError(f"winding number failed to snap: {mp.nstr(raw, 10)}")
        return snapped


def winding_count(fn, contour: Contour, prec_bits: int = 113,
                  initial_samples: int = 64) -> int:
    """Argument-principle winding of fn over the contour.

    Phase steps of pi/2 or more are bisected adaptively; the total is
    snapped to the nearest integer and the snap must land within 0.01.
    An annulus boundary counts the outer circle minus the inner one.
    """
    if contour.kind == "circle":
        return _circle_winding(fn, contour.radii[0], prec_bits, initial_samples)
    inner, outer = contour.radii
    w_out = _circle_winding(fn, outer, prec_bits, initial_samples)
    w_in = _circle_winding(fn, inner, prec_bits, initial_samples)
    return w_out - w_in


def _extremum_scan(fn, radius, prec, samples, mode):
    """Coarse-to-fine |fn| extremum on a circle; golden-section polish."""
    sign = 1 if mode == "min" else -1
    with workprec(prec + 16):
        two = 2 * mp.pi

        def h(t):
            return sign * abs(fn(radius * mp.expjpi(2 * t)))

        ts = [mpf(i) / samples for i in range(samples)]
        vals = [h(t) for t in ts]
        order = sorted(range(samples), key=lambda i: vals[i])
        cand = []
        seen = set()
        for i in order[: 3 * 10]:
            if all((i - j) % samples > 2 and (j - i) % samples > 2 for j in seen):
                seen.add(i)
                cand.append(i)
            if len(cand) >= 10:
                break
        phi = (mp.sqrt(5) - 1) / 2
        best_v, best_t = vals[order[0]], ts[order[0]]
        for i in cand:
            a = ts[i] - mpf(1) / samples
            b = ts[i] + mpf(1) / samples
            c = b - phi * (b - a)
            d = a + phi * (b - a)
            fc, fd = h(c), h(d)
            for _ in range(48):
                if fc < fd:
                    b, d, fd = d, c, fc
                    c = b - phi * (b - a)
                    fc = h(c)
                else:
                    a, c, fc = c, d, fd
                    d = a + phi * (b - a)
                    fd = h(d)
            tm = (a + b) / 2
            vm = h(tm)
            if vm < best_v:
                best_v, best_t = vm, tm
        point = radius * mp.expjpi(2 * best_t)
        return +(sign * best_v), +point


def boundary_min(fn, contour: Contour, prec_bits: int = 113,
                 samples: int = 1024):
    """(min |fn|, attaining point) over the contour, adaptively refined."""
    circles = contour.radii if contour.kind == "annulus" else contour.radii[:1]
    best = None
    for r in circles:
        v, pt = _extremum_scan(fn, r, prec_bits, samples, "min")
        if best is None or v < best[0]:
            best = (v, pt)
    return best


def boundary_max(fn, contour: Contour, prec_bits: int = 113,
                 samples: int = 1024):
    circles = contour.radii if contour.kind == "annulus" else contour.radii[:1]
    best = None
    for r in circles:
        v, pt = _extremum_scan(fn, r, prec_bits, samples, "max")
        if best is None or v > best[0]:
            best = (v, pt)
    return best


@dataclass(frozen=True)
class RoucheResult:
    max_diff: mpf
    min_g: mpf
    verified: bool
    winding_f: int
    winding_g: int


def rouche_compare(f, g, contour: Contour, prec_bits: int = 113,
                   samples: int = 512) -> RoucheResult:
    """Certify |f - g| < |g| on the contour and compare winding counts.

    When the inequality holds the two windings must agree (Rouche);
    both are computed anyway and a mismatch under a verified
    inequality raises, since it would mean a winding-count defect.
    """
    diff_max, _ = boundary_max(lambda z: f(z) - g(z), contour, prec_bits, samples)
    g_min, _ = boundary_min(g, contour, prec_bits, samples)
    verified = bool(diff_max < g_min)
    wf = winding_count(f, contour, prec_bits)
    wg = winding_count(g, contour, prec_bits)
    if verified and wf != wg:
        raise ArithmeticError("Rouche inequality verified but windings differ")
    return RoucheResult(+diff_max, +g_min, verified, wf, wg)


def sin_approx_sup(q: RealPoly, radius, prec_bits: int = 113,
                   samples: int = 512) -> mpf:
    """sup over |z| = radius of |sin(2 pi z) - q(z)|, adaptive refinement."""
    def fn(z):
        return mp.sin(2 * mp.pi * z) - _poly_eval_mpc(q.coeffs, z)

    v, _ = boundary_max(fn, Contour.circle(radius), prec_bits, samples)
    return v


_TRIVIAL_TARGETS = ((mpf(0), 1), (mpf(1), 2), (mpf(-1), 2), (mpf(2), 1),
                    (mpf(-2), 1), (mpf("0.5"), 1), (mpf("-0.5"), 1))


@dataclass(frozen=True)
class ClassifiedRoots:
    entries: tuple  # (root, label) with label in {"trivial:<t>", "circle", "other"}
    n_trivial: int
    n_circle: int
    circle_roots: tuple
    max_modulus_deviation: mpf
    trivial_complete: bool
    unaccounted: tuple


def classify_roots(roots, prec_bits: int, circle_tol=None) -> ClassifiedRoots:
    """Split a root multiset into the forced trivial set, unit-circle
    zeros (||rho| - 1| below circle_tol, default 1e-20), and leftovers."""
    with workprec(prec_bits + 16):
        tol_match = mpf(2) ** (-(prec_bits // 4))
        ctol = mpf("1e-20") if circle_tol is None else mpf(circle_tol)
        counts = {str(t): 0 for t, _ in _TRIVIAL_TARGETS}
        entries = []
        circle = []
        unaccounted = []
        maxdev = mp.zero
        for r in roots:
            label = None
            for t, _ in _TRIVIAL_TARGETS:
                if abs(r - t) < tol_match:
                    label = f"trivial:{t}"
                    counts[str(t)] += 1
                    break
            if label is None:
                dev = abs(abs(r) - 1)
                if dev < ctol:
                    label = "circle"
                    circle.append(r)
                    maxdev = max(maxdev, dev)
                else:
                    label = "other"
                    unaccounted.append(r)
            entries.append((r, label))
        complete = all(counts[str(t)] == m for t, m in _TRIVIAL_TARGETS)
        return ClassifiedRoots(
            entries=tuple(entries),
            n_trivial=sum(counts.values()),
            n_circle=len(circle),
            circle_roots=tuple(circle),
            max_modulus_deviation=+maxdev,
            trivial_complete=complete,
            unaccounted=tuple(unaccounted),
        )


@dataclass(frozen=True)
class ZeroReport:
    """Full accounting of the zero set of one odd period polynomial."""

    weight: int
    prec_bits: int
    degree: int
    n_trivial_zeros: int
    n_circle_zeros: int
    circle_angles: tuple
    max_modulus_deviation: mpf
    interval_hits: tuple
    skipped_intervals: tuple
    lattice_angles: tuple
    unit_trivial_angles: tuple
    uncovered_intervals: tuple
    accounted: bool
    roots: tuple  # (root, label) pairs
    angle_cross_check: mpf  # worst angle discrepancy between the two methods


def build_zero_report(f_weight: int, r: RealPoly, q: RealPoly,
                      prec_bits: int, circle_tol=None) -> ZeroReport:
    """Cross-validated zero accounting for r via both mechanisms.

    Interval localization runs on q (the reconstruction half) while the
    Aberth multiset comes from r itself; the two circle-zero lists must
    match as multisets within 2^{-prec/4} in angle. A count mismatch
    triggers denser rescans before giving up.
    """
    w = f_weight - 2
    roots = refine_all_roots(r, prec_bits)
    cls = classify_roots(roots, prec_bits, circle_tol)

    samples = 16
    for attempt in range(3):
        zeros = circle_zeros_by_intervals(q, w, prec_bits, samples)
        if len(zeros.angles) == cls.n_circle:
            break
        samples *= 2
    with workprec(prec_bits + 16):
        tol = mpf(2) ** (-(prec_bits // 4))
        worst = mp.zero
        matched = len(zeros.angles) == cls.n_circle
        if matched:
            got = sorted(+mp.arg(z) % (2 * mp.pi) for z in cls.circle_roots)
            exp = sorted(zeros.angles)
            for a, b in zip(exp, got):
                d = abs(_wrap_angle(a - b))
                worst = max(worst, d)
            matched = bool(worst < tol)
        expected_circle = (r.degree + 1 - 1) - 9  # degree w-1 minus nine trivial
        accounted = bool(
            cls.trivial_complete
            and not cls.unaccounted
            and cls.n_circle == max(expected_circle, 0)
            and len(zeros.unit_trivial_angles) == 2
            and matched)
        return ZeroReport(
            weight=f_weight,
            prec_bits=prec_bits,
            degree=r.degree,
            n_trivial_zeros=cls.n_trivial,
            n_circle_zeros=cls.n_circle,
            circle_angles=zeros.angles,
            max_modulus_deviation=cls.max_modulus_deviation,
            interval_hits=zeros.interval_hits,
            skipped_intervals=zeros.skipped_intervals,
            lattice_angles=zeros.lattice_angles,
            unit_trivial_angles=zeros.unit_trivial_angles,
            uncovered_intervals=zeros.uncovered_intervals,
            accounted=accounted,
            roots=cls.entries,
            angle_cross_check=+worst,
        )
