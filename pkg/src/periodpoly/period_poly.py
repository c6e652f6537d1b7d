"""Odd period polynomials, slash actions, and their structural certificates.

The odd period polynomial of an eigenform f of weight k = w + 2 is

    r(X) = sum_{n odd, 1 <= n <= w-1} (-1)^{(n-1)/2} C(w, n) n!
           (2 pi)^{-n-1} L_f(n+1) X^{w-n},

an odd, self-reciprocal polynomial of degree w - 1. Construction fills
each mirror pair from a single L-value product so the self-reciprocity
c_j = c_{w-j} is bit-level, not approximate. The normalized variant p
and its half q (with p(X) = q(X) + X^w q(1/X)) feed the unit-circle
zero certificates; the slash action supplies the cocycle residues that
certify membership in the period space.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from mpmath import mp, mpf, workprec

from .exact_series import bernoulli_number
from .hecke import Eigenform
from .lfunction import completed_lvalue

__all__ = [
    "RealPoly",
    "Moebius",
    "MOEBIUS_IDENTITY",
    "MOEBIUS_S",
    "MOEBIUS_U",
    "MOEBIUS_U_SQ",
    "slash",
    "odd_period_polynomial",
    "normalized_p",
    "q_split",
    "CocycleResidues",
    "check_cocycle_relations",
    "TrivialZeroCertificate",
    "trivial_zero_certificate",
    "bernoulli_period_polynomial",
]


@dataclass(eq=False)
class RealPoly:
    """Dense real polynomial; coeffs[i] multiplies X^i.

    Coefficients are mpf values at prec_bits, except that structurally
    vanishing ones are stored as true zeros. parity is "odd", "even",
    or "none".
    """

    coeffs: tuple
    prec_bits: int
    parity: str

    @classmethod
    def from_coeffs(cls, coeffs, prec_bits: int) -> "RealPoly":
        cs = list(coeffs)
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        odd = all(c == 0 for c in cs[0::2])
        even = all(c == 0 for c in cs[1::2])
        if odd and not even:
            parity = "odd"
        elif even and not odd:
            parity = "even"
        else:
            parity = "none"
        return cls(tuple(cs), prec_bits, parity)

    @property
    def degree(self) -> int:
        if len(self.coeffs) == 1 and self.coeffs[0] == 0:
            return -1
        return len(self.coeffs) - 1

    def max_abs_coeff(self) -> mpf:
        with workprec(self.prec_bits):
            return max(abs(mpf(c)) if not isinstance(c, mpf) else abs(c)
                       for c in self.coeffs)

    def eval(self, z, prec_bits: int | None = None):
        """Horner evaluation; z may be real or complex."""
        with workprec((prec_bits or self.prec_bits) + 16):
            acc = mp.zero
            for c in reversed(self.coeffs):
                acc = acc * z + c
            return +acc

    def derivative(self) -> "RealPoly":
        if len(self.coeffs) == 1:
            return RealPoly.from_coeffs((0,), self.prec_bits)
        with workprec(self.prec_bits):
            d = tuple(i * c if c != 0 else 0
                      for i, c in enumerate(self.coeffs) if i > 0)
        return RealPoly.from_coeffs(d, self.prec_bits)

    def scaled(self, factor) -> "RealPoly":
        with workprec(self.prec_bits):
            return RealPoly.from_coeffs(
                tuple(c * factor if c != 0 else 0 for c in self.coeffs),
                self.prec_bits)


@dataclass(frozen=True)
class Moebius:
    """Integer matrix [[a, b], [c, d]] with determinant 1."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError("Moebius matrix must have determinant 1")


MOEBIUS_IDENTITY = Moebius(1, 0, 0, 1)
MOEBIUS_S = Moebius(0, 1, -1, 0)
MOEBIUS_U = Moebius(1, -1, 1, 0)
MOEBIUS_U_SQ = Moebius(0, -1, 1, -1)


def _conv(u: list, v: list) -> list:
    out = [0] * (len(u) + len(v) - 1)
    for i, x in enumerate(u):
        if x == 0:
            continue
        for j, y in enumerate(v):
            if y != 0:
                out[i + j] += x * y
    return out


@lru_cache(maxsize=64)
def _slash_matrix(a: int, b: int, c: int, d: int, w: int) -> tuple:
    """Row j holds the integer coefficients of (a z + b)^j (c z + d)^{w-j}."""
    num = [[1]]
    den = [[1]]
    for _ in range(w):
        num.append(_conv(num[-1], [b, a]))
        den.append(_conv(den[-1], [d, c]))
    rows = []
    for j in range(w + 1):
        row = _conv(num[j], den[w - j])
        row += [0] * (w + 1 - len(row))
        rows.append(tuple(row))
    return tuple(rows)


def _apply_slash(coeffs, A: Moebius, w: int) -> list:
    matrix = _slash_matrix(A.a, A.b, A.c, A.d, w)
    out = [0] * (w + 1)
    for j, cj in enumerate(coeffs):
        if cj == 0:
            continue
        row = matrix[j]
        for i in range(w + 1):
            if row[i] != 0:
                out[i] = out[i] + cj * row[i]
    return out


def slash(p: RealPoly, A: Moebius, weight_minus_2: int) -> RealPoly:
    """Weight-w slash action (p|A)(z) = (cz + d)^w p((az + b)/(cz + d)).

    Exact integer expansion matrices are cached per (A, w); the input
    degree must not exceed w.
    """
    w = weight_minus_2
    if p.degree > w:
        raise ValueError(f"degree {p.degree} exceeds slash weight {w}")
    with workprec(p.prec_bits + 64):
        out = _apply_slash(p.coeffs, A, w)
        with workprec(p.prec_bits):
            out = [+x if x != 0 else 0 for x in out]
    return RealPoly.from_coeffs(out, p.prec_bits)


def odd_period_polynomial(f: Eigenform) -> RealPoly:
    """Odd period polynomial of f, odd and self-reciprocal of degree w-1.

    Mirror coefficient pairs (X^n, X^{w-n}) are both written from the
    single product computed for the smaller index, which is what makes
    c_j = c_{w-j} hold bit for bit.
    """
    w = f.weight - 2
    prec = f.prec_bits
    with workprec(prec + 64):
        two_pi = 2 * mp.pi
        c: list = [0] * w
        for n in range(1, w // 2 + 1, 2):
            lv = completed_lvalue(f, n + 1).value
            sign = -1 if ((n - 1) // 2) % 2 else 1
            a_n = sign * math.comb(w, n) * math.factorial(n) * two_pi ** (-(n + 1)) * lv
            with workprec(prec):
                a_n = +a_n
            c[w - n] = a_n
            c[n] = a_n
    return RealPoly.from_coeffs(c, prec)


def normalized_p(f: Eigenform, r: RealPoly | None = None) -> RealPoly:
    """Scalar multiple of r with series coefficients
    p(X) = sum_m (-1)^m (2 pi X)^{2m+1} / (2m+1)! * L_f(w - 2m);
    in particular the coefficient of X^1 is 2 pi L_f(w). Same zero set
    as r by construction.
    """
    w = f.weight - 2
    if r is None:
        r = odd_period_polynomial(f)
    with workprec(f.prec_bits + 64):
        sign = -1 if (w // 2 + 1) % 2 else 1
        scalar = sign * (2 * mp.pi) ** (w + 1) / (w * math.factorial(w - 1))
        return r.scaled(scalar)


def q_split(f: Eigenform, p: RealPoly | None = None) -> tuple[RealPoly, mpf]:
    """Half-polynomial q with p(X) = q(X) + X^w q(1/X), plus the residual.

    q carries the odd powers 2m+1 for m <= floor((w-3)/4) and, when
    w = 2 mod 4, the halved central term
    (-1)^{(w-2)/4} (2 pi X)^{w/2} L_f(k/2) / (2 (w/2)!). The returned
    residual is the max reconstruction defect relative to p's largest
    coefficient.
    """
    k = f.weight
    w = k - 2
    prec = f.prec_bits
    if p is None:
        p = normalized_p(f)
    with workprec(prec + 64):
        two_pi = 2 * mp.pi
        qc: list = [0] * (w // 2 + 1)
        for m in range((w - 3) // 4 + 1):
            lv = completed_lvalue(f, w - 2 * m).value
            sign = -1 if m % 2 else 1
            qc[2 * m + 1] = sign * two_pi ** (2 * m + 1) / math.factorial(2 * m + 1) * lv
        if w % 4 == 2:
            mc = (w - 2) // 4
            sign = -1 if mc % 2 else 1
            qc[w // 2] = (sign * two_pi ** (w // 2) * completed_lvalue(f, k // 2).value
                          / (2 * math.factorial(w // 2)))
        rec = [0] * (w + 1)
        for i, c in enumerate(qc):
            if c != 0:
                rec[i] = rec[i] + c
                rec[w - i] = rec[w - i] + c
        pc = list(p.coeffs) + [0] * (w + 1 - len(p.coeffs))
        scale = p.max_abs_coeff()
        resid = max(abs(rec[i] - pc[i]) for i in range(w + 1)) / scale
        with workprec(prec):
            qc = [+x if x != 0 else 0 for x in qc]
            resid = +resid
    return RealPoly.from_coeffs(qc, prec), resid


@dataclass(frozen=True)
class CocycleResidues:
    s_residual: mpf
    u_residual: mpf
    scale: mpf


def check_cocycle_relations(p: RealPoly, weight: int) -> CocycleResidues:
    """Residues of P|(1 + S) and P|(1 + U + U^2) at weight `weight`.

    Residues are max-coefficient norms normalized by p's largest
    coefficient; the zero polynomial reports zero residues.
    """
    w = weight - 2
    if p.degree > w:
        raise ValueError("polynomial degree exceeds weight - 2")
    scale = p.max_abs_coeff()
    if scale == 0:
        z = mpf(0)
        return CocycleResidues(z, z, z)
    with workprec(p.prec_bits + 64):
        pc = list(p.coeffs) + [0] * (w + 1 - len(p.coeffs))
        ps = _apply_slash(p.coeffs, MOEBIUS_S, w)
        pu = _apply_slash(p.coeffs, MOEBIUS_U, w)
        pu2 = _apply_slash(p.coeffs, MOEBIUS_U_SQ, w)
        s_res = max(abs(pc[i] + ps[i]) for i in range(w + 1)) / scale
        u_res = max(abs(pc[i] + pu[i] + pu2[i]) for i in range(w + 1)) / scale
        with workprec(p.prec_bits):
            return CocycleResidues(+s_res, +u_res, +scale)


@dataclass(frozen=True)
class TrivialZeroCertificate:
    """Nine evaluation residuals plus the two exponential-shift identities.

    checks rows are (name, residual, tolerance, ok); passed is the
    conjunction.
    """

    checks: tuple
    passed: bool

    def residual(self, name: str) -> mpf:
        for row in self.checks:
            if row[0] == name:
                return row[1]
        raise KeyError(name)


def trivial_zero_certificate(r: RealPoly, weight_minus_2: int | None = None,
                             prec_bits: int | None = None) -> TrivialZeroCertificate:
    """Certify the forced zero set {0, +-2, +-1/2, simple; +-1 double}.

    Each residual is compared against 2^{-prec/2} scaled by the
    polynomial's largest coefficient and the evaluation point's
    magnitude raised to the degree.
    """
    w = weight_minus_2 if weight_minus_2 is not None else r.degree + 1
    prec = prec_bits or r.prec_bits
    d = r.derivative()
    with workprec(prec + 64):
        eps = mpf(2) ** (-(prec // 2))
        scale_r = r.max_abs_coeff()
        scale_d = d.max_abs_coeff()
        half = mpf(1) / 2
        rows = []

        def point(name, poly, x, scale):
            mag = max(mpf(1), abs(mpf(x))) ** max(poly.degree, 1)
            tol = eps * scale * mag
            res = abs(poly.eval(x, prec))
            rows.append((name, +res, +tol, bool(res < tol)))

        point("P(0)", r, mpf(0), scale_r)
        point("P(1)", r, mpf(1), scale_r)
        point("P(-1)", r, mpf(-1), scale_r)
        point("P'(1)", d, mpf(1), scale_d)
        point("P'(-1)", d, mpf(-1), scale_d)
        point("P(2)", r, mpf(2), scale_r)
        point("P(-2)", r, mpf(-2), scale_r)
        point("P(1/2)", r, half, scale_r)
        point("P(-1/2)", r, -half, scale_r)

        # The identities that force the zeros at 2 and 1/2.
        p2 = r.eval(mpf(2), prec)
        ph = r.eval(half, prec)
        shift = mpf(2) ** w
        tol_id = eps * scale_r * mpf(2) ** (max(r.degree, 1) + 2)
        for name, val in (("P(2)+2^w*P(1/2)", p2 + shift * ph),
                          ("P(2)-2^w*P(1/2)", p2 - shift * ph)):
            rows.append((name, +abs(val), +tol_id, bool(abs(val) < tol_id)))

    return TrivialZeroCertificate(tuple(rows), all(row[3] for row in rows))


def _bernoulli0_coeffs(m: int) -> list[Fraction]:
    """B^0_m(X): the m-th Bernoulli polynomial without its i = 1 term."""
    c = [Fraction(0)] * (m + 1)
    for i in range(m + 1):
        if i == 1:
            continue
        b = bernoulli_number(i)
        if b:
            c[m - i] += math.comb(m, i) * b
    return c


def _bernoulli_period_exact(n: int, w: int) -> list[Fraction]:
    if w < 6 or w % 2:
        raise ValueError("w must be even and at least 6")
    if n <= 0 or n >= w or n % 2:
        raise ValueError("n must be even with 0 < n < w")
    nt = w - n
    g1 = _bernoulli0_coeffs(nt + 1)
    g2 = _bernoulli0_coeffs(n + 1)
    size = max(len(g1), len(g2))
    g = [Fraction(0)] * size
    for i, c in enumerate(g1):
        g[i] += Fraction(c, nt + 1)
    for i, c in enumerate(g2):
        g[i] -= Fraction(c, n + 1)
    gs = _apply_slash(g, MOEBIUS_S, w)
    h = [g[i] - gs[i] if i < len(g) else -gs[i] for i in range(w + 1)]
    k = w + 2
    sign = -1 if (k // 2 + n // 2) % 2 else 1
    scale = sign * 2**w
    out = [scale * c for c in h]
    for i in range(0, w + 1, 2):
        if out[i] != 0:
            raise ArithmeticError("Bernoulli-type polynomial lost odd parity")
    return out


def bernoulli_period_polynomial(n: int, w: int, prec_bits: int = 192) -> RealPoly:
    """Exact rational odd period polynomial of the n-th Bernoulli-type
    cusp pairing in weight w + 2, embedded at prec_bits.

    Built from Bernoulli numbers and one exact slash by (1 - S); the
    (n, w-n) pair produces the same polynomial up to sign.
    """
    exact = _bernoulli_period_exact(n, w)
    with workprec(prec_bits):
        coeffs = tuple(
            mpf(c.numerator) / c.denominator if c != 0 else 0 for c in exact)
    return RealPoly.from_coeffs(coeffs, prec_bits)
