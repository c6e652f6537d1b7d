"""Hecke operators on cusp spaces and high-precision eigenform embeddings.

The operator layer stays exact: matrices are integers read off an
echelon basis, characteristic polynomials come from integer
Faddeev-LeVerrier, and eigenvalue brackets are isolated with exact sign
evaluations. Only the final refinement and the eigenvector solve move to
floating point, at a caller-chosen working precision.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpf, workprec

from .exact_series import CuspBasis, QSeries, cusp_basis, cusp_dim

__all__ = [
    "RepeatedEigenvalueError",
    "Eigenform",
    "hecke_apply",
    "hecke_matrix",
    "eigenforms",
    "default_prec_bits",
    "default_n_coeffs",
    "divisor_count",
]


class RepeatedEigenvalueError(RuntimeError):
    """Raised when the T_2 characteristic polynomial is not squarefree."""


def default_prec_bits(weight: int) -> int:
    return max(192, 6 * weight)


def default_n_coeffs(weight: int) -> int:
    return max(2 * weight, 64)


def divisor_count(n: int) -> int:
    count = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            count += 1 if d * d == n else 2
        d += 1
    return count


def hecke_apply(series: QSeries, m: int, weight: int) -> QSeries:
    """Image of a cusp expansion under T_m in weight `weight`.

    b(n) = sum_{d | gcd(m, n)} d^{weight-1} a(m n / d^2). The output is
    truncated to order // m so every referenced input coefficient exists.
    """
    if m < 1:
        raise ValueError("Hecke index must be positive")
    out_order = series.order // m
    if out_order < 1:
        raise ValueError("series too short for this Hecke index")
    if m == 1:
        return series.truncate(out_order)
    # gcd(m, 0) = m, so the constant term picks up sigma_{k-1}(m) a(0).
    from .exact_series import sigma_power

    out = [sigma_power(m, weight - 1) * series[0]]
    for n in range(1, out_order):
        g = math.gcd(m, n)
        acc = 0
        d = 1
        while d * d <= g:
            if g % d == 0:
                acc += d ** (weight - 1) * series[m * n // (d * d)]
                e = g // d
                if e != d:
                    acc += e ** (weight - 1) * series[m * n // (e * e)]
            d += 1
        out.append(acc)
    return QSeries(tuple(out))


def hecke_matrix(basis: CuspBasis, m: int):
    """Matrix of T_m on an echelon basis, columns indexed by basis forms.

    Because form j is supported on q^{j+1} + O(q^{dim+1}), the expansion
    coefficients of T_m(form j) at q^1..q^dim are exactly the column
    entries. Requires basis order >= m * (dim + 1).
    """
    d = basis.dim
    if d == 0:
        return []
    if basis.order < m * (d + 1):
        raise ValueError("basis order too small for this Hecke matrix")
    cols = []
    for g in basis.forms:
        h = hecke_apply(g, m, basis.weight)
        cols.append([h[i] for i in range(1, d + 1)])
    return [[cols[j][i] for j in range(d)] for i in range(d)]


def _charpoly_int(matrix) -> list[int]:
    """Characteristic polynomial of an integer matrix, monic, via
    Faddeev-LeVerrier. Returns [c_0, ..., c_{d-1}, 1]."""
    d = len(matrix)
    coeffs = [0] * d + [1]
    prev = [[0] * d for _ in range(d)]
    c = 1
    for j in range(1, d + 1):
        # prev holds M_{j-1}; build M_j = A (M_{j-1} + c I)
        work = [row[:] for row in prev]
        for i in range(d):
            work[i][i] += c
        cur = [[sum(matrix[i][t] * work[t][l] for t in range(d)) for l in range(d)]
               for i in range(d)]
        tr = sum(cur[i][i] for i in range(d))
        q, r = divmod(-tr, j)
        if r:
            raise ArithmeticError("Faddeev-LeVerrier trace was not divisible")
        c = q
        coeffs[d - j] = c
        prev = cur
    return coeffs


def _poly_eval_fraction(coeffs: list[int], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _poly_gcd_degree(p: list[int], q: list[int]) -> int:
    """Degree of gcd(p, q) over the rationals (Euclid on Fraction vectors)."""
    a = [Fraction(c) for c in p]
    b = [Fraction(c) for c in q]

    def deg(v):
        for i in range(len(v) - 1, -1, -1):
            if v[i] != 0:
                return i
        return -1

    while deg(b) >= 0:
        da, db = deg(a), deg(b)
        if da < db:
            a, b = b, a
            continue
        lead = a[da] / b[db]
        shift = da - db
        for i in range(db + 1):
            a[i + shift] -= lead * b[i]
        if deg(a) < deg(b):
            a, b = b, a
    return deg(a)


def _isolate_real_roots(coeffs: list[int], bound: int) -> list[tuple[Fraction, Fraction]]:
    """Brackets for all real roots of a squarefree integer polynomial.

    Subdivides [-bound, bound] uniformly, doubling the grid until the
    number of sign changes reaches the degree. Exact arithmetic
    throughout; endpoints that evaluate to zero become degenerate
    brackets.
    """
    d = len(coeffs) - 1
    pieces = 4 * max(d, 1)
    for _ in range(24):
        xs = [Fraction(-bound) + Fraction(2 * bound * i, pieces) for i in range(pieces + 1)]
        vals = [_poly_eval_fraction(coeffs, x) for x in xs]
        brackets = [(x, x) for x, v in zip(xs, vals) if v == 0]
        for i in range(pieces):
            if vals[i] != 0 and vals[i + 1] != 0 and (vals[i] > 0) != (vals[i + 1] > 0):
                brackets.append((xs[i], xs[i + 1]))
        if len(brackets) == d:
            return brackets
        pieces *= 2
    raise ArithmeticError("failed to isolate all real eigenvalues")


def _refine_root(coeffs: list[int], lo: Fraction, hi: Fraction, prec_bits: int) -> mpf:
    """Newton polish inside an exact bracket, bisection as the safeguard."""
    if lo == hi:
        return mpf(lo.numerator) / lo.denominator
    dcoeffs = [i * coeffs[i] for i in range(1, len(coeffs))]
    with workprec(prec_bits + 64):
        a = mpf(lo.numerator) / lo.denominator
        b = mpf(hi.numerator) / hi.denominator
        sa = _poly_eval_fraction(coeffs, lo) > 0

        def ev(pol, x):
            acc = mp.zero
            for c in reversed(pol):
                acc = acc * x + c
            return acc

        # A few bisection steps shrink the bracket enough for Newton.
        for _ in range(8):
            mid = (a + b) / 2
            if (ev(coeffs, mid) > 0) == sa:
                a = mid
            else:
                b = mid
        x = (a + b) / 2
        tol = mpf(2) ** (-(prec_bits + 16))
        scale = max(abs(a), abs(b), mpf(1))
        for _ in range(200):
            fx = ev(coeffs, x)
            dfx = ev(dcoeffs, x)
            if dfx == 0:
                break
            step = fx / dfx
            x_new = x - step
            if not (a <= x_new <= b):
                mid = (a + b) / 2
                if (ev(coeffs, mid) > 0) == sa:
                    a = mid
                else:
                    b = mid
                x_new = (a + b) / 2
            else:
                if (ev(coeffs, x_new) > 0) == sa:
                    a = x_new
                else:
                    b = x_new
            done = abs(x_new - x) < tol * scale
            x = x_new
            if done:
                break
        return +x


@dataclass(eq=False)
class Eigenform:
    """One Hecke eigenform embedding, normalized so a(1) = 1 exactly.

    coeffs[n] is a(n) as an mpf at prec_bits working precision;
    coeffs[0] = 0. conjugate_index says which root of the T_2
    characteristic polynomial (ascending order) this embedding uses.
    """

    weight: int
    prec_bits: int
    coeffs: tuple
    t2_eigenvalue: mpf
    field_degree: int
    conjugate_index: int

    @property
    def n_coeffs(self) -> int:
        return len(self.coeffs) - 1

    def a(self, n: int) -> mpf:
        return self.coeffs[n]

    def deligne_margin(self) -> mpf:
        """max_n |a(n)| / (d(n) n^{(k-1)/2}); at most 1 for a true eigenform."""
        with workprec(self.prec_bits):
            worst = mp.zero
            half = mpf(self.weight - 1) / 2
            for n in range(1, self.n_coeffs + 1):
                bound = divisor_count(n) * mpf(n) ** half
                worst = max(worst, abs(self.coeffs[n]) / bound)
            return +worst


def _eigenvector(matrix, lam: mpf, prec_bits: int) -> list[mpf]:
    """Null vector of (M - lam I) via inverse iteration.

    The matrix is singular to working precision; LU with partial
    pivoting leaves one tiny pivot whose reciprocal amplifies exactly
    the eigendirection. Two solves from a fixed starting vector make
    the result independent of that vector's overlap.
    """
    d = len(matrix)
    with workprec(prec_bits + 64):
        a = [[mpf(matrix[i][j]) - (lam if i == j else 0) for j in range(d)]
             for i in range(d)]
        scale = max(max(abs(x) for x in row) for row in a) + abs(lam) + 1
        tiny = scale * mpf(2) ** (-(prec_bits + 40))
        perm = list(range(d))
        for col in range(d):
            p = max(range(col, d), key=lambda r: abs(a[r][col]))
            if p != col:
                a[col], a[p] = a[p], a[col]
                perm[col], perm[p] = perm[p], perm[col]
            if a[col][col] == 0:
                a[col][col] = tiny  # exact singularity: standard regularization
            for r in range(col + 1, d):
                f = a[r][col] / a[col][col]
                a[r][col] = f
                for c in range(col + 1, d):
                    a[r][c] -= f * a[col][c]

        def solve(b):
            y = [b[perm[i]] for i in range(d)]
            for i in range(d):
                for j in range(i):
                    y[i] -= a[i][j] * y[j]
            for i in range(d - 1, -1, -1):
                for j in range(i + 1, d):
                    y[i] -= a[i][j] * y[j]
                y[i] /= a[i][i]
            return y

        v = [mpf(1) / (i + 1) for i in range(d)]
        for _ in range(2):
            v = solve(v)
            nrm = max(abs(x) for x in v)
            v = [x / nrm for x in v]
        return v


@functools.lru_cache(maxsize=128)
def eigenforms(weight: int, n_coeffs: int | None = None,
               prec_bits: int | None = None) -> tuple[Eigenform, ...]:
    """All weight-`weight` eigenform embeddings, sorted by T_2 eigenvalue.

    Results are cached per argument triple; Eigenform objects are
    immutable so sharing them across callers is safe.

    Raises ValueError when the cusp space is trivial and
    RepeatedEigenvalueError if the T_2 characteristic polynomial has a
    repeated root (never observed in level one; the check is exact).
    """
    d = cusp_dim(weight)
    if d == 0:
        raise ValueError(f"weight {weight} has no cusp forms")
    if n_coeffs is None:
        n_coeffs = default_n_coeffs(weight)
    if prec_bits is None:
        prec_bits = default_prec_bits(weight)
    order = max(n_coeffs + 1, 2 * (d + 1))
    basis = cusp_basis(weight, order)
    matrix = hecke_matrix(basis, 2)
    charpoly = _charpoly_int(matrix)

    dpoly = [i * charpoly[i] for i in range(1, len(charpoly))]
    if _poly_gcd_degree(charpoly, dpoly) > 0:
        raise RepeatedEigenvalueError(
            f"T_2 characteristic polynomial at weight {weight} is not squarefree")

    # Deligne's bound caps |a(2)| by 2 * 2^{(k-1)/2}; pad it slightly.
    bound = 2 * math.isqrt(2 ** (weight + 1)) + 2
    brackets = _isolate_real_roots(charpoly, bound)

    # Exact integer eigenvalues split off for the field-degree bookkeeping.
    int_roots = []
    remaining = charpoly
    for lo, hi in brackets:
        if lo == hi and lo.denominator == 1:
            int_roots.append(int(lo))
    for r in int_roots:
        out, acc = [], 0
        for c in reversed(remaining):
            acc = acc * r + c
            out.append(acc)
        if out.pop() != 0:
            raise ArithmeticError("integer root division left a remainder")
        remaining = list(reversed(out))
    rest_degree = len(remaining) - 1

    forms = []
    for idx, (lo, hi) in enumerate(sorted(brackets, key=lambda t: t[0])):
        lam = _refine_root(charpoly, lo, hi, prec_bits)
        exact = lo == hi and lo.denominator == 1
        if d == 1:
            v = [mpf(1)]
        else:
            v = _eigenvector(matrix, lam, prec_bits)
        with workprec(prec_bits + 64):
            coeffs = [mp.zero] * (n_coeffs + 1)
            for n in range(1, n_coeffs + 1):
                coeffs[n] = mp.fsum(v[j] * basis.forms[j][n] for j in range(d)
                                    if basis.forms[j][n] != 0)
            lead = coeffs[1]
            if lead == 0:
                raise ArithmeticError("eigenvector has vanishing leading coefficient")
            inv = 1 / lead
            coeffs = [c * inv for c in coeffs]
            coeffs[0] = mp.zero
            coeffs[1] = mpf(1)
            with workprec(prec_bits):
                coeffs = [+c for c in coeffs]
                lam_out = +lam
        forms.append(Eigenform(
            weight=weight,
            prec_bits=prec_bits,
            coeffs=tuple(coeffs),
            t2_eigenvalue=lam_out,
            field_degree=1 if exact else max(rest_degree, 1),
            conjugate_index=idx,
        ))
    return tuple(forms)
