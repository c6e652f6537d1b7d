"""Exact q-expansion arithmetic for level-one modular forms.

Everything here is integer or rational: no floats enter this module.
Series are truncations of q-expansions indexed from q^0, Eisenstein
series and the discriminant form are built from divisor sums, and cusp
bases are echelonized with exact Gaussian elimination so that later
linear algebra can read coefficients straight out of the expansion.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "QSeries",
    "CuspBasis",
    "bernoulli_number",
    "sigma_power",
    "eisenstein_qexp",
    "delta_qexp",
    "series_mul",
    "cusp_dim",
    "cusp_basis",
]

# Bernoulli cache: grown under a lock, read without one.  B_1 = -1/2.
_BERNOULLI: list[Fraction] = [Fraction(1), Fraction(-1, 2)]
_BERNOULLI_LOCK = threading.Lock()


def bernoulli_number(n: int) -> Fraction:
    """Return the Bernoulli number B_n as an exact rational.

    Uses the defining recurrence sum_{j<=n} C(n+1, j) B_j = 0 and keeps
    every previously computed value, so a sweep over n is linear in the
    number of new entries.
    """
    if n < 0:
        raise ValueError("Bernoulli index must be nonnegative")
    if n >= len(_BERNOULLI):
        with _BERNOULLI_LOCK:
            m = len(_BERNOULLI)
            while m <= n:
                if m % 2 == 1:
                    _BERNOULLI.append(Fraction(0))
                else:
                    acc = Fraction(0)
                    c = 1  # C(m+1, j), updated incrementally
                    for j in range(m):
                        acc += c * _BERNOULLI[j]
                        c = c * (m + 1 - j) // (j + 1)
                    _BERNOULLI.append(-acc / (m + 1))
                m += 1
    return _BERNOULLI[n]


def sigma_power(n: int, r: int) -> int:
    """Divisor power sum sigma_r(n) for n >= 1."""
    if n < 1:
        raise ValueError("sigma_power needs n >= 1")
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d**r
            e = n // d
            if e != d:
                total += e**r
        d += 1
    return total


def _as_exact(x):
    # Fractions that became integral collapse to int; keeps convolution fast.
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


@dataclass(frozen=True)
class QSeries:
    """Truncated q-expansion sum_{n<order} coeffs[n] q^n with exact coefficients."""

    coeffs: tuple

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, n: int):
        return self.coeffs[n]

    def truncate(self, order: int) -> "QSeries":
        if order > len(self.coeffs):
            raise ValueError("cannot extend a truncated series")
        return QSeries(self.coeffs[:order])

    def scale(self, c) -> "QSeries":
        return QSeries(tuple(_as_exact(c * a) for a in self.coeffs))

    def __add__(self, other: "QSeries") -> "QSeries":
        n = min(len(self.coeffs), len(other.coeffs))
        return QSeries(tuple(self.coeffs[i] + other.coeffs[i] for i in range(n)))

    def __sub__(self, other: "QSeries") -> "QSeries":
        n = min(len(self.coeffs), len(other.coeffs))
        return QSeries(tuple(self.coeffs[i] - other.coeffs[i] for i in range(n)))

    def __mul__(self, other: "QSeries") -> "QSeries":
        a, b = self.coeffs, other.coeffs
        n = min(len(a), len(b))
        out = [0] * n
        for i in range(n):
            ai = a[i]
            if ai == 0:
                continue
            for j in range(n - i):
                bj = b[j]
                if bj != 0:
                    out[i + j] += ai * bj
        return QSeries(tuple(_as_exact(v) for v in out))

    def __pow__(self, e: int) -> "QSeries":
        if e < 0:
            raise ValueError("negative series powers are not defined here")
        result = QSeries((1,) + (0,) * (len(self.coeffs) - 1))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result


def series_mul(a: QSeries, b: QSeries) -> QSeries:
    """Product truncated to the shorter operand's order."""
    return a * b


def eisenstein_qexp(k: int, order: int) -> QSeries:
    """E_k = 1 - (2k/B_k) sum_{n>=1} sigma_{k-1}(n) q^n, exact to the given order.

    Coefficient denominators divide the denominator of 2k/B_k; for k in
    {4, 6} the expansion is integral.
    """
    if k < 4 or k % 2:
        raise ValueError("Eisenstein weight must be even and at least 4")
    if order < 1:
        raise ValueError("order must be positive")
    factor = _as_exact(Fraction(-2 * k) / bernoulli_number(k))
    coeffs = [1] + [_as_exact(factor * sigma_power(n, k - 1)) for n in range(1, order)]
    return QSeries(tuple(coeffs))


def delta_qexp(order: int) -> QSeries:
    """Discriminant cusp form Delta = (E_4^3 - E_6^2) / 1728, integral coefficients."""
    e4 = eisenstein_qexp(4, order)
    e6 = eisenstein_qexp(6, order)
    num = e4**3 - e6**2
    out = []
    for n, c in enumerate(num.coeffs):
        q, r = divmod(c, 1728)
        if r:
            raise ArithmeticError(f"Delta coefficient {n} is not integral")
        out.append(q)
    return QSeries(tuple(out))


def cusp_dim(k: int) -> int:
    """Dimension of the weight-k cusp space (0 for k < 12 and for k = 14)."""
    if k < 12 or k % 2:
        return 0
    return k // 12 - (1 if k % 12 == 2 else 0)


@dataclass(frozen=True)
class CuspBasis:
    """Echelonized cusp basis: forms[j] has coefficient 1 at q^{j+1} and 0 at
    q^{i+1} for every other i < dim."""

    weight: int
    dim: int
    forms: tuple
    order: int


def cusp_basis(weight: int, order: int) -> CuspBasis:
    """Exact echelon basis of the weight-`weight` cusp space.

    Monomials Delta^j E_4^a E_6^b with 4a + 6b = weight - 12j and b in
    {0, 1} are lower triangular in the leading coefficients, so a single
    back-elimination pass over exact integers produces the echelon form.
    """
    d = cusp_dim(weight)
    if d == 0:
        return CuspBasis(weight, 0, (), order)
    if order <= d:
        raise ValueError(f"order {order} too small to echelonize dim {d}")

    delta = delta_qexp(order)
    e4 = eisenstein_qexp(4, order)
    e6 = eisenstein_qexp(6, order)

    raw = []
    dpow = delta
    for j in range(1, d + 1):
        rem = weight - 12 * j
        if rem % 4 == 0:
            a, b = rem // 4, 0
        else:
            # rem = 2 mod 4; rem >= 6 always holds for j <= dim
            a, b = (rem - 6) // 4, 1
        if a < 0:
            raise ArithmeticError(f"no monomial of weight {rem} over E4, E6")
        g = dpow * (e4**a)
        if b:
            g = g * e6
        raw.append(g)
        if j < d:
            dpow = dpow * delta

    # Back-elimination: clear coefficients at pivot positions q^1..q^d.
    echelon: list = [None] * d
    for j in range(d - 1, -1, -1):
        g = raw[j]
        if g[j + 1] != 1 or any(g[i] != 0 for i in range(j + 1)):
            raise ArithmeticError("monomial family lost triangularity")
        for i in range(j + 1, d):
            c = g[i + 1]
            if c != 0:
                g = g - echelon[i].scale(c)
        echelon[j] = g

    for j, g in enumerate(echelon):
        for i in range(d):
            expect = 1 if i == j else 0
            if g[i + 1] != expect:
                raise ArithmeticError("echelonization failed pivot check")
    return CuspBasis(weight, d, tuple(echelon), order)
