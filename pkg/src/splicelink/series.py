"""Truncated Laurent series in one variable with exact rational coefficients.

A series ``w^v (c_0 + c_1 w + ...)`` is stored densely as ``lowest_exponent``
``v`` plus the list ``coeffs``; ``truncation_order`` is the highest exponent
whose coefficient is known.  Everything above it is unknown, not zero.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .algebra import UniPoly, format_terms


class LaurentSeries:
    __slots__ = ("lowest_exponent", "coeffs", "truncation_order", "var")

    def __init__(self, lowest_exponent: int, coeffs: Sequence, truncation_order: int,
                 var: str = "w"):
        coeffs = [Fraction(c) for c in coeffs]
        width = truncation_order - lowest_exponent + 1
        if width < 0:
            width = 0
        coeffs = (coeffs + [Fraction(0)] * width)[:width]
        # strip leading zeros so coeffs[0] != 0 unless the series is zero
        k = 0
        while k < len(coeffs) and not coeffs[k]:
            k += 1
        self.lowest_exponent = lowest_exponent + k if k < len(coeffs) else truncation_order + 1
        self.coeffs = coeffs[k:]
        self.truncation_order = truncation_order
        self.var = var

    @classmethod
    def from_poly(cls, p: UniPoly, truncation_order: int, shift: int = 0,
                  var: str = "w") -> "LaurentSeries":
        """``w^shift * p(w)`` truncated at ``truncation_order``."""
        if p.is_zero():
            return cls(truncation_order + 1, [], truncation_order, var)
        lo = p.valuation() + shift
        dense = [p.coeff(e - shift) for e in range(lo, truncation_order + 1)]
        return cls(lo, dense, truncation_order, var)

    @classmethod
    def monomial(cls, exponent: int, truncation_order: int, coeff=1, var="w"):
        return cls(exponent, [coeff], truncation_order, var)

    # queries ------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, e: int) -> Fraction:
        if e > self.truncation_order:
            raise IndexError(f"coefficient of w^{e} is beyond truncation order "
                             f"{self.truncation_order}")
        i = e - self.lowest_exponent
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def leading_coefficient(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def items(self):
        """Nonzero (exponent, coefficient) pairs in increasing order."""
        return [(self.lowest_exponent + i, c) for i, c in enumerate(self.coeffs) if c]

    def truncate(self, order: int) -> "LaurentSeries":
        order = min(order, self.truncation_order)
        return LaurentSeries(self.lowest_exponent, self.coeffs, order, self.var)

    # arithmetic ---------------------------------------------------------
    def __neg__(self):
        return LaurentSeries(self.lowest_exponent, [-c for c in self.coeffs],
                             self.truncation_order, self.var)

    def __add__(self, other):
        if not isinstance(other, LaurentSeries):
            other = Fraction(other)
            if not other:
                return self
            other = LaurentSeries(0, [other], max(self.truncation_order, 0), self.var)
        top = min(self.truncation_order, other.truncation_order)
        lo = min(self.lowest_exponent, other.lowest_exponent)
        dense = [self._get(e) + other._get(e) for e in range(lo, top + 1)]
        return LaurentSeries(lo, dense, top, self.var)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other if isinstance(other, LaurentSeries) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def _get(self, e):
        i = e - self.lowest_exponent
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __mul__(self, other):
        if not isinstance(other, LaurentSeries):
            other = Fraction(other)
            return LaurentSeries(self.lowest_exponent, [c * other for c in self.coeffs],
                                 self.truncation_order, self.var)
        top = min(self.truncation_order + other.lowest_exponent,
                  other.truncation_order + self.lowest_exponent)
        lo = self.lowest_exponent + other.lowest_exponent
        width = top - lo + 1
        if width <= 0 or self.is_zero() or other.is_zero():
            return LaurentSeries(top + 1, [], top, self.var)
        out = [Fraction(0)] * width
        a, b = self.coeffs, other.coeffs
        for i, ca in enumerate(a[:width]):
            if not ca:
                continue
            for j, cb in enumerate(b[: width - i]):
                if cb:
                    out[i + j] += ca * cb
        return LaurentSeries(lo, out, top, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return LaurentSeries(0, [1], self.truncation_order - self.lowest_exponent,
                                 self.var)
        result = self
        for _ in range(n - 1):
            result = result * self
        return result

    def inverse(self) -> "LaurentSeries":
        return self.power(Fraction(-1))

    def power(self, alpha: Fraction) -> "LaurentSeries":
        """``self ** alpha`` for rational ``alpha``.

        The valuation times ``alpha`` must be an integer and the leading
        coefficient must have an exact rational ``alpha``-th power.
        """
        if self.is_zero():
            raise ZeroDivisionError("power of a zero series")
        alpha = Fraction(alpha)
        v = self.lowest_exponent * alpha
        if v.denominator != 1:
            raise ValueError(
                f"valuation {self.lowest_exponent} not divisible by {alpha.denominator}")
        c0 = self.coeffs[0]
        lead = rational_power(c0, alpha)
        f = [c / c0 for c in self.coeffs]
        g = unit_power(f, alpha, len(f))
        rel = self.truncation_order - self.lowest_exponent
        return LaurentSeries(int(v), [lead * c for c in g], int(v) + rel, self.var)

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        top = min(self.truncation_order, other.truncation_order)
        lo = min(self.lowest_exponent, other.lowest_exponent)
        return all(self._get(e) == other._get(e) for e in range(lo, top + 1))

    def __str__(self):
        body = format_terms(
            ((c, {self.var: e}) if e else (c, {})) for e, c in self.items())
        return f"{body} + O({self.var}^{self.truncation_order + 1})"

    def __repr__(self):
        return f"LaurentSeries({self})"


def rational_power(c: Fraction, alpha: Fraction) -> Fraction:
    """Exact ``c ** alpha`` or ValueError when it is not rational."""
    c = Fraction(c)
    alpha = Fraction(alpha)
    if alpha.numerator < 0:
        c = 1 / c
    num, den = abs(alpha.numerator), alpha.denominator
    c = c ** num
    if den == 1:
        return c
    neg = c < 0
    if neg and den % 2 == 0:
        raise ValueError(f"{c} has no real rational {den}-th root")
    a = _int_root(abs(c.numerator), den)
    b = _int_root(c.denominator, den)
    if a is None or b is None:
        raise ValueError(f"{c} has no rational {den}-th root")
    r = Fraction(a, b)
    return -r if neg else r


def _int_root(n: int, k: int):
    if n < 2:
        return n
    lo, hi = 1, 1 << (n.bit_length() // k + 1)
    while lo <= hi:
        mid = (lo + hi) // 2
        p = mid ** k
        if p == n:
            return mid
        if p < n:
            lo = mid + 1
        else:
            hi = mid - 1
    return None


def unit_power(f: Sequence[Fraction], alpha: Fraction, length: int) -> list[Fraction]:
    """Coefficients of ``f ** alpha`` for a power series with ``f[0] == 1``.

    J.C.P. Miller's recurrence:
    ``g_k = (1/k) * sum_{j=1..k} ((alpha + 1) j - k) f_j g_{k-j}``.
    """
    alpha = Fraction(alpha)
    g = [Fraction(1)]
    for k in range(1, length):
        s = Fraction(0)
        for j in range(1, min(k, len(f) - 1) + 1):
            fj = f[j]
            if fj:
                s += ((alpha + 1) * j - k) * fj * g[k - j]
        g.append(s / k)
    return g


def series_nth_root(s: LaurentSeries, n: int) -> LaurentSeries:
    """The series ``r`` with ``r ** n == s`` up to the truncation order."""
    if n <= 0:
        raise ValueError("root index must be positive")
    if s.lowest_exponent % n:
        raise ValueError(f"valuation {s.lowest_exponent} is not divisible by {n}")
    return s.power(Fraction(1, n))


def _invert_through(x: UniPoly, top: int) -> LaurentSeries:
    """t(w) with x(t(w)) = w^-N, coefficients known through w^top."""
    n = x.degree()
    # s = 1/t satisfies w = s / g(s) with g(s) = (s^n x(1/s))^(1/n)
    rev = [x.coeff(n - i) for i in range(n + 1)]
    need = top + 2  # s through w^need gives t through w^top
    g = unit_power(rev, Fraction(1, n), need)
    # Lagrange inversion: [w^k] s = (1/k) [s^(k-1)] g(s)^k
    s_coeffs = [Fraction(0)] * (need + 1)
    gk = [Fraction(1)] + [Fraction(0)] * (need - 1)
    for k in range(1, need + 1):
        gk = _mul_trunc(gk, g, need)
        s_coeffs[k] = gk[k - 1] / k
    s = LaurentSeries(0, s_coeffs, need, "w")
    return s.inverse()


def _mul_trunc(a, b, length):
    out = [Fraction(0)] * length
    for i, ca in enumerate(a[:length]):
        if ca:
            for j, cb in enumerate(b[: length - i]):
                if cb:
                    out[i + j] += ca * cb
    return out


def series_invert_param(x: UniPoly, order: int) -> LaurentSeries:
    """Invert ``x = w^-N`` for ``t`` with ``x`` monic of degree ``N``.

    Returns ``t(w) = w^-1 + a_0 + a_1 w + ...`` such that ``x(t(w))``
    equals ``w^-N`` through ``w^order``.
    """
    n = x.degree()
    if n < 1:
        raise ValueError("x must have degree >= 1")
    if x.lc() != 1:
        raise ValueError("x must be monic")
    top = order + n - 1
    if top < -1:
        raise ValueError(f"truncation order {order} leaves no terms")
    return _invert_through(x, top)


def eval_poly_series(p: UniPoly, s: LaurentSeries) -> LaurentSeries:
    """``p(s)`` for a univariate polynomial ``p``."""
    if p.is_zero():
        return LaurentSeries(s.truncation_order + 1, [], s.truncation_order, s.var)
    acc = None
    for e in range(p.degree(), -1, -1):
        c = p.coeff(e)
        if acc is None:
            acc = LaurentSeries(0, [c], _exact_top(s, p.degree()), s.var)
            continue
        acc = acc * s
        if c:
            acc = acc + c
    return acc


def _exact_top(s: LaurentSeries, degree: int) -> int:
    # a constant seeds Horner; give it enough room not to limit precision
    return s.truncation_order + abs(s.lowest_exponent) * (degree + 1) + 1
