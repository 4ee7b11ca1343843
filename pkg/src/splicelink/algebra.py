"""Exact polynomial arithmetic over the rationals.

Two sparse representations are provided:

* :class:`UniPoly` -- univariate, ``{exponent: coefficient}``; used for the
  parametrizations ``x(t), y(t)`` and for coefficient polynomials ``b_i(x)``.
* :class:`TowerPoly` -- multivariate over an ordered variable tuple such as
  ``("x", "y", "y2", "y3")``, ``{exponent tuple: coefficient}``.

Coefficients default to :class:`fractions.Fraction`.  Anything supporting
ring operations and truthiness can be used instead (the moduli solver runs
the same code over truncated polynomials in one unknown).
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import ParseError

#: degree reported for the zero polynomial
ZERO_DEGREE = -1


def _coerce(c):
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    return c


def _is_scalar(c) -> bool:
    return not isinstance(c, (UniPoly, TowerPoly))


def format_rational(c) -> str:
    return str(Fraction(c))


class UniPoly:
    """Immutable sparse univariate polynomial."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Mapping[int, object] | None = None, var: str = "t"):
        clean = {}
        for e, c in (coeffs or {}).items():
            if e < 0:
                raise ValueError(f"negative exponent {e}")
            c = _coerce(c)
            if c:
                clean[int(e)] = c
        self.coeffs = clean
        self.var = var

    # constructors -----------------------------------------------------
    @classmethod
    def monomial(cls, exponent: int, coeff=1, var: str = "t") -> "UniPoly":
        return cls({exponent: coeff}, var)

    @classmethod
    def constant(cls, c, var: str = "t") -> "UniPoly":
        return cls({0: c}, var)

    @classmethod
    def from_dense(cls, coeffs: Sequence, var: str = "t") -> "UniPoly":
        """Build from ``[c_0, c_1, ...]``."""
        return cls({i: c for i, c in enumerate(coeffs)}, var)

    @classmethod
    def parse(cls, text: str, var: str | None = None) -> "UniPoly":
        return parse_poly(text, var)

    # basic queries ----------------------------------------------------
    def degree(self) -> int:
        return max(self.coeffs) if self.coeffs else ZERO_DEGREE

    def valuation(self) -> int:
        return min(self.coeffs) if self.coeffs else ZERO_DEGREE

    def lc(self):
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[self.degree()]

    def coeff(self, e: int):
        return self.coeffs.get(e, Fraction(0))

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.lc() == 1

    def terms(self):
        """(exponent, coefficient) pairs in decreasing exponent order."""
        return sorted(self.coeffs.items(), reverse=True)

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    # arithmetic -------------------------------------------------------
    def _new(self, coeffs):
        p = UniPoly.__new__(UniPoly)
        p.coeffs = coeffs
        p.var = self.var
        return p

    def __neg__(self):
        return self._new({e: -c for e, c in self.coeffs.items()})

    def __add__(self, other):
        if _is_scalar(other):
            other = UniPoly.constant(other, self.var)
        elif not isinstance(other, UniPoly):
            return NotImplemented
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = out.get(e)
            s = c if s is None else s + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return self._new(out)

    __radd__ = __add__

    def __sub__(self, other):
        if _is_scalar(other):
            other = UniPoly.constant(other, self.var)
        elif not isinstance(other, UniPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if _is_scalar(other):
            other = _coerce(other)
            if not other:
                return self._new({})
            out = {}
            for e, c in self.coeffs.items():
                v = c * other
                if v:
                    out[e] = v
            return self._new(out)
        if not isinstance(other, UniPoly):
            return NotImplemented
        out: dict = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                s = out.get(e)
                out[e] = c1 * c2 if s is None else s + c1 * c2
        return self._new({e: c for e, c in out.items() if c})

    def __rmul__(self, other):
        return self * other

    def __truediv__(self, scalar):
        scalar = _coerce(scalar)
        return self * (1 / scalar)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = UniPoly.constant(1, self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if _is_scalar(other):
            other = _coerce(other)
            if not other:
                return not self.coeffs
            return self.coeffs == {0: other}
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    # evaluation -------------------------------------------------------
    def __call__(self, value):
        """Horner evaluation at a scalar or at any ring element."""
        if not self.coeffs:
            return value * 0
        d = self.degree()
        acc = None
        for e in range(d, -1, -1):
            c = self.coeffs.get(e)
            if acc is None:
                acc = c
                continue
            acc = acc * value
            if c is not None:
                acc = acc + c
        return acc

    def compose(self, other: "UniPoly") -> "UniPoly":
        if not self.coeffs:
            return UniPoly({}, other.var)
        result = self(other)
        if _is_scalar(result):
            return UniPoly.constant(result, other.var)
        return result

    def map_coeffs(self, fn) -> "UniPoly":
        return UniPoly({e: fn(c) for e, c in self.coeffs.items()}, self.var)

    def shift_exponents(self, factor: int) -> "UniPoly":
        """p(t) -> p(t^factor)."""
        return self._new({e * factor: c for e, c in self.coeffs.items()})

    def derivative(self) -> "UniPoly":
        return UniPoly({e - 1: c * e for e, c in self.coeffs.items() if e}, self.var)

    def monic(self) -> "UniPoly":
        return self / self.lc()

    # printing ---------------------------------------------------------
    def __str__(self):
        return format_terms(
            ((c, {self.var: e} if e else {}) for e, c in self.terms()))

    def __repr__(self):
        return f"UniPoly({str(self)!r})"


def format_terms(terms: Iterable) -> str:
    """Render ``(coeff, {var: exponent})`` pairs in the polynomial grammar."""
    pieces = []
    for c, powers in terms:
        c = Fraction(c)
        mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in powers.items() if e)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        pieces.append((sign, body))
    if not pieces:
        return "0"
    first_sign, first = pieces[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


_TERM = re.compile(
    r"""^(?:(?P<num>\d+(?:/\d+)?)(?:\s*\*\s*(?P<v1>[A-Za-z_]\w*)(?:\s*\^\s*(?P<e1>\d+))?)?
        |(?P<v2>[A-Za-z_]\w*)(?:\s*\^\s*(?P<e2>\d+))?)$""",
    re.VERBOSE,
)


def parse_poly(text: str, var: str | None = None) -> UniPoly:
    """Parse ``"t^12 + t"`` or ``"-3/4*t^2 + 1"`` into a :class:`UniPoly`.

    The variable name is taken from the text (default ``t``); mixing
    variable names is an error.
    """
    s = text.strip()
    if not s:
        raise ParseError("empty polynomial")
    chunks = re.split(r"([+-])", s)
    coeffs: dict[int, Fraction] = {}
    sign = 1
    seen_var = var
    need_operator = False
    for raw in chunks:
        chunk = raw.strip()
        if chunk in ("+", "-"):
            if chunk == "-":
                sign = -sign
            need_operator = False
            continue
        if not chunk:
            continue
        if need_operator:
            raise ParseError(f"missing operator before {chunk!r} in {text!r}")
        m = _TERM.match(chunk)
        if not m:
            raise ParseError(f"cannot parse term {chunk!r} in {text!r}")
        if m.group("num") is not None:
            c = Fraction(m.group("num"))
            v = m.group("v1")
            e = int(m.group("e1")) if m.group("e1") else (1 if v else 0)
        else:
            c = Fraction(1)
            v = m.group("v2")
            e = int(m.group("e2")) if m.group("e2") else 1
        if v is not None:
            if seen_var is None:
                seen_var = v
            elif v != seen_var:
                raise ParseError(f"unexpected variable {v!r} (expected {seen_var!r})")
        coeffs[e] = coeffs.get(e, Fraction(0)) + sign * c
        sign = 1
        need_operator = True
    if not need_operator:
        raise ParseError(f"dangling operator in {text!r}")
    return UniPoly(coeffs, seen_var or "t")


class TowerPoly:
    """Immutable sparse multivariate polynomial over named variables."""

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[tuple, object] | None = None):
        self.variables = tuple(variables)
        n = len(self.variables)
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(v) for v in e)
            if len(e) != n:
                raise ValueError(f"exponent {e} does not match variables {self.variables}")
            c = _coerce(c)
            if c:
                clean[e] = c
        self.terms = clean

    @classmethod
    def variable(cls, variables: Sequence[str], name: str) -> "TowerPoly":
        variables = tuple(variables)
        i = variables.index(name)
        e = [0] * len(variables)
        e[i] = 1
        return cls(variables, {tuple(e): 1})

    @classmethod
    def monomial(cls, variables: Sequence[str], exponents: Sequence[int], coeff=1) -> "TowerPoly":
        return cls(variables, {tuple(exponents): coeff})

    @classmethod
    def constant(cls, variables: Sequence[str], c) -> "TowerPoly":
        return cls(variables, {(0,) * len(tuple(variables)): c})

    def _new(self, terms):
        p = TowerPoly.__new__(TowerPoly)
        p.variables = self.variables
        p.terms = terms
        return p

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def coeff(self, exponents) -> Fraction:
        return self.terms.get(tuple(exponents), Fraction(0))

    def degree_in(self, name_or_index) -> int:
        i = name_or_index if isinstance(name_or_index, int) else self.variables.index(name_or_index)
        return max((e[i] for e in self.terms), default=ZERO_DEGREE)

    def extend(self, variables: Sequence[str]) -> "TowerPoly":
        """Re-home onto a longer variable tuple that starts with ours."""
        variables = tuple(variables)
        if variables[: len(self.variables)] != self.variables:
            raise ValueError("variables must extend the current tuple")
        pad = (0,) * (len(variables) - len(self.variables))
        return TowerPoly(variables, {e + pad: c for e, c in self.terms.items()})

    def _check(self, other):
        if other.variables != self.variables:
            raise ValueError(f"variable mismatch {self.variables} vs {other.variables}")

    def __neg__(self):
        return self._new({e: -c for e, c in self.terms.items()})

    def __add__(self, other):
        if _is_scalar(other):
            other = TowerPoly.constant(self.variables, other)
        elif not isinstance(other, TowerPoly):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            s = c if s is None else s + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return self._new(out)

    __radd__ = __add__

    def __sub__(self, other):
        if _is_scalar(other):
            other = TowerPoly.constant(self.variables, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if _is_scalar(other):
            other = _coerce(other)
            return self._new({e: c * other for e, c in self.terms.items() if c * other})
        if not isinstance(other, TowerPoly):
            return NotImplemented
        self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e)
                out[e] = c1 * c2 if s is None else s + c1 * c2
        return self._new({e: c for e, c in out.items() if c})

    def __rmul__(self, other):
        return self * other

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = TowerPoly.constant(self.variables, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, TowerPoly):
            return self.variables == other.variables and self.terms == other.terms
        if _is_scalar(other):
            other = _coerce(other)
            if not other:
                return not self.terms
            return self.terms == {(0,) * len(self.variables): other}
        return NotImplemented

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def evaluate(self, bindings: Sequence):
        """Substitute each variable by the matching binding (any ring elements)."""
        if len(bindings) != len(self.variables):
            raise ValueError(
                f"expected {len(self.variables)} bindings, got {len(bindings)}")
        powers: list[dict[int, object]] = [{} for _ in bindings]

        def power(i, k):
            cache = powers[i]
            if k not in cache:
                if k == 1:
                    cache[k] = bindings[i]
                else:
                    half = power(i, k // 2)
                    val = half * half
                    if k % 2:
                        val = val * bindings[i]
                    cache[k] = val
            return cache[k]

        acc = None
        for e, c in self.terms.items():
            term = None
            for i, k in enumerate(e):
                if k:
                    term = power(i, k) if term is None else term * power(i, k)
            term = c if term is None else term * c
            acc = term if acc is None else acc + term
        if acc is None:
            return bindings[0] * 0
        if _is_scalar(acc) and isinstance(bindings[0], (UniPoly, TowerPoly)):
            return bindings[0] * 0 + acc
        return acc

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0], reverse=True)

    def __str__(self):
        return format_terms(
            (c, dict(zip(self.variables, e))) for e, c in self.sorted_terms())

    def __repr__(self):
        return f"TowerPoly({self.variables!r}, {str(self)!r})"


def poly_eval_composed(p: TowerPoly, bindings: Sequence[UniPoly]) -> UniPoly:
    """Substitute univariate polynomials in ``t`` for the variables of ``p``."""
    if len(bindings) != len(p.variables):
        raise ValueError(
            f"arity mismatch: {len(p.variables)} variables, {len(bindings)} bindings")
    out = p.evaluate(list(bindings))
    if _is_scalar(out):
        var = bindings[0].var if bindings else "t"
        return UniPoly.constant(out, var)
    return out


def bivariate(terms: Mapping[tuple, object], names=("x", "y")) -> TowerPoly:
    return TowerPoly(names, terms)
