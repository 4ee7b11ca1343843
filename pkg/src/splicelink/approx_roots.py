"""Approximate roots of a monic-in-``y`` polynomial and their pole orders.

The approximate ``Q``-th root of ``P`` (monic of ``y``-degree ``D``) is the
polynomial part, in ``y``, of the formal expansion of ``P^{1/Q}`` in powers
of ``1/y``.  Its coefficients ``b_i(x)`` come out of the Miller recurrence
run with polynomial-in-``x`` coefficients; no division by ``x`` ever
occurs, so they stay polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod

from .algebra import TowerPoly, UniPoly, poly_eval_composed
from .errors import PoleOrderMismatch
from .splice import PuiseuxChain

XY = ("x", "y")


def y_coefficients(p: TowerPoly) -> dict[int, UniPoly]:
    """``{j: c_j(x)}`` with ``p = Σ c_j(x) y^j``."""
    out: dict[int, dict[int, Fraction]] = {}
    for (i, j), c in p.terms.items():
        out.setdefault(j, {})[i] = c
    return {j: UniPoly(cs, "x") for j, cs in out.items()}


def from_y_coefficients(coeffs: dict[int, UniPoly]) -> TowerPoly:
    terms = {}
    for j, c in coeffs.items():
        for i, v in c.terms():
            terms[(i, j)] = v
    return TowerPoly(XY, terms)


def approximate_root(p: TowerPoly, q: int) -> TowerPoly:
    """The monic ``R`` with ``deg_y(P - R^Q) < deg_y P - deg_y R``."""
    if q <= 0:
        raise ValueError("Q must be positive")
    coeffs = y_coefficients(p)
    d = max(coeffs, default=-1)
    if d < 0:
        raise ValueError("zero polynomial")
    if d % q:
        raise ValueError(f"deg_y P = {d} is not divisible by {q}")
    if coeffs[d] != UniPoly.constant(1, "x"):
        raise ValueError("P must be monic in y")
    r = d // q
    zero = UniPoly({}, "x")
    f = [coeffs.get(d - i, zero) for i in range(r + 1)]
    alpha = Fraction(1, q)
    g = [UniPoly.constant(1, "x")]
    for k in range(1, r + 1):
        s = zero
        for j in range(1, k + 1):
            if f[j] and g[k - j]:
                s = s + f[j] * g[k - j] * ((alpha + 1) * j - k)
        g.append(s / k)
    return from_y_coefficients({r - k: g[k] for k in range(r + 1)})


def y_degree(p: TowerPoly) -> int:
    return p.degree_in(1)


@dataclass(frozen=True)
class ApproxRootSet:
    """``roots[k-1] = P_k``; ``P_1`` has ``y``-degree 1."""

    roots: tuple[TowerPoly, ...]
    target: TowerPoly
    chain: PuiseuxChain

    def to_dict(self) -> dict:
        return {"chain": self.chain.to_json(),
                "roots": [str(r) for r in self.roots]}


def approximate_roots(p: TowerPoly, chain: PuiseuxChain) -> ApproxRootSet:
    """``P_k`` = approximate ``q_k...q_n``-th root of ``P`` for ``k = 1..n``."""
    qs = chain.qs
    roots = tuple(approximate_root(p, prod(qs[k - 1:])) for k in range(1, chain.n + 1))
    return ApproxRootSet(roots, p, chain)


@dataclass(frozen=True)
class PoleOrderRow:
    name: str
    expected: int
    actual: int

    @property
    def ok(self) -> bool:
        return self.expected == self.actual


@dataclass(frozen=True)
class PoleOrderReport:
    rows: tuple[PoleOrderRow, ...]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows)

    def orders(self) -> list[int]:
        return [r.actual for r in self.rows]

    def to_dict(self) -> dict:
        return {"ok": self.ok,
                "rows": [{"name": r.name, "expected": r.expected, "actual": r.actual,
                          "ok": r.ok} for r in self.rows]}


def verify_pole_orders(roots: ApproxRootSet, x: UniPoly, y: UniPoly,
                       strict: bool = True) -> PoleOrderReport:
    """Compare ``deg_t`` of ``x, P_1, ..., P_n`` on the curve with ``l(C_k, K)``.

    ``P_1`` is ``y`` up to a constant shift so its row is labelled ``y``.
    """
    expected = roots.chain.pole_orders()
    rows = [PoleOrderRow("x", expected[0], x.degree())]
    for k, pk in enumerate(roots.roots, start=1):
        name = "y" if k == 1 else f"P_{k}"
        actual = poly_eval_composed(pk, [x, y]).degree()
        rows.append(PoleOrderRow(name, expected[k], actual))
    report = PoleOrderReport(tuple(rows))
    if strict and not report.ok:
        bad = [f"{r.name}: expected {r.expected}, got {r.actual}" for r in rows if not r.ok]
        raise PoleOrderMismatch("; ".join(bad))
    return report
