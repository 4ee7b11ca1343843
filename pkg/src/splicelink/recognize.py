"""Recognize the splice diagram at infinity of a polynomial parametrization.

The staged degree reduction works on ``t``-degrees (pole orders at
infinity).  Stage ``k`` starts from ``y_k^{q_k}`` and repeatedly cancels the
leading term with a monomial ``x^{a_0} y_1^{a_1} ... y_k^{a_k}`` whose
exponents are the semigroup normal form of the current degree
(``a_i < q_i``).  When the degree leaves the semigroup generated so far,
the expression becomes the next tower variable ``y_{k+1}``.  When the gcd
of the pole orders has dropped to 1 the expression reduces to zero and
is the defining polynomial.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .algebra import TowerPoly, UniPoly, parse_poly, poly_eval_composed
from .errors import (ConstantCurve, ExpansionTruncated, InternalGapHit, LineCurve,
                     NonBirational)
from .semigroup import constrained_representation
from .series import LaurentSeries, eval_poly_series, series_invert_param
from .splice import PuiseuxChain

log = logging.getLogger(__name__)

XY = ("x", "y")


@dataclass(frozen=True)
class ParamCurve:
    x: UniPoly
    y: UniPoly

    @classmethod
    def parse(cls, x: str, y: str) -> "ParamCurve":
        return cls(parse_poly(x, "t"), parse_poly(y, "t"))

    @property
    def degrees(self) -> tuple[int, int]:
        return self.x.degree(), self.y.degree()

    def in_general_position(self) -> bool:
        n, m = self.degrees
        return (self.x.is_monic() and self.y.is_monic() and n > m >= 1
                and n % m != 0)

    def to_dict(self) -> dict:
        return {"x": str(self.x), "y": str(self.y)}


@dataclass(frozen=True)
class PreprocessResult:
    original: ParamCurve
    curve: ParamCurve | None
    log: tuple[str, ...]
    is_line: bool
    # current coordinates as polynomials in the original ones (X, Y)
    coordinate_map: tuple[TowerPoly, TowerPoly]


def preprocess(curve: ParamCurve) -> PreprocessResult:
    """Move the curve to coordinates with monic ``x, y`` and ``deg x > deg y``.

    Steps: rescale each coordinate to be monic; swap when ``deg y > deg x``;
    when one degree divides the other, subtract the matching power of the
    lower-degree coordinate.  Each step lowers ``(max deg, min deg)``
    lexicographically.  A coordinate that becomes constant means the curve is
    a line.
    """
    x, y = curve.x, curve.y
    if x.degree() < 1 and y.degree() < 1:
        raise ConstantCurve("both coordinates are constant")
    X = TowerPoly.variable(("X", "Y"), "X")
    Y = TowerPoly.variable(("X", "Y"), "Y")
    fx, fy = X, Y
    moves: list[str] = []
    while True:
        if x.degree() < 1 or y.degree() < 1:
            moves.append("line: a coordinate is constant")
            return PreprocessResult(curve, None, tuple(moves), True, (fx, fy))
        if x.lc() != 1:
            c = x.lc()
            x, fx = x / c, fx * (1 / c)
            moves.append(f"x <- x/({c})")
        if y.lc() != 1:
            c = y.lc()
            y, fy = y / c, fy * (1 / c)
            moves.append(f"y <- y/({c})")
        n, m = x.degree(), y.degree()
        if m > n:
            x, y, fx, fy = y, x, fy, fx
            moves.append("swap x <-> y")
            continue
        if n % m == 0:
            k = n // m
            x = x - y ** k
            fx = fx - fy ** k
            moves.append(f"x <- x - y^{k}")
            continue
        break
    return PreprocessResult(curve, ParamCurve(x, y), tuple(moves), False, (fx, fy))


@dataclass(frozen=True)
class RecognitionResult:
    chain: PuiseuxChain
    curve: ParamCurve
    tower: tuple[TowerPoly, ...]
    defining: TowerPoly
    pole_orders: tuple[int, ...]
    stage_traces: tuple[tuple[int, ...], ...]
    preprocessing_log: tuple[str, ...]
    original: ParamCurve
    coordinate_map: tuple[TowerPoly, TowerPoly]

    def stage_degrees(self) -> list[int]:
        """``deg_t y_k`` for ``k = 2..n``."""
        return list(self.pole_orders[2:])

    def defining_original(self) -> TowerPoly:
        """The defining polynomial in the caller's coordinates."""
        fx, fy = self.coordinate_map
        out = self.defining.evaluate([fx, fy])
        return TowerPoly(XY, {e: c for e, c in out.terms.items()})

    def defining_terms(self) -> list[tuple[int, int, Fraction]]:
        return [(i, j, c) for (i, j), c in self.defining.sorted_terms()]


class _PowerCache:
    def __init__(self, base):
        self.base = base
        self.cache = {0: None, 1: base}

    def __getitem__(self, k):
        if k not in self.cache:
            half = self[k // 2]
            val = half * half
            if k % 2:
                val = val * self.base
            self.cache[k] = val
        return self.cache[k]


def _monomial_value(caches, exps):
    out = None
    for cache, a in zip(caches, exps):
        if a:
            out = cache[a] if out is None else out * cache[a]
    if out is None:
        out = caches[0][1] * 0 + 1
    return out


def _tower_names(k: int) -> tuple[str, ...]:
    return ("x", "y") + tuple(f"y{i}" for i in range(2, k + 1))


def recognize(curve: ParamCurve, *, verify: bool = True) -> RecognitionResult:
    """Find the chain, the tower ``y_2..y_n`` and the defining polynomial."""
    pre = preprocess(curve)
    if pre.is_line:
        raise LineCurve("the parametrization is equivalent to a line: "
                        + "; ".join(pre.log))
    x, y = pre.curve.x, pre.curve.y
    n_deg, m_deg = x.degree(), y.degree()
    evals = [x, y]
    caches = [_PowerCache(x), _PowerCache(y)]
    degs = [n_deg, m_deg]
    tower: list[TowerPoly] = []
    traces: list[tuple[int, ...]] = []
    pairs: list[tuple[int, int]] = []
    g_prev, g = n_deg, gcd(n_deg, m_deg)
    k = 1
    while True:
        q = g_prev // g
        pairs.append((degs[k] // g, q))
        names = _tower_names(k)
        start = [0] * (k + 1)
        start[k] = q
        expr = TowerPoly.monomial(names, start)
        e = caches[k][q]
        trace = [e.degree()]
        while e:
            deg = e.degree()
            exps = constrained_representation(deg, degs)
            if exps is None:
                if g == 1 or deg % g == 0:
                    raise InternalGapHit(
                        f"coefficient of t^{deg} survives at a gap of the "
                        f"semigroup generated by {degs}")
                break
            mono = _monomial_value(caches, exps)
            lam = e.lc() / mono.lc()
            e = e - mono * lam
            expr = expr - TowerPoly.monomial(names, exps, lam)
            trace.append(e.degree())
        traces.append(tuple(trace))
        if not e:
            if g > 1:
                raise NonBirational(
                    f"reduction reached zero while the pole orders {degs} still "
                    f"share the factor {g}")
            break
        deg = e.degree()
        log.debug("stage %d closed at degree %d", k, deg)
        tower.append(expr)
        evals.append(e)
        caches.append(_PowerCache(e))
        degs.append(deg)
        g_prev, g = g, gcd(g, deg)
        k += 1

    # expand the tower in (x, y)
    forms = [TowerPoly.variable(XY, "x"), TowerPoly.variable(XY, "y")]
    for yk in tower:
        forms.append(yk.evaluate(forms[: len(yk.variables)]))
    defining = expr.evaluate(forms[: len(expr.variables)])
    defining = TowerPoly(XY, defining.terms)
    chain = PuiseuxChain(pairs)
    result = RecognitionResult(
        chain=chain, curve=pre.curve, tower=tuple(tower), defining=defining,
        pole_orders=tuple(degs), stage_traces=tuple(traces),
        preprocessing_log=pre.log, original=curve, coordinate_map=pre.coordinate_map)
    if verify:
        residual = poly_eval_composed(defining, [x, y])
        if not residual.is_zero():
            raise AssertionError(f"defining polynomial does not vanish: {residual}")
        top = defining.coeff((0, n_deg))
        if top != 1:
            raise AssertionError(f"coefficient of y^{n_deg} is {top}, expected 1")
    return result


# --- expansion at infinity -------------------------------------------------

@dataclass(frozen=True)
class PuiseuxExpansion:
    """``y`` as a Laurent series in ``w`` where ``x = w^{-N}``."""

    series: LaurentSeries
    degree: int
    jump_positions: tuple[int, ...]
    exponent_jumps: tuple[int, ...]
    unit_parts: tuple[UniPoly, ...]
    truncation_order: int

    def chain(self) -> PuiseuxChain:
        """Chain read off the expansion through ``Δ_k = e_k``."""
        n = self.degree
        gs = [n]
        for pos in self.jump_positions:
            gs.append(gcd(gs[-1], pos))
        qs = [gs[i] // gs[i + 1] for i in range(len(self.jump_positions))]
        ps = [-self.jump_positions[0] // gs[1]]
        for k, e in enumerate(self.exponent_jumps, start=1):
            ps.append(e + ps[k - 1] * qs[k - 1] * qs[k])
        return PuiseuxChain(zip(ps, qs))

    def to_dict(self) -> dict:
        return {
            "jump_positions": list(self.jump_positions),
            "exponent_jumps": list(self.exponent_jumps),
            "unit_parts": [str(r) for r in self.unit_parts],
            "truncation_order": self.truncation_order,
        }


def _scan_jumps(ys: LaurentSeries, n: int):
    positions = []
    g = n
    for e, _ in ys.items():
        if gcd(g, e) < g:
            positions.append(e)
            g = gcd(g, e)
            if g == 1:
                break
    return positions, g


def expand_at_infinity(curve: ParamCurve, order: int | None = None,
                       max_attempts: int = 8) -> PuiseuxExpansion:
    """Expand ``y`` at the place at infinity and read off the Puiseux jumps.

    ``order`` is the highest power of ``w`` kept in ``y(w)``.  With an
    explicit order a missing jump raises :class:`ExpansionTruncated`; with
    ``order=None`` the order starts at ``N (1 + Σ|Δ|) + N`` and doubles.
    """
    if not curve.in_general_position():
        pre = preprocess(curve)
        if pre.is_line:
            raise LineCurve("the parametrization is equivalent to a line")
        curve = pre.curve
    if order is not None:
        return _expand(curve, order)
    n = curve.x.degree()
    current = 2 * n
    last_error = None
    for _ in range(max_attempts):
        try:
            return _expand(curve, current)
        except ExpansionTruncated as exc:
            last_error = exc
            jumps = exc.jumps
            guess = n * (1 + sum(abs(d) for d in jumps)) + n
            current = max(2 * current, guess)
    raise last_error


def _expand(curve: ParamCurve, order: int) -> PuiseuxExpansion:
    x, y = curve.x, curve.y
    n, m = x.degree(), y.degree()
    t = series_invert_param(x, order + m - n)
    ys = eval_poly_series(y, t).truncate(order)
    positions, g = _scan_jumps(ys, n)
    gs = [n]
    for pos in positions:
        gs.append(gcd(gs[-1], pos))
    jumps = [-(positions[k] - positions[k - 1]) // gs[k + 1]
             for k in range(1, len(positions))]
    if g != 1:
        raise ExpansionTruncated(
            f"only {len(positions)} jump(s) visible through w^{order}", jumps)
    units = []
    for k, pos in enumerate(positions):
        step = gs[k + 1]
        end = positions[k + 1] if k + 1 < len(positions) else order + 1
        coeffs = {}
        for e in range(pos, end, step):
            if e <= order:
                coeffs[(e - pos) // step] = ys.coeff(e)
        units.append(UniPoly(coeffs, "u"))
    return PuiseuxExpansion(ys, n, tuple(positions), tuple(jumps), tuple(units), order)
