"""Solve for parametrizations realizing a prescribed chain.

``x(t) = t^N + a_1 t^{N-1} + ... + a_N`` is found one coefficient at a time
for a fixed monic ``y(t)`` of degree ``M``.  For each unknown ``a_i`` the
staged reduction of :mod:`splicelink.recognize` is replayed with ``a_i``
carried as a first-order symbol (arithmetic modulo ``a^3``) and all lower
coefficients at zero.  The first leading coefficient that depends on the
symbol decides its fate:

* at a gap of the current semigroup it must vanish, which fixes ``a_i``;
* at a semigroup position it is free and is set by the policy;
* at a stage target ``p_k q_{k+1}...q_n`` it is the leading coefficient
  ``B_k``; it is free, or set so that ``B_k = 1`` by the builder.

A leading coefficient without the symbol sitting at a gap is a constant
nonzero equation (infeasible); a stage whose target coefficient vanishes is
degenerate.
"""

from __future__ import annotations

import dataclasses
import logging
import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod

from .algebra import UniPoly
from .errors import (Degenerate, Infeasible, InvalidChain, NotPositiveBraid, SpliceError,
                     TriangularityViolation)
from .recognize import ParamCurve, _PowerCache, _monomial_value, recognize
from .semigroup import constrained_representation
from .splice import (PuiseuxChain, d_values, is_positive_braid, is_suff_negative,
                     partial_ydegree, require_valid)

log = logging.getLogger(__name__)

DEFAULT_RETRIES = 8


class RoundTripFailure(SpliceError):
    code = "ROUNDTRIP_FAILED"


class Jet:
    """``c0 + c1 a + c2 a^2`` modulo ``a^3``."""

    __slots__ = ("c0", "c1", "c2")

    def __init__(self, c0=0, c1=0, c2=0):
        self.c0 = Fraction(c0)
        self.c1 = Fraction(c1)
        self.c2 = Fraction(c2)

    @classmethod
    def symbol(cls) -> "Jet":
        return cls(0, 1, 0)

    def is_constant(self) -> bool:
        return not self.c1 and not self.c2

    def __bool__(self):
        return bool(self.c0 or self.c1 or self.c2)

    def __eq__(self, other):
        if isinstance(other, Jet):
            return (self.c0, self.c1, self.c2) == (other.c0, other.c1, other.c2)
        return self.is_constant() and self.c0 == other

    def __hash__(self):
        return hash((self.c0, self.c1, self.c2))

    def __neg__(self):
        return Jet(-self.c0, -self.c1, -self.c2)

    def __add__(self, other):
        if isinstance(other, Jet):
            return Jet(self.c0 + other.c0, self.c1 + other.c1, self.c2 + other.c2)
        return Jet(self.c0 + other, self.c1, self.c2)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Jet):
            return Jet(self.c0 * other.c0,
                       self.c0 * other.c1 + self.c1 * other.c0,
                       self.c0 * other.c2 + self.c1 * other.c1 + self.c2 * other.c0)
        return Jet(self.c0 * other, self.c1 * other, self.c2 * other)

    __rmul__ = __mul__

    def inverse(self) -> "Jet":
        if not self.c0:
            raise ZeroDivisionError("jet with zero constant term is not invertible")
        i0 = 1 / self.c0
        i1 = -self.c1 * i0 * i0
        i2 = (self.c1 * self.c1 * i0 - self.c2) * i0 * i0
        return Jet(i0, i1, i2)

    def __truediv__(self, other):
        if isinstance(other, Jet):
            return self * other.inverse()
        return Jet(self.c0 / other, self.c1 / other, self.c2 / other)

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __repr__(self):
        return f"Jet({self.c0}, {self.c1}, {self.c2})"


def _depends(c) -> bool:
    return isinstance(c, Jet) and not c.is_constant()


def _const(c) -> Fraction:
    return c.c0 if isinstance(c, Jet) else Fraction(c)


# --- counts ------------------------------------------------------------------

def equation_count(chain: PuiseuxChain, k: int) -> int:
    """``-Δ_k q_{k+1}...q_n - 1``: coefficients forced to vanish for ``deg y_k``."""
    if not 2 <= k <= chain.n:
        raise IndexError(f"k = {k} outside 2..{chain.n}")
    return -chain.deltas()[k - 1] * prod(chain.qs[k:]) - 1


def thresholds(chain: PuiseuxChain) -> list[int]:
    """``e(1) = p_1 q_1...q_n``, ``e(k) = e(k-1) + (q_k - 1) p_k q_{k+1}...q_n``."""
    ps, qs = chain.ps, chain.qs
    out = [ps[0] * prod(qs)]
    for k in range(2, chain.n + 1):
        out.append(out[-1] + (qs[k - 1] - 1) * ps[k - 1] * prod(qs[k:]))
    return out


def gap_exponents(chain: PuiseuxChain, k: int) -> list[int]:
    """Exponents in the window of the equation count for ``k`` outside ``W_{k-1}``.

    The window runs strictly between ``deg y_k = p_k q_{k+1}...q_n`` and the a
    priori degree ``p_{k-1} q_{k-1} q_k...q_n``.
    """
    orders = chain.pole_orders()
    top = chain.qs[k - 2] * orders[k - 1]
    low = orders[k]
    gens = orders[:k]
    return [m for m in range(low + 1, top)
            if constrained_representation(m, gens) is None]


def expected_dimension(chain: PuiseuxChain) -> int:
    """``deg y + (deg x - 1 - #gap equations)``."""
    used = sum(len(gap_exponents(chain, k)) for k in range(2, chain.n + 1))
    return chain.ydegree + chain.degree - 1 - used


def counting_inequality(chain: PuiseuxChain) -> bool:
    """``q_1...q_n >= Σ_{k>=2} (-Δ_k) q_{k+1}...q_n + 1``."""
    deltas = chain.deltas()
    rhs = sum(-deltas[k - 1] * prod(chain.qs[k:]) for k in range(2, chain.n + 1)) + 1
    return chain.degree >= rhs


def telescoping_defect(chain: PuiseuxChain) -> int:
    """``a(n) = (q_1 + p_1) q_2...q_n + Σ_{k>=2} Δ_k q_{k+1}...q_n - d_n``; always 0."""
    p1, q1 = chain.pairs[0]
    deltas = chain.deltas()
    s = (q1 + p1) * prod(chain.qs[1:])
    s += sum(deltas[k - 1] * prod(chain.qs[k:]) for k in range(2, chain.n + 1))
    return s - d_values(chain)[-1]


@dataclass(frozen=True)
class ModuliSystem:
    chain: PuiseuxChain
    y_coeffs: tuple[Fraction, ...]
    unknown_indices: tuple[int, ...]
    e: tuple[int, ...]
    equations_per_stage: dict

    @classmethod
    def build(cls, chain: PuiseuxChain, y: UniPoly) -> "ModuliSystem":
        m = chain.ydegree
        return cls(chain,
                   tuple(y.coeff(m - j) for j in range(m + 1)),
                   tuple(range(1, chain.degree + 1)),
                   tuple(thresholds(chain)),
                   {k: equation_count(chain, k) for k in range(2, chain.n + 1)})


# --- guided reduction --------------------------------------------------------

@dataclass
class _Appearance:
    stage: int            # k of y_k whose degree is being forced (2..n)
    exponent: int
    kind: str             # "gap" | "free" | "target"
    coeff: Jet


def _guided(chain: PuiseuxChain, x: UniPoly, y: UniPoly):
    """Replay the staged reduction towards the chain's target degrees.

    Returns ``(appearance, leading)``; ``appearance`` is None when no
    coefficient depending on the symbol reached a leading position.
    """
    orders = chain.pole_orders()
    qs = chain.qs
    degs = list(orders[:2])
    caches = [_PowerCache(x), _PowerCache(y)]
    leading: dict[int, Fraction] = {}
    for k in range(1, chain.n):
        stage = k + 1
        target = orders[k + 1]
        e = caches[k][qs[k - 1]]
        while True:
            if not e or e.degree() < target:
                raise Degenerate(f"B_{stage} = 0: deg y_{stage} drops below {target}")
            deg = e.degree()
            c = e.lc()
            kind = None
            if deg == target:
                kind = "target"
            else:
                exps = constrained_representation(deg, degs)
                kind = "gap" if exps is None else "free"
            if _depends(c):
                return _Appearance(stage, deg, kind, c), leading
            if kind == "target":
                leading[stage] = _const(c)
                break
            if kind == "gap":
                raise Infeasible(
                    f"coefficient {_const(c)} of t^{deg} in y_{stage} lies at a gap "
                    f"of the semigroup generated by {degs} and cannot be cancelled")
            mono = _monomial_value(caches, exps)
            e = e - mono * (c / mono.lc())
        caches.append(_PowerCache(e))
        degs.append(target)
    return None, leading


# --- solver ------------------------------------------------------------------

@dataclass(frozen=True)
class SolveStep:
    index: int
    exponent: int
    action: str           # "solved" | "free" | "forced" | "fixed" | "unused"
    value: Fraction
    stage: int | None = None
    equation_exponent: int | None = None


@dataclass(frozen=True)
class ModuliSolveReport:
    chain: PuiseuxChain
    x: UniPoly
    y: UniPoly
    free_parameters: tuple[tuple[int, Fraction], ...]
    stage_leading_coeffs: dict
    degenerate: bool
    expected_dimension: int
    steps: tuple[SolveStep, ...] = ()
    seed: int | None = None
    attempts: int = 1
    threshold_checks: tuple = field(default=())

    def to_dict(self) -> dict:
        out = {
            "chain": self.chain.to_json(),
            "x": str(self.x),
            "y": str(self.y),
            "free_parameters": [[i, str(v)] for i, v in self.free_parameters],
            "stage_leading_coeffs": {f"B_{k}": str(v)
                                     for k, v in sorted(self.stage_leading_coeffs.items())},
            "degenerate": self.degenerate,
            "expected_dimension": self.expected_dimension,
            "solved": [[s.index, s.stage, s.equation_exponent, str(s.value)]
                       for s in self.steps if s.action in ("solved", "forced")],
            "attempts": self.attempts,
        }
        if self.seed is not None:
            out["seed"] = self.seed
        return out


class _Policy:
    def __init__(self, name: str, seed):
        if name not in ("zero", "random"):
            raise ValueError(f"unknown free policy {name!r}")
        self.name = name
        # separate stream from random_y so the same seed does not repeat values
        self.rng = random.Random(f"free:{seed}") if name == "random" else None

    def draw(self) -> Fraction:
        if self.rng is None:
            return Fraction(0)
        return Fraction(self.rng.randint(-3, 3))


def _solve(chain: PuiseuxChain, y: UniPoly, policy: _Policy, *,
           force_leading_one: bool = False, fixed: dict | None = None):
    n_deg = chain.degree
    fixed = fixed or {}
    values: dict[int, Fraction] = {n_deg: Fraction(1)}
    steps: list[SolveStep] = []
    y_jet = y.map_coeffs(Jet)
    for i in range(1, n_deg + 1):
        exp = n_deg - i
        if exp in fixed:
            values[exp] = Fraction(fixed[exp])
            steps.append(SolveStep(i, exp, "fixed", values[exp]))
            continue
        coeffs = {e: Jet(v) for e, v in values.items()}
        coeffs[exp] = Jet.symbol()
        app, _ = _guided(chain, UniPoly(coeffs), y_jet)
        if app is None:
            value = policy.draw()
            steps.append(SolveStep(i, exp, "unused", value))
        elif app.kind == "gap" or (app.kind == "target" and force_leading_one):
            c = app.coeff
            if c.c2 or not c.c1:
                raise TriangularityViolation(
                    f"a_{i} enters the coefficient of t^{app.exponent} in y_{app.stage} "
                    f"as {c.c0} + {c.c1} a + {c.c2} a^2, not linearly")
            goal = 0 if app.kind == "gap" else 1
            value = (goal - c.c0) / c.c1
            action = "solved" if app.kind == "gap" else "forced"
            steps.append(SolveStep(i, exp, action, value, app.stage, app.exponent))
        else:
            value = policy.draw()
            if app.kind == "target":
                # a free unknown at the target must avoid the root of B_k
                c = app.coeff
                while not c.c0 + c.c1 * value + c.c2 * value * value:
                    value += 1
            steps.append(SolveStep(i, exp, "free", value, app.stage, app.exponent))
        values[exp] = value
    x = UniPoly(values)
    app, leading = _guided(chain, x, y)
    return x, leading, steps


def _check_threshold(chain: PuiseuxChain, steps) -> tuple:
    """``(index, stage, m, e(k) - m)`` for each solved step; diagnostic only."""
    e = thresholds(chain)
    return tuple((s.index, s.stage, s.equation_exponent, e[s.stage - 1] - s.equation_exponent)
                 for s in steps if s.action in ("solved", "forced"))


def solve_for_x(chain: PuiseuxChain, y: UniPoly, free_policy: str = "zero",
                seed: int | None = None, *, force_leading_one: bool = False,
                fixed: dict | None = None, check_suff_negative: bool = True,
                verify: bool = True) -> ModuliSolveReport:
    """Solve for monic ``x`` of degree ``q_1...q_n`` realizing ``chain`` with ``y``.

    Raises :class:`Infeasible` or :class:`Degenerate`; the latter is also
    reported as ``degenerate=True`` on the exception's ``report`` attribute.
    """
    require_valid(chain)
    if check_suff_negative and not is_suff_negative(chain):
        raise InvalidChain(f"{chain} is not sufficiently negative")
    if y.degree() != chain.ydegree or not y.is_monic():
        raise ValueError(f"y must be monic of degree {chain.ydegree}")
    policy = _Policy(free_policy, seed)
    x, leading, steps = _solve(chain, y, policy, force_leading_one=force_leading_one,
                               fixed=fixed)
    if verify:
        got = recognize(ParamCurve(x, y)).chain
        if got != chain:
            raise RoundTripFailure(f"solved curve recognizes as {got}, expected {chain}")
    free = tuple((s.index, s.value) for s in steps if s.action in ("free", "unused"))
    return ModuliSolveReport(
        chain=chain, x=x, y=y, free_parameters=free, stage_leading_coeffs=leading,
        degenerate=False, expected_dimension=expected_dimension(chain),
        steps=tuple(steps), seed=seed if free_policy == "random" else None,
        threshold_checks=_check_threshold(chain, steps))


def random_y(chain: PuiseuxChain, seed: int | None) -> UniPoly:
    """``t^M`` plus a tail of small integers drawn from ``seed``."""
    m = chain.ydegree
    rng = random.Random(seed)
    coeffs = {m: 1}
    for e in range(m):
        coeffs[e] = rng.randint(-3, 3)
    return UniPoly(coeffs)


def max_retries() -> int:
    raw = os.environ.get("CAI_MAX_RETRIES")
    if raw is None:
        return DEFAULT_RETRIES
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"CAI_MAX_RETRIES must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError("CAI_MAX_RETRIES must be at least 1")
    return value


def solve_with_retries(chain: PuiseuxChain, y: UniPoly | None = None,
                       free_policy: str = "zero", seed: int = 0,
                       retries: int | None = None) -> ModuliSolveReport:
    """Retry degenerate solves with fresh seeds.

    When ``y`` is given the first attempt uses it; later attempts draw a
    random tail.  Infeasibility is raised at once.
    """
    retries = max_retries() if retries is None else retries
    last = None
    for attempt in range(retries):
        s = seed + attempt
        yy = y if (y is not None and attempt == 0) else random_y(chain, s)
        policy = free_policy if attempt == 0 else "random"
        try:
            report = solve_for_x(chain, yy, policy, s)
        except Degenerate as exc:
            log.info("attempt %d degenerate: %s", attempt, exc)
            last = exc
            continue
        used_random = attempt > 0 or y is None or free_policy == "random"
        return dataclasses.replace(report, attempts=attempt + 1,
                                   seed=s if used_random else None)
    raise Degenerate(f"still degenerate after {retries} attempts: {last}")


# --- positive braid builder -------------------------------------------------

def build_positive_braid_curve(chain: PuiseuxChain, seed: int | None = None) -> ParamCurve:
    """Inductive construction of a curve realizing a positive-braid chain.

    Starting from ``(t^{q_1}, t^{p_1})`` each extension substitutes
    ``t -> t^{q_{k+1}}`` and solves for a perturbation of ``x`` below degree
    ``(d_k - p_1 q_2...q_k) q_{k+1}``, forcing every stage leading
    coefficient to 1.
    """
    require_valid(chain)
    if not is_positive_braid(chain):
        raise NotPositiveBraid(f"{chain} is not a positive braid")
    policy_name = "zero" if seed is None else "random"
    p1, q1 = chain.pairs[0]
    x = UniPoly({q1: 1})
    y = UniPoly({p1: 1})
    ds = d_values(chain)
    for k in range(1, chain.n):
        q = chain.qs[k]
        prefix = chain.prefix(k + 1)
        bound = (ds[k - 1] - partial_ydegree(chain, k)) * q
        lifted = x.shift_exponents(q)
        y = y.shift_exponents(q)
        fixed = {e: lifted.coeff(e) for e in range(max(bound, 0), prefix.degree)}
        policy = _Policy(policy_name, None if seed is None else seed + k)
        x, _, _ = _solve(prefix, y, policy, force_leading_one=True, fixed=fixed)
    curve = ParamCurve(x, y)
    got = recognize(curve).chain
    if got != chain:
        raise RoundTripFailure(f"built curve recognizes as {got}, expected {chain}")
    return curve
