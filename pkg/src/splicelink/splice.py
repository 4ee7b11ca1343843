"""Splice diagrams of knots at infinity as chains of Puiseux pairs.

A chain ``[(p_1, q_1), ..., (p_n, q_n)]`` describes the iterated cabling of
torus knots that forms the link at infinity of an irreducible curve with
one place at infinity.  The root virtual component ``C_0`` has index 0 and
plays the role of ``p_0 = 1`` in linking numbers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod
from typing import Iterable, Sequence

from .errors import InvalidChain
from .semigroup import level_generators, member

KNOT = "K"


@dataclass(frozen=True)
class PuiseuxChain:
    pairs: tuple[tuple[int, int], ...]

    def __init__(self, pairs: Iterable[Sequence[int]]):
        pairs = tuple((int(p), int(q)) for p, q in pairs)
        if not pairs:
            raise InvalidChain("a chain needs at least one Puiseux pair")
        object.__setattr__(self, "pairs", pairs)

    @classmethod
    def from_json(cls, data) -> "PuiseuxChain":
        if isinstance(data, str):
            data = json.loads(data)
        if isinstance(data, dict):
            data = data.get("pairs")
        if not isinstance(data, list) or not all(
                isinstance(pq, list) and len(pq) == 2
                and all(isinstance(v, int) for v in pq) for pq in data):
            raise InvalidChain(f"expected a list of [p, q] integer pairs, got {data!r}")
        return cls(data)

    def to_json(self) -> list:
        """``[[p_1, q_1], ...]``, the same shape :meth:`from_json` reads."""
        return [list(pq) for pq in self.pairs]

    @property
    def n(self) -> int:
        return len(self.pairs)

    @property
    def ps(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.pairs)

    @property
    def qs(self) -> tuple[int, ...]:
        return tuple(q for _, q in self.pairs)

    @property
    def degree(self) -> int:
        """``q_1...q_n``: degree of the curve and pole order of ``x``."""
        return prod(self.qs)

    @property
    def ydegree(self) -> int:
        """``p_1 q_2...q_n``: pole order of ``y``."""
        return self.ps[0] * prod(self.qs[1:])

    def deltas(self) -> list[int]:
        """Edge determinants; ``Δ_1 = p_1 - q_1``."""
        out = []
        for k, (p, q) in enumerate(self.pairs):
            if k == 0:
                out.append(p - q)
            else:
                pp, qp = self.pairs[k - 1]
                out.append(p - pp * qp * q)
        return out

    def prefix(self, k: int) -> "PuiseuxChain":
        return PuiseuxChain(self.pairs[:k])

    def pole_orders(self) -> list[int]:
        """``l(C_k, K)`` for ``k = 0..n``."""
        return [linking_number(self, k, KNOT) for k in range(self.n + 1)]

    def __str__(self):
        return "[" + ",".join(f"({p},{q})" for p, q in self.pairs) + "]"


@dataclass(frozen=True)
class ConditionResult:
    passed: bool
    first_violation: int | None = None
    detail: str = ""


@dataclass(frozen=True)
class ValidityReport:
    chain: PuiseuxChain
    conditions: dict

    @property
    def valid(self) -> bool:
        return all(c.passed for c in self.conditions.values())

    def to_dict(self) -> dict:
        return {
            "chain": self.chain.to_json(),
            "valid": self.valid,
            "conditions": {
                name: {"passed": c.passed, "first_violation": c.first_violation,
                       "detail": c.detail}
                for name, c in self.conditions.items()
            },
        }


def validate(chain: PuiseuxChain) -> ValidityReport:
    """Check the three realizability conditions on the weights separately.

    Violation indices are 1-based pair indices.
    """
    if chain.n == 0:
        raise InvalidChain("empty chain")
    cond_i = ConditionResult(True)
    for k, (p, q) in enumerate(chain.pairs, 1):
        if p <= 1 or q <= 1 or gcd(p, q) != 1:
            cond_i = ConditionResult(False, k, f"pair ({p},{q}) needs p>1, q>1, gcd=1")
            break
    cond_ii = ConditionResult(True)
    for k, d in enumerate(chain.deltas(), 1):
        if d >= 0:
            cond_ii = ConditionResult(False, k, f"Δ_{k} = {d} is not negative")
            break
    cond_iii = ConditionResult(True)
    for k in range(2, chain.n + 1):
        gens = level_generators(chain, k - 1)
        p = chain.pairs[k - 1][0]
        if not member(gens, p):
            cond_iii = ConditionResult(
                False, k, f"p_{k} = {p} is not in the semigroup generated by {list(gens)}")
            break
    return ValidityReport(chain, {"i": cond_i, "ii": cond_ii, "iii": cond_iii})


def is_valid(chain: PuiseuxChain) -> bool:
    return validate(chain).valid


def require_valid(chain: PuiseuxChain) -> None:
    report = validate(chain)
    if not report.valid:
        bad = [f"({name}) at pair {c.first_violation}: {c.detail}"
               for name, c in report.conditions.items() if not c.passed]
        raise InvalidChain("invalid chain " + str(chain) + ": " + "; ".join(bad))


def linking_number(chain: PuiseuxChain, j: int, k) -> int:
    """Linking number of virtual components ``C_j`` and ``C_k`` (or the knot).

    ``l(C_j, C_k) = p_j q_{j+1} ... q_k`` with ``p_0 = 1``; ``k`` may be
    ``"K"`` for the knot itself, which behaves like ``k = n``.
    """
    n = chain.n
    if k == KNOT:
        k = n
    if not (0 <= j <= n and 0 <= k <= n):
        raise IndexError(f"node index out of range 0..{n}")
    if j > k:
        j, k = k, j
    pj = 1 if j == 0 else chain.pairs[j - 1][0]
    return pj * prod(chain.qs[j:k])


def genus(chain: PuiseuxChain) -> int:
    """Arithmetic genus from ``1 - 2g = q_1..q_n + Σ p_i(1-q_i)q_{i+1}..q_n``."""
    ps, qs = chain.ps, chain.qs
    n = chain.n
    rhs = prod(qs)
    for i in range(n):
        rhs += ps[i] * (1 - qs[i]) * prod(qs[i + 1:])
    g = Fraction(1 - rhs, 2)
    if g.denominator != 1 or g < 0:
        raise InvalidChain(f"genus formula gives {g} for {chain}")
    return int(g)


@dataclass(frozen=True)
class ChainInvariants:
    degree: int
    ydegree: int
    genus: int
    d: tuple[int, ...]
    self_linking: tuple[int, ...]
    positive_braid: bool
    suff_negative: bool

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "ydegree": self.ydegree,
            "genus": self.genus,
            "d": list(self.d),
            "self_linking": list(self.self_linking),
            "positive_braid": self.positive_braid,
            "suff_negative": self.suff_negative,
        }


def d_values(chain: PuiseuxChain) -> list[int]:
    """``d_k = q_k d_{k-1} + Δ_k`` with ``d_1 = p_1 + q_1``."""
    deltas = chain.deltas()
    p1, q1 = chain.pairs[0]
    d = [p1 + q1]
    for k in range(1, chain.n):
        d.append(chain.qs[k] * d[-1] + deltas[k])
    return d


def self_linking_numbers(chain: PuiseuxChain) -> list[int]:
    """``l_{j+1} = q_{j+1} l_j + q_{j+1} p_{j+1} - p_{j+1}``, ``l_1 = p_1 q_1 - q_1``."""
    p1, q1 = chain.pairs[0]
    ls = [p1 * q1 - q1]
    for p, q in chain.pairs[1:]:
        ls.append(q * ls[-1] + q * p - p)
    return ls


def partial_ydegree(chain: PuiseuxChain, k: int) -> int:
    """``p_1 q_2 ... q_k``."""
    return chain.ps[0] * prod(chain.qs[1:k])


def invariants(chain: PuiseuxChain) -> ChainInvariants:
    require_valid(chain)
    d = d_values(chain)
    ls = self_linking_numbers(chain)
    top = chain.ydegree
    return ChainInvariants(
        degree=chain.degree,
        ydegree=top,
        genus=genus(chain),
        d=tuple(d),
        self_linking=tuple(ls),
        positive_braid=d[-1] > top,
        suff_negative=d[-1] >= top - 1,
    )


def is_positive_braid(chain: PuiseuxChain) -> bool:
    return d_values(chain)[-1] > chain.ydegree


def is_suff_negative(chain: PuiseuxChain) -> bool:
    return d_values(chain)[-1] >= chain.ydegree - 1
