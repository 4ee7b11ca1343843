"""Numerical semigroups of pole orders.

``H_k`` is generated by ``q_1...q_k, p_1 q_2...q_k, ..., p_{k-1} q_k, p_k``;
``W_k = q_{k+1}...q_n * H_k`` is its image inside the full semigroup of pole
orders at infinity.  The closed-form recursions for the conductor bound
``m_k``, the count ``I_k`` and the gap size live next to a brute-force
dynamic-programming oracle so they can be checked against each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod
from functools import reduce
from typing import Sequence, TYPE_CHECKING

from .errors import InvalidChain

if TYPE_CHECKING:
    from .splice import PuiseuxChain


def member(generators: Sequence[int], v: int) -> bool:
    """Is ``v`` a non-negative integer combination of ``generators``?

    Coin-problem DP up to ``v``.
    """
    if v < 0:
        return False
    gens = sorted({g for g in generators if g > 0})
    if not gens:
        return v == 0
    reach = bytearray(v + 1)
    reach[0] = 1
    for i in range(1, v + 1):
        for g in gens:
            if g > i:
                break
            if reach[i - g]:
                reach[i] = 1
                break
    return bool(reach[v])


def gaps_brute_force(generators: Sequence[int]) -> list[int]:
    """The finite complement of the semigroup generated by ``generators``.

    Walks the naturals until ``min(generators)`` consecutive members have
    been seen, which proves every larger integer is a member.
    """
    gens = sorted({g for g in generators if g > 0})
    if not gens:
        raise ValueError("no positive generators")
    if reduce(gcd, gens) != 1:
        raise ValueError(f"gcd of {gens} is not 1: the complement is infinite")
    smallest = gens[0]
    reach = bytearray([1])
    gaps = []
    run = 1
    v = 0
    while run < smallest:
        v += 1
        ok = any(g <= v and reach[v - g] for g in gens)
        reach.append(1 if ok else 0)
        if ok:
            run += 1
        else:
            run = 0
            gaps.append(v)
    return gaps


def constrained_representation(value: int, generators: Sequence[int]):
    """Normal form of ``value`` over a tower-shaped generator list.

    ``generators[0]`` is unrestricted; the coefficient of ``generators[j]``
    (``j >= 1``) is kept below ``G_{j-1} / G_j`` where ``G_j`` is the gcd of
    the first ``j + 1`` generators.  Returns the coefficient list, or ``None``
    when ``value`` is not in the semigroup.
    """
    k = len(generators) - 1
    gcds = []
    g = 0
    for d in generators:
        g = gcd(g, d)
        gcds.append(g)
    coeffs = [0] * (k + 1)
    rest = value
    for j in range(k, 0, -1):
        gj, gprev = gcds[j], gcds[j - 1]
        if rest % gj:
            return None
        q = gprev // gj
        if q == 1:
            a = 0
        else:
            a = (rest // gj) * pow(generators[j] // gj, -1, q) % q
        rest -= a * generators[j]
        if rest < 0:
            return None
        coeffs[j] = a
    if rest % generators[0]:
        return None
    coeffs[0] = rest // generators[0]
    return coeffs


@dataclass(frozen=True)
class NormalForm:
    value: int
    coefficients: tuple[int, ...]

    def reconstruct(self, generators: Sequence[int]) -> int:
        return sum(a * g for a, g in zip(self.coefficients, generators))


@dataclass(frozen=True)
class SemigroupTower:
    chain: "PuiseuxChain"
    level_generators: tuple[tuple[int, ...], ...]
    scaled_generators: tuple[tuple[int, ...], ...]
    m: tuple[int, ...]
    counts: tuple[int, ...]
    gap_sizes: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.level_generators)

    def generators(self, k: int) -> tuple[int, ...]:
        """Generators of ``H_k`` (1-based level)."""
        return self.level_generators[k - 1]

    def to_dict(self) -> dict:
        return {
            "chain": self.chain.to_json(),
            "level_generators": [list(g) for g in self.level_generators],
            "scaled_generators": [list(g) for g in self.scaled_generators],
            "m": list(self.m),
            "I": list(self.counts),
            "gap_sizes": list(self.gap_sizes),
        }


def level_generators(chain: "PuiseuxChain", k: int) -> tuple[int, ...]:
    """``[q_1...q_k, p_1 q_2...q_k, ..., p_{k-1} q_k, p_k]``."""
    ps, qs = chain.ps, chain.qs
    gens = [prod(qs[:k])]
    for i in range(k):
        gens.append(ps[i] * prod(qs[i + 1:k]))
    return tuple(gens)


def tower(chain: "PuiseuxChain") -> SemigroupTower:
    n = chain.n
    levels = tuple(level_generators(chain, k) for k in range(1, n + 1))
    scaled = tuple(
        tuple(g * prod(chain.qs[k:]) for g in levels[k - 1]) for k in range(1, n + 1))
    ms = []
    counts = []
    gap_sizes = []
    for k in range(1, n + 1):
        p, q = chain.pairs[k - 1]
        if k == 1:
            m = p * q
            count = Fraction((p + 1) * (q + 1), 2)
        else:
            m = q * ms[-1] + p * (q - 1)
            count = q * counts[-1] + Fraction((q - 1) * (p - 1), 2)
        if count.denominator != 1:
            raise InvalidChain(f"non-integer count I_{k} = {count}")
        ms.append(m)
        counts.append(int(count))
        gap_sizes.append(m + 1 - int(count))
    return SemigroupTower(chain, levels, scaled, tuple(ms), tuple(counts),
                          tuple(gap_sizes))


def normal_form(t: SemigroupTower, k: int, v: int) -> NormalForm | None:
    """Unique representation of ``v`` in ``H_k`` with bounded coefficients."""
    if not 1 <= k <= t.n:
        raise ValueError(f"level {k} out of range 1..{t.n}")
    coeffs = constrained_representation(v, t.generators(k))
    if coeffs is None:
        return None
    return NormalForm(v, tuple(coeffs))


def conductor_bound(t: SemigroupTower, k: int) -> int:
    """``m_k``: every integer above it lies in ``H_k``."""
    return t.m[k - 1]


def count_below(t: SemigroupTower, k: int) -> int:
    """``I_k = #(H_k ∩ [0, m_k])``."""
    return t.counts[k - 1]


def gap_size(t: SemigroupTower, k: int) -> int:
    return t.gap_sizes[k - 1]
