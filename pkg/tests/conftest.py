import functools
import random
import sys

import pytest
from hypothesis import settings

from splicelink.algebra import UniPoly
from splicelink.atlas import enumerate_chains
from splicelink.moduli import build_positive_braid_curve
from splicelink.recognize import ParamCurve

# sympy oracles are slow on first use; timing is not what these tests check
settings.register_profile("default", deadline=None)
settings.load_profile("default")

EXAMPLE_X = "t^12+t"
EXAMPLE_Y = "t^8+t^2"
EXAMPLE_CHAIN = [(2, 3), (9, 2), (31, 2)]

HAND_PICKED = [
    ("t^12+t", "t^8+t^2"),
    ("t^3", "t^2"),
    ("t^6+t", "t^4"),
    ("t^5+t^2", "t^3"),
    ("t^7-t", "t^4+t^3"),
    ("t^8+t^3", "t^6+t"),
    ("t^9+t^4", "t^6+t^2"),
    ("t^6+t^3+t", "t^4-2*t"),
    ("t^10+t", "t^4"),
    ("t^12+t^3", "t^8+t"),
    ("t^5", "t^2+t"),
    ("t^4+t", "t^3-t^2"),
]


@pytest.fixture(scope="session")
def example_curve():
    return ParamCurve.parse(EXAMPLE_X, EXAMPLE_Y)


def random_curve(rng: random.Random, max_degree: int = 8) -> ParamCurve:
    n = rng.randint(2, max_degree)
    m = rng.randint(1, n - 1)
    x = {n: 1, **{e: rng.randint(-3, 3) for e in range(n)}}
    y = {m: 1, **{e: rng.randint(-3, 3) for e in range(m)}}
    return ParamCurve(UniPoly(x), UniPoly(y))


@functools.lru_cache(maxsize=None)
def curve_corpus() -> tuple[ParamCurve, ...]:
    """Hand-picked curves plus builder outputs for positive braids up to degree 12."""
    curves = [ParamCurve.parse(x, y) for x, y in HAND_PICKED]
    for d in range(4, 13):
        for entry in enumerate_chains(d):
            if entry.invariants.positive_braid and entry.chain.n > 1:
                curves.append(build_positive_braid_curve(entry.chain))
    return tuple(curves)


def closure_members(generators, limit: int) -> set[int]:
    """Semigroup elements up to ``limit`` by breadth-first closure (no DP)."""
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for v in frontier:
            for g in generators:
                w = v + g
                if w <= limit and w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return seen


def factorizations(n: int):
    if n == 1:
        yield ()
        return
    for f in range(2, n + 1):
        if n % f == 0:
            for rest in factorizations(n // f):
                yield (f,) + rest


@functools.lru_cache(maxsize=None)
def brute_force_chains(degree: int):
    """All pair lists with 1 <= p_k below the Delta bound, filtered by validate."""
    from itertools import product

    from splicelink.splice import PuiseuxChain, is_valid

    out = []
    for qs in factorizations(degree):
        def rec(prefix):
            k = len(prefix)
            if k == len(qs):
                yield list(prefix)
                return
            bound = qs[0] if k == 0 else prefix[-1][0] * prefix[-1][1] * qs[k]
            for p in range(1, bound + 1):
                yield from rec(prefix + [(p, qs[k])])
        for pairs in rec([]):
            chain = PuiseuxChain(pairs)
            if is_valid(chain):
                out.append(chain)
    return tuple(out)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
