"""End-to-end acceptance checks.

Each test prints one ``acceptance N PASS|FAIL`` line with its runtime and
budget; the lines are repeated in the terminal summary.  Everything is
exact, so there are no numerical tolerances beyond the time budgets.
"""

import time
from contextlib import contextmanager

from splicelink.algebra import poly_eval_composed
from splicelink.approx_roots import approximate_roots, verify_pole_orders
from splicelink.atlas import enumerate_chains
from splicelink.errors import Degenerate, Infeasible
from splicelink.moduli import (build_positive_braid_curve, counting_inequality, random_y,
                               solve_for_x, solve_with_retries, telescoping_defect)
from splicelink.recognize import ParamCurve, expand_at_infinity, recognize
from splicelink.semigroup import gaps_brute_force, tower
from splicelink.splice import (PuiseuxChain, d_values, genus, invariants,
                               is_positive_braid, is_suff_negative, self_linking_numbers)

from conftest import EXAMPLE_CHAIN, EXAMPLE_X, EXAMPLE_Y, brute_force_chains, curve_corpus

RESULTS: dict[int, str] = {}


@contextmanager
def criterion(number: int, title: str, budget: float):
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        status = "PASS" if ok and elapsed < budget else "FAIL"
        line = f"acceptance {number:2d} {status}  {elapsed:7.2f}s / {budget:g}s  {title}"
        RESULTS[number] = line
        print(line)
    assert elapsed < budget, f"took {elapsed:.2f}s, budget {budget}s"


def example_curve() -> ParamCurve:
    return ParamCurve.parse(EXAMPLE_X, EXAMPLE_Y)


def chains_up_to(degree: int):
    for d in range(2, degree + 1):
        for entry in enumerate_chains(d):
            yield entry.chain


def test_acceptance_01_example_end_to_end():
    with criterion(1, "example curve recognized end to end", 5):
        curve = example_curve()
        result = recognize(curve)
        assert result.chain == PuiseuxChain(EXAMPLE_CHAIN)
        assert result.stage_degrees() == [18, 31]
        assert 61 in result.stage_traces[2]
        assert poly_eval_composed(result.defining, [curve.x, curve.y]).is_zero()


def test_acceptance_02_pole_order_table():
    with criterion(2, "approximate roots have pole orders 12, 8, 18, 31", 5):
        result = recognize(example_curve())
        roots = approximate_roots(result.defining, result.chain)
        report = verify_pole_orders(roots, result.curve.x, result.curve.y)
        assert report.orders() == [12, 8, 18, 31]


def test_acceptance_03_genus_gap_equivalence():
    with criterion(3, "genus = gap recursion = brute-force gaps, degree <= 12", 60):
        count = 0
        for d in range(2, 13):
            chains = brute_force_chains(d)
            assert {c.pairs for c in chains} == {e.chain.pairs for e in enumerate_chains(d)}
            for chain in chains:
                g = genus(chain)
                assert tower(chain).gap_sizes[-1] == g
                assert len(gaps_brute_force(chain.pole_orders())) == g
                count += 1
        assert count > 0


def test_acceptance_04_intro_flags():
    with criterion(4, "[(2,3),(5,2)] is suff_negative but not a positive braid", 1):
        inv = invariants(PuiseuxChain([(2, 3), (5, 2)]))
        assert inv.positive_braid is False
        assert inv.suff_negative is True
        assert list(inv.d) == [5, 3]


def test_acceptance_05_atlas():
    with criterion(5, "atlas lists for degrees 6, 8 and 12", 30):
        six = {e.chain.pairs for e in enumerate_chains(6)}
        expected = {((2, 3), (k, 2)) for k in (3, 5, 7, 9, 11)} | {((5, 6),)}
        assert six == expected

        eight = sorted(e.chain.pairs[1][0] for e in enumerate_chains(8)
                       if e.chain.n == 2)
        assert eight == [k for k in range(3, 24, 2) if k != 5]

        twelve = sorted(e.chain.pairs[1][0] for e in enumerate_chains(12)
                        if e.chain.n == 2 and e.chain.pairs[0] == (5, 6))
        assert twelve == [5, 11, 15, 17] + list(range(21, 60, 2))


def test_acceptance_06_positive_braid_dual_characterization():
    with criterion(6, "d_n > p_1 q_2..q_n iff p_k > l_(k-1) q_k, degree <= 24", 120):
        for chain in chains_up_to(24):
            ls = self_linking_numbers(chain)
            dual = all(chain.ps[k] > ls[k - 1] * chain.qs[k] for k in range(1, chain.n))
            assert is_positive_braid(chain) == dual, chain


def test_acceptance_07_moduli_round_trip():
    with criterion(7, "moduli solver round-trips suff_negative chains, degree <= 8", 120):
        for chain in chains_up_to(8):
            if not is_suff_negative(chain):
                continue
            try:
                report = solve_for_x(chain, random_y(chain, 0))
            except (Infeasible, Degenerate):
                continue
            assert recognize(ParamCurve(report.x, report.y)).chain == chain
        for pairs in ([(2, 3)], [(2, 3), (5, 2)], EXAMPLE_CHAIN):
            chain = PuiseuxChain(pairs)
            report = solve_with_retries(chain, seed=0)
            assert recognize(ParamCurve(report.x, report.y)).chain == chain


def test_acceptance_08_positive_braid_builder():
    with criterion(8, "builder realizes every positive braid of degree <= 12", 120):
        built = 0
        for chain in chains_up_to(12):
            if is_positive_braid(chain):
                curve = build_positive_braid_curve(chain)
                assert recognize(curve).chain == chain
                built += 1
        assert built > 0


def test_acceptance_09_expansion_cross_validation():
    with criterion(9, "expansion jumps equal the recognized edge determinants", 60):
        corpus = curve_corpus()
        assert len(corpus) >= 20
        for curve in corpus:
            chain = recognize(curve).chain
            exp = expand_at_infinity(curve)
            assert list(exp.exponent_jumps) == chain.deltas()[1:]
            assert exp.chain() == chain


def test_acceptance_10_counting_identity():
    with criterion(10, "counting inequality iff d_n >= p_1 q_2..q_n - 1, degree <= 24", 30):
        mismatches = []
        for chain in chains_up_to(24):
            assert telescoping_defect(chain) == 0
            lhs = counting_inequality(chain)
            rhs = d_values(chain)[-1] >= chain.ydegree - 1
            if lhs != rhs:
                mismatches.append(chain.pairs)
        assert not mismatches, (f"{len(mismatches)} chain(s) disagree, "
                                f"first {mismatches[0]}")

