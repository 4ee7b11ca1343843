import random

import pytest
import sympy
from hypothesis import HealthCheck, given, settings, strategies as st

from splicelink.algebra import TowerPoly, UniPoly, parse_poly, poly_eval_composed
from splicelink.errors import (ConstantCurve, ExpansionTruncated, LineCurve,
                               NonBirational)
from splicelink.recognize import ParamCurve, expand_at_infinity, preprocess, recognize
from splicelink.splice import PuiseuxChain, validate

from conftest import EXAMPLE_CHAIN, HAND_PICKED, random_curve

T, X, Y = sympy.symbols("t X Y")


def sym(p: UniPoly, var=T):
    return sum((sympy.Rational(c.numerator, c.denominator) * var**e for e, c in p.terms()),
               sympy.Integer(0))


def sym_bivariate(p: TowerPoly):
    return sum((sympy.Rational(c.numerator, c.denominator) * X**i * Y**j
                for (i, j), c in p.terms.items()), sympy.Integer(0))


def implicit_oracle(curve: ParamCurve):
    """Res_t(x(t) - X, y(t) - Y), which equals (-1)^N P for monic x."""
    return sympy.expand(sympy.resultant(sym(curve.x) - X, sym(curve.y) - Y, T))


def test_example_chain_and_stages(example_curve):
    r = recognize(example_curve)
    assert r.chain == PuiseuxChain(EXAMPLE_CHAIN)
    assert r.stage_degrees() == [18, 31]
    assert r.pole_orders == (12, 8, 18, 31)
    assert r.stage_traces[0][:2] == (24, 18)
    assert 61 in r.stage_traces[2]


def test_example_tower_degrees(example_curve):
    r = recognize(example_curve)
    x, y = example_curve.x, example_curve.y
    y2 = poly_eval_composed(r.tower[0], [x, y])
    y3 = poly_eval_composed(r.tower[1], [x, y, y2])
    assert y2.degree() == 18 and y3.degree() == 31
    assert str(r.tower[0]) == "-x^2 + y^3"


def test_example_defining_polynomial(example_curve):
    r = recognize(example_curve)
    p = r.defining
    assert poly_eval_composed(p, [example_curve.x, example_curve.y]).is_zero()
    assert p.coeff((0, 12)) == 1 and p.degree_in("y") == 12 and p.degree_in("x") == 8
    # leading part ((x^2 - y^3)^2 - 9x^3)^2 + (16/3) y (x^2 - y^3)^3 + ...
    assert p.coeff((8, 0)) == 1 and p.coeff((6, 3)) == -4
    assert sympy.expand(sym_bivariate(p) * (-1) ** 12 - implicit_oracle(example_curve)) == 0


def test_cusp():
    r = recognize(ParamCurve.parse("t^3", "t^2"))
    assert r.chain == PuiseuxChain([(2, 3)])
    assert str(r.defining) == "-x^2 + y^3"


def test_swapped_cusp():
    pre = preprocess(ParamCurve.parse("t^2", "t^3"))
    assert pre.curve == ParamCurve.parse("t^3", "t^2")
    assert pre.log == ("swap x <-> y",)


def test_non_birational():
    with pytest.raises(NonBirational):
        recognize(ParamCurve.parse("t^4", "t^6"))


def test_line_detected():
    pre = preprocess(ParamCurve.parse("t^3", "t^6+t"))
    assert pre.is_line
    with pytest.raises(LineCurve):
        recognize(ParamCurve.parse("t^3", "t^6+t"))


def test_constant_curve():
    with pytest.raises(ConstantCurve):
        preprocess(ParamCurve.parse("2", "3"))


def test_preprocess_rescales():
    pre = preprocess(ParamCurve.parse("2*t^5 + t", "3*t^2"))
    assert pre.curve.x.is_monic() and pre.curve.y.is_monic()
    r = recognize(ParamCurve.parse("2*t^5 + t", "3*t^2"))
    assert r.chain == PuiseuxChain([(2, 5)])


def test_unchanged_when_in_general_position(example_curve):
    pre = preprocess(example_curve)
    assert pre.curve == example_curve and pre.log == ()


@pytest.mark.parametrize("xs,ys", HAND_PICKED)
def test_defining_matches_resultant(xs, ys):
    curve = ParamCurve.parse(xs, ys)
    r = recognize(curve)
    n = r.curve.x.degree()
    ours = sympy.expand(sym_bivariate(r.defining) * (-1) ** n)
    assert sympy.expand(ours - implicit_oracle(r.curve)) == 0


@pytest.mark.parametrize("xs,ys", HAND_PICKED)
def test_expansion_agrees_with_recognition(xs, ys):
    curve = ParamCurve.parse(xs, ys)
    r = recognize(curve)
    exp = expand_at_infinity(r.curve)
    assert list(exp.exponent_jumps) == r.chain.deltas()[1:]
    assert exp.chain() == r.chain


def test_expansion_of_cusp():
    exp = expand_at_infinity(ParamCurve.parse("t^3", "t^2"))
    assert exp.jump_positions == (-2,) and exp.exponent_jumps == ()


def test_expansion_of_example(example_curve):
    exp = expand_at_infinity(example_curve)
    assert exp.exponent_jumps == (-3, -5)
    assert exp.jump_positions == (-8, -2, 3)


def test_expansion_truncation_reported(example_curve):
    with pytest.raises(ExpansionTruncated) as info:
        expand_at_infinity(example_curve, order=0)
    assert info.value.jumps == [-3]


def _check_result(curve, r):
    x, y = r.curve.x, r.curve.y
    assert validate(r.chain).valid
    assert poly_eval_composed(r.defining, [x, y]).is_zero()
    assert r.defining.degree_in("y") == r.chain.degree
    assert r.defining.degree_in("x") == r.chain.ydegree
    values = [x, y]
    for yk in r.tower:
        values.append(poly_eval_composed(yk, values[: len(yk.variables)]))
    assert [v.degree() for v in values] == r.chain.pole_orders()
    for trace in r.stage_traces:
        assert all(a > b for a, b in zip(trace, trace[1:]))
    orig = r.defining_original()
    assert poly_eval_composed(orig, [curve.x, curve.y]).is_zero()


@settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.integers(0, 10**9))
def test_random_curves(seed):
    curve = random_curve(random.Random(seed), max_degree=9)
    try:
        r = recognize(curve)
    except LineCurve:
        return
    except NonBirational:
        # the implicit equation is then a proper power of the image equation
        pre = preprocess(curve)
        _, factors = sympy.sqf_list(implicit_oracle(pre.curve))
        assert any(mult > 1 for _, mult in factors)
        return
    _check_result(curve, r)
    assert expand_at_infinity(r.curve).chain() == r.chain


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**9))
def test_composed_parametrizations_are_not_birational(seed):
    rng = random.Random(seed)
    curve = random_curve(rng, max_degree=4)
    inner = UniPoly({2: 1, 1: rng.randint(-2, 2)})
    lifted = ParamCurve(curve.x.compose(inner), curve.y.compose(inner))
    try:
        recognize(lifted)
    except (NonBirational, LineCurve):
        return
    pytest.fail("a parametrization through t -> t^2 + c was accepted")
