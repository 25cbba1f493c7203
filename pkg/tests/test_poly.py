from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from singnf.poly import (ONE, X, Y, ParseError, Poly, laurent_restrict, parse, partial,
                         saturate, scale, serialize, substitute)

from conftest import EX1, EX2
from oracles import from_sympy, to_dict, to_sympy

coeffs = st.fractions(min_value=-20, max_value=20, max_denominator=7)
mons = st.tuples(st.integers(0, 6), st.integers(0, 6))
polys = st.dictionaries(mons, coeffs, max_size=6).map(Poly)


def test_parse_examples():
    assert parse("x^4+y^4") == Poly({(4, 0): 1, (0, 4): 1})
    f = parse(EX1)
    assert len(f) == 5 and f.coeff((2, 4)) == 11
    assert parse("0").is_zero() and len(parse("0").terms) == 0
    assert parse("-3/6*x*y") == Poly({(1, 1): Fraction(-1, 2)})
    assert parse("(x+y)^2") == parse("x^2+2*x*y+y^2")


@pytest.mark.parametrize("bad", ["x*z", "2x", "x^", "x**2", "1/0", "", "x+", "(x", "x^y", "0.5*x"])
def test_parse_rejects(bad):
    with pytest.raises(ParseError):
        parse(bad)


def test_parse_error_position():
    with pytest.raises(ParseError) as ei:
        parse("x+y^2+q")
    assert ei.value.position == 6


def test_partial_examples():
    assert partial(parse(EX1), "x") == parse("2*x*y^3+22*x*y^4+y^7+22*x^21")
    assert partial(parse(EX2), "y") == parse("2*x^4*y+4*x^2*y^3+840*x^21*y^13+40*y^39")
    assert partial(Poly.const(7), "x").is_zero()


def test_laurent_restrict_examples():
    fy = parse("3*x^2*y^2+44*x^2*y^3+7*x*y^6+28*y^27")
    assert laurent_restrict(fy, (0, -5)) == parse("7*x*y^6+28*y^27")
    assert laurent_restrict(fy, (0, 0)) == fy
    assert laurent_restrict(parse("x^2"), (0, -1)).is_zero()


def test_saturate_examples():
    assert saturate(parse("x^2*y^3+x^3*y^2")) == (parse("x+y"), (2, 2))
    assert saturate(parse("x^4+y^4")) == (parse("x^4+y^4"), (0, 0))
    assert saturate(parse("x^2*y^4+x^4*y^2")) == (parse("y^2+x^2"), (2, 2))
    with pytest.raises(ValueError):
        saturate(Poly())


def test_substitute_scale_examples():
    assert substitute(parse("x^2+y"), X + Y, Y) == parse("x^2+2*x*y+y^2+y")
    f = parse(EX2)
    assert substitute(f, X, Y) == f
    assert scale(parse("x^4+y^4"), Fraction(1, 2)) == parse("1/2*x^4+1/2*y^4")


def test_serialization_format():
    assert serialize(parse("x^2*y^3+11*x^2*y^4")) == "11*x^2*y^4+x^2*y^3"
    assert serialize(Poly()) == "0"
    assert serialize(parse("-x+1/2")) == "-x+1/2"
    assert serialize(parse("y^2+x^2-x*y")) == "x^2-x*y+y^2"


def test_canonical_zero_and_reduction():
    f = parse("2/4*x - 1/2*x + 6/4*y")
    assert f == Poly({(0, 1): Fraction(3, 2)})
    c = f.coeff((0, 1))
    assert (c.numerator, c.denominator) == (3, 2)
    assert f.coeff((5, 5)) == 0


# -- properties ---------------------------------------------------------------

@given(polys, polys, polys)
def test_distributive(f, g, h):
    assert (f + g) * h == f * h + g * h
    assert f * g == g * f
    assert (f - g) + g == f


@given(polys, polys)
def test_partial_is_derivation(f, g):
    for v in "xy":
        assert partial(f * g, v) == partial(f, v) * g + f * partial(g, v)


@given(polys)
def test_saturate_properties(f):
    if f.is_zero():
        return
    g, m = saturate(f)
    assert g.shift(m) == f
    assert any(e[0] == 0 for e in g.terms) and any(e[1] == 0 for e in g.terms)


@given(polys, st.tuples(st.integers(-4, 4), st.integers(-4, 4)))
def test_laurent_restrict_properties(f, m):
    r = laurent_restrict(f, m)
    assert all(a + m[0] >= 0 and b + m[1] >= 0 for a, b in r.terms)
    assert laurent_restrict(r, m) == r
    assert set(r.terms) <= set(f.terms)


@given(polys)
def test_parse_serialize_roundtrip(f):
    assert parse(serialize(f)) == f
    assert serialize(parse(serialize(f))) == serialize(f)


@given(polys, polys, polys)
@settings(max_examples=40, deadline=None)
def test_substitute_matches_sympy(f, a, b):
    sx, sy = X + a.jet(3), Y + b.jet(3)
    ours = to_dict(f.substitute(sx, sy))
    ref = from_sympy(to_sympy(f).subs({"x": to_sympy(sx), "y": to_sympy(sy)}, simultaneous=True))
    assert ours == ref


@given(polys, polys, polys, st.integers(2, 12))
@settings(max_examples=40, deadline=None)
def test_truncated_substitution_routes_agree(f, a, b, n):
    gx = a.filter(lambda m: sum(m) >= 2)
    gy = b.filter(lambda m: sum(m) >= 2)
    full = f.substitute(X + gx, Y + gy).jet(n)
    assert f.substitute(X + gx, Y + gy, n) == full
    assert f.shift_near_identity(gx, gy, n) == full


def test_power_and_identity():
    assert (X + Y) ** 0 == ONE
    assert ((X + Y) ** 5).coeff((2, 3)) == 10
    with pytest.raises(ValueError):
        X ** -1
