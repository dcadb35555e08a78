import pytest
from hypothesis import given

from corelab.field import FieldSpec
from corelab.poly import (
    ExponentOverflow,
    MonomialOrder,
    PolyParseError,
    PolyRing,
    RingMismatch,
    check_exponents,
    mono_lcm,
    multiply,
)
from strategies import XY_Q, XYZ, WEIGHTED, homogeneous, polys

R = XYZ


def P(s, ring=R):
    return ring.parse(s)


def test_parse_and_render():
    assert str(P("x*y + 2x^2 - y*x")) == "2*x^2"
    assert str(P("(x+y)^2")) == "x^2 + 2*x*y + y^2"
    assert str(P("x**3 - 1")) == "x^3 - 1"
    assert str(XY_Q.parse("3/2 x^2 y")) == "3/2*x^2*y"
    assert str(P("0")) == "0"


@pytest.mark.parametrize("bad", ["x +", "q", "x^", "(x", "x/y", "x^-1", "2 3 4 )"])
def test_parse_errors(bad):
    with pytest.raises(PolyParseError):
        P(bad)


@given(polys())
def test_render_parse_roundtrip(f):
    assert P(str(f)) == f


@given(polys(XY_Q))
def test_render_parse_roundtrip_rationals(f):
    assert XY_Q.parse(str(f)) == f


@given(polys(), polys(), polys())
def test_ring_axioms(f, g, h):
    assert (f + g) + h == f + (g + h)
    assert f * (g + h) == f * g + f * h
    assert f * g == g * f
    assert f - f == R.zero()


@given(homogeneous(), homogeneous())
def test_product_of_homogeneous_is_homogeneous(f, g):
    ok, d = (f * g).is_homogeneous()
    assert ok and d == f.degree() + g.degree()


@given(homogeneous(WEIGHTED))
def test_weighted_homogeneity(f):
    ok, d = f.is_homogeneous()
    assert ok and f.graded_component(d) == f


def test_weighted_grevlex_order():
    o = MonomialOrder((1, 1, 1))
    # x^2 > xy > y^2 > xz > yz > z^2 in grevlex
    monos = [(2, 0, 0), (1, 1, 0), (0, 2, 0), (1, 0, 1), (0, 1, 1), (0, 0, 2)]
    assert sorted(monos, key=o.key, reverse=True) == monos
    w = MonomialOrder((2, 3))
    assert w.key((3, 0)) > w.key((0, 2)) > w.key((1, 1))


def test_leading_monomial_respects_weights():
    f = WEIGHTED.parse("a^3 + b*a + c")
    # all three terms have degree 3; revlex prefers the smallest last exponent
    assert f.lm() == (3, 0, 0)
    assert WEIGHTED.parse("a + c").lm() == (0, 0, 1)


def test_ring_mismatch():
    other = PolyRing(FieldSpec(None), ["x", "y", "z"])
    with pytest.raises(RingMismatch):
        multiply(R.gen(0), other.gen(0))


def test_exponent_cap():
    with pytest.raises(ExponentOverflow):
        check_exponents((1 << 16, 0))
    assert mono_lcm((1, 2), (3, 0)) == (3, 2)


def test_exact_divide_and_substitute():
    f = P("x^2 - y^2")
    assert f.exact_divide(P("x - y")) == P("x + y")
    with pytest.raises(ArithmeticError):
        P("x^2 + y").exact_divide(P("x"))
    assert P("x^2*y").substitute([P("y"), P("z"), P("x")]) == P("y^2*z")
