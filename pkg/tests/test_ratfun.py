import sympy as sp
from hypothesis import given, strategies as st

from gendiv.qlinalg import scalar
from gendiv.ratfun import RationalFunction as RF, ideal_gcd, ideal_lcm

T = sp.Symbol("t")
coef = st.integers(-4, 4)
polys = st.lists(coef, min_size=1, max_size=4)


def rf(num, den):
    if not any(den):
        den = [1]
    return RF(num, den)


rfs = st.builds(rf, polys, polys)


def sym(f):
    return f.to_sympy(T)


@given(rfs, rfs)
def test_arithmetic_matches_sympy(a, b):
    assert sp.simplify(sym(a + b) - (sym(a) + sym(b))) == 0
    assert sp.simplify(sym(a * b) - sym(a) * sym(b)) == 0
    if b:
        assert sp.simplify(sym(a / b) - sym(a) / sym(b)) == 0


@given(rfs, rfs)
def test_normal_form_makes_equality_structural(a, b):
    if b:
        assert (a * b) / b == a
    assert a - a == RF([])


@given(rfs)
def test_degree_and_order_at_infinity(f):
    if not f:
        return
    n, d = sp.fraction(sp.cancel(sym(f)))
    assert f.degree == sp.degree(n, T) - sp.degree(d, T)
    assert f.order_at_infinity() == -f.degree


@given(rfs, st.integers(-2, 2))
def test_laurent_expansion_matches_sympy(f, a):
    if not f:
        return
    start, coeffs = f.laurent(a, 3)
    ser = sp.series(sym(f), T, a, 4).removeO()
    x = sp.Symbol("x")
    ser = sp.expand(ser.subs(T, x + a))
    for i, c in enumerate(coeffs):
        e = start + i
        assert sp.Rational(str(c)) == ser.coeff(x, e), (f, a, e)


@given(rfs)
def test_expansion_at_infinity_matches_sympy(f):
    if not f:
        return
    start, coeffs = f.expansion_at_infinity(4)
    s = sp.Symbol("s")
    g = sp.series(sym(f).subs(T, 1 / s), s, 0, 5).removeO()
    for i, c in enumerate(coeffs):
        assert sp.Rational(str(c)) == sp.expand(g).coeff(s, start + i)


def test_order_at_points():
    f = RF.linear(2) ** 3 / RF.linear(-1)
    assert f.order_at(2) == 3
    assert f.order_at(-1) == -1
    assert f.order_at(0) == 0
    assert f(0) == scalar(-8)


def test_ideal_gcd_lcm():
    t = RF.t()
    a, b = t ** 2 * RF.linear(1), t ** -1 * RF.linear(1) ** 2
    assert ideal_gcd([a, b]) == (t ** -1 * RF.linear(1)).monic()
    assert ideal_lcm([a, b]) == (t ** 2 * RF.linear(1) ** 2).monic()


def test_printing():
    assert str(RF.monomial(-3)) == "1/t^3"
    assert str(RF.t() - 1) == "t - 1"
