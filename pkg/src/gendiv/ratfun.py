"""Rational functions in one variable ``t`` over QQ.

Thin value type over sympy's dense univariate arithmetic (``dup_*``).  The
numerator and denominator are stored coprime with a monic denominator, so
structural equality is equality of functions.
"""
from __future__ import annotations

from sympy.polys.densearith import dup_add, dup_mul, dup_mul_ground, dup_neg, dup_pow, dup_sub, dup_div
from sympy.polys.densebasic import dup_degree, dup_strip
from sympy.polys.densetools import dup_eval, dup_monic, dup_shift
from sympy.polys.domains import QQ
from sympy.polys.euclidtools import dup_gcd, dup_lcm

from gendiv.qlinalg import ONE, ZERO, fmt_scalar, scalar

K = QQ


def _deg(p) -> int:
    return -1 if not p else len(p) - 1


def taylor(p, a, n) -> list:
    """First ``n`` Taylor coefficients of polynomial ``p`` at ``t = a`` (lowest first)."""
    if n <= 0:
        return []
    if not p:
        return [ZERO] * n
    q = dup_shift(p, a, K) if a else p
    low = list(reversed(q[-n:]))
    return low + [ZERO] * (n - len(low))


def series_inverse(c, n) -> list:
    """Inverse of a power series with ``c[0] != 0``, truncated to ``n`` terms."""
    if not c or not c[0]:
        raise ZeroDivisionError("series is not a unit")
    inv0 = ONE / c[0]
    out = [inv0]
    for k in range(1, n):
        s = ZERO
        for i in range(1, min(k, len(c) - 1) + 1):
            if c[i]:
                s += c[i] * out[k - i]
        out.append(-s * inv0)
    return out[:n]


def series_mul(a, b, n) -> list:
    out = [ZERO] * n
    for i, x in enumerate(a[:n]):
        if x:
            for j in range(min(len(b), n - i)):
                if b[j]:
                    out[i + j] += x * b[j]
    return out


def _cancel(p, q):
    if len(p) < 2 or len(q) < 2:
        return p, q
    g = dup_gcd(p, q, K)
    if len(g) < 2:
        return p, q
    return dup_div(p, g, K)[0], dup_div(q, g, K)[0]


class RationalFunction:
    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, _normal=False):
        num = dup_strip([scalar(c) for c in num])
        den = [ONE] if den is None else dup_strip([scalar(c) for c in den])
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not _normal:
            if not num:
                den = [ONE]
            else:
                # constant numerator or denominator: nothing to cancel
                g = dup_gcd(num, den, K) if len(den) > 1 and len(num) > 1 else [ONE]
                if _deg(g) > 0:
                    num = dup_div(num, g, K)[0]
                    den = dup_div(den, g, K)[0]
                lc = den[0]
                if lc != ONE:
                    num = dup_mul_ground(num, ONE / lc, K)
                    den = dup_monic(den, K)
        self.num = tuple(num)
        self.den = tuple(den)
        self._hash = None

    # -- constructors ---------------------------------------------------
    @classmethod
    def const(cls, c) -> "RationalFunction":
        c = scalar(c)
        return cls([c] if c else [])

    @classmethod
    def t(cls) -> "RationalFunction":
        return cls([ONE, ZERO], _normal=True)

    @classmethod
    def linear(cls, a) -> "RationalFunction":
        """The polynomial ``t - a``."""
        return cls([ONE, -scalar(a)], _normal=True)

    @classmethod
    def monomial(cls, n: int, c=1) -> "RationalFunction":
        c = scalar(c)
        if n >= 0:
            return cls([c] + [ZERO] * n, _normal=True)
        return cls([c], [ONE] + [ZERO] * (-n), _normal=True)

    @classmethod
    def from_sympy(cls, expr, symbol) -> "RationalFunction":
        from sympy import Poly, together, fraction

        n, d = fraction(together(expr))
        pn = Poly(n, symbol, domain=K)
        pd = Poly(d, symbol, domain=K)
        return cls(pn.all_coeffs() if not pn.is_zero else [], pd.all_coeffs())

    # -- ring structure -------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if self.den == other.den:
            return RationalFunction(dup_add(list(self.num), list(other.num), K), list(self.den))
        n = dup_add(dup_mul(list(self.num), list(other.den), K), dup_mul(list(other.num), list(self.den), K), K)
        return RationalFunction(n, dup_mul(list(self.den), list(other.den), K))

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(dup_neg(list(self.num), K), list(self.den), _normal=True)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if not self.num or not other.num:
            return ZERO_RF
        # both factors are reduced, so only the cross gcds can cancel
        a, b, c, d = list(self.num), list(self.den), list(other.num), list(other.den)
        a, d = _cancel(a, d)
        c, b = _cancel(c, b)
        n, m = dup_mul(a, c, K), dup_mul(b, d, K)
        lc = m[0]
        if lc != ONE:
            n = dup_mul_ground(n, ONE / lc, K)
            m = dup_mul_ground(m, ONE / lc, K)
        return RationalFunction(n, m, _normal=True)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if not other.num:
            raise ZeroDivisionError("division by the zero function")
        return RationalFunction(dup_mul(list(self.num), list(other.den), K), dup_mul(list(self.den), list(other.num), K))

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def __pow__(self, e: int):
        if e >= 0:
            return RationalFunction(dup_pow(list(self.num), e, K), dup_pow(list(self.den), e, K), _normal=True)
        return ONE_RF / (self ** (-e))

    def __eq__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self):
        return bool(self.num)

    # -- queries --------------------------------------------------------
    @property
    def degree(self) -> int:
        """``deg num - deg den`` (minus the order of vanishing at infinity)."""
        if not self.num:
            raise ValueError("degree of the zero function")
        return _deg(self.num) - _deg(self.den)

    def order_at_infinity(self) -> int:
        return -self.degree

    def is_polynomial(self) -> bool:
        return self.den == (ONE,)

    def is_constant(self) -> bool:
        return self.is_polynomial() and _deg(self.num) <= 0

    def order_at(self, a) -> int:
        """Valuation at the rational point ``t = a``."""
        if not self.num:
            raise ValueError("order of the zero function")
        a = scalar(a)
        return _root_mult(list(self.num), a) - _root_mult(list(self.den), a)

    def __call__(self, a):
        a = scalar(a)
        d = dup_eval(list(self.den), a, K)
        if not d:
            raise ZeroDivisionError("pole at t = %s" % fmt_scalar(a))
        return dup_eval(list(self.num), a, K) / d

    def taylor(self, a, n: int) -> list:
        """First ``n`` coefficients of the expansion in powers of ``t - a``.

        The function must be regular at ``a``.
        """
        a = scalar(a)
        if n <= 0:
            return []
        dj = taylor(list(self.den), a, n)
        if not dj[0]:
            raise ZeroDivisionError("pole at t = %s" % fmt_scalar(a))
        return series_mul(taylor(list(self.num), a, n), series_inverse(dj, n), n)

    def laurent(self, a, upto: int):
        """Laurent coefficients at ``t = a`` as ``(start, coeffs)`` covering exponents ``start..upto``."""
        a = scalar(a)
        if not self.num:
            return upto + 1, []
        m = _root_mult(list(self.den), a)
        # den = (t-a)^m * d1
        d1 = list(self.den)
        lin = [ONE, -a]
        for _ in range(m):
            d1 = dup_div(d1, lin, K)[0]
        n = upto + m + 1
        if n <= 0:
            return upto + 1, []
        coeffs = series_mul(taylor(list(self.num), a, n), series_inverse(taylor(d1, a, n), n), n)
        return -m, coeffs

    def expansion_at_infinity(self, upto: int):
        """Coefficients of ``s^n`` (``s = 1/t``) for ``n = ord_inf .. upto``.

        Returns ``(start, coeffs)``; ``start`` is the order at infinity.
        """
        if not self.num:
            return upto + 1, []
        e = _deg(self.den) - _deg(self.num)
        n = upto - e + 1
        if n <= 0:
            return e, []
        # in s = 1/t the dense coefficient lists already run lowest power first
        rn = list(self.num)
        rd = list(self.den)
        return e, series_mul(rn, series_inverse(rd, n), n)

    def monic(self) -> "RationalFunction":
        """Same function scaled so that the numerator is monic."""
        if not self.num or self.num[0] == ONE:
            return self
        c = ONE / self.num[0]
        return RationalFunction(dup_mul_ground(list(self.num), c, K), list(self.den), _normal=True)

    def leading_coefficient(self):
        return self.num[0] if self.num else ZERO

    def __repr__(self):
        return "RationalFunction(%s)" % self

    def __str__(self):
        n = _poly_str(self.num)
        if self.den == (ONE,):
            return n
        d = _poly_str(self.den)
        if len([c for c in self.num if c]) > 1:
            n = "(" + n + ")"
        if len([c for c in self.den if c]) > 1:
            d = "(" + d + ")"
        return "%s/%s" % (n, d)

    def to_sympy(self, symbol):
        from sympy import Rational

        def build(p):
            e = 0
            n = len(p) - 1
            for i, c in enumerate(p):
                if c:
                    e += Rational(int(c.numerator), int(c.denominator)) * symbol ** (n - i)
            return e

        return build(self.num) / build(self.den)


def _root_mult(p, a) -> int:
    m = 0
    lin = [ONE, -a]
    while p and not dup_eval(p, a, K):
        p = dup_div(p, lin, K)[0]
        m += 1
    return m


def _poly_str(p) -> str:
    if not p:
        return "0"
    n = len(p) - 1
    terms = []
    for i, c in enumerate(p):
        if not c:
            continue
        e = n - i
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        cs = fmt_scalar(mag)
        if e == 0:
            body = cs
        else:
            mono = "t" if e == 1 else "t^%d" % e
            body = mono if mag == ONE else "%s*%s" % (cs, mono)
        terms.append((sign, body))
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += " %s %s" % (sign, body)
    return out


def _coerce(x) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, (int, str)) or hasattr(x, "numerator"):
        return RationalFunction.const(x)
    raise TypeError("cannot coerce %r to a rational function" % (x,))


def as_ratfun(x) -> RationalFunction:
    return _coerce(x)


def ideal_gcd(fs) -> RationalFunction:
    """Monic generator of the fractional ideal ``sum f_i QQ[t]``."""
    fs = [_coerce(f) for f in fs if f]
    if not fs:
        raise ValueError("gcd of an empty family")
    n = list(fs[0].num)
    d = list(fs[0].den)
    for f in fs[1:]:
        n = dup_gcd(n, list(f.num), K)
        d = dup_lcm(d, list(f.den), K)
    return RationalFunction(n, d).monic()


def ideal_lcm(fs) -> RationalFunction:
    """Monic generator of ``intersection f_i QQ[t]``."""
    fs = [_coerce(f) for f in fs]
    n = list(fs[0].num)
    d = list(fs[0].den)
    for f in fs[1:]:
        n = dup_lcm(n, list(f.num), K)
        d = dup_gcd(d, list(f.den), K)
    return RationalFunction(n, d).monic()


ZERO_RF = RationalFunction([], _normal=True)
ONE_RF = RationalFunction([ONE], _normal=True)
T = RationalFunction.t()
