"""Parsers for rational-function literals and divisor expressions.

Rational functions: integers, ``t``, ``+ - * / ^`` and parentheses.  There is
no implicit multiplication (``2t`` is an error; write ``2*t``).

Divisor expressions::

    expr  := term (("+" | "-") term)*
    term  := "-" term | atom
    atom  := "P(" rat ")" | "INF" | "S(" int ")" | "W(" int ["," covector] ")"
           | "div(" ratfun ")" | "wdiv(" expr ")" | "n(" expr ")"
           | "K" | "Kw" | "(" expr ")"
    covector := "[" rat ("," rat)* "]" | rat ("," rat)*

Expressions are type-checked before evaluation: the sum of two omega-divisors
and the minus of an omega-divisor are rejected.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from gendiv.curvespec import INFINITY, SingularPoint, SmoothPoint
from gendiv.qlinalg import scalar
from gendiv.ratfun import RationalFunction

G, W = "divisor", "omega-divisor"


class ParseError(ValueError):
    def __init__(self, msg, text=None, pos=None):
        if text is not None and pos is not None:
            msg = "%s\n  %s\n  %s^" % (msg, text, " " * pos)
        super().__init__(msg)


class TypeCheckError(ParseError):
    pass


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^(),\[\]]))")


def tokenize(text: str):
    pos = 0
    out = []
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError("unexpected character %r" % text[pos:].lstrip()[0], text, pos)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Stream:
    def __init__(self, text):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def next(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def accept(self, value):
        if self.peek()[1] == value and self.peek()[0] != "end":
            self.i += 1
            return True
        return False

    def expect(self, value):
        tok = self.next()
        if tok[1] != value or tok[0] == "end":
            self.fail("expected %r" % value, tok)
        return tok

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        got = tok[1] or "end of input"
        raise ParseError("%s, got %r" % (msg, got), self.text, tok[2])


# -- rational functions ---------------------------------------------------------


def _rf_expr(s: _Stream) -> RationalFunction:
    v = _rf_term(s)
    while s.peek()[1] in ("+", "-") and s.peek()[0] == "op":
        op = s.next()[1]
        rhs = _rf_term(s)
        v = v + rhs if op == "+" else v - rhs
    return v


def _rf_term(s: _Stream) -> RationalFunction:
    v = _rf_unary(s)
    while s.peek()[1] in ("*", "/") and s.peek()[0] == "op":
        tok = s.next()
        rhs = _rf_unary(s)
        if tok[1] == "*":
            v = v * rhs
        else:
            if not rhs:
                raise ParseError("division by zero", s.text, tok[2])
            v = v / rhs
    return v


def _rf_unary(s: _Stream) -> RationalFunction:
    if s.accept("-"):
        return -_rf_unary(s)
    if s.accept("+"):
        return _rf_unary(s)
    return _rf_power(s)


def _rf_power(s: _Stream) -> RationalFunction:
    base = _rf_atom(s)
    if s.accept("^"):
        neg = s.accept("-")
        tok = s.next()
        if tok[0] != "num":
            s.fail("expected an integer exponent", tok)
        e = int(tok[1])
        e = -e if neg else e
        if e < 0 and not base:
            raise ParseError("zero to a negative power", s.text, tok[2])
        return base ** e
    return base


def _rf_atom(s: _Stream) -> RationalFunction:
    tok = s.next()
    kind, val, pos = tok
    if kind == "num":
        if s.peek()[0] in ("name", "num") or s.peek()[1] == "(":
            raise ParseError("implicit multiplication is not allowed; use '*'", s.text, s.peek()[2])
        return RationalFunction.const(int(val))
    if kind == "name":
        if val != "t":
            raise ParseError("unknown variable %r (only 't' is allowed)" % val, s.text, pos)
        if s.peek()[0] in ("name", "num") or s.peek()[1] == "(":
            raise ParseError("implicit multiplication is not allowed; use '*'", s.text, s.peek()[2])
        return RationalFunction.t()
    if val == "(":
        v = _rf_expr(s)
        s.expect(")")
        return v
    s.fail("expected a number, 't' or '('", tok)


def parse_ratfun(text: str) -> RationalFunction:
    s = _Stream(text)
    v = _rf_expr(s)
    if s.peek()[0] != "end":
        s.fail("trailing input")
    return v


# -- rationals -------------------------------------------------------------------


def _rational(s: _Stream):
    neg = s.accept("-")
    if not neg:
        s.accept("+")
    tok = s.next()
    if tok[0] != "num":
        s.fail("expected a rational number", tok)
    v = Fraction(int(tok[1]))
    if s.peek()[1] == "/":
        s.next()
        d = s.next()
        if d[0] != "num" or int(d[1]) == 0:
            s.fail("expected a nonzero denominator", d)
        v = v / int(d[1])
    return scalar(-v if neg else v)


# -- divisor expressions ----------------------------------------------------------


@dataclass(frozen=True)
class Node:
    op: str
    args: tuple = ()
    kind: str = G
    text: str = ""

    def __str__(self):
        return self.text


def _node(op, args, kind, text):
    return Node(op, tuple(args), kind, text)


def _d_expr(s: _Stream) -> Node:
    start = s.peek()[2]
    v = _d_term(s)
    while s.peek()[0] == "op" and s.peek()[1] in ("+", "-"):
        optok = s.next()
        rhs = _d_term(s)
        if optok[1] == "-":
            rhs = _minus(rhs, s, optok)
        v = _plus(v, rhs, s, optok)
    return v


def _plus(a: Node, b: Node, s, tok):
    if a.kind == W and b.kind == W:
        raise TypeCheckError("the sum of two omega-divisors is not defined", s.text, tok[2])
    kind = W if W in (a.kind, b.kind) else G
    return _node("sum", (a, b), kind, "%s+%s" % (a, b))


def _minus(a: Node, s, tok):
    if a.kind == W:
        raise TypeCheckError("minus of an omega-divisor is not defined; use n(...) for negation", s.text, tok[2])
    return _node("minus", (a,), G, "-%s" % a)


def _d_term(s: _Stream) -> Node:
    tok = s.peek()
    if tok[0] == "op" and tok[1] == "-":
        s.next()
        return _minus(_d_term(s), s, tok)
    return _d_atom(s)


def _d_atom(s: _Stream) -> Node:
    tok = s.next()
    kind, val, pos = tok
    if kind == "op" and val == "(":
        v = _d_expr(s)
        s.expect(")")
        return _node(v.op, v.args, v.kind, "(%s)" % v)
    if kind != "name":
        s.fail("expected a divisor atom", tok)
    if val == "INF":
        return _node("inf", (), G, "INF")
    if val == "K":
        return _node("K", (), G, "K")
    if val == "Kw":
        return _node("Kw", (), W, "Kw")
    if val == "P":
        s.expect("(")
        a = _rational(s)
        s.expect(")")
        return _node("point", (a,), G, "P(%s)" % a)
    if val == "S":
        s.expect("(")
        i = s.next()
        if i[0] != "num":
            s.fail("expected a cluster index", i)
        s.expect(")")
        return _node("sing", (int(i[1]),), G, "S(%s)" % i[1])
    if val == "W":
        s.expect("(")
        i = s.next()
        if i[0] != "num":
            s.fail("expected a cluster index", i)
        cov = None
        if s.accept(","):
            bracket = s.accept("[")
            cov = [_rational(s)]
            while s.accept(","):
                cov.append(_rational(s))
            if bracket:
                s.expect("]")
        s.expect(")")
        text = "W(%s)" % i[1] if cov is None else "W(%s,[%s])" % (i[1], ",".join(str(c) for c in cov))
        return _node("wpoint", (int(i[1]), None if cov is None else tuple(cov)), W, text)
    if val == "div":
        s.expect("(")
        start = s.peek()[2]
        depth = 0
        # the literal runs to the matching parenthesis
        j = s.i
        while True:
            t = s.toks[j]
            if t[0] == "end":
                s.fail("unclosed div(", t)
            if t[1] == "(":
                depth += 1
            elif t[1] == ")":
                if depth == 0:
                    break
                depth -= 1
            j += 1
        end = s.toks[j][2]
        lit = s.text[start:end]
        try:
            f = parse_ratfun(lit)
        except ParseError as exc:
            raise ParseError("bad rational function in div(): %s" % str(exc).splitlines()[0], s.text, start) from None
        if not f:
            raise ParseError("div(0) is undefined", s.text, start)
        s.i = j + 1
        return _node("div", (f,), G, "div(%s)" % lit.strip())
    if val == "wdiv":
        s.expect("(")
        inner = _d_expr(s)
        s.expect(")")
        if inner.kind == W:
            raise TypeCheckError("wdiv() takes a generalized divisor", s.text, pos)
        return _node("wdiv", (inner,), W, "wdiv(%s)" % inner)
    if val == "n":
        s.expect("(")
        inner = _d_expr(s)
        s.expect(")")
        return _node("neg", (inner,), G if inner.kind == W else W, "n(%s)" % inner)
    raise ParseError("unknown atom %r" % val, s.text, pos)


def parse_divexpr(text: str) -> Node:
    s = _Stream(text)
    if s.peek()[0] == "end":
        raise ParseError("empty expression")
    v = _d_expr(s)
    if s.peek()[0] != "end":
        s.fail("trailing input")
    return v


def evaluate(node: Node, c):
    """Evaluate a parsed expression on curve ``c``."""
    from gendiv import divisors as dv

    op = node.op
    if op == "point":
        return dv.point_divisor(c, SmoothPoint(node.args[0]))
    if op == "inf":
        return dv.point_divisor(c, INFINITY)
    if op == "sing":
        return dv.point_divisor(c, SingularPoint(node.args[0]))
    if op == "wpoint":
        return dv.omega_point_divisor(c, SingularPoint(node.args[0]), node.args[1])
    if op == "div":
        return dv.principal_divisor(c, node.args[0])
    if op == "K":
        return dv.canonical_divisor(c)
    if op == "Kw":
        return dv.canonical_omega_divisor(c)
    if op == "sum":
        a, b = (evaluate(x, c) for x in node.args)
        return dv.dsum(a, b)
    if op == "minus":
        return dv.dminus(evaluate(node.args[0], c))
    if op == "wdiv":
        return dv.mixed_sum(evaluate(node.args[0], c), dv.omega_zero(c))
    if op == "neg":
        return dv.negation(evaluate(node.args[0], c))
    raise AssertionError(op)  # pragma: no cover


# -- sheaf expressions (for the theta command) ------------------------------------

_SHEAF = re.compile(r"^\s*(?P<f>[A-Za-z_]+)\s*(?:\((?P<arg>.*)\))?\s*$", re.S)


def parse_sheafexpr(text: str):
    """``O``, ``omega``, ``nu`` / ``nu(n)``, ``L(expr)``, ``M(expr)``, ``I(expr)``.

    Returns a callable taking a curve.
    """
    from gendiv import divisors as dv
    from gendiv.dualizing import dualizing_sheaf
    from gendiv.sheafcoh import pushforward_line_bundle, structure_sheaf

    m = _SHEAF.match(text)
    if not m:
        raise ParseError("cannot parse sheaf expression %r" % text)
    f, arg = m.group("f"), m.group("arg")
    if f in ("O", "omega") and arg is None:
        return (lambda c: structure_sheaf(c)) if f == "O" else (lambda c: dualizing_sheaf(c))
    if f == "nu":
        n = 0
        if arg is not None:
            try:
                n = int(arg.strip())
            except ValueError:
                raise ParseError("nu(n) takes an integer, got %r" % arg) from None
        return lambda c: pushforward_line_bundle(c, n)
    if f in ("L", "M", "I") and arg is not None:
        node = parse_divexpr(arg)
        if f == "L" and node.kind == W:
            raise TypeCheckError("L() takes a generalized divisor; use M() for omega-divisors")
        if f == "M" and node.kind == G:
            raise TypeCheckError("M() takes an omega-divisor; use L() for generalized divisors")
        if f == "I":
            return lambda c: evaluate(node, c).ideal
        return lambda c: dv.associated_sheaf(evaluate(node, c))
    raise ParseError("unknown sheaf expression %r (use O, omega, nu(n), L(..), M(..), I(..))" % text)
