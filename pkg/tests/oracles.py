"""Independent reference computations used by the tests.

Nothing here goes through the jet-space machinery of the package: monomial
modules on semigroup curves are handled as exponent sets, and sections on
general curves are computed with sympy series and a sympy matrix.
"""
from fractions import Fraction

import sympy as sp

T = sp.Symbol("t")

LO, HI = -40, 60  # exponent range for set computations


def semigroup(gens, upto=HI):
    S = {0}
    for x in range(1, upto + 1):
        if any(x - g in S for g in gens):
            S.add(x)
    return S


def frobenius(gens):
    S = semigroup(gens)
    gaps = [x for x in range(HI) if x not in S]
    return max(gaps) if gaps else -1


def is_symmetric(gens):
    F = frobenius(gens)
    S = semigroup(gens)
    return all((x in S) != ((F - x) in S) for x in range(0, F + 1))


class Mono:
    """A monomial O-module ``span(t^e : e in E)``, ``E + S`` inside ``E``."""

    def __init__(self, gens, exps):
        self.gens = tuple(gens)
        S = semigroup(gens, HI - LO)
        self.E = frozenset(e + s for e in exps for s in S if LO <= e + s <= HI)

    @classmethod
    def of_set(cls, gens, E):
        m = cls.__new__(cls)
        m.gens = tuple(gens)
        m.E = frozenset(e for e in E if LO <= e <= HI)
        return m

    def index(self):
        S = semigroup(self.gens)
        return len(self.E - S) - len(S - self.E)

    def h0(self, k):
        return sum(1 for e in self.E if e <= -k)

    def h1(self, k):
        return sum(1 for e in range(-k + 1, HI - 5) if e not in self.E)

    def product(self, other):
        return Mono(self.gens, {a + b for a in self.E for b in other.E if a + b <= HI})

    def cut(self):
        """Smallest ``c`` with every exponent ``>= c`` present."""
        c = HI
        while c - 1 in self.E:
            c -= 1
        return c

    def colon(self, other):
        ca, mb = self.cut(), min(other.E)
        out = set()
        for e in range(LO, HI + 1):
            if e + mb >= ca or all((e + b) in self.E for b in other.E if b < ca - e):
                out.add(e)
        return Mono.of_set(self.gens, out)


def omega_exponents(gens):
    S = semigroup(gens)
    return {e for e in range(LO, HI + 1) if (-1 - e) not in S}


# -- sections on general curves via sympy -----------------------------------------


def _rat(x):
    f = Fraction(str(x))
    return sp.Rational(f.numerator, f.denominator)


def sections_dim(curve, points, m_inf):
    """``h0(L(D))`` for ``D = sum n_a [a] + m_inf INF`` with smooth affine ``a``.

    ``points`` maps a rational to its multiplicity.  Sections are ``r q- / q+``
    with ``deg`` at most ``m_inf`` satisfying every local cluster condition.
    """
    qp = sp.Integer(1)
    qm = sp.Integer(1)
    for a, n in points.items():
        if n > 0:
            qp *= (T - _rat(a)) ** n
        elif n < 0:
            qm *= (T - _rat(a)) ** (-n)
    top = m_inf + sp.degree(qp, T) - sp.degree(qm, T)
    if top < 0:
        return 0
    xs = sp.symbols("x0:%d" % (top + 1))
    f = sum(x * T ** i for i, x in enumerate(xs)) * qm / qp
    rows = []
    for cl in curve.clusters:
        jets = []
        for a, c in zip(cl.branches, cl.conductor_orders):
            a = _rat(a)
            ser = sp.series(f, T, a, c).removeO() if c else sp.Integer(0)
            ser = sp.expand(ser.subs(T, T + a)) if c else ser
            for r in range(c):
                jets.append(sp.expand(ser).coeff(T, r) if c else 0)
        for phi in cl.conditions:
            expr = sum(_rat(w) * j for w, j in zip(phi, jets))
            rows.append([sp.expand(expr).coeff(x) for x in xs])
    if not rows:
        return top + 1
    return top + 1 - sp.Matrix(rows).rank()


def residue_sum(curve, cluster, f):
    """Sum of sympy residues of ``f`` (a sympy expression) over a cluster's branches."""
    cl = curve.clusters[cluster]
    return sum(sp.residue(f, T, _rat(a)) for a in cl.branches)
