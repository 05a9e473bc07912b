"""Rank-one torsion-free sheaves and their cohomology.

A sheaf is a pair ``(m1, k)``: the module of sections over the affine
(singular) chart, and the vanishing order ``k`` at the smooth point at
infinity.  Global sections are the elements of ``m1`` vanishing to order at
least ``k`` at infinity.

``h0`` is computed on the affine chart (bounded polynomial window);
``h1`` independently, as the cokernel of ``m1 (+) s^k QQ[[s]] -> QQ((s))``
with ``s = 1/t``.  The two are tied together only by the Euler characteristic
check in :func:`check_chi`.
"""
from __future__ import annotations

from dataclasses import dataclass

from gendiv.curvespec import Curve
from gendiv.fracmod import FracModule, ModuleError, colon, mprod
from gendiv.qlinalg import ZERO, nullspace, rank
from gendiv.ratfun import RationalFunction, as_ratfun


@dataclass(frozen=True)
class Sheaf:
    m1: FracModule
    inf_order: int

    @property
    def curve(self) -> Curve:
        return self.m1.curve

    @property
    def k(self) -> int:
        return self.inf_order

    def __str__(self):
        return "(%s, k=%d)" % (self.m1.describe(), self.inf_order)

    def twist(self, f) -> "Sheaf":
        """``f * self``, i.e. the image under multiplication by a rational function."""
        f = as_ratfun(f)
        return Sheaf(self.m1.scale(f), self.inf_order + f.order_at_infinity())

    def contains(self, other: "Sheaf") -> bool:
        return self.m1.contains_module(other.m1) and other.inf_order >= self.inf_order


def structure_sheaf(c: Curve) -> Sheaf:
    return Sheaf(FracModule.structure(c), 0)


def pushforward_line_bundle(c: Curve, n: int = 0) -> Sheaf:
    """The direct image of ``O(n)`` from the normalization."""
    return Sheaf(FracModule.normalization(c), -int(n))


def degree(s: Sheaf) -> int:
    return s.m1.index() - s.inf_order


def chi(s: Sheaf) -> int:
    return degree(s) + 1 - s.curve.genus


def _section_window(s: Sheaf) -> int:
    """Largest polynomial degree ``N`` of ``p`` for sections ``hull * p``."""
    return -s.inf_order - s.m1.hull.degree


def global_sections(s: Sheaf) -> list[RationalFunction]:
    """A basis of ``H^0``."""
    m = s.m1
    c = s.curve
    N = _section_window(s)
    if N < 0:
        return []
    cols = [c.monomial_jet(i) for i in range(N + 1)]
    ann = m.jets.annihilator()
    rows = [[sum((a[r] * col[r] for r in range(c.jdim) if a[r] and col[r]), ZERO) for col in cols] for a in ann]
    kernel = nullspace(rows, N + 1) if rows else [tuple(1 if j == i else 0 for j in range(N + 1)) for i in range(N + 1)]
    out = []
    for v in kernel:
        p = RationalFunction(list(reversed(list(v))))
        out.append(m.hull * p)
    return out


def h0(s: Sheaf) -> int:
    m = s.m1
    c = s.curve
    N = _section_window(s)
    if N < 0:
        return 0
    ann = m.jets.annihilator()
    if not ann:
        return N + 1
    cols = [c.monomial_jet(i) for i in range(N + 1)]
    rows = [[sum((a[r] * col[r] for r in range(c.jdim) if a[r] and col[r]), ZERO) for col in cols] for a in ann]
    return N + 1 - rank(rows, N + 1)


def h1(s: Sheaf) -> int:
    """``dim QQ((s)) / (m1 + s^k QQ[[s]])`` via expansions at infinity."""
    m = s.m1
    c = s.curve
    k = s.inf_order
    fdeg = c.jdim
    D = m.hull.degree + fdeg
    # hull * f * QQ[t] fills every order <= -D; s^k QQ[[s]] every order >= k
    lo, hi = -D + 1, k - 1
    width = hi - lo + 1
    if width <= 0:
        return 0
    rows = []
    for w in m.jets.basis:
        x = m.hull * c.lift(w)
        if not x:
            continue
        start, coeffs = x.expansion_at_infinity(hi)
        if start < lo:  # pragma: no cover - lifts have degree < deg f
            raise AssertionError("lift outside the window")
        row = [ZERO] * width
        for i, a in enumerate(coeffs):
            n = start + i
            if lo <= n <= hi:
                row[n - lo] = a
        rows.append(row)
    return width - rank(rows, width)


def check_chi(s: Sheaf) -> bool:
    return h0(s) - h1(s) == chi(s)


def sheaf_hom(a: Sheaf, b: Sheaf) -> Sheaf:
    if a.curve != b.curve:
        raise ModuleError("sheaves live on different curves")
    return Sheaf(colon(b.m1, a.m1), b.inf_order - a.inf_order)


def tensor(a: Sheaf, b: Sheaf) -> Sheaf:
    """Image of ``a (x) b`` in the function field (the product module)."""
    return Sheaf(mprod(a.m1, b.m1), a.inf_order + b.inf_order)


def dual_sheaf(a: Sheaf) -> Sheaf:
    return sheaf_hom(a, structure_sheaf(a.curve))


def is_isomorphic(a: Sheaf, b: Sheaf):
    """A rational function ``x`` with ``x * b == a``, or ``None``."""
    if a.curve != b.curve:
        raise ModuleError("sheaves live on different curves")
    if degree(a) != degree(b):
        return None
    secs = global_sections(sheaf_hom(b, a))
    if not secs:
        return None
    x = secs[0]
    if b.twist(x) != a:  # pragma: no cover - equal degrees force equality
        raise AssertionError("nonzero hom between equal-degree sheaves is not onto")
    return x
