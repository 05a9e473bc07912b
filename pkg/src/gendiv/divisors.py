"""Generalized divisors and generalized omega-divisors.

A generalized divisor is a nonzero subsheaf ``I_D`` of the function field; an
omega-divisor is a nonzero subsheaf of the rational 1-forms, stored by its
coefficient sheaf with respect to ``dt`` (so the dualizing sheaf itself is
``(omega module, 2)``).  Both wrap a :class:`Sheaf`.

The divisor of a rational function is the subsheaf ``O * f``; so
``D + div(f)`` has ideal ``f * I_D``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

from gendiv.curvespec import INFINITY, Curve, CurveError, SingularPoint, SmoothPoint
from gendiv.dualizing import dualizing_sheaf, is_gorenstein
from gendiv.fracmod import (
    FracModule,
    ModuleError,
    colon,
    is_invertible,
    maximal_ideal,
    mprod,
    point_ideal,
)
from gendiv.qlinalg import ONE, ZERO, Subspace, nullspace, scalar
from gendiv.ratfun import RationalFunction, as_ratfun
from gendiv.sheafcoh import (
    Sheaf,
    degree as sheaf_degree,
    global_sections,
    h0,
    is_isomorphic,
    sheaf_hom,
    structure_sheaf,
)


class DivisorError(ValueError):
    pass


class UnsupportedOperation(DivisorError):
    pass


class NoCanonicalDivisor(DivisorError):
    pass


@dataclass(frozen=True)
class GDivisor:
    ideal: Sheaf

    @property
    def curve(self) -> Curve:
        return self.ideal.curve

    def __add__(self, other):
        if isinstance(other, OmegaDivisor):
            return mixed_sum(self, other)
        return dsum(self, other)

    def __neg__(self):
        return dminus(self)

    def __str__(self):
        return "GDivisor%s" % self.ideal


@dataclass(frozen=True)
class OmegaDivisor:
    ideal: Sheaf

    @property
    def curve(self) -> Curve:
        return self.ideal.curve

    def __add__(self, other):
        if isinstance(other, GDivisor):
            return mixed_sum(other, self)
        raise UnsupportedOperation("the sum of two omega-divisors is not defined")

    def __str__(self):
        return "OmegaDivisor%s" % self.ideal


# -- construction -------------------------------------------------------------


def zero_divisor(c: Curve) -> GDivisor:
    return GDivisor(structure_sheaf(c))


def point_divisor(c: Curve, p) -> GDivisor:
    c.validate_point(p)
    if isinstance(p, SingularPoint):
        return GDivisor(Sheaf(maximal_ideal(c, p.cluster), 0))
    if p.at_infinity:
        return GDivisor(Sheaf(FracModule.structure(c), 1))
    return GDivisor(Sheaf(point_ideal(c, p.coordinate), 0))


def principal_divisor(c: Curve, f) -> GDivisor:
    f = as_ratfun(f)
    if not f:
        raise DivisorError("div(0) is undefined")
    return GDivisor(structure_sheaf(c).twist(f))


def omega_zero(c: Curve) -> OmegaDivisor:
    return OmegaDivisor(dualizing_sheaf(c))


def omega_fiber_basis(c: Curve, cluster: int) -> list[RationalFunction]:
    """Forms whose classes are a basis of the fiber ``omega / m omega``."""
    return list(_fiber_basis(c, cluster))


@lru_cache(maxsize=None)
def _fiber_basis(c, cluster):
    w = dualizing_sheaf(c).m1
    mw = mprod(maximal_ideal(c, cluster), w)
    chosen = []
    cur = mw
    for x in w.minimal_generators() + w.generators():
        if cur.contains(x):
            continue
        chosen.append(x)
        cur = _add_element(cur, x)
        if cur == w:
            break
    return tuple(chosen)


def _add_element(m: FracModule, x) -> FracModule:
    from gendiv.fracmod import msum

    return msum(m, FracModule.from_generators(m.curve, [x]))


def omega_point_divisor(c: Curve, p, covector=None) -> OmegaDivisor:
    """``I_p * omega``, or at a singular point the kernel of a fiber covector."""
    c.validate_point(p)
    w = dualizing_sheaf(c)
    if isinstance(p, SmoothPoint):
        if covector is not None:
            cov = [scalar(x) for x in covector]
            if len(cov) != 1 or not cov[0]:
                raise DivisorError("at a smooth point the covector must be one nonzero scalar")
        if p.at_infinity:
            return OmegaDivisor(Sheaf(w.m1, w.inf_order + 1))
        return OmegaDivisor(Sheaf(mprod(point_ideal(c, p.coordinate), w.m1), w.inf_order))
    mw = mprod(maximal_ideal(c, p.cluster), w.m1)
    if covector is None:
        return OmegaDivisor(Sheaf(mw, w.inf_order))
    basis = omega_fiber_basis(c, p.cluster)
    cov = [scalar(x) for x in covector]
    if len(cov) != len(basis):
        raise DivisorError("covector has %d entries but the fiber has dimension %d" % (len(cov), len(basis)))
    if not any(cov):
        raise DivisorError("zero covector")
    ker = nullspace([cov], len(cov))
    gens = []
    for v in ker:
        x = RationalFunction([])
        for a, b in zip(v, basis):
            if a:
                x = x + RationalFunction.const(a) * b
        gens.append(x)
    m = mw
    for x in gens:
        m = _add_element(m, x)
    return OmegaDivisor(Sheaf(m, w.inf_order))


# -- arithmetic ----------------------------------------------------------------


def _same(a, b):
    if a.curve != b.curve:
        raise DivisorError("divisors live on different curves")


def dsum(d: GDivisor, e: GDivisor) -> GDivisor:
    if isinstance(d, OmegaDivisor) and isinstance(e, OmegaDivisor):
        raise UnsupportedOperation("the sum of two omega-divisors is not defined")
    if isinstance(d, OmegaDivisor) or isinstance(e, OmegaDivisor):
        gd, od = (d, e) if isinstance(e, OmegaDivisor) else (e, d)
        return mixed_sum(gd, od)
    _same(d, e)
    return GDivisor(Sheaf(mprod(d.ideal.m1, e.ideal.m1), d.ideal.inf_order + e.ideal.inf_order))


def dminus(d: GDivisor) -> GDivisor:
    if not isinstance(d, GDivisor):
        raise UnsupportedOperation("minus is defined for generalized divisors; use negation for omega-divisors")
    return GDivisor(sheaf_hom(d.ideal, structure_sheaf(d.curve)))


def mixed_sum(d: GDivisor, e: OmegaDivisor) -> OmegaDivisor:
    _same(d, e)
    return OmegaDivisor(Sheaf(mprod(d.ideal.m1, e.ideal.m1), d.ideal.inf_order + e.ideal.inf_order))


def negation(x):
    """Omega-colon into the dualizing sheaf; switches the kind."""
    w = dualizing_sheaf(x.curve)
    s = sheaf_hom(x.ideal, w)
    if isinstance(x, GDivisor):
        return OmegaDivisor(s)
    return GDivisor(s)


# -- numerical data ------------------------------------------------------------


def degree(x) -> int:
    if isinstance(x, OmegaDivisor):
        return sheaf_degree(dualizing_sheaf(x.curve)) - sheaf_degree(x.ideal)
    return -sheaf_degree(x.ideal)


def is_effective(x) -> bool:
    if isinstance(x, OmegaDivisor):
        return dualizing_sheaf(x.curve).contains(x.ideal)
    return structure_sheaf(x.curve).contains(x.ideal)


def is_cartier(x) -> bool:
    return is_invertible(x.ideal.m1)


def associated_sheaf(x) -> Sheaf:
    """``L(D)`` for a generalized divisor, ``M(D_w)`` for an omega-divisor."""
    if isinstance(x, OmegaDivisor):
        return sheaf_hom(x.ideal, dualizing_sheaf(x.curve))
    return sheaf_hom(x.ideal, structure_sheaf(x.curve))


L = associated_sheaf
M = associated_sheaf


# -- linear systems -----------------------------------------------------------


@dataclass
class LinearSystem:
    divisor: object
    dim: int
    section_basis: list
    _ctor: Callable = field(repr=False, default=None)

    def member(self, coefficients):
        coeffs = [scalar(x) for x in coefficients]
        if len(coeffs) != len(self.section_basis):
            raise DivisorError("expected %d coefficients, got %d" % (len(self.section_basis), len(coeffs)))
        if not any(coeffs):
            raise DivisorError("member() needs a nonzero coefficient vector")
        x = RationalFunction([])
        for a, s in zip(coeffs, self.section_basis):
            if a:
                x = x + RationalFunction.const(a) * s
        return self._ctor(x)


def linear_system(x) -> LinearSystem:
    secs = global_sections(associated_sheaf(x))
    kind = type(x)

    def member(f):
        out = kind(x.ideal.twist(f))
        if not is_effective(out):  # pragma: no cover - sections map into the structure sheaf
            raise AssertionError("linear system member is not effective")
        return out

    return LinearSystem(x, len(secs) - 1, secs, member)


def dim_linear_system(x) -> int:
    return h0(associated_sheaf(x)) - 1


def lin_equiv(d, e):
    """A rational function ``f`` with ``d = e + div(f)``, or ``None``."""
    _same(d, e)
    if type(d) is not type(e):
        raise DivisorError("cannot compare a generalized divisor with an omega-divisor")
    return is_isomorphic(d.ideal, e.ideal)


def add_principal(d, f):
    """``d + div(f)``."""
    return type(d)(d.ideal.twist(f))


# -- canonical and adjoint divisors ------------------------------------------


def canonical_divisor(c: Curve) -> GDivisor:
    if not is_gorenstein(c):
        raise NoCanonicalDivisor(
            "this curve does not admit a canonical divisor: the dualizing sheaf is not reflexive (not Gorenstein)"
        )
    w = dualizing_sheaf(c)
    return GDivisor(sheaf_hom(w, structure_sheaf(c)))


def canonical_omega_divisor(c: Curve) -> OmegaDivisor:
    w = dualizing_sheaf(c)
    return OmegaDivisor(sheaf_hom(w, w))


def adjoint(d: GDivisor) -> GDivisor:
    k = canonical_divisor(d.curve)
    out = dsum(k, dminus(d))
    c = d.curve
    if degree(out) != 2 * c.genus - 2 - degree(d):  # pragma: no cover
        raise AssertionError("adjoint has the wrong degree")
    return out


def adjoint_omega(d: OmegaDivisor) -> OmegaDivisor:
    out = OmegaDivisor(associated_sheaf(d))
    c = d.curve
    if degree(out) != 2 * c.genus - 2 - degree(d):  # pragma: no cover
        raise AssertionError("omega-adjoint has the wrong degree")
    return out


@dataclass(frozen=True)
class RRReport:
    lhs: int
    rhs: int
    dim: int
    adjoint_dim: int
    degree: int
    genus: int

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs


def riemann_roch_check(x) -> RRReport:
    c = x.curve
    if isinstance(x, OmegaDivisor):
        adj = adjoint_omega(x)
    else:
        if not is_gorenstein(c):
            raise NoCanonicalDivisor("Riemann-Roch for generalized divisors needs a Gorenstein curve")
        adj = adjoint(x)
    a = dim_linear_system(x)
    b = dim_linear_system(adj)
    d = degree(x)
    return RRReport(a - b, d + 1 - c.genus, a, b, d, c.genus)


# -- sampling -------------------------------------------------------------------


def random_effective_divisor(c: Curve, d: int, rng: random.Random, include_singular=False, include_infinity=True):
    """An effective divisor of degree ``d`` built from points (and optionally singular points)."""
    if d < 0:
        raise DivisorError("effective divisors have nonnegative degree")
    D = zero_divisor(c)
    left = d
    if include_singular and c.clusters:
        for i in range(len(c.clusters)):
            if left and rng.random() < 0.5:
                S = point_divisor(c, SingularPoint(i))
                if degree(dsum(D, S)) <= d:
                    D = dsum(D, S)
                    left = d - degree(D)
    if include_infinity and left and rng.random() < 0.3:
        D = dsum(D, point_divisor(c, INFINITY))
        left -= 1
    # repeated points are allowed; they give nonreduced divisors
    pool = [scalar(a) for a in range(-9, 10) if not c.is_branch(a)]
    pts = [rng.choice(pool) for _ in range(left)]
    for a in pts:
        D = dsum(D, point_divisor(c, SmoothPoint(a)))
    if degree(D) != d:
        raise AssertionError("sampled divisor has degree %d, wanted %d" % (degree(D), d))
    return D


def random_divisor(c: Curve, rng: random.Random, lo=-2, hi=6, include_singular=True):
    """A (not necessarily effective) divisor: difference of two effective ones."""
    d = rng.randint(lo, hi)
    p = max(d, 0) + rng.randint(0, 2)
    D = dsum(random_effective_divisor(c, p, rng), dminus(random_effective_divisor(c, p - d, rng)))
    if include_singular and c.clusters and rng.random() < 0.5:
        i = rng.randrange(len(c.clusters))
        S = point_divisor(c, SingularPoint(i))
        D = dsum(D, S) if rng.random() < 0.5 else dsum(D, dminus(S))
    return D


def random_omega_divisor(c: Curve, rng: random.Random, lo=-2, hi=6):
    base = omega_zero(c)
    if c.clusters and rng.random() < 0.5:
        i = rng.randrange(len(c.clusters))
        fb = len(omega_fiber_basis(c, i))
        cov = [rng.randint(-2, 2) for _ in range(fb)]
        if not any(cov):
            cov[0] = 1
        base = omega_point_divisor(c, SingularPoint(i), cov)
    return mixed_sum(random_divisor(c, rng, lo, hi, include_singular=True), base)


def random_effective_omega_divisor(c: Curve, d: int, rng: random.Random):
    """Effective omega-divisor of degree ``d``: points plus an optional singular omega-point."""
    parts = []
    base = omega_zero(c)
    if c.clusters and rng.random() < 0.6:
        i = rng.randrange(len(c.clusters))
        cand = []
        fb = len(omega_fiber_basis(c, i))
        cov = [rng.randint(-3, 3) for _ in range(fb)]
        if not any(cov):
            cov[0] = 1
        cand.append(omega_point_divisor(c, SingularPoint(i), cov))
        cand.append(omega_point_divisor(c, SingularPoint(i)))
        for x in cand:
            if degree(x) <= d:
                base = x
                break
    left = d - degree(base)
    D = random_effective_divisor(c, left, rng) if left > 0 else zero_divisor(c)
    out = mixed_sum(D, base)
    if degree(out) != d:  # D is Cartier, so degrees add
        raise AssertionError("sampled omega-divisor has degree %d, wanted %d" % (degree(out), d))
    return out


@dataclass
class GeneralPositionReport:
    degree: int
    expected: int
    dims: dict
    violations: list
    kind: str

    @property
    def passed(self) -> bool:
        return not self.violations


def general_position_dim_check(c: Curve, d: int, trials: int, seed: int, omega=False, include_singular=False):
    if d < 0:
        raise DivisorError("degree must be nonnegative")
    rng = random.Random(seed)
    dims = {}
    bad = []
    for _ in range(trials):
        D = random_effective_omega_divisor(c, d, rng) if omega else random_effective_divisor(c, d, rng, include_singular)
        n = dim_linear_system(D)
        dims[n] = dims.get(n, 0) + 1
        if n != d - c.genus:
            bad.append(D)
    return GeneralPositionReport(d, d - c.genus, dims, bad, "omega" if omega else "generalized")
