"""Pointwise compactified-Jacobian utilities.

Sheaf classes are represented by a single rank-one torsion-free sheaf;
nothing here builds a moduli space.  The genus-2 classification routine works
on the curve with semigroup ring ``QQ[t^3, t^4, t^5]``.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from gendiv.curvespec import INFINITY, Curve, CurveError, SingularPoint, SmoothPoint, singularity_invariants
from gendiv.divisors import (
    GDivisor,
    OmegaDivisor,
    associated_sheaf,
    degree,
    dim_linear_system,
    dsum,
    is_cartier,
    is_effective,
    lin_equiv,
    point_divisor,
)
from gendiv.fracmod import FracModule, fiber_dim
from gendiv.qlinalg import ONE, ZERO, Subspace, scalar
from gendiv.ratfun import RationalFunction
from gendiv.sheafcoh import Sheaf, degree as sheaf_degree, h0, is_isomorphic, pushforward_line_bundle


class ThetaError(ValueError):
    pass


@dataclass(frozen=True)
class SheafClass:
    representative: Sheaf
    degree: int
    h0: int
    non_free_clusters: tuple

    @classmethod
    def of(cls, s: Sheaf) -> "SheafClass":
        bad = tuple(i for i in range(len(s.curve.clusters)) if fiber_dim(s.m1, i) > 1)
        return cls(s, sheaf_degree(s), h0(s), bad)

    @property
    def curve(self) -> Curve:
        return self.representative.curve

    def same_class(self, other: "SheafClass") -> bool:
        return is_isomorphic(self.representative, other.representative) is not None


@dataclass(frozen=True)
class AbelFiber:
    sheaf_class: SheafClass
    fiber_dim: int


def abel_fiber(x) -> AbelFiber:
    """Class of ``L(D)`` (or ``M(D_w)``) and the dimension of the fiber ``|D|``."""
    s = associated_sheaf(x)
    cls = SheafClass.of(s)
    n = dim_linear_system(x)
    if n != cls.h0 - 1:  # pragma: no cover - same computation path
        raise AssertionError("fiber dimension disagrees with h0")
    return AbelFiber(cls, n)


def _is_nodal(c: Curve) -> bool:
    return all(cl.nbranches == 2 and cl.delta == 1 for cl in c.clusters)


def theta_formula(n: int, h0_value: int) -> int:
    """``2^n * h0``."""
    if n < 0 or h0_value <= 0:
        raise ThetaError("need n >= 0 and h0 > 0")
    return 2 ** n * h0_value


def lies_on_theta(s: SheafClass) -> bool:
    """Degree ``g - 1`` with a nonzero section."""
    return s.degree == s.curve.genus - 1 and s.h0 > 0


def theta_multiplicity(s: SheafClass) -> int:
    """``2^(number of non-free nodes) * h0`` for a class on a nodal curve."""
    c = s.curve
    if not _is_nodal(c):
        raise ThetaError("theta multiplicity is only supported on curves whose singularities are all nodes")
    if s.h0 <= 0:
        raise ThetaError("the class has no sections, so it does not lie on the theta divisor")
    return theta_formula(len(s.non_free_clusters), s.h0)


# -- the genus-2 classification ----------------------------------------------


def _check_345(c: Curve):
    if len(c.clusters) != 1:
        raise CurveError("classification expects a single unibranch singularity")
    cl = c.clusters[0]
    if cl.nbranches != 1 or cl.branches[0] != 0 or cl.conductor_orders != (3,):
        raise CurveError("classification expects the semigroup curve <3,4,5> at t = 0")
    if c.algebra.dim != 1:
        raise CurveError("classification expects the semigroup curve <3,4,5> at t = 0")


def nonreduced_ideal(c: Curve, w) -> GDivisor:
    """Effective divisor with ideal ``W + (t^3, t^4, t^5)^2`` for ``W`` in span(t^3, t^4, t^5)."""
    t = RationalFunction.t()
    gens = []
    for vec in w:
        x = RationalFunction([])
        for a, e in zip(vec, (3, 4, 5)):
            a = scalar(a)
            if a:
                x = x + RationalFunction.monomial(e, a)
        gens.append(x)
    gens += [RationalFunction.monomial(e) for e in (6, 7, 8)]
    return GDivisor(Sheaf(FracModule.from_generators(c, gens), 0))


def distinguished_class(c: Curve) -> GDivisor:
    return dsum(point_divisor(c, SingularPoint(0)), point_divisor(c, INFINITY))


@dataclass
class ClassificationRow:
    label: str
    kind: str
    divisor: GDivisor
    dim: int
    cartier: bool
    member: bool
    normalization_class: bool


@dataclass
class ClassificationReport:
    rows: list = field(default_factory=list)
    violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def dims(self) -> set:
        return {r.dim for r in self.rows}


def _planes(grid):
    """2-dimensional subspaces of QQ^3 as row-reduced pairs drawn from a grid."""
    seen = set()
    out = []
    for a, b in itertools.product(grid, repeat=2):
        # rows (1, 0, a), (0, 1, b)  and  (1, a, 0), (0, 0, 1)  and  (0, 1, 0), (0, 0, 1)
        for pair in (((1, 0, a), (0, 1, b)), ((1, a, 0), (0, 0, 1)), ((0, 1, 0), (0, 0, 1))):
            S = Subspace(3, pair)
            if S not in seen:
                seen.add(S)
                out.append(pair)
    return out


def classify_degree2_example(c: Curve, samples: int = 24, seed: int = 0) -> ClassificationReport:
    """Check that exactly the degree-2 divisors in ``|p0 + INF|`` move."""
    _check_345(c)
    rng = random.Random(seed)
    rep = ClassificationReport()
    base = distinguished_class(c)
    nu0 = pushforward_line_bundle(c, 0)
    pool = [scalar(a) for a in range(-9, 10) if a != 0]

    def record(label, kind, D):
        assert degree(D) == 2 and is_effective(D)
        n = dim_linear_system(D)
        cart = is_cartier(D)
        member = lin_equiv(D, base) is not None
        nc = is_isomorphic(associated_sheaf(D), nu0) is not None
        row = ClassificationRow(label, kind, D, n, cart, member, nc)
        rep.rows.append(row)
        if (n == 1) != member:
            rep.violations.append((label, "moves iff member of |p0+INF| fails"))
        if not cart and not member and not (nc and n == 0):
            rep.violations.append((label, "non-Cartier non-member without L(E) = nu_*O"))
        if cart and n != 0:
            rep.violations.append((label, "a Cartier degree-2 divisor moves"))

    P = lambda a: point_divisor(c, SmoothPoint(a))
    for _ in range(max(1, samples // 4)):
        a, b = rng.sample(pool, 2)
        record("P(%s)+P(%s)" % (a, b), "two smooth", dsum(P(a), P(b)))
        a = rng.choice(pool)
        record("S(0)+P(%s)" % a, "smooth+singular", dsum(point_divisor(c, SingularPoint(0)), P(a)))
    record("S(0)+INF", "smooth+singular", base)
    grid = [scalar(x) for x in (-2, -1, 0, 1, 2, "1/2")]
    planes = _planes(grid)
    rng.shuffle(planes)
    need = max(samples - len(rep.rows), 20)
    # keep D0 = (t^4, t^5, t^6) in the sample
    planes = [((0, 1, 0), (0, 0, 1))] + [p for p in planes if p != ((0, 1, 0), (0, 0, 1))]
    outside = 0
    for w in planes:
        if outside >= need:
            break
        D = nonreduced_ideal(c, w)
        label = "W" + str([[str(x) for x in r] for r in w])
        record(label, "nonreduced", D)
        r = rep.rows[-1]
        outside += not r.cartier and not r.member
    return rep


# -- generalized Jacobian kernel -------------------------------------------------


@dataclass(frozen=True)
class KernelReport:
    per_cluster: tuple
    delta: int
    toric_rank: int
    unipotent_dim: int

    @property
    def total(self) -> int:
        return self.toric_rank + self.unipotent_dim


def jacobian_kernel_report(c: Curve) -> KernelReport:
    rows = tuple(singularity_invariants(c, i) for i in range(len(c.clusters)))
    rep = KernelReport(
        rows,
        sum(r.delta for r in rows),
        sum(r.toric_rank for r in rows),
        sum(r.unipotent_dim for r in rows),
    )
    if rep.total != c.genus:  # pragma: no cover
        raise AssertionError("kernel dimension differs from the genus")
    return rep
