"""Fractional ideals of the singular chart ring ``O1``.

Every finitely generated ``O1``-submodule ``M`` of ``QQ(t)`` that spans
``QQ(t)`` is stored as a pair ``(hull, W)``:

* ``hull`` is a rational function ``g`` with ``M * QQ[t] = g * QQ[t]``;
* ``W`` is a ``V``-submodule of the jet space so that

      M = { g * p : p in QQ[t], jet(p) in W }.

Since ``M`` spans ``g QQ[t]`` over ``QQ[t]``, for every branch some element of
``W`` has a nonzero constant term there.  With ``g`` normalized (monic
numerator and denominator) that makes the pair unique, so module equality is
structural equality.
"""
from __future__ import annotations

from gendiv.curvespec import Curve, CurveError
from gendiv.qlinalg import ONE, ZERO, Subspace, matvec, nullspace, span_sum, transpose
from gendiv.ratfun import ONE_RF, RationalFunction, as_ratfun, ideal_gcd, ideal_lcm


class ModuleError(ValueError):
    pass


class FracModule:
    __slots__ = ("curve", "hull", "jets", "_hash")

    def __init__(self, curve: Curve, hull: RationalFunction, jets: Subspace, _canonical=False):
        if not _canonical:
            hull, jets = _canonicalize(curve, hull, jets)
        self.curve = curve
        self.hull = hull
        self.jets = jets
        self._hash = None

    # -- constructors ---------------------------------------------------
    @classmethod
    def structure(cls, curve: Curve) -> "FracModule":
        return cls(curve, ONE_RF, curve.algebra, _canonical=True)

    @classmethod
    def normalization(cls, curve: Curve, twist=None) -> "FracModule":
        """``twist * QQ[t]`` (the pushforward of the normalization's sheaf)."""
        g = ONE_RF if twist is None else as_ratfun(twist).monic()
        return cls(curve, g, Subspace.full(curve.window), _canonical=True)

    @classmethod
    def from_generators(cls, curve: Curve, gens) -> "FracModule":
        gens = [as_ratfun(x) for x in gens]
        gens = [x for x in gens if x]
        if not gens:
            raise ModuleError("the zero module is not a fractional ideal")
        g = ideal_gcd(gens)
        V = curve.algebra
        vecs = []
        for x in gens:
            q = x / g
            jq = curve.jet(q)
            for v in V.basis:
                vecs.append(curve.jmul(v, jq))
        return cls(curve, g, Subspace(curve.window, vecs))

    # -- structure ---------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, FracModule):
            return NotImplemented
        return self.curve == other.curve and self.hull == other.hull and self.jets == other.jets

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.hull, self.jets))
        return self._hash

    def __repr__(self):
        return "FracModule(%s)" % self.describe()

    def describe(self) -> str:
        gens = ", ".join(str(x) for x in self.minimal_generators())
        return "<" + gens + ">"

    @property
    def hull_degree(self) -> int:
        return self.hull.degree

    def index(self) -> int:
        """``l(M : O1)``; positive when ``M`` is bigger than ``O1``."""
        return self.jets.dim - self.curve.algebra.dim - self.hull.degree

    def _level(self) -> int:
        return self.jets.dim - self.hull.degree

    # -- elements ----------------------------------------------------------
    def contains(self, x) -> bool:
        x = as_ratfun(x)
        if not x:
            return True
        q = x / self.hull
        if not q.is_polynomial():
            return False
        return self.jets.contains(self.curve.jet(q))

    __contains__ = contains

    def generators(self) -> list[RationalFunction]:
        """Generators as an ``O1``-module (not minimal)."""
        c = self.curve
        out = [self.hull * c.lift(w) for w in self.jets.basis]
        f = c.conductor
        fd = f.degree if c.jdim else 0
        if c.jdim == 0:
            return [self.hull]
        for i in range(fd):
            out.append(self.hull * f * RationalFunction.monomial(i))
        return [x for x in out if x]

    def minimal_generators(self) -> list[RationalFunction]:
        """A short generating set, chosen greedily from :meth:`generators`."""
        c = self.curve
        # monomial multiples of the hull read better, so they are tried first
        top = c.jdim + max([b[1] for b in c.branches], default=0)
        mono = [self.hull * RationalFunction.monomial(i) for i in range(top + 1)]
        cand = [x for x in mono if self.contains(x)]
        lifts = sorted(self.generators(), key=lambda x: (x.degree, str(x)))
        cand += [x.monic() for x in lifts]
        # a generic combination generates any locally principal module
        if self.jets.dim:
            generic = RationalFunction([])
            for i, w in enumerate(self.jets.basis):
                generic = generic + RationalFunction.const(i + 1) * c.lift(w)
            if generic:
                cand.append((self.hull * generic).monic())
        for x in cand:
            if FracModule.from_generators(c, [x]) == self:
                return [x]
        chosen = []
        for x in cand:
            if chosen and FracModule.from_generators(c, chosen).contains(x):
                continue
            chosen.append(x)
            if FracModule.from_generators(c, chosen) == self:
                break
        return chosen

    def scale(self, x) -> "FracModule":
        x = as_ratfun(x)
        if not x:
            raise ModuleError("scaling by zero")
        return FracModule(self.curve, (x * self.hull).monic(), self.jets, _canonical=True)

    # -- containment ---------------------------------------------------
    def contains_module(self, other: "FracModule") -> bool:
        _same_curve(self, other)
        q = other.hull / self.hull
        if not q.is_polynomial():
            return False
        jq = self.curve.jet(q)
        return all(self.jets.contains(self.curve.jmul(jq, w)) for w in other.jets.basis)

    def __le__(self, other):
        return other.contains_module(self)

    def __ge__(self, other):
        return self.contains_module(other)


def _same_curve(a: FracModule, b: FracModule):
    if a.curve != b.curve:
        raise ModuleError("modules live on different curves")


def _min_order(curve: Curve, jets: Subspace, branch):
    _, c, _, off = branch
    best = c
    for w in jets.basis:
        for i in range(c):
            if w[off + i]:
                best = min(best, i)
                break
    return best


def _canonicalize(curve: Curve, hull: RationalFunction, jets: Subspace):
    if not hull:
        raise ModuleError("zero hull")
    if jets.window != curve.window:
        raise ModuleError("jet subspace lives in the wrong window")
    while True:
        pi = ONE_RF
        moved = False
        for br in curve.branches:
            r = _min_order(curve, jets, br)
            if r:
                moved = True
                pi = pi * RationalFunction.linear(br[0]) ** r
        if not moved:
            break
        hull = hull * pi
        jets = jets.preimage(curve.mult_matrix(curve.jet(pi)), curve.window)
    return hull.monic(), jets


# -- operations ------------------------------------------------------------


def structure_module(curve: Curve) -> FracModule:
    return FracModule.structure(curve)


def mprod(a: FracModule, b: FracModule) -> FracModule:
    _same_curve(a, b)
    c = a.curve
    vecs = [c.jmul(u, v) for u in a.jets.basis for v in b.jets.basis]
    return FracModule(c, a.hull * b.hull, Subspace(c.window, vecs))


def mpow(a: FracModule, n: int) -> FracModule:
    if n < 0:
        return mpow(colon(FracModule.structure(a.curve), a), -n)
    out = FracModule.structure(a.curve)
    for _ in range(n):
        out = mprod(out, a)
    return out


def msum(a: FracModule, b: FracModule) -> FracModule:
    _same_curve(a, b)
    c = a.curve
    g = ideal_gcd([a.hull, b.hull])
    ja = c.jet(a.hull / g)
    jb = c.jet(b.hull / g)
    vecs = [c.jmul(ja, w) for w in a.jets.basis] + [c.jmul(jb, w) for w in b.jets.basis]
    return FracModule(c, g, Subspace(c.window, vecs))


def _preimage_all(target: Subspace, mults, curve: Curve) -> Subspace:
    """``{u : m * u in target for every jet m in mults}``."""
    ann = target.annihilator()
    n = curve.jdim
    if not ann or not mults:
        return Subspace.full(curve.window)
    rows = []
    for m in mults:
        mt = transpose(curve.mult_matrix(m), n)
        for a in ann:
            rows.append(matvec(mt, a))
    return Subspace(curve.window, nullspace(rows, n))


def intersect(a: FracModule, b: FracModule) -> FracModule:
    _same_curve(a, b)
    c = a.curve
    L = ideal_lcm([a.hull, b.hull])
    wa = _preimage_all(a.jets, [c.jet(L / a.hull)], c)
    wb = _preimage_all(b.jets, [c.jet(L / b.hull)], c)
    from gendiv.qlinalg import intersect as sub_intersect

    return FracModule(c, L, sub_intersect(wa, wb))


def colon(a: FracModule, b: FracModule) -> FracModule:
    """``(a : b) = {x : x * b in a}``."""
    _same_curve(a, b)
    c = a.curve
    H = a.hull / b.hull
    W = _preimage_all(a.jets, list(b.jets.basis), c)
    return FracModule(c, H, W)


def index(a: FracModule) -> int:
    return a.index()


def length_between(a: FracModule, b: FracModule) -> int:
    """``l(a / b)`` for ``b`` contained in ``a``."""
    if not a.contains_module(b):
        raise ModuleError("length_between needs the second module inside the first")
    return a._level() - b._level()


def maximal_ideal(curve: Curve, cluster: int) -> FracModule:
    if not 0 <= cluster < len(curve.clusters):
        raise CurveError("no singular cluster %d" % cluster)
    return FracModule(curve, ONE_RF, curve.maximal_ideal_jets(cluster))


def point_ideal(curve: Curve, a) -> FracModule:
    """Ideal of the smooth affine point ``t = a``."""
    if curve.is_branch(a):
        raise CurveError("t=%s is a branch point" % a)
    # (t - a) O1 is usually not inside O1; the ideal is O1 cut with (t - a) QQ[t]
    lin = FracModule.normalization(curve, RationalFunction.linear(a))
    return intersect(FracModule.structure(curve), lin)


def fiber_dim(a: FracModule, cluster: int) -> int:
    """``dim M / m M`` at a singular cluster (minimal number of local generators)."""
    m = maximal_ideal(a.curve, cluster)
    return length_between(a, mprod(m, a))


def dual(a: FracModule) -> FracModule:
    return colon(FracModule.structure(a.curve), a)


def is_invertible(a: FracModule) -> bool:
    c = a.curve
    via_product = mprod(a, dual(a)) == FracModule.structure(c)
    via_fibers = all(fiber_dim(a, i) == 1 for i in range(len(c.clusters)))
    if via_product != via_fibers:  # pragma: no cover - would be an internal bug
        raise AssertionError("invertibility tests disagree for %r" % (a,))
    return via_product


def is_reflexive(a: FracModule, b: FracModule | None = None) -> bool:
    """Whether ``a == (b : (b : a))``; ``b`` defaults to ``O1``."""
    base = FracModule.structure(a.curve) if b is None else b
    return colon(base, colon(base, a)) == a


def endomorphisms(a: FracModule) -> FracModule:
    return colon(a, a)
