"""Rational curves with all singularities on the affine chart ``t``.

A curve is the projective line with finitely many *clusters* of rational
branch points glued or crimped together.  Each cluster is given by linear
conditions on Taylor coefficients ("jets") of polynomials at its branch
points; the ring of the singular chart is

    O1 = { p in QQ[t] : the jets of p satisfy every cluster condition }.

The neighbourhood of ``t = oo`` is always smooth.

All module computations downstairs happen in the *jet space*
``J = (+)_j QQ[x]/(x^c_j)``, one truncated power series ring per branch
``a_j`` with ``c_j`` its conductor order.  ``J`` is ``QQ[t]/(f)`` for the
conductor polynomial ``f = prod (t - a_j)^c_j`` and the algebra ``O1/(f)`` is
the subspace ``V`` of ``J``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import comb, gcd
from typing import Sequence

from gendiv.qlinalg import ONE, ZERO, LaurentWindow, Subspace, fmt_scalar, matvec, nullspace, scalar
from gendiv.ratfun import ONE_RF, RationalFunction, series_mul


class CurveError(ValueError):
    """Invalid curve data (validation failure)."""


class NotSubalgebraError(CurveError):
    pass


# -- clusters -------------------------------------------------------------


@dataclass(frozen=True)
class SingularityCluster:
    """Branches ``a_1..a_b`` identified to one point, plus local conditions.

    ``conditions`` is a canonical basis of linear functionals on the local jet
    space ``(+)_j QQ^{c_j}`` (branch-major, Taylor order minor) whose common
    kernel is the local algebra modulo the conductor.
    """

    branches: tuple
    conductor_orders: tuple
    conditions: tuple
    kind: str = "custom"
    params: tuple = ()  # preset arguments (points, or semigroup generators)

    @property
    def nbranches(self) -> int:
        return len(self.branches)

    @property
    def jet_dim(self) -> int:
        return sum(self.conductor_orders)

    @cached_property
    def algebra(self) -> Subspace:
        """Local algebra modulo the conductor, as a subspace of the local jet space."""
        n = self.jet_dim
        return Subspace(LaurentWindow(0, n - 1), nullspace(self.conditions, n))

    @property
    def delta(self) -> int:
        return self.jet_dim - self.algebra.dim

    def describe(self) -> str:
        pts = ", ".join(fmt_scalar(a) for a in self.branches)
        return "%s(%s)" % (self.kind, pts)


def _local_offsets(orders):
    offs = []
    o = 0
    for c in orders:
        offs.append(o)
        o += c
    return offs


def _local_mul(u, v, orders):
    out = []
    o = 0
    for c in orders:
        out.extend(series_mul(list(u[o : o + c]), list(v[o : o + c]), c))
        o += c
    return tuple(out)


def make_cluster(branches, terms, conductor_orders=None, kind="custom", params=()) -> SingularityCluster:
    """Build and validate a cluster.

    ``terms`` is a list of conditions, each a list of ``(branch, order, coeff)``
    triples meaning ``sum coeff * [coefficient of (t-a_branch)^order] = 0``.
    Conductor orders default to the support bound of the conditions; they are
    then lowered to the true conductor of the local algebra.
    """
    try:
        branches = tuple(scalar(a) for a in branches)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise CurveError("branch coordinates must be rational (%s)" % exc) from exc
    if not branches:
        raise CurveError("a cluster needs at least one branch")
    if len(set(branches)) != len(branches):
        raise CurveError("repeated branch coordinate in cluster %s" % (branches,))
    b = len(branches)
    parsed = []
    for cond in terms:
        row = []
        for item in cond:
            j, order, coeff = item
            j, order = int(j), int(order)
            if not 0 <= j < b:
                raise CurveError("condition refers to branch %d of %d" % (j, b))
            if order < 0:
                raise CurveError("negative Taylor order in condition")
            row.append((j, order, scalar(coeff)))
        parsed.append(row)
    support = [1] * b
    for row in parsed:
        for j, order, coeff in row:
            if coeff:
                support[j] = max(support[j], order + 1)
    if conductor_orders is None:
        orders = support
    else:
        orders = [int(c) for c in conductor_orders]
        if len(orders) != b:
            raise CurveError("need one conductor order per branch")
        for c, s in zip(orders, support):
            if c < s:
                raise CurveError("conductor order %d too small for conditions of order %d" % (c, s - 1))
    offs = _local_offsets(orders)
    n = sum(orders)
    rows = []
    for row in parsed:
        v = [ZERO] * n
        for j, order, coeff in row:
            v[offs[j] + order] += coeff
        rows.append(v)
    alg = Subspace(LaurentWindow(0, n - 1), nullspace(rows, n)) if rows else Subspace.full(LaurentWindow(0, n - 1))
    _check_subalgebra(alg, orders)
    # lower each order while the coordinate vectors above it lie in the algebra
    new_orders = []
    for j, c in enumerate(orders):
        c2 = c
        while c2 > 0:
            e = [ZERO] * n
            e[offs[j] + c2 - 1] = ONE
            if alg.contains(e):
                c2 -= 1
            else:
                break
        new_orders.append(c2)
    if any(c == 0 for c in new_orders):
        raise CurveError("branch %s of the cluster is not singular (conductor order 0)" % (branches,))
    if new_orders != orders:
        keep = [offs[j] + i for j, c in enumerate(new_orders) for i in range(c)]
        proj = [tuple(v[k] for k in keep) for v in alg.basis]
        alg = Subspace(LaurentWindow(0, len(keep) - 1), proj)
        orders = new_orders
    conditions = tuple(alg.annihilator())
    cl = SingularityCluster(branches, tuple(orders), conditions, kind, tuple(params))
    if cl.delta == 0:
        raise CurveError("cluster %s imposes no condition (smooth point)" % cl.describe())
    return cl


def _check_subalgebra(alg: Subspace, orders):
    n = sum(orders)
    offs = _local_offsets(orders)
    unit = [ZERO] * n
    for o in offs:
        unit[o] = ONE
    if not alg.contains(unit):
        raise NotSubalgebraError("not a subalgebra: the constant 1 violates the conditions")
    basis = alg.basis
    for i, u in enumerate(basis):
        for v in basis[i:]:
            if not alg.contains(_local_mul(u, v, orders)):
                raise NotSubalgebraError("not a subalgebra: conditions are not closed under multiplication")


def _pt(a):
    try:
        return scalar(a)
    except (TypeError, ValueError, ZeroDivisionError):
        raise CurveError("branch %r is not a rational number (only rational branches are supported)" % (a,)) from None


def node(a, b) -> SingularityCluster:
    """``{f : f(a) = f(b)}``."""
    return make_cluster([a, b], [[(0, 0, 1), (1, 0, -1)]], kind="node", params=(_pt(a), _pt(b)))


def cusp(a) -> SingularityCluster:
    """``{f : f'(a) = 0}``."""
    return make_cluster([a], [[(0, 1, 1)]], kind="cusp", params=(_pt(a),))


def tacnode(a, b) -> SingularityCluster:
    """``{f : f(a) = f(b), f'(a) = f'(b)}``."""
    return make_cluster(
        [a, b], [[(0, 0, 1), (1, 0, -1)], [(0, 1, 1), (1, 1, -1)]], kind="tacnode", params=(_pt(a), _pt(b))
    )


def semigroup_gaps(generators: Sequence[int]) -> list[int]:
    gens = [int(g) for g in generators]
    if not gens or any(g <= 0 for g in gens):
        raise CurveError("semigroup generators must be positive integers")
    d = 0
    for g in gens:
        d = gcd(d, g)
    if d != 1:
        raise CurveError("infinite colength: gcd of the generators is %d, not 1" % d)
    m = min(gens)
    # elements are found by dynamic programming up to a Frobenius bound
    bound = (m - 1) * (max(gens) - 1) + m + 1
    isin = [False] * (bound + 1)
    isin[0] = True
    for x in range(1, bound + 1):
        isin[x] = any(x >= g and isin[x - g] for g in gens)
    return [x for x in range(bound + 1) if not isin[x]]


def semigroup_cluster(generators: Sequence[int], at=0) -> SingularityCluster:
    gaps = semigroup_gaps(generators)
    if not gaps:
        raise CurveError("the semigroup %s has no gaps (smooth point)" % (list(generators),))
    gens = tuple(int(g) for g in generators)
    return make_cluster([at], [[(0, g, 1)] for g in gaps], conductor_orders=[max(gaps) + 1], kind="semigroup", params=gens)


PRESETS = {"node": (node, 2), "cusp": (cusp, 1), "tacnode": (tacnode, 2)}


# -- points ---------------------------------------------------------------


@dataclass(frozen=True)
class SmoothPoint:
    coordinate: object  # a rational t-value, or None for the point at infinity

    @property
    def at_infinity(self) -> bool:
        return self.coordinate is None

    def __str__(self):
        return "INF" if self.coordinate is None else "P(%s)" % fmt_scalar(self.coordinate)


@dataclass(frozen=True)
class SingularPoint:
    cluster: int

    def __str__(self):
        return "S(%d)" % self.cluster


INFINITY = SmoothPoint(None)


# -- the curve ---------------------------------------------------------------


class Curve:
    """A rational curve: the singular affine chart plus a smooth point at infinity."""

    def __init__(self, clusters: Sequence[SingularityCluster] = (), name: str | None = None, source=None):
        self.clusters = tuple(clusters)
        self.name = name
        self.source = source  # the curve-file document, when parsed from one
        seen = set()
        for cl in self.clusters:
            for a in cl.branches:
                if a in seen:
                    raise CurveError("branch t=%s belongs to two clusters" % fmt_scalar(a))
                seen.add(a)
        # global branch table: (a, c, cluster index, global offset)
        self.branches = []
        off = 0
        for i, cl in enumerate(self.clusters):
            for a, c in zip(cl.branches, cl.conductor_orders):
                self.branches.append((a, c, i, off))
                off += c
        self.jdim = off
        self.window = LaurentWindow(0, off - 1)
        self._branch_set = frozenset(seen)

    # equality is structural in the cluster data
    def __eq__(self, other):
        if not isinstance(other, Curve):
            return NotImplemented
        return self.clusters == other.clusters

    def __hash__(self):
        return hash(self.clusters)

    def __repr__(self):
        if self.name:
            return "Curve(%s)" % self.name
        return "Curve(%s)" % ", ".join(cl.describe() for cl in self.clusters)

    # -- invariants -------------------------------------------------------
    @property
    def genus(self) -> int:
        return self.jdim - self.algebra.dim

    @cached_property
    def cluster_slices(self) -> list[range]:
        out = []
        off = 0
        for cl in self.clusters:
            out.append(range(off, off + cl.jet_dim))
            off += cl.jet_dim
        return out

    @cached_property
    def algebra(self) -> Subspace:
        """``V = O1/(f)`` inside the jet space."""
        vecs = []
        for cl, sl in zip(self.clusters, self.cluster_slices):
            for b in cl.algebra.basis:
                v = [ZERO] * self.jdim
                for k, x in zip(sl, b):
                    v[k] = x
                vecs.append(v)
        return Subspace(self.window, vecs)

    @cached_property
    def conductor(self) -> RationalFunction:
        f = ONE_RF
        for a, c, _, _ in self.branches:
            f = f * RationalFunction.linear(a) ** c
        return f

    def is_branch(self, a) -> bool:
        return scalar(a) in self._branch_set

    def is_smooth(self) -> bool:
        return not self.clusters

    # -- jets ----------------------------------------------------------------
    def jet(self, x: RationalFunction) -> tuple:
        """Truncated Taylor data of ``x`` at every branch (``x`` regular there)."""
        out = []
        for a, c, _, _ in self.branches:
            out.extend(x.taylor(a, c))
        return tuple(out)

    def jmul(self, u, v) -> tuple:
        out = []
        for _, c, _, off in self.branches:
            out.extend(series_mul(list(u[off : off + c]), list(v[off : off + c]), c))
        return tuple(out)

    def mult_matrix(self, w) -> list[list]:
        """Matrix of ``u -> w * u`` on the jet space."""
        n = self.jdim
        m = [[ZERO] * n for _ in range(n)]
        for _, c, _, off in self.branches:
            for i in range(c):
                for k in range(i + 1):
                    x = w[off + i - k]
                    if x:
                        m[off + i][off + k] = x
        return m

    @cached_property
    def unit(self) -> tuple:
        v = [ZERO] * self.jdim
        for _, _, _, off in self.branches:
            v[off] = ONE
        return tuple(v)

    def monomial_jet(self, i: int) -> tuple:
        """Jets of ``t^i``."""
        out = []
        for a, c, _, _ in self.branches:
            for r in range(c):
                if r > i:
                    out.append(ZERO)
                elif a:
                    out.append(comb(i, r) * a ** (i - r))
                else:
                    out.append(ONE if r == i else ZERO)
        return tuple(scalar(x) for x in out)

    @cached_property
    def _lift_basis(self) -> list:
        """Polynomials of degree < deg f whose jets are the coordinate vectors."""
        n = self.jdim
        if n == 0:
            return []
        from gendiv.qlinalg import rref_rows

        cols = [self.monomial_jet(i) for i in range(n)]  # column i = jet(t^i)
        # reduce [I | A]: pivots land in the A block and the I block becomes A^-1
        aug = [[ONE if r == k else ZERO for k in range(n)] + [cols[i][r] for i in range(n)] for r in range(n)]
        basis, pivots = rref_rows(aug, 2 * n)
        inv = [[ZERO] * n for _ in range(n)]
        for row, p in zip(basis, pivots):
            i = p - n
            if i < 0:
                raise CurveError("singular jet matrix")
            for k in range(n):
                inv[i][k] = row[k]
        lifts = []
        for k in range(n):
            coeffs = [inv[i][k] for i in range(n)]  # coefficient of t^i
            lifts.append(RationalFunction(list(reversed(coeffs))))
        return lifts

    def lift(self, u) -> RationalFunction:
        """The polynomial of degree < deg f with jets ``u``."""
        out = RationalFunction([])
        for x, p in zip(u, self._lift_basis):
            if x:
                out = out + p * RationalFunction.const(x)
        return out

    # -- local pieces ----------------------------------------------------
    def cluster_mask(self, i: int) -> list[bool]:
        sl = self.cluster_slices[i]
        return [k in sl for k in range(self.jdim)]

    def maximal_ideal_jets(self, i: int) -> Subspace:
        """Jets of the maximal ideal of cluster ``i`` (inside ``V``)."""
        conds = []
        for _, _, ci, off in self.branches:
            if ci == i:
                e = [ZERO] * self.jdim
                e[off] = ONE
                conds.append(e)
        # V intersect {value at each branch of cluster i = 0}
        from gendiv.qlinalg import intersect

        return intersect(self.algebra, Subspace(self.window, nullspace(conds, self.jdim)))

    def validate_point(self, p):
        if isinstance(p, SmoothPoint):
            if p.coordinate is not None and self.is_branch(p.coordinate):
                raise CurveError("t=%s is a branch point, not a smooth point" % fmt_scalar(p.coordinate))
        elif isinstance(p, SingularPoint):
            if not 0 <= p.cluster < len(self.clusters):
                raise CurveError("no singular cluster %d (curve has %d)" % (p.cluster, len(self.clusters)))
        else:
            raise TypeError("not a point: %r" % (p,))
        return p

    def check_algebra(self):
        """Re-verify constant, closure and conductor containment on the jet level."""
        V = self.algebra
        assert V.contains(self.unit)
        for i, u in enumerate(V.basis):
            for v in V.basis[i:]:
                assert V.contains(self.jmul(u, v))
        # f * t^i has zero jets, so the conductor ideal maps into 0 in J; check
        # that the algebra jets of a few conductor multiples really vanish
        f = self.conductor
        for i in range(3):
            assert not any(self.jet(f * RationalFunction.monomial(i)))
        return True


# -- constructors ------------------------------------------------------------


def curve_from_semigroup(generators: Sequence[int], name=None) -> Curve:
    gaps = semigroup_gaps(generators)
    if not gaps:
        return Curve((), name=name or "P1")
    label = name or "semigroup-" + "".join(str(g) for g in generators)
    return Curve((semigroup_cluster(generators),), name=label)


def curve_from_clusters(clusters: Sequence[SingularityCluster], name=None) -> Curve:
    return Curve(tuple(clusters), name=name)


@dataclass(frozen=True)
class SingularityInvariants:
    delta: int
    branches: int
    toric_rank: int
    unipotent_dim: int

    def as_tuple(self):
        return (self.delta, self.branches, self.toric_rank, self.unipotent_dim)


def singularity_invariants(c: Curve, cluster: int) -> SingularityInvariants:
    if not 0 <= cluster < len(c.clusters):
        raise CurveError("no singular cluster %d" % cluster)
    cl = c.clusters[cluster]
    b = cl.nbranches
    return SingularityInvariants(cl.delta, b, b - 1, cl.delta - (b - 1))
