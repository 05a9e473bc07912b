import pytest
from hypothesis import given, strategies as st

from gendiv.curvespec import (
    Curve,
    CurveError,
    NotSubalgebraError,
    curve_from_clusters,
    curve_from_semigroup,
    cusp,
    make_cluster,
    node,
    semigroup_gaps,
    singularity_invariants,
    tacnode,
)
from gendiv.fracmod import FracModule
from gendiv.ratfun import RationalFunction as RF

from oracles import semigroup

SEMIGROUPS = [[2, 3], [2, 5], [3, 4], [3, 4, 5], [3, 5, 7], [4, 5, 6, 7], [3, 5], [4, 6, 7]]


@pytest.mark.parametrize("gens", SEMIGROUPS)
def test_genus_is_number_of_gaps(gens):
    S = semigroup(gens)
    gaps = [x for x in range(50) if x not in S]
    assert semigroup_gaps(gens) == gaps
    assert curve_from_semigroup(gens).genus == len(gaps)


@pytest.mark.parametrize("gens", SEMIGROUPS)
def test_semigroup_ring_membership(gens):
    c = curve_from_semigroup(gens)
    O = FracModule.structure(c)
    S = semigroup(gens)
    for e in range(0, 15):
        assert O.contains(RF.monomial(e)) == (e in S)


def test_gcd_not_one_is_rejected():
    with pytest.raises(CurveError, match="infinite colength"):
        curve_from_semigroup([2, 4])


def test_non_subalgebra_is_rejected():
    # f'(0) = f''(0) is not closed under products
    with pytest.raises(NotSubalgebraError):
        make_cluster([0], [[(0, 1, 1), (0, 2, -1)]], [3])


def test_irrational_branch_is_rejected():
    with pytest.raises(CurveError):
        node("sqrt(2)", 0)


def test_overlapping_clusters_rejected():
    with pytest.raises(CurveError):
        curve_from_clusters([node(0, 1), cusp(1)])


@pytest.mark.parametrize(
    "cl, genus, inv",
    [
        (node(1, -1), 1, (1, 2, 1, 0)),
        (cusp(0), 1, (1, 1, 0, 1)),
        (tacnode(1, -1), 2, (2, 2, 1, 1)),
    ],
)
def test_preset_invariants(cl, genus, inv):
    c = curve_from_clusters([cl])
    assert c.genus == genus
    r = singularity_invariants(c, 0)
    assert (r.delta, r.branches, r.toric_rank, r.unipotent_dim) == inv


def test_conductor_is_inside_the_ring():
    for cl in (node(1, -1), cusp(0), tacnode(2, 3)):
        c = curve_from_clusters([cl])
        O = FracModule.structure(c)
        f = c.conductor
        for i in range(4):
            assert O.contains(f * RF.monomial(i))


def test_conductor_orders_are_lowered():
    # f(0) = f(1) with a needlessly large order still gives the node
    cl = make_cluster([0, 1], [[(0, 0, 1), (1, 0, -1)]], [3, 2])
    assert cl.conductor_orders == (1, 1)
    assert cl == node(0, 1) or cl.conditions == node(0, 1).conditions


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=4))
def test_lift_roundtrip(coeffs):
    c = curve_from_clusters([node(1, -1), cusp(3)])
    p = RF(coeffs)
    assert c.jet(c.lift(c.jet(p))) == c.jet(p)


def test_equality_ignores_names():
    a = curve_from_semigroup([3, 4, 5])
    b = Curve(a.clusters, name="other")
    assert a == b and hash(a) == hash(b)
    assert a != curve_from_semigroup([2, 3])


def test_smooth_curve():
    c = curve_from_semigroup([1])
    assert c.genus == 0 and c.is_smooth
