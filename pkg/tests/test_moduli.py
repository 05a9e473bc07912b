import pytest

from gendiv import divisors as dv
from gendiv.cli.curvefile import load_curve
from gendiv.curvespec import SingularPoint
from gendiv.moduli import (
    SheafClass,
    ThetaError,
    abel_fiber,
    classify_degree2_example,
    distinguished_class,
    jacobian_kernel_report,
    lies_on_theta,
    nonreduced_ideal,
    theta_formula,
    theta_multiplicity,
)
from gendiv.sheafcoh import pushforward_line_bundle, structure_sheaf


@pytest.mark.parametrize(
    "name, want",
    [("node", (1, 1, 0)), ("cusp", (1, 0, 1)), ("tacnode", (2, 1, 1)), ("semigroup-345", (2, 0, 2)),
     ("two-node-genus-2", (2, 2, 0))],
)
def test_kernel_ranks(name, want):
    r = jacobian_kernel_report(load_curve(name))
    assert (r.delta, r.toric_rank, r.unipotent_dim) == want
    assert r.total == load_curve(name).genus


def test_theta_formula_values():
    assert theta_formula(0, 1) == 1
    assert theta_formula(1, 2) == 4
    assert theta_formula(3, 1) == 8
    with pytest.raises(ThetaError):
        theta_formula(1, 0)


def test_theta_on_nodal_curves():
    node = load_curve("node")
    cls = SheafClass.of(structure_sheaf(node))
    assert lies_on_theta(cls) and theta_multiplicity(cls) == 1
    two = load_curve("two-node-genus-2")
    cls = SheafClass.of(pushforward_line_bundle(two, 0))
    assert cls.non_free_clusters == (0, 1)
    assert theta_multiplicity(cls) == 4
    assert not lies_on_theta(cls)  # degree 2 = g


def test_theta_refuses_non_nodal_and_sectionless():
    with pytest.raises(ThetaError):
        theta_multiplicity(SheafClass.of(structure_sheaf(load_curve("cusp"))))
    with pytest.raises(ThetaError):
        theta_multiplicity(SheafClass.of(pushforward_line_bundle(load_curve("node"), -3)))


def test_abel_fiber(c345):
    D = distinguished_class(c345)
    f = abel_fiber(D)
    assert f.fiber_dim == 1
    assert f.sheaf_class.same_class(SheafClass.of(pushforward_line_bundle(c345, 1)))


def test_nonreduced_ideal_member(c345):
    D0 = nonreduced_ideal(c345, [(0, 1, 0), (0, 0, 1)])
    assert dv.degree(D0) == 2 and dv.is_effective(D0)
    assert dv.lin_equiv(D0, distinguished_class(c345)) is not None


def test_classification(c345):
    rep = classify_degree2_example(c345, samples=24, seed=3)
    assert rep.passed, rep.violations
    assert rep.dims() == {0, 1}
    outside = [r for r in rep.rows if not r.cartier and not r.member]
    assert len(outside) >= 20
    assert all(r.normalization_class and r.dim == 0 for r in outside)


def test_classification_requires_345():
    with pytest.raises(Exception):
        classify_degree2_example(load_curve("cusp"))
