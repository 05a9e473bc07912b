import pytest

from gendiv.cli.props import SUITES, run_suite, shrink


@pytest.mark.parametrize("suite", SUITES)
def test_suites_are_clean_and_deterministic(suite):
    a = run_suite(suite, 4, seed=99)
    b = run_suite(suite, 4, seed=99)
    assert a.passed, [v.as_dict() for v in a.violations]
    assert a.as_dict() == b.as_dict()
    assert a.checks > 0


def test_reflexivity_expected_failures_on_345():
    rep = run_suite("reflexivity", 3, seed=1)
    assert any(v.curve == "semigroup-345" for v in rep.expected_failures)
    assert all(v.curve == "semigroup-345" for v in rep.expected_failures)


def test_general_position_counterexample_is_exhibited():
    rep = run_suite("general-position", 3, seed=1)
    ex = [v for v in rep.expected_failures if v.curve == "semigroup-345"]
    assert ex and ex[0].witness.startswith("S(0)+")


def test_shrink_minimizes():
    atoms = ["P(1)", "S(0)", "P(2)", "INF", "P(3)"]
    assert shrink(atoms, lambda at: "S(0)" in at) == ["S(0)"]
    assert len(shrink(atoms, lambda at: len(at) >= 2)) == 2


def test_violation_is_reported_and_shrunk():
    from gendiv.cli import props

    rep = props.SuiteReport("x", 0, 1)
    props._check(rep, "x", "cusp", "no singular atoms", ["P(2)", "S(0)", "P(3)"], lambda at: "S(0)" in at)
    assert rep.violations[0].witness == "S(0)"


def test_bad_suite_and_trials():
    with pytest.raises(KeyError):
        run_suite("nope", 1)
    with pytest.raises(ValueError):
        run_suite("monoid", 0)
