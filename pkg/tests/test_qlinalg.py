from fractions import Fraction

import sympy as sp
from hypothesis import given, strategies as st

from gendiv import _kernel_py
from gendiv.qlinalg import (
    KERNEL,
    LaurentWindow,
    Subspace,
    fmt_scalar,
    intersect,
    nullspace,
    quotient_dim,
    rank,
    rref,
    scalar,
    solve_membership,
    span_sum,
)

small = st.integers(-3, 3)


def matrices(max_rows=4, max_cols=5):
    return st.integers(1, max_cols).flatmap(
        lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=0, max_size=max_rows).map(lambda m: (m, n))
    )


def sym_rank(m, n):
    return sp.Matrix(m).rank() if m else 0


@given(matrices())
def test_rank_matches_sympy(mn):
    m, n = mn
    assert rank(m, n) == sym_rank(m, n)


@given(matrices())
def test_nullspace_dimension_and_kills_rows(mn):
    m, n = mn
    ns = nullspace(m, n)
    assert len(ns) == n - sym_rank(m, n)
    for v in ns:
        for row in m:
            assert sum(scalar(a) * b for a, b in zip(row, v)) == 0


@given(matrices(), st.integers(1, 5))
def test_normal_form_is_scale_invariant(mn, k):
    m, n = mn
    w = LaurentWindow(0, n - 1)
    a = rref(m, w)
    b = rref([[k * x for x in row] for row in reversed(m)], w)
    assert a == b
    assert a.basis == b.basis


def test_pivots_are_highest_entries():
    S = rref([(1, 2, 0), (0, 1, 1)], LaurentWindow(0, 2))
    for v in S.basis:
        top = max(i for i, x in enumerate(v) if x)
        assert v[top] == 1
        assert all(w[top] == 0 for w in S.basis if w is not v)


def test_kernel_contract_fallback():
    basis, piv = _kernel_py.rref([[scalar(0), scalar(2)], [scalar(1), scalar(1)]], 2)
    assert piv == sorted(piv)
    assert len(basis) == 2
    assert KERNEL in ("python", "compiled")


@given(matrices(3, 4), matrices(3, 4))
def test_sum_intersection_dimension_formula(a, b):
    (ma, n), (mb, _) = a, b
    mb = [row[:n] + [0] * (n - len(row)) for row in mb]
    w = LaurentWindow(0, n - 1)
    A, B = rref(ma, w), rref(mb, w)
    assert span_sum(A, B).dim + intersect(A, B).dim == A.dim + B.dim
    assert A.contains_subspace(intersect(A, B))
    assert span_sum(A, B).contains_subspace(A)
    assert quotient_dim(span_sum(A, B), A) == span_sum(A, B).dim - A.dim


@given(matrices(3, 4), st.lists(small, min_size=4, max_size=4))
def test_membership_coordinates(mn, coeffs):
    m, n = mn
    w = LaurentWindow(0, n - 1)
    S = rref(m, w)
    v = [0] * n
    for c, b in zip(coeffs, S.basis):
        v = [x + c * y for x, y in zip(v, b)]
    assert S.contains(v)
    x = solve_membership(v, S)
    assert x is not None


def test_annihilator_is_complement():
    w = LaurentWindow(-1, 2)
    S = rref([(1, 0, 1, 0)], w)
    ann = S.annihilator()
    assert len(ann) == 3
    for a in ann:
        assert sum(x * y for x, y in zip(a, S.basis[0])) == 0


def test_scalars_are_exact():
    assert scalar("3/6") == scalar(Fraction(1, 2))
    assert fmt_scalar(scalar("-4/2")) == "-2"
    try:
        scalar(0.5)
    except TypeError:
        pass
    else:
        raise AssertionError("floats must be refused")


def test_empty_window_is_allowed():
    w = LaurentWindow(0, -1)
    assert w.size == 0
    assert Subspace.full(w).dim == 0
