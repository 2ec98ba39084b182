from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from ghostw.exactmath import (
    RationalMatrix,
    SparseEchelon,
    format_rational,
    in_span,
    kernel_basis,
    parse_rational,
    rank,
    rref,
    solve,
)

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def matrices(draw, max_rows=6, max_cols=7):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    # sparse-ish entries so kernels are frequently non-trivial
    cell = st.one_of(st.just(Fraction(0)), st.just(Fraction(0)), small)
    rows = draw(st.lists(st.lists(cell, min_size=c, max_size=c), min_size=r, max_size=r))
    return RationalMatrix.from_rows(rows)


def test_kernel_examples():
    assert kernel_basis(RationalMatrix.from_rows([[1]])) == []
    assert kernel_basis(RationalMatrix.from_rows([[1, -1]])) == [(1, 1)]
    assert kernel_basis(RationalMatrix.from_rows([[1, 0, -1], [0, 1, -1]])) == [(1, 1, 1)]


def test_in_span_examples():
    ok, co = in_span([0, 0], [[1, 1]])
    assert ok and co == [0]
    ok, co = in_span([2, 2], [[1, 1]])
    assert ok and co == [2]
    assert in_span([1, 0], [[1, 1]]) == (False, None)
    with pytest.raises(ValueError):
        in_span([1, 0, 0], [[1, 1]])


def test_no_explicit_zeros_stored():
    m = RationalMatrix.from_rows([[0, 1], [Fraction(0), Fraction(3, 6)]])
    assert set(m.entries) == {(0, 1), (1, 1)}
    assert m[1, 1] == Fraction(1, 2)


def test_rational_formatting_roundtrip():
    for x in [Fraction(0), Fraction(-3, 4), Fraction(7), Fraction(10, -4)]:
        assert parse_rational(format_rational(x)) == x
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(-1, 2)) == "-1/2"


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_kernel_vectors_annihilate(m):
    for v in kernel_basis(m):
        assert all(x == 0 for x in m.mul_vector(v))


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_nullity(m):
    assert rank(m) + len(kernel_basis(m)) == m.cols


@settings(max_examples=100, deadline=None)
@given(matrices(), st.randoms(use_true_random=False))
def test_kernel_row_permutation_invariant(m, rnd):
    rows = m.to_rows()
    rnd.shuffle(rows)
    assert kernel_basis(RationalMatrix.from_rows(rows)) == kernel_basis(m)


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_kernel_matches_sympy(m):
    # same space, and rank agrees with sympy's exact rank
    sm = sympy.Matrix(m.rows, m.cols, lambda i, j: sympy.Rational(m[i, j].numerator, m[i, j].denominator))
    ns = sm.nullspace()
    ours = kernel_basis(m)
    assert len(ns) == len(ours)
    assert sm.rank() == rank(m)
    if ours:
        ours_m = sympy.Matrix([list(v) for v in ours]).T
        theirs = sympy.Matrix.hstack(*ns)
        assert sympy.Matrix.hstack(ours_m, theirs).rank() == len(ours)


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_rref_matches_sympy(m):
    sm = sympy.Matrix(m.rows, m.cols, lambda i, j: sympy.Rational(m[i, j].numerator, m[i, j].denominator))
    ref, pivots = sm.rref()
    ours = rref(m)
    assert tuple(p for p, _ in ours) == pivots
    for k, (p, row) in enumerate(ours):
        for j in range(m.cols):
            assert Fraction(row.get(j, 0)) == Fraction(int(ref[k, j].p), int(ref[k, j].q))


@settings(max_examples=100, deadline=None)
@given(matrices(), st.data())
def test_solve_and_span(m, data):
    x = data.draw(st.lists(small, min_size=m.cols, max_size=m.cols))
    rhs = m.mul_vector(x)
    sol = solve(m, rhs)
    assert sol is not None and m.mul_vector(sol) == rhs
    cols = [list(c) for c in zip(*m.to_rows())]
    ok, co = in_span(rhs, cols)
    assert ok
    assert [sum(c * col[i] for c, col in zip(co, cols)) for i in range(m.rows)] == rhs


def test_kernel_entries_are_coprime_integers():
    m = RationalMatrix.from_rows([[Fraction(1, 2), Fraction(1, 3), Fraction(-5, 6)]])
    for v in kernel_basis(m):
        assert all(isinstance(x, int) for x in v)
        g = 0
        for x in v:
            g = sympy.igcd(g, x)
        assert g == 1


def test_sparse_echelon():
    e = SparseEchelon()
    assert e.add({"a": 1, "b": 2})
    assert not e.add({"a": 2, "b": 4})
    assert e.add({"b": 1})
    assert e.contains({"a": 5})
    assert e.rank == 2
    f = SparseEchelon()
    f.add({"a": 1})
    f.add({"b": 3})
    assert e.same_span(f)
