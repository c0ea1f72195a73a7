from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bifocal.errors import RankError, ShapeError
from bifocal.paper_example import G_CORRECTED, G_DISPLAYED
from bifocal.ratmat import (RatMat, annihilator, columnspace_intersection, det, format_rat,
                            inverse, kernel_basis, left_inverse, rank_of, rat, right_inverse,
                            rref, solve_left, span, span_of, subspace_sum)

from conftest import matrices, small_rationals, square_matrices, to_sympy


def leibniz(m: RatMat) -> Fraction:
    n = m.rows
    total = Fraction(0)
    for p in permutations(range(n)):
        inv = sum(p[a] > p[b] for a in range(n) for b in range(a + 1, n))
        term = Fraction((-1) ** inv)
        for r in range(n):
            term *= m[r, p[r]]
        total += term
    return total


def test_rat_and_format():
    assert rat("3/6") == Fraction(1, 2)
    assert rat(2) == 2
    assert format_rat(Fraction(-4, 6)) == "-2/3"
    assert format_rat(Fraction(5)) == "5"
    with pytest.raises(TypeError):
        rat(True)
    with pytest.raises(TypeError):
        rat(0.5)


def test_construction_and_shape_errors():
    with pytest.raises(ShapeError):
        RatMat([[1, 2], [3]])
    with pytest.raises(ShapeError):
        RatMat([[1, 2]]) @ RatMat([[1, 2]])
    with pytest.raises(ShapeError):
        det(RatMat([[1, 2]]))
    assert det(RatMat([], cols=0)) == 1
    m = RatMat([[1, 2], [3, 4]])
    with pytest.raises(AttributeError):
        m.rows = 3
    assert m.T == RatMat([[1, 3], [2, 4]])
    assert RatMat.block_diag(RatMat.identity(1), m).shape == (3, 3)


@given(square_matrices(max_dim=5))
def test_det_matches_leibniz(m):
    assert det(m) == leibniz(m)


@given(square_matrices(max_dim=4), square_matrices(max_dim=4))
def test_det_multiplicative(a, b):
    if a.rows == b.rows:
        assert det(a @ b) == det(a) * det(b)


def test_det_of_example_frame_changes():
    assert det(G_DISPLAYED) == Fraction(-1, 2)
    assert det(G_CORRECTED) == Fraction(-1, 2)


@given(matrices(max_dim=5))
def test_rank_and_rref_match_sympy(m):
    sm = to_sympy(m)
    assert rank_of(m) == sm.rank()
    red, piv = rref(m)
    sred, spiv = sm.rref()
    assert piv == tuple(spiv)
    assert to_sympy(red) == sred


@given(square_matrices(max_dim=5))
def test_inverse(m):
    if det(m) == 0:
        with pytest.raises(RankError):
            inverse(m)
    else:
        assert m @ inverse(m) == RatMat.identity(m.rows)


@given(matrices(max_dim=5))
def test_kernel_and_rank_nullity(m):
    ker = kernel_basis(m)
    assert ker.dim == m.cols - rank_of(m)
    assert (m @ ker.basis).is_zero() if ker.dim else True


@given(matrices(max_dim=5))
def test_one_sided_inverses(m):
    if rank_of(m) == m.rows:
        assert m @ right_inverse(m) == RatMat.identity(m.rows)
    else:
        with pytest.raises(RankError):
            right_inverse(m)
    if rank_of(m) == m.cols:
        assert left_inverse(m) @ m == RatMat.identity(m.cols)


@given(matrices(rows=3, cols=5), matrices(rows=2, cols=3))
def test_solve_left(a, n):
    x = n @ a
    assert solve_left(x, a) @ a == x


def test_solve_left_inconsistent():
    with pytest.raises(RankError):
        solve_left(RatMat([[0, 1]]), RatMat([[1, 0]]))


@given(matrices(rows=5, max_dim=4), matrices(rows=5, max_dim=4))
def test_grassmann_formula(a, b):
    inter = columnspace_intersection(a, b)
    total = subspace_sum(span(a), span(b))
    assert span(a).dim + span(b).dim == total.dim + inter.dim
    for j in range(inter.dim):
        v = inter.basis.col(j)
        assert span(a).contains(v) and span(b).contains(v)


@given(matrices(rows=5, max_dim=4))
def test_annihilator(a):
    s = span(a)
    ann = annihilator(s)
    assert ann.dim == 5 - s.dim
    if ann.dim and s.dim:
        assert (ann.basis.T @ s.basis).is_zero()
    assert annihilator(ann) == s


@given(matrices(rows=4, max_dim=4), st.lists(small_rationals, min_size=16, max_size=16))
def test_span_is_canonical(a, mix):
    g = RatMat([mix[r * 4:(r + 1) * 4] for r in range(4)], cols=4).submatrix(range(a.cols), range(a.cols))
    if det(g):
        assert span(a @ g) == span(a)


def test_span_of_vectors():
    s = span_of([(1, 0, 0), (2, 0, 0)], 3)
    assert s.dim == 1 and s.contains((5, 0, 0)) and not s.contains((0, 1, 0))
    assert span_of([], 3).dim == 0


def test_intersection_shape_mismatch():
    with pytest.raises(ShapeError):
        columnspace_intersection(RatMat.identity(2), RatMat.identity(3))
