from fractions import Fraction
from math import comb, factorial

import pytest

from macmahon.charpoly import (
    MatrixFormatError,
    PartialPermutation,
    SymMatrix,
    alpha,
    char_coeffs,
    determinant,
    enumerate_partial_perms,
    matrix_from_json_obj,
    scale_rows_by_t,
    second_factor,
)
from macmahon.polyring import Poly, avar, elementary_sym, tvar
from macmahon.words import AlgebraParams

A11, A12, A21, A22 = (Poly.variable(avar(i, j)) for i in (1, 2) for j in (1, 2))
T1, T2 = Poly.variable(tvar(1)), Poly.variable(tvar(2))


def partial_perm_expansion(matrix: SymMatrix, r: int) -> Poly:
    # the minor sums written out over partial permutations; the global
    # (-1)**r is essential (see test_sign_correction_counterexample)
    total = Poly.zero()
    for pp in enumerate_partial_perms(matrix.m, r):
        total = total + (-1) ** pp.inv * pp.a_weight(matrix)
    return (-1) ** r * total


def identity_minus(matrix: SymMatrix) -> SymMatrix:
    rows = []
    for i in range(matrix.m):
        rows.append(tuple(
            (Poly.one() if i == j else Poly.zero()) - matrix.entries[i][j]
            for j in range(matrix.m)
        ))
    return SymMatrix(matrix.m, tuple(rows))


def test_char_coeffs_2x2_symbolic():
    coeffs = char_coeffs(scale_rows_by_t(SymMatrix.symbolic(2)))
    assert coeffs[0] == Poly.one()
    assert coeffs[1] == -(A11 * T1 + A22 * T2)
    assert coeffs[2] == T1 * T2 * (A11 * A22 - A12 * A21)


@pytest.mark.parametrize("m", [2, 3])
def test_char_coeffs_match_partial_perm_expansion(m):
    matrix = scale_rows_by_t(SymMatrix.symbolic(m))
    coeffs = char_coeffs(matrix)
    for r in range(m + 1):
        assert coeffs[r] == partial_perm_expansion(matrix, r)


@pytest.mark.parametrize("m", [2, 3])
def test_char_coeffs_sum_to_det_of_identity_minus(m):
    # evaluating the characteristic polynomial at lambda = 1
    matrix = scale_rows_by_t(SymMatrix.symbolic(m))
    total = Poly.zero()
    for c in char_coeffs(matrix):
        total = total + c
    assert total == determinant(identity_minus(matrix))


def test_sign_correction_counterexample():
    # for A = I (m = 2) the signed expansion gives det(I - A) = 0 at
    # t = 1; without the (-1)**r it would give 4 instead
    matrix = SymMatrix.identity(2)
    with_sign = Poly.zero()
    without_sign = Poly.zero()
    for r in range(3):
        term = Poly.zero()
        for pp in enumerate_partial_perms(2, r):
            term = term + (-1) ** pp.inv * pp.a_weight(matrix)
        with_sign = with_sign + (-1) ** r * term
        without_sign = without_sign + term
    assert with_sign == 0
    assert without_sign == 4


def test_char_coeffs_identity_and_diagonal():
    # TA for A = I has c_r = (-1)^r e_r(t_1 .. t_m)
    for m in (2, 3, 4):
        coeffs = char_coeffs(scale_rows_by_t(SymMatrix.identity(m)))
        for r in range(m + 1):
            assert coeffs[r] == (-1) ** r * elementary_sym(r, m)
    # diagonal entries scale the markers
    coeffs = char_coeffs(scale_rows_by_t(SymMatrix.from_rows([[2, 0], [0, 3]])))
    assert coeffs[1] == -(2 * T1 + 3 * T2)
    assert coeffs[2] == 6 * T1 * T2


def test_partial_perm_counts_and_validation():
    for m in range(1, 6):
        for r in range(m + 1):
            pps = list(enumerate_partial_perms(m, r))
            assert len(pps) == comb(m, r) * factorial(r)
            assert len(set(pps)) == len(pps)
    assert list(enumerate_partial_perms(3, 0)) == [PartialPermutation.make((), ())]
    assert [pp.images for pp in enumerate_partial_perms(2, 2)] == [(1, 2), (2, 1)]
    with pytest.raises(ValueError):
        PartialPermutation.make((1, 3), (1, 2))
    with pytest.raises(ValueError):
        enumerate_partial_perms(2, 3).__next__()


def test_alpha_parity():
    # alpha(r) = k * floor(r/k), so it is even iff floor(r/k) is even
    for k in range(2, 7):
        for r in range(13):
            assert alpha(r, k) == r - (r % k) == k * (r // k)
            assert (alpha(r, k) % 2 == 0) == ((r // k) % 2 == 0 or k % 2 == 0)
    assert [alpha(r, 3) for r in range(8)] == [0, 0, 0, 3, 3, 3, 6, 6]


@pytest.mark.parametrize("m", [2, 3, 4])
def test_second_factor_k2_is_det(m):
    params = AlgebraParams(m, 2)
    matrix = SymMatrix.symbolic(m)
    assert second_factor(matrix, params) == determinant(identity_minus(scale_rows_by_t(matrix)))


def test_second_factor_identity_matrix():
    e = elementary_sym
    assert second_factor(SymMatrix.identity(3), AlgebraParams(3, 3)) == \
        Poly.one() - e(1, 3) + e(3, 3)
    assert second_factor(SymMatrix.identity(4), AlgebraParams(4, 3)) == \
        Poly.one() - e(1, 4) + e(3, 4) - e(4, 4)
    assert second_factor(SymMatrix.identity(4), AlgebraParams(4, 4)) == \
        Poly.one() - e(1, 4) + e(4, 4)


def test_second_factor_size_mismatch():
    with pytest.raises(ValueError):
        second_factor(SymMatrix.identity(3), AlgebraParams(2, 2))


def test_random_matrix_reproducible():
    a = SymMatrix.random(3, seed=7)
    b = SymMatrix.random(3, seed=7)
    assert a == b
    # frozen draw: the SplitMix64 stream must never change
    assert a.scalar_rows() == [[-1, 3, -3], [1, 1, -2], [-2, 0, -2]]
    assert SymMatrix.random(2, seed=2024).scalar_rows() == [[2, -1], [0, 3]]
    assert SymMatrix.random(3, seed=8) != a
    flat = [v for row in SymMatrix.random(5, seed=123).scalar_rows() for v in row]
    assert all(-3 <= v <= 3 for v in flat)


def test_matrix_json_numeric():
    obj = {"m": 2, "mode": "numeric", "entries": [["1/2", "0"], [3, "-2/3"]]}
    matrix = matrix_from_json_obj(obj)
    assert matrix.scalar_rows() == [[Fraction(1, 2), 0], [3, Fraction(-2, 3)]]
    assert matrix_from_json_obj({"m": 2, "mode": "symbolic"}) == SymMatrix.symbolic(2)


def test_matrix_json_errors_name_the_entry():
    with pytest.raises(MatrixFormatError):
        matrix_from_json_obj([1, 2])
    with pytest.raises(MatrixFormatError):
        matrix_from_json_obj({"mode": "numeric"})
    with pytest.raises(MatrixFormatError):
        matrix_from_json_obj({"m": 2, "mode": "other"})
    with pytest.raises(MatrixFormatError):
        matrix_from_json_obj({"m": 2, "entries": [["1"]]})
    with pytest.raises(MatrixFormatError, match=r"\(2,1\)"):
        matrix_from_json_obj({"m": 2, "entries": [["1", "2"], [1.5, "4"]]})
    with pytest.raises(MatrixFormatError, match=r"\(1,2\)"):
        matrix_from_json_obj({"m": 2, "entries": [["1", "2.5"], ["3", "4"]]})
    with pytest.raises(MatrixFormatError, match=r"\(1,1\)"):
        matrix_from_json_obj({"m": 1, "entries": [["1/0"]]})


def test_scale_rows_by_t():
    scaled = scale_rows_by_t(SymMatrix.symbolic(2))
    assert scaled.entry(1, 2) == T1 * A12
    assert scaled.entry(2, 1) == T2 * A21
