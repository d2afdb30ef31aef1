from fractions import Fraction
from itertools import product

import pytest

from macmahon.charpoly import SymMatrix, second_factor
from macmahon.identity import (
    FirstFactorSeries,
    _report_from_residuals,
    first_factor,
    g_coefficient,
    verify_corollary,
    verify_master,
)
from macmahon.polyring import Poly, avar, tvar
from macmahon.rewrite import _normal_form_terms, reversion_vector
from macmahon.words import AlgebraParams, enumerate_admissible

P22 = AlgebraParams(2, 2)
P32 = AlgebraParams(3, 2)
P33 = AlgebraParams(3, 3)


def expansion_route(matrix, word, params):
    # the coefficient of `word` in the product of the y's, by expanding all
    # m**l terms and rewriting each one
    rows = matrix.scalar_rows() if matrix.is_numeric() else matrix.entries
    total = Poly.zero()
    for j in product(range(1, params.m + 1), repeat=len(word)):
        weight = Poly.one()
        for a, b in zip(word, j):
            weight = weight * rows[a - 1][b - 1]
        coeff = _normal_form_terms(j, params).get(tuple(word), 0)
        if coeff:
            total = total + coeff * weight
    return total


def path_sum_route(matrix, word, params, cache):
    # same coefficient through reversion-path counts instead of rewriting
    rows = matrix.scalar_rows() if matrix.is_numeric() else matrix.entries
    total = Poly.zero()
    for j in product(range(1, params.m + 1), repeat=len(word)):
        coeff = reversion_vector(j, params, cache).get(tuple(word), 0)
        if coeff:
            weight = Poly.one()
            for a, b in zip(word, j):
                weight = weight * rows[a - 1][b - 1]
            total = total + coeff * weight
    return total


def test_first_factor_triangular_example():
    table = first_factor(SymMatrix.from_rows([[1, 1], [0, 1]]), P22, 2)
    assert table.mode == "numeric"
    assert table.coeffs == {
        (): 1, (1,): 1, (2,): 1, (1, 1): 1, (1, 2): 1, (2, 2): 1,
    }
    assert table.g((1, 2)) == Poly.one()
    assert table.degree_totals() == [1, 2, 3]


def test_g_coefficient_symbolic_2x2():
    matrix = SymMatrix.symbolic(2)
    a = {(i, j): Poly.variable(avar(i, j)) for i in (1, 2) for j in (1, 2)}
    assert g_coefficient(matrix, (1, 2), P22) == a[1, 1] * a[2, 2] + a[1, 2] * a[2, 1]
    assert g_coefficient(matrix, (1,), P22) == a[1, 1]
    assert g_coefficient(matrix, (), P22) == Poly.one()


def test_g_coefficient_validation():
    with pytest.raises(ValueError):
        g_coefficient(SymMatrix.identity(3), (2, 1), P32)
    with pytest.raises(ValueError):
        g_coefficient(SymMatrix.identity(2), (1,), P33)
    with pytest.raises(ValueError):
        first_factor(SymMatrix.identity(2), P33, 3)
    with pytest.raises(ValueError):
        first_factor(SymMatrix.identity(3), P33, -1)


def test_identity_matrix_gives_indicator():
    table = first_factor(SymMatrix.identity(3), P33, 4)
    for length in range(5):
        for word in enumerate_admissible(P33, length):
            assert table.coeffs.get(word) == 1
    assert len(table.coeffs) == 1 + 3 + 9 + 26 + 75


def test_diagonal_matrix_scales_letters():
    d = {1: Fraction(1, 2), 2: 3, 3: Fraction(-2, 5)}
    matrix = SymMatrix.from_rows([
        [d[1], 0, 0], [0, d[2], 0], [0, 0, d[3]],
    ])
    table = first_factor(matrix, P33, 4)
    for word, coeff in table.coeffs.items():
        expected = 1
        for letter in word:
            expected *= d[letter]
        assert coeff == expected


def test_zero_rows_prune_words():
    # second generator resums to nothing, so no word may start with it
    table = first_factor(SymMatrix.from_rows([[1, 0], [0, 0]]), P22, 3)
    assert all(2 not in word for word in table.coeffs)


@pytest.mark.parametrize("matrix,params,cap", [
    (SymMatrix.random(3, seed=5), P32, 4),
    (SymMatrix.random(3, seed=6), P33, 4),
    (SymMatrix.symbolic(3), P33, 3),
])
def test_first_factor_matches_g_coefficient(matrix, params, cap):
    table = first_factor(matrix, params, cap)
    for length in range(cap + 1):
        for word in enumerate_admissible(params, length):
            assert table.g(word) == g_coefficient(matrix, word, params)


@pytest.mark.parametrize("matrix", [
    SymMatrix.random(3, seed=9),
    SymMatrix.symbolic(3),
])
@pytest.mark.parametrize("params", [P32, P33])
def test_g_routes_agree(matrix, params):
    # incremental left-multiplication vs full expansion vs path-count sum
    cache = {}
    for length in range(5 if matrix.is_numeric() else 4):
        for word in enumerate_admissible(params, length):
            incremental = g_coefficient(matrix, word, params)
            assert incremental == expansion_route(matrix, word, params)
            assert incremental == path_sum_route(matrix, word, params, cache)


def test_shared_row_path_matches_general():
    for params in (P32, P33):
        shared = first_factor(SymMatrix.ones(3), params, 5)
        general = first_factor(SymMatrix.ones(3), params, 5, _force_general=True)
        assert shared.coeffs == general.coeffs
    uneven = SymMatrix.from_rows([[2, -1], [2, -1]])
    assert first_factor(uneven, P22, 5).coeffs == \
        first_factor(uneven, P22, 5, _force_general=True).coeffs


def test_series_collects_words_by_monomial():
    table = first_factor(SymMatrix.identity(2), P22, 2)
    series = table.series()
    t1, t2 = Poly.variable(tvar(1)), Poly.variable(tvar(2))
    assert series.poly == 1 + t1 + t2 + t1 ** 2 + t1 * t2 + t2 ** 2
    assert series.cap == 2


def test_first_factor_series_symbolic_degree_one():
    series = first_factor(SymMatrix.symbolic(2), P22, 1).series()
    a = {(i, j): Poly.variable(avar(i, j)) for i in (1, 2) for j in (1, 2)}
    t1, t2 = Poly.variable(tvar(1)), Poly.variable(tvar(2))
    assert series.poly == 1 + a[1, 1] * t1 + a[2, 2] * t2


def test_verify_master_small_numeric():
    for (m, k), seed in [((2, 2), 1), ((3, 2), 2), ((3, 3), 3)]:
        report = verify_master(SymMatrix.random(m, seed=seed), AlgebraParams(m, k), 5)
        assert report.passed
        assert report.mode == "numeric"
        assert [c.degree for c in report.per_degree] == list(range(6))
        assert report.first_failure is None


def test_verify_master_symbolic_small():
    report = verify_master(SymMatrix.symbolic(2), P22, 3)
    assert report.passed
    assert report.mode == "symbolic"


def test_report_json_shape():
    report = verify_master(SymMatrix.identity(2), P22, 2)
    obj = report.to_json_obj()
    assert obj["params"] == {"m": 2, "k": 2}
    assert obj["cap"] == 2
    assert obj["pass"] is True
    assert obj["per_degree"] == [
        {"d": 0, "ok": True, "residual_terms": 0},
        {"d": 1, "ok": True, "residual_terms": 0},
        {"d": 2, "ok": True, "residual_terms": 0},
    ]
    assert obj["first_failure"] is None


def test_failure_reporting_plumbing():
    t1 = Poly.variable(tvar(1))
    report = _report_from_residuals(P22, 2, "numeric",
                                    [Poly.zero(), t1 - 2 * t1 ** 1, Poly.zero()])
    assert not report.passed
    assert report.per_degree[1].ok is False
    assert report.per_degree[1].residual_terms == 1
    assert report.first_failure == {
        "degree": 1,
        "residual": [{"coeff": "-1", "monomial": {"t_1": 1}}],
    }


def test_verify_corollary_matrices():
    assert verify_corollary(SymMatrix.identity(3), P33, 5).passed
    assert verify_corollary(SymMatrix.ones(3), P33, 5).passed
    assert verify_corollary(SymMatrix.random(3, seed=17), P32, 5).passed
    report = verify_corollary(SymMatrix.random(4, seed=18), AlgebraParams(4, 3), 4)
    assert report.passed
    assert report.mode == "corollary"


def test_verify_corollary_mapping_and_fractions():
    diag = {(1, 1): Fraction(1, 2), (2, 2): Fraction(1, 3)}
    assert verify_corollary(diag, P22, 6).passed
    assert verify_corollary({}, P22, 4).passed
    with pytest.raises(ValueError):
        verify_corollary({(0, 1): 1}, P22, 3)
    with pytest.raises(TypeError):
        verify_corollary("not a matrix", P22, 3)
    with pytest.raises(ValueError):
        verify_corollary(SymMatrix.symbolic(2), P22, 3)


def test_first_factor_series_type():
    table = first_factor(SymMatrix.identity(2), P22, 3)
    assert isinstance(table, FirstFactorSeries)
    with pytest.raises(ValueError):
        table.g((1, 2, 3, 1))
    with pytest.raises(ValueError):
        table.g((2, 1))
