import pytest
import sympy
from sympy.functions.combinatorial.numbers import stirling as sympy_stirling

from core.exception import DomainException
from diffcalc import N, expansion_coefficient, stirling, transfer_matrix, get_stirling_table


def test_stirling_examples():
    assert stirling("first", 3, 3) == 1
    assert stirling("first", 3, 2) == -3
    assert stirling("second", 3, 2) == 3


def test_stirling_matches_sympy_oracle():
    for n in range(0, 12):
        for k in range(0, n + 1):
            assert stirling("first", n, k) == sympy_stirling(n, k, kind=1, signed=True)
            assert stirling("second", n, k) == sympy_stirling(n, k, kind=2)


def test_table_invariants():
    table = get_stirling_table(10)
    for n in range(1, 11):
        assert table.first(n, n) == 1
        assert table.second(n, n) == 1
        assert table.first(n, 0) == 0


def test_stirling_out_of_range():
    with pytest.raises(DomainException):
        stirling("first", 2, 3)
    with pytest.raises(DomainException):
        stirling("second", 3, -1)


def test_expansion_coefficient_examples():
    omega = sympy.Symbol("omega")
    for k in range(1, 5):
        assert sympy.simplify(expansion_coefficient(omega, k, k) - omega**k) == 0
    assert sympy.simplify(expansion_coefficient(1 / N, 2, 1) - (1 - N) / N**2) == 0
    assert expansion_coefficient(N, 1, 1) == N


def test_expansion_coefficient_rejects_upper_triangle():
    with pytest.raises(DomainException):
        expansion_coefficient(N, 1, 2)


def test_transfer_matrices_are_mutually_inverse():
    for order in (1, 2, 3):
        product = transfer_matrix(N, order) * transfer_matrix(1 / N, order)
        assert sympy.simplify(product - sympy.eye(order)) == sympy.zeros(order, order)


def test_transfer_matrix_first_row_matches_printed_relation():
    # Delta f = (1/N) Delta g + (1 - N)/(2 N^2) Delta^2 g
    row = transfer_matrix(1 / N, 2)
    assert sympy.simplify(row[0, 0] - 1 / N) == 0
    assert sympy.simplify(row[0, 1] - (1 - N) / (2 * N**2)) == 0


def test_transfer_matrix_maps_differences_of_polynomials():
    x = sympy.Symbol("x")
    g = 3 * x**3 - 2 * x**2 + x - 7
    omega = sympy.Rational(1, 5)

    def forward(func, order, at=0):
        return sum((-1) ** (order - i) * sympy.binomial(order, i) * func(at + i) for i in range(order + 1))

    f = lambda n: g.subs(x, omega * n)
    g_at = lambda t: g.subs(x, t)
    matrix = transfer_matrix(omega, 3)
    for i in range(1, 4):
        predicted = sum(matrix[i - 1, j - 1] * forward(g_at, j) for j in range(1, 4))
        assert sympy.simplify(predicted - forward(f, i)) == 0
