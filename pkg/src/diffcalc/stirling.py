"""
Stirling Numbers
Exact coefficient tables relating differences on lattices of different spacing
"""
import logging
from functools import lru_cache
from typing import List, Literal

import sympy

from core.exception import DomainException

logger = logging.getLogger(__name__)

StirlingKind = Literal["first", "second"]


class StirlingTable:
    """
    Triangular tables of signed first-kind s(n, k) and second-kind S(n, k)
    Stirling numbers, built once from the standard recurrences.
    """

    def __init__(self, max_index: int):
        if max_index < 0:
            raise DomainException("Stirling table size must be non-negative", max_index=max_index)
        self.max_index = max_index
        self.first_kind: List[List[int]] = [[1]]
        self.second_kind: List[List[int]] = [[1]]

        for n in range(max_index):
            prev_first = self.first_kind[n] + [0]
            prev_second = self.second_kind[n] + [0]
            first_row = [0] * (n + 2)
            second_row = [0] * (n + 2)
            for k in range(1, n + 2):
                # s(n+1,k) = s(n,k-1) - n s(n,k); S(n+1,k) = S(n,k-1) + k S(n,k)
                first_row[k] = prev_first[k - 1] - n * prev_first[k]
                second_row[k] = prev_second[k - 1] + k * prev_second[k]
            self.first_kind.append(first_row)
            self.second_kind.append(second_row)

        logger.debug(f"Built Stirling table up to index {max_index}")

    def _check(self, n: int, k: int) -> None:
        if not (0 <= k <= n <= self.max_index):
            raise DomainException(
                "Stirling index out of range",
                n=n, k=k, max_index=self.max_index,
            )

    def first(self, n: int, k: int) -> int:
        """Signed Stirling number of the first kind s(n, k)"""
        self._check(n, k)
        return self.first_kind[n][k]

    def second(self, n: int, k: int) -> int:
        """Stirling number of the second kind S(n, k)"""
        self._check(n, k)
        return self.second_kind[n][k]


@lru_cache(maxsize=None)
def get_stirling_table(max_index: int = 16) -> StirlingTable:
    """Shared read-only table"""
    return StirlingTable(max_index)


def stirling(kind: StirlingKind, n: int, k: int) -> int:
    """
    Signed first-kind or second-kind Stirling number.

    Args:
        kind: "first" or "second"
        n: Upper index
        k: Lower index, 0 <= k <= n

    Returns:
        Exact integer value
    """
    table = get_stirling_table(max(16, n))
    if kind == "first":
        return table.first(n, k)
    if kind == "second":
        return table.second(n, k)
    raise DomainException(f"Unknown Stirling kind: {kind}")


def expansion_coefficient(omega, i: int, j: int) -> sympy.Expr:
    """
    P(i, j) = sum over alpha of omega^alpha s(i, alpha) S(alpha, j).

    With omega = N it converts slow-lattice differences into fine-lattice
    ones; with omega = 1/N the other way round.

    Args:
        omega: Lattice increment ratio (integer, rational or sympy expression)
        i: Row index
        j: Column index, 1 <= j <= i

    Returns:
        Exact value as a sympy expression
    """
    if j < 1 or j > i:
        raise DomainException("Expansion coefficient requires 1 <= j <= i", i=i, j=j)
    omega = sympy.sympify(omega)
    table = get_stirling_table(max(16, i))
    value = sum(
        (omega**alpha * table.first(i, alpha) * table.second(alpha, j) for alpha in range(j, i + 1)),
        sympy.Integer(0),
    )
    return sympy.expand(value)


def transfer_matrix(omega, order: int) -> sympy.Matrix:
    """
    Matrix T with Delta^i f = sum_j T[i, j] Delta^j g for f_n = g(omega n),
    exact on polynomials of degree <= order.

    Entries are (i!/j!) P(j, i) for j >= i (rows and columns start at 1).
    """
    if order < 1:
        raise DomainException("Transfer matrix order must be positive", order=order)
    matrix = sympy.zeros(order, order)
    for i in range(1, order + 1):
        for j in range(i, order + 1):
            matrix[i - 1, j - 1] = sympy.factorial(i) / sympy.factorial(j) * expansion_coefficient(omega, j, i)
    return matrix
