from fractions import Fraction

import numpy as np
import pytest

from core.exception import SlowOrderUndeterminedException
from diffcalc import SlowFunctionSample, slow_order


def test_constant_sequence_has_order_zero():
    assert slow_order([5, 5, 5, 5]) == 0


def test_square_on_five_sites():
    assert slow_order([n * n for n in range(5)]) == 2


def test_cubic_on_six_sites():
    assert slow_order([n**3 - n for n in range(6)]) == 3


def test_undetermined_order_raises():
    with pytest.raises(SlowOrderUndeterminedException):
        slow_order([2**n for n in range(5)])


def test_float_mode_uses_tolerance():
    values = [0.1 * n * n + 1e-14 * (-1) ** n for n in range(8)]
    assert slow_order(values) == 2


def test_exact_rationals():
    values = [Fraction(n * n, 3) + Fraction(1, 7) for n in range(6)]
    sample = SlowFunctionSample(values=values, declared_order=2)
    assert sample.is_exact
    assert sample.satisfies_declared_order()
    assert slow_order(sample) == 2


def test_top_difference_is_shift_invariant():
    values = [Fraction(2 * n**3 - n + 1) for n in range(10)]
    sample = SlowFunctionSample(values=values, declared_order=3)
    top = sample.difference(3)
    assert len(set(top)) == 1


def test_order_is_preserved_across_lattices():
    # f_n = g(n1) with n1 = n / N sampled on both lattices
    big_n = 4
    g = lambda x: 3 * x * x - x + 2
    fine = [Fraction(g(Fraction(n, big_n))) for n in range(12)]
    coarse = [Fraction(g(Fraction(j))) for j in range(6)]
    assert slow_order(fine) == slow_order(coarse) == 2


def test_numpy_input_is_accepted():
    sample = SlowFunctionSample(values=np.arange(5) ** 2)
    assert slow_order(sample) == 2
