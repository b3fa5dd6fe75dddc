import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from bosonorder.errors import OutOfRangeError
from bosonorder.stirling import (
    BellPolynomial,
    bell_number,
    bell_polynomial,
    dobinski_eval,
    stirling2_explicit,
    stirling2_recurrence,
    stirling_table,
    stirling_transform_check,
)
from bosonorder.weyl import NormalForm, power


def set_partitions_by_blocks(n):
    """Count set partitions of {0..n-1} by number of blocks, by enumeration of restricted growth strings."""
    counts = {}
    for rgs in itertools.product(range(n), repeat=n):
        if rgs and rgs[0] != 0:
            continue
        if all(rgs[i] <= max(rgs[:i], default=-1) + 1 for i in range(n)):
            k = max(rgs) + 1
            counts[k] = counts.get(k, 0) + 1
    return counts


@pytest.mark.parametrize("n", range(1, 8))
def test_rows_count_set_partitions(n):
    assert stirling_table(n).row(n) == set_partitions_by_blocks(n)


@pytest.mark.parametrize("n,k,value", [(3, 2, 3), (4, 2, 7), (5, 1, 1), (6, 3, 90)])
def test_examples(n, k, value):
    assert stirling2_recurrence(n, k) == value
    assert stirling2_explicit(n, k) == value


def test_diagonal_and_first_column():
    table = stirling_table(10)
    for n in range(1, 11):
        assert table[n, n] == 1 and table[n, 1] == 1
        assert all(table[n, k] > 0 for k in range(1, n + 1))
        assert stirling2_recurrence(n, n) == 1


def test_zero_convention_and_range_errors():
    assert stirling2_recurrence(0, 0) == 1
    assert stirling2_explicit(0, 0) == 1
    for n, k in [(3, 0), (3, 4), (0, 1), (-1, 1)]:
        with pytest.raises(OutOfRangeError):
            stirling2_recurrence(n, k)
        with pytest.raises(OutOfRangeError):
            stirling2_explicit(n, k)
    assert stirling_table(3)[3, 7] == 0
    with pytest.raises(OutOfRangeError):
        stirling_table(3)[4, 1]


def test_recurrence_equals_explicit_up_to_25():
    for n in range(1, 26):
        for k in range(1, n + 1):
            assert stirling2_recurrence(n, k) == stirling2_explicit(n, k)


def test_operator_oracle_up_to_12():
    number = NormalForm({(1, 1): 1})
    table = stirling_table(12)
    for n in range(1, 13):
        nf = power(number, n)
        assert {r: c for (r, s), c in nf.items()} == table.row(n)
        assert all(r == s for r, s in nf)


def test_row_sums_are_bell_numbers():
    table = stirling_table(25)
    assert table.row_sums()[1:] == [bell_number(n) for n in range(1, 26)]
    assert [bell_number(n) for n in range(7)] == [1, 1, 2, 5, 15, 52, 203]


def test_bell_polynomial_examples():
    assert bell_polynomial(3, 1) == 5
    assert all(bell_polynomial(n, 0) == 0 for n in range(1, 6))
    assert bell_polynomial(0, 0) == 1
    assert bell_polynomial(2, 2) == 6
    assert bell_polynomial(5, 2) == 454
    assert bell_polynomial(2, Fraction(1, 3)) == Fraction(1, 3) + Fraction(1, 9)
    assert BellPolynomial.of(4)(1) == 15
    assert isinstance(bell_polynomial(3, 0.5), float)


def test_dobinski_examples():
    assert dobinski_eval(3, 1.0, 1e-12) == pytest.approx(5.0, abs=1e-11)
    assert dobinski_eval(0, 3.7, 1e-12) == pytest.approx(1.0, abs=1e-12)
    assert dobinski_eval(5, 2.0, 1e-12) == pytest.approx(454, abs=1e-9)


@pytest.mark.parametrize("x", [0.5, 1.0, 2.0, 5.0])
def test_dobinski_box(x):
    for n in range(11):
        exact_value = bell_polynomial(n, Fraction(x))
        assert abs(dobinski_eval(n, x, 1e-12) - exact_value) <= 1e-9 * abs(exact_value)


def test_dobinski_domain():
    with pytest.raises(OutOfRangeError):
        dobinski_eval(51, 1.0)
    with pytest.raises(OutOfRangeError):
        dobinski_eval(3, 0.0)
    with pytest.raises(OutOfRangeError):
        dobinski_eval(3, 1.0, eps=0.0)


@pytest.mark.parametrize("n", range(1, 13))
def test_stirling_transform(n):
    assert stirling_transform_check(n)


@given(st.integers(1, 30), st.integers(1, 30))
def test_recurrence_identity(n, k):
    if k <= n:
        left = stirling2_recurrence(n + 1, k)
        right = k * stirling2_recurrence(n, k) + (stirling2_recurrence(n, k - 1) if k > 1 else 0)
        assert left == right
