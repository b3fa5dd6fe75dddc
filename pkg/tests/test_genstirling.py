from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from bosonorder.errors import OutOfRangeError
from bosonorder.genstirling import (
    connection_identity_check,
    gen_bell_number,
    gen_bell_polynomial,
    gen_dobinski_eval,
    gen_stirling_explicit,
    gen_stirling_from_operator,
    gen_stirling_recurrence,
    gen_stirling_table,
)
from bosonorder.stirling import bell_polynomial, stirling2_recurrence
from bosonorder.weyl import AlphaSpec, NormalForm, Word, normal_order_word, power

SUITE = [
    AlphaSpec(0, {1: 1}),
    AlphaSpec(0, {2: 1}),
    AlphaSpec(1, {1: 1}),
    AlphaSpec(1, {2: 1}),
    AlphaSpec(2, {1: 1}),
    AlphaSpec(0, {1: 1, 2: 1}),
]
EXTRA = [
    AlphaSpec(1, {0: 1, 1: 2}),  # constant term, N0 = 0
    AlphaSpec(0, {1: Fraction(1, 2), 3: -2}),
]


def explicit_row(alpha, n):
    row = {}
    for k in range(0, n * alpha.max_k + 1):
        v = gen_stirling_explicit(alpha, n, k)
        if v:
            row[k] = v
    return row


def test_recurrence_examples():
    assert gen_stirling_recurrence(AlphaSpec(0, {2: 1}), 2, 3) == 4
    assert gen_stirling_recurrence(AlphaSpec(1, {1: 1}), 2, 1) == 2
    classical = AlphaSpec(0, {1: 1})
    for n in range(1, 8):
        for k in range(1, n + 1):
            assert gen_stirling_recurrence(classical, n, k) == stirling2_recurrence(n, k)
    assert gen_stirling_recurrence(classical, 3, 9) == 0
    with pytest.raises(OutOfRangeError):
        gen_stirling_recurrence(classical, 0, 0)


def test_explicit_examples():
    assert explicit_row(AlphaSpec(0, {1: 1}), 4) == {1: 1, 2: 7, 3: 6, 4: 1}
    alpha = AlphaSpec(2, {1: 1})
    nf = power(normal_order_word(Word.from_string("ad ad ad a")), 2)
    assert {s: c for (r, s), c in nf.items()} == explicit_row(alpha, 2)
    assert gen_stirling_explicit(alpha, 2, 1) == 3


def test_from_operator_examples():
    assert gen_stirling_from_operator(AlphaSpec(0, {1: 1}), 3) == {1: 1, 2: 3, 3: 1}
    assert gen_stirling_from_operator(AlphaSpec(0, {2: 1}), 2) == {2: 2, 3: 4, 4: 1}
    for alpha in SUITE + EXTRA:
        assert gen_stirling_from_operator(alpha, 1) == dict(alpha.coeffs)
    with pytest.raises(ValueError):
        gen_stirling_from_operator(SUITE[0], 2, method="magic")


@pytest.mark.parametrize("alpha", SUITE + EXTRA, ids=str)
def test_triple_agreement(alpha):
    table = gen_stirling_table(alpha, 5)
    for n in range(1, 6):
        rec = table.row(n)
        assert rec == explicit_row(alpha, n)
        assert rec == gen_stirling_from_operator(alpha, n)
        if n * (alpha.d + alpha.max_k) <= 10:
            assert rec == gen_stirling_from_operator(alpha, n, method="rewrite")


@pytest.mark.parametrize("alpha", SUITE + EXTRA, ids=str)
def test_connection_identity(alpha):
    assert all(connection_identity_check(alpha, n) for n in range(1, 7))


def test_bell_examples():
    a2 = AlphaSpec(0, {2: 1})
    assert gen_bell_polynomial(a2, 2, 1) == 7
    assert gen_bell_number(a2, 2) == 7
    assert gen_bell_number(AlphaSpec(0, {1: 1}), 4) == 15
    assert gen_bell_number(a2, 0) == 1
    assert gen_bell_polynomial(SUITE[3], 0, Fraction(5, 2)) == 1
    for n in range(6):
        assert gen_bell_polynomial(SUITE[0], n, Fraction(3, 2)) == bell_polynomial(n, Fraction(3, 2))


def test_dobinski_examples():
    assert gen_dobinski_eval(AlphaSpec(0, {1: 1}), 3, 1.0, 1e-12) == pytest.approx(5.0, abs=1e-9)
    assert gen_dobinski_eval(AlphaSpec(0, {2: 1}), 2, 1.0, 1e-12) == pytest.approx(7.0, abs=1e-9)
    assert gen_dobinski_eval(AlphaSpec(1, {1: 1}), 2, 1.0, 1e-12) == pytest.approx(3.0, abs=1e-9)


@pytest.mark.parametrize("alpha", SUITE, ids=str)
def test_dobinski_agreement(alpha):
    for n in range(6):
        for x in (0.5, 1.0, 2.0):
            exact_value = gen_bell_polynomial(alpha, n, Fraction(x))
            assert abs(gen_dobinski_eval(alpha, n, x) - exact_value) <= 1e-9 * abs(exact_value)


def test_table_access():
    table = gen_stirling_table(SUITE[1], 3)
    assert table[0, 0] == 1
    assert table[2, 3] == 4
    assert table[2, 9] == 0
    with pytest.raises(OutOfRangeError):
        table[4, 1]
    with pytest.raises(OutOfRangeError):
        gen_stirling_table(SUITE[1], -1)


alphas = st.builds(
    AlphaSpec,
    st.integers(0, 2),
    st.dictionaries(st.integers(0, 3), st.integers(-3, 3).filter(bool), min_size=1, max_size=3),
)


@settings(max_examples=40, deadline=None)
@given(alphas, st.integers(1, 4))
def test_random_alpha_triple_agreement(alpha, n):
    rec = gen_stirling_table(alpha, n).row(n)
    assert rec == explicit_row(alpha, n)
    assert rec == gen_stirling_from_operator(alpha, n)


@settings(max_examples=40, deadline=None)
@given(alphas, st.integers(1, 4))
def test_normal_form_shape(alpha, n):
    nf = power(alpha.to_normal_form(), n)
    assert nf.is_zero() or nf.excesses() == {n * alpha.d}
    assert nf == NormalForm({(n * alpha.d + k, k): c for k, c in gen_stirling_table(alpha, n).row(n).items()})
