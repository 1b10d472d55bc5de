from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from orthocount.series import (DEFAULT_ORDER, Factor, Family, GradedSeries, OddPairSums,
                               Progression, TruncatedSeries, coeff, euler_product,
                               euler_sum, expand_product, geometric, infinite_product,
                               odd_pairs, odd_powers, series_add, series_inv, series_mul,
                               truncated_product)

ORDER = 16
fractions = st.fractions(min_value=-5, max_value=5, max_denominator=12)
series16 = st.lists(fractions, min_size=ORDER + 1, max_size=ORDER + 1).map(TruncatedSeries)


def poly(*cs, order=6):
    return TruncatedSeries(cs, order)


def test_inverse_of_one_minus_z():
    f = poly(1, -1)
    assert f * series_inv(f) == TruncatedSeries.one(6)
    assert series_inv(f) == TruncatedSeries([1] * 7)
    assert coeff(series_inv(TruncatedSeries([1, -1], 7)), 7) == 1


def test_difference_of_squares():
    assert series_mul(poly(1, 1), poly(1, -1)) == poly(1, 0, -1)
    assert coeff(poly(1, 0, -1), 2) == -1


def test_inverse_needs_unit_constant_term():
    with pytest.raises(ZeroDivisionError):
        series_inv(poly(0, 1))


def test_orders_must_match():
    with pytest.raises(ValueError):
        TruncatedSeries([1, 1], 3) + TruncatedSeries([1, 1], 4)


@settings(max_examples=40, deadline=None)
@given(series16, series16, series16)
def test_ring_laws(f, g, h):
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert series_add(f, g) - g == f


@settings(max_examples=40, deadline=None)
@given(series16)
def test_inverse_property(f):
    if f[0] == 0:
        f = f + 1
    assert f * f.inverse() == TruncatedSeries.one(ORDER)


@settings(max_examples=25, deadline=None)
@given(st.lists(fractions, min_size=ORDER, max_size=ORDER))
def test_exp_log_roundtrip(tail):
    f = TruncatedSeries([0] + tail)
    assert f.exp().log() == f


@settings(max_examples=25, deadline=None)
@given(series16, st.integers(-3, 3))
def test_integer_power_matches_repeated_product(f, e):
    f = f + (1 - f[0])     # constant term 1
    expect = TruncatedSeries.one(ORDER)
    for _ in range(abs(e)):
        expect = expect * f
    if e < 0:
        expect = expect.inverse()
    assert f ** e == expect
    assert f.power(e) == expect


def test_scale_shift_and_parts():
    f = poly(1, 2, 3, 4)
    assert f.scale_var(Fraction(1, 2)) == poly(1, 1, Fraction(3, 4), Fraction(1, 2))
    assert f.shift(2) == poly(0, 0, 1, 2, 3, 4)
    assert f.even_part() + f.odd_part() == f
    assert f.first_difference(f) is None
    assert f.first_difference(poly(1, 2, 0)) == 2


def test_graded_series_is_group_algebra_of_z2():
    a = GradedSeries(poly(1, 1), poly(0, 1))
    b = GradedSeries(poly(1, 0, 1), poly(0, 0, 2))
    prod = a * b
    assert prod.plus == a.plus * b.plus + a.minus * b.minus
    assert prod.minus == a.plus * b.minus + a.minus * b.plus
    assert prod.total() == a.total() * b.total()
    assert GradedSeries.from_split(*prod.split()) == prod


def test_expand_product_finite_factors():
    f = expand_product([(1, 1, 1, 1), Factor(-1, 1, Fraction(1), 1)], order=4)
    assert f == TruncatedSeries([1, 0, -1], 4)
    with pytest.raises(ValueError):
        expand_product([(1, 3, 1, 1)], order=4)


def test_odd_power_product_first_coefficient():
    f = infinite_product([odd_powers(1)], 2, 1)
    assert f == TruncatedSeries([1, Fraction(2, 3)])


@pytest.mark.parametrize("q", [2, 3, 5])
def test_odd_power_product_matches_q_binomial_oracle(q):
    # prod_{i>=1}(1 + z x^{2i-1}) = sum_n z^n x^{n^2} / prod_{i<=n}(1 - x^{2i}),  x = 1/q
    x = Fraction(1, q)
    expect, den = [], Fraction(1)
    for n in range(DEFAULT_ORDER + 1):
        if n:
            den *= 1 - x ** (2 * n)
        expect.append(x ** (n * n) / den)
    assert infinite_product([odd_powers(1)], q) == TruncatedSeries(expect)


def test_odd_pair_family():
    assert infinite_product([odd_pairs()], 5, 1) == TruncatedSeries([1, 0])
    assert infinite_product([odd_pairs()], 3, 4)[2] == Fraction(3, 64)
    for q in (2, 4, 7):
        assert infinite_product([odd_pairs()], q, 2)[2] == Fraction(q, (q * q - 1) ** 2)


def test_odd_pair_power_sum_matches_listing():
    x = Fraction(1, 3)
    listed = sum(x ** a for a in OddPairSums().values(61))
    assert abs(OddPairSums().power_sum(x) - listed) < Fraction(1, 10 ** 20)


@pytest.mark.parametrize("q", [2, 3, 5])
def test_euler_identity_to_order_20(q):
    assert euler_sum(q, 20) == euler_product(q, 20)


def test_euler_second_coefficient():
    assert coeff(euler_product(2, 4), 2) == Fraction(8, 3)


def test_truncated_products_approach_the_exact_value():
    fams = [odd_powers(1), Family(-1, 2, Progression(2), -1)]
    exact = infinite_product(fams, 3, 6)
    gaps = []
    for cutoff in (6, 12, 24):
        approx = truncated_product(fams, 3, 6, cutoff)
        gaps.append(max(abs(a - b) for a, b in zip(exact, approx)))
    assert gaps[0] > gaps[1] > gaps[2] > 0
    assert gaps[2] < Fraction(1, 3 ** 20)


def test_geometric():
    assert geometric(2, 3) == TruncatedSeries([1, 2, 4, 8])
