from fractions import Fraction

import pytest

from orthocount.symbols import (FAMILIES, SERIES, OddSymbol, OrthSymbol, Symbol, defect,
                                delta, delta_gl, delta_odd, delta_orth, delta_symbol,
                                delta_u, enumerate_symbols, enumerate_symbols_oracle,
                                hooks, n_of, partitions, rank, series_G_sum,
                                series_R_sum, series_S_sum, series_T_sum)

QS = [2, 3, 4, 5, 7, 8, 9]


def test_rank_and_defect():
    assert rank(Symbol((), ())) == 0
    assert rank(Symbol((0,), (1,))) == 1
    assert rank(OddSymbol((1, 2), (0,))) == 2
    assert defect(Symbol((0,), (1,))) == 0
    assert defect(Symbol((0, 1), ())) == 2
    assert defect(OddSymbol((0, 1), (1,))) == 1


def test_symbol_validation():
    with pytest.raises(ValueError):
        Symbol((0, 1), (0,))          # odd defect
    with pytest.raises(ValueError):
        Symbol((0, 2), (0, 1))        # 0 in both rows: not reduced
    with pytest.raises(ValueError):
        Symbol((1, 0), ())            # not increasing
    with pytest.raises(ValueError):
        Symbol((0,), (1,), primed=True)
    with pytest.raises(ValueError):
        OddSymbol((1,), (0, 2))


def test_unordered_symbols_are_canonical():
    assert Symbol((1,), (0,)) == Symbol((0,), (1,))
    assert Symbol((), (0, 1)) == Symbol((0, 1), ())
    assert OrthSymbol((1,), (0,)) != OrthSymbol((0,), (1,))


def test_small_enumerations():
    assert set(enumerate_symbols(0, "S")) == {Symbol((), ()), Symbol((), (), True)}
    assert set(enumerate_symbols(1, "S")) == {Symbol((0,), (1,)), Symbol((0, 1), ())}
    assert set(enumerate_symbols(2, "G")) == {Symbol((1,), (1,)), Symbol((1,), (1,), True)}


@pytest.mark.parametrize("family", FAMILIES)
def test_enumeration_matches_oracle(family):
    for n in range(9):
        fast = enumerate_symbols(n, family)
        assert len(set(fast)) == len(fast)
        assert set(fast) == set(enumerate_symbols_oracle(n, family))
        assert all(rank(s) == n for s in fast)


@pytest.mark.parametrize("q", [2, 3, 5])
def test_delta_examples(q):
    assert delta_symbol(Symbol((0,), (1,)), q) == Fraction(1, q - 1)
    assert delta_symbol(Symbol((0, 1), ()), q) == Fraction(1, q + 1)
    assert delta_symbol(Symbol((1,), (1,)), q) == Fraction(q, (q * q - 1) ** 2)
    assert delta_orth(OrthSymbol((0,), (1,)), q) == delta_orth(OrthSymbol((1,), (0,)), q) \
        == Fraction(1, q - 1)
    assert delta_orth(OrthSymbol((1,), (1,)), q) == Fraction(2 * q, (q * q - 1) ** 2)
    assert delta_orth(OrthSymbol((), ()), q) == 2
    assert delta_odd(OddSymbol((0,), ()), q) == 1
    assert delta_odd(OddSymbol((1,), ()), q) == Fraction(1, q * q - 1)
    assert delta_odd(OddSymbol((0, 1), (1,)), q) == Fraction(q, q * q - 1)


@pytest.mark.parametrize("q", [2, 3, 5])
def test_gl_and_unitary_deltas(q):
    assert hooks((1, 1)) == [2, 1] and n_of((1, 1)) == 1
    assert delta_gl((1, 1), 1, q) == Fraction(q, (q - 1) * (q * q - 1))
    assert delta_u((1, 1), 2, q) == Fraction(q, (q + 1) * (q * q - 1))
    assert delta_gl((), 3, q) == 1


@pytest.mark.parametrize("q", [2, 3])
def test_full_degrees_are_positive_integers(q):
    for n in range(1, 7):
        prod = 1
        for i in range(1, n):
            prod *= q ** (2 * i) - 1
        for s in enumerate_symbols(n, "S"):
            sign = 1 if defect(s) % 4 == 0 else -1
            deg = (q ** n - sign) * prod * delta(s, q)
            assert deg.denominator == 1 and deg > 0, (s, deg)
        full = prod * (q ** (2 * n) - 1)
        for s in enumerate_symbols(n, "ODD"):
            deg = full * delta(s, q)
            assert deg.denominator == 1 and deg > 0, (s, deg)


@pytest.mark.parametrize("q", [2, 3])
def test_degenerate_pairing(q):
    for n in range(0, 13, 2):
        for s in enumerate_symbols(n, "G"):
            if s.primed:
                continue
            twin = Symbol(s.top, s.bottom, True)
            assert delta(s, q) == delta(twin, q)
            assert delta(OrthSymbol(s.top, s.bottom), q) == 2 * delta(s, q)


def test_partitions_count():
    assert [len(partitions(n)) for n in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]


@pytest.mark.parametrize("q", QS)
def test_first_coefficients(q):
    t, g = series_T_sum(q, 2), series_G_sum(q, 2)
    assert t[1] == Fraction(2 * q, q * q - 1)
    assert g[1] == 0
    assert SERIES["W"][0](q, 1)[1] == Fraction(1, q - 1)


@pytest.mark.parametrize("q", QS)
@pytest.mark.parametrize("name", ["T", "G", "R", "W"])
def test_sum_equals_product(name, q):
    summed, product = SERIES[name]
    assert summed(q, 12) == product(q, 12)


@pytest.mark.parametrize("q", QS)
def test_series_relations(q):
    t, g, r = series_T_sum(q), series_G_sum(q), series_R_sum(q)
    assert t == r + g
    assert series_S_sum(q) == t + g
    assert (t + g)[0] == 2
