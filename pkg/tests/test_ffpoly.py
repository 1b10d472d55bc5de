import pytest

from orthocount.ffpoly import (count_M_star, count_N_star, dual, dual_pairs,
                               enumerate_irreducibles, factor_prime_power, field,
                               gauss_count, poly_divmod, poly_mul, self_dual_irreducibles)


def test_prime_powers():
    assert factor_prime_power(8) == (2, 3)
    assert factor_prime_power(9) == (3, 2)
    for bad in (0, 1, 6, 12):
        with pytest.raises(ValueError):
            factor_prime_power(bad)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_field_axioms(q):
    F = field(q)
    for a in range(1, q):
        assert F.mul(a, F.inv(a)) == F.one
        assert F.add(a, F.neg(a)) == 0
        assert F.pow(a, q - 1) == F.one


def test_duals():
    assert dual((1, 1), 2) == (1, 1)
    assert dual((1, 1, 0, 1), 2) == (1, 0, 1, 1)
    assert dual((2, 1, 1), 3) == (2, 2, 1)


def test_irreducibles_small():
    assert enumerate_irreducibles(2, 2) == [(1, 1, 1)]
    assert sorted(enumerate_irreducibles(2, 3)) == [(1, 0, 1, 1), (1, 1, 0, 1)]
    assert sorted(enumerate_irreducibles(3, 1)) == [(1, 1), (2, 1)]


@pytest.mark.parametrize("q,d", [(2, 4), (3, 3), (4, 2), (5, 2)])
def test_irreducibles_have_no_factor(q, d):
    F = field(q)
    irr = set(enumerate_irreducibles(q, d))
    # product of any two monic polynomials of lower degree is never in the list
    lower = [f for e in range(1, d) for f in enumerate_irreducibles(q, e)]
    for f in lower:
        for g in lower:
            if len(f) + len(g) - 2 == d:
                assert poly_mul(F, f, g) not in irr
    for f in irr:
        for g in lower:
            assert any(poly_divmod(F, f, g)[1])


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_dual_is_an_involution(q):
    for d in range(1, 5):
        for f in enumerate_irreducibles(q, d):
            assert dual(dual(f, q), q) == f


def test_counts_examples():
    assert (count_N_star(2, 1), count_M_star(2, 1)) == (1, 0)
    assert (count_N_star(3, 2), count_M_star(3, 2)) == (1, 1)
    assert self_dual_irreducibles(3, 2) == [(1, 0, 1)]
    assert (count_N_star(2, 3), count_M_star(2, 3)) == (0, 1)
    assert len(dual_pairs(2, 3)) == 1


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_partition_identity_and_odd_degrees(q):
    for d in range(1, 9):
        if q ** d > 500_000:
            break
        n, m = count_N_star(q, d, "enumerate"), count_M_star(q, d, "enumerate")
        assert n + 2 * m == gauss_count(q, d) == len(enumerate_irreducibles(q, d))
        if d % 2 and d > 1:
            assert n == 0
    assert count_N_star(q, 1) == (2 if q % 2 else 1)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_root_count_agrees_with_enumeration(q):
    for d in range(1, 7):
        if q ** d > 200_000:
            break
        assert count_N_star(q, d, "roots") == count_N_star(q, d, "enumerate")
        assert count_M_star(q, d, "roots") == count_M_star(q, d, "enumerate")
