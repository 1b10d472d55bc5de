import numpy as np
import pytest

from orthocount import brute
from orthocount.brute import (build_group, check_strongly_sigma_real, count_involutions,
                              count_sigma_twisted, count_twisted_involutions_sp,
                              det_mod, inverse_mod, is_orthogonal, quadratic_space,
                              rank_mod, so_membership, swap_middle)
from orthocount.degrees import GroupSpec, involution_count, sigma_O, sigma_SO

SMALL = [(1, 2), (1, 3), (2, 2), (2, 3)]


def spec(kind, n, q, tau=1):
    return GroupSpec(kind, n, q, tau)


def test_linear_algebra_mod_p():
    m = np.array([[1, 2], [3, 4]])
    assert det_mod(m, 5) == (4 - 6) % 5
    assert rank_mod(m, 2) == 1
    assert (m @ inverse_mod(m, 5) % 5 == np.eye(2)).all()


def test_group_sizes():
    assert len(build_group(spec("O", 1, 2))) == 2
    assert len(build_group(spec("Sp", 1, 3))) == 24
    assert len(build_group(spec("O", 1, 2, -1))) == 6


def test_only_prime_fields_and_small_groups():
    with pytest.raises(ValueError):
        build_group(spec("O", 1, 4))
    with pytest.raises(ValueError):
        build_group(spec("O", 4, 3))


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("tau", [1, -1])
def test_so_membership(q, tau):
    space = quadratic_space(2, q, tau)
    assert so_membership(np.eye(4, dtype=np.int64), space)
    if tau == 1:
        assert not so_membership(swap_middle(2, q), space)
    refl = brute._reflections(space)
    assert not so_membership(refl[0], space)
    assert so_membership(refl[0] @ refl[-1] % q, space)
    with pytest.raises(ValueError):
        so_membership(np.diag([2, 1, 1, 1]) if q == 3 else np.array(
            [[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]), space)


@pytest.mark.parametrize("n,q", SMALL)
def test_every_element_preserves_the_form(n, q):
    for tau in (1, -1):
        group = build_group(spec("O", n, q, tau))
        assert all(is_orthogonal(g, group.space) for g in group.elements)
        assert len(group.keys) == len(group)


@pytest.mark.parametrize("n,q", [(2, 2), (2, 3), (1, 5)])
def test_closure_agrees_with_enumeration(n, q):
    for tau in (1, -1):
        a = build_group(spec("O", n, q, tau))
        b = build_group(spec("O", n, q, tau), method="closure")
        assert a.keys == b.keys


def test_involution_examples():
    assert count_involutions(build_group(spec("O", 1, 2))) == 2
    o = build_group(spec("O", 1, 3))
    assert count_involutions(o, "SO") == 2
    o4 = build_group(spec("O", 2, 2, -1))
    assert count_involutions(o4) == involution_count("O", 2, 2, -1)
    with pytest.raises(ValueError):
        count_involutions(o, "neither")


@pytest.mark.parametrize("n,q", SMALL)
def test_brute_counts_match_degree_sums(n, q):
    for tau in (1, -1):
        o = build_group(spec("O", n, q, tau))
        assert count_involutions(o) == sigma_O(n, q, tau)
        coset = "SO" if n % 2 == 0 else "O-minus-SO"
        assert count_involutions(o, coset) == sigma_SO(n, q, tau)
        for kind in ("SO", "O-minus-SO"):
            assert count_involutions(o, kind) == involution_count(kind, n, q, tau)
        so = o.subgroup(o.so_mask, spec("SO", n, q, tau))
        assert count_sigma_twisted(so, o) == count_involutions(o, "O-minus-SO")


@pytest.mark.parametrize("n,q,expect", [(1, 3, 12), (1, 5, 30), (2, 3, 1080)])
def test_twisted_symplectic_counts(n, q, expect):
    assert count_twisted_involutions_sp(build_group(spec("Sp", n, q))) == expect


@pytest.mark.parametrize("q,tau", [(2, 1), (2, -1), (3, 1), (3, -1)])
def test_small_strong_sigma_reality(q, tau):
    o = build_group(spec("O", 1, q, tau))
    so = o.subgroup(o.so_mask, spec("SO", 1, q, tau))
    ok, failures = check_strongly_sigma_real(so, o)
    assert ok and not failures


def test_sigma_reality_needs_dimension_two_mod_four():
    o = build_group(spec("O", 2, 2))
    so = o.subgroup(o.so_mask, spec("SO", 2, 2))
    with pytest.raises(ValueError):
        check_strongly_sigma_real(so, o)
