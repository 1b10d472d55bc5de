"""Acceptance suite: one PASS/FAIL line per criterion.

Every comparison is exact (integers or Fractions); nothing is approximate.
Run with pytest, or directly as ``python3 tests/test_acceptance.py``.
"""
import time
from fractions import Fraction
from functools import lru_cache

import pytest

from orthocount.brute import (build_group, check_strongly_sigma_real, count_involutions,
                              count_twisted_involutions_sp)
from orthocount.degrees import (GroupSpec, group_order, involution_count, sigma_O,
                                sigma_SO, sigma_Sp, verify_identity)
from orthocount.series import euler_product
from orthocount.symbols import FAMILIES, SERIES, enumerate_symbols, enumerate_symbols_oracle

QS = [2, 3, 4, 5, 7, 8, 9]
IDENTITIES = ["old-result", "genfun-O", "genfun-SO", "indicators-O-even",
              "indicators-SO-even", "sp-chain"]
BRUTE_CASES = [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2)]       # (n, q) for dimension 2n
SIGMA_REAL_CASES = [(1, 2), (1, 3), (3, 2)]


@lru_cache(maxsize=None)
def orthogonal(n, q, tau):
    return build_group(GroupSpec("O", n, q, tau))


def report(number, title, failures, started, capsys=None):
    line = (f"{'PASS' if not failures else 'FAIL'} criterion {number}: {title} "
            f"({time.perf_counter() - started:.1f}s)")
    if failures:
        line += "; first failures: " + "; ".join(map(str, failures[:3]))
    if capsys is None:
        print(line)
    else:
        with capsys.disabled():
            print("\n" + line)
    return line


def identity_suite():
    failures = []
    for q in QS:
        for name in IDENTITIES:
            res = verify_identity(name, q, 12)
            if not res.passed:
                failures.append((name, q, res.mismatch))
    for q in (2, 3, 5):
        res = verify_identity("euler", q, 20)
        if not res.passed:
            failures.append(("euler", q, res.mismatch))
    return failures


def sum_vs_product():
    failures = []
    for q in QS:
        for name, (summed, product) in SERIES.items():
            i = summed(q, 12).first_difference(product(q, 12))
            if i is not None:
                failures.append((name, q, f"z^{i}"))
    for n in range(9):
        for family in FAMILIES:
            if set(enumerate_symbols(n, family)) != set(enumerate_symbols_oracle(n, family)):
                failures.append(("oracle", family, n))
    return failures


def sums_equal_brute_counts():
    failures = []
    for n, q in BRUTE_CASES:
        for tau in (1, -1):
            o = orthogonal(n, q, tau)
            pairs = [("O", sigma_O(n, q, tau), count_involutions(o))]
            coset = "SO" if n % 2 == 0 else "O-minus-SO"
            pairs.append(("SO", sigma_SO(n, q, tau), count_involutions(o, coset)))
            for kind, sigma, count in pairs:
                if sigma != count:
                    failures.append((kind, tau, 2 * n, q, sigma, count))
    return failures


def fgs_equals_brute():
    failures = []
    for n, q in BRUTE_CASES:
        for tau in (1, -1):
            o = orthogonal(n, q, tau)
            for kind, coset in (("O", "all"), ("SO", "SO"), ("O-minus-SO", "O-minus-SO")):
                fgs, count = involution_count(kind, n, q, tau), count_involutions(o, coset)
                if fgs != count:
                    failures.append((kind, tau, 2 * n, q, fgs, count))
    for q in (2, 3, 4, 5):
        for n in range(1, 7):
            for tau in (1, -1):
                for kind in ("O", "SO", "O-minus-SO"):
                    try:
                        if involution_count(kind, n, q, tau) < 0:
                            failures.append(("negative", kind, tau, n, q))
                    except ArithmeticError as exc:
                        failures.append(str(exc))
    return failures


def gl_order(n, q):
    out = 1
    for i in range(n):
        out *= q ** n - q ** i
    return out


def symplectic_chain():
    failures = []
    for q in (3, 5):
        euler = euler_product(q, 4)
        prod = 1
        for n in range(1, 5):
            prod *= q ** (2 * n) - 1
            if Fraction(sigma_Sp(n, q), prod) != euler[n]:
                failures.append(("chain", n, q))
    for n, q in [(1, 3), (1, 5), (2, 3)]:
        count = count_twisted_involutions_sp(build_group(GroupSpec("Sp", n, q)))
        expect = group_order(GroupSpec("Sp", n, q)) // gl_order(n, q)
        if count != expect:
            failures.append(("twisted", 2 * n, q, count, expect))
    return failures


def strong_sigma_reality():
    failures = []
    for n, q in SIGMA_REAL_CASES:
        for tau in (1, -1):
            o = orthogonal(n, q, tau)
            so = o.subgroup(o.so_mask, GroupSpec("SO", n, q, tau))
            ok, bad = check_strongly_sigma_real(so, o)
            if not ok:
                failures.append((tau, 2 * n, q, len(bad)))
    return failures


def two_routes_agree():
    failures = []
    for q in (2, 3):
        for n in (1, 2, 3):
            for tau in (1, -1):
                for f in (sigma_O, sigma_SO):
                    a, b = f(n, q, tau), f(n, q, tau, method="explicit")
                    if a != b:
                        failures.append((f.__name__, n, q, tau, a, b))
            if sigma_Sp(n, q) != sigma_Sp(n, q, method="explicit"):
                failures.append(("sigma_Sp", n, q))
    return failures


CRITERIA = [
    (1, "identity suite to z^12 at q in 2,3,4,5,7,8,9; Euler to z^20 at q in 2,3,5",
     identity_suite),
    (2, "T, G, R, W summation equals product to z^12; symbol oracle for rank <= 8",
     sum_vs_product),
    (3, "degree sums equal brute-force involution counts for O and SO", sums_equal_brute_counts),
    (4, "generating-function counts equal brute force; integral for n <= 6", fgs_equals_brute),
    (5, "symplectic chain for n <= 4, q in 3,5; twisted counts for Sp(2,3), Sp(2,5), Sp(4,3)",
     symplectic_chain),
    (6, "strong sigma-reality of SO(2,2), SO(2,3), SO(6,2), both types", strong_sigma_reality),
    (7, "graded DP equals explicit enumeration for n <= 3, q in 2,3", two_routes_agree),
]


@pytest.mark.parametrize("number,title,check", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, title, check, capsys):
    started = time.perf_counter()
    failures = check()
    report(number, title, failures, started, capsys)
    assert not failures


if __name__ == "__main__":
    lines = []
    for number, title, check in CRITERIA:
        started = time.perf_counter()
        lines.append(report(number, title, check(), started))
    raise SystemExit(0 if all(line.startswith("PASS") for line in lines) else 1)
