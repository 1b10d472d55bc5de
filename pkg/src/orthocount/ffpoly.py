"""Finite fields F_q (q a small prime power) and polynomials over them.

Field elements are integers 0..q-1: the base-p digits of an element are the
coefficients of its residue polynomial modulo the defining polynomial of
F_q over F_p.  Polynomials are tuples of field elements, lowest degree first.

The counts N*(q; d) and M*(q; d) of self-dual irreducibles and of dual pairs
are obtained by brute-force enumeration where that is cheap, and by counting
roots inside the norm-one subgroup of F_{q^d}^x otherwise; the two routes
are cross-checked in the tests.
"""

from __future__ import annotations

import math
from functools import lru_cache
from itertools import product

import numpy as np

# largest q^d for which irreducibles are enumerated by the sieve
ENUM_LIMIT = 2_000_000


def factor_prime_power(q: int) -> tuple[int, int]:
    """Return (p, k) with q = p^k, or raise ValueError."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, k


def _prime_poly_mulmod(a, b, mod, p):
    # a, b, mod: coefficient lists over F_p, mod monic of degree k
    k = len(mod) - 1
    res = [0] * (2 * k - 1 if k else 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                res[i + j] = (res[i + j] + x * y) % p
    for i in range(len(res) - 1, k - 1, -1):
        c = res[i]
        if c:
            for j in range(k + 1):
                res[i - k + j] = (res[i - k + j] - c * mod[j]) % p
    return res[:k]


def _is_irreducible_prime(mod, p) -> bool:
    # brute force: no monic divisor of degree 1..k/2 over F_p
    k = len(mod) - 1
    for e in range(1, k // 2 + 1):
        for tail in product(range(p), repeat=e):
            div = list(tail) + [1]
            r = list(mod)
            for i in range(len(r) - 1, e - 1, -1):
                c = r[i]
                if c:
                    for j in range(e + 1):
                        r[i - e + j] = (r[i - e + j] - c * div[j]) % p
            if not any(r[:e]):
                return False
    return True


class FiniteField:
    """F_q realised as F_p[x]/(m(x)) with m the lexicographically least
    monic irreducible of degree k."""

    def __init__(self, q: int):
        p, k = factor_prime_power(q)
        self.q, self.p, self.k = q, p, k
        self.modulus = self._find_modulus()
        digits = [self._digits(a) for a in range(q)]
        add = np.zeros((q, q), dtype=np.int64)
        mul = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(q):
                add[a, b] = self._undigits([(x + y) % p for x, y in zip(digits[a], digits[b])])
                mul[a, b] = self._undigits(
                    _prime_poly_mulmod(digits[a], digits[b], self.modulus, p)
                    if k > 1 else [(digits[a][0] * digits[b][0]) % p])
        self.add_table = add
        self.mul_table = mul
        self.neg_table = np.array([int(np.nonzero(add[a] == 0)[0][0]) for a in range(q)])
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            inv[a] = int(np.nonzero(mul[a] == 1)[0][0])
        self.inv_table = inv
        self._add = add.tolist()
        self._mul = mul.tolist()
        self._neg = self.neg_table.tolist()
        self._inv = inv.tolist()

    def _find_modulus(self) -> tuple[int, ...]:
        if self.k == 1:
            return (0, 1)
        # lexicographic order on (a_{k-1}, ..., a_0)
        for head in product(range(self.p), repeat=self.k):
            cand = list(reversed(head)) + [1]
            if cand[0] and _is_irreducible_prime(cand, self.p):
                return tuple(cand)
        raise RuntimeError("no irreducible modulus found")  # pragma: no cover

    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return out

    def _undigits(self, ds) -> int:
        return sum(int(d) * self.p ** i for i, d in enumerate(ds))

    def __repr__(self) -> str:
        return f"FiniteField({self.q})"

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def sub(self, a: int, b: int) -> int:
        return self._add[a][self._neg[b]]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self._inv[a]

    def pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._mul[r][a]
            a = self._mul[a][a]
            e >>= 1
        return r

    @property
    def one(self) -> int:
        return 1


@lru_cache(maxsize=None)
def field(q: int) -> FiniteField:
    return FiniteField(q)


# ---------------------------------------------------------------------------
# polynomials as tuples (a_0, ..., a_d)


def trim(f) -> tuple[int, ...]:
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return tuple(f)


def degree(f) -> int:
    f = trim(f)
    return len(f) - 1


def poly_mul(F: FiniteField, f, g) -> tuple[int, ...]:
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = F.add(out[i + j], F.mul(a, b))
    return trim(out)


def poly_divmod(F: FiniteField, f, g):
    g = trim(g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(trim(f))
    dg = len(g) - 1
    lead_inv = F.inv(g[-1])
    qt = [0] * max(len(r) - dg, 1)
    for i in range(len(r) - 1, dg - 1, -1):
        c = r[i]
        if c:
            c = F.mul(c, lead_inv)
            qt[i - dg] = c
            for j in range(dg + 1):
                r[i - dg + j] = F.sub(r[i - dg + j], F.mul(c, g[j]))
    return trim(qt), trim(r[:dg] if dg else [])


def poly_str(f, var: str = "t") -> str:
    f = trim(f)
    if not f:
        return "0"
    parts = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        else:
            parts.append(f"{c}{mono}")
    return "+".join(parts)


def dual(f, q: int) -> tuple[int, ...]:
    """f*(t) = a_0^{-1} t^d f(1/t) for monic f with f(0) != 0."""
    F = field(q)
    f = trim(f)
    if not f or f[-1] != 1:
        raise ValueError("dual() needs a monic polynomial")
    if f[0] == 0:
        raise ValueError("dual() needs a nonzero constant term")
    a0inv = F.inv(f[0])
    return tuple(F.mul(a0inv, c) for c in reversed(f))


# ---------------------------------------------------------------------------
# enumeration of irreducibles


def _monic_block(q: int, d: int) -> np.ndarray:
    """All monic polynomials of degree d as rows (a_0..a_{d-1}, 1); row index
    equals the base-q code sum a_i q^i."""
    n = q ** d
    idx = np.arange(n, dtype=np.int64)
    cols = []
    for _ in range(d):
        cols.append(idx % q)
        idx = idx // q
    cols.append(np.ones(n, dtype=np.int64))
    return np.stack(cols, axis=1)


def _mul_rows(F: FiniteField, f, block: np.ndarray) -> np.ndarray:
    """Multiply the fixed polynomial f by every row of ``block``."""
    rows, lb = block.shape
    out = np.zeros((rows, len(f) + lb - 1), dtype=np.int64)
    for i, a in enumerate(f):
        if a:
            prod_ = F.mul_table[a][block]
            out[:, i:i + lb] = F.add_table[out[:, i:i + lb], prod_]
    return out


@lru_cache(maxsize=None)
def _irreducible_codes(q: int, d: int) -> np.ndarray:
    """Codes of all monic irreducibles of degree d (t itself included)."""
    if q ** d > ENUM_LIMIT:
        raise ValueError(f"q^d = {q}^{d} exceeds the enumeration limit {ENUM_LIMIT}")
    F = field(q)
    n = q ** d
    if d == 1:
        return np.arange(n, dtype=np.int64)
    reducible = np.zeros(n, dtype=bool)
    weights = q ** np.arange(d, dtype=np.int64)
    for a in range(1, d // 2 + 1):
        block = _monic_block(q, d - a)
        small = _monic_block(q, a)
        for code in _irreducible_codes(q, a):
            f = tuple(small[code])
            prods = _mul_rows(F, f, block)
            reducible[prods[:, :d] @ weights] = True
    return np.nonzero(~reducible)[0]


def _decode(code: int, q: int, d: int) -> tuple[int, ...]:
    out = []
    for _ in range(d):
        out.append(code % q)
        code //= q
    out.append(1)
    return tuple(out)


def enumerate_irreducibles(q: int, d: int) -> list[tuple[int, ...]]:
    """Monic irreducible polynomials of degree d over F_q with f(0) != 0,
    sorted by their base-q codes."""
    if d < 1:
        raise ValueError("degree must be positive")
    factor_prime_power(q)
    codes = _irreducible_codes(q, d)
    return [_decode(int(c), q, d) for c in codes if c % q != 0]


def gauss_count(q: int, d: int) -> int:
    """Number of monic irreducibles of degree d over F_q with nonzero
    constant term (the necklace formula, minus t itself when d = 1)."""
    total = sum(mobius(e) * q ** (d // e) for e in divisors(d)) // d
    return total - 1 if d == 1 else total


def divisors(n: int) -> list[int]:
    return [e for e in range(1, n + 1) if n % e == 0]


def mobius(n: int) -> int:
    res, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            res = -res
        p += 1
    if m > 1:
        res = -res
    return res


@lru_cache(maxsize=None)
def _enumerated_counts(q: int, d: int) -> tuple[int, int, int]:
    irr = enumerate_irreducibles(q, d)
    codes = {f for f in irr}
    selfdual = sum(1 for f in irr if dual(f, q) == f)
    pairs = len(codes) - selfdual
    assert pairs % 2 == 0
    return selfdual, pairs // 2, len(irr)


def n_star_by_roots(q: int, d: int) -> int:
    """N*(q; d) by counting roots.

    A self-dual irreducible of even degree d = 2m has roots a with
    a^{-1} = a^{q^m}, i.e. a lies in the cyclic group of order q^m + 1 inside
    F_{q^d}; the elements of that group lying in F_{q^j} number
    gcd(q^m + 1, q^j - 1), so Moebius inversion over the subfields isolates
    the elements of exact degree d.
    """
    if d == 1:
        return 1 if q % 2 == 0 else 2
    if d % 2:
        return 0
    m = d // 2
    n = q ** m + 1
    exact = sum(mobius(d // j) * math.gcd(n, q ** j - 1) for j in divisors(d))
    assert exact % d == 0
    return exact // d


def count_N_star(q: int, d: int, method: str = "auto") -> int:
    """Number of self-dual monic irreducibles of degree d with f(0) != 0."""
    if method == "enumerate" or (method == "auto" and q ** d <= ENUM_LIMIT):
        return _enumerated_counts(q, d)[0]
    if method not in ("auto", "roots"):
        raise ValueError(f"unknown method {method!r}")
    return n_star_by_roots(q, d)


def count_M_star(q: int, d: int, method: str = "auto") -> int:
    """Number of unordered pairs {g, g*}, g != g*, of irreducibles of degree d."""
    if method == "enumerate" or (method == "auto" and q ** d <= ENUM_LIMIT):
        return _enumerated_counts(q, d)[1]
    if method not in ("auto", "roots"):
        raise ValueError(f"unknown method {method!r}")
    rest = gauss_count(q, d) - n_star_by_roots(q, d)
    assert rest % 2 == 0
    return rest // 2


def self_dual_irreducibles(q: int, d: int) -> list[tuple[int, ...]]:
    """N(q)' restricted to degree d (t +- 1 excluded)."""
    if d == 1:
        return []
    return [f for f in enumerate_irreducibles(q, d) if dual(f, q) == f]


def dual_pairs(q: int, d: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Representatives (g, g*) of the unordered pairs in M(q) of degree d."""
    out = []
    for f in enumerate_irreducibles(q, d):
        g = dual(f, q)
        if g != f and f < g:
            out.append((f, g))
    return out
