"""Partitions, Lusztig symbols and the modified unipotent degrees built on them.

Three symbol types are used:

* :class:`Symbol` -- unordered pair [mu, nu] of even defect (unipotent
  characters of SO^{+-}(2n, q)); a degenerate pair mu == nu exists twice,
  told apart by the ``primed`` flag.
* :class:`OrthSymbol` -- ordered pair (mu, nu) of even defect (unipotent
  characters of O^{+-}(2n, q)).
* :class:`OddSymbol` -- pair with the longer row first and odd defect
  (unipotent characters of SO(2n+1, q)).

Every delta below is the unipotent degree divided by the order polynomial of
the group, so it is a positive rational number once q is fixed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterator, Union

from .series import (DEFAULT_ORDER, TruncatedSeries, GradedSeries, infinite_product,
                     odd_powers, even_powers, odd_pairs)


def _check_row(row) -> tuple[int, ...]:
    row = tuple(int(x) for x in row)
    if any(x < 0 for x in row):
        raise ValueError(f"symbol row {row} has negative entries")
    if any(a >= b for a, b in zip(row, row[1:])):
        raise ValueError(f"symbol row {row} is not strictly increasing")
    return row


def _is_reduced(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    return not (a and b and a[0] == 0 and b[0] == 0)


@dataclass(frozen=True)
class Symbol:
    """Unordered symbol [top, bottom]; stored with the longer row first
    (ties broken lexicographically)."""

    top: tuple[int, ...]
    bottom: tuple[int, ...] = ()
    primed: bool = False

    def __post_init__(self):
        a, b = _check_row(self.top), _check_row(self.bottom)
        if (len(b), _neg(b)) > (len(a), _neg(a)):
            a, b = b, a
        if not _is_reduced(a, b):
            raise ValueError(f"symbol [{a}, {b}] is not reduced")
        if self.primed and a != b:
            raise ValueError("only degenerate symbols carry a prime")
        object.__setattr__(self, "top", a)
        object.__setattr__(self, "bottom", b)
        if (len(a) - len(b)) % 2:
            raise ValueError("Symbol needs even defect; use OddSymbol")

    @property
    def degenerate(self) -> bool:
        return self.top == self.bottom

    def __str__(self) -> str:
        return f"[{_row_str(self.top)}, {_row_str(self.bottom)}]" + ("'" if self.primed else "")


def _neg(row):
    # key so that the lexicographically smaller row sorts first among equals
    return tuple(-x for x in row)


@dataclass(frozen=True)
class OrthSymbol:
    """Ordered symbol (first, second) of even defect."""

    first: tuple[int, ...]
    second: tuple[int, ...] = ()

    def __post_init__(self):
        a, b = _check_row(self.first), _check_row(self.second)
        if not _is_reduced(a, b):
            raise ValueError(f"symbol ({a}, {b}) is not reduced")
        if (len(a) - len(b)) % 2:
            raise ValueError("OrthSymbol needs even defect")
        object.__setattr__(self, "first", a)
        object.__setattr__(self, "second", b)

    @property
    def degenerate(self) -> bool:
        return self.first == self.second

    def unordered(self) -> Symbol:
        return Symbol(self.first, self.second)

    def __str__(self) -> str:
        return f"({_row_str(self.first)}, {_row_str(self.second)})"


@dataclass(frozen=True)
class OddSymbol:
    """Symbol with odd positive defect; ``top`` is the longer row."""

    top: tuple[int, ...]
    bottom: tuple[int, ...] = ()

    def __post_init__(self):
        a, b = _check_row(self.top), _check_row(self.bottom)
        if not _is_reduced(a, b):
            raise ValueError(f"symbol [{a}, {b}] is not reduced")
        d = len(a) - len(b)
        if d <= 0 or d % 2 == 0:
            raise ValueError("OddSymbol needs odd positive defect r - k")
        object.__setattr__(self, "top", a)
        object.__setattr__(self, "bottom", b)

    def __str__(self) -> str:
        return f"[{_row_str(self.top)}, {_row_str(self.bottom)}]"


AnySymbol = Union[Symbol, OrthSymbol, OddSymbol]


def _row_str(row) -> str:
    return "{" + ",".join(map(str, row)) + "}" if row else "{}"


def rows(s: AnySymbol) -> tuple[tuple[int, ...], tuple[int, ...]]:
    if isinstance(s, OrthSymbol):
        return s.first, s.second
    return s.top, s.bottom


def rank(s: AnySymbol) -> int:
    a, b = rows(s)
    L = len(a) + len(b)
    return sum(a) + sum(b) - (L - 1) ** 2 // 4


def defect(s: AnySymbol) -> int:
    a, b = rows(s)
    if isinstance(s, OddSymbol):
        return len(a) - len(b)
    return abs(len(a) - len(b))


def sign_class(s: Union[Symbol, OrthSymbol]) -> int:
    """+1 for defect 0 mod 4, -1 for defect 2 mod 4."""
    return 1 if defect(s) % 4 == 0 else -1


# ---------------------------------------------------------------------------
# delta functions


def _c_exponent(L: int) -> int:
    return sum(comb(L - 2 * i, 2) for i in range(1, L // 2 + 1) if L - 2 * i >= 2)


def _delta_parts(a, b, q: int) -> tuple[int, int]:
    """(numerator, denominator) of the delta, without the power of 2."""
    num = 1
    for row in (a, b):
        for i in range(len(row)):
            for j in range(i + 1, len(row)):
                num *= abs(q ** row[i] - q ** row[j])
    for x in a:
        for y in b:
            num *= q ** x + q ** y
    den = q ** _c_exponent(len(a) + len(b))
    for row in (a, b):
        for x in row:
            for j in range(1, x + 1):
                den *= q ** (2 * j) - 1
    return num, den


def delta_symbol(s: Symbol, q: int) -> Fraction:
    """Modified degree of the unipotent character of SO^{+-}(2n, q) for s."""
    if not isinstance(s, Symbol):
        raise TypeError("delta_symbol expects a Symbol")
    a, b = s.top, s.bottom
    L = len(a) + len(b)
    two = len(a) if s.degenerate else (L - 2) // 2
    num, den = _delta_parts(a, b, q)
    return Fraction(num, den) / Fraction(2) ** two


def delta_orth(s: OrthSymbol, q: int) -> Fraction:
    """Modified degree for an orthogonal symbol; (empty, empty) gives 2."""
    if not isinstance(s, OrthSymbol):
        raise TypeError("delta_orth expects an OrthSymbol")
    a, b = s.first, s.second
    num, den = _delta_parts(a, b, q)
    return Fraction(num, den) / Fraction(2) ** ((len(a) + len(b) - 2) // 2)


def delta_odd(s: OddSymbol, q: int) -> Fraction:
    """Modified degree of the unipotent character of SO(2n+1, q) for s."""
    if not isinstance(s, OddSymbol):
        raise TypeError("delta_odd expects an OddSymbol")
    a, b = s.top, s.bottom
    num, den = _delta_parts(a, b, q)
    return Fraction(num, den) / Fraction(2) ** ((len(a) + len(b) - 1) // 2)


def delta(s: AnySymbol, q: int) -> Fraction:
    if isinstance(s, Symbol):
        return delta_symbol(s, q)
    if isinstance(s, OrthSymbol):
        return delta_orth(s, q)
    return delta_odd(s, q)


# ---------------------------------------------------------------------------
# partitions and the GL / U deltas


@lru_cache(maxsize=None)
def partitions(n: int, largest: int | None = None) -> tuple[tuple[int, ...], ...]:
    """Partitions of n as weakly decreasing tuples, in reverse lex order."""
    if largest is None:
        largest = n
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def hooks(lam) -> list[int]:
    lam = tuple(lam)
    conj = [sum(1 for x in lam if x > j) for j in range(lam[0])] if lam else []
    return [lam[i] - j + conj[j] - i - 1 for i in range(len(lam)) for j in range(lam[i])]


def n_of(lam) -> int:
    return sum(i * x for i, x in enumerate(lam))


def delta_gl(lam, d: int, q: int) -> Fraction:
    """Unipotent degree of GL(|lam|, q^d) divided by prod (Q^i - 1), Q = q^d."""
    Q = q ** d
    den = 1
    for h in hooks(lam):
        den *= Q ** h - 1
    return Fraction(Q ** n_of(lam), den)


def delta_u(lam, two_d: int, q: int) -> Fraction:
    """Unipotent degree of U(|lam|, q^d) divided by prod (Q^i - (-1)^i),
    Q = q^d, where ``two_d`` = 2d is the degree of the self-dual polynomial."""
    if two_d % 2:
        raise ValueError("delta_u takes the even polynomial degree 2d")
    Q = q ** (two_d // 2)
    den = 1
    for h in hooks(lam):
        den *= Q ** h - (-1) ** h
    return abs(Fraction(Q ** n_of(lam), den))


# ---------------------------------------------------------------------------
# enumeration

FAMILIES = ("S+", "S-", "S", "G", "R", "O", "O+", "O-", "ODD")


def _increasing(length: int, total: int, lo: int = 0) -> Iterator[tuple[int, ...]]:
    """Strictly increasing tuples of the given length, entries >= lo, summing to total."""
    if length == 0:
        if total == 0:
            yield ()
        return
    # smallest possible sum with first entry x: length*x + length(length-1)/2
    x = lo
    base = length * (length - 1) // 2
    while length * x + base <= total:
        for rest in _increasing(length - 1, total - x, x + 1):
            yield (x,) + rest
        x += 1


def _pairs_by_search(n: int, d: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Reduced (longer, shorter) row pairs of rank n with row-length difference d."""
    k = 0
    while k + d * d // 4 <= n:
        r = k + d
        total = n + (2 * k + d - 1) ** 2 // 4
        min_a = r * (r - 1) // 2
        min_b = k * (k - 1) // 2
        for sa in range(min_a, total - min_b + 1):
            for a in _increasing(r, sa):
                for b in _increasing(k, total - sa):
                    if _is_reduced(a, b):
                        yield a, b
        k += 1


def _pairs_by_bipartition(n: int, d: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Same set as :func:`_pairs_by_search`, built from bipartitions of
    n - floor(d^2/4) by the beta-set construction."""
    m = n - d * d // 4
    if m < 0:
        return
    for s in range(m + 1):
        for alpha in partitions(s):
            for beta in partitions(m - s):
                k = max(len(beta), len(alpha) - d, 0)
                r = k + d
                al = tuple(reversed(alpha + (0,) * (r - len(alpha))))
                be = tuple(reversed(beta + (0,) * (k - len(beta))))
                yield (tuple(x + i for i, x in enumerate(al)),
                       tuple(x + i for i, x in enumerate(be)))


def _max_defect(n: int) -> int:
    d = 0
    while (d + 1) ** 2 // 4 <= n:
        d += 1
    return d


def _build(n: int, family: str, pairs) -> list:
    if family not in FAMILIES:
        raise ValueError(f"unknown symbol family {family!r}")
    out = []
    for d in range(_max_defect(n) + 1):
        if family == "ODD":
            if d % 2:
                out.extend(OddSymbol(a, b) for a, b in pairs(n, d))
            continue
        if d % 2:
            continue
        cls_ok = {"S+": d % 4 == 0, "S-": d % 4 == 2, "O+": d % 4 == 0, "O-": d % 4 == 2,
                  "G": d == 0}.get(family, True)
        if not cls_ok:
            continue
        for a, b in pairs(n, d):
            if family.startswith("O"):
                out.append(OrthSymbol(a, b))
                if d == 0 and a != b:
                    pass  # the reversed pair is produced by the generator itself
                elif d > 0:
                    out.append(OrthSymbol(b, a))
                continue
            if d == 0:
                if a == b:
                    if family != "R":
                        out.append(Symbol(a, b))
                        out.append(Symbol(a, b, primed=True))
                    continue
                if family == "G":
                    continue
                s = Symbol(a, b)
                # unordered: keep only the canonical ordering of the pair
                if (s.top, s.bottom) != (a, b):
                    continue
                out.append(s)
            else:
                if family != "G":
                    out.append(Symbol(a, b))
    return out


@lru_cache(maxsize=None)
def enumerate_symbols(n: int, family: str) -> tuple:
    """All reduced symbols of rank n in ``family``, found by bounded search.

    Families: S+, S-, S, G (degenerate, both copies), R (non-degenerate even
    defect), O, O+, O- (ordered), ODD (odd defect).
    """
    if n < 0:
        raise ValueError("rank must be non-negative")
    return tuple(_build(n, family, _pairs_by_search))


def enumerate_symbols_oracle(n: int, family: str) -> tuple:
    """Independent enumeration from bipartitions; used to certify the search."""
    if n < 0:
        raise ValueError("rank must be non-negative")
    return tuple(_build(n, family, _pairs_by_bipartition))


# ---------------------------------------------------------------------------
# unipotent generating functions


@lru_cache(maxsize=None)
def delta_sum(q: int, n: int, family: str) -> Fraction:
    """Sum of delta over all rank-n symbols of a family."""
    return sum((delta(s, q) for s in enumerate_symbols(n, family)), Fraction(0))


def _sum_series(q: int, order: int, family: str, scale=1) -> TruncatedSeries:
    return TruncatedSeries([delta_sum(q, n, family) * scale for n in range(order + 1)])


def series_T_sum(q: int, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    return _sum_series(q, order, "O", Fraction(1, 2))


def series_G_sum(q: int, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    return _sum_series(q, order, "G", Fraction(1, 2))


def series_R_sum(q: int, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """Non-degenerate part of T: half of delta over ordered non-degenerate
    symbols, i.e. delta(Lambda) once per unordered Lambda in R, so T = R + G."""
    return _sum_series(q, order, "R")


def series_W_sum(q: int, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    return _sum_series(q, order, "ODD")


def series_S_sum(q: int, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """sum over all even-defect symbols of delta; equals T + G."""
    return _sum_series(q, order, "S")


def series_T_graded(q: int, order: int = DEFAULT_ORDER) -> GradedSeries:
    """T split by defect class: plus from O+, minus from O-."""
    return GradedSeries(_sum_series(q, order, "O+", Fraction(1, 2)),
                        _sum_series(q, order, "O-", Fraction(1, 2)))


def series_S_graded(q: int, order: int = DEFAULT_ORDER) -> GradedSeries:
    """sum_{S} delta(Lambda) z^|Lambda| split into S+ and S-."""
    return GradedSeries(_sum_series(q, order, "S+"), _sum_series(q, order, "S-"))


def series_T_product(q: int, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    return infinite_product([odd_powers(1), odd_powers(-1, -1), odd_pairs(-1)], q, order)


def series_G_product(q: int, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    return infinite_product([odd_pairs(-1)], q, order)


def series_R_product(q: int, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    ratio = infinite_product([odd_powers(1), odd_powers(-1, -1)], q, order)
    return (ratio - 1) * series_G_product(q, order)


def series_W_product(q: int, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    return infinite_product([even_powers(1), odd_powers(-1, -1), odd_pairs(-1)], q, order)


SERIES = {
    "T": (series_T_sum, series_T_product),
    "G": (series_G_sum, series_G_product),
    "R": (series_R_sum, series_R_product),
    "W": (series_W_sum, series_W_product),
}
