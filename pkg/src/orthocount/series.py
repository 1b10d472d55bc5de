"""Exact truncated power series in one variable z with rational coefficients.

Every series carries a truncation order N and stores the coefficients of
z^0, ..., z^N as :class:`fractions.Fraction` values.  Arithmetic is exact and
respects the truncation.  The module also evaluates the infinite q-products
that appear in the generating functions (``prod_i (1 + z/q^(2i-1))`` and
friends) exactly, by summing their logarithms in closed form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

DEFAULT_ORDER = 12


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class TruncatedSeries:
    """Power series modulo z^(order+1).  Immutable."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable, order: int | None = None):
        c = [_frac(x) for x in coeffs]
        if order is None:
            order = len(c) - 1
        if order < 0:
            raise ValueError("truncation order must be non-negative")
        if len(c) > order + 1:
            c = c[: order + 1]
        else:
            c.extend([Fraction(0)] * (order + 1 - len(c)))
        self._c = tuple(c)

    # construction helpers
    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls((), order)

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls((1,), order)

    @classmethod
    def monomial(cls, coeff, power: int, order: int) -> "TruncatedSeries":
        c = [0] * (order + 1)
        if power <= order:
            c[power] = coeff
        return cls(c, order)

    @property
    def order(self) -> int:
        return len(self._c) - 1

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._c

    def __getitem__(self, n: int) -> Fraction:
        return self._c[n]

    def __len__(self) -> int:
        return len(self._c)

    def __iter__(self):
        return iter(self._c)

    def __eq__(self, other) -> bool:
        if isinstance(other, TruncatedSeries):
            return self._c == other._c
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._c)

    def __repr__(self) -> str:
        terms = ", ".join(str(x) for x in self._c)
        return f"TruncatedSeries([{terms}])"

    def _check(self, other: "TruncatedSeries") -> None:
        if other.order != self.order:
            raise ValueError(
                f"truncation orders differ: {self.order} vs {other.order}")

    def _lift(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            self._check(other)
            return other
        return TruncatedSeries((other,), self.order)

    def __add__(self, other) -> "TruncatedSeries":
        other = self._lift(other)
        return TruncatedSeries([a + b for a, b in zip(self._c, other._c)])

    __radd__ = __add__

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries([-a for a in self._c])

    def __sub__(self, other) -> "TruncatedSeries":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "TruncatedSeries":
        return self._lift(other) - self

    def __mul__(self, other) -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            s = _frac(other)
            return TruncatedSeries([a * s for a in self._c])
        self._check(other)
        a, b = self._c, other._c
        n = len(a)
        out = [Fraction(0)] * n
        nz = [(i, x) for i, x in enumerate(a) if x]
        for j, y in enumerate(b):
            if not y:
                continue
            for i, x in nz:
                if i + j >= n:
                    break
                out[i + j] += x * y
        return TruncatedSeries(out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            return self * other.inverse()
        return self * (Fraction(1) / _frac(other))

    def __pow__(self, e: int) -> "TruncatedSeries":
        if not isinstance(e, int):
            raise TypeError("use TruncatedSeries.power for rational exponents")
        if e < 0:
            return self.inverse() ** (-e)
        result = TruncatedSeries.one(self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse; requires a nonzero constant term."""
        a = self._c
        if a[0] == 0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        inv0 = 1 / a[0]
        out = [inv0]
        for n in range(1, len(a)):
            s = sum((a[k] * out[n - k] for k in range(1, n + 1)), Fraction(0))
            out.append(-s * inv0)
        return TruncatedSeries(out)

    def power(self, alpha) -> "TruncatedSeries":
        """f**alpha for rational alpha (or a huge integer), assuming f[0] == 1.

        Uses the J.C.P. Miller recurrence, so the cost does not depend on the
        size of alpha.
        """
        alpha = _frac(alpha)
        a = self._c
        if a[0] != 1:
            raise ValueError("power() needs constant term 1")
        g = [Fraction(1)]
        for n in range(1, len(a)):
            s = Fraction(0)
            for k in range(1, n + 1):
                if a[k]:
                    s += ((alpha + 1) * k - n) * a[k] * g[n - k]
            g.append(s / n)
        return TruncatedSeries(g)

    def exp(self) -> "TruncatedSeries":
        """exp(f) for f with zero constant term."""
        a = self._c
        if a[0] != 0:
            raise ValueError("exp() needs zero constant term")
        g = [Fraction(1)]
        for n in range(1, len(a)):
            s = Fraction(0)
            for k in range(1, n + 1):
                if a[k]:
                    s += k * a[k] * g[n - k]
            g.append(s / n)
        return TruncatedSeries(g)

    def log(self) -> "TruncatedSeries":
        """log(f) for f with constant term 1."""
        a = self._c
        if a[0] != 1:
            raise ValueError("log() needs constant term 1")
        # f' = f * (log f)'
        d = [Fraction(0)] * len(a)
        for n in range(1, len(a)):
            s = n * a[n]
            for k in range(1, n):
                s -= k * d[k] * a[n - k]
            d[n] = s / n
        return TruncatedSeries(d)

    def scale_var(self, c) -> "TruncatedSeries":
        """Substitute z -> c*z."""
        c = _frac(c)
        out, p = [], Fraction(1)
        for x in self._c:
            out.append(x * p)
            p *= c
        return TruncatedSeries(out)

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by z^k (k >= 0), keeping the order."""
        return TruncatedSeries([0] * k + list(self._c), self.order)

    def even_part(self) -> "TruncatedSeries":
        return TruncatedSeries([x if i % 2 == 0 else 0 for i, x in enumerate(self._c)])

    def odd_part(self) -> "TruncatedSeries":
        return TruncatedSeries([x if i % 2 else 0 for i, x in enumerate(self._c)])

    def first_difference(self, other: "TruncatedSeries") -> int | None:
        """Index of the first coefficient where the two series differ."""
        self._check(other)
        for i, (a, b) in enumerate(zip(self._c, other._c)):
            if a != b:
                return i
        return None


def series_add(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    return f + g


def series_mul(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    return f * g


def series_inv(f: TruncatedSeries) -> TruncatedSeries:
    return f.inverse()


def coeff(f: TruncatedSeries, n: int) -> Fraction:
    if not 0 <= n <= f.order:
        raise IndexError(f"coefficient index {n} outside 0..{f.order}")
    return f[n]


class GradedSeries:
    """Pair (plus, minus) multiplied in the group algebra of Z/2.

    ``plus`` collects the sign-+ part and ``minus`` the sign-- part; the product
    rule is (a+, a-)(b+, b-) = (a+b+ + a-b-, a+b- + a-b+).
    """

    __slots__ = ("plus", "minus")

    def __init__(self, plus: TruncatedSeries, minus: TruncatedSeries | None = None):
        if minus is None:
            minus = TruncatedSeries.zero(plus.order)
        plus._check(minus)
        self.plus = plus
        self.minus = minus

    @classmethod
    def from_split(cls, a: TruncatedSeries, b: TruncatedSeries) -> "GradedSeries":
        # inverse of the idempotent decomposition (plus+minus, plus-minus)
        half = Fraction(1, 2)
        return cls((a + b) * half, (a - b) * half)

    @property
    def order(self) -> int:
        return self.plus.order

    def split(self) -> tuple[TruncatedSeries, TruncatedSeries]:
        return self.plus + self.minus, self.plus - self.minus

    def total(self) -> TruncatedSeries:
        return self.plus + self.minus

    def flip(self) -> "GradedSeries":
        return GradedSeries(self.minus, self.plus)

    def __add__(self, other: "GradedSeries") -> "GradedSeries":
        if isinstance(other, TruncatedSeries):
            return GradedSeries(self.plus + other, self.minus)
        return GradedSeries(self.plus + other.plus, self.minus + other.minus)

    __radd__ = __add__

    def __mul__(self, other) -> "GradedSeries":
        if isinstance(other, GradedSeries):
            return GradedSeries(self.plus * other.plus + self.minus * other.minus,
                                self.plus * other.minus + self.minus * other.plus)
        # ungraded series or scalar
        return GradedSeries(self.plus * other, self.minus * other)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "GradedSeries":
        a, b = self.split()
        return GradedSeries.from_split(a ** e, b ** e)

    def power(self, alpha) -> "GradedSeries":
        a, b = self.split()
        return GradedSeries.from_split(a.power(alpha), b.power(alpha))

    def __eq__(self, other) -> bool:
        if isinstance(other, GradedSeries):
            return self.plus == other.plus and self.minus == other.minus
        return NotImplemented

    def __repr__(self) -> str:
        return f"GradedSeries(plus={self.plus!r}, minus={self.minus!r})"


# ---------------------------------------------------------------------------
# products


@dataclass(frozen=True)
class Factor:
    """One factor (1 + sign*scale*z^zexp)^power of a finite product."""

    sign: int
    zexp: int
    scale: Fraction
    power: int


def expand_product(terms: Iterable, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """Multiply out a finite list of factors (1 + sign*scale*z^k)^power.

    ``terms`` holds :class:`Factor` objects or plain 4-tuples
    ``(sign, zexp, scale, power)``.
    """
    result = TruncatedSeries.one(order)
    for t in terms:
        if not isinstance(t, Factor):
            t = Factor(*t)
        if t.zexp not in (1, 2):
            raise ValueError("factor exponent of z must be 1 or 2")
        base = TruncatedSeries.one(order) + TruncatedSeries.monomial(
            t.sign * _frac(t.scale), t.zexp, order)
        result = result * (base ** t.power)
    return result


class Exponents:
    """A (possibly infinite) multiset of q-exponents a >= 0 with known power sums.

    ``power_sum(x)`` must return sum_a x**a exactly for 0 < x < 1.
    """

    def power_sum(self, x: Fraction) -> Fraction:
        raise NotImplementedError

    def values(self, limit: int) -> list[int]:
        """The exponents not exceeding ``limit`` (for finite truncations)."""
        raise NotImplementedError


@dataclass(frozen=True)
class Progression(Exponents):
    """Exponents step*i + offset for i = start, start+1, ... (infinite)."""

    step: int
    offset: int = 0
    start: int = 1

    def power_sum(self, x: Fraction) -> Fraction:
        first = self.step * self.start + self.offset
        return x ** first / (1 - x ** self.step)

    def values(self, limit: int) -> list[int]:
        out, i = [], self.start
        while self.step * i + self.offset <= limit:
            out.append(self.step * i + self.offset)
            i += 1
        return out


@dataclass(frozen=True)
class OddPairSums(Exponents):
    """Exponents i+j over pairs 1 <= i < j with i+j odd."""

    def power_sum(self, x: Fraction) -> Fraction:
        # s = 2t+1 occurs t times (t >= 1)
        return x ** 3 / (1 - x ** 2) ** 2

    def values(self, limit: int) -> list[int]:
        out = []
        for s in range(3, limit + 1, 2):
            out.extend([s] * ((s - 1) // 2))
        return out


@dataclass(frozen=True)
class FiniteExponents(Exponents):
    """An explicit finite multiset of exponents (negative ones allowed)."""

    exps: tuple[int, ...]

    def power_sum(self, x: Fraction) -> Fraction:
        return sum((x ** a for a in self.exps), Fraction(0))

    def values(self, limit: int) -> list[int]:
        return [a for a in self.exps if a <= limit]


@dataclass(frozen=True)
class Family:
    """prod over a in ``exps`` of (1 + sign * z^zexp / q^a)^power."""

    sign: int
    zexp: int
    exps: Exponents
    power: int = 1


def product_log(families: Sequence[Family], q: int, order: int) -> TruncatedSeries:
    """Exact logarithm of a product of families, truncated at ``order``.

    log(1 + s z^k y) = sum_m (-1)^(m+1) s^m z^(km) y^m / m, and summing y^m
    over a family is its power sum at x = q^-m.
    """
    out = [Fraction(0)] * (order + 1)
    for fam in families:
        for m in range(1, order // fam.zexp + 1):
            ps = fam.exps.power_sum(Fraction(1, q ** m))
            term = Fraction((-1) ** (m + 1) * fam.sign ** m, m) * ps * fam.power
            out[fam.zexp * m] += term
    return TruncatedSeries(out)


def infinite_product(families: Sequence[Family], q: int,
                     order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """Exact truncation of an infinite product of families at a fixed q."""
    return product_log(families, q, order).exp()


def truncated_product(families: Sequence[Family], q: int, order: int,
                      cutoff: int) -> TruncatedSeries:
    """Finite product keeping only factors whose q-exponent is <= cutoff.

    This is the naive evaluation; it converges to :func:`infinite_product`
    as ``cutoff`` grows but is never exact for infinite families.
    """
    terms = []
    for fam in families:
        for a in fam.exps.values(cutoff):
            terms.append(Factor(fam.sign, fam.zexp, Fraction(1, 1) / Fraction(q) ** a,
                                fam.power))
    return expand_product(terms, order)


# named families used throughout
def odd_powers(sign: int, power: int = 1) -> Family:
    """prod_{i>=1} (1 + sign z/q^(2i-1))^power."""
    return Family(sign, 1, Progression(2, -1), power)


def even_powers(sign: int, power: int = 1, start: int = 1) -> Family:
    """prod_{i>=start} (1 + sign z/q^(2i))^power."""
    return Family(sign, 1, Progression(2, 0, start), power)


def square_even_powers(power: int = -1, start: int = 1) -> Family:
    """prod_{i>=start} (1 - z^2/q^(2i))^power."""
    return Family(-1, 2, Progression(2, 0, start), power)


def odd_pairs(power: int = -1) -> Family:
    """prod_{i<j, i+j odd} (1 - z^2/q^(i+j))^power."""
    return Family(-1, 2, OddPairSums(), power)


def geometric(c, order: int) -> TruncatedSeries:
    """1/(1 - c z)."""
    c = _frac(c)
    return TruncatedSeries([c ** n for n in range(order + 1)])


def euler_sum(q: int, order: int) -> TruncatedSeries:
    """sum_n z^n / prod_{i=1}^n (1 - q^-i), the left side of Euler's identity."""
    out, d = [], Fraction(1)
    for n in range(order + 1):
        if n:
            d *= 1 - Fraction(1, q ** n)
        out.append(1 / d)
    return TruncatedSeries(out)


def euler_product(q: int, order: int) -> TruncatedSeries:
    """prod_{i>=1} (1 - z/q^(i-1))^-1 via the log-sum route."""
    return infinite_product([Family(-1, 1, Progression(1, -1), -1)], q, order)


def map_coeffs(f: TruncatedSeries, fn: Callable[[int, Fraction], Fraction]) -> TruncatedSeries:
    return TruncatedSeries([fn(i, x) for i, x in enumerate(f)])
