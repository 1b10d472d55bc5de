"""Character degree sums of O^{+-}(2n, q), SO^{+-}(2n, q) and Sp(2n, q).

Irreducible characters are counted through Jordan decomposition: a semisimple
class of the dual group (a choice of partitions on self-dual polynomials and
on dual pairs, plus unipotent labels at the eigenvalues -1 and 1) together
with a unipotent character of its centralizer.  Two routes compute the sums:

* a sign-graded power-series product that only needs the counts N*, M*;
* an explicit loop over the actual polynomials, usable at small rank.

The involution counts of the same groups come from closed generating
functions, which gives the comparison behind total orthogonality.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterator, Optional

from .ffpoly import (count_M_star, count_N_star, dual_pairs, factor_prime_power,
                     self_dual_irreducibles)
from .series import (DEFAULT_ORDER, Family, GradedSeries, Progression, TruncatedSeries,
                     euler_product, euler_sum, geometric, infinite_product, odd_pairs,
                     odd_powers, square_even_powers)
from .symbols import (OddSymbol, OrthSymbol, Symbol, delta, delta_gl, delta_u,
                      enumerate_symbols, partitions, rank, series_G_product, series_G_sum,
                      series_R_product, series_R_sum, series_S_graded, series_T_graded,
                      series_T_product, series_T_sum, series_W_product, series_W_sum,
                      sign_class)

KINDS = ("O", "SO", "Sp")


def _e(q: int) -> int:
    return 2 if q % 2 else 1


def _check_q(q: int) -> None:
    factor_prime_power(q)  # raises on anything that is not a prime power


# ---------------------------------------------------------------------------
# groups


@dataclass(frozen=True)
class GroupSpec:
    kind: str
    n: int
    q: int
    type: int = 1

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown group kind {self.kind!r}")
        if self.type not in (1, -1):
            raise ValueError("type must be +1 or -1")
        _check_q(self.q)
        if self.n < 0:
            raise ValueError("n must be non-negative")

    def __str__(self) -> str:
        if self.kind == "Sp":
            return f"Sp({2 * self.n},{self.q})"
        return f"{self.kind}{'+' if self.type == 1 else '-'}({2 * self.n},{self.q})"


def orth_unit(n: int, q: int, tau: int) -> int:
    """(q^n - tau) prod_{i<n} (q^{2i} - 1): the p'-part of |SO^tau(2n, q)|."""
    out = q ** n - tau
    for i in range(1, n):
        out *= q ** (2 * i) - 1
    return out


def sp_unit(n: int, q: int) -> int:
    out = 1
    for i in range(1, n + 1):
        out *= q ** (2 * i) - 1
    return out


def group_order(spec: GroupSpec) -> int:
    n, q = spec.n, spec.q
    if n < 1:
        raise ValueError("group order is defined for n >= 1")
    if spec.kind == "Sp":
        return q ** (n * n) * sp_unit(n, q)
    so = q ** (n * n - n) * orth_unit(n, q, spec.type)
    return 2 * so if spec.kind == "O" else so


# ---------------------------------------------------------------------------
# semisimple data


@dataclass(frozen=True)
class SemisimpleDatum:
    """A semisimple class with a unipotent character of its centralizer.

    ``unitary`` holds pairs (f, lambda) with f self-dual of even degree,
    ``linear`` holds ((g, g*), lambda).  ``plus`` is the label at the
    eigenvalue -1 (elementary divisor t+1) and ``minus`` the label at 1;
    None means the eigenvalue does not occur.  For q even the two coincide
    and only one slot is used.
    """

    unitary: tuple = ()
    linear: tuple = ()
    plus: object = None
    minus: object = None

    @property
    def m_plus(self) -> int:
        return 0 if self.plus is None else rank(self.plus)

    @property
    def m_minus(self) -> int:
        return 0 if self.minus is None else rank(self.minus)

    def weight(self) -> int:
        w = sum((len(f) - 1) // 2 * sum(lam) for f, lam in self.unitary)
        w += sum((len(g[0]) - 1) * sum(lam) for g, lam in self.linear)
        return w + self.m_plus + self.m_minus

    def poly_delta(self, q: int) -> Fraction:
        out = Fraction(1)
        for f, lam in self.unitary:
            out *= delta_u(lam, len(f) - 1, q)
        for g, lam in self.linear:
            out *= delta_gl(lam, len(g[0]) - 1, q)
        return out


def _eta(label) -> int:
    if label is None or isinstance(label, OddSymbol):
        return 1
    return sign_class(label)


def type_sign(datum: SemisimpleDatum) -> int:
    """tau = eta(+) eta(-) (-1)^{sum m_f}."""
    m_f = sum(sum(lam) for _, lam in datum.unitary)
    return _eta(datum.plus) * _eta(datum.minus) * (-1) ** m_f


def _poly_order_factor(datum: SemisimpleDatum, q: int) -> int:
    out = 1
    for f, lam in datum.unitary:
        h = (len(f) - 1) // 2
        for i in range(1, sum(lam) + 1):
            out *= q ** (i * h) - (-1) ** i
    for g, lam in datum.linear:
        d = len(g[0]) - 1
        for i in range(1, sum(lam) + 1):
            out *= q ** (i * d) - 1
    return out


def P_O(datum: SemisimpleDatum, q: int) -> int:
    out = _poly_order_factor(datum, q)
    for label in (datum.plus, datum.minus):
        if label is not None and rank(label) > 0:
            out *= orth_unit(rank(label), q, _eta(label))
    return out


def P_Sp(datum: SemisimpleDatum, q: int) -> int:
    out = _poly_order_factor(datum, q)
    if datum.plus is not None and datum.m_plus > 0:
        out *= orth_unit(datum.m_plus, q, _eta(datum.plus))
    out *= sp_unit(datum.m_minus, q)
    return out


def _poly_parts(q: int, n: int) -> list[tuple[int, tuple, tuple]]:
    """All (weight, unitary, linear) with weight <= n, over actual polynomials."""
    slots = []
    for d in range(1, n + 1):
        slots.extend(("U", f, d) for f in self_dual_irreducibles(q, 2 * d))
        slots.extend(("GL", g, d) for g in dual_pairs(q, d))
    out = []

    def rec(start, left, w, u, gl):
        out.append((w, u, gl))
        for i in range(start, len(slots)):
            kind, f, d = slots[i]
            for m in range(1, left // d + 1):
                for lam in partitions(m):
                    if kind == "U":
                        rec(i + 1, left - m * d, w + m * d, u + ((f, lam),), gl)
                    else:
                        rec(i + 1, left - m * d, w + m * d, u, gl + ((f, lam),))

    rec(0, n, 0, (), ())
    return out


def _labels(m: int, family: str) -> tuple:
    return (None,) if m == 0 else enumerate_symbols(m, family)


def semisimple_data(n: int, q: int, kind: str) -> Iterator[tuple[SemisimpleDatum, int]]:
    """All characters of weight n as (datum, multiplicity).

    For SO the multiplicity records the two classes of a datum without
    eigenvalues +-1 and the two characters over a pair of non-degenerate
    symbols; a pair involving a degenerate symbol is listed once per orbit
    under simultaneous priming.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown group kind {kind!r}")
    two_slots = q % 2 == 1
    fam = {"O": "O", "SO": "S"}.get(kind)
    for w, u, gl in _poly_parts(q, n):
        rest = n - w
        if kind == "Sp":
            splits = [(mp, rest - mp) for mp in range(rest + 1)] if two_slots else [(0, rest)]
            for mp, mm in splits:
                for xp in _labels(mp, "O"):
                    for xm in enumerate_symbols(mm, "ODD"):
                        yield SemisimpleDatum(u, gl, xp, xm), 1
            continue
        splits = [(mp, rest - mp) for mp in range(rest + 1)] if two_slots else [(rest, 0)]
        for mp, mm in splits:
            for xp in _labels(mp, fam):
                for xm in _labels(mm, fam):
                    if kind == "O":
                        yield SemisimpleDatum(u, gl, xp, xm), 1
                        continue
                    if xp is None and xm is None:
                        yield SemisimpleDatum(u, gl), 2
                    elif xp is None or xm is None:
                        yield SemisimpleDatum(u, gl, xp, xm), 1
                    elif not xp.degenerate and not xm.degenerate:
                        yield SemisimpleDatum(u, gl, xp, xm), 2
                    else:
                        first = xp if xp.degenerate else xm
                        if not first.primed:
                            yield SemisimpleDatum(u, gl, xp, xm), 1


def character_degree(datum: SemisimpleDatum, n: int, q: int, kind: str) -> int:
    """Degree [G*: C(s)]_{p'} * psi(1) of the character attached to datum."""
    if kind == "Sp":
        P = P_Sp(datum, q)
        index = Fraction(sp_unit(n, q), P * (2 if datum.m_plus else 1))
        psi = P * datum.poly_delta(q) * delta(datum.minus, q)
        if datum.m_plus:
            psi *= delta(datum.plus, q)
        value = index * psi
    else:
        tau = type_sign(datum)
        P = P_O(datum, q)
        both = datum.m_plus > 0 and datum.m_minus > 0
        index = Fraction(orth_unit(n, q, tau), P * (2 if both else 1))
        psi = P * datum.poly_delta(q)
        for label in (datum.plus, datum.minus):
            if label is not None and rank(label) > 0:
                psi *= delta(label, q)
        if kind == "O":
            # Ind from SO doubles when no +-1 eigenvalue; else index 2 in C_G(s)
            value = index * psi * (2 if datum.m_plus == datum.m_minus == 0 else 1)
        else:
            if both and (datum.plus.degenerate or datum.minus.degenerate):
                psi *= 2
            value = index * psi
    if value.denominator != 1 or value <= 0:
        raise ArithmeticError(f"non-integral degree {value} for {datum}")
    return int(value)


def _check_rank(n: int, q: int, limit: int | None = None) -> None:
    _check_q(q)
    if n < 1:
        raise ValueError("n must be positive")
    if limit is not None and n > limit:
        raise ValueError(f"n = {n} exceeds the supported range (<= {limit})")


def sigma_explicit(n: int, q: int, kind: str, tau: int = 1) -> int:
    """Degree sum by explicit enumeration over polynomials and symbols."""
    _check_rank(n, q, limit=4)
    total = 0
    for datum, mult in semisimple_data(n, q, kind):
        if kind != "Sp" and type_sign(datum) != tau:
            continue
        total += mult * character_degree(datum, n, q, kind)
    return total


# ---------------------------------------------------------------------------
# graded dynamic programme


@lru_cache(maxsize=None)
def unitary_factor(q: int, d: int, order: int) -> GradedSeries:
    """sum_lambda delta_U(lambda, 2d) z^{d|lambda|}, graded by (-1)^{|lambda|}."""
    plus = [Fraction(0)] * (order + 1)
    minus = [Fraction(0)] * (order + 1)
    for m in range(order // d + 1):
        s = sum((delta_u(lam, 2 * d, q) for lam in partitions(m)), Fraction(0))
        (plus if m % 2 == 0 else minus)[m * d] += s
    return GradedSeries(TruncatedSeries(plus), TruncatedSeries(minus))


@lru_cache(maxsize=None)
def gl_factor(q: int, d: int, order: int) -> TruncatedSeries:
    out = [Fraction(0)] * (order + 1)
    for m in range(order // d + 1):
        out[m * d] = sum((delta_gl(lam, d, q) for lam in partitions(m)), Fraction(0))
    return TruncatedSeries(out)


@lru_cache(maxsize=None)
def old_lhs_graded(q: int, order: int = DEFAULT_ORDER) -> GradedSeries:
    """prod_d U_d^{N*(q;2d)} GL_d^{M*(q;d)} graded by (-1)^{sum m_f}."""
    acc = GradedSeries(TruncatedSeries.one(order))
    for d in range(1, order + 1):
        ns = count_N_star(q, 2 * d)
        if ns:
            acc = acc * unitary_factor(q, d, order).power(ns)
        ms = count_M_star(q, d)
        if ms:
            acc = acc * gl_factor(q, d, order).power(ms)
    return acc


def old_lhs(q: int, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    return old_lhs_graded(q, order).total()


@lru_cache(maxsize=None)
def o_series_graded(q: int, order: int = DEFAULT_ORDER) -> GradedSeries:
    """Coefficient n, grade tau: Sigma(O^tau(2n,q)) / (2 (q^n - tau) prod (q^{2i}-1))."""
    return old_lhs_graded(q, order) * series_T_graded(q, order) ** _e(q)


def so_unipotent_factor(q: int, order: int = DEFAULT_ORDER) -> GradedSeries:
    """The factor at the eigenvalues +-1 for SO, graded by the type it forces."""
    s = series_S_graded(q, order)
    if q % 2 == 0:
        return s
    g = GradedSeries(series_G_sum(q, order) * 2)   # sum over G of delta
    r = GradedSeries(s.plus - g.plus, s.minus)     # sum over R of delta
    return (g * r + r * g + g * g) * Fraction(1, 2) + r * r


@lru_cache(maxsize=None)
def so_series_graded(q: int, order: int = DEFAULT_ORDER) -> GradedSeries:
    """Coefficient n, grade tau: Sigma(SO^tau(2n,q)) / ((q^n - tau) prod (q^{2i}-1))."""
    return old_lhs_graded(q, order) * so_unipotent_factor(q, order)


@lru_cache(maxsize=None)
def sp_series(q: int, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """Coefficient n: Sigma(Sp(2n,q)) / prod_{i<=n} (q^{2i}-1)."""
    f = old_lhs(q, order) * series_W_sum(q, order)
    return f * series_T_sum(q, order) if q % 2 else f


def _as_int(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise ArithmeticError(f"{what} = {x} is not an integer")
    return int(x)


def _graded_coeff(g: GradedSeries, n: int, tau: int) -> Fraction:
    return (g.plus if tau == 1 else g.minus)[n]


def sigma_O(n: int, q: int, tau: int, method: str = "dp") -> int:
    """Sum of the irreducible character degrees of O^tau(2n, q)."""
    if method == "explicit":
        return sigma_explicit(n, q, "O", tau)
    _check_rank(n, q)
    c = _graded_coeff(o_series_graded(q, n), n, tau)
    return _as_int(c * 2 * orth_unit(n, q, tau), f"Sigma(O{tau:+d}({2 * n},{q}))")


def sigma_SO(n: int, q: int, tau: int, method: str = "dp") -> int:
    """Sum of the irreducible character degrees of SO^tau(2n, q)."""
    if method == "explicit":
        return sigma_explicit(n, q, "SO", tau)
    _check_rank(n, q)
    c = _graded_coeff(so_series_graded(q, n), n, tau)
    return _as_int(c * orth_unit(n, q, tau), f"Sigma(SO{tau:+d}({2 * n},{q}))")


def sigma_Sp(n: int, q: int, method: str = "dp") -> int:
    """Sum of the irreducible character degrees of Sp(2n, q); Sp(0, q) is trivial."""
    if n == 0:
        _check_q(q)
        return 1
    if method == "explicit":
        return sigma_explicit(n, q, "Sp")
    _check_rank(n, q)
    c = sp_series(q, n)[n]
    return _as_int(c * sp_unit(n, q), f"Sigma(Sp({2 * n},{q}))")


# ---------------------------------------------------------------------------
# involution generating functions

FGS_KINDS = ("O-odd-q", "O-even-q", "SO", "O-minus-SO")


def _p1(q: int, e: int, order: int) -> TruncatedSeries:
    # prod_{i>=1} (1 + z/q^{2(i-1)})^e / (1 - z^2/q^{2(i-1)})
    return infinite_product([Family(1, 1, Progression(2, -2), e),
                             square_even_powers(-1, start=0)], q, order)


def _p3(q: int, e: int, order: int) -> TruncatedSeries:
    # prod_{i>=1} (1 + z/q^{2i-1})^e / (1 - z^2/q^{2i-2})
    return infinite_product([odd_powers(1, e), square_even_powers(-1, start=0)], q, order)


def _p4(q: int, e: int, order: int) -> TruncatedSeries:
    # prod_{i>=1} (1 + z/q^{2i})^e / (1 - z^2/q^{2i})
    return infinite_product([Family(1, 1, Progression(2, 0), e),
                             square_even_powers(-1, start=1)], q, order)


def fgs_involution_series(kind: str, q: int, order: int = DEFAULT_ORDER
                          ) -> tuple[TruncatedSeries, TruncatedSeries]:
    """(plus, minus) involution generating functions.

    O kinds: coefficient n is I(O^tau(2n,q)) q^{n^2} / |O^tau(2n,q)|.
    SO: I(SO^tau) q^{n^2-n} / |SO^tau|.  O-minus-SO: the same for the
    non-identity coset (one series, returned for both types).
    """
    _check_q(q)
    e = _e(q)
    if kind in ("O-odd-q", "O-even-q"):
        if (kind == "O-odd-q") != (q % 2 == 1):
            raise ValueError(f"{kind} does not apply to q = {q}")
        first = geometric(q, order) * _p1(q, e, order) / 2
        second = _p3(q, e, order) / 2
        return first + second, first - second
    if kind == "SO":
        p3, p4 = _p3(q, e, order), _p4(q, e, order)
        return p3 + p4, p3 - p4
    if kind == "O-minus-SO":
        c = _p3(q, e, order).shift(1)
        return c, c
    raise ValueError(f"unknown involution series {kind!r}")


def _o_kind(q: int) -> str:
    return "O-odd-q" if q % 2 else "O-even-q"


def involution_count(kind: str, n: int, q: int, tau: int) -> int:
    """I(O^tau), I(SO^tau) or I(O^tau \\ SO^tau) read off the generating functions.

    ``kind`` is "O", "SO" or "O-minus-SO"."""
    _check_rank(n, q)
    if kind == "O":
        plus, minus = fgs_involution_series(_o_kind(q), q, max(n, 1))
        a, scale = (plus if tau == 1 else minus)[n], q ** (n * n)
        order = group_order(GroupSpec("O", n, q, tau))
    elif kind in ("SO", "O-minus-SO"):
        plus, minus = fgs_involution_series(kind, q, max(n, 1))
        a, scale = (plus if tau == 1 else minus)[n], q ** (n * n - n)
        order = group_order(GroupSpec("SO", n, q, tau))
    else:
        raise ValueError(f"unknown involution count kind {kind!r}")
    value = a * order / scale
    return _as_int(value, f"I({kind}{tau:+d}({2 * n},{q}))")


def j_count(n: int, q: int, tau: int) -> int:
    """I(SO^tau(2n,q)) for n even, I(O^tau \\ SO^tau) for n odd."""
    return involution_count("SO" if n % 2 == 0 else "O-minus-SO", n, q, tau)


# ---------------------------------------------------------------------------
# identities


def indicators_o_rhs(q: int, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """1/(1-z) prod (1 + z/q^{2i-1})^e / (1 - z^2/q^{2i})."""
    return geometric(1, order) * infinite_product(
        [odd_powers(1, _e(q)), square_even_powers(-1)], q, order)


def indicators_so_rhs(q: int, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    e = _e(q)
    g = geometric(1, order)
    return (g * infinite_product([odd_powers(1, e), square_even_powers(-1)], q, order)
            + g * infinite_product([odd_powers(-1, e), square_even_powers(-1)], q, order))


def old_result_rhs(q: int, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    e = _e(q)
    return geometric(1, order) * infinite_product(
        [odd_powers(-1, e), square_even_powers(-1), odd_pairs(e)], q, order)


def _fgs_o_normalised(q: int, order: int) -> tuple[TruncatedSeries, TruncatedSeries]:
    # I(O^tau)/(2 (q^n - tau) prod) is a_n^tau / q^n
    plus, minus = fgs_involution_series(_o_kind(q), q, order)
    return plus.scale_var(Fraction(1, q)), minus.scale_var(Fraction(1, q))


def _fgs_so_normalised(q: int, order: int) -> tuple[TruncatedSeries, TruncatedSeries]:
    # J(SO^tau)/((q^n - tau) prod): b^tau at even n, c at odd n
    plus, minus = fgs_involution_series("SO", q, order)
    c, _ = fgs_involution_series("O-minus-SO", q, order)
    return plus.even_part() + c.odd_part(), minus.even_part() + c.odd_part()


def _id_old_result(q, order):
    return [("", old_lhs(q, order), old_result_rhs(q, order))]


def _id_genfun_o(q, order):
    return [("", old_lhs(q, order) * series_T_sum(q, order) ** _e(q), indicators_o_rhs(q, order))]


def _id_genfun_so(q, order):
    e = _e(q)
    unip = series_T_sum(q, order) ** e + series_G_sum(q, order) ** e
    return [("", old_lhs(q, order) * unip, indicators_so_rhs(q, order))]


def _id_indicators_o(q, order):
    g = o_series_graded(q, order)
    fp, fm = _fgs_o_normalised(q, order)
    return [("degree sums", g.total(), indicators_o_rhs(q, order)),
            ("involutions", fp + fm, indicators_o_rhs(q, order)),
            ("O+", g.plus, fp), ("O-", g.minus, fm)]


def _id_indicators_so(q, order):
    g = so_series_graded(q, order)
    jp, jm = _fgs_so_normalised(q, order)
    return [("degree sums", g.total(), indicators_so_rhs(q, order)),
            ("involutions", jp + jm, indicators_so_rhs(q, order)),
            ("SO+", g.plus, jp), ("SO-", g.minus, jm)]


def _id_sp_chain(q, order):
    return [("", sp_series(q, order), euler_product(q, order))]


def _id_euler(q, order):
    return [("", euler_sum(q, order), euler_product(q, order))]


def _id_pair(sum_fn, prod_fn):
    return lambda q, order: [("", sum_fn(q, order), prod_fn(q, order))]


@dataclass(frozen=True)
class Identity:
    name: str
    build: Callable
    default_order: int = DEFAULT_ORDER
    applies: Callable[[int], bool] = lambda q: True
    note: str = ""


REGISTRY = {i.name: i for i in [
    Identity("old-result", _id_old_result),
    Identity("genfun-O", _id_genfun_o),
    Identity("genfun-SO", _id_genfun_so),
    Identity("T-product", _id_pair(series_T_sum, series_T_product)),
    Identity("G-product", _id_pair(series_G_sum, series_G_product)),
    Identity("R-product", _id_pair(series_R_sum, series_R_product)),
    Identity("W-product", _id_pair(series_W_sum, series_W_product)),
    Identity("euler", _id_euler, default_order=20),
    Identity("indicators-O-even", _id_indicators_o),
    Identity("indicators-SO-even", _id_indicators_so),
    Identity("sp-chain", _id_sp_chain, applies=lambda q: q % 2 == 1,
             note="twisted involution count |Sp|/|GL| holds for odd q only"),
]}


@dataclass
class IdentityResult:
    name: str
    q: int
    order: int
    status: str                      # "pass", "fail" or "n/a"
    mismatch: Optional[tuple] = None  # (part, index, left, right) at the first failure
    parts: list = dc_field(default_factory=list)
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.status != "fail"


def verify_identity(name: str, q: int, order: int | None = None) -> IdentityResult:
    """Compare both sides of a registered identity coefficientwise."""
    if name not in REGISTRY:
        raise KeyError(f"unknown identity {name!r}; choose from {', '.join(REGISTRY)}")
    _check_q(q)
    ident = REGISTRY[name]
    order = ident.default_order if order is None else order
    if not ident.applies(q):
        return IdentityResult(name, q, order, "n/a", note=ident.note)
    parts = ident.build(q, order)
    result = IdentityResult(name, q, order, "pass", parts=parts)
    for label, left, right in parts:
        i = left.first_difference(right)
        if i is not None:
            result.status = "fail"
            result.mismatch = (label, i, left[i], right[i])
            break
    return result
