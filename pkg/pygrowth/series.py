#!/usr/bin/env python
from __future__ import annotations
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import cached_property, reduce
from typing import Iterable, Sequence
import logging
import re

import numpy
import sympy
from sympy import Poly, QQ, Rational

from .errors import InputError, InvariantError, SeriesError

logger = logging.getLogger(__name__)

#: The formal variable of every series
t = sympy.Symbol("t")

Number = int | Fraction

_FORMAT = re.compile(r"^\s*num=\[(?P<num>[^\]]*)\]\s+den=\[(?P<den>[^\]]*)\]"
                     r"(?:\s+prefix=\[(?P<prefix>[^\]]*)\])?\s*$")


def _poly(coefficients: Sequence[Number]) -> Poly:
    """Poly in t from ascending coefficients"""
    values = [Rational(c.numerator, c.denominator) if isinstance(c, Fraction)
              else Rational(c) for c in reversed(list(coefficients))]
    return Poly(values or [0], t, domain=QQ)


def _fractions(poly: Poly) -> tuple[Fraction, ...]:
    """Ascending coefficients, no trailing zeros (``(0,)`` for zero)"""
    if poly.is_zero:
        return (Fraction(0),)
    return tuple(Fraction(int(c.p), int(c.q))
                 for c in reversed(poly.all_coeffs()))


def _token(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else \
        f"{value.numerator}/{value.denominator}"


def _tokens(text: str) -> list[Fraction]:
    try:
        return [Fraction(tok.strip()) for tok in text.split(",") if tok.strip()]
    except ValueError as error:
        raise InputError(f"bad coefficient in [{text}]: {error}") from None


@dataclass(frozen=True, eq=False)
class RationalSeries:
    """A power series P(t)/Q(t) with exact rational coefficients.

       Always reduced: gcd(P, Q) = 1 and Q(0) = 1. *verified_prefix*
       holds coefficients that were compared with a brute-force oracle;
       it is empty for unchecked series.
    """

    numerator: Poly
    denominator: Poly
    verified_prefix: tuple[Fraction, ...] = ()

    def __post_init__(self):
        numerator, denominator = self.numerator, self.denominator
        if denominator.is_zero:
            raise SeriesError("zero denominator")
        common = numerator.gcd(denominator)
        if common.degree() > 0:
            numerator = numerator.exquo(common)
            denominator = denominator.exquo(common)
        constant = denominator.coeff_monomial(1)
        if constant == 0:
            raise SeriesError("denominator vanishes at t = 0")
        object.__setattr__(self, "numerator", numerator.quo_ground(constant))
        object.__setattr__(self, "denominator",
                           denominator.quo_ground(constant))
        object.__setattr__(self, "verified_prefix",
                           tuple(Fraction(c) for c in self.verified_prefix))

    @staticmethod
    def from_coefficients(numerator: Sequence[Number],
                          denominator: Sequence[Number] = (1,),
                          prefix: Sequence[Number] = ()) -> RationalSeries:
        return RationalSeries(_poly(numerator), _poly(denominator),
                              tuple(prefix))

    @cached_property
    def num(self) -> tuple[Fraction, ...]:
        return _fractions(self.numerator)

    @cached_property
    def den(self) -> tuple[Fraction, ...]:
        return _fractions(self.denominator)

    @property
    def is_polynomial(self) -> bool:
        return self.denominator.degree() == 0

    @property
    def checked(self) -> bool:
        return bool(self.verified_prefix)

    def coefficients(self, n: int) -> list[Fraction]:
        """The first *n* Taylor coefficients"""
        num, den = self.num, self.den
        out: list[Fraction] = []
        for k in range(n):
            value = num[k] if k < len(num) else Fraction(0)
            for i in range(1, min(k, len(den) - 1) + 1):
                value -= den[i] * out[k - i]
            out.append(value)
        return out

    def equals(self, other: RationalSeries) -> bool:
        """Equality as rational functions"""
        return (self.numerator * other.denominator
                - other.numerator * self.denominator).is_zero

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalSeries):
            return NotImplemented
        return self.equals(other)

    __hash__ = None

    def over_one_minus_t(self) -> RationalSeries:
        """Cumulative series: coefficients summed up to each n"""
        return RationalSeries(self.numerator,
                              self.denominator * _poly((1, -1)))

    def times_one_minus_t(self) -> RationalSeries:
        """Differences of consecutive coefficients"""
        return RationalSeries(self.numerator * _poly((1, -1)),
                              self.denominator)

    def scaled(self, factor: Number) -> RationalSeries:
        factor = Fraction(factor)
        return RationalSeries(
            self.numerator.mul_ground(Rational(factor.numerator,
                                               factor.denominator)),
            self.denominator)

    def with_prefix(self, prefix: Sequence[Number]) -> RationalSeries:
        return replace(self, verified_prefix=tuple(prefix))

    def format(self) -> str:
        """``num=[..] den=[..] prefix=[..]`` with integer or ``p/q``
           tokens"""
        def listing(values):
            return "[" + ",".join(_token(v) for v in values) + "]"
        return (f"num={listing(self.num)} den={listing(self.den)} "
                f"prefix={listing(self.verified_prefix)}")

    def __str__(self) -> str:
        return self.format()

    @staticmethod
    def parse(text: str) -> RationalSeries:
        """Inverse of :meth:`format`

           :raises InputError: On malformed text
        """
        match = _FORMAT.match(text)
        if match is None:
            raise InputError(f"not a series: {text!r}")
        return RationalSeries.from_coefficients(
            _tokens(match["num"]), _tokens(match["den"]),
            _tokens(match["prefix"] or ""))


def _berlekamp_massey(terms: Sequence[Fraction]) -> tuple[list[Fraction], int]:
    """Shortest recurrence Σ C_i s_(n−i) = 0 (C_0 = 1) over the rationals;
       returns C and the linear complexity L"""
    C = [Fraction(1)]
    B = [Fraction(1)]
    L, m, b = 0, 1, Fraction(1)
    for n, term in enumerate(terms):
        d = term + sum(C[i] * terms[n - i] for i in range(1, L + 1)
                       if i < len(C))
        if d == 0:
            m += 1
            continue
        previous = list(C)
        coef = d / b
        C += [Fraction(0)] * (len(B) + m - len(C))
        for i, value in enumerate(B):
            C[i + m] -= coef * value
        if 2 * L <= n:
            L, B, b, m = n + 1 - L, previous, d, 1
        else:
            m += 1
    C += [Fraction(0)] * (L + 1 - len(C))
    return C[:L + 1], L


def series_from_sequence(terms: Sequence[Number],
                         max_order: int) -> RationalSeries:
    """Fit the minimal linear recurrence to *terms* and return the reduced
       P/Q it defines.

       :raises InputError: If fewer than ``2·max_order + 2`` terms are given
       :raises SeriesError: If no recurrence of order ≤ *max_order* fits
    """
    terms = [Fraction(x) for x in terms]
    if len(terms) < 2 * max_order + 2:
        raise InputError(f"{len(terms)} terms cannot certify a recurrence "
                         f"of order {max_order}; {2 * max_order + 2} needed")
    C, L = _berlekamp_massey(terms)
    if L > max_order:
        raise SeriesError(f"no recurrence of order ≤ {max_order} fits "
                          f"(linear complexity {L})")
    P = [sum(C[i] * terms[k - i] for i in range(0, min(k, L) + 1))
         for k in range(L)]
    series = RationalSeries.from_coefficients(P, C)
    if series.coefficients(len(terms)) != terms:
        raise SeriesError("fitted recurrence does not reproduce the terms")
    logger.debug("recurrence of order %d from %d terms", L, len(terms))
    return series


def common_denominator(series: Iterable[RationalSeries]) -> Poly:
    """Least common multiple Q of the denominators, scaled so Q(0) = 1.

       :raises InvariantError: If Q fails to clear some series
    """
    series = list(series)
    if not series:
        return _poly((1,))
    lcm = reduce(lambda a, b: a.lcm(b), (s.denominator for s in series))
    lcm = lcm.quo_ground(lcm.coeff_monomial(1))
    for s in series:
        if not lcm.rem(s.denominator).is_zero:
            raise InvariantError("common denominator does not clear "
                                 f"{s.format()}")
    return lcm


def polynomial_coefficients(poly: Poly) -> tuple[Fraction, ...]:
    return _fractions(poly)


@dataclass(frozen=True)
class GrowthRate:
    """Exponential growth rate λ = limsup a(n)^(1/n) of a series.

       λ lies in [*lower*, *upper*]; *power_iteration* is the floating
       Perron–Frobenius cross-check, :data:`None` when skipped.
    """

    lower: Fraction
    upper: Fraction
    power_iteration: float | None = None

    @property
    def value(self) -> float:
        return float((self.lower + self.upper) / 2)

    @property
    def exponential(self) -> bool:
        """:data:`True` if λ > 1 is certified"""
        return self.lower > 1

    def agrees(self, tolerance: float = 1e-6) -> bool:
        if self.power_iteration is None:
            return True
        return abs(self.power_iteration - self.value) <= tolerance

    def format(self) -> str:
        text = f"{self.value:.9f} in [{float(self.lower):.12f}, " \
               f"{float(self.upper):.12f}]"
        if self.power_iteration is not None:
            text += f" (power iteration {self.power_iteration:.9f})"
        return text


def spectral_radius(matrix: Sequence[Sequence[Number]],
                    start: Sequence[Number] | None = None,
                    weight: Sequence[Number] | None = None,
                    iterations: int = 5000, tolerance: float = 1e-13) -> float:
    """Growth rate of start·Mⁿ·weight by power iteration; the Perron root
       of a nonnegative matrix when both vectors are all ones.

       Iterates row vectors x ↦ x(M + I) from *start*, which avoids
       oscillation on periodic matrices, and subtracts 1 at the end.
    """
    shifted = numpy.array(matrix, dtype=float) + numpy.eye(len(matrix))
    x = numpy.ones(len(matrix)) if start is None \
        else numpy.array(start, dtype=float)
    w = numpy.ones(len(matrix)) if weight is None \
        else numpy.array([float(v) for v in weight])
    estimate = 0.0
    for _ in range(iterations):
        y = x @ shifted
        total = y.sum()
        if total == 0:
            return 0.0
        before = x @ w
        x = y / total
        if before == 0:
            continue
        ratio = (y @ w) / before
        if abs(ratio - estimate) < tolerance:
            estimate = ratio
            break
        estimate = ratio
    return max(float(estimate) - 1.0, 0.0)


def growth_rate(series: RationalSeries,
                matrix: Sequence[Sequence[Number]] | None = None,
                start: Sequence[Number] | None = None,
                weight: Sequence[Number] | None = None,
                width: Fraction = Fraction(1, 10**12)) -> GrowthRate:
    """λ = 1/r for the smallest root r of the denominator in (0, 1], or 1
       if there is none.

       Roots of the square-free part of the denominator are isolated and
       refined exactly. A *matrix* with *start* and *weight* vectors
       reproducing the series adds a power-iteration cross-check when
       λ > 1.
    """
    square_free = series.denominator.sqf_part()
    eps = Rational(width.numerator, width.denominator)
    lower = upper = Fraction(1)
    for (a, b), _ in sorted(square_free.intervals()):
        if b <= 0 or a > 1:
            continue
        a, b = square_free.refine_root(a, b, eps=eps)
        a = Fraction(int(a.p), int(a.q))
        b = Fraction(int(b.p), int(b.q))
        if b <= 0:
            continue
        if a <= 1:
            lower = max(Fraction(1), 1 / b)
            upper = 1 / a if a > 0 else lower
        break
    check = None
    # power iteration converges only polynomially when λ = 1
    if matrix is not None and len(matrix) and lower > 1:
        check = spectral_radius(matrix, start, weight)
    rate = GrowthRate(lower, upper, check)
    logger.debug("growth rate %s", rate.format())
    return rate
