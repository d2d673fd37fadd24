"""Exact arithmetic in Q(gamma) for a metallic mean gamma.

gamma is the positive root of x^2 = p*x + q (p, q positive integers), so every
element of the field is c0 + c1*gamma with rational c0, c1. Products reduce by
the single rewrite gamma^2 -> q + p*gamma, and 1/gamma = (gamma - p)/q, so the
basis {1, gamma} is closed under the ring operations. Signs are decided
exactly, without ever rounding: write the value as (A + B*sqrt(D))/2 with
D = p^2 + 4q and compare A^2 against B^2*D when the two terms disagree in sign.

When D happens to be a perfect square the mean is a rational integer (e.g.
p=1, q=2 gives gamma=2) and sign questions are settled by plain rational
evaluation; the same representation is used either way.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

import mpmath

from .errors import ParamsMismatch

Rational = int | Fraction


@dataclass(frozen=True)
class MetallicParams:
    """The pair (p, q) selecting a metallic mean."""

    p: int
    q: int

    def __post_init__(self) -> None:
        if not (isinstance(self.p, int) and isinstance(self.q, int)):
            raise ValueError("p and q must be integers")
        if self.p < 1 or self.q < 1:
            raise ValueError(f"p and q must be >= 1, got p={self.p}, q={self.q}")

    @cached_property
    def D(self) -> int:
        """Discriminant p^2 + 4q of x^2 - p*x - q."""
        return self.p * self.p + 4 * self.q

    @cached_property
    def is_degenerate(self) -> bool:
        """True when D is a perfect square, i.e. the mean is rational."""
        r = math.isqrt(self.D)
        return r * r == self.D

    @cached_property
    def rational_root(self) -> int | None:
        """The mean as an integer in the degenerate case, else None.

        p and isqrt(D) always share parity when D is a square, so the root
        (p + sqrt(D))/2 is a whole number.
        """
        if not self.is_degenerate:
            return None
        return (self.p + math.isqrt(self.D)) // 2

    def gamma_mpf(self, bits: int = 128) -> mpmath.mpf:
        """The mean (p + sqrt(D))/2 at the requested binary precision."""
        with mpmath.workprec(bits + 10):
            return (self.p + mpmath.sqrt(self.D)) / 2

    @cached_property
    def gamma_float(self) -> float:
        return float(self.gamma_mpf(64))

    def one(self) -> QuadElement:
        return QuadElement(1, 0, self)

    def zero(self) -> QuadElement:
        return QuadElement(0, 0, self)

    def gamma(self) -> QuadElement:
        return QuadElement(0, 1, self)

    def __str__(self) -> str:
        return f"(p={self.p}, q={self.q})"


@dataclass(frozen=True, slots=True)
class QuadElement:
    """An exact element c0 + c1*gamma of Q(gamma)."""

    c0: Fraction
    c1: Fraction
    params: MetallicParams

    def __post_init__(self) -> None:
        if not isinstance(self.c0, Fraction):
            object.__setattr__(self, "c0", Fraction(self.c0))
        if not isinstance(self.c1, Fraction):
            object.__setattr__(self, "c1", Fraction(self.c1))

    def _coerce(self, other: QuadElement | Rational) -> QuadElement | None:
        if isinstance(other, QuadElement):
            if other.params != self.params:
                raise ParamsMismatch(
                    f"cannot combine elements over {self.params} and {other.params}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return QuadElement(other, 0, self.params)
        return None

    def __add__(self, other: QuadElement | Rational) -> QuadElement:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElement(self.c0 + o.c0, self.c1 + o.c1, self.params)

    __radd__ = __add__

    def __sub__(self, other: QuadElement | Rational) -> QuadElement:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElement(self.c0 - o.c0, self.c1 - o.c1, self.params)

    def __rsub__(self, other: QuadElement | Rational) -> QuadElement:
        return (-self) + other

    def __neg__(self) -> QuadElement:
        return QuadElement(-self.c0, -self.c1, self.params)

    def __mul__(self, other: QuadElement | Rational) -> QuadElement:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p, q = self.params.p, self.params.q
        # (a0 + a1*g)(b0 + b1*g) with g^2 = q + p*g
        cross = self.c1 * o.c1
        return QuadElement(
            self.c0 * o.c0 + q * cross,
            self.c0 * o.c1 + self.c1 * o.c0 + p * cross,
            self.params,
        )

    __rmul__ = __mul__

    def inverse(self) -> QuadElement:
        """Multiplicative inverse.

        Uses the conjugate formula when the field norm is nonzero; in the
        degenerate case elements can have zero norm yet nonzero value, so the
        value is then inverted as a plain rational.
        """
        p, D = self.params.p, self.params.D
        a = 2 * self.c0 + self.c1 * p
        b = self.c1
        denom = a * a - b * b * D
        if denom != 0:
            return QuadElement(2 * (a + b * p) / denom, -4 * b / denom, self.params)
        g = self.params.rational_root
        if g is not None:
            value = self.c0 + self.c1 * g
            if value != 0:
                return QuadElement(Fraction(1) / value, 0, self.params)
        raise ZeroDivisionError("inverse of zero element")

    def __truediv__(self, other: QuadElement | Rational) -> QuadElement:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __pow__(self, m: int) -> QuadElement:
        if m < 0:
            return self.inverse() ** (-m)
        result = self.params.one()
        base = self
        while m > 0:
            if m & 1:
                result = result * base
            base = base * base
            m >>= 1
        return result

    def sign(self) -> int:
        """Exact sign of c0 + c1*gamma: -1, 0 or +1."""
        g = self.params.rational_root
        if g is not None:
            value = self.c0 + self.c1 * g
            return (value > 0) - (value < 0)
        # value = (A + B*sqrt(D)) / 2
        a = 2 * self.c0 + self.c1 * self.params.p
        b = self.c1
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return (b > 0) - (b < 0)
        if (a > 0) == (b > 0):
            return 1 if a > 0 else -1
        # opposite signs: the larger of A^2 and B^2*D wins
        lhs = a * a
        rhs = b * b * self.params.D
        if a > 0:
            return 1 if lhs > rhs else -1
        return -1 if lhs > rhs else 1

    def is_zero(self) -> bool:
        return self.sign() == 0

    def to_mpf(self, bits: int = 128) -> mpmath.mpf:
        """Floating approximation with error at most 2^(1-bits) * max(1, |value|)."""
        if bits < 53:
            raise ValueError("bits must be >= 53")
        with mpmath.workprec(bits + 10):
            root = (self.params.p + mpmath.sqrt(self.params.D)) / 2
            return (
                mpmath.mpf(self.c0.numerator) / self.c0.denominator
                + mpmath.mpf(self.c1.numerator) / self.c1.denominator * root
            )

    def __float__(self) -> float:
        return float(self.to_mpf(64))

    def __str__(self) -> str:
        return f"{self.c0} + {self.c1}*gamma"


@lru_cache(maxsize=4096)
def gamma_pow(params: MetallicParams, m: int) -> QuadElement:
    """gamma^m as an exact element, any integer m.

    Negative powers use the basis element (gamma - p)/q, which multiplies back
    against gamma to exactly (1, 0) under the gamma^2 rewrite, so inverse
    powers stay structural even when the mean is rational.
    """
    if m >= 0:
        return params.gamma() ** m
    p, q = params.p, params.q
    recip = QuadElement(Fraction(-p, q), Fraction(1, q), params)
    return recip ** (-m)
