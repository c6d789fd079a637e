"""Scalar kernel: exact rationals, complex doubles, Pochhammer symbols,
their derivatives at non-positive integers, digamma and binomials.

Exact quantities are ``fractions.Fraction``; floating ones are Python
``complex`` (or ``float``).  Mixed arithmetic follows Python's numeric tower,
so a function written once works on both kinds.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Number
from typing import Union

Rat = Fraction
Cx = complex
Scalar = Union[int, Fraction, float, complex]

EULER_GAMMA = 0.57721566490153286060651209008240243
LN2 = math.log(2.0)


class DomainError(ValueError):
    """An input lies outside the documented domain of an operation."""


class BranchCutError(DomainError):
    pass


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def all_exact(*xs) -> bool:
    return all(is_exact(x) for x in xs)


def as_rat(x) -> Fraction:
    if not is_exact(x):
        raise TypeError(f"expected an exact rational, got {x!r}")
    return Fraction(x)


def to_cx(x) -> complex:
    return complex(x)


def parse_scalar(text: str) -> Scalar:
    """Parse "p/q" or an integer as Fraction, anything else as float/complex."""
    s = text.strip()
    try:
        return Fraction(s)
    except ValueError:
        pass
    try:
        return float(s)
    except ValueError:
        return complex(s.replace("i", "j"))


def as_int_if_integral(x) -> int | None:
    """Return x as int when it is an integer value (exact or float), else None."""
    if isinstance(x, bool):
        return None
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else None
    if isinstance(x, complex):
        if x.imag != 0:
            return None
        x = x.real
    if isinstance(x, float):
        if math.isfinite(x) and x == int(x):
            return int(x)
        return None
    try:  # mpmath and friends
        r = float(x.real) if hasattr(x, "real") else float(x)
        if getattr(x, "imag", 0) == 0 and r == int(r) and x == int(r):
            return int(r)
    except (TypeError, ValueError):
        pass
    return None


def nonpositive_int(x) -> int | None:
    """If x is 0, -1, -2, ... return -x, else None."""
    n = as_int_if_integral(x)
    if n is not None and n <= 0:
        return -n
    return None


def pochhammer(a, N: int):
    """Rising factorial (a)_N = a(a+1)...(a+N-1); exact for exact a."""
    if N < 0:
        raise DomainError("pochhammer needs N >= 0")
    p = Fraction(1) if is_exact(a) else 1
    for j in range(N):
        p = p * (a + j)
    return p


def harmonic(n: int) -> Fraction:
    return sum((Fraction(1, j) for j in range(1, n + 1)), Fraction(0))


def pochhammer_derivative(m: int, N: int) -> Fraction:
    """d/da (a)_N at a = -m, exactly.

    For N <= m the factor (a)_N is (-m)_N != 0 times a harmonic sum;
    for N > m one factor vanishes and the derivative is (-1)^m m! (N-m-1)!.
    """
    if m < 0 or N < 0:
        raise DomainError("pochhammer_derivative needs m, N >= 0")
    if N == 0:
        return Fraction(0)
    if N <= m:
        s = sum((Fraction(1, j) for j in range(m + 1 - N, m + 1)), Fraction(0))
        return pochhammer(Fraction(-m), N) * (-s)
    return Fraction((-1) ** m * math.factorial(m) * math.factorial(N - m - 1))


def binomial(n: int, k: int) -> Fraction:
    if k < 0 or k > n:
        return Fraction(0)
    return Fraction(math.comb(n, k))


def binomial_general(b, n: int):
    """binom(b, n) for arbitrary b and integer n >= 0."""
    p = Fraction(1) if is_exact(b) else 1
    for j in range(n):
        p = p * (b - j) / (j + 1)
    return p


# -- digamma ---------------------------------------------------------------

_BERNOULLI_ASYMP = (
    1.0 / 12, -1.0 / 120, 1.0 / 252, -1.0 / 240, 1.0 / 132,
    -691.0 / 32760, 1.0 / 12,
)


def digamma(x: float) -> float:
    """psi(x) for real x > 0, via upward recurrence and the asymptotic series."""
    x = float(x)
    if not x > 0 or not math.isfinite(x):
        raise DomainError("digamma is only provided for finite x > 0")
    acc = 0.0
    while x < 10.0:
        acc -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    s = 0.0
    p = inv2
    for c in _BERNOULLI_ASYMP:
        s += c * p
        p *= inv2
    return acc + math.log(x) - 0.5 / x - s


@dataclass(frozen=True)
class DigammaValue:
    """rational + gamma_coeff * EulerGamma + ln2_coeff * log 2."""

    rational: Fraction
    gamma_coeff: Fraction = Fraction(0)
    ln2_coeff: Fraction = Fraction(0)

    def __add__(self, other: "DigammaValue") -> "DigammaValue":
        return DigammaValue(self.rational + other.rational,
                            self.gamma_coeff + other.gamma_coeff,
                            self.ln2_coeff + other.ln2_coeff)

    def __neg__(self) -> "DigammaValue":
        return DigammaValue(-self.rational, -self.gamma_coeff, -self.ln2_coeff)

    def __sub__(self, other: "DigammaValue") -> "DigammaValue":
        return self + (-other)

    def __float__(self) -> float:
        return (float(self.rational) + float(self.gamma_coeff) * EULER_GAMMA
                + float(self.ln2_coeff) * LN2)


def digamma_exact(x) -> DigammaValue:
    """psi at an integer or half-integer argument as a closed form.

    Positive integers n: H_{n-1} - gamma.  Half-integers n+1/2 (any sign):
    -gamma - 2 log 2 + 2 sum 1/(2j-1), extended below 1/2 by psi(x) = psi(x+1) - 1/x.
    """
    x = Fraction(x)
    if x.denominator == 1:
        n = int(x)
        if n <= 0:
            raise DomainError("digamma has poles at non-positive integers")
        return DigammaValue(harmonic(n - 1), Fraction(-1))
    if x.denominator != 2:
        raise DomainError("digamma_exact handles integers and half-integers only")
    base = DigammaValue(Fraction(0), Fraction(-1), Fraction(-2))  # psi(1/2)
    if x > 0:
        n = int(x - Fraction(1, 2))
        s = sum((Fraction(2, 2 * j - 1) for j in range(1, n + 1)), Fraction(0))
        return base + DigammaValue(s)
    # x = 1/2 - n with n >= 1
    n = int(Fraction(1, 2) - x)
    s = sum((Fraction(1) / (x + j) for j in range(n)), Fraction(0))
    return base - DigammaValue(s)


# -- square roots and branches -----------------------------------------------

def _exact_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def on_negative_axis(z) -> bool:
    c = complex(z)
    return c.imag == 0 and c.real < 0


def sqrt_principal(z, strict: bool = False):
    """Principal square root, Re >= 0.

    Exact rational squares return a Fraction.  With strict=True a point on
    the cut (-inf, 0) raises BranchCutError instead of silently choosing a side.
    """
    if is_exact(z):
        r = _exact_sqrt(Fraction(z))
        if r is not None:
            return r
    if strict and on_negative_axis(z):
        raise BranchCutError(f"z={z} lies on the branch cut (-inf, 0) of sqrt")
    c = complex(z)
    if c.imag == 0:
        c = complex(c.real, 0.0)  # a signed zero would pick the lower sheet
    return cmath.sqrt(c)


def power(base, expo):
    """base**expo with exact results for exact base and integer exponent."""
    n = as_int_if_integral(expo)
    if n is not None and is_exact(base):
        if base == 0 and n < 0:
            raise ZeroDivisionError("0 to a negative power")
        return Fraction(base) ** n
    if n is not None:
        return complex(base) ** n
    b = complex(base)
    if b.imag == 0:
        b = complex(b.real, 0.0)
    if b == 0:
        return 0j
    return cmath.exp(complex(expo) * cmath.log(b))


def real_if_close(x, tol: float = 0.0):
    """Drop a zero imaginary part of a complex result."""
    if isinstance(x, complex) and abs(x.imag) <= tol:
        return x.real
    return x


def is_number(x) -> bool:
    return isinstance(x, Number)
