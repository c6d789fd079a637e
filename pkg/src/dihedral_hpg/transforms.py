"""Exact polynomial machinery for dihedral pull-back transformations.

* theta_pair(n): the degree-n polynomials with (1 - sqrt x)^n = theta1(x) - sqrt(x) theta2(x).
* klein_covering(k, l, n, m): Klein's pull-back covering for exponent differences
  (k+1/2, l+1/2, n/m), built from (1 + sqrt x)^n G(sqrt x)^m = Theta1(x) + x^{k+1/2} Theta2(x).

Polynomials carry ``Fraction`` coefficients in ascending order.
"""
from __future__ import annotations

import cmath
import enum
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .hypseries import appell_f2_rect
from .numcore import DomainError, binomial, pochhammer


class GcdViolation(DomainError):
    pass


class StructureViolation(ArithmeticError):
    pass


class NotAPerfectPower(ArithmeticError):
    pass


class NonDivisible(ArithmeticError):
    pass


# -- polynomials ---------------------------------------------------------------

class RatPoly:
    """Dense univariate polynomial, ascending coefficients, no trailing zeros."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable = ()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.c = tuple(c)

    @classmethod
    def const(cls, v) -> "RatPoly":
        return cls([v])

    @classmethod
    def x(cls) -> "RatPoly":
        return cls([0, 1])

    @property
    def degree(self) -> float | int:
        return len(self.c) - 1 if self.c else -math.inf

    def is_zero(self) -> bool:
        return not self.c

    def __getitem__(self, i: int):
        return self.c[i] if 0 <= i < len(self.c) else 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatPoly):
            other = RatPoly.const(other)
        return self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self) -> str:
        return f"RatPoly({[str(v) for v in self.c]})"

    def __add__(self, other) -> "RatPoly":
        other = _lift(other)
        n = max(len(self.c), len(other.c))
        return RatPoly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "RatPoly":
        return RatPoly(-v for v in self.c)

    def __sub__(self, other) -> "RatPoly":
        return self + (-_lift(other))

    def __rsub__(self, other) -> "RatPoly":
        return _lift(other) - self

    def __mul__(self, other) -> "RatPoly":
        other = _lift(other)
        if not self.c or not other.c:
            return RatPoly()
        out = [0] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            if a == 0:
                continue
            for j, b in enumerate(other.c):
                out[i + j] += a * b
        return RatPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "RatPoly":
        if e < 0:
            raise ValueError("negative power")
        result, base = RatPoly.const(1), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def shift(self, k: int) -> "RatPoly":
        """Multiply by x^k."""
        return RatPoly([0] * k + list(self.c)) if self.c else RatPoly()

    def scale(self, v) -> "RatPoly":
        return RatPoly(a * v for a in self.c)

    def deriv(self) -> "RatPoly":
        return RatPoly(i * v for i, v in enumerate(self.c) if i)

    def divmod(self, other: "RatPoly") -> tuple["RatPoly", "RatPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        r = [Fraction(v) for v in self.c]
        dq = len(r) - len(other.c) + 1
        if dq <= 0:
            return RatPoly(), RatPoly(r)
        q = [Fraction(0)] * dq
        lead = Fraction(other.c[-1])
        for i in range(dq - 1, -1, -1):
            t = r[i + len(other.c) - 1] / lead
            q[i] = t
            if t:
                for j, b in enumerate(other.c):
                    r[i + j] -= t * b
        return RatPoly(q), RatPoly(r[: len(other.c) - 1])

    def exact_div(self, other: "RatPoly") -> "RatPoly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise NonDivisible(f"remainder {r} is not zero")
        return q

    def __call__(self, x):
        acc = 0
        for v in reversed(self.c):
            acc = acc * x + v
        return acc

    def monic(self) -> "RatPoly":
        return self.scale(Fraction(1) / Fraction(self.c[-1])) if self.c else self

    def gcd(self, other: "RatPoly") -> "RatPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic()

    def coprime_to(self, other: "RatPoly", prime: int = (1 << 61) - 1) -> bool:
        """True when gcd(self, other) is constant.

        A trivial gcd modulo a prime that keeps both degrees implies a trivial gcd over Q,
        so the exact Euclid (slow, coefficient growth) only runs when the modular test is inconclusive.
        """
        a, b = _mod_prime(self, prime), _mod_prime(other, prime)
        if a is not None and b is not None:
            while b:
                a, b = b, _polymod_p(a, b, prime)
            if len(a) == 1:
                return True
        return self.gcd(other).degree == 0

    def mth_root(self, m: int, r0) -> "RatPoly":
        """The polynomial P with P^m = self and P(0) = r0 (NotAPerfectPower otherwise)."""
        if not self.c or self.c[0] == 0:
            raise NotAPerfectPower("constant term must be nonzero")
        if Fraction(r0) ** m != self.c[0]:
            raise NotAPerfectPower(f"{r0}^{m} != constant term {self.c[0]}")
        if self.degree % m:
            raise NotAPerfectPower(f"degree {self.degree} is not a multiple of {m}")
        d = self.degree // m
        alpha = Fraction(1, m)
        r = [Fraction(v) for v in self.c]
        p = [Fraction(r0)]
        # power-series recurrence for r(x)^alpha
        for n in range(1, d + 1):
            s = sum(((alpha + 1) * j - n) * r[j] * p[n - j] for j in range(1, min(n, len(r) - 1) + 1))
            p.append(s / (n * r[0]))
        P = RatPoly(p)
        if P ** m != self:
            raise NotAPerfectPower("series root does not terminate to an exact m-th root")
        return P

    def to_json(self) -> list[list[str]]:
        return [[str(Fraction(v).numerator), str(Fraction(v).denominator)] for v in self.c]


def _mod_prime(p: RatPoly, prime: int) -> list[int] | None:
    den = 1
    for v in p.c:
        den = den * Fraction(v).denominator // math.gcd(den, Fraction(v).denominator)
    out = [int(Fraction(v) * den) % prime for v in p.c]
    if not out or out[-1] == 0:
        return None
    return out


def _polymod_p(a: list[int], b: list[int], prime: int) -> list[int]:
    a = list(a)
    inv = pow(b[-1], prime - 2, prime)
    while len(a) >= len(b):
        t = a[-1] * inv % prime
        off = len(a) - len(b)
        for j, v in enumerate(b):
            a[off + j] = (a[off + j] - t * v) % prime
        while a and a[-1] == 0:
            a.pop()
    return a


def _lift(v) -> RatPoly:
    return v if isinstance(v, RatPoly) else RatPoly.const(v)


class SqrtPoly:
    """E(x) + sqrt(x) O(x)."""

    __slots__ = ("even", "odd")

    def __init__(self, even: RatPoly | Sequence = (), odd: RatPoly | Sequence = ()):
        self.even = even if isinstance(even, RatPoly) else RatPoly(even)
        self.odd = odd if isinstance(odd, RatPoly) else RatPoly(odd)

    @classmethod
    def from_t(cls, coeffs: Sequence) -> "SqrtPoly":
        """From ascending coefficients in t = sqrt(x)."""
        return cls(RatPoly(coeffs[0::2]), RatPoly(coeffs[1::2]))

    def t_coeffs(self) -> list:
        n = max(2 * len(self.even.c) - 1, 2 * len(self.odd.c))
        out = [Fraction(0)] * max(n, 0)
        for i, v in enumerate(self.even.c):
            out[2 * i] = v
        for i, v in enumerate(self.odd.c):
            out[2 * i + 1] = v
        while out and out[-1] == 0:
            out.pop()
        return out

    @property
    def degree_t(self) -> float | int:
        return max(2 * self.even.degree, 2 * self.odd.degree + 1)

    def __eq__(self, other) -> bool:
        return isinstance(other, SqrtPoly) and self.even == other.even and self.odd == other.odd

    def __repr__(self) -> str:
        return f"SqrtPoly(even={self.even!r}, odd={self.odd!r})"

    def __add__(self, other: "SqrtPoly") -> "SqrtPoly":
        return SqrtPoly(self.even + other.even, self.odd + other.odd)

    def __sub__(self, other: "SqrtPoly") -> "SqrtPoly":
        return SqrtPoly(self.even - other.even, self.odd - other.odd)

    def __mul__(self, other) -> "SqrtPoly":
        if not isinstance(other, SqrtPoly):
            return SqrtPoly(self.even * other, self.odd * other)
        e = self.even * other.even + (self.odd * other.odd).shift(1)
        o = self.even * other.odd + self.odd * other.even
        return SqrtPoly(e, o)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "SqrtPoly":
        result, base = SqrtPoly([1]), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conj(self) -> "SqrtPoly":
        return SqrtPoly(self.even, -self.odd)

    def scale(self, v) -> "SqrtPoly":
        return SqrtPoly(self.even.scale(v), self.odd.scale(v))

    def norm(self) -> RatPoly:
        """self * conj(self) = E^2 - x O^2."""
        return self.even * self.even - (self.odd * self.odd).shift(1)

    def __call__(self, t):
        """Evaluate at an explicit t = sqrt(x)."""
        return self.even(t * t) + t * self.odd(t * t)


# -- degree-n dihedral transformation ---------------------------------------------

def theta_pair(n: int) -> tuple[RatPoly, RatPoly]:
    if not isinstance(n, int) or n < 1:
        raise DomainError("theta_pair needs a positive integer n")
    t1 = RatPoly(binomial(n, 2 * j) for j in range(n // 2 + 1))
    t2 = RatPoly(binomial(n, 2 * j + 1) for j in range((n - 1) // 2 + 1))
    return t1, t2


def verify_theta(n: int) -> bool:
    """(1-t)^n = theta1(t^2) - t theta2(t^2)  and  (1-x)^n = theta1^2 - x theta2^2."""
    t1, t2 = theta_pair(n)
    lhs = SqrtPoly([1], [-1]) ** n
    if lhs != SqrtPoly(t1, -t2):
        return False
    return RatPoly([1, -1]) ** n == t1 * t1 - (t2 * t2).shift(1)


def chebyshev(n: int, x) -> tuple:
    """(T_n(x), U_{n-1}(x)) from the three-term recurrences."""
    T0, T1 = 1, x
    U0, U1 = 1, 2 * x
    if n == 0:
        return T0, 0
    for _ in range(n - 1):
        T0, T1 = T1, 2 * x * T1 - T0
        U0, U1 = U1, 2 * x * U1 - U0
    return T1, U0


def chebyshev_relation(n: int, x) -> bool:
    """T_n(x) = x^n theta1((x^2-1)/x^2) and U_{n-1}(x) = x^{n-1} theta2((x^2-1)/x^2)."""
    if x == 0:
        raise DomainError("chebyshev_relation needs x != 0")
    x = Fraction(x)
    t1, t2 = theta_pair(n)
    y = (x * x - 1) / (x * x)
    T, U = chebyshev(n, x)
    return T == x ** n * t1(y) and U == x ** (n - 1) * t2(y)


# -- Klein coverings -------------------------------------------------------------------

class GSource(enum.Enum):
    F3 = "F3Normalized"
    F2 = "F2Normalized"


def _check_knm(k: int, l: int, n: int, m: int) -> None:
    for name, v in (("k", k), ("l", l)):
        if not isinstance(v, int) or v < 0:
            raise DomainError(f"{name} must be a non-negative integer, got {v!r}")
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    if not isinstance(m, int) or m < 2:
        raise DomainError(f"m must be an integer >= 2, got {m!r}")
    if math.gcd(n, m) != 1:
        raise GcdViolation(f"gcd(n, m) = gcd({n}, {m}) = {math.gcd(n, m)} != 1")


def _t_poly(coeffs: dict[int, object]) -> list:
    d = max(coeffs) if coeffs else -1
    return [coeffs.get(i, 0) for i in range(d + 1)]


def _binom_row(e: int) -> list[int]:
    return [math.comb(e, i) for i in range(e + 1)]


def g_coefficients(k: int, l: int, r, source: GSource | str = GSource.F3) -> list:
    """Ascending t = sqrt(x) coefficients of the un-normalized G for ratio r = n/m.

    F3: t^k F3(k+1, l+1; -k, -l; 1+r | (t+1)/(2t), (1+t)/2)
    F2: (1+t)^{k+l} F2(-r-k-l; -k, -l; -2k, -2l | 2t/(1+t), 2/(1+t))
    Arithmetic is generic in r, so a symbolic r (e.g. from sympy) also works.
    """
    source = GSource(source)
    out: dict[int, object] = {}
    if source is GSource.F3:
        c = 1 + r
        for i in range(k + 1):
            for j in range(l + 1):
                w = (pochhammer(Fraction(k + 1), i) * pochhammer(Fraction(l + 1), j)
                     * pochhammer(Fraction(-k), i) * pochhammer(Fraction(-l), j)
                     / (math.factorial(i) * math.factorial(j) * Fraction(2) ** (i + j)))
                w = w / pochhammer(c, i + j)
                # t^{k-i} (1+t)^{i+j}
                for s, b in enumerate(_binom_row(i + j)):
                    out[k - i + s] = out.get(k - i + s, 0) + w * b
    else:
        a = -r - k - l
        for i in range(k + 1):
            for j in range(l + 1):
                w = (pochhammer(Fraction(-k), i) * pochhammer(Fraction(-l), j)
                     / (pochhammer(Fraction(-2 * k), i) * pochhammer(Fraction(-2 * l), j)
                        * math.factorial(i) * math.factorial(j)) * Fraction(2) ** (i + j))
                w = w * pochhammer(a, i + j)
                # (2t)^i 2^j (1+t)^{k+l-i-j}: the 2^{i+j} is already in w
                for s, b in enumerate(_binom_row(k + l - i - j)):
                    out[i + s] = out.get(i + s, 0) + w * b
    return _t_poly(out)


def klein_g_raw(k: int, l: int, n: int, m: int, source: GSource | str = GSource.F3) -> SqrtPoly:
    _check_knm(k, l, n, m)
    return SqrtPoly.from_t(g_coefficients(k, l, Fraction(n, m), source))


def klein_g(k: int, l: int, n: int, m: int, source: GSource | str = GSource.F3) -> SqrtPoly:
    """G normalized to G(0) = 1 (the form of the explicit G_{k,l} list)."""
    g = klein_g_raw(k, l, n, m, source)
    g0 = g.even[0]
    if g0 == 0:
        raise StructureViolation("G(0) vanishes")
    return g.scale(Fraction(1) / g0)


def g_proportionality(k: int, l: int, n: int, m: int) -> Fraction:
    """G_F2 / G_F3 implied by reversing the F2 sum into an F3 sum."""
    r = Fraction(n, m)
    return (Fraction(2) ** (k + l) * math.factorial(k) * math.factorial(l) * pochhammer(-r - k - l, k + l)
            / (math.factorial(2 * k) * math.factorial(2 * l)))


def theorem_constant(k: int, l: int, n: int, m: int, source: GSource | str = GSource.F3) -> Fraction:
    """C in Theta1^2 - x^{2k+1} Theta2^2 = C (1-x)^n Psi^m for the un-normalized G.

    The printed constants carry an extra factor 4^n; at k = l = 0 (G = 1, Psi = 1)
    the identity reduces to theta1^2 - x theta2^2 = (1-x)^n, which forces C = 1.
    """
    source = GSource(source)
    r = Fraction(n, m)
    if source is GSource.F3:
        return Fraction(4) ** (m * (k + l)) / pochhammer(1 + r, k + l) ** (2 * m)
    h = Fraction(1, 2)
    return 1 / (pochhammer(h, k) ** (2 * m) * pochhammer(h, l) ** (2 * m))


def printed_constant(k: int, l: int, n: int, m: int, source: GSource | str = GSource.F3) -> Fraction:
    """The constants exactly as displayed with the identity (kept for comparison)."""
    return Fraction(4) ** n * theorem_constant(k, l, n, m, source)


def psi_explicit(k: int, l: int, n: int, m: int, form: str = "F122") -> RatPoly:
    """Psi(x) from one of its two terminating double-sum expressions."""
    r = Fraction(n, m)
    h = Fraction(1, 2)
    P_lo = pochhammer(Fraction(1 - k - l, 2) - r / 2, l)
    P_hi = pochhammer(Fraction(1 + k - l, 2) - r / 2, l)
    X = RatPoly.x()
    one_minus = RatPoly([1, -1])
    total = RatPoly()
    if form == "F122":
        pre = ((-1) ** l * pochhammer(1 + r, k + l) * pochhammer(1 - r, k + l) * P_lo
               / (Fraction(4) ** (k + l) * P_hi))
        for i in range(k + 1):
            for j in range(l + 1):
                w = (pochhammer(h, i + j) * pochhammer(Fraction(k + 1), i) * pochhammer(Fraction(l + 1), j)
                     * pochhammer(Fraction(-k), i) * pochhammer(Fraction(-l), j)
                     / (pochhammer(1 + r, i + j) * pochhammer(1 - r, i + j)
                        * math.factorial(i) * math.factorial(j)))
                # x^k (1 - 1/x)^i (1-x)^j = x^{k-i} (x-1)^i (1-x)^j
                term = (X ** (k - i)) * (RatPoly([-1, 1]) ** i) * (one_minus ** j)
                total = total + term.scale(w)
        return total.scale(pre)
    if form == "F211":
        pre = pochhammer(h, k + l) * pochhammer(h, k) * pochhammer(h, l) * P_lo / P_hi
        A, B = r - k - l, -r - k - l
        for i in range(k + 1):
            for j in range(l + 1):
                w = (pochhammer(A, i + j) * pochhammer(B, i + j) * pochhammer(Fraction(-k), i)
                     * pochhammer(Fraction(-l), j)
                     / (pochhammer(h - k - l, i + j) * pochhammer(Fraction(-2 * k), i)
                        * pochhammer(Fraction(-2 * l), j) * math.factorial(i) * math.factorial(j)))
                # (1-x)^{k+l} (x/(x-1))^i (1/(1-x))^j = (-1)^i x^i (1-x)^{k+l-i-j}
                term = (X ** i) * (one_minus ** (k + l - i - j))
                total = total + term.scale(w * (-1) ** i)
        return total.scale(pre)
    raise DomainError(f"unknown Psi form {form!r}")


@dataclass(frozen=True)
class KleinCovering:
    k: int
    l: int
    n: int
    m: int
    g: SqrtPoly
    theta1: RatPoly
    theta2: RatPoly
    psi: RatPoly | None
    c_const: Fraction | None
    degree: int
    source: GSource = GSource.F3
    normalized: bool = True

    def phi(self, x):
        """x^{2k+1} Theta2(x)^2 / Theta1(x)^2."""
        return x ** (2 * self.k + 1) * self.theta2(x) ** 2 / self.theta1(x) ** 2

    def phi_parts(self) -> tuple[RatPoly, RatPoly]:
        num = (self.theta2 * self.theta2).shift(2 * self.k + 1)
        return num, self.theta1 * self.theta1

    def phi_degree(self) -> int:
        num, den = self.phi_parts()
        if num.coprime_to(den):
            return int(max(num.degree, den.degree))
        g = num.gcd(den)
        return int(max(num.exact_div(g).degree, den.exact_div(g).degree))

    def to_dict(self) -> dict:
        return {
            "k": self.k, "l": self.l, "n": self.n, "m": self.m,
            "theta1": self.theta1.to_json(),
            "theta2": self.theta2.to_json(),
            "psi": self.psi.to_json() if self.psi is not None else None,
            "c": ([str(self.c_const.numerator), str(self.c_const.denominator)]
                  if self.c_const is not None else None),
            "degree": self.degree,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _structure_checks(coeffs: list, k: int, l: int, N: int) -> None:
    for p in range(1, 2 * k, 2):
        if p < len(coeffs) and coeffs[p] != 0:
            raise StructureViolation(f"coefficient of x^{p}/2 is {coeffs[p]}, expected 0")
    for j in range(l):
        p = N - 1 - 2 * j
        if 0 <= p < len(coeffs) and coeffs[p] != 0:
            raise StructureViolation(f"coefficient of x^{p}/2 near infinity is {coeffs[p]}, expected 0")


def klein_covering(k: int, l: int, n: int, m: int, source: GSource | str = GSource.F3,
                   normalized: bool = True, with_psi: bool = True) -> KleinCovering:
    """Theta1, Theta2 from (1+sqrt x)^n G^m, with the structural vanishing checks."""
    source = GSource(source)
    g = klein_g(k, l, n, m, source) if normalized else klein_g_raw(k, l, n, m, source)
    lhs = SqrtPoly([1], [1]) ** n * g ** m
    N = n + m * (k + l)
    coeffs = lhs.t_coeffs()
    if len(coeffs) - 1 > N:
        raise StructureViolation(f"expansion degree {len(coeffs) - 1} exceeds {N}")
    _structure_checks(coeffs, k, l, N)
    theta1 = lhs.even
    odd = lhs.odd
    if any(odd[i] != 0 for i in range(k)):
        raise StructureViolation("odd part is not divisible by x^k")
    theta2 = RatPoly(odd.c[k:])
    if theta1[0] == 0:
        raise StructureViolation("Theta1(0) vanishes")
    cov = KleinCovering(k, l, n, m, g, theta1, theta2, None, None, N, source, normalized)
    if with_psi:
        psi, c = klein_psi(cov)
        cov = KleinCovering(k, l, n, m, g, theta1, theta2, psi, c, N, source, normalized)
    return cov


def insrel_lhs(cov: KleinCovering) -> RatPoly:
    return cov.theta1 * cov.theta1 - (cov.theta2 * cov.theta2).shift(2 * cov.k + 1)


def klein_psi(cov: KleinCovering) -> tuple[RatPoly, Fraction]:
    """(Psi, C) with Theta1^2 - x^{2k+1} Theta2^2 = C (1-x)^n Psi^m.

    Psi is extracted as an exact m-th root of the quotient by (1-x)^n, with the
    normalization of the explicit double-sum formula for Psi.
    """
    k, l, n, m = cov.k, cov.l, cov.n, cov.m
    Q = insrel_lhs(cov).exact_div(RatPoly([1, -1]) ** n)
    C = theorem_constant(k, l, n, m, cov.source)
    if cov.normalized:
        g0 = klein_g_raw(k, l, n, m, cov.source).even[0]
        C = C / g0 ** (2 * m)
    psi0 = psi_explicit(k, l, n, m)[0]
    psi = Q.scale(1 / C).mth_root(m, psi0)
    return psi, C


def insrel_residual(cov: KleinCovering) -> RatPoly:
    """Theta1^2 - x^{2k+1}Theta2^2 - C (1-x)^n Psi^m (zero polynomial when the identity holds)."""
    if cov.psi is None or cov.c_const is None:
        raise DomainError("covering was built without Psi")
    return insrel_lhs(cov) - (RatPoly([1, -1]) ** cov.n * cov.psi ** cov.m).scale(cov.c_const)


# -- semi-invariants -------------------------------------------------------------------

def semi_invariants(cov: KleinCovering, z) -> tuple[complex, complex]:
    """(W1, W2): W1 from its F2 form with a = -n/m - k - l; W2 its sqrt(x) -> -sqrt(x) conjugate."""
    zc = complex(z)
    if not (zc.imag == 0 and 0 < zc.real < 1):
        raise DomainError(f"z={z} must lie in (0, 1)")
    k, l, n, m = cov.k, cov.l, cov.n, cov.m
    r = n / m
    a = -r - k - l
    h = Fraction(1, 2)
    pre = float(pochhammer(h, k) * pochhammer(h, l) / pochhammer(Fraction(1 - k - l, 2) - Fraction(n, 2 * m), l))

    def w(t):
        f = appell_f2_rect(a, k, l, 2 * t / (1 + t), 2 / (1 + t)).value
        return pre * cmath.exp((r + k + l) * cmath.log(1 + t)) * f

    s = cmath.sqrt(zc)
    return w(s), w(-s)


def remark_constant(k: int, l: int, n: int, m: int) -> Fraction:
    """C for the W-normalized Theta polynomials: 4 / ((1-k-l)/2 - n/(2m))_l^{2m}."""
    return 4 / pochhammer(Fraction(1 - k - l, 2) - Fraction(n, 2 * m), l) ** (2 * m)


# -- exponent-difference bookkeeping for pull-backs ----------------------------------------

def squarefree_profile(p: RatPoly) -> dict[int, int]:
    """Yun decomposition: {multiplicity: number of distinct complex roots}."""
    if p.degree < 1:
        return {}
    dp = p.deriv()
    c = p.gcd(dp)
    w, y = p.exact_div(c), dp.exact_div(c)
    zz = y - w.deriv()
    out: dict[int, int] = {}
    i = 1
    while w.degree >= 1:
        g = w.gcd(zz)
        if g.degree >= 1:
            out[i] = out.get(i, 0) + int(g.degree)
        w = w.exact_div(g)
        y = zz.exact_div(g)
        zz = y - w.deriv()
        i += 1
    return out


def pullback_exponents(num: RatPoly, den: RatPoly, base: tuple) -> list[Fraction]:
    """Exponent differences of the equation pulled back along phi = num/den.

    base = (d0, d1, d_inf) for the singular points 0, 1, inf downstairs.  A point
    over c with ramification e gets e*d_c; points with difference 1 are dropped.
    """
    if num.gcd(den).degree >= 1:
        raise DomainError("num and den must be coprime")
    d0, d1, dinf = (Fraction(v) for v in base)
    diffs: list[Fraction] = []
    one = den - num
    for poly, d in ((num, d0), (den, dinf), (one, d1)):
        for e, cnt in squarefree_profile(poly).items():
            diffs += [e * d] * cnt
    # the point x = infinity
    dn, dd, d1deg = num.degree, den.degree, one.degree
    top = max(dn, dd)
    if dn > dd:
        diffs.append((dn - dd) * dinf)
    elif dd > dn:
        diffs.append((dd - dn) * d0)
    elif d1deg < top:
        diffs.append((top - d1deg) * d1)
    return sorted(v for v in diffs if v != 1)


def compose_rational(num: RatPoly, den: RatPoly, inner_num: RatPoly, inner_den: RatPoly) -> tuple[RatPoly, RatPoly]:
    """(num/den) o (inner_num/inner_den), cleared to a coprime pair."""
    d = int(max(num.degree, den.degree))
    N = sum((inner_num ** i * inner_den ** (d - i)).scale(num[i]) for i in range(d + 1))
    D = sum((inner_num ** i * inner_den ** (d - i)).scale(den[i]) for i in range(d + 1))
    N, D = _lift(N), _lift(D)
    g = N.gcd(D)
    if g.degree >= 1:
        N, D = N.exact_div(g), D.exact_div(g)
    return N, D


def dihedral_covering_map(n: int) -> tuple[RatPoly, RatPoly]:
    """phi = x theta2(x)^2 / theta1(x)^2 of the degree-n transformation."""
    t1, t2 = theta_pair(n)
    return (t2 * t2).shift(1), t1 * t1
