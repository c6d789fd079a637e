"""Dihedral Gauss hypergeometric functions with parameters

    A = a/2,  B = (a+1)/2 + l,  C = 1/2 - k,

i.e. local exponent differences (k+1/2, l+1/2, a+k+l).  Local solutions at
z = 0, 1, oo are evaluated through terminating Appell F2/F3 rectangles.

The closed forms cancel heavily near z = 0 (the odd solution is a difference
of two O(1) sums that agree to order z^{k+1/2}), so floating inputs are
evaluated internally with mpmath at a working precision chosen from k, l and
|z|, then rounded to a double.  If a is an integer and sqrt(z) is rational the
whole computation stays in exact rationals.
"""
from __future__ import annotations

import cmath
import enum
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import mpmath

from .hypseries import (
    EPS,
    HyperValue,
    NonConvergent,
    PoleAtC,
    TRUNCATED,
    Truncated,
    exact_value,
    f2_dagger_raw,
    f2_rect_raw,
    f3_rect_raw,
    gauss_2f1,
    pfq_raw,
)
from .numcore import (
    DomainError,
    as_int_if_integral,
    digamma_exact,
    is_exact,
    nonpositive_int,
    pochhammer,
    sqrt_principal,
)


class DegenerateFrontFactor(DomainError):
    pass


class NotLogCase(DomainError):
    pass


class RegimeMismatch(DomainError):
    pass


@dataclass(frozen=True)
class DihedralParams:
    """(k, l, a).  Evaluators need non-negative integer k, l; orbit images may not."""

    k: Any
    l: Any
    a: Any

    @property
    def A(self):
        return self.a / 2 if not is_exact(self.a) else Fraction(self.a) / 2

    @property
    def B(self):
        return (self.a + 1) / 2 + self.l if not is_exact(self.a) else (Fraction(self.a) + 1) / 2 + self.l

    @property
    def C(self):
        return Fraction(1, 2) - self.k

    @property
    def p(self):
        return self.a + self.k + self.l

    @property
    def exponent_differences(self):
        return (self.k + Fraction(1, 2), self.l + Fraction(1, 2), self.p)

    def swapped(self) -> "DihedralParams":
        return DihedralParams(self.l, self.k, self.a)

    def require_integral(self) -> tuple[int, int]:
        k, l = as_int_if_integral(self.k), as_int_if_integral(self.l)
        if k is None or l is None or k < 0 or l < 0:
            raise DomainError(f"k, l must be non-negative integers, got k={self.k!r}, l={self.l!r}")
        return k, l


class Parity(enum.Enum):
    EVEN = "even"
    ODD = "odd"


class SolutionKind(enum.Enum):
    AT0_EVEN = "at0-even"
    AT0_ODD = "at0-odd"
    AT1_PRINCIPAL = "at1"
    AT1_SECONDARY = "at1-sec"
    AT_INF_FIRST = "inf-1"
    AT_INF_SECOND = "inf-2"


# -- arithmetic backends ---------------------------------------------------------

@dataclass
class _Backend:
    """Number field for one evaluation: exact Fractions or mpmath at `dps`."""

    exact: bool
    dps: int = 0

    @property
    def one(self):
        return Fraction(1) if self.exact else mpmath.mpf(1)

    def num(self, x):
        if self.exact:
            return Fraction(x)
        if isinstance(x, Fraction):
            return mpmath.mpf(x.numerator) / x.denominator
        if isinstance(x, complex):
            return mpmath.mpc(x.real, x.imag) if x.imag != 0 else mpmath.mpf(x.real)
        return mpmath.mpf(x)

    def power(self, base, expo):
        n = as_int_if_integral(expo)
        if self.exact:
            return base ** n
        if n is not None:
            return base ** n
        return mpmath.power(base, expo)

    def sqrt(self, z):
        if self.exact:
            return sqrt_principal(z)
        return mpmath.sqrt(z)

    def log(self, x):
        return mpmath.log(x)

    def finish(self, value, err_mag) -> HyperValue:
        if self.exact:
            return exact_value(Fraction(value))
        v = complex(value)
        err = float(err_mag) * 10.0 ** (3 - self.dps) + EPS * abs(v)
        return HyperValue(v, err, False)


def _working_dps(k: int, l: int, z) -> int:
    zc = complex(z)
    s = cmath.sqrt(zc)
    small = min(abs(zc), abs(1 - s), 1.0)
    if small == 0:
        small = 1e-300
    digits = 30 + 2 * (k + l) + math.ceil((k + l + 1) * max(0.0, -math.log10(small)))
    return min(digits, 4000)


def _exact_sqrt_of(z):
    if not is_exact(z):
        return None
    s = sqrt_principal(z)
    return s if isinstance(s, Fraction) else None


def _backend_for(a, z, k: int, l: int) -> _Backend:
    if is_exact(a) and as_int_if_integral(a) is not None and _exact_sqrt_of(z) is not None:
        return _Backend(True)
    return _Backend(False, _working_dps(k, l, z))


def _near_integer_warning(a) -> None:
    if is_exact(a):
        return
    c = complex(a)
    if c.imag == 0 and 0 < abs(c.real - round(c.real)) < 1e-6:
        warnings.warn(f"a={a} is within 1e-6 of an integer; Gamma-based cross-checks lose accuracy",
                      RuntimeWarning, stacklevel=3)


def _check_open_domain(z, allow_zero: bool = True) -> None:
    c = complex(z)
    if not (math.isfinite(c.real) and math.isfinite(c.imag)):
        raise DomainError("z must be finite")
    if c.imag == 0 and (c.real >= 1 or c.real < 0 or (c.real == 0 and not allow_zero)):
        raise DomainError(f"z={z} must lie off (-inf, 0] and [1, inf) (principal sqrt, 1 +- sqrt z nonzero)")


# -- elementary cases ------------------------------------------------------------------

class Basic(enum.Enum):
    D1 = 1  # 2F1(a/2, (a+1)/2; a+1; z)
    D2 = 2  # 2F1(a/2, (a+1)/2; 1/2; z)
    D3 = 3  # 2F1((a+1)/2, (a+2)/2; 3/2; z)
    D4 = 4  # 2F1(1/2, 1; 3/2; z)


def eval_basic(kind: Basic | str | int, a, z) -> HyperValue:
    """Elementary closed forms with exponent differences (1/2, 1/2, a)."""
    if not isinstance(kind, Basic):
        kind = Basic[kind] if isinstance(kind, str) else Basic(kind)
    c = complex(z)
    if c.imag == 0 and c.real >= 1:
        raise DomainError(f"z={z} lies on the cut [1, inf)")
    if kind is Basic.D1:
        w = _exact_sqrt_of(1 - z) if is_exact(z) else None
        n = as_int_if_integral(a) if is_exact(a) else None
        if w is not None and n is not None:
            return exact_value(((1 + w) / 2) ** (-n))
        be = _Backend(False, 30)
        with mpmath.workdps(be.dps):
            w = mpmath.sqrt(1 - be.num(z))
            v = be.power((1 + w) / 2, -be.num(a))
            return be.finish(v, abs(v))
    if kind is Basic.D3 and a == 0:
        raise DomainError("the D3 closed form needs a != 0")
    if c == 0:
        return exact_value(Fraction(1)) if is_exact(z) else HyperValue(1 + 0j, 0.0, False)
    s = _exact_sqrt_of(z)
    n = as_int_if_integral(a) if is_exact(a) else None
    if kind in (Basic.D2, Basic.D3) and s is not None and n is not None:
        p, m = (1 - s) ** (-n), (1 + s) ** (-n)
        return exact_value((p + m) / 2 if kind is Basic.D2 else (p - m) / (2 * n * s))
    be = _Backend(False, 30 + math.ceil(max(0.0, -math.log10(abs(c)))))
    with mpmath.workdps(be.dps):
        zz = be.num(z)
        s = mpmath.sqrt(zz)
        if kind is Basic.D4:
            v = (mpmath.log(1 + s) - mpmath.log(1 - s)) / (2 * s)
            return be.finish(v, abs(v))
        aa = be.num(a)
        p, m = mpmath.power(1 - s, -aa), mpmath.power(1 + s, -aa)
        if kind is Basic.D2:
            return be.finish((p + m) / 2, abs(p) + abs(m))
        v = (p - m) / (2 * aa * s)
        return be.finish(v, (abs(p) + abs(m)) / abs(2 * aa * s))


# -- Theorem-level closed forms ----------------------------------------------------------

def _pair_terms(be: _Backend, a, k: int, l: int, s):
    """(1+s)^{-a} F2(+) and (1-s)^{-a} F2(-) plus a magnitude bound."""
    one = be.one
    fp, mp_ = f2_rect_raw(a, k, l, 2 * s / (1 + s), 2 * one / (1 + s), one)
    fm, mm = f2_rect_raw(a, k, l, 2 * s / (s - 1), 2 * one / (1 - s), one)
    P, M = be.power(1 + s, -a), be.power(1 - s, -a)
    return P * fp, M * fm, abs(P) * mp_ + abs(M) * mm


def dihedral_pair(p: DihedralParams, z) -> tuple[HyperValue, HyperValue]:
    """(S+, S-) with S+- = [(1+sqrt z)^{-a} F2(+) +- (1-sqrt z)^{-a} F2(-)] / 2."""
    k, l = p.require_integral()
    _check_open_domain(z)
    be = _backend_for(p.a, z, k, l)
    with mpmath.workdps(be.dps or 15):
        a = be.num(p.a)
        s = be.sqrt(be.num(z))
        P, M, mag = _pair_terms(be, a, k, l, s)
        return be.finish((P + M) / 2, mag), be.finish((P - M) / 2, mag)


def _even_front(be, a, l):
    return pochhammer((a + 1) / 2, l) / pochhammer(be.num(Fraction(1, 2)), l)


def _odd_front(be, a, k, l):
    h = be.num(Fraction(1, 2))
    num = pochhammer((a + 1) / 2, k) * pochhammer(a / 2, k + l + 1)
    den = pochhammer(h, k) * pochhammer(h, k + 1) * pochhammer(h, l)
    return (-1) ** k * num / den


def _front_is_zero(x) -> bool:
    return x == 0


def hpg_at0(p: DihedralParams, z, parity: Parity | str = Parity.EVEN) -> HyperValue:
    """Even: 2F1(a/2, (a+1)/2+l; 1/2-k; z).  Odd: 2F1((a+1)/2+k, a/2+k+l+1; 3/2+k; z)."""
    parity = Parity(parity)
    k, l = p.require_integral()
    _check_open_domain(z)
    _near_integer_warning(p.a)
    be = _backend_for(p.a, z, k, l)
    with mpmath.workdps(be.dps or 15):
        a = be.num(p.a)
        front = _even_front(be, a, l) if parity is Parity.EVEN else _odd_front(be, a, k, l)
        if _front_is_zero(front):
            raise DegenerateFrontFactor(
                f"front factor vanishes at a={p.a} (k={k}, l={l}); use the logarithmic/degenerate evaluators")
        if complex(z) == 0:
            return be.finish(be.one, 0) if be.exact else HyperValue(1 + 0j, 0.0, False)
        s = be.sqrt(be.num(z))
        P, M, mag = _pair_terms(be, a, k, l, s)
        if parity is Parity.EVEN:
            return be.finish((P + M) / 2 / front, mag / abs(front))
        scale = front * s ** (2 * k + 1)
        return be.finish((M - P) / 2 / scale, mag / abs(scale))


def _at1_principal(be: _Backend, a, k: int, l: int, s):
    c = a + k + l + 1
    if nonpositive_int(c) is not None:
        raise PoleAtC(f"a+k+l+1 = {c} is a non-positive integer")
    one = be.one
    f3, mag = f3_rect_raw(k + 1, l + 1, k, l, c, (s - 1) / (2 * s), (one - s) / 2, one)
    pre = s ** k * be.power((1 + s) / 2, -(a + k + l))
    return pre * f3, abs(pre) * mag


def hpg_at1(p: DihedralParams, z, kind: SolutionKind | str = SolutionKind.AT1_PRINCIPAL) -> HyperValue:
    """Principal: 2F1(a/2, (a+1)/2+l; a+k+l+1; 1-z).
    Secondary: (1-z)^{-a-k-l} 2F1(-a/2-k-l, (1-a)/2-k; 1-a-k-l; 1-z)."""
    kind = SolutionKind(kind)
    if kind not in (SolutionKind.AT1_PRINCIPAL, SolutionKind.AT1_SECONDARY):
        raise DomainError(f"hpg_at1 handles at1/at1-sec, not {kind.value}")
    k, l = p.require_integral()
    c = complex(z)
    if c == 0 or (c.imag == 0 and c.real < 0):
        raise DomainError(f"z={z} must lie off (-inf, 0]")
    be = _backend_for(p.a, z, k, l)
    with mpmath.workdps(be.dps or 15):
        a = be.num(p.a)
        s = be.sqrt(be.num(z))
        if kind is SolutionKind.AT1_PRINCIPAL:
            v, mag = _at1_principal(be, a, k, l, s)
            return be.finish(v, mag)
        a2 = -a - 2 * k - 2 * l
        v, mag = _at1_principal(be, a2, k, l, s)
        if c == 1 and as_int_if_integral(p.a + k + l) is None:
            raise DomainError("the secondary solution is singular at z=1")
        pre = be.power(1 - be.num(z), -(a + k + l))
        return be.finish(pre * v, abs(pre) * mag)


def hpg_at_inf(p: DihedralParams, z, which: SolutionKind | str = SolutionKind.AT_INF_FIRST) -> HyperValue:
    """First: z^{-a/2} 2F1(a/2, (a+1)/2+k; 1/2-l; 1/z).
    Second: z^{-(a+1)/2-l} 2F1((a+1)/2+l, a/2+k+l+1; 3/2+l; 1/z)."""
    which = SolutionKind(which)
    if which not in (SolutionKind.AT_INF_FIRST, SolutionKind.AT_INF_SECOND):
        raise DomainError(f"hpg_at_inf handles inf-1/inf-2, not {which.value}")
    k, l = p.require_integral()
    c = complex(z)
    if c == 0:
        raise DomainError("z=0 is not in the neighbourhood of infinity")
    w = 1 / Fraction(z) if is_exact(z) else 1 / c
    if complex(w).imag == 0:
        w = Fraction(w) if is_exact(w) else float(complex(w).real)
    _check_open_domain(w)
    q = p.swapped()
    if which is SolutionKind.AT_INF_FIRST:
        inner = hpg_at0(q, w, Parity.EVEN)
        expo = -p.a / 2 if not is_exact(p.a) else -Fraction(p.a) / 2
    else:
        inner = hpg_at0(q, w, Parity.ODD)
        expo = -(p.a + 1) / 2 - l if not is_exact(p.a) else -(Fraction(p.a) + 1) / 2 - l
    n = as_int_if_integral(expo)
    if inner.exact and n is not None:
        return exact_value(inner.rational * Fraction(z) ** n)
    be = _Backend(False, 30)
    with mpmath.workdps(be.dps):
        pre = complex(mpmath.power(be.num(z), be.num(expo)))
    return HyperValue(inner.value * pre, inner.abs_err * abs(pre) + EPS * abs(inner.value * pre), False)


def evaluate(p: DihedralParams, z, kind: SolutionKind | str) -> HyperValue:
    """Dispatch on the six local solutions."""
    kind = SolutionKind(kind)
    if kind is SolutionKind.AT0_EVEN:
        return hpg_at0(p, z, Parity.EVEN)
    if kind is SolutionKind.AT0_ODD:
        return hpg_at0(p, z, Parity.ODD)
    if kind in (SolutionKind.AT1_PRINCIPAL, SolutionKind.AT1_SECONDARY):
        return hpg_at1(p, z, kind)
    return hpg_at_inf(p, z, kind)


def gauss_params(p: DihedralParams, kind: SolutionKind | str):
    """(A, B, C, argument-name) of the 2F1 behind each solution kind (for oracles)."""
    kind = SolutionKind(kind)
    a, k, l = p.a, p.k, p.l
    if is_exact(a):
        a = Fraction(a)
    h = Fraction(1, 2)
    if kind is SolutionKind.AT0_EVEN:
        return a / 2, (a + 1) / 2 + l, h - k, "z"
    if kind is SolutionKind.AT0_ODD:
        return (a + 1) / 2 + k, a / 2 + k + l + 1, h + 1 + k, "z"
    if kind is SolutionKind.AT1_PRINCIPAL:
        return a / 2, (a + 1) / 2 + l, a + k + l + 1, "1-z"
    if kind is SolutionKind.AT1_SECONDARY:
        return -a / 2 - k - l, (1 - a) / 2 - k, 1 - a - k - l, "1-z"
    if kind is SolutionKind.AT_INF_FIRST:
        return a / 2, (a + 1) / 2 + k, h - l, "1/z"
    return (a + 1) / 2 + l, a / 2 + k + l + 1, h + 1 + l, "1/z"


# -- Kummer orbit bookkeeping ---------------------------------------------------------------

class OrbitGenerator(enum.Enum):
    EXPONENTS_AT_0 = "exp0"
    EXPONENTS_AT_1 = "exp1"
    EXPONENTS_AT_INF = "expinf"
    INVERSION = "1/z"        # swaps z=0 and z=oo
    REFLECTION = "1-z"       # swaps z=0 and z=1
    RATIO = "z/(z-1)"        # swaps z=1 and z=oo


_ARGUMENT = {
    OrbitGenerator.EXPONENTS_AT_0: "z",
    OrbitGenerator.EXPONENTS_AT_1: "z",
    OrbitGenerator.EXPONENTS_AT_INF: "z",
    OrbitGenerator.INVERSION: "1/z",
    OrbitGenerator.REFLECTION: "1-z",
    OrbitGenerator.RATIO: "z/(z-1)",
}

_ARG_MAPS = {
    "z": lambda z: z,
    "1/z": lambda z: 1 / z,
    "1-z": lambda z: 1 - z,
    "z/(z-1)": lambda z: z / (z - 1),
}


@dataclass(frozen=True)
class Prefactor:
    """prod base(z)^exponent over bases 'z', '1-z', with the solution's new argument."""

    factors: tuple[tuple[str, Any], ...]
    argument: str = "z"

    def evaluate(self, z) -> complex:
        out = 1 + 0j
        with mpmath.workdps(30):
            for base, e in self.factors:
                b = z if base == "z" else 1 - z
                if isinstance(e, Fraction):
                    e = mpmath.mpf(e.numerator) / e.denominator
                out *= complex(mpmath.power(mpmath.mpmathify(complex(b)), e))
        return out

    def argument_at(self, z):
        return _ARG_MAPS[self.argument](z)

    def is_trivial(self) -> bool:
        return all(e == 0 for _, e in self.factors) and self.argument == "z"


def _half(x):
    return Fraction(x) / 2 if is_exact(x) else x / 2


def kummer_orbit_apply(p: DihedralParams, g: OrbitGenerator | str) -> tuple[DihedralParams, Prefactor]:
    """Parameter action of one exponent/singularity permutation and its prefactor.

    The prefactor exponents are evaluated at the input parameters.
    """
    g = OrbitGenerator(g)
    k, l, a = p.k, p.l, p.a
    h = Fraction(1, 2)
    if g is OrbitGenerator.EXPONENTS_AT_0:
        return DihedralParams(-k - 1, l, a + 2 * k + 1), Prefactor((("z", k + h),))
    if g is OrbitGenerator.EXPONENTS_AT_1:
        return DihedralParams(k, l, -a - 2 * k - 2 * l), Prefactor((("1-z", -a - k - l),))
    if g is OrbitGenerator.EXPONENTS_AT_INF:
        return DihedralParams(k, -l - 1, a + 2 * l + 1), Prefactor((("z", -l - h),))
    if g is OrbitGenerator.INVERSION:
        return DihedralParams(l, k, a), Prefactor((("z", -_half(a)),), "1/z")
    if g is OrbitGenerator.REFLECTION:
        return DihedralParams(-a - k - l - h, l, a), Prefactor((), "1-z")
    return DihedralParams(k, -a - k - l - h, a), Prefactor((("1-z", -_half(a)),), "z/(z-1)")


def orbit_solution(p: DihedralParams, g: OrbitGenerator | str):
    """The Kummer solution produced by g as a callable z -> value (mpmath 2F1).

    Used to check that each image solves the original equation.
    """
    q, pre = kummer_orbit_apply(p, g)
    A, B, C, _ = gauss_params(q, SolutionKind.AT0_EVEN)

    def f(z):
        w = pre.argument_at(z)
        return pre.evaluate(z) * complex(mpmath.hyp2f1(_mp(A), _mp(B), _mp(C), _mp(w)))
    return f


def _mp(x):
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpmathify(x)


# -- degeneracy classification ---------------------------------------------------------------

class Verdict(enum.Enum):
    LOGARITHMIC = "Logarithmic"
    CYCLIC_ORDER_2 = "CyclicOrder2"
    NON_DEGENERATE = "NonDegenerate"


@dataclass(frozen=True)
class DegeneracyVerdict:
    tag: Verdict
    reason: str

    def __eq__(self, other):
        if isinstance(other, Verdict):
            return self.tag is other
        if isinstance(other, DegeneracyVerdict):
            return self.tag is other.tag
        return NotImplemented

    def __hash__(self):
        return hash(self.tag)


def _nonneg(*xs):
    for x in xs:
        if not isinstance(x, int) or x < 0:
            raise DomainError(f"expected a non-negative integer, got {x!r}")


def classify_degenerate(k: int, l: int, m: int) -> DegeneracyVerdict:
    """Exponent differences (k+1/2, l+1/2, m): logarithmic solutions or Z/2 monodromy."""
    _nonneg(k, l, m)
    if (m + k + l) % 2 == 0:
        if m <= k + l:
            return DegeneracyVerdict(Verdict.LOGARITHMIC, "m+k+l even, m <= k+l")
        return DegeneracyVerdict(Verdict.CYCLIC_ORDER_2, "m+k+l even, m > k+l")
    if m < abs(k - l):
        return DegeneracyVerdict(Verdict.LOGARITHMIC, "m+k+l odd, m < |k-l|")
    return DegeneracyVerdict(Verdict.CYCLIC_ORDER_2, "m+k+l odd, m >= |k-l|")


def classify_integer_a(p: DihedralParams) -> DegeneracyVerdict:
    """Same decision in the (k, l, a=-m) parametrization."""
    k, l = p.require_integral()
    n = as_int_if_integral(p.a)
    if n is None:
        return DegeneracyVerdict(Verdict.NON_DEGENERATE, "a is not an integer")
    if n > 0:
        # the exponent difference a+k+l is still an integer; reduce to that form
        v = classify_degenerate(k, l, abs(n + k + l))
        return DegeneracyVerdict(v.tag, f"a={n} > 0: exponent difference {abs(n + k + l)}; {v.reason}")
    m = -n
    k, l = min(k, l), max(k, l)
    if m % 2 == 0:
        if m // 2 <= k + l:
            return DegeneracyVerdict(Verdict.LOGARITHMIC, "m even, m/2 <= k+l")
        return DegeneracyVerdict(Verdict.CYCLIC_ORDER_2, "m even, m/2 > k+l")
    if k < (m + 1) // 2 <= l:
        return DegeneracyVerdict(Verdict.LOGARITHMIC, "m odd, min(k,l) < (m+1)/2 <= max(k,l)")
    return DegeneracyVerdict(Verdict.CYCLIC_ORDER_2, "m odd, (m+1)/2 outside (min(k,l), max(k,l)]")


# -- logarithmic cases ----------------------------------------------------------------------------

def _log_setup(k: int, l: int, z):
    _check_open_domain(z)
    be = _Backend(False, _working_dps(k, l, z) + 10)
    return be


def _dagger_terms(be: _Backend, m: int, k: int, l: int, s):
    one = be.one
    dp, mp_ = f2_dagger_raw(m, k, l, 2 * s / (1 + s), 2 * one / (1 + s), one)
    dm, mm = f2_dagger_raw(m, k, l, 2 * s / (s - 1), 2 * one / (1 - s), one)
    P, M = (1 + s) ** m, (1 - s) ** m
    return P * dp, M * dm, abs(P) * mp_ + abs(M) * mm


def _hh(x):
    return mpmath.mpf(x.numerator) / x.denominator if isinstance(x, Fraction) else mpmath.mpf(x)


def _f_even_m(be, m, k, l, z):
    """Terminating 2F1(-m/2, l-(m-1)/2; 1/2-k; z)."""
    h = Fraction(1, 2)
    return pfq_raw([_hh(Fraction(-m, 2)), _hh(l - Fraction(m - 1, 2))], [_hh(h - k)], z, be.one)


def _f_odd_m(be, m, k, l, z):
    """Terminating 2F1(k-(m-1)/2, k+l-m/2+1; 3/2+k; z)."""
    return pfq_raw([_hh(k - Fraction(m - 1, 2)), _hh(k + l - Fraction(m, 2) + 1)],
                   [_hh(Fraction(3, 2) + k)], z, be.one)


def eval_log_even_m(p: DihedralParams, z) -> HyperValue:
    """2F1(k-(m-1)/2, k+l-m/2+1; 3/2+k; z) for a = -m, m even, from the a-derivative
    of the odd closed form (log((1+sqrt z)/(1-sqrt z)) and two F2-dagger rectangles)."""
    k, l = p.require_integral()
    n = as_int_if_integral(p.a)
    if n is None or n > 0 or n % 2:
        raise NotLogCase(f"a={p.a} is not a non-positive even integer")
    m = -n
    if m > 2 * (k + l):
        raise NotLogCase(f"m={m} exceeds 2(k+l)={2 * (k + l)}")
    be = _log_setup(k, l, z)
    if complex(z) == 0:
        return HyperValue(1 + 0j, 0.0, False)
    h = Fraction(1, 2)
    with mpmath.workdps(be.dps):
        zz = be.num(z)
        s = mpmath.sqrt(zz)
        lg = mpmath.log((1 + s) / (1 - s))
        fe, fe_mag = _f_even_m(be, m, k, l, zz)
        c_log = pochhammer(Fraction(1 - m, 2), l) / pochhammer(h, l)
        P, M, mag = _dagger_terms(be, m, k, l, s)
        rhs = _hh(c_log) * lg * fe + M - P
        front = (pochhammer(Fraction(1 - m, 2), k) * math.factorial(m // 2) * math.factorial(k + l - m // 2)
                 / (pochhammer(h, k) * pochhammer(h, k + 1) * pochhammer(h, l))) * (-1) ** (k + m // 2)
        scale = _hh(front) * s ** (2 * k + 1)
        total_mag = abs(_hh(c_log) * lg) * fe_mag + mag
        return be.finish(rhs / scale, total_mag / abs(scale))


class OddRegime(enum.Enum):
    TWO_ELL_LESS = "TwoEllLess"   # 2l < m < 2k
    TWO_K_LESS = "TwoKLess"       # 2k < m < 2l


def eval_log_odd_m(p: DihedralParams, z, regime: OddRegime | str) -> HyperValue:
    """Odd a = -m logarithmic cases.

    TwoEllLess (2l < m < 2k) returns 2F1(k-(m-1)/2, k+l-m/2+1; 3/2+k; z);
    TwoKLess (2k < m < 2l) returns 2F1(-m/2, l-(m-1)/2; 1/2-k; z).
    """
    regime = OddRegime(regime)
    k, l = p.require_integral()
    n = as_int_if_integral(p.a)
    if n is None or n >= 0 or n % 2 == 0:
        raise NotLogCase(f"a={p.a} is not a negative odd integer")
    m = -n
    if regime is OddRegime.TWO_ELL_LESS and not 2 * l < m < 2 * k:
        raise RegimeMismatch(f"TwoEllLess needs 2l < m < 2k, got k={k}, l={l}, m={m}")
    if regime is OddRegime.TWO_K_LESS and not 2 * k < m < 2 * l:
        raise RegimeMismatch(f"TwoKLess needs 2k < m < 2l, got k={k}, l={l}, m={m}")
    be = _log_setup(k, l, z)
    if complex(z) == 0:
        return HyperValue(1 + 0j, 0.0, False)
    h = Fraction(1, 2)
    with mpmath.workdps(be.dps):
        zz = be.num(z)
        s = mpmath.sqrt(zz)
        lg = mpmath.log((1 + s) / (1 - s))
        P, M, mag = _dagger_terms(be, m, k, l, s)
        big = pochhammer(h, k) * pochhammer(h, k + 1) * pochhammer(h, l)
        if regime is OddRegime.TWO_ELL_LESS:
            fe, fe_mag = _f_even_m(be, m, k, l, zz)
            c_log = _hh(pochhammer(Fraction(1 - m, 2), l) / pochhammer(h, l))
            rhs = c_log * lg * fe + M - P
            front = (math.factorial((m - 1) // 2) * math.factorial(k - (m + 1) // 2)
                     * pochhammer(Fraction(-m, 2), k + l + 1) / big) * (-1) ** (k + (m - 1) // 2)
            scale = _hh(front) * s ** (2 * k + 1)
            return be.finish(rhs / scale, (abs(c_log * lg) * fe_mag + mag) / abs(scale))
        fo, fo_mag = _f_odd_m(be, m, k, l, zz)
        c_log = _hh(pochhammer(Fraction(1 - m, 2), k) * pochhammer(Fraction(-m, 2), k + l + 1) / big
                    * (-1) ** k) * s ** (2 * k + 1)
        rhs = c_log * lg * fo + P + M
        front = _hh(Fraction(math.factorial((m - 1) // 2) * math.factorial(l - (m + 1) // 2))
                    / pochhammer(h, l) * (-1) ** ((m - 1) // 2))
        return be.finish(rhs / front, (abs(c_log * lg) * fo_mag + mag) / abs(front))


def _psi_mp(x: Fraction):
    d = digamma_exact(x)
    return (_hh(d.rational) + _hh(d.gamma_coeff) * mpmath.euler + _hh(d.ln2_coeff) * mpmath.log(2))


def _logdih_series(m: int, k: int, l: int, zz, tol: float, max_terms: int):
    """Right-hand side of the (1-z)-expansion divided by its left prefactor, m <= k+l."""
    f = math.factorial
    N = k + l - m
    hm = m // 2
    L = l - Fraction(m - 1, 2)
    one = mpmath.mpf(1)
    w = 1 - zz
    # log(1-z) term: its 2F1 is written around z = 1 (terminating in -m/2)
    lg = mpmath.log(w) / (f(N) * f(hm))
    f1, f1_mag = pfq_raw([_hh(L), _hh(Fraction(-m, 2))], [N + 1], w, one)
    t1 = lg * f1
    mag = abs(lg) * f1_mag
    # terminating (z-1)^{-N} block
    c2 = _hh(pochhammer(Fraction(m + 1, 2) - l, N))
    acc = 0
    for j in range(N):
        t = _hh(pochhammer(Fraction(m + 1, 2) - k, j) * f(N - j - 1) / (f(k + l - hm - j) * f(j))) * w ** j
        acc += t
        mag += abs(t * (zz - 1) ** (-N) / c2)
    t2 = -(zz - 1) ** (-N) / c2 * acc if N > 0 else 0
    # digamma-weighted block
    t3 = 0
    for j in range(hm + 1):
        ps = (_psi_mp(L + j) + _psi_mp(Fraction(hm - j + 1)) - _psi_mp(Fraction(N + j + 1))
              - _psi_mp(Fraction(j + 1)))
        t = _hh(pochhammer(L, j) / (f(N + j) * f(hm - j) * f(j))) * ps * (zz - 1) ** j
        t3 += t
        mag += abs(t)
    # non-terminating tail
    sign = (-1) ** hm
    aw = float(abs(w))
    coef = _hh(pochhammer(L, hm + 1) * f(0) / (f(N + hm + 1) * f(hm + 1)))
    j = hm + 1
    t = coef * w ** j
    t4 = 0
    small = 0
    tail_err = 0.0
    while True:
        if j - hm > max_terms:
            raise NonConvergent(f"tail did not reach tol={tol} within {max_terms} terms")
        t4 += t
        mag += abs(t)
        small = small + 1 if float(abs(t)) < tol * max(1.0, float(abs(t4))) else 0
        # t_{j+1}/t_j = (L+j)(j-m/2)/((N+j+1)(j+1)) * w
        r = float(abs((L + j) * (j - hm) / Fraction((N + j + 1) * (j + 1))))
        rho = max(r * aw, aw)
        nxt = t * _hh((L + j) * (j - hm) / Fraction((N + j + 1) * (j + 1))) * w
        if small >= 3 and rho < 1:
            tail_err = 10.0 * float(abs(nxt)) / (1 - rho)
            break
        t = nxt
        j += 1
    rhs = t1 + t2 + t3 + sign * t4
    pre = (-1) ** (N + 1) * zz ** k * mpmath.sqrt(zz) / _hh(pochhammer(Fraction(m + 1, 2) - l, k + l - hm + 1))
    return rhs / pre, (mag, tail_err), abs(pre)


def eval_log_series(p: DihedralParams, z, tol: float = 1e-17, max_terms: int = 100000) -> HyperValue:
    """2F1(k-(m-1)/2, k+l-m/2+1; 3/2+k; z) for even a = -m <= 0 from the expansion
    around z = 1 (log(1-z), a terminating block, a digamma block and a convergent
    tail in powers of 1-z).  m > k+l is handled by m -> 2k+2l-m and the factor
    (1-z)^{m-k-l}.
    """
    k, l = p.require_integral()
    n = as_int_if_integral(p.a)
    if n is None or n > 0 or n % 2:
        raise NotLogCase(f"a={p.a} is not a non-positive even integer")
    m = -n
    if m > 2 * (k + l):
        raise NotLogCase(f"m={m} exceeds 2(k+l)")
    c = complex(z)
    if not abs(1 - c) < 1:
        raise NonConvergent(f"|1-z| = {abs(1 - c)} must be < 1")
    if c.imag == 0 and c.real >= 1:
        raise DomainError(f"z={z} must be off [1, inf)")
    dps = 40
    with mpmath.workdps(dps):
        zz = _Backend(False, dps).num(z)
        fac = 1
        mm = m
        if m > k + l:
            mm = 2 * (k + l) - m
            fac = (1 - zz) ** (m - k - l)
        v, (mag, tail), apre = _logdih_series(mm, k, l, zz, tol, max_terms)
        vc = complex(v * fac)
        # mag and tail are measured before division by the left prefactor
        err = (float(mag) * 10.0 ** (3 - dps) + tail) * float(abs(fac)) / float(apre) + EPS * abs(vc)
        return HyperValue(vc, err, False)


def eval_cycl2(p: DihedralParams, z) -> tuple[HyperValue, HyperValue]:
    """Both sides of the Z/2 relation for odd a = -m with m < 2 min(k, l).

    lhs = (1-z)^{k+l-m} 2F1(-m/2, l-(m-1)/2; k+l-m+1; 1-z)   (convergent, |1-z| < 1)
    rhs = c1 2F1((m+1)/2-k, m/2-k-l; 1/2-k; z)
          + z^{k+1/2} c2 2F1((m+1)/2-l, m/2+1; 3/2+k; z)      (both terminate)
    """
    k, l = p.require_integral()
    n = as_int_if_integral(p.a)
    if n is None or n >= 0 or n % 2 == 0:
        raise DomainError(f"a={p.a} must be a negative odd integer")
    m = -n
    if not m < 2 * min(k, l):
        raise DomainError(f"needs m < 2 min(k,l), got m={m}, k={k}, l={l}")
    c = complex(z)
    if not abs(1 - c) < 1 or (c.imag == 0 and c.real <= 0):
        raise DomainError(f"z={z} must satisfy |1-z| < 1 off the cut (-inf, 0]")
    h = Fraction(1, 2)
    j = (m - 1) // 2
    c1 = pochhammer(k - Fraction(m - 1, 2), l - j) / pochhammer(k + h, l - j)
    c2 = pochhammer(l - Fraction(m - 1, 2), k - j) / pochhammer(-k - h, k - j)
    f1 = gauss_2f1(Fraction(m + 1, 2) - k, Fraction(m, 2) - k - l, h - k, z)
    f2 = gauss_2f1(Fraction(m + 1, 2) - l, Fraction(m, 2) + 1, h + 1 + k, z)
    w = 1 - z
    lhs_f = gauss_2f1(Fraction(-m, 2), l - Fraction(m - 1, 2), k + l - m + 1, w, Truncated(1e-18, 200000))
    lw = (complex(w) ** (k + l - m))
    lhs = HyperValue(lhs_f.value * lw, lhs_f.abs_err * abs(lw) + EPS * abs(lhs_f.value * lw), False)
    zk = complex(sqrt_principal(z)) ** (2 * k + 1)
    r = complex(c1) * f1.value + zk * complex(c2) * f2.value
    err = abs(complex(c1)) * (f1.abs_err + EPS * abs(f1.value)) + abs(zk * complex(c2)) * (
        f2.abs_err + EPS * abs(f2.value)) + EPS * abs(r)
    return lhs, HyperValue(r, err, False)


# -- arctan / arcsin ------------------------------------------------------------------------------

class InverseTrig(enum.Enum):
    ARCTAN = "Arctan"
    ARCSIN = "Arcsin"


def arctan_forms(kind: InverseTrig | str, x) -> tuple[HyperValue, complex]:
    """(series value, closed form): 2F1(1/2,1;3/2;-x^2) = arctan(x)/x and
    2F1(1/2,1/2;3/2;x^2) = arcsin(x)/x."""
    kind = InverseTrig(kind)
    c = complex(x)
    if not abs(c) < 1:
        raise DomainError(f"|x| = {abs(c)} must be < 1")
    h = Fraction(1, 2)
    if kind is InverseTrig.ARCTAN:
        series = gauss_2f1(h, 1, Fraction(3, 2), -x * x, TRUNCATED)
        closed = 1 + 0j if c == 0 else cmath.atan(c) / c
    else:
        series = gauss_2f1(h, h, Fraction(3, 2), x * x, TRUNCATED)
        closed = 1 + 0j if c == 0 else cmath.asin(c) / c
    return series, closed
