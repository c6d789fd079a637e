"""Series evaluators: generalized pFq (Gauss 2F1, 3F2), terminating Appell
F2/F3 rectangles, the triangular F2 of the vanishing lemma, the derivative
sum F2-dagger, and the two Kampe de Feriet shapes F^{2:1;1}_{1:1;1} and
F^{1:2;2}_{2:0;0}.

All sums are built from coefficient rows c_t = prod (p)_t / prod (q)_t that
are extended lazily.  When every input is an exact rational the arithmetic
stays in ``Fraction``; otherwise terms are accumulated with ``math.fsum``
(separately on real and imaginary parts).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .numcore import (
    DomainError,
    all_exact,
    nonpositive_int,
    pochhammer_derivative,
)

EPS = 2.0 ** -52


class SeriesError(DomainError):
    pass


class NonConvergent(SeriesError):
    pass


class PoleAtC(SeriesError):
    pass


class PoleInDenominatorRow(SeriesError):
    pass


class BudgetExceeded(SeriesError):
    pass


class SingularTerm(SeriesError):
    pass


class NotTerminating(SeriesError):
    pass


@dataclass(frozen=True)
class Terminating:
    pass


@dataclass(frozen=True)
class Truncated:
    tol: float = 1e-16
    max_terms: int = 20000

    def __post_init__(self):
        if not self.tol > 0 or self.max_terms < 1:
            raise DomainError("Truncated needs tol > 0 and max_terms >= 1")


SeriesMode = Terminating | Truncated
TERMINATING = Terminating()
TRUNCATED = Truncated()


@dataclass(frozen=True)
class HyperValue:
    value: complex
    abs_err: float
    exact: bool
    rational: Fraction | None = None
    terms: int = 0

    def __post_init__(self):
        if self.exact and self.abs_err != 0:
            raise ValueError("exact values carry abs_err = 0")

    @property
    def real(self) -> float:
        return self.value.real

    def __complex__(self) -> complex:
        return self.value


def exact_value(q: Fraction, terms: int = 0) -> HyperValue:
    return HyperValue(complex(q), 0.0, True, Fraction(q), terms)


def _is_native(x) -> bool:
    return isinstance(x, (int, float, complex, Fraction))


def accurate_sum(terms: Sequence):
    """Exact sum for Fractions, fsum for floats/complex, plain sum otherwise."""
    if all(isinstance(t, (int, Fraction)) for t in terms):
        return sum(terms, Fraction(0))
    if all(_is_native(t) for t in terms):
        re = math.fsum(complex(t).real for t in terms)
        im = math.fsum(complex(t).imag for t in terms)
        return complex(re, im)
    total = 0
    for t in terms:
        total = total + t
    return total


def _magnitude(t) -> float:
    return float(abs(t))


# -- coefficient rows ----------------------------------------------------------

class _Pole(Exception):
    def __init__(self, index: int):
        super().__init__(index)
        self.index = index


class Row:
    """c_t = prod_p (p)_t / prod_q (q)_t, grown on demand.

    A numerator factor hitting zero truncates the row (checked before the
    denominator, so (-k)_i/(-2k)_i with k=0 collapses to the single entry 1).
    """

    def __init__(self, num: Sequence, den: Sequence, one=1):
        self.num = list(num)
        self.den = list(den)
        self.vals = [one]
        self.end: int | None = None  # first index with c_t = 0
        bounds = [nonpositive_int(p) for p in self.num]
        bounds = [b for b in bounds if b is not None]
        self.bound = min(bounds) if bounds else None  # last possibly nonzero index

    def get(self, t: int):
        while len(self.vals) <= t:
            s = len(self.vals) - 1
            if self.end is not None:
                return 0
            numf = 1
            for p in self.num:
                numf = numf * (p + s)
            if numf == 0:
                self.end = s + 1
                return 0
            denf = 1
            for q in self.den:
                denf = denf * (q + s)
            if denf == 0:
                raise _Pole(s + 1)
            self.vals.append(self.vals[-1] * numf / denf)
        return self.vals[t]

    def ratio_bound(self, t: int) -> float:
        """|c_{t+1}/c_t| ignoring the argument power."""
        r = 1.0
        for p in self.num:
            r *= _magnitude(p + t)
        for q in self.den:
            d = _magnitude(q + t)
            if d == 0:
                return math.inf
            r /= d
        return r


class DaggerRow:
    """(-m)^dagger_t as a coefficient row (never truncates)."""

    def __init__(self, m: int):
        self.m = m
        self.bound = None
        self.end = None

    def get(self, t: int):
        return pochhammer_derivative(self.m, t)


class _Powers:
    def __init__(self, x, one=1):
        self.x = x
        self.vals = [one]

    def get(self, i: int):
        while len(self.vals) <= i:
            self.vals.append(self.vals[-1] * self.x)
        return self.vals[i]


def _one_for(*xs):
    return Fraction(1) if all_exact(*xs) else 1


# -- one-variable series ---------------------------------------------------------

def hyp_pfq(num: Sequence, den: Sequence, z, mode: SeriesMode = TERMINATING,
            pole_error: type = PoleAtC) -> HyperValue:
    """Generalized hypergeometric series sum_j prod(a)_j/prod(b)_j z^j/j!."""
    exact = all_exact(*num, *den, z)
    one = Fraction(1) if exact else 1
    row = Row(num, list(den) + [1], one)
    powers = _Powers(z, one)
    if isinstance(mode, Terminating):
        if row.bound is None:
            raise NotTerminating("no non-positive integer numerator parameter")
        terms = []
        try:
            for j in range(row.bound + 1):
                terms.append(row.get(j) * powers.get(j))
        except _Pole as e:
            raise pole_error(f"denominator Pochhammer vanishes at index {e.index}") from None
        return _finish(terms, exact)
    if row.bound is None and exact:
        # an infinite sum in Fractions only grows denominators; use doubles
        num, den, z = [float(x) for x in num], [float(x) for x in den], float(z)
        row = Row(num, list(den) + [1], 1)
        powers = _Powers(z, 1)
    return _truncated_1d(row, powers, z, mode, num, den, pole_error)


def _finish(terms, exact: bool, extra_err: float = 0.0) -> HyperValue:
    total = accurate_sum(terms)
    if exact:
        return exact_value(total, len(terms))
    mags = [_magnitude(t) for t in terms]
    err = EPS * math.fsum((4 + 2 * j) * m for j, m in enumerate(mags)) + extra_err
    return HyperValue(complex(total), err, False, None, len(terms))


def _truncated_1d(row: Row, powers: _Powers, z, mode: Truncated, num, den,
                  pole_error) -> HyperValue:
    az = _magnitude(z)
    finite = row.bound is not None
    if not finite and az >= 1:
        raise NonConvergent(f"|z| = {az} >= 1 outside the disk of convergence")
    hump = max([_magnitude(p) for p in list(num) + list(den)] + [0.0]) + 2
    terms = []
    small = 0
    running = 0
    try:
        j = 0
        while True:
            if finite and j > row.bound:
                return _finish(terms, all_exact(*num, *den, z))
            if j >= mode.max_terms:
                raise BudgetExceeded(f"{mode.max_terms} terms without reaching tol={mode.tol}")
            t = row.get(j) * powers.get(j)
            terms.append(t)
            running = running + t
            scale = max(1.0, _magnitude(running))
            small = small + 1 if _magnitude(t) < mode.tol * scale else 0
            rho = row.ratio_bound(j + 1) * az
            rho_tail = max(rho, az)
            if small >= 3 and j > hump and rho_tail < 1:
                nxt = _magnitude(row.get(j + 1) * powers.get(j + 1))
                tail = 10.0 * nxt / (1.0 - rho_tail)
                hv = _finish(terms, False, tail)
                return hv
            j += 1
    except _Pole as e:
        raise pole_error(f"denominator Pochhammer vanishes at index {e.index}") from None


def gauss_2f1(a, b, c, z, mode: SeriesMode = TERMINATING) -> HyperValue:
    if isinstance(mode, Truncated) and nonpositive_int(c) is not None:
        bounds = [x for x in (nonpositive_int(a), nonpositive_int(b)) if x is not None]
        if not bounds or min(bounds) > nonpositive_int(c):
            raise PoleAtC(f"c = {c} is a non-positive integer")
    return hyp_pfq([a, b], [c], z, mode)


def hpg_3f2(a1, a2, a3, b1, b2, z, mode: SeriesMode = TERMINATING) -> HyperValue:
    return hyp_pfq([a1, a2, a3], [b1, b2], z, mode)


# -- double sums -------------------------------------------------------------------

def _double_sum(D, I, J, x, y, mode: SeriesMode, rate: Callable[[float, float, bool, bool], float],
                exact: bool, pole_error: type, hump: float = 0.0) -> HyperValue:
    """sum_{i,j} D_{i+j} I_i J_j x^i y^j with lazily extended rows."""
    one = Fraction(1) if exact else 1
    px, py = _Powers(x, one), _Powers(y, one)
    ib, jb, db = I.bound, J.bound, D.bound
    finite = db is not None or (ib is not None and jb is not None)
    if isinstance(mode, Terminating) and not finite:
        raise NotTerminating("double sum does not terminate for these parameters")
    if finite:
        dmax = db if db is not None else ib + jb
        if ib is not None and jb is not None:
            dmax = min(dmax, ib + jb)
    else:
        dmax = None
        rho = rate(_magnitude(x), _magnitude(y), ib is not None, jb is not None)
        if not rho < 1:
            raise NonConvergent(f"double series diverges, rate {rho:.3g} >= 1")

    def diagonal(d):
        lo = 0 if jb is None else max(0, d - jb)
        hi = d if ib is None else min(d, ib)
        out = []
        for i in range(lo, hi + 1):
            j = d - i
            dv = D.get(d)
            if dv == 0:
                continue
            iv = I.get(i)
            if iv == 0:
                continue
            jv = J.get(j)
            if jv == 0:
                continue
            out.append(dv * iv * jv * px.get(i) * py.get(j))
        return out

    terms = []
    try:
        if finite:
            for d in range(dmax + 1):
                terms.extend(diagonal(d))
            return _finish(terms, exact)
        small = 0
        d = 0
        while True:
            if d >= mode.max_terms:
                raise BudgetExceeded(f"{mode.max_terms} diagonals without reaching tol={mode.tol}")
            diag = diagonal(d)
            terms.extend(diag)
            mag = math.fsum(_magnitude(t) for t in diag)
            scale = max(1.0, _magnitude(accurate_sum(terms)))
            small = small + 1 if mag < mode.tol * scale else 0
            if small >= 3 and d > hump:
                nxt = math.fsum(_magnitude(t) for t in diagonal(d + 1))
                return _finish(terms, False, 10.0 * nxt / (1.0 - rho))
            d += 1
    except _Pole as e:
        raise pole_error(f"denominator Pochhammer vanishes at index {e.index}") from None


def _rate_f2(ax: float, ay: float, ibounded: bool, jbounded: bool) -> float:
    if ibounded:
        return ay
    if jbounded:
        return ax
    return ax + ay


def _rate_f3(ax: float, ay: float, ibounded: bool, jbounded: bool) -> float:
    if ibounded:
        return ay
    if jbounded:
        return ax
    return max(ax, ay)


def _check_nonneg(*ns: int):
    for n in ns:
        if not isinstance(n, int) or n < 0:
            raise DomainError(f"expected a non-negative integer, got {n!r}")


def appell_f2_rect(a, k: int, l: int, x, y) -> HyperValue:
    """Terminating F2(a; -k, -l; -2k, -2l; x, y) over the (k+1)(l+1) rectangle."""
    _check_nonneg(k, l)
    exact = all_exact(a, x, y)
    one = _one_for(a, x, y)
    D = Row([a], [], one)
    I = Row([-k], [-2 * k, 1], one)
    J = Row([-l], [-2 * l, 1], one)
    return _double_sum(D, I, J, x, y, TERMINATING, _rate_f2, exact, PoleAtC)


def appell_f3_rect(p1, p2, k: int, l: int, c, x, y) -> HyperValue:
    """Terminating F3(p1, p2; -k, -l; c; x, y)."""
    _check_nonneg(k, l)
    exact = all_exact(p1, p2, c, x, y)
    one = _one_for(p1, p2, c, x, y)
    D = Row([], [c], one)
    I = Row([p1, -k], [1], one)
    J = Row([p2, -l], [1], one)
    return _double_sum(D, I, J, x, y, TERMINATING, _rate_f3, exact, PoleAtC)


def f2_dagger_rect(m: int, k: int, l: int, x, y) -> HyperValue:
    """F2 rectangle with (-m)_{i+j} replaced by its a-derivative (-m)^dagger_{i+j}."""
    _check_nonneg(m, k, l)
    exact = all_exact(x, y)
    one = _one_for(x, y)
    I = Row([-k], [-2 * k, 1], one)
    J = Row([-l], [-2 * l, 1], one)
    D = DaggerRow(m)
    # the dagger row never truncates, so bound the rectangle explicitly
    px, py = _Powers(x, one), _Powers(y, one)
    terms = []
    for i in range(k + 1):
        for j in range(l + 1):
            terms.append(D.get(i + j) * I.get(i) * J.get(j) * px.get(i) * py.get(j))
    return _finish(terms, exact)


def kampe_211(a, b, p1, p2, c, q1, q2, x, y, mode: SeriesMode = TERMINATING) -> HyperValue:
    """F^{2:1;1}_{1:1;1}(a, b; p1; p2 / c; q1; q2 | x, y):
    sum (a)_{i+j}(b)_{i+j}(p1)_i(p2)_j / ((c)_{i+j}(q1)_i(q2)_j i! j!) x^i y^j."""
    exact = all_exact(a, b, p1, p2, c, q1, q2, x, y)
    one = _one_for(a, b, p1, p2, c, q1, q2, x, y)
    D = Row([a, b], [c], one)
    I = Row([p1], [q1, 1], one)
    J = Row([p2], [q2, 1], one)
    hump = max(_magnitude(v) for v in (a, b, p1, p2, c, q1, q2)) + 2
    return _double_sum(D, I, J, x, y, mode, _rate_f2, exact, PoleInDenominatorRow, hump)


def kampe_122(a, p1, p2, q1, q2, b, c, x, y, mode: SeriesMode = TERMINATING) -> HyperValue:
    """F^{1:2;2}_{2:0;0}(a; p1, q1; p2, q2 / b, c | x, y):
    sum (a)_{i+j}(p1)_i(q1)_i(p2)_j(q2)_j / ((b)_{i+j}(c)_{i+j} i! j!) x^i y^j.

    p1, q1 carry the index i and p2, q2 the index j; either member of a pair
    being a non-positive integer bounds that direction.
    """
    exact = all_exact(a, p1, p2, q1, q2, b, c, x, y)
    one = _one_for(a, p1, p2, q1, q2, b, c, x, y)
    D = Row([a], [b, c], one)
    I = Row([p1, q1], [1], one)
    J = Row([p2, q2], [1], one)
    hump = max(_magnitude(v) for v in (a, p1, p2, q1, q2, b, c)) + 2
    return _double_sum(D, I, J, x, y, mode, _rate_f3, exact, PoleInDenominatorRow, hump)


# -- triangular F2 with the limit convention ---------------------------------------

def _limit_ratio(b, i: int, one):
    """lim_{beta -> b} (beta)_i / (2 beta)_i.

    Only a non-positive integer b = -K needs the limit: the factor beta+K
    contributes eps (for i > K) and 2beta+2K contributes 2 eps (for i > 2K).
    A vanishing (2b)-factor without such a partner is a SingularTerm.
    """
    K = nonpositive_int(b)
    num, den = one, one
    nz_num = nz_den = 0
    for t in range(i):
        f = b + t
        if K is not None and t == K:
            nz_num += 1
        else:
            num = num * f
        g = 2 * b + t
        if K is not None and t == 2 * K:
            nz_den += 1
            den = den * 2
        elif g == 0:
            raise SingularTerm(f"(2b)_{i} vanishes at 2b={2 * b} with no cancelling numerator zero")
        else:
            den = den * g
    if nz_num > nz_den:
        return one * 0
    return num / den


def appell_f2_triangular(m: int, b, c, x, y, lift_floats: bool = True) -> HyperValue:
    """sum_{i+j<=m} (-m)_{i+j}(b)_i(c)_j / ((2b)_i(2c)_j i! j!) x^i y^j.

    The sum is finite, so real float inputs are by default lifted to the exact
    rationals they represent and summed exactly; the result is the correctly
    rounded value of the sum at those doubles.  Term products in plain double
    precision lose up to ~1e-12 at m = 9 through cancellation between terms of
    size 1e4; ``lift_floats=False`` keeps that plain evaluation.
    """
    _check_nonneg(m)
    exact = all_exact(b, c, x, y)
    if lift_floats and not exact and all(isinstance(v, (int, float)) and math.isfinite(v) for v in (b, c, x, y)):
        hv = appell_f2_triangular(m, Fraction(b), Fraction(c), Fraction(x), Fraction(y))
        v = float(hv.rational)
        return HyperValue(complex(v), EPS * abs(v), False, None, hv.terms)
    one = _one_for(b, c, x, y)
    px, py = _Powers(x, one), _Powers(y, one)
    D = Row([-m], [], one)
    bi = [_limit_ratio(b, i, one) / math.factorial(i) for i in range(m + 1)]
    cj = [_limit_ratio(c, j, one) / math.factorial(j) for j in range(m + 1)]
    terms = []
    for i in range(m + 1):
        for j in range(m + 1 - i):
            terms.append(D.get(i + j) * bi[i] * cj[j] * px.get(i) * py.get(j))
    return _finish(terms, exact)


# -- raw sums for extended-precision callers ----------------------------------------

def f2_rect_raw(a, k: int, l: int, x, y, one=1):
    """Plain F2 rectangle in whatever number type the inputs carry (e.g. mpmath)."""
    D = Row([a], [], one)
    I = Row([-k], [-2 * k, 1], one)
    J = Row([-l], [-2 * l, 1], one)
    total, mag = 0, 0
    xi = one
    for i in range(k + 1):
        yj = one
        for j in range(l + 1):
            t = D.get(i + j) * I.get(i) * J.get(j) * xi * yj
            total = total + t
            mag = mag + abs(t)
            yj = yj * y
        xi = xi * x
    return total, mag


def f3_rect_raw(p1, p2, k: int, l: int, c, x, y, one=1):
    D = Row([], [c], one)
    I = Row([p1, -k], [1], one)
    J = Row([p2, -l], [1], one)
    total, mag = 0, 0
    xi = one
    for i in range(k + 1):
        yj = one
        for j in range(l + 1):
            try:
                t = D.get(i + j) * I.get(i) * J.get(j) * xi * yj
            except _Pole as e:
                raise PoleAtC(f"(c)_(i+j) vanishes at index {e.index}") from None
            total = total + t
            mag = mag + abs(t)
            yj = yj * y
        xi = xi * x
    return total, mag


def f2_dagger_raw(m: int, k: int, l: int, x, y, one=1):
    I = Row([-k], [-2 * k, 1], one)
    J = Row([-l], [-2 * l, 1], one)
    total, mag = 0, 0
    xi = one
    for i in range(k + 1):
        yj = one
        for j in range(l + 1):
            t = pochhammer_derivative(m, i + j) * I.get(i) * J.get(j) * xi * yj
            total = total + t
            mag = mag + abs(t)
            yj = yj * y
        xi = xi * x
    return total, mag


def pfq_raw(num: Sequence, den: Sequence, z, one=1, max_terms: int | None = None):
    """Terminating pFq in the inputs' number type; returns (sum, sum of |terms|).

    ``max_terms`` caps the number of terms for series that do not terminate
    (used for convergent tails evaluated at extended precision).
    """
    row = Row(num, list(den) + [1], one)
    n = row.bound
    if n is None:
        if max_terms is None:
            raise NotTerminating("no non-positive integer numerator parameter")
        n = max_terms - 1
    total, mag, zj = 0, 0, one
    try:
        for j in range(n + 1):
            t = row.get(j) * zj
            total = total + t
            mag = mag + abs(t)
            zj = zj * z
    except _Pole as e:
        raise PoleAtC(f"denominator Pochhammer vanishes at index {e.index}") from None
    return total, mag
