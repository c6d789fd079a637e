"""Registry of verifiable identities with a residual engine.

Each descriptor carries a parameter domain, a z-domain, an exactness class and an
evaluator returning a chain of values that must agree (v0 = v1 = ...).  Chains of
length two are ordinary identities; longer chains are checked pairwise against v0.

Values may be complex floats, Fractions, or exact polynomial objects (RatPoly /
SqrtPoly / tuples of Fractions).  Exact objects are compared with ``==``.
"""
from __future__ import annotations

import csv
import io
import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable, Mapping, Sequence

import mpmath as mp

from . import dihedral as dh
from . import transforms as tr
from .hypseries import (TERMINATING, TRUNCATED, Truncated, appell_f2_rect, appell_f2_triangular,
                        appell_f3_rect, hyp_pfq, kampe_122, kampe_211)
from .numcore import (DomainError, binomial, is_exact, nonpositive_int, pochhammer, power,
                      sqrt_principal)

H = Fraction(1, 2)


class DomainViolation(DomainError):
    pass


@dataclass(frozen=True)
class Exactness:
    kind: str          # "Exact" or "Numeric"
    tol: float = 0.0

    def __str__(self) -> str:
        return self.kind if self.kind == "Exact" else f"Numeric({self.tol:g})"


EXACT = Exactness("Exact")


def numeric(tol: float) -> Exactness:
    return Exactness("Numeric", tol)


# tolerance used when an Exact identity is fed floating inputs
FLOAT_FALLBACK_TOL = 1e-10


@dataclass(frozen=True)
class Constraint:
    text: str
    check: Callable[[Mapping], bool]


@dataclass(frozen=True)
class IdentityDescriptor:
    id: str
    anchor: str
    family: str
    params: tuple[str, ...]
    param_domain: tuple[Constraint, ...]
    z_domain: tuple[float, float] | None
    exactness: Exactness
    evaluator: Callable[[Mapping, Any], Sequence] = field(repr=False, compare=False)
    sampler: Callable[[random.Random], list] = field(repr=False, compare=False)
    z_valid: Callable[[Mapping, Any], bool] | None = field(default=None, repr=False, compare=False)
    note: str = ""

    @property
    def tol(self) -> float:
        return self.exactness.tol

    def check_domain(self, params: Mapping, z) -> None:
        missing = [p for p in self.params if p not in params]
        if missing:
            raise DomainViolation(f"{self.id}: missing parameters {missing}")
        for c in self.param_domain:
            try:
                ok = c.check(params)
            except (TypeError, ValueError, ZeroDivisionError):
                ok = False
            if not ok:
                raise DomainViolation(f"{self.id}: violated '{c.text}' for {dict(params)}")
        if self.z_domain is not None:
            if z is None:
                raise DomainViolation(f"{self.id}: z is required")
            lo, hi = self.z_domain
            zc = complex(z)
            if zc.imag != 0 or not lo <= zc.real <= hi:
                raise DomainViolation(f"{self.id}: z={z} outside [{lo}, {hi}]")
        if self.z_valid is not None and not self.z_valid(params, z):
            raise DomainViolation(f"{self.id}: z={z} outside the convergence region for {dict(params)}")


@dataclass(frozen=True)
class ResidualReport:
    id: str
    params: dict
    z: Any
    lhs: complex
    rhs: complex
    abs_residual: float
    rel_residual: float
    passed: bool
    exact: bool = False

    def to_row(self) -> list:
        return [self.id, json.dumps(_jsonable(self.params), sort_keys=True), _zstr(self.z),
                repr(self.lhs.real), repr(self.lhs.imag), repr(self.rhs.real), repr(self.rhs.imag),
                repr(self.rel_residual), "1" if self.passed else "0"]


@dataclass(frozen=True)
class SweepSummary:
    id: str
    samples: int
    failures: int
    max_rel_residual: float
    worst_params: dict | None
    worst_z: Any
    all_exact: bool

    def to_dict(self) -> dict:
        return {"id": self.id, "samples": self.samples, "failures": self.failures,
                "max_rel_residual": self.max_rel_residual,
                "worst_params": _jsonable(self.worst_params), "worst_z": _zstr(self.worst_z),
                "all_exact": self.all_exact}


@dataclass(frozen=True)
class SamplerConfig:
    seed: int = 0
    draws: int | None = None      # parameter draws per descriptor; None = descriptor default
    max_samples: int | None = None
    tol: float | None = None      # overrides the declared tolerance of Numeric entries
    n_max: int | None = None      # for identities indexed by n alone: check n = 1..n_max


# -- small numeric helpers ------------------------------------------------------------

def _term_mode(num):
    return TERMINATING if any(nonpositive_int(p) is not None for p in num) else TRUNCATED


def F(num: Sequence, den: Sequence, z):
    """pFq through hypseries: terminating when a numerator is 0, -1, -2, ..., else truncated."""
    hv = hyp_pfq(list(num), list(den), z, _term_mode(num))
    return hv.rational if hv.exact else hv.value


def F21(a, b, c, z):
    return F([a, b], [c], z)


def _v(hv):
    return hv.rational if hv.exact else hv.value


def pw(base, e):
    r = power(base, e)
    return r


def sq(z):
    return sqrt_principal(z)


def fac(n: int) -> int:
    return math.factorial(n)


def P(a, n: int):
    return pochhammer(a, n)


_MP_DPS = 50


def _mpn(x):
    if isinstance(x, Fraction):
        return mp.mpf(x.numerator) / x.denominator
    if isinstance(x, int):
        return mp.mpf(x)
    return mp.mpmathify(x)


def mpF21(a, b, c, z):
    """Oracle 2F1 at elevated precision; used where the identity subtracts large squares."""
    return mp.hyp2f1(_mpn(a), _mpn(b), _mpn(c), _mpn(z))


def _mp_out(x) -> complex:
    return complex(x)


def _hyp_poly(num: Sequence, den: Sequence, scale=1) -> tr.RatPoly:
    """Coefficients of a terminating pFq(num; den; scale*x) as a polynomial in x."""
    bound = min(nonpositive_int(p) for p in num if nonpositive_int(p) is not None)
    c = []
    for j in range(bound + 1):
        v = Fraction(1)
        for p in num:
            v *= pochhammer(Fraction(p), j)
        for q in den:
            v /= pochhammer(Fraction(q), j)
        c.append(v / fac(j) * Fraction(scale) ** j)
    return tr.RatPoly(c)


def _dist_int(x) -> float:
    x = float(x)
    return abs(x - round(x))


# -- samplers -------------------------------------------------------------------------

Z_GRID = tuple(j / 20 for j in range(1, 20))
Z_GRID_EXACT = tuple(Fraction(j, 20) for j in range(1, 20))


def draw_a(rng: random.Random, exact: bool = False, lo: float = -3.5, hi: float = 3.5,
           min_dist: float = 0.2):
    while True:
        if exact:
            q = rng.choice((3, 5, 7, 9))
            a = Fraction(rng.randint(int(lo * q), int(hi * q)), q)
        else:
            a = rng.uniform(lo, hi)
        if _dist_int(a) >= min_dist:
            return a


def _grid_sampler(draw: Callable[[random.Random], dict], draws: int = 3, exact: bool = False,
                  zs: Sequence | None = None):
    def sampler(rng: random.Random, n_draws: int | None = None):
        out = []
        grid = zs if zs is not None else (Z_GRID_EXACT if exact else Z_GRID)
        for _ in range(n_draws or draws):
            p = draw(rng)
            out.extend((p, z) for z in grid)
        return out
    return sampler


def _param_sampler(items: Callable[[random.Random], Iterable[tuple[dict, Any]]]):
    def sampler(rng: random.Random, n_draws: int | None = None):
        return list(items(rng))
    return sampler


def _akl(rng, kmax=4, lmax=4, exact=False, l_zero=False, k_zero=False):
    return {"a": draw_a(rng, exact), "k": 0 if k_zero else rng.randint(0, kmax),
            "l": 0 if l_zero else rng.randint(0, lmax)}


def _nonint(name: str, d: float = 1e-9) -> Constraint:
    return Constraint(f"{name} is not an integer", lambda p: _dist_int(p[name]) > d)


def _nonneg(*names: str) -> tuple[Constraint, ...]:
    return tuple(Constraint(f"{n} is a non-negative integer",
                            (lambda p, n=n: isinstance(p[n], int) and p[n] >= 0)) for n in names)


def _range(name: str, lo: int, hi: int) -> Constraint:
    return Constraint(f"{lo} <= {name} <= {hi}", lambda p: isinstance(p[name], int) and lo <= p[name] <= hi)


# -- evaluators: basic dihedral functions and quadratic transformations -----------------

def _ev_dihedr(kind):
    def ev(p, z):
        a = p.get("a", 0)
        if kind == 1:
            lhs = F21(a / 2, (a + 1) / 2, a + 1, z)
        elif kind == 2:
            lhs = F21(a / 2, (a + 1) / 2, H, z)
        elif kind == 3:
            lhs = F21((a + 1) / 2, (a + 2) / 2, Fraction(3, 2), z)
        else:
            lhs = F21(H, 1, Fraction(3, 2), z)
        return [lhs, _v(dh.eval_basic(kind, a, z))]
    return ev


def _ev_fpdihedr_intro(p, x):
    a = p["a"]
    return [F21(a / 2, (a + 1) / 2, a + 1, 4 * x * (1 - x)), F21(a, a + 1, a + 1, x), pw(1 - x, -a)]


def _dp(p) -> dh.DihedralParams:
    return dh.DihedralParams(p["k"], p["l"], p["a"])


def _ev_diha(p, z):
    a, k, l = p["a"], p["k"], p["l"]
    return [F21(a / 2, (a + 1) / 2 + l, a + k + l + 1, 1 - z), _v(dh.hpg_at1(_dp(p), z))]


def _ev_dihb(p, z):
    a, k, l = p["a"], p["k"], p["l"]
    lhs = pw(1 - z, -a - k - l) * F21(-a / 2 - k - l, (1 - a) / 2 - k, 1 - a - k - l, 1 - z)
    return [lhs, _v(dh.hpg_at1(_dp(p), z, "at1-sec"))]


def _ev_dih12(p, z):
    a, k, l = p["a"], p["k"], p["l"]
    lhs = P((a + 1) / 2, l) / P(H, l) * F21(a / 2, (a + 1) / 2 + l, H - k, z)
    return [lhs, _v(dh.dihedral_pair(_dp(p), z)[0])]


def _ev_dih32(p, z):
    a, k, l = p["a"], p["k"], p["l"]
    front = (P((a + 1) / 2, k) * P(a / 2, k + l + 1) / (P(H, k) * P(H, k + 1) * P(H, l))) * (-1) ** k
    lhs = front * pw(sq(z), 2 * k + 1) * F21((a + 1) / 2 + k, a / 2 + k + l + 1, Fraction(3, 2) + k, z)
    return [lhs, -_v(dh.dihedral_pair(_dp(p), z)[1])]


def _S(l: int, j: int, a):
    if j > l:
        return 0 * a
    return P(a, j) * P(Fraction(-l), j) / (fac(j) * P(Fraction(-2 * l), j)) * 2 ** j


def zeilberger_H(l: int, j: int, a):
    """Certificate with its removable singularity at j = l+1 cancelled."""
    if j == 0 or j - 1 > l:
        return 0 * a
    return -P(a, j) * Fraction(2) ** (j - 1) * P(Fraction(-l), j - 1) / (fac(j - 1) * P(Fraction(-2 * l), j - 1))


def zeilberger_H_printed(l: int, j: int, a):
    """-j(2l+1-j)/(2(l+1-j)) S(l, j); singular at j = l+1."""
    return Fraction(-j * (2 * l + 1 - j), 2 * (l + 1 - j)) * _S(l, j, a)


def _ev_zeilb(p, _z):
    a, l, j = p["a"], p["l"], p["j"]
    lhs = (2 * l + 1) * _S(l + 1, j, a) - (a + 1 + 2 * l) * _S(l, j, a)
    return [lhs, zeilberger_H(l, j + 1, a) - zeilberger_H(l, j, a)]


def _ev_f21at2(p, _z):
    a, l = p["a"], p["l"]
    return [F21(a, Fraction(-l), Fraction(-2 * l), 2), P((a + 1) / 2, l) / P(H, l)]


def _ev_f2f2rel(p, z):
    a, k, l = p["a"], p["k"], p["l"]
    s = sq(z)
    lhs = (1 + s) ** (k + l) * _v(appell_f2_rect(a, k, l, 2 * s / (1 + s), 2 / (1 + s)))
    c = (-1) ** l * P((a + 1) / 2, l) / P((a + 1) / 2 + k, l)
    rhs = c * (1 - s) ** (k + l) * _v(appell_f2_rect(-a - 2 * k - 2 * l, k, l, 2 * s / (s - 1), 2 / (1 - s)))
    return [lhs, rhs]


def _ev_f3f3rel(p, z):
    a, k, l = p["a"], p["k"], p["l"]
    s = sq(z)
    lhs = _v(appell_f3_rect(k + 1, l + 1, k, l, a + k + l + 1, (s - 1) / (2 * s), (1 - s) / 2))
    c = P(a, k + l) * P((a + 1) / 2 + k, l) / (P(1 + a + k + l, k + l) * P((a + 1) / 2, l))
    rhs = c * _v(appell_f3_rect(k + 1, l + 1, k, l, 1 - a - k - l, (s + 1) / (2 * s), (1 + s) / 2))
    return [lhs, rhs]


def _ev_eupf1(p, z):
    a, k, l = p["a"], p["k"], p["l"]
    c = a + k + l + 1
    w = 1 - 1 / z
    return [F21(a / 2, (a + 1) / 2 + l, c, 1 - z),
            pw(z, -a / 2) * F21(a / 2, (a + 1) / 2 + k, c, w),
            pw(sq(z), 2 * k + 1) * F21((a + 1) / 2 + k, a / 2 + k + l + 1, c, 1 - z),
            pw(z, -(a + 1) / 2 - l) * F21((a + 1) / 2 + l, a / 2 + k + l + 1, c, w)]


def _ev_eupf12(p, z):
    a, k, l = p["a"], p["k"], p["l"]
    c = H - k
    w = z / (z - 1)
    return [F21(a / 2, (a + 1) / 2 + l, c, z),
            pw(1 - z, -a - k - l) * F21(-a / 2 - k - l, (1 - a) / 2 - k, c, z),
            pw(1 - z, -a / 2) * F21(a / 2, -a / 2 - k - l, c, w),
            pw(1 - z, -(a + 1) / 2 - l) * F21((1 - a) / 2 - k, (a + 1) / 2 + l, c, w)]


def _ev_diha12a(p, z):
    a, k = p["a"], p["k"]
    s = sq(z)
    rhs = (pw(1 + s, -a) * F21(-k, a, -2 * k, 2 * s / (1 + s))
           + pw(1 - s, -a) * F21(-k, a, -2 * k, 2 * s / (s - 1))) / 2
    return [F21(a / 2, (a + 1) / 2, H - k, z), rhs]


def _ev_fpdihedr(p, x):
    a, k = p["a"], p["k"]
    return [F21(a / 2, (a + 1) / 2, a + k + 1, 4 * x / (x + 1) ** 2), pw(1 + x, a) * F21(-k, a, a + k + 1, x)]


def _ev_fpdihedr2(p, x):
    a, l = p["a"], p["l"]
    return [F21(a / 2, (a + 1) / 2 + l, a + l + 1, 4 * x * (1 - x)),
            F21(a, a + 2 * l + 1, a + l + 1, x),
            pw(1 - x, -a) * F21(-l, a, a + l + 1, x / (x - 1))]


def _ev_fpdihedr_sqrt(p, z):
    a, k = p["a"], p["k"]
    w = sq(1 - z)
    return [F21(a / 2, (a + 1) / 2, a + k + 1, z), pw((1 + w) / 2, -a) * F21(-k, a, a + k + 1, (1 - w) / (1 + w))]


def _ev_fpdihedr2a(p, z):
    a, l = p["a"], p["l"]
    w = sq(1 - z)
    return [F21(a / 2, (a + 1) / 2 + l, a + l + 1, z),
            pw((1 + w) / 2, -a) * F21(-l, a, a + l + 1, (w - 1) / (w + 1)),
            pw((1 + w) / 2, -a) * F21(-l, a, a + l + 1, 1 - 2 / z + 2 * w / z)]


def _T(A, B, C, x):
    return F21(A, B, C, x)


def _ev_termlz(p, x):
    a, k = p["a"], p["k"]
    c1 = Fraction(fac(k), fac(2 * k))
    return [_T(-k, a, -2 * k, x),
            (1 - x) ** k * _T(-k, -a - 2 * k, -2 * k, x / (x - 1)),
            c1 * P(a, k) * x ** k * _T(-k, k + 1, 1 - a - k, 1 / x),
            c1 * P(1 + a + k, k) * x ** k * _T(-k, k + 1, 1 + a + k, 1 - 1 / x),
            c1 * P(1 + a + k, k) * _T(-k, a, 1 + a + k, 1 - x),
            c1 * P(a, k) * (x - 1) ** k * _T(-k, -a - 2 * k, 1 - a - k, 1 / (1 - x))]


def _ev_termlz2(p, x):
    a, k = p["a"], p["k"]
    return [pw(1 - x, -a - k) * _T(-k, -a - 2 * k, -2 * k, x), pw(1 - x, -a) * _T(-k, a, -2 * k, x / (x - 1))]


def _ev_snonterm(p, x):
    a, k = p["a"], p["k"]
    c = (-1) ** k * fac(k) ** 2 * P(a, 2 * k + 1) / (fac(2 * k) * fac(2 * k + 1))
    lhs = c * x ** (2 * k + 1) * F21(k + 1, a + 2 * k + 1, 2 * k + 2, x)
    rhs = pw(1 - x, -a - k) * _T(-k, -a - 2 * k, -2 * k, x) - _T(-k, a, -2 * k, x)
    return [lhs, rhs]


def _ev_snonterm_quad(p, z):
    a, k = p["a"], p["k"]
    s = sq(z)
    return [F21(k + 1, a + 2 * k + 1, 2 * k + 2, 2 * s / (1 + s)),
            pw(1 + s, a + 2 * k + 1) * F21((a + 1) / 2 + k, a / 2 + k + 1, Fraction(3, 2) + k, z)]


def _ev_r2f3rel(p, x):
    a, k, l, y = p["a"], p["k"], p["l"], p["y"]
    lhs = _v(appell_f2_rect(a, k, l, x, y))
    c = Fraction(fac(k) * fac(l), fac(2 * k) * fac(2 * l)) * P(a, k + l)
    rhs = c * x ** k * y ** l * _v(appell_f3_rect(k + 1, l + 1, k, l, 1 - a - k - l, 1 / x, 1 / y))
    return [lhs, rhs]


def _ev_reverse32(p, x):
    a, k, l = p["a"], p["k"], p["l"]
    lhs = _v(kampe_211(a, -a - 2 * k - 2 * l, -k, -l, H - k - l, -2 * k, -2 * l, x, 1 - x))
    c = (P(a, 2 * k + 2 * l + 1) * fac(k) * fac(l) * x ** k * (1 - x) ** l
         / ((a + k + l) * P(H, k + l) * fac(2 * k) * fac(2 * l)))
    rhs = c * _v(kampe_122(H, k + 1, l + 1, -k, -l, a + k + l + 1, 1 - a - k - l, 1 / x, 1 / (1 - x)))
    return [lhs, rhs]


# -- symmetric squares ------------------------------------------------------------------

def _ev_flinear(p, z):
    a, b, c = p["A"], p["B"], p["C"]
    return [F21(a, b, c, z), pw(1 - z, c - a - b) * F21(c - a, c - b, c, z),
            pw(1 - z, -a) * F21(a, c - b, c, z / (z - 1)), pw(1 - z, -b) * F21(c - a, b, c, z / (z - 1))]


def _ev_quadr1(p, x):
    a, b = p["A"], p["B"]
    return [F21(a, b, (a + b + 1) / 2, x), F21(a / 2, b / 2, (a + b + 1) / 2, 4 * x * (1 - x))]


def _ev_clausen(p, x):
    A, B = p["A"], p["B"]
    return [F21(A, B, A + B + H, x) ** 2, F([2 * A, 2 * B, A + B], [2 * A + 2 * B, A + B + H], x)]


def _ev_exclausen(p, x):
    A, k = p["A"], p["k"]
    lhs = F([2 * A, -2 * A - 2 * k, -k], [H - k, -2 * k], x)
    c = P(2 * A, 2 * k + 1) ** 2 * fac(k) ** 2 / (2 * P(H, k) * P(H, k + 1) * fac(2 * k) * fac(2 * k + 1))
    rhs = F21(A, -A - k, H - k, x) ** 2 + c * x ** (2 * k + 1) * F21(A + k + H, H - A, k + Fraction(3, 2), x) ** 2
    return [lhs, rhs]


def _ev_symsq(p, z):
    a, k = p["a"], p["k"]
    lhs = pw(1 - z, -a) * F([-k, a, -a - 2 * k], [-2 * k, H - k], z / (z - 1))
    with mp.workdps(_MP_DPS):
        A, Z = _mpn(a), _mpn(z)
        c = 2 ** (4 * k) * fac(k) ** 4 * mp.rf(A, 2 * k + 1) ** 2 / (fac(2 * k) ** 2 * fac(2 * k + 1) ** 2)
        rhs = (mpF21(A / 2, (A + 1) / 2, H - k, Z) ** 2
               - c * Z ** (2 * k + 1) * mpF21((A + 1) / 2 + k, A / 2 + k + 1, Fraction(3, 2) + k, Z) ** 2)
        return [lhs, _mp_out(rhs)]


def _ev_symsq2(p, z):
    a, l = p["a"], p["l"]
    lhs = (Fraction(fac(2 * l) ** 2, 2 ** (4 * l) * fac(l) ** 2) * pw(1 - z, -a)
           * F([-l, a, -a - 2 * l], [-2 * l, H - l], 1 / (1 - z)))
    with mp.workdps(_MP_DPS):
        A, Z = _mpn(a), _mpn(z)
        rhs = (mp.rf((A + 1) / 2, l) ** 2 * mpF21(A / 2, (A + 1) / 2 + l, H, Z) ** 2
               - 4 * mp.rf(A / 2, l + 1) ** 2 * Z * mpF21((A + 1) / 2, A / 2 + l + 1, Fraction(3, 2), Z) ** 2)
        return [lhs, _mp_out(rhs)]


def _ev_genelem(p, z):
    a, k, l = p["a"], p["k"], p["l"]
    lhs = pw(1 - z, -a) * _v(kampe_211(a, -a - 2 * k - 2 * l, -k, -l, H - k - l, -2 * k, -2 * l,
                                       z / (z - 1), 1 / (1 - z)))
    with mp.workdps(_MP_DPS):
        A, Z, h = _mpn(a), _mpn(z), mp.mpf(1) / 2
        c1 = mp.rf((A + 1) / 2, l) * mp.rf((A + 1) / 2 + k, l) / (mp.rf(h, l) * mp.rf(k + h, l))
        c2 = (mp.rf((A + 1) / 2, k) * mp.rf((A + 1) / 2 + l, k) * mp.rf(A / 2, k + l + 1) ** 2
              / (mp.rf(h, k) * mp.rf(h, k + 1) ** 2 * mp.rf(h, l) * mp.rf(h, k + l)))
        rhs = (c1 * mpF21(A / 2, (A + 1) / 2 + l, h - k, Z) ** 2
               - c2 * Z ** (2 * k + 1) * mpF21((A + 1) / 2 + k, A / 2 + k + l + 1, h * 3 + k, Z) ** 2)
        return [lhs, _mp_out(rhs)]


_SLOW = Truncated(1e-17, 200000)


def _ev_geclausen(p, x):
    a, b, l = p["A"], p["B"], p["l"]
    c = P(H, l) * P(a + b + H, l) / (P(a + H, l) * P(b + H, l))
    rhs = c * _v(kampe_211(2 * a, 2 * b, a + b + l, -l, a + b + H, 2 * a + 2 * b + 2 * l, -2 * l, x, 1 - x, _SLOW))
    return [F21(a, b, a + b + l + H, x) ** 2, rhs]


def _ev_altaltclau(p, x):
    a, b, c = p["A"], p["B"], p["C"]
    lhs = F21(a, b, c, x) * F21(1 + a - c, 1 + b - c, 2 - c, x)
    rhs = pw(1 - x, c - a - b - H) * _v(kampe_122(H, a - b + H, a + b - c + H, b - a + H, c - a - b + H,
                                                  c, 2 - c, x, x / (x - 1), _SLOW))
    return [lhs, rhs]


def _ev_gealtclaust(p, z):
    a, k, l = p["a"], p["k"], p["l"]
    lhs = (F21(a / 2, (a + 1) / 2 + l, a + k + l + 1, 1 - z)
           * F21(-a / 2 - k - l, (1 - a) / 2 - k, 1 - a - k - l, 1 - z))
    rhs = z ** k * _v(kampe_122(H, k + 1, l + 1, -k, -l, a + k + l + 1, 1 - a - k - l, 1 - 1 / z, 1 - z))
    return [lhs, rhs]


def _ev_altaltclau2(p, z):
    a, l = p["a"], p["l"]
    lhs = F21(a / 2, (a + 1) / 2 + l, a + l + 1, 1 - z) * F21(-a / 2 - l, (1 - a) / 2, 1 - a - l, 1 - z)
    return [lhs, F([H, -l, l + 1], [1 - a - l, 1 + a + l], 1 - z)]


# -- degree-n transformations -----------------------------------------------------------

def _phi(n, x):
    t1, t2 = tr.theta_pair(n)
    x = float(x)
    return x * t2(x) ** 2 / t1(x) ** 2


def _ev_dhtra(p, _z):
    n = p["n"]
    t1, t2 = tr.theta_pair(n)
    spread = lambda q: tr.RatPoly([c if i % 2 == 0 else 0 for i, c in
                                   enumerate(v for cc in q.c for v in (cc, 0))])
    return [tr.RatPoly([1, -1]) ** n, spread(t1) - spread(t2).shift(1)]


def _ev_dhtrb(p, _z):
    n = p["n"]
    t1, t2 = tr.theta_pair(n)
    return [tr.RatPoly([1, -1]) ** n, t1 * t1 - (t2 * t2).shift(1)]


def _ev_theta1_hyp(p, _z):
    n = p["n"]
    return [tr.theta_pair(n)[0], _hyp_poly([Fraction(-n, 2), Fraction(-(n - 1), 2)], [H])]


def _ev_theta2_hyp(p, _z):
    n = p["n"]
    return [tr.theta_pair(n)[1], _hyp_poly([Fraction(-(n - 1), 2), Fraction(-(n - 2), 2)], [Fraction(3, 2)]).scale(n)]


def _ev_dhtr1(p, x):
    n, a = p["n"], p["a"]
    t1, t2 = (float(v) for v in (tr.theta_pair(n)[0](x), tr.theta_pair(n)[1](x)))
    return [F21(n * a / 2, (n * a + 1) / 2, H, x), pw(t1, -a) * F21(a / 2, (a + 1) / 2, H, x * t2 ** 2 / t1 ** 2)]


def _ev_dhtr2(p, x):
    n, a = p["n"], p["a"]
    t1, t2 = (float(v) for v in (tr.theta_pair(n)[0](x), tr.theta_pair(n)[1](x)))
    return [F21((n * a + 1) / 2, n * a / 2 + 1, Fraction(3, 2), x),
            pw(t1, -a - 1) * t2 / n * F21((a + 1) / 2, a / 2 + 1, Fraction(3, 2), x * t2 ** 2 / t1 ** 2)]


def _ev_dhtr3(p, x):
    n, a = p["n"], p["a"]
    t2 = float(tr.theta_pair(n)[1](x))
    return [F21(n * a / 2, -n * a / 2, H, x / (x - 1)), F21(a / 2, -a / 2, H, -x * t2 ** 2 / (1 - x) ** n)]


def _ev_dhtr4(p, x):
    n, a = p["n"], p["a"]
    t1 = float(tr.theta_pair(n)[0](x))
    return [F21(n * a / 2, (n * a + 1) / 2, n * a + 1, 1 - x),
            pw(t1 / 2 ** (n - 1), -a) * F21(a / 2, (a + 1) / 2, a + 1, (1 - x) ** n / t1 ** 2)]


def _dhtr3_rw_arg(n, x):
    if n % 2:
        return n * n * x * F21(Fraction(1 - n, 2), Fraction(1 + n, 2), Fraction(3, 2), x) ** 2
    return n * n * x * (1 - x) * F21(1 - Fraction(n, 2), 1 + Fraction(n, 2), Fraction(3, 2), x) ** 2


def _ev_dhtr3_rw(p, x):
    n, a = p["n"], p["a"]
    return [F21(n * a / 2, -n * a / 2, H, x), F21(a / 2, -a / 2, H, _dhtr3_rw_arg(n, x))]


def _ev_tcheb_T(p, _z):
    n, x = p["n"], Fraction(p["x"])
    T, _ = tr.chebyshev(n, x)
    return [T, x ** n * tr.theta_pair(n)[0]((x * x - 1) / (x * x))]


def _ev_tcheb_U(p, _z):
    n, x = p["n"], Fraction(p["x"])
    _, U = tr.chebyshev(n, x)
    return [U, x ** (n - 1) * tr.theta_pair(n)[1]((x * x - 1) / (x * x))]


def _ev_sqrtheta(p, _z):
    n = p["n"]
    t1, t2 = tr.theta_pair(n)
    return [tr.SqrtPoly([1], [-1]) ** n, tr.SqrtPoly(t1, -t2)]


def _filtered(vals):
    return tuple(sorted(Fraction(v) for v in vals if v != 1))


def _ev_ledpb(p, _z):
    n, a = p["n"], Fraction(p["a"])
    N, D = tr.dihedral_covering_map(n)
    return [_filtered([H, H, n * a]), tuple(tr.pullback_exponents(N, D, (H, a, H)))]


def _ev_ledpc(p, _z):
    n, a = p["n"], Fraction(p["a"])
    N, D = tr.dihedral_covering_map(n)
    N2, D2 = tr.compose_rational(N, D, tr.RatPoly([1, -2, 1]), tr.RatPoly([1, 2, 1]))
    deg = int(max(N2.degree, D2.degree))
    return [(2 * n,) + _filtered([1, n * a, n * a]), (deg,) + tuple(tr.pullback_exponents(N2, D2, (H, a, H)))]


def _ev_quatriv(p, _z):
    k, q = p["k"], Fraction(p["p"])
    got = tr.pullback_exponents(tr.RatPoly([0, 4]), tr.RatPoly([1, 2, 1]), (q, k + H, H))
    return [_filtered([2 * k + 1, q, q]), tuple(got)]


def _ev_quadih(p, _z):
    k, q = p["k"], Fraction(p["p"])
    got = tr.pullback_exponents(tr.RatPoly([0, 0, 1]), tr.RatPoly([1]), (H, k + H, q))
    return [_filtered([k + H, k + H, 2 * q]), tuple(got)]


# -- Klein coverings ------------------------------------------------------------------------

def _cov(p) -> tr.KleinCovering:
    return tr.klein_covering(p["k"], p["l"], p["n"], p["m"])


def _ev_insrel(p, _z):
    cov = _cov(p)
    return [tr.insrel_lhs(cov), (tr.RatPoly([1, -1]) ** cov.n * cov.psi ** cov.m).scale(cov.c_const)]


def _ev_id32q(p, _z):
    m = p["m"]
    e = tr.SqrtPoly([1], [1]) * tr.SqrtPoly([1], [Fraction(-1, m)]) ** m
    t3 = _hyp_poly([Fraction(-m, 2), Fraction(-(m + 1), 2)], [-H], Fraction(1, m * m))
    t4 = _hyp_poly([Fraction(-(m - 2), 2), Fraction(-(m - 3), 2)], [Fraction(5, 2)],
                   Fraction(1, m * m)).scale(Fraction(m * m - 1, 3 * m * m))
    return [e, tr.SqrtPoly(t3, t4.shift(1))]


def _ev_id32q_n2(p, _z):
    m = p["m"]
    e = tr.SqrtPoly([1], [1]) ** 2 * tr.SqrtPoly([1], [Fraction(-2, m)]) ** m
    t5 = _hyp_poly([Fraction(-(m + 1), 2), Fraction(-(m + 2), 2), Fraction(-m, m + 2)],
                   [-H, Fraction(-2 * (m + 1), m + 2)], Fraction(4, m * m))
    t6 = _hyp_poly([Fraction(-(m - 1), 2), Fraction(-(m - 2), 2), Fraction(m + 6, 2 * (m + 2))],
                   [Fraction(5, 2), Fraction(-(m - 2), 2 * (m + 2))],
                   Fraction(4, m * m)).scale(Fraction(2 * (m * m - 4), 3 * m * m))
    return [e, tr.SqrtPoly(t5, t6.shift(1))]


def _ev_gmpower(p, _z):
    cov = _cov(p)
    g = tr.klein_g(cov.k, cov.l, cov.n, cov.m)
    return [tr.SqrtPoly([1], [1]) ** cov.n * g ** cov.m, tr.SqrtPoly(cov.theta1, cov.theta2.shift(cov.k))]


def _ev_sdihedr(kind):
    def ev(p, z):
        m = p["m"]
        s = sq(z)
        if kind == 1:
            return [F21(-Fraction(1, 2 * m), H - Fraction(1, 2 * m), 1 - Fraction(1, m), 1 - z),
                    pw((1 + s) / 2, 1 / m)]
        return [pw(1 - z, 1 / m) * F21(Fraction(1, 2 * m), H + Fraction(1, 2 * m), 1 + Fraction(1, m), 1 - z),
                pw(2 * (1 - s), 1 / m)]
    return ev


def _klein_parts(p, x):
    cov = _cov(p)
    k, l, n, m = cov.k, cov.l, cov.n, cov.m
    r = Fraction(n, m)
    x = float(x)
    T1, T2, Psi = float(cov.theta1(x)), float(cov.theta2(x)), float(cov.psi(x))
    return cov, k, l, n, m, r, x, T1, T2, Psi


def _ev_klein1(p, x):
    cov, k, l, n, m, r, x, T1, T2, _ = _klein_parts(p, x)
    lhs = F21(-r / 2 - Fraction(k + l, 2), Fraction(1 - k + l, 2) - r / 2, H - k, x)
    phi = x ** (2 * k + 1) * T2 ** 2 / T1 ** 2
    rhs = (T1 / float(cov.theta1[0])) ** (1 / m) * F21(-Fraction(1, 2 * m), H - Fraction(1, 2 * m), H, phi)
    return [lhs, rhs]


def _ev_klein2(p, x):
    cov, k, l, n, m, r, x, T1, T2, _ = _klein_parts(p, x)
    lhs = F21(Fraction(1 + k - l, 2) - r / 2, Fraction(k + l, 2) + 1 - r / 2, Fraction(3, 2) + k, x)
    phi = x ** (2 * k + 1) * T2 ** 2 / T1 ** 2
    rhs = ((T1 / float(cov.theta1[0])) ** (1 / m - 1) * T2 / float(cov.theta2[0])
           * F21(H - Fraction(1, 2 * m), 1 - Fraction(1, 2 * m), Fraction(3, 2), phi))
    return [lhs, rhs]


def _ev_klein3(p, x):
    cov, k, l, n, m, r, x, T1, T2, Psi = _klein_parts(p, x)
    C = float(cov.c_const)
    lhs = F21(-r / 2 - Fraction(k + l, 2), r / 2 - Fraction(k + l, 2), H - k, x / (x - 1))
    arg = -x ** (2 * k + 1) * T2 ** 2 / (C * (1 - x) ** n * Psi ** m)
    rhs = ((Psi / float(cov.psi[0])) ** 0.5 * (1 - x) ** (-(k + l) / 2)
           * F21(-Fraction(1, 2 * m), Fraction(1, 2 * m), H, arg))
    return [lhs, rhs]


def _ev_klein4(p, x):
    cov, k, l, n, m, r, x, T1, T2, Psi = _klein_parts(p, x)
    C = float(cov.c_const)
    lhs = F21(-r / 2 - Fraction(k + l, 2), Fraction(1 - k + l, 2) - r / 2, 1 - r, 1 - x)
    arg = C * (1 - x) ** n * Psi ** m / T1 ** 2
    rhs = ((T1 / float(cov.theta1(1))) ** (1 / m)
           * F21(-Fraction(1, 2 * m), H - Fraction(1, 2 * m), 1 - Fraction(1, m), arg))
    return [lhs, rhs]


# -- degenerate and logarithmic cases -------------------------------------------------------

def _ev_zerof2(p, x):
    return [_v(appell_f2_triangular(p["m"], p["b"], p["c"], x, 2 - x)), 0]


def _ev_cycl2(p, z):
    lhs, rhs = dh.eval_cycl2(dh.DihedralParams(p["k"], p["l"], -p["m"]), z)
    return [lhs.value, rhs.value]


def _fodd(k, l, m, z):
    return F21(k - Fraction(m - 1, 2), k + l - Fraction(m, 2) + 1, Fraction(3, 2) + k, z)


def _feven(k, l, m, z):
    return F21(Fraction(-m, 2), l - Fraction(m - 1, 2), H - k, z)


def _ev_dihlog32(p, z):
    k, l, m = p["k"], p["l"], p["m"]
    return [_fodd(k, l, m, z), dh.eval_log_even_m(dh.DihedralParams(k, l, -m), z).value]


def _ev_logdih32(p, z):
    k, l, m = p["k"], p["l"], p["m"]
    return [_fodd(k, l, m, z), dh.eval_log_series(dh.DihedralParams(k, l, -m), z).value]


def _ev_logcross(p, z):
    q = dh.DihedralParams(p["k"], p["l"], -p["m"])
    return [dh.eval_log_even_m(q, z).value, dh.eval_log_series(q, z).value]


def _ev_logodd(p, z):
    k, l, m = p["k"], p["l"], p["m"]
    q = dh.DihedralParams(k, l, -m)
    if 2 * l < m < 2 * k:
        return [_fodd(k, l, m, z), dh.eval_log_odd_m(q, z, "TwoEllLess").value]
    return [_feven(k, l, m, z), dh.eval_log_odd_m(q, z, "TwoKLess").value]


def _ev_arctan(kind):
    def ev(_p, x):
        series, closed = dh.arctan_forms(kind, x)
        return [series.value, closed]
    return ev


# -- samplers for specific families -----------------------------------------------------------

def _s_akl(**kw):
    return lambda rng: _akl(rng, **kw)


def _s_AB(rng):
    while True:
        A, B = rng.uniform(-1.75, 1.75), rng.uniform(-1.75, 1.75)
        if min(_dist_int(2 * A), _dist_int(2 * B), _dist_int(A + B + 0.5), _dist_int(2 * A + 2 * B)) >= 0.2:
            return {"A": A, "B": B}


def _s_ABl(rng):
    d = _s_AB(rng)
    d["l"] = rng.randint(0, 3)
    return d


def _s_flin(rng):
    while True:
        A, B, C = rng.uniform(-2.5, 2.5), rng.uniform(-2.5, 2.5), rng.uniform(-2.5, 2.5)
        if min(_dist_int(C), _dist_int(A), _dist_int(B), _dist_int(C - A), _dist_int(C - B)) >= 0.2:
            return {"A": A, "B": B, "C": C}


def _s_quadr(rng):
    while True:
        A, B = rng.uniform(-3, 3), rng.uniform(-3, 3)
        if min(_dist_int(A), _dist_int(B), _dist_int((A + B + 1) / 2), _dist_int(A / 2), _dist_int(B / 2)) >= 0.2:
            return {"A": A, "B": B}


def _s_ABC(rng):
    while True:
        A, B, C = rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 2.5)
        if min(_dist_int(C), _dist_int(A - B), _dist_int(C - A - B), _dist_int(A), _dist_int(B),
               _dist_int(1 + A - C), _dist_int(1 + B - C)) >= 0.2:
            return {"A": A, "B": B, "C": C}


def _s_Ak(rng):
    while True:
        A = rng.uniform(-1.75, 1.75)
        if _dist_int(2 * A) >= 0.2:
            return {"A": A, "k": rng.randint(0, 4)}


def _s_na(rng):
    n = rng.randint(2, 6)
    while True:
        a = draw_a(rng)
        if _dist_int(n * a) >= 0.1 and _dist_int(n * a / 2) >= 0.1:
            return {"n": n, "a": a}


def _dhtr3_rw_items(parity: int):
    def items(rng):
        out = []
        for n in [v for v in range(2, 10) if v % 2 == parity][:3]:
            while True:
                a = draw_a(rng)
                if _dist_int(n * a / 2) >= 0.1:
                    break
            xmax = math.sin(math.pi / (2 * n)) ** 2
            out.extend(({"n": n, "a": a}, f * xmax) for f in (0.2, 0.5, 0.8))
        return out
    return items


def _ledp_items(nmax):
    def items(rng):
        return [({"n": n, "a": draw_a(rng, exact=True)}, None) for n in range(1, nmax + 1)]
    return items


def _quad_items(rng):
    return [({"k": k, "p": draw_a(rng, exact=True)}, None) for k in range(0, 7)]


def _gm_items(rng):
    return [(dict(zip("klnm", c)), None) for c in
            ((0, 0, 1, 2), (1, 0, 1, 2), (1, 1, 1, 3), (2, 1, 3, 2), (0, 2, 1, 2), (3, 3, 5, 4), (2, 3, 7, 5))]


def _zeilb_items(rng):
    out = []
    for l in range(0, 9):
        a = draw_a(rng, exact=True)
        out.extend(({"a": a, "l": l, "j": j}, None) for j in range(0, l + 2))
    return out


def _f21at2_items(rng):
    return [({"a": draw_a(rng, exact=True), "l": l}, None) for l in range(0, 13)]


def _r2f3_items(rng):
    out = []
    for _ in range(6):
        a = draw_a(rng, exact=True)
        k, l = rng.randint(0, 4), rng.randint(0, 4)
        y = rng.choice((Fraction(-13, 10), Fraction(7, 10), Fraction(3, 2), Fraction(-2, 5)))
        out.extend(({"a": a, "k": k, "l": l, "y": y}, x) for x in Z_GRID_EXACT[::3])
    return out


def _exact_akl_items(l_zero=False):
    def items(rng):
        out = []
        for _ in range(5):
            p = _akl(rng, exact=True, l_zero=l_zero)
            out.extend((p, x) for x in Z_GRID_EXACT[::2])
        return out
    return items


def _n_items(nmax):
    return lambda rng: [({"n": n}, None) for n in range(1, nmax + 1)]


def _tcheb_items(rng):
    pts = (Fraction(3, 5), Fraction(-7, 4), Fraction(2), Fraction(1, 3), Fraction(-5, 9))
    return [({"n": n, "x": x}, None) for n in range(1, 21) for x in pts]


def _insrel_items(rng):
    out = []
    for k in range(3):
        for l in range(3):
            for m in (2, 3, 5):
                for n in range(1, 2 * m + 1):
                    if math.gcd(n, m) == 1:
                        out.append(({"k": k, "l": l, "n": n, "m": m}, None))
    return out


_KLEIN_CASES = ((1, 0, 1, 2), (1, 1, 1, 3), (2, 1, 3, 2), (0, 2, 1, 2), (2, 2, 5, 3), (0, 1, 2, 3))


def _klein_items(xs):
    return lambda rng: [(dict(zip("klnm", c)), x) for c in _KLEIN_CASES for x in xs]


def _zerof2_items(rng):
    out = []
    for m in (1, 3, 5, 7, 9):
        for _ in range(10):
            while True:
                b, c = rng.uniform(-3, 3), rng.uniform(-3, 3)
                if _dist_int(2 * b) >= 0.1 and _dist_int(2 * c) >= 0.1:
                    break
            out.append(({"m": m, "b": b, "c": c}, rng.uniform(0.0, 2.0)))
    return out


def _cycl2_items(rng):
    out = []
    for k in range(1, 5):
        for l in range(1, 5):
            for m in range(1, 2 * min(k, l), 2):
                out.extend(({"k": k, "l": l, "m": m}, z) for z in (0.1, 0.25, 0.5, 0.75, 0.9))
    return out


def _log_even_items(zs):
    def items(rng):
        out = []
        for k in range(4):
            for l in range(4):
                for m in range(0, 2 * (k + l) + 1, 2):
                    out.extend(({"k": k, "l": l, "m": m}, z) for z in zs)
        return out
    return items


def _log_odd_items(rng):
    out = []
    for k in range(6):
        for l in range(6):
            for m in range(1, 12, 2):
                if 2 * l < m < 2 * k or 2 * k < m < 2 * l:
                    out.extend(({"k": k, "l": l, "m": m}, z) for z in (0.1, 0.3, 0.6))
    return out


def _arc_items(rng):
    return [({}, x) for x in (-0.9, -0.5, -0.1, 0.0, 0.1, 0.5, 0.9, 0.95)]


# -- the registry -----------------------------------------------------------------------------

T10, T9, T8 = numeric(1e-10), numeric(1e-9), numeric(1e-8)
_A = (_nonint("a"),)
_AKL = _A + _nonneg("k", "l")


def _D(id, anchor, family, params, domain, zdom, exactness, ev, sampler, z_valid=None, note=""):
    return IdentityDescriptor(id, anchor, family, tuple(params), tuple(domain), zdom, exactness, ev,
                              sampler, z_valid, note)


def _z_lt(f: Callable[[Mapping, Any], float], bound: float = 0.9):
    return lambda p, z: abs(f(p, z)) <= bound


def _build() -> list[IdentityDescriptor]:
    D = []
    for k, txt, par in ((1, "2F1(a/2,(a+1)/2;a+1;z) = ((1+sqrt(1-z))/2)^-a", ("a",)),
                        (2, "2F1(a/2,(a+1)/2;1/2;z) = ((1-sqrt z)^-a + (1+sqrt z)^-a)/2", ("a",)),
                        (3, "2F1((a+1)/2,(a+2)/2;3/2;z) = ((1-sqrt z)^-a - (1+sqrt z)^-a)/(2a sqrt z)", ("a",)),
                        (4, "2F1(1/2,1;3/2;z) = artanh(sqrt z)/sqrt z", ())):
        D.append(_D(f"dihedr{k}", txt, "basic", par, _A if par else (), (0.0, 0.95), T10, _ev_dihedr(k),
                    _grid_sampler(lambda r: {"a": draw_a(r)}) if par else _grid_sampler(lambda r: {}, draws=1)))
    D.append(_D("fpdihedr", "2F1(a/2,(a+1)/2;a+1;4x(1-x)) = 2F1(a,a+1;a+1;x) = (1-x)^-a", "basic", ("a",), _A,
                (0.0, 0.45), T10, _ev_fpdihedr_intro,
                _grid_sampler(lambda r: {"a": draw_a(r)}, zs=Z_GRID[:9])))
    # explicit dihedral functions
    D.append(_D("diha", "2F1(a/2,(a+1)/2+l;a+k+l+1;1-z) as z^{k/2}((1+sqrt z)/2)^{-a-k-l} times terminating F3",
                "explicit", "akl", _AKL, (0.05, 0.95), T10, _ev_diha, _grid_sampler(_s_akl())))
    D.append(_D("dihb", "second solution at z=1 via the a -> -a-2k-2l substitution", "explicit", "akl", _AKL,
                (0.05, 0.95), T10, _ev_dihb, _grid_sampler(_s_akl())))
    D.append(_D("dih12", "even dihedral 2F1 as the conjugation-invariant sum of two terminating F2",
                "explicit", "akl", _AKL, (0.05, 0.95), T10, _ev_dih12, _grid_sampler(_s_akl())))
    D.append(_D("dih32", "odd dihedral 2F1 as the conjugation-odd difference of two terminating F2",
                "explicit", "akl", _AKL, (0.05, 0.95), T10, _ev_dih32, _grid_sampler(_s_akl())))
    D.append(_D("zeilb", "first-order certificate recurrence for the 2F1(a,-l;-2l;2) summand", "explicit",
                ("a", "l", "j"), _A + _nonneg("l", "j"), None, EXACT, _ev_zeilb, _param_sampler(_zeilb_items),
                note="certificate H taken in its simplified form (removable singularity at j = l+1 cancelled)"))
    D.append(_D("f21at2", "2F1(a,-l;-2l;2) = ((a+1)/2)_l/(1/2)_l", "explicit", ("a", "l"), _A + _nonneg("l"),
                None, EXACT, _ev_f21at2, _param_sampler(_f21at2_items)))
    D.append(_D("f2f2rel", "terminating F2 at (2s/(1+s), 2/(1+s)) against its conjugate with a -> -a-2k-2l",
                "explicit", "akl", _AKL, (0.05, 0.95), T10, _ev_f2f2rel, _grid_sampler(_s_akl())))
    D.append(_D("f3f3rel", "terminating F3 with c = a+k+l+1 against c = 1-a-k-l at conjugate arguments",
                "explicit", "akl", _AKL, (0.05, 0.95), T10, _ev_f3f3rel, _grid_sampler(_s_akl())))
    D.append(_D("eupf1", "Euler-Pfaff images of the z=1 solution (arguments 1-z and 1-1/z)", "explicit", "akl",
                _AKL, (0.55, 0.95), T10, _ev_eupf1, _grid_sampler(_s_akl(), zs=Z_GRID[10:])))
    D.append(_D("eupf12", "Euler-Pfaff images of the even solution (arguments z and z/(z-1))", "explicit", "akl",
                _AKL, (0.05, 0.45), T10, _ev_eupf12, _grid_sampler(_s_akl(), zs=Z_GRID[:9])))
    # simple cases
    D.append(_D("diha12a", "l = 0 even solution with terminating 2F1(-k,a;-2k;.) sums", "simple", ("a", "k"),
                _A + _nonneg("k"), (0.05, 0.95), T10, _ev_diha12a, _grid_sampler(_s_akl(l_zero=True))))
    D.append(_D("eq-fpdihedr", "2F1(a/2,(a+1)/2;a+k+1;4x/(x+1)^2) = (1+x)^a 2F1(-k,a;a+k+1;x)", "simple",
                ("a", "k"), _A + _nonneg("k"), (0.05, 0.5), T10, _ev_fpdihedr,
                _grid_sampler(_s_akl(l_zero=True), zs=Z_GRID[:10])))
    D.append(_D("fpdihedr2", "2F1(a/2,(a+1)/2+l;a+l+1;4x(1-x)) = 2F1(a,a+2l+1;a+l+1;x) = Pfaff image",
                "simple", ("a", "l"), _A + _nonneg("l"), (0.05, 0.4), T10, _ev_fpdihedr2,
                _grid_sampler(_s_akl(k_zero=True), zs=Z_GRID[:8])))
    D.append(_D("fpdihedr-sqrt", "2F1(a/2,(a+1)/2;a+k+1;z) via sqrt(1-z) and a terminating 2F1", "simple",
                ("a", "k"), _A + _nonneg("k"), (0.05, 0.95), T10, _ev_fpdihedr_sqrt,
                _grid_sampler(_s_akl(l_zero=True))))
    D.append(_D("fpdihedr2a", "2F1(a/2,(a+1)/2+l;a+l+1;z) via sqrt(1-z) and a terminating 2F1", "simple",
                ("a", "l"), _A + _nonneg("l"), (0.05, 0.95), T10, _ev_fpdihedr2a,
                _grid_sampler(_s_akl(k_zero=True))))
    D.append(_D("termlz", "six terminating 2F1 forms of the same degree-k polynomial solution", "simple",
                ("a", "k"), _A + _nonneg("k"), (0.05, 0.95), EXACT, _ev_termlz,
                _param_sampler(_exact_akl_items(l_zero=True))))
    D.append(_D("termlz2", "the second terminating solution, two forms", "simple", ("a", "k"),
                _A + _nonneg("k"), (0.05, 0.95), T10, _ev_termlz2, _grid_sampler(_s_akl(l_zero=True))))
    D.append(_D("snonterm", "difference of terminating solutions equals an x^{2k+1} 2F1 series", "simple",
                ("a", "k"), _A + _nonneg("k"), (0.05, 0.95), T10, _ev_snonterm,
                _grid_sampler(_s_akl(l_zero=True))))
    D.append(_D("snonterm-quad", "quadratic identification of the series with the odd solution", "simple",
                ("a", "k"), _A + _nonneg("k"), (0.05, 0.5), T10, _ev_snonterm_quad,
                _grid_sampler(_s_akl(l_zero=True), zs=Z_GRID[:10]),
                note="power factor (1+sqrt z)^{a+2k+1}"))
    D.append(_D("r2f3rel", "terminating F2 reversed in both directions is a terminating F3", "explicit",
                ("a", "k", "l", "y"), _AKL, (0.05, 0.95), EXACT, _ev_r2f3rel, _param_sampler(_r2f3_items)))
    D.append(_D("reverse32", "terminating F^{2:1;1}_{1:1;1} reversed in both directions", "explicit", "akl",
                _AKL, (0.05, 0.95), EXACT, _ev_reverse32, _param_sampler(_exact_akl_items())))
    # symmetric squares
    D.append(_D("flinear", "Euler and Pfaff fractional-linear transformations of a generic 2F1", "basic",
                ("A", "B", "C"), (_nonint("C"),), (0.05, 0.45), T10, _ev_flinear,
                _grid_sampler(_s_flin, zs=Z_GRID[:9])))
    D.append(_D("quadr1", "2F1(a,b;(a+b+1)/2;x) = 2F1(a/2,b/2;(a+b+1)/2;4x(1-x))", "basic", ("A", "B"), (),
                (0.05, 0.35), T10, _ev_quadr1, _grid_sampler(_s_quadr, zs=Z_GRID[:7])))
    D.append(_D("clausen", "2F1(A,B;A+B+1/2;x)^2 = 3F2(2A,2B,A+B;2A+2B,A+B+1/2;x)", "symsq", ("A", "B"), (),
                (0.0, 0.95), T9, _ev_clausen, _grid_sampler(_s_AB)))
    D.append(_D("exclausen", "limit of the square identity at B = -A-k with a terminating 3F2", "symsq",
                ("A", "k"), _nonneg("k"), (0.05, 0.95), T9, _ev_exclausen, _grid_sampler(_s_Ak)))
    D.append(_D("symsq", "terminating 3F2 as a quadratic form in the l = 0 solutions", "symsq", ("a", "k"),
                _A + _nonneg("k"), (0.05, 0.95), T9, _ev_symsq, _grid_sampler(_s_akl(l_zero=True))))
    D.append(_D("symsq2", "terminating 3F2 at 1/(1-z) for k = 0", "symsq", ("a", "l"), _A + _nonneg("l"),
                (0.05, 0.95), T9, _ev_symsq2, _grid_sampler(_s_akl(k_zero=True))))
    D.append(_D("genelem", "terminating F^{2:1;1}_{1:1;1} as the elementary symmetric-square solution",
                "symsq", "akl", _AKL, (0.05, 0.95), T9, _ev_genelem, _grid_sampler(_s_akl())))
    D.append(_D("ge:clausen", "square of 2F1(A,B;A+B+l+1/2;x) as a one-way terminating F^{2:1;1}_{1:1;1}",
                "symsq", ("A", "B", "l"), _nonneg("l"), (0.05, 0.8), T9, _ev_geclausen,
                _grid_sampler(_s_ABl, zs=Z_GRID[:16])))
    D.append(_D("altaltclau", "product of the two local solutions at 0 as an F^{1:2;2}_{2:0;0} series",
                "symsq", ("A", "B", "C"), (_nonint("C"),), (0.05, 0.45), T9, _ev_altaltclau,
                _grid_sampler(_s_ABC, zs=Z_GRID[:9])))
    D.append(_D("ge:altclaust", "product of the two solutions at z = 1 as a terminating F^{1:2;2}_{2:0;0}",
                "symsq", "akl", _AKL, (0.05, 0.95), T9, _ev_gealtclaust, _grid_sampler(_s_akl())))
    D.append(_D("altaltclau2", "k = 0 product as a terminating 3F2(1/2,-l,l+1;1-a-l,1+a+l;1-z)", "symsq",
                ("a", "l"), _A + _nonneg("l"), (0.05, 0.95), T9, _ev_altaltclau2,
                _grid_sampler(_s_akl(k_zero=True))))
    # degree-n transformations
    D.append(_D("dhtra", "(1-x)^n = theta1(x^2) - x theta2(x^2)", "transform", ("n",), (_range("n", 1, 10**6),),
                None, EXACT, _ev_dhtra, _param_sampler(_n_items(64))))
    D.append(_D("dhtrb", "(1-x)^n = theta1(x)^2 - x theta2(x)^2", "transform", ("n",), (_range("n", 1, 10**6),),
                None, EXACT, _ev_dhtrb, _param_sampler(_n_items(64))))
    D.append(_D("theta1-hyp", "theta1 = 2F1(-n/2,-(n-1)/2;1/2;x)", "transform", ("n",),
                (_range("n", 1, 10**6),), None, EXACT, _ev_theta1_hyp, _param_sampler(_n_items(40))))
    D.append(_D("theta2-hyp", "theta2 = n 2F1(-(n-1)/2,-(n-2)/2;3/2;x)", "transform", ("n",),
                (_range("n", 1, 10**6),), None, EXACT, _ev_theta2_hyp, _param_sampler(_n_items(40))))
    tv = lambda f: (lambda p, x: abs(f(p, x)) <= 0.9)
    D.append(_D("dhtr1", "degree-n pull-back of the even solution", "transform", ("n", "a"),
                _A + (_range("n", 1, 64),), (0.0, 0.95), T10, _ev_dhtr1, _grid_sampler(_s_na),
                tv(lambda p, x: _phi(p["n"], x))))
    D.append(_D("dhtr2", "degree-n pull-back of the odd solution", "transform", ("n", "a"),
                _A + (_range("n", 1, 64),), (0.0, 0.95), T10, _ev_dhtr2, _grid_sampler(_s_na),
                tv(lambda p, x: _phi(p["n"], x))))
    D.append(_D("dhtr3", "degree-n pull-back in the z/(z-1) chart", "transform", ("n", "a"),
                _A + (_range("n", 1, 64),), (0.0, 0.45), T10, _ev_dhtr3, _grid_sampler(_s_na, zs=Z_GRID[:9]),
                tv(lambda p, x: float(x) * float(tr.theta_pair(p["n"])[1](x)) ** 2 / (1 - float(x)) ** p["n"])))
    D.append(_D("dhtr4", "degree-n pull-back of the solution at x = 1", "transform", ("n", "a"),
                _A + (_range("n", 1, 64),), (0.05, 0.95), T10, _ev_dhtr4, _grid_sampler(_s_na),
                tv(lambda p, x: (1 - float(x)) ** p["n"] / float(tr.theta_pair(p["n"])[0](x)) ** 2)))
    for par, name in ((1, "dhtr3-odd"), (0, "dhtr3-even")):
        D.append(_D(name, f"{'odd' if par else 'even'}-n rewrite with a squared 2F1 argument (near x = 0)",
                    "transform", ("n", "a"), _A + (_range("n", 1, 64),), (0.0, 1.0), T10, _ev_dhtr3_rw,
                    _param_sampler(_dhtr3_rw_items(par)),
                    lambda p, x: float(x) < math.sin(math.pi / (2 * p["n"])) ** 2,
                    note="holds for x < sin^2(pi/(2n)), where n*arcsin(sqrt x) < pi/2"))
    D.append(_D("sqrtheta", "(1-sqrt x)^n = theta1(x) - sqrt x theta2(x)", "transform", ("n",),
                (_range("n", 1, 10**6),), None, EXACT, _ev_sqrtheta, _param_sampler(_n_items(64))))
    eb = _A + (_range("n", 1, 10**4),)
    D.append(_D("ledpb", "degree-n covering: exponent differences (1/2,1/2,a) pull back to (1/2,1/2,na)",
                "transform", ("n", "a"), eb, None, EXACT, _ev_ledpb, _param_sampler(_ledp_items(16)),
                note="differences equal to 1 (non-singular points) are dropped on both sides"))
    D.append(_D("ledpc", "degree-2n composite with the quadratic map: (1/2,1/2,p) pulls back to (1,np,np)",
                "transform", ("n", "a"), eb, None, EXACT, _ev_ledpc, _param_sampler(_ledp_items(8)),
                note="first tuple entry is the covering degree"))
    D.append(_D("quadih", "quadratic map x^2: (1/2,k+1/2,p) pulls back to (k+1/2,k+1/2,2p)", "transform",
                ("k", "p"), _nonneg("k"), None, EXACT, _ev_quadih, _param_sampler(_quad_items)))
    D.append(_D("quatriv", "quadratic map 4x/(1+x)^2: (1/2,k+1/2,p) pulls back to (2k+1,p,p)", "transform",
                ("k", "p"), _nonneg("k"), None, EXACT, _ev_quatriv, _param_sampler(_quad_items)))
    D.append(_D("tchebysh-T", "T_n(x) = x^n theta1((x^2-1)/x^2)", "transform", ("n", "x"),
                (_range("n", 1, 10**6),), None, EXACT, _ev_tcheb_T, _param_sampler(_tcheb_items)))
    D.append(_D("tchebysh-U", "U_{n-1}(x) = x^{n-1} theta2((x^2-1)/x^2)", "transform", ("n", "x"),
                (_range("n", 1, 10**6),), None, EXACT, _ev_tcheb_U, _param_sampler(_tcheb_items)))
    # Klein coverings
    kl = _nonneg("k", "l") + (Constraint("m >= 2, n >= 1, gcd(n, m) = 1",
                                         lambda p: p["m"] >= 2 and p["n"] >= 1 and math.gcd(p["n"], p["m"]) == 1),)
    D.append(_D("insrel", "Theta1^2 - x^{2k+1} Theta2^2 = C (1-x)^n Psi^m", "klein", "klnm", kl, None, EXACT,
                _ev_insrel, _param_sampler(_insrel_items),
                note="C carries no 4^n factor; k = l = 0 reduces to (1-x)^n = theta1^2 - x theta2^2"))
    D.append(_D("id32q", "(1+sqrt x)(1-sqrt x/m)^m split into two 2F1 polynomials", "klein", ("m",),
                (_range("m", 2, 10**6),), None, EXACT, _ev_id32q,
                _param_sampler(lambda r: [({"m": m}, None) for m in range(2, 16)])))
    D.append(_D("id32q-n2", "(1+sqrt x)^2(1-2 sqrt x/m)^m split into two 3F2 polynomials", "klein", ("m",),
                (Constraint("m odd >= 3", lambda p: p["m"] >= 3 and p["m"] % 2 == 1),), None, EXACT,
                _ev_id32q_n2, _param_sampler(lambda r: [({"m": m}, None) for m in range(3, 16, 2)])))
    D.append(_D("gmpower", "(1+sqrt x)^n G^m splits into Theta1 + x^{k+1/2} Theta2", "klein", "klnm", kl, None,
                EXACT, _ev_gmpower, _param_sampler(_gm_items)))
    for i in (1, 2):
        D.append(_D(f"sdihedr{i}", "local solution at z = 1 of the standard (1/2,1/2,1/m) equation", "klein",
                    ("m",), (_range("m", 2, 10**6),), (0.05, 0.95), T10, _ev_sdihedr(i),
                    _grid_sampler(lambda r: {"m": r.randint(2, 12)}),
                    note="" if i == 1 else "right side (2(1-sqrt z))^{1/m}; the printed ((1-sqrt z)/2)^{1/m} is off by 4^{1/m}"))
    near0, near1 = (0.005, 0.02), (0.98, 0.995)
    for i, ev, xs in ((1, _ev_klein1, near0), (2, _ev_klein2, near0), (3, _ev_klein3, near0), (4, _ev_klein4, near1)):
        D.append(_D(f"klein-tr{i}", "algebraic transformation induced by the Klein covering", "klein", "klnm", kl,
                    (0.0, 1.0), T10, ev, _param_sampler(_klein_items(xs)),
                    note="valid in a neighbourhood of " + ("x = 0" if i < 4 else "x = 1")))
    # degenerate / logarithmic
    D.append(_D("zerof2", "triangular F2(-m;b,c;2b,2c;x,2-x) vanishes for odd m", "degenerate", ("m", "b", "c"),
                (Constraint("m odd positive", lambda p: p["m"] > 0 and p["m"] % 2 == 1),), (-10.0, 10.0),
                numeric(1e-12), _ev_zerof2, _param_sampler(_zerof2_items)))
    D.append(_D("cycl2", "Z/2 relation between the z = 1 solution and two terminating 2F1", "degenerate", "klm",
                _nonneg("k", "l", "m") + (Constraint("m odd, m < 2 min(k,l)",
                                                     lambda p: p["m"] % 2 == 1 and p["m"] < 2 * min(p["k"], p["l"])),),
                (0.05, 0.95), numeric(1e-11), _ev_cycl2, _param_sampler(_cycl2_items),
                note="first upper parameters (m+1)/2-k and (m+1)/2-l"))
    lg = _nonneg("k", "l", "m") + (Constraint("m even, m <= 2(k+l)",
                                              lambda p: p["m"] % 2 == 0 and p["m"] <= 2 * (p["k"] + p["l"])),)
    D.append(_D("dihlog32", "log-case odd solution assembled from log((1+s)/(1-s)) and F2-dagger sums",
                "degenerate", "klm", lg, (0.05, 0.95), T8, _ev_dihlog32,
                _param_sampler(_log_even_items((0.1, 0.2, 0.3, 0.6, 0.9)))))
    D.append(_D("logdih32", "log-case odd solution as an expansion around z = 1", "degenerate", "klm", lg,
                (0.3, 0.95), T8, _ev_logdih32, _param_sampler(_log_even_items((0.3, 0.6, 0.9))),
                note="log term uses 2F1(l-(m-1)/2,-m/2;k+l-m+1;1-z)"))
    D.append(_D("dihlog32-cross", "derivative construction against the z = 1 expansion", "degenerate", "klm",
                lg, (0.3, 0.95), T8, _ev_logcross, _param_sampler(_log_even_items((0.3, 0.7)))))
    D.append(_D("dihlog-odd", "odd a = -m log cases (2l < m < 2k or 2k < m < 2l)", "degenerate", "klm",
                _nonneg("k", "l", "m") + (Constraint("m odd, 2l < m < 2k or 2k < m < 2l",
                                                     lambda p: p["m"] % 2 == 1 and (2 * p["l"] < p["m"] < 2 * p["k"]
                                                                                    or 2 * p["k"] < p["m"] < 2 * p["l"])),),
                (0.05, 0.95), T8, _ev_logodd, _param_sampler(_log_odd_items)))
    D.append(_D("arctan", "2F1(1/2,1;3/2;-x^2) = arctan(x)/x", "degenerate", (), (), (-0.99, 0.99), T10,
                _ev_arctan("Arctan"), _param_sampler(_arc_items)))
    D.append(_D("arcsin", "2F1(1/2,1/2;3/2;x^2) = arcsin(x)/x", "degenerate", (), (), (-0.99, 0.99), T10,
                _ev_arctan("Arcsin"), _param_sampler(_arc_items)))
    return D


_CATALOG: list[IdentityDescriptor] = _build()
_BY_ID = {d.id: d for d in _CATALOG}
assert len(_BY_ID) == len(_CATALOG), "duplicate identity id"


def list_identities() -> list[IdentityDescriptor]:
    return list(_CATALOG)


def lookup(identity_id: str) -> IdentityDescriptor:
    try:
        return _BY_ID[identity_id]
    except KeyError:
        raise KeyError(f"unknown identity {identity_id!r}") from None


# -- residual engine ------------------------------------------------------------------------------

def _is_exact_obj(v) -> bool:
    if isinstance(v, (tr.RatPoly, tr.SqrtPoly)):
        return True
    if isinstance(v, tuple):
        return all(_is_exact_obj(x) for x in v)
    return is_exact(v)


_REF_POINT = Fraction(1, 3)


def _as_complex(v) -> complex:
    if isinstance(v, tr.RatPoly):
        return complex(v(_REF_POINT))
    if isinstance(v, tr.SqrtPoly):
        return complex(v(_REF_POINT))
    if isinstance(v, tuple):
        return _as_complex(v[0])
    return complex(v)


def _exact_diff(u, v) -> float:
    if isinstance(u, (tr.RatPoly, tr.SqrtPoly)) or isinstance(v, (tr.RatPoly, tr.SqrtPoly)):
        if u == v:
            return 0.0
        if isinstance(u, tr.RatPoly) and isinstance(v, tr.RatPoly):
            return max(abs(float(c)) for c in (u - v).c)
        return math.inf
    if isinstance(u, tuple) or isinstance(v, tuple):
        if not (isinstance(u, tuple) and isinstance(v, tuple)) or len(u) != len(v):
            return math.inf
        return max((_exact_diff(x, y) for x, y in zip(u, v)), default=0.0)
    return abs(float(Fraction(u) - Fraction(v)))


def eval_identity(identity_id: str, params: Mapping | None = None, z=None,
                  tol: float | None = None) -> ResidualReport:
    d = lookup(identity_id)
    params = dict(params or {})
    d.check_domain(params, z)
    values = list(d.evaluator(params, z))
    v0 = values[0]
    exact = all(_is_exact_obj(v) for v in values)
    worst_abs, worst_rel, worst_v = 0.0, 0.0, values[1]
    for v in values[1:]:
        if exact:
            a = _exact_diff(v0, v)
            scale = max(abs(_as_complex(v0)), abs(_as_complex(v)), 1.0)
        else:
            c0, c1 = _as_complex(v0), _as_complex(v)
            a = abs(c0 - c1)
            scale = max(abs(c0), abs(c1), 1.0)
        r = a / scale if math.isfinite(a) else math.inf
        if r > worst_rel or (r == worst_rel and a > worst_abs):
            worst_abs, worst_rel, worst_v = a, r, v
    if not all(math.isfinite(abs(_as_complex(v))) for v in values):
        worst_rel = worst_abs = math.inf
    if exact:
        passed = worst_abs == 0.0
    else:
        if tol is None:
            tol = d.tol if d.exactness.kind == "Numeric" else FLOAT_FALLBACK_TOL
        passed = worst_rel <= tol
    return ResidualReport(d.id, params, z, _as_complex(v0), _as_complex(worst_v), worst_abs, worst_rel,
                          passed, exact)


def default_samples(identity_id: str, config: SamplerConfig = SamplerConfig()) -> list[tuple[dict, Any]]:
    d = lookup(identity_id)
    # per-identity stream so adding identities does not perturb the others
    rng = random.Random(f"{config.seed}:{d.id}")
    if config.n_max is not None and d.params == ("n",):
        pairs = [({"n": n}, None) for n in range(1, config.n_max + 1)]
    else:
        pairs = d.sampler(rng, config.draws)
    out = []
    for p, z in pairs:
        if d.z_valid is not None and not d.z_valid(p, z):
            continue
        out.append((p, z))
    if config.max_samples is not None:
        out = out[: config.max_samples]
    return out


def sweep(identity_id: str, config: SamplerConfig = SamplerConfig()) -> tuple[list[ResidualReport], SweepSummary]:
    reports = [eval_identity(identity_id, p, z, config.tol) for p, z in default_samples(identity_id, config)]
    worst = max(reports, key=lambda r: r.rel_residual, default=None)
    summary = SweepSummary(identity_id, len(reports), sum(not r.passed for r in reports),
                           worst.rel_residual if worst else 0.0, worst.params if worst else None,
                           worst.z if worst else None, all(r.exact for r in reports))
    return reports, summary


def sweep_all(config: SamplerConfig = SamplerConfig(), ids: Iterable[str] | None = None):
    ids = list(ids) if ids is not None else [d.id for d in _CATALOG]
    all_reports, summaries = [], []
    for i in ids:
        reps, summ = sweep(i, config)
        all_reports.extend(reps)
        summaries.append(summ)
    return all_reports, summaries


# -- export -------------------------------------------------------------------------------------

CSV_HEADER = ["id", "params", "z", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "rel_residual", "pass"]


def reports_to_csv(reports: Iterable[ResidualReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in reports:
        w.writerow(r.to_row())
    return buf.getvalue()


def summaries_to_json(summaries: Iterable[SweepSummary]) -> str:
    s = list(summaries)
    return json.dumps({"identities": [x.to_dict() for x in s],
                       "failures": sum(x.failures for x in s),
                       "samples": sum(x.samples for x in s)}, indent=2, sort_keys=True)


def _zstr(z) -> str:
    if z is None:
        return ""
    if isinstance(z, Fraction):
        return str(z)
    return repr(z)


def _jsonable(obj):
    if obj is None:
        return None
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    return obj
