import math
from fractions import Fraction

import mpmath as mp
import pytest
from hypothesis import given, strategies as st

from dihedral_hpg.numcore import (BranchCutError, DomainError, binomial, digamma, digamma_exact, harmonic,
                                  nonpositive_int, parse_scalar, pochhammer, pochhammer_derivative, power,
                                  sqrt_principal)

rats = st.fractions(min_value=-20, max_value=20, max_denominator=50)


class TestPochhammer:
    def test_empty_product(self):
        assert pochhammer(Fraction(7, 3), 0) == 1
        assert pochhammer(0.3, 0) == 1

    def test_vanishing_factor(self):
        assert pochhammer(-2, 3) == 0

    def test_half(self):
        assert pochhammer(Fraction(1, 2), 2) == Fraction(3, 4)

    @given(rats, st.integers(0, 50))
    def test_recurrence_exact(self, a, N):
        assert pochhammer(a, N + 1) == pochhammer(a, N) * (a + N)

    @given(st.floats(-5, 5), st.integers(0, 30))
    def test_matches_mpmath(self, a, N):
        assert pochhammer(a, N) == pytest.approx(float(mp.rf(a, N)), rel=1e-12, abs=1e-300)


class TestPochhammerDerivative:
    def test_examples(self):
        assert pochhammer_derivative(0, 1) == 1
        assert pochhammer_derivative(0, 0) == 0
        assert pochhammer_derivative(5, 0) == 0
        assert pochhammer_derivative(2, 1) == 1

    @pytest.mark.parametrize("m", range(9))
    @pytest.mark.parametrize("N", range(1, 9))
    def test_finite_difference(self, m, N):
        h = 1e-6
        fd = (pochhammer(-m + h, N) - pochhammer(-m - h, N)) / (2 * h)
        exact = float(pochhammer_derivative(m, N))
        assert abs(fd - exact) <= 1e-5 * max(abs(exact), 1.0)

    def test_is_rational(self):
        assert isinstance(pochhammer_derivative(3, 7), Fraction)


class TestDigamma:
    def test_values(self):
        assert digamma(1) == pytest.approx(-0.577215664902, abs=1e-12)
        assert digamma(0.5) == pytest.approx(-1.963510026021, abs=1e-12)

    @given(st.floats(0.05, 40))
    def test_recurrence(self, x):
        assert digamma(x + 1) - digamma(x) == pytest.approx(1 / x, rel=1e-11, abs=1e-12)

    @given(st.floats(1e-3, 60))
    def test_matches_mpmath(self, x):
        assert digamma(x) == pytest.approx(float(mp.digamma(x)), rel=1e-11, abs=1e-11)

    def test_nonpositive_rejected(self):
        with pytest.raises(DomainError):
            digamma(-1.5)

    @pytest.mark.parametrize("m", range(31))
    def test_harmonic_difference(self, m):
        d = digamma_exact(m + 1) - digamma_exact(1)
        assert d.gamma_coeff == 0 and d.ln2_coeff == 0
        assert d.rational == harmonic(m)
        assert abs(digamma(m + 1) - digamma(1) - float(harmonic(m))) < 1e-12

    def test_half_integer_exact(self):
        assert float(digamma_exact(Fraction(1, 2))) == pytest.approx(-1.963510026021, abs=1e-12)
        assert float(digamma_exact(Fraction(7, 2))) == pytest.approx(float(mp.digamma(3.5)), abs=1e-14)


class TestSqrt:
    def test_examples(self):
        assert sqrt_principal(0.25) == 0.5
        assert sqrt_principal(1) == 1
        assert sqrt_principal(1j) == pytest.approx((math.sqrt(2) / 2) * (1 + 1j))
        assert sqrt_principal(Fraction(9, 4)) == Fraction(3, 2)

    @given(st.complex_numbers(max_magnitude=1e6, allow_nan=False, allow_infinity=False)
           .filter(lambda z: abs(z) > 1e-6 and not (z.imag == 0 and z.real < 0)))
    def test_square(self, z):
        s = complex(sqrt_principal(z))
        assert abs(s * s - z) <= 1e-14 * abs(z) * 4
        assert s.real >= 0

    def test_strict_cut(self):
        with pytest.raises(BranchCutError):
            sqrt_principal(-2.0, strict=True)


class TestMisc:
    def test_binomial(self):
        assert binomial(2, 1) == 2
        assert binomial(5, 7) == 0
        assert binomial(6, 3) == 20

    def test_parse_scalar(self):
        assert parse_scalar("3/4") == Fraction(3, 4)
        assert parse_scalar("7") == 7
        # decimal literals stay exact
        assert parse_scalar("0.25") == Fraction(1, 4)
        assert parse_scalar("1e-3") == Fraction(1, 1000)
        assert parse_scalar("1+2i") == 1 + 2j
        with pytest.raises(ValueError):
            parse_scalar("abc")

    def test_nonpositive_int(self):
        assert nonpositive_int(-3) == 3
        assert nonpositive_int(Fraction(-2)) == 2
        assert nonpositive_int(0.5) is None
        assert nonpositive_int(2) is None

    def test_power_exact(self):
        assert power(Fraction(2, 3), 3) == Fraction(8, 27)
        assert power(Fraction(4, 9), Fraction(1, 2)) == pytest.approx(2 / 3)
        assert complex(power(2.0, 0.5)) == pytest.approx(math.sqrt(2))

    def test_domain_error_is_value_error(self):
        assert issubclass(DomainError, ValueError)
