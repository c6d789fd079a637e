import math
from fractions import Fraction

import mpmath as mp
import pytest
from hypothesis import assume, given, settings, strategies as st

from dihedral_hpg.hypseries import (BudgetExceeded, NonConvergent, NotTerminating, PoleAtC, Truncated,
                                    appell_f2_rect, appell_f2_triangular, appell_f3_rect, f2_dagger_rect,
                                    gauss_2f1, hpg_3f2, hyp_pfq, kampe_122, kampe_211)

T = Truncated(1e-16, 100000)
Q = Fraction


def mp_f2(a, b1, b2, c1, c2, x, y, I, J):
    """Brute-force Appell F2 double sum on a rectangle, in mpmath."""
    with mp.workdps(40):
        return +sum(mp.rf(a, i + j) * mp.rf(b1, i) * mp.rf(b2, j) / (mp.rf(c1, i) * mp.rf(c2, j)
                    * mp.factorial(i) * mp.factorial(j)) * mp.mpf(x) ** i * mp.mpf(y) ** j
                    for i in range(I + 1) for j in range(J + 1))


class TestGauss:
    def test_origin(self):
        assert gauss_2f1(0.3, 0.7, 1.9, 0, T).value == 1

    def test_log_closed_form(self):
        assert gauss_2f1(1, 1, 2, 0.5, T).value.real == pytest.approx(2 * math.log(2), abs=1e-13)

    @given(st.floats(-5, 5), st.floats(0.1, 5), st.fractions(-1, 1, max_denominator=30))
    def test_two_term(self, b, c, z):
        hv = gauss_2f1(-1, Q(b).limit_denominator(1000), Q(c).limit_denominator(1000), z)
        bq, cq = Q(b).limit_denominator(1000), Q(c).limit_denominator(1000)
        assert hv.exact and hv.rational == 1 - bq * z / cq

    @settings(max_examples=60)
    @given(st.floats(-3, 3), st.floats(-3, 3), st.floats(0.2, 4), st.floats(-0.8, 0.8))
    def test_against_mpmath(self, a, b, c, z):
        ref = complex(mp.hyp2f1(a, b, c, z))
        got = gauss_2f1(a, b, c, z, T)
        assert abs(got.value - ref) <= 1e-11 * max(1.0, abs(ref))

    def test_errors(self):
        with pytest.raises(NonConvergent):
            gauss_2f1(1, 1, 2, 1.5, T)
        with pytest.raises(PoleAtC):
            gauss_2f1(1, 1, -2, 0.3, T)
        with pytest.raises(NotTerminating):
            gauss_2f1(0.5, 1, 2, 0.3)
        with pytest.raises(BudgetExceeded):
            gauss_2f1(1, 1, 2, 0.999, Truncated(1e-14, 50))

    def test_terminating_before_pole(self):
        # (-2)_j vanishes before (-4)_j does
        hv = gauss_2f1(-2, 1, -4, Q(1, 2))
        assert hv.exact and hv.rational == 1 + Q(-2) * 1 / (-4) * Q(1, 2) + Q(-2 * -1 * 1 * 2, -4 * -3 * 2) * Q(1, 4)

    def test_abs_err_covers_truth(self):
        hv = gauss_2f1(0.3, 0.4, 0.9, 0.7, T)
        ref = complex(mp.hyp2f1(0.3, 0.4, 0.9, 0.7))
        assert abs(hv.value - ref) <= hv.abs_err * 10 + 1e-16


class TestPFQ:
    def test_3f2_origin(self):
        assert hpg_3f2(0.1, 0.2, 0.3, 0.4, 0.5, 0, T).value == 1

    @given(st.fractions(-5, 5, max_denominator=20), st.fractions(-5, 5, max_denominator=20),
           st.fractions(Q(1, 10), 5, max_denominator=20), st.fractions(Q(1, 10), 5, max_denominator=20),
           st.fractions(-2, 2, max_denominator=20))
    def test_3f2_two_term(self, a2, a3, b1, b2, z):
        assert hpg_3f2(-1, a2, a3, b1, b2, z).rational == 1 - a2 * a3 / (b1 * b2) * z

    def test_generic_matches_mpmath(self):
        ref = complex(mp.hyper([0.2, 0.3, 0.4], [0.9, 1.3], 0.6))
        assert hyp_pfq([0.2, 0.3, 0.4], [0.9, 1.3], 0.6, T).value == pytest.approx(ref, rel=1e-12)


class TestAppellF2:
    def test_trivial(self):
        assert appell_f2_rect(Q(3, 7), 0, 0, Q(1, 3), Q(2, 5)).rational == 1

    def test_cancellation(self):
        x = Q(1, 3)
        assert appell_f2_rect(-1, 1, 1, x, 2 - x).rational == 0

    @given(st.fractions(-4, 4, max_denominator=20), st.fractions(-2, 2, max_denominator=20))
    def test_two_term(self, a, x):
        assert appell_f2_rect(a, 1, 0, x, Q(3, 5)).rational == 1 + a * x / 2

    @settings(max_examples=25, deadline=None)
    @given(st.floats(-3, 3), st.integers(0, 4), st.integers(0, 4), st.floats(-2, 2), st.floats(-2, 2))
    def test_against_bruteforce(self, a, k, l, x, y):
        # rectangular F2(a; -k, -l; -2k, -2l)
        ref = mp_f2(a, -k, -l, -2 * k, -2 * l, x, y, k, l)
        got = appell_f2_rect(a, k, l, x, y)
        assert abs(got.value - complex(ref)) <= 1e-10 * max(1.0, abs(complex(ref)))


class TestTriangularF2:
    def test_zero_m(self):
        assert appell_f2_triangular(0, 0.7, 0.2, 0.3, 0.4).value == 1

    def test_m1(self):
        x = 0.4
        assert abs(appell_f2_triangular(1, 0.7, 0.2, x, 2 - x).value) < 1e-14

    def test_vanishing_example(self):
        assert abs(appell_f2_triangular(3, 0.7, -0.3, 0.4, 1.6).value) < 1e-12

    @settings(max_examples=40)
    @given(st.sampled_from([1, 3, 5, 7, 9]), st.floats(-3, 3), st.floats(-3, 3), st.floats(0, 2))
    def test_plain_double_within_error_bound(self, m, b, c, x):
        assume(all(abs(2 * v - round(2 * v)) > 1e-3 for v in (b, c)))
        hv = appell_f2_triangular(m, b, c, x, 2 - x, lift_floats=False)
        assert abs(hv.value) <= hv.abs_err

    @given(st.sampled_from([1, 3, 5, 7]), st.fractions(-3, 3, max_denominator=12),
           st.fractions(-3, 3, max_denominator=12), st.fractions(0, 2, max_denominator=12))
    def test_exact_vanishing(self, m, b, c, x):
        assume(all((2 * v).denominator != 1 for v in (b, c)))
        hv = appell_f2_triangular(m, b, c, x, 2 - x)
        assert hv.exact and hv.rational == 0


class TestAppellF3:
    def test_trivial(self):
        assert appell_f3_rect(Q(2), Q(5), 0, 0, Q(7, 3), Q(1, 3), Q(1, 5)).rational == 1

    @given(st.fractions(-3, 3, max_denominator=20).filter(lambda a: a + 2 != 0), st.fractions(-2, 2, max_denominator=9))
    def test_two_term(self, a, x):
        assert appell_f3_rect(2, 1, 1, 0, a + 2, x, Q(1, 5)).rational == 1 - 2 * x / (a + 2)


class TestDagger:
    def test_zero_rectangle(self):
        assert f2_dagger_rect(3, 0, 0, 0.3, 0.4).value == 0

    def test_single_term(self):
        x = Q(2, 7)
        assert f2_dagger_rect(0, 1, 0, x, Q(1, 3)).rational == x / 2

    @pytest.mark.parametrize("x,y", [(Q(1, 3), Q(2, 5)), (Q(-1, 2), Q(3, 4)), (Q(9, 10), Q(-1, 5))])
    def test_finite_difference(self, x, y):
        h = 1e-6
        fd = (appell_f2_rect(-2 + h, 1, 1, float(x), float(y)).value
              - appell_f2_rect(-2 - h, 1, 1, float(x), float(y)).value) / (2 * h)
        got = f2_dagger_rect(2, 1, 1, x, y)
        assert got.exact
        assert abs(complex(got.rational) - fd) <= 1e-6 * max(1, abs(fd))


class TestKampe:
    def test_211_trivial(self):
        assert kampe_211(1, 2, 0, 0, 3, 4, 5, 0.3, 0.2).value == pytest.approx(1)

    def test_122_trivial(self):
        assert kampe_122(0.3, 0, 0, 1, 1, 2, 3, 0.1, 0.2).value == pytest.approx(1)

    def test_122_two_term(self):
        a, u = Q(1, 2), Q(1, 3)
        hv = kampe_122(Q(1, 2), 2, 1, -1, 0, a + 2, -a, u, Q(1, 7))
        assert hv.rational == 1 + Q(1, 2) * 2 * (-1) / ((a + 2) * (-a)) * u

    def test_211_against_direct_sum(self):
        a, b, p1, p2, c, q1, q2, x, y = 0.3, 0.6, -2, -3, 1.7, 0.4, 1.1, 0.25, 0.35
        with mp.workdps(30):
            ref = sum(mp.rf(a, i + j) * mp.rf(b, i + j) * mp.rf(p1, i) * mp.rf(p2, j)
                      / (mp.rf(c, i + j) * mp.rf(q1, i) * mp.rf(q2, j) * mp.factorial(i) * mp.factorial(j))
                      * mp.mpf(x) ** i * mp.mpf(y) ** j for i in range(3) for j in range(4))
        got = kampe_211(a, b, p1, p2, c, q1, q2, x, y)
        assert got.value == pytest.approx(complex(ref), rel=1e-12)
