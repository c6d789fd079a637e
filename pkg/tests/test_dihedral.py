import math
from fractions import Fraction

import mpmath as mp
import pytest
from hypothesis import given, settings, strategies as st

from dihedral_hpg import dihedral as dh
from dihedral_hpg.hypseries import Truncated, gauss_2f1
from dihedral_hpg.numcore import DomainError

P = dh.DihedralParams
Q = Fraction
T = Truncated(1e-14, 200000)

non_int_a = st.floats(-4.5, 4.5).filter(lambda a: abs(a - round(a)) > 0.2)


def mp_solution(p, z, kind):
    """Independent oracle: mpmath hyp2f1 times the documented prefactor."""
    A, B, C, arg = dh.gauss_params(p, kind)
    A, B, C = (float(v) for v in (A, B, C))
    kind = dh.SolutionKind(kind)
    with mp.workdps(30):
        if arg == "z":
            return complex(mp.hyp2f1(A, B, C, z))
        if arg == "1-z":
            v = mp.hyp2f1(A, B, C, 1 - z)
            if kind is dh.SolutionKind.AT1_SECONDARY:
                v *= mp.power(1 - z, -(p.a + p.k + p.l))
            return complex(v)
        return complex(mp.power(z, -A) * mp.hyp2f1(A, B, C, 1 / mp.mpf(z)))


class TestBasic:
    def test_d1(self):
        assert dh.eval_basic("D1", 1, Q(3, 4)).rational == Q(4, 3)

    def test_d2(self):
        assert dh.eval_basic("D2", 2, Q(1, 4)).rational == Q(20, 9)

    def test_d4(self):
        assert dh.eval_basic("D4", 0, Q(1, 4)).value.real == pytest.approx(math.log(3), abs=1e-12)

    @given(non_int_a, st.floats(0.01, 0.95))
    def test_against_mpmath(self, a, z):
        s = math.sqrt(z)
        for kind, ref in (("D1", mp.hyp2f1(a / 2, (a + 1) / 2, a + 1, z)),
                          ("D2", mp.hyp2f1(a / 2, (a + 1) / 2, 0.5, z)),
                          ("D3", mp.hyp2f1((a + 1) / 2, a / 2 + 1, 1.5, z))):
            assert dh.eval_basic(kind, a, z).value == pytest.approx(complex(ref), rel=1e-12)
        assert dh.eval_basic("D4", a, z).value.real == pytest.approx(math.atanh(s) / s, rel=1e-12)


class TestPair:
    def test_trivial_pair(self):
        plus, minus = dh.dihedral_pair(P(0, 0, 2), Q(1, 4))
        assert plus.rational == Q(20, 9)
        d3 = dh.eval_basic("D3", 2, Q(1, 4)).rational
        assert minus.rational == -2 * Q(1, 2) * d3

    def test_params(self):
        p = P(2, 1, Q(3, 5))
        assert (p.A, p.B, p.C) == (Q(3, 10), Q(4, 5) + 1, Q(-3, 2))


class TestLocalSolutions:
    def test_even_trivial(self):
        assert dh.hpg_at0(P(0, 0, 2), Q(1, 4), "even").rational == Q(20, 9)

    def test_origin(self):
        assert dh.hpg_at0(P(3, 1, 0.37), 0, "even").value == 1

    def test_even_oracle_example(self):
        got = dh.hpg_at0(P(2, 1, 0.6), 0.3, "even").value
        ref = gauss_2f1(0.3, 1.8, -1.5, 0.3, T).value
        assert abs(got - ref) <= 1e-10 * abs(ref)

    def test_at1_trivial(self):
        z = 0.75
        got = dh.hpg_at1(P(0, 0, 1), z).value.real
        assert got == pytest.approx(((1 + math.sqrt(z)) / 2) ** -1, rel=1e-14)

    def test_at1_oracle_example(self):
        got = dh.hpg_at1(P(1, 0, 0.7), 0.4).value
        ref = gauss_2f1(0.35, 0.85, 2.7, 0.6, T).value
        assert abs(got - ref) <= 1e-10 * abs(ref)

    def test_inf_surd(self):
        a, z = 0.5, 4.0
        w = 1 / z
        surd = ((1 - math.sqrt(w)) ** -a + (1 + math.sqrt(w)) ** -a) / 2
        assert dh.hpg_at_inf(P(0, 0, a), z).value.real == pytest.approx(z ** (-a / 2) * surd, rel=1e-13)

    def test_inf_leading_behaviour(self):
        a = 0.8
        z = 1e6
        assert dh.hpg_at_inf(P(1, 2, a), z).value.real * z ** (a / 2) == pytest.approx(1, abs=1e-4)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 4), st.integers(0, 4), non_int_a, st.floats(0.02, 0.9),
           st.sampled_from(["at0-even", "at0-odd", "at1", "at1-sec"]))
    def test_against_mpmath(self, k, l, a, z, kind):
        p = P(k, l, a)
        try:
            got = dh.evaluate(p, z, kind)
        except dh.DegenerateFrontFactor:
            return
        ref = mp_solution(p, z, kind)
        assert abs(got.value - ref) <= 1e-9 * max(1.0, abs(ref))

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 3), st.integers(0, 3), non_int_a, st.floats(1.2, 20), st.sampled_from(["inf-1", "inf-2"]))
    def test_inf_against_mpmath(self, k, l, a, z, kind):
        p = P(k, l, a)
        got = dh.evaluate(p, z, kind)
        ref = mp_solution(p, z, kind)
        assert abs(got.value - ref) <= 1e-9 * max(1.0, abs(ref))

    def test_exact_mode(self):
        hv = dh.hpg_at0(P(1, 2, Q(3)), Q(1, 9), "odd")
        assert hv.exact
        ref = mp_solution(P(1, 2, 3), 1 / 9, "at0-odd")
        assert float(hv.rational) == pytest.approx(ref.real, rel=1e-14)

    def test_z_domain(self):
        for z in (1.5, -1, 1):
            with pytest.raises(DomainError, match="off"):
                dh.evaluate(P(0, 0, 2), z, "at0-even")

    def test_complex_z(self):
        z = 0.3 + 0.1j
        ref = mp_solution(P(1, 1, 0.45), z, "at0-even")
        assert dh.evaluate(P(1, 1, 0.45), z, "at0-even").value == pytest.approx(ref, rel=1e-11)


class TestOrbit:
    def test_exponents_at_0(self):
        q, pre = dh.kummer_orbit_apply(P(1, 2, Q(1, 3)), "exp0")
        assert (q.k, q.l, q.a) == (-2, 2, Q(1, 3) + 3)
        assert pre.factors == (("z", Q(3, 2)),)

    def test_inversion(self):
        q, pre = dh.kummer_orbit_apply(P(1, 2, Q(1, 3)), "1/z")
        assert (q.k, q.l, q.a) == (2, 1, Q(1, 3))
        assert pre.factors == (("z", Q(-1, 6)),)

    @given(st.integers(0, 5), st.integers(0, 5), st.fractions(-5, 5, max_denominator=9),
           st.sampled_from(list(dh.OrbitGenerator)))
    def test_exponent_differences_preserved_up_to_sign(self, k, l, a, g):
        p = P(k, l, a)
        q, _ = dh.kummer_orbit_apply(p, g)
        before = sorted(abs(x) for x in p.exponent_differences)
        after = sorted(abs(x) for x in q.exponent_differences)
        assert before == after

    def test_exp1_involution(self):
        p = P(1, 2, Q(2, 7))
        q, pre1 = dh.kummer_orbit_apply(p, "exp1")
        r, pre2 = dh.kummer_orbit_apply(q, "exp1")
        assert (r.k, r.l, r.a) == (p.k, p.l, p.a)
        assert pre1.factors[0][1] + pre2.factors[0][1] == 0


class TestClassifiers:
    @pytest.mark.parametrize("klm,tag", [((0, 0, 0), "Logarithmic"), ((1, 0, 2), "CyclicOrder2"),
                                         ((2, 0, 1), "Logarithmic")])
    def test_exponent_form(self, klm, tag):
        assert dh.classify_degenerate(*klm).tag.value == tag

    @pytest.mark.parametrize("k,l,m,tag", [(1, 1, 2, "Logarithmic"), (1, 1, 3, "CyclicOrder2"),
                                           (0, 2, 3, "Logarithmic")])
    def test_integer_a_form(self, k, l, m, tag):
        assert dh.classify_integer_a(P(k, l, -m)).tag.value == tag

    def test_non_integer(self):
        assert dh.classify_integer_a(P(0, 2, Q(1, 3))).tag is dh.Verdict.NON_DEGENERATE

    @given(st.integers(0, 8), st.integers(0, 8), st.integers(0, 16))
    def test_correspondence(self, k, l, m):
        # a = -m gives third exponent difference |a + k + l| = |k + l - m|
        v1 = dh.classify_integer_a(P(k, l, -m))
        v2 = dh.classify_degenerate(k, l, abs(k + l - m))
        assert v1.tag == v2.tag

    @given(st.integers(0, 6), st.integers(0, 6), st.integers(0, 12))
    def test_symmetric_in_k_l(self, k, l, m):
        assert dh.classify_degenerate(k, l, m).tag == dh.classify_degenerate(l, k, m).tag


class TestLogarithmic:
    @pytest.mark.parametrize("k,l,m,z,abc", [(1, 1, 2, 0.09, (0.5, 2, 2.5)), (1, 0, 0, 0.04, (1.5, 2, 2.5))])
    def test_even_m(self, k, l, m, z, abc):
        got = dh.eval_log_even_m(P(k, l, -m), z).value
        ref = gauss_2f1(*abc, z, T).value
        assert abs(got - ref) <= 1e-9 * abs(ref)

    def test_even_m_small_z(self):
        assert dh.eval_log_even_m(P(2, 1, -2), 1e-8).value.real == pytest.approx(1, abs=1e-6)

    def test_odd_m(self):
        got = dh.eval_log_odd_m(P(2, 0, -1), 0.04, "TwoEllLess").value
        assert abs(got - gauss_2f1(2, 2.5, 3.5, 0.04, T).value) < 1e-9
        got = dh.eval_log_odd_m(P(0, 2, -1), 0.04, "TwoKLess").value
        assert abs(got - gauss_2f1(-0.5, 2, 0.5, 0.04, T).value) < 1e-9

    def test_regime_mismatch(self):
        with pytest.raises(dh.RegimeMismatch):
            dh.eval_log_odd_m(P(1, 1, -1), 0.04, "TwoKLess")

    def test_not_log_case(self):
        with pytest.raises(dh.NotLogCase):
            dh.eval_log_even_m(P(1, 1, -3), 0.2)

    def test_series_cross_check(self):
        a = dh.eval_log_series(P(1, 1, -2), 0.2)
        b = dh.eval_log_even_m(P(1, 1, -2), 0.2)
        assert abs(a.value - b.value) < 1e-8

    def test_series_truncation_contract(self):
        p, z = P(1, 2, -2), 0.4
        lo = dh.eval_log_series(p, z, tol=1e-13, max_terms=2000)
        hi = dh.eval_log_series(p, z, tol=1e-17, max_terms=4000)
        assert abs(lo.value - hi.value) <= max(lo.abs_err, 1e-15) * 10


class TestCycl2:
    def test_small_case(self):
        lhs, rhs = dh.eval_cycl2(P(1, 1, -1), Q(1, 4))
        assert abs(lhs.value - rhs.value) < 1e-12

    def test_larger_case(self):
        lhs, rhs = dh.eval_cycl2(P(2, 1, -1), 0.6)
        assert abs(lhs.value - rhs.value) < 1e-11

    @settings(max_examples=20, deadline=None)
    @given(st.integers(1, 4), st.integers(1, 4), st.floats(0.1, 0.9))
    def test_sweep(self, k, l, z):
        for m in range(1, 2 * min(k, l), 2):
            lhs, rhs = dh.eval_cycl2(P(k, l, -m), z)
            assert abs(lhs.value - rhs.value) <= 1e-11 * max(1.0, abs(lhs.value))


class TestInverseTrig:
    def test_arctan(self):
        series, closed = dh.arctan_forms("Arctan", 0.5)
        assert series.value.real == pytest.approx(0.927295218002, abs=1e-12)
        assert abs(series.value - closed) < 1e-12

    def test_arcsin(self):
        series, closed = dh.arctan_forms("Arcsin", 0.5)
        assert series.value.real == pytest.approx(math.pi / 3, abs=1e-12)
        assert abs(series.value - closed) < 1e-12

    @given(st.sampled_from(["Arctan", "Arcsin"]), st.floats(-0.9, 0.9))
    def test_agree(self, kind, x):
        series, closed = dh.arctan_forms(kind, x)
        assert abs(series.value - closed) <= 1e-12 * max(1, abs(closed))

    def test_origin(self):
        assert dh.arctan_forms("Arctan", 0)[0].value == pytest.approx(1)
