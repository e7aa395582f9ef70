import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from intspace.errors import ConvergenceError, DomainError, ParameterError
from intspace.specfun import (
    Hyp2F1Params,
    beta_int,
    binomial,
    digamma_forward_difference,
    factorial,
    harmonic,
    hyp2f1,
    log_hyp2f1_pfaff,
    precision_bits,
    to_real,
)


class TestBinomial:
    def test_small(self):
        assert binomial(5, 2) == 10

    @pytest.mark.parametrize("m", [0, 1, 7, 60])
    def test_k_zero(self, m):
        assert binomial(m, 0) == 1

    def test_large_against_product(self):
        prod = Fraction(1)
        for j in range(10):
            prod *= Fraction(52 - j, j + 1)
        assert binomial(52, 10) == prod == 15820024220

    def test_k_above_m(self):
        with pytest.raises(DomainError):
            binomial(3, 4)


class TestBeta:
    def test_examples(self):
        assert beta_int(1, 9) == Fraction(1, 9)
        assert beta_int(2, 3) == Fraction(1, 12)
        assert beta_int(6, 4) == Fraction(1, 504)

    def test_against_integral(self):
        from scipy.integrate import quad

        val, _ = quad(lambda t: t**5 * (1 - t) ** 3, 0, 1)
        assert val == pytest.approx(1 / 504, rel=1e-12)

    @pytest.mark.parametrize("p,q", [(0, 3), (3, 0), (-1, 2)])
    def test_pole(self, p, q):
        with pytest.raises(ParameterError):
            beta_int(p, q)

    @given(st.integers(1, 30), st.integers(1, 30))
    def test_symmetry_and_recurrence(self, p, q):
        assert beta_int(p, q) == beta_int(q, p)
        assert beta_int(p, q) == beta_int(p + 1, q) + beta_int(p, q + 1)


class TestDigammaHarmonic:
    @pytest.mark.parametrize("m,expected", [(1, Fraction(1)), (4, Fraction(1, 4)), (10, Fraction(1, 10))])
    def test_forward_difference(self, m, expected):
        assert digamma_forward_difference(m) == expected

    def test_matches_harmonic_difference(self):
        assert digamma_forward_difference(10) == harmonic(10) - harmonic(9)

    def test_matches_mpmath_digamma(self):
        for m in (1, 3, 17):
            assert float(digamma_forward_difference(m)) == pytest.approx(
                float(mpmath.digamma(m + 1) - mpmath.digamma(m)), rel=1e-15)

    def test_nonpositive(self):
        with pytest.raises(DomainError):
            digamma_forward_difference(0)

    def test_factorial_negative(self):
        with pytest.raises(DomainError):
            factorial(-1)


class TestExactRational:
    big = st.integers(-(2**256), 2**256)
    nonzero = big.filter(lambda v: v != 0)

    @settings(max_examples=50)
    @given(big, nonzero, big, nonzero, big, nonzero)
    def test_associative_commutative(self, a, b, c, d, e, f):
        x, y, z = Fraction(a, b), Fraction(c, d), Fraction(e, f)
        assert (x + y) + z == x + (y + z)
        assert x * y == y * x
        assert x.denominator > 0
        assert math.gcd(abs(x.numerator), x.denominator) == 1

    @settings(max_examples=50)
    @given(big, nonzero)
    def test_string_round_trip(self, a, b):
        x = Fraction(a, b)
        assert Fraction(str(x)) == x


class TestToReal:
    def test_examples(self):
        assert to_real(Fraction(1, 2)) == 0.5
        assert to_real(Fraction(0)) == 0.0
        assert to_real(Fraction(1, 3), 53) == 0.3333333333333333

    def test_low_precision_rounding(self):
        # -7/3 = -10.0101...b; 10 significant bits round down
        assert to_real(Fraction(-7, 3), 10) == -2.33203125

    def test_ties_to_even(self):
        assert to_real(Fraction(5, 4), 2) == 1.0
        assert to_real(Fraction(7, 4), 2) == 2.0

    @given(st.integers(-(10**40), 10**40), st.integers(1, 10**40))
    def test_matches_float_at_53_bits(self, p, q):
        assert to_real(Fraction(p, q), 53) == float(Fraction(p, q))

    def test_env_override(self, monkeypatch):
        monkeypatch.setenv("INTSPACE_PRECISION_BITS", "12")
        assert precision_bits() == 12
        assert to_real(Fraction(1, 3)) == 2731 / 8192  # 1/3 = 0.010101...b, 12 significant bits
        monkeypatch.setenv("INTSPACE_PRECISION_BITS", "lots")
        with pytest.raises(DomainError):
            precision_bits()

    def test_default_precision(self, monkeypatch):
        monkeypatch.delenv("INTSPACE_PRECISION_BITS", raising=False)
        assert precision_bits() == 64


def _mp_hyp(a, b, z, dps=40):
    with mpmath.workdps(dps):
        return mpmath.hyp2f1(a, b, a + b, z)


class TestHyp2F1:
    def test_zero_argument(self):
        for a, b in [(1, 1), (3, 7), (40, 2)]:
            assert hyp2f1(Hyp2F1Params(a, b, a + b, 0.0)) == 1.0

    def test_log_closed_form(self):
        assert hyp2f1(Hyp2F1Params(1, 1, 2, -1.0)) == pytest.approx(math.log(2), rel=1e-13)

    def test_against_defining_series(self):
        z = -0.5
        total, term, k = 0.0, 1.0, 0
        while abs(term) > 1e-18:
            total += term
            term *= (3 + k) * (5 + k) / ((8 + k) * (k + 1)) * z
            k += 1
        assert hyp2f1(Hyp2F1Params(3, 5, 8, z)) == pytest.approx(total, rel=1e-13)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(1, 40), st.integers(1, 60), st.floats(-0.9, 0.0))
    def test_defining_series_region(self, a, b, z):
        ref = float(_mp_hyp(a, b, z))
        assert hyp2f1(Hyp2F1Params(a, b, a + b, z)) == pytest.approx(ref, rel=1e-12)

    @settings(max_examples=80, deadline=None)
    @given(st.integers(1, 60), st.integers(1, 60), st.floats(0.01, 60.0))
    def test_log_value_whole_support(self, a, b, v):
        # z = 1 - e^v spans the logistic density's support
        ref = float(mpmath.log(_mp_hyp(a, b, mpmath.mpf(1) - mpmath.exp(v))))
        got = log_hyp2f1_pfaff(a, b, -math.expm1(-v), math.exp(-v))
        assert got == pytest.approx(ref, rel=1e-12, abs=1e-12)

    def test_parameter_validation(self):
        with pytest.raises(DomainError):
            Hyp2F1Params(2, 3, 6, -1.0)
        with pytest.raises(DomainError):
            Hyp2F1Params(2, 3, 5, 0.5)
        with pytest.raises(DomainError):
            Hyp2F1Params(0, 3, 3, -1.0)

    def test_rel_tol_domain(self):
        with pytest.raises(DomainError):
            hyp2f1(Hyp2F1Params(1, 1, 2, -1.0), rel_tol=0.0)

    def test_term_cap(self):
        with pytest.raises(ConvergenceError) as info:
            hyp2f1(Hyp2F1Params(20, 30, 50, -2.0), max_terms=3)
        assert info.value.cap == 3
        assert info.value.partial is not None
