import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heattrace import special_fns as sf
from heattrace.errors import AccuracyLossError, DomainError, OverflowRangeError

# values frozen from extended-precision evaluation (mpmath, 30 digits)
IVE_3_2 = 0.028791222639470898
K0_1 = 0.42102443824070833
K_I1_2 = 0.092385459890391182
J_ZERO_0_1 = 2.4048255576957728
J_ZERO_2_1 = 5.1356223018406826
ERFC_1 = 0.15729920705028513


class TestBesselI:
    def test_at_zero(self):
        assert sf.bessel_i(0.0, 0.0) == 1.0
        assert sf.bessel_i(1.0, 0.0) == 0.0
        assert sf.bessel_i_scaled(0.0, 0.0) == 1.0

    def test_half_order_closed_form(self):
        # I_{1/2}(x) = sqrt(2/(pi x)) sinh x
        expect = math.sqrt(2.0 / math.pi) * math.sinh(1.0)
        assert sf.bessel_i(0.5, 1.0) == pytest.approx(expect, rel=1e-12)

    def test_scaled_large_argument_two_term_asymptotics(self):
        x = 100.0
        two_term = (1.0 + 1.0 / (8.0 * x)) / math.sqrt(2.0 * math.pi * x)
        assert sf.bessel_i_scaled(0.0, x) == pytest.approx(two_term, abs=1e-5)

    def test_scaled_extended_precision_value(self):
        assert sf.bessel_i_scaled(3.0, 2.0) == pytest.approx(IVE_3_2, rel=1e-12)

    def test_overflow_signaled(self):
        with pytest.raises(OverflowRangeError):
            sf.bessel_i(0.0, 800.0)
        # while the scaled variant stays finite far beyond
        assert 0.0 < sf.bessel_i_scaled(0.0, 1e6) < 1.0

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            sf.bessel_i(-1.0, 1.0)
        with pytest.raises(DomainError):
            sf.bessel_i(0.0, -1.0)

    def test_recurrence_grid(self):
        # I_{nu-1}(x) - I_{nu+1}(x) = (2 nu / x) I_nu(x), scaled form
        for nu in np.linspace(0.5, 10.0, 8):
            for x in np.geomspace(0.1, 50.0, 8):
                lhs = sf.bessel_i_scaled(nu - 0.5, x) - sf.bessel_i_scaled(nu + 1.5, x)
                rhs = (2.0 * (nu + 0.5) / x) * sf.bessel_i_scaled(nu + 0.5, x)
                assert lhs == pytest.approx(rhs, rel=1e-9, abs=1e-300)

    def test_vectorized_matches_scalar(self):
        nus = np.array([0.0, 0.7, 3.0, 11.5, 40.0])
        for x in (0.0, 0.3, 10.0, 300.0, 648.0):
            many = sf.bessel_i_scaled_many(nus, x)
            for nu, v in zip(nus, many):
                assert v == pytest.approx(sf.bessel_i_scaled(float(nu), x), rel=1e-11, abs=1e-280)

    @given(
        nu=st.floats(min_value=0.0, max_value=50.0),
        x=st.floats(min_value=0.0, max_value=500.0),
    )
    @settings(max_examples=60, deadline=None)
    def test_scaled_bounds_property(self, nu, x):
        v = sf.bessel_i_scaled(nu, x)
        assert 0.0 <= v <= 1.0 + 1e-12
        # scaled I decreases in the order at fixed argument
        assert v >= sf.bessel_i_scaled(nu + 1.0, x) - 1e-15

    def test_primitive_derivative(self):
        # d/du [e^{-u} u (I0 + I1)] = e^{-u} I0(u)
        h = 1e-5
        g = lambda u: u * (sf.bessel_i_scaled(0.0, u) + sf.bessel_i_scaled(1.0, u))
        for u in np.linspace(0.1, 30.0, 25):
            deriv = (g(u + h) - g(u - h)) / (2.0 * h)
            assert deriv == pytest.approx(sf.bessel_i_scaled(0.0, u), abs=1e-6)


class TestBesselKImag:
    def test_k0_against_quadrature_value(self):
        assert sf.bessel_k_imag(0.0, 1.0) == pytest.approx(K0_1, rel=1e-12)

    def test_order_one_extended_precision(self):
        assert sf.bessel_k_imag(1.0, 2.0) == pytest.approx(K_I1_2, rel=1e-11)

    def test_series_and_integral_routes_agree(self):
        # both internal branches cover (mu=2, x=3); they must coincide
        cfg = sf.DEFAULT_CONFIG
        v_series, _ = sf._k_imag_series(2.0, 3.0, cfg)
        v_integral, _ = sf._k_imag_integral(2.0, 3.0, cfg)
        assert v_series == pytest.approx(v_integral, rel=1e-11)

    def test_against_extended_precision_grid(self):
        mp = pytest.importorskip("mpmath")
        mp.mp.dps = 30
        for mu in (0.0, 0.25, 1.0, 3.0, 7.5, 20.0, 45.0):
            for x in (0.01, 0.4, 2.0, 9.0, 30.0):
                ref = float(mp.exp(mp.pi * mu / 2) * mp.besselk(1j * mu, mp.mpf(x)).real)
                if abs(ref) * math.exp(-math.pi * mu / 2.0) < 1e-12:
                    continue
                mine = sf.bessel_k_imag_scaled(mu, x)
                assert mine == pytest.approx(ref, rel=1e-8)

    def test_accuracy_loss_reported(self):
        # large order at comparable argument: both routes cancel; the error
        # channel must fire rather than return garbage
        with pytest.raises(AccuracyLossError) as err:
            sf.bessel_k_imag(60.0, 70.0)
        assert err.value.achieved_tol > 1e-9

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            sf.bessel_k_imag(1.0, 0.0)
        with pytest.raises(DomainError):
            sf.bessel_k_imag(-1.0, 1.0)


class TestBesselJ:
    def test_at_zero(self):
        assert sf.bessel_j(0.0, 0.0) == 1.0
        assert sf.bessel_j(2.0, 0.0) == 0.0

    def test_first_zeros(self):
        assert sf.bessel_j_zero(0.0, 1) == pytest.approx(J_ZERO_0_1, rel=1e-12)
        assert sf.bessel_j_zero(2.0, 1) == pytest.approx(J_ZERO_2_1, rel=1e-12)

    def test_zero_is_root(self):
        for nu in (0.0, 1.5, 7.0, 33.3):
            for k in (1, 2, 7):
                z = sf.bessel_j_zero(nu, k)
                assert abs(sf.bessel_j(nu, z)) < 1e-11

    def test_zeros_interlace(self):
        for nu in (0.0, 0.5, 2.0, 9.5):
            for k in (1, 2, 5):
                a = sf.bessel_j_zero(nu, k)
                b = sf.bessel_j_zero(nu + 1.0, k)
                c = sf.bessel_j_zero(nu, k + 1)
                assert a < b < c

    def test_zeros_increasing_in_k(self):
        zs = [sf.bessel_j_zero(3.2, k) for k in range(1, 8)]
        assert all(x < y for x, y in zip(zs, zs[1:]))

    def test_against_extended_precision(self):
        mp = pytest.importorskip("mpmath")
        mp.mp.dps = 25
        for nu in (0.0, 0.5, 4.0, 17.3, 60.0):
            for x in (0.2, 6.0, 11.9, 13.0, 26.0, 80.0):
                ref = float(mp.besselj(nu, x))
                if abs(ref) < 1e-13:
                    continue
                assert sf.bessel_j(nu, x) == pytest.approx(ref, rel=2e-9, abs=1e-13)

    def test_prime_zeros(self):
        # j'_{1,1} = 1.8411837813406593, and J0' zeros are J1 zeros
        assert sf.bessel_j_prime_zero(1.0, 1) == pytest.approx(1.8411837813406593, rel=1e-10)
        assert sf.bessel_j_prime_zero(0.0, 1) == pytest.approx(
            sf.bessel_j_zero(1.0, 1), rel=1e-14
        )
        z = sf.bessel_j_prime_zero(3.0, 2)
        assert abs(sf.bessel_j_prime(3.0, z)) < 1e-11

    def test_zero_cache(self):
        cache = sf.BesselZeroCache()
        a = sf.bessel_j_zero(1.0, 3, cache=cache)
        b = sf.bessel_j_zero(1.0, 3, cache=cache)
        assert a == b
        assert cache.get(("j", 1.0, 3)) == a

    def test_bad_index(self):
        with pytest.raises(DomainError):
            sf.bessel_j_zero(1.0, 0)


class TestErfc:
    def test_definition_values(self):
        assert sf.erfc(0.0) == 1.0
        assert sf.erfc(1.0) == pytest.approx(ERFC_1, rel=1e-14)

    def test_odd_symmetry(self):
        for x in (0.1, 0.9, 2.5, 7.0):
            assert sf.erfc(x) + sf.erfc(-x) == pytest.approx(2.0, abs=1e-15)

    def test_erfc_against_quadrature(self):
        # (2/sqrt(pi)) int_1^inf e^{-s^2} ds by direct Gauss panels
        gx, gw = np.polynomial.legendre.leggauss(60)
        integral = 0.0
        for a, b in zip(np.linspace(1.0, 9.0, 9)[:-1], np.linspace(1.0, 9.0, 9)[1:]):
            mid, half = 0.5 * (a + b), 0.5 * (b - a)
            integral += half * float(np.dot(gw, np.exp(-((mid + half * gx) ** 2))))
        assert sf.erfc(1.0) == pytest.approx(2.0 / math.sqrt(math.pi) * integral, abs=1e-12)

    def test_erfcx_consistency(self):
        for x in (0.0, 0.5, 1.99, 2.0, 3.7, 12.0, 200.0):
            expect = math.exp(min(x * x, 700.0)) * math.erfc(x) if x < 26.0 else None
            if expect is not None:
                assert sf.erfcx(x) == pytest.approx(expect, rel=1e-13)
        # far tail: asymptotic 1/(x sqrt(pi))
        assert sf.erfcx(1e5) == pytest.approx(1.0 / (1e5 * math.sqrt(math.pi)), rel=1e-9)


class TestConfig:
    def test_validation(self):
        with pytest.raises(DomainError):
            sf.SpecialFnConfig(rel_tol=1e-5)
        with pytest.raises(DomainError):
            sf.SpecialFnConfig(rel_tol=0.0)
        with pytest.raises(DomainError):
            sf.SpecialFnConfig(max_terms=10)
        cfg = sf.SpecialFnConfig(rel_tol=1e-10, max_terms=100)
        assert cfg.rel_tol == 1e-10
