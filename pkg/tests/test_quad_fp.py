import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heattrace import quad_fp
from heattrace.errors import (
    BudgetExceededError,
    DomainError,
    EnvelopeViolationWarning,
    IllConditionedFitError,
    ResidualError,
)
from heattrace.special_fns import bessel_k_imag

K0_1 = 0.42102443824070833


class TestIntegrate:
    def test_exponential(self):
        r = quad_fp.integrate(lambda x: np.exp(-x), 0.0, math.inf, tol=1e-12, envelope=(1.0, 1.0))
        assert r.value == pytest.approx(1.0, abs=2e-12)
        assert r.abs_err_estimate >= 0.0

    def test_polynomial(self):
        r = quad_fp.integrate(lambda x: x * x, 0.0, 1.0, tol=1e-13)
        assert r.value == pytest.approx(1.0 / 3.0, abs=1e-13)

    def test_cosh_kernel_matches_bessel(self):
        r = quad_fp.integrate(
            lambda u: np.exp(-np.cosh(u)), 0.0, math.inf, tol=1e-13, envelope=(1.0, 1.0)
        )
        assert r.value == pytest.approx(K0_1, abs=1e-12)
        assert r.value == pytest.approx(bessel_k_imag(0.0, 1.0), abs=1e-11)

    def test_linearity_random(self):
        rng = np.random.default_rng(42)
        for _ in range(5):
            a_coef, b_coef = rng.uniform(-3.0, 3.0, 2)
            f = lambda x: np.exp(-x) * np.sin(x)
            g = lambda x: np.exp(-2.0 * x) * (1.0 + x)
            combo = lambda x: a_coef * f(x) + b_coef * g(x)
            rf = quad_fp.integrate(f, 0.0, 30.0, tol=1e-12)
            rg = quad_fp.integrate(g, 0.0, 30.0, tol=1e-12)
            rc = quad_fp.integrate(combo, 0.0, 30.0, tol=1e-12)
            budget = rf.abs_err_estimate * abs(a_coef) + rg.abs_err_estimate * abs(b_coef) + rc.abs_err_estimate
            assert abs(rc.value - (a_coef * rf.value + b_coef * rg.value)) <= budget + 1e-13

    def test_budget_error_carries_estimate(self):
        with pytest.raises(BudgetExceededError) as err:
            quad_fp.integrate(
                lambda x: np.abs(x - 1.0 / 3.0) ** 0.1, 0.0, 1.0, tol=1e-15, max_nodes=400
            )
        assert isinstance(err.value.result, quad_fp.QuadResult)
        assert err.value.result.value == pytest.approx(0.87, abs=0.05)

    def test_envelope_required_and_checked(self):
        with pytest.raises(DomainError):
            quad_fp.integrate(lambda x: np.exp(-x), 0.0, math.inf)
        with pytest.warns(EnvelopeViolationWarning):
            quad_fp.integrate(
                lambda x: 10.0 * np.exp(-x), 0.0, math.inf, tol=1e-10, envelope=(1.0, 1.0)
            )

    def test_scalar_fallback(self):
        r = quad_fp.integrate(lambda x: math.exp(-x * x), 0.0, 6.0, tol=1e-12)
        assert r.value == pytest.approx(0.5 * math.sqrt(math.pi), abs=1e-12)

    def test_deterministic(self):
        f = lambda x: np.exp(-x) * np.cos(3.0 * x)
        r1 = quad_fp.integrate(f, 0.0, 20.0, tol=1e-12)
        r2 = quad_fp.integrate(f, 0.0, 20.0, tol=1e-12)
        assert r1.value == r2.value


class TestFinitePart:
    def test_pure_divergence(self):
        r = quad_fp.finite_part(lambda lam: lam)
        assert abs(r.finite_part) < 1e-12

    def test_synthetic_constant(self):
        r = quad_fp.finite_part(lambda lam: 3.0 * lam**2 + 7.0 + 2.0 / lam)
        assert r.finite_part == pytest.approx(7.0, abs=1e-9)
        assert r.divergent_coeffs[-2] == pytest.approx(3.0, rel=1e-9)
        assert r.divergent_coeffs[1] == pytest.approx(2.0, rel=1e-6)

    @given(
        c2=st.floats(-5.0, 5.0),
        c1=st.floats(-5.0, 5.0),
        c0=st.floats(-5.0, 5.0),
        cm1=st.floats(-5.0, 5.0),
    )
    @settings(max_examples=40, deadline=None)
    def test_exact_basis_recovery(self, c2, c1, c0, cm1):
        f = lambda lam: c2 * lam**2 + c1 * lam + c0 + cm1 / lam
        r = quad_fp.finite_part(f)
        scale = max(1.0, abs(c2), abs(c1), abs(c0), abs(cm1))
        assert abs(r.finite_part - c0) <= 1e-10 * scale

    def test_condition_number_reported(self):
        r = quad_fp.finite_part(lambda lam: lam + 1.0)
        assert r.condition_number >= 1.0
        assert r.epsilons_used[0] > r.epsilons_used[-1]

    def test_ill_conditioned_raises(self):
        with pytest.raises(IllConditionedFitError):
            quad_fp.finite_part(
                lambda lam: lam + 1.0, basis=(-1, -1.0000001, 0, 1)
            )

    def test_residual_error_when_basis_incomplete(self):
        eps = quad_fp.default_eps_schedule()
        with pytest.raises(ResidualError):
            quad_fp.finite_part(
                lambda lam: lam**3,  # not representable in the default basis
                eps_schedule=eps,
                value_errs=[1e-14] * len(eps),
            )

    def test_schedule_validation(self):
        with pytest.raises(DomainError):
            quad_fp.finite_part(lambda lam: lam, eps_schedule=(0.1, 0.2, 0.3))
        with pytest.raises(DomainError):
            quad_fp.finite_part(lambda lam: lam, eps_schedule=(0.5, 0.4, 0.3, 0.2, 0.1)[:3])
        with pytest.raises(DomainError):
            quad_fp.finite_part(lambda lam: lam, basis=(-2, -1, 1))  # no eps^0

    def test_accepts_quadresults(self):
        def f(lam):
            return quad_fp.integrate(lambda x: np.ones_like(x), 0.0, lam, tol=1e-12)

        r = quad_fp.finite_part(f)  # integral = lam: pure divergence
        assert abs(r.finite_part) < 1e-9

    def test_rescaled_cutoff_invariance_for_odd_expansions(self):
        # the radial corner integrand has only odd powers of eps in its
        # cutoff expansion, so replacing the cutoff 1/eps by c/eps must not
        # move the finite part
        from heattrace.special_fns import bessel_i_scaled

        def f_true(lam):
            u = 0.5 * lam * lam
            return 0.5 * u * (bessel_i_scaled(0.0, u) + bessel_i_scaled(1.0, u))

        eps = quad_fp.default_eps_schedule(eps_max=0.08, ratio=0.85, count=14)
        basis = (-2, -1, 0, 1, 3, 5)
        fps = {}
        for c in (0.5, 1.0, 2.0):
            r = quad_fp.finite_part(lambda lam, c=c: f_true(c * lam), basis=basis, eps_schedule=eps)
            fps[c] = r.finite_part
        assert abs(fps[0.5] - fps[1.0]) <= 1e-5
        assert abs(fps[2.0] - fps[1.0]) <= 1e-5
