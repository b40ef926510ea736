import math

import numpy as np
import pytest

from heattrace import corner_lab as cl
from heattrace.errors import DomainError, UnsupportedBCError

PI = math.pi


def closed_same(alpha):
    return (PI**2 - alpha**2) / (24.0 * PI * alpha)


def closed_mixed(alpha):
    return -(PI**2 + 2.0 * alpha**2) / (48.0 * PI * alpha)


class TestClosedForms:
    def test_phantom_vertex(self):
        assert cl.corner_coeff(cl.CornerKind("DD", PI)) == 0.0

    def test_mixed_at_pi(self):
        # the boundary-condition jump on a smooth boundary: -1/16 per jump
        assert cl.corner_coeff(cl.CornerKind("DN", PI)) == pytest.approx(-1.0 / 16.0)

    def test_right_angle(self):
        assert cl.corner_coeff(cl.CornerKind("DD", PI / 2.0)) == pytest.approx(1.0 / 16.0)

    def test_robin_pairs_use_neumann_class(self):
        for pair in ("RR", "NR", "RN"):
            assert cl.corner_coeff(cl.CornerKind(pair, 0.8)) == pytest.approx(closed_same(0.8))
        for pair in ("DR", "RD", "ND", "DN"):
            assert cl.corner_coeff(cl.CornerKind(pair, 0.8)) == pytest.approx(closed_mixed(0.8))

    def test_sign_pattern(self):
        for alpha in np.linspace(0.2, 2.0 * PI - 0.2, 23):
            same = cl.corner_coeff(cl.CornerKind("NN", alpha))
            mixed = cl.corner_coeff(cl.CornerKind("DN", alpha))
            if alpha < PI:
                assert same > 0.0
            elif alpha > PI:
                assert same < 0.0
            assert mixed < 0.0
        assert cl.corner_coeff(cl.CornerKind("NN", PI)) == 0.0

    def test_validation(self):
        with pytest.raises(DomainError):
            cl.CornerKind("DD", 0.0)
        with pytest.raises(DomainError):
            cl.CornerKind("DD", 2.0 * PI)
        with pytest.raises(DomainError):
            cl.CornerKind("XX", 1.0)


class TestConePoints:
    def test_smooth_opening(self):
        assert cl.cone_point_coeff(2.0 * PI) == 0.0

    def test_half_opening(self):
        assert cl.cone_point_coeff(PI) == pytest.approx(1.0 / 8.0)

    def test_formula(self):
        opening = PI / 2.0
        alpha = opening / 2.0
        assert cl.cone_point_coeff(opening) == pytest.approx(
            (PI**2 - alpha**2) / (12.0 * PI * alpha)
        )
        with pytest.raises(DomainError):
            cl.cone_point_coeff(0.0)


class TestFinitePartRoute:
    def test_dd_right_angle(self):
        fp = cl.corner_coeff_numeric("DD", PI / 2.0)
        assert fp == pytest.approx(1.0 / 16.0, abs=1e-4)

    def test_nn_equals_dd(self):
        # the zero-mode difference integrates to zero finite part
        for alpha in (PI / 3.0, 2.2):
            dd = cl.corner_coeff_numeric("DD", alpha)
            nn = cl.corner_coeff_numeric("NN", alpha)
            assert abs(nn - dd) <= 1e-5

    def test_dn_split_identity(self):
        for alpha in (PI / 3.0, PI / 2.0):
            dn = cl.corner_coeff_numeric("DN", alpha)
            dd_double = cl.corner_coeff_numeric("DD", 2.0 * alpha)
            dd_single = cl.corner_coeff_numeric("DD", alpha)
            assert abs(dn - dd_double + dd_single) <= 1e-5

    def test_i0_finite_part_vanishes(self):
        result = cl.i0_radial_finite_part()
        assert abs(result.finite_part) <= 1e-6
        assert result.condition_number >= 1.0

    def test_robin_pairs_rejected(self):
        with pytest.raises(UnsupportedBCError):
            cl.corner_finite_part("RR", 1.0)

    def test_full_result_structure(self):
        result = cl.corner_finite_part("DD", PI)
        assert result.finite_part == pytest.approx(0.0, abs=1e-4)
        assert -2 in result.divergent_coeffs
        assert len(result.epsilons_used) == 14


class TestTermContributions:
    def test_c_term(self):
        val = cl.term_contributions("C", PI / 2.0, radius=8.0)
        assert val == pytest.approx(1.0 / 16.0, abs=1e-3)

    def test_e_term(self):
        val = cl.term_contributions("E", PI / 2.0, radius=8.0)
        assert val == pytest.approx(-1.0 / 16.0, abs=1e-3)

    def test_f_term_no_contribution(self):
        for gamma in (PI / 2.0, 1.1):
            assert abs(cl.term_contributions("F", gamma, radius=8.0)) <= 1e-3

    def test_a_and_b_terms_no_t0_part(self):
        assert abs(cl.term_contributions("A", PI / 2.0, radius=8.0)) <= 1e-6
        assert abs(cl.term_contributions("B", PI / 2.0, radius=8.0)) <= 1e-3

    def test_c_term_other_angles(self):
        for gamma in (PI / 3.0, 2.0 * PI / 3.0):
            val = cl.term_contributions("C", gamma, radius=8.0)
            assert val == pytest.approx(closed_same(gamma), abs=1e-3)

    def test_validation(self):
        with pytest.raises(DomainError):
            cl.term_contributions("Z", 1.0)
        with pytest.raises(DomainError):
            cl.term_contributions("C", 7.0)
