from __future__ import annotations

import math
from fractions import Fraction

import pytest

from weierforms import (
    DomainError,
    FormSpec,
    RationalPair,
    cusp_report,
    cusp_value,
    cusp_value_f,
    cusp_value_f_series,
    cusp_value_h,
    eval_f,
    lattice_row_sum_truncated,
    lemma_eies_bound,
    verify_zeta2_recovery,
)

PI = math.pi
ZETA3 = 1.2020569031595943  # classical constant, for the closed-bound spot check


def pair(s, t):
    return RationalPair.of(s, t)


class TestClosedCuspValuesF:
    def test_half(self):
        assert abs(cusp_value_f(pair(0, Fraction(1, 2))) - 2 * PI**2 / 3) < 1e-12

    def test_third(self):
        assert abs(cusp_value_f(pair(0, Fraction(1, 3))) - PI**2) < 1e-12

    def test_nonintegral_s_branch(self):
        assert abs(cusp_value_f(pair(Fraction(1, 2), 0)) + PI**2 / 3) < 1e-14
        assert abs(cusp_value_f(pair(Fraction(1, 3), Fraction(1, 5))) + PI**2 / 3) < 1e-14

    def test_integral_rejected(self):
        with pytest.raises(DomainError):
            cusp_value_f(pair(1, 0))

    GRID = [
        (0, Fraction(1, 2)),
        (0, Fraction(1, 3)),
        (0, Fraction(1, 4)),
        (Fraction(1, 2), 0),
        (Fraction(1, 3), Fraction(1, 3)),
        (Fraction(1, 2), Fraction(1, 2)),
    ]

    @pytest.mark.parametrize("s,t", GRID)
    def test_numeric_limits_on_grid(self, s, t):
        p = pair(s, t)
        cv = eval_f(p, 20j, 1e-8)
        assert abs(cv.value - cusp_value_f(p)) <= 1e-6


class TestSeriesIdentity:
    def test_half_value(self):
        cv = cusp_value_f_series(Fraction(1, 2), 60)
        assert abs(cv.value - 2 * PI**2 / 3) < 1e-10

    def test_third_value(self):
        cv = cusp_value_f_series(Fraction(1, 3), 80)
        assert abs(cv.value - PI**2) < 1e-10

    def test_quarter_matches_closed_form(self):
        cv = cusp_value_f_series(Fraction(1, 4), 80)
        closed = cusp_value_f(pair(0, Fraction(1, 4)))
        assert abs(cv.value - closed) <= cv.error

    @pytest.mark.parametrize(
        "t", [Fraction(1, 6), Fraction(1, 5), Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3)]
    )
    def test_identity_grid(self, t):
        cv = cusp_value_f_series(t, 80)
        closed = cusp_value_f(pair(0, t))
        assert abs(cv.value - closed) < 1e-10
        assert abs(cv.value - closed) <= cv.error  # stated tail bound honored

    def test_domain(self):
        with pytest.raises(DomainError):
            cusp_value_f_series(Fraction(3, 2), 40)
        with pytest.raises(DomainError):
            cusp_value_f_series(Fraction(1, 2), 0)

    def test_tail_bound_decreases_with_terms(self):
        e1 = cusp_value_f_series(Fraction(1, 2), 20).error
        e2 = cusp_value_f_series(Fraction(1, 2), 40).error
        assert e2 < e1


class TestClosedCuspValuesH:
    def test_value_at_third_is_real_sqrt3_pi(self):
        v = cusp_value_h(2, Fraction(1, 3))
        assert abs(v.real - math.sqrt(3.0) * PI) < 1e-12
        assert abs(v.imag) < 1e-12

    def test_r_minus_one_vanishes(self):
        for t in (Fraction(1, 5), Fraction(1, 3), Fraction(2, 7)):
            assert abs(cusp_value_h(-1, t)) < 1e-12

    @pytest.mark.parametrize("r,t", [(2, Fraction(1, 5)), (3, Fraction(1, 5)), (2, Fraction(2, 7))])
    def test_conjugate_symmetry(self, r, t):
        a = cusp_value_h(r, t)
        b = cusp_value_h(r, 1 - t)
        assert abs(b - (-a.conjugate())) < 1e-12

    def test_poles_rejected(self):
        with pytest.raises(DomainError):
            cusp_value_h(2, Fraction(3, 1))
        with pytest.raises(DomainError):
            cusp_value_h(3, Fraction(1, 3))
        with pytest.raises(DomainError):
            cusp_value_h(0, Fraction(1, 3))

    def test_matches_numeric_limit(self):
        form = FormSpec.h_form(2, 0, Fraction(1, 3))
        cv = form.evaluate(20j, 1e-8)
        assert abs(cv.value - cusp_value_h(2, Fraction(1, 3))) < 1e-6


class TestRowBound:
    def test_spot_value(self):
        zeta2 = PI**2 / 6
        expected = 4.0 * ZETA3 / 8.0 + 2.0 * PI * zeta2 / 4.0
        assert abs(lemma_eies_bound(3, 2.0) - expected) < 1e-9

    def test_monotone_in_height(self):
        assert lemma_eies_bound(3, 4.0) < lemma_eies_bound(3, 2.0)

    def test_domain(self):
        with pytest.raises(DomainError):
            lemma_eies_bound(2, 1.0)

    @pytest.mark.parametrize("k", [3, 4, 5])
    @pytest.mark.parametrize("im_tau", [1.0, 2.0, 5.0, 10.0])
    def test_truncated_sum_below_bound(self, k, im_tau):
        truncated = lattice_row_sum_truncated(k, complex(0.0, im_tau), shells=500)
        assert truncated < lemma_eies_bound(k, im_tau)


class TestZetaRecovery:
    def test_recovery_passes(self):
        report = verify_zeta2_recovery()
        assert report.passed
        assert report.rows[-1].zeta2_residual < 1e-8

    def test_residuals_decrease_then_floor(self):
        report = verify_zeta2_recovery()
        assert report.rows[0].limit_residual >= report.rows[1].limit_residual - 1e-14

    def test_other_label_same_limit(self):
        report = verify_zeta2_recovery(label=RationalPair.of(Fraction(1, 3), Fraction(1, 5)))
        assert report.passed

    def test_integral_s_rejected(self):
        with pytest.raises(DomainError):
            verify_zeta2_recovery(label=RationalPair.of(0, Fraction(1, 2)))


class TestReports:
    def test_cusp_report_valid(self):
        rep = cusp_report(FormSpec.wp_form(0, Fraction(1, 2)), 20.0, 1e-8)
        assert rep.valid
        assert rep.residual < 1e-6
        assert abs(rep.closed_form - 2 * PI**2 / 3) < 1e-12

    def test_cusp_value_dispatch(self):
        assert abs(cusp_value(FormSpec.wp_form(0, Fraction(1, 3))) - PI**2) < 1e-12
        with pytest.raises(DomainError):
            cusp_value(FormSpec.zeta_form(0, Fraction(1, 3)))
        with pytest.raises(DomainError):
            cusp_value(FormSpec.h_form(2, Fraction(1, 2), Fraction(1, 3)))
