import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad

from fuzzreg.fuzzy_core import (CASE_NEG_LEFT, CASE_NEG_RIGHT, TriangularFuzzyNumber as T,
                                credibility_geq_square, expected_square,
                                expected_square_quadrature, expected_value, measures_geq,
                                measures_lt, membership, shift, square_profile)

# E[Y^2] values frozen from an independent alpha-cut integration
# (E = 1/2 * int_0^1 (inf + sup of the squared cut) d alpha, scipy quad).
ALPHA_CUT_ORACLE = {
    (-1.7, -2.7, -0.7): 3.2233333333333336,
    (-2.4, -6.4, 1.6): 10.922666666666668,
    (0.6, -3.4, 4.6): 4.055666666666668,
    (3.3, 1.3, 5.3): 12.223333333333333,
    (0.0, -1.0, 1.0): 0.16666666666666669,
}


def _reals(lo, hi):
    # keep squares out of the subnormal range
    return st.floats(lo, hi).filter(lambda v: v == 0 or abs(v) > 1e-100)


def triangles(max_abs=10.0, max_spread=10.0):
    return st.builds(
        lambda c, a, b: T(c, c - a, c + b),
        _reals(-max_abs, max_abs), _reals(0, max_spread), _reals(0, max_spread))


class TestTriangle:
    def test_rejects_unordered(self):
        with pytest.raises(ValueError):
            T(5, 6, 7)

    def test_rejects_nan(self):
        with pytest.raises(ValueError):
            T(float("nan"), 0, 1)

    def test_str(self):
        assert str(T(5, 4, 6)) == "(5; 4; 6)"


@pytest.mark.parametrize("tfn, x, grade", [
    (T(5, 4, 6), 4.5, 0.5),
    (T(5, 1, 9), 5, 1.0),
    (T(5, 4, 6), 7, 0.0),
    (T(3, 3, 3), 3, 1.0),
    (T(3, 3, 5), 3, 1.0),
])
def test_membership(tfn, x, grade):
    assert membership(tfn, x) == pytest.approx(grade)


@pytest.mark.parametrize("r, expected", [(3, (1, 1, 1)), (5, (1, 0, 0.5)), (7, (0, 0, 0))])
def test_measures_geq(r, expected):
    assert tuple(measures_geq(T(5, 4, 6), r)) == pytest.approx(expected)


@pytest.mark.parametrize("tfn, e", [(T(5, 1, 9), 5), (T(8, 4, 12), 8), (T(3, 1, 5), 3)])
def test_expected_value(tfn, e):
    assert expected_value(tfn) == pytest.approx(e)


def test_shift():
    y = shift(T(5, 1, 9), 7.4)
    assert (y.center, y.left, y.right) == pytest.approx((-2.4, -6.4, 1.6))
    assert shift(T(5, 1, 9), 0) == T(5, 1, 9)


class TestSquareProfile:
    def test_straddling_example(self):
        prof = square_profile(T(-2.4, -6.4, 1.6))
        assert prof.support == pytest.approx((0.0, 40.96))
        assert prof.core == pytest.approx(5.76)
        rise, fall = prof.pieces
        # rising (1.6 + sqrt z)/4 on [0, 2.4^2]
        assert (rise.z_lo, rise.z_hi) == pytest.approx((0, 5.76))
        assert (rise.intercept, rise.slope) == pytest.approx((0.4, 0.25))
        assert rise.rising and rise.case == CASE_NEG_RIGHT
        # falling (6.4 - sqrt z)/4 on [2.4^2, 6.4^2]
        assert (fall.z_lo, fall.z_hi) == pytest.approx((5.76, 40.96))
        assert (fall.intercept, fall.slope) == pytest.approx((1.6, -0.25))
        assert not fall.rising and fall.case == CASE_NEG_LEFT

    def test_negative_support(self):
        rise, fall = square_profile(T(-1.7, -2.7, -0.7)).pieces
        assert (rise.z_lo, rise.z_hi, rise.intercept, rise.slope) == pytest.approx(
            (0.49, 2.89, -0.7, 1.0))
        assert (fall.z_lo, fall.z_hi, fall.intercept, fall.slope) == pytest.approx(
            (2.89, 7.29, 2.7, -1.0))

    def test_symmetric_about_zero(self):
        prof = square_profile(T(0, -1, 1))
        assert len(prof.pieces) == 1
        p = prof.pieces[0]
        assert not p.rising
        assert (p.z_lo, p.z_hi, p.intercept, p.slope) == pytest.approx((0, 1, 1, -1))
        assert prof.membership(0.0) == 1.0

    @given(triangles())
    def test_unimodal(self, tfn):
        prof = square_profile(tfn)
        lo, hi = prof.support
        if hi <= lo:
            return
        zs = np.linspace(lo, hi, 301)
        mu = np.array([prof.membership(z) for z in zs])
        k = np.searchsorted(zs, prof.core)
        assert np.all(np.diff(mu[:k]) >= -1e-12)
        assert np.all(np.diff(mu[k:]) <= 1e-12)
        assert prof.membership(prof.core) == 1.0

    @given(triangles(), st.floats(0, 1))
    def test_matches_direct_definition(self, tfn, u):
        prof = square_profile(tfn)
        z = prof.support[0] + u * (prof.support[1] - prof.support[0])
        s = math.sqrt(z)
        direct = max(membership(tfn, s), membership(tfn, -s))
        assert prof.membership(z) == pytest.approx(direct, abs=1e-9)


class TestCredibilitySquare:
    def test_at_zero_straddling(self):
        assert credibility_geq_square(square_profile(T(-2.4, -6.4, 1.6)), 0.0) == pytest.approx(0.8)

    def test_below_support(self):
        assert credibility_geq_square(square_profile(T(-1.7, -2.7, -0.7)), 0.2) == 1.0

    @given(triangles())
    def test_half_at_core(self, tfn):
        prof = square_profile(tfn)
        assert credibility_geq_square(prof, prof.core) == 0.5

    def test_negative_r_rejected(self):
        with pytest.raises(ValueError):
            credibility_geq_square(square_profile(T(1, 0, 2)), -0.1)

    @given(triangles())
    def test_nonincreasing(self, tfn):
        prof = square_profile(tfn)
        zs = np.linspace(0, prof.support[1] + 1, 400)
        cr = [credibility_geq_square(prof, z) for z in zs]
        assert all(b <= a + 1e-12 for a, b in zip(cr, cr[1:]))


class TestExpectedSquare:
    @pytest.mark.parametrize("params, value", ALPHA_CUT_ORACLE.items())
    def test_alpha_cut_oracle(self, params, value):
        assert expected_square(T(*params)) == pytest.approx(value, abs=1e-12)

    def test_crisp_zero(self):
        assert expected_square(T(0, 0, 0)) == 0.0

    def test_crisp(self):
        assert expected_square(T(-3, -3, -3)) == pytest.approx(9.0)

    @given(_reals(-10, 10), _reals(0, 10))
    def test_symmetric_closed_form(self, c, s):
        if c - s < 0 < c + s:
            return
        assert expected_square(T(c, c - s, c + s)) == pytest.approx(c * c + s * s / 3, abs=1e-9)

    @pytest.mark.parametrize("params, value", [((-1.7, -2.7, -0.7), 3.2233), ((3.3, 1.3, 5.3), 12.2233)])
    def test_quadrature(self, params, value):
        assert expected_square_quadrature(T(*params), 10**6) == pytest.approx(value, abs=1e-4)

    def test_quadrature_crisp(self):
        assert expected_square_quadrature(T(0, 0, 0), 1000) == 0.0

    def test_quadrature_needs_steps(self):
        with pytest.raises(ValueError):
            expected_square_quadrature(T(0, -1, 1), 999)

    def test_richardson_convergence(self):
        # smooth pieces only; a sqrt kink at z = 0 lowers the order
        tfn = T(3.3, 1.3, 5.3)
        exact = expected_square(tfn)
        e1 = abs(expected_square_quadrature(tfn, 1000) - exact)
        e2 = abs(expected_square_quadrature(tfn, 2000) - exact)
        assert e2 < e1 / 3  # second order


def _cr_geq(tfn, r):
    return measures_geq(tfn, r).credibility


class TestMeasureProperties:
    @given(triangles(), st.floats(-25, 25))
    def test_ordering_and_duality(self, tfn, r):
        m = measures_geq(tfn, r)
        assert m.necessity <= m.credibility <= m.possibility
        assert m.credibility == pytest.approx(1 - measures_lt(tfn, r).credibility, abs=1e-12)

    @given(triangles())
    @settings(max_examples=200, deadline=None)
    def test_expected_value_is_credibility_integral(self, tfn):
        lo, hi = tfn.left - 1, tfn.right + 1
        kinks = (tfn.left, tfn.center, tfn.right)
        pos_part = _integrate(lambda r: _cr_geq(tfn, r), max(lo, 0.0), max(hi, 0.0), kinks)
        pos_part += max(lo, 0.0)  # Cr = 1 on [0, lo) when lo > 0
        # Cr{X <= r} = 1 - Cr{X > r}; equal to 1 - Cr{X >= r} almost everywhere
        neg_part = _integrate(lambda r: 1 - _cr_geq(tfn, r), min(lo, 0.0), min(hi, 0.0), kinks)
        neg_part += max(-hi, 0.0)  # Cr{X <= r} = 1 on (hi, 0] when hi < 0
        assert pos_part - neg_part == pytest.approx(expected_value(tfn), abs=1e-6)


def _integrate(f, a, b, kinks):
    if b <= a:
        return 0.0
    pts = [k for k in kinks if a < k < b]
    return quad(f, a, b, points=pts or None, epsabs=1e-10, limit=200)[0]
