import math

import pytest
from hypothesis import given, strategies as st

from fuzzreg.fuzzy_core import TriangularFuzzyNumber as T, shift
from fuzzreg.fuzzy_random import (DiscreteFuzzyRandomVariable as DFRV, Interval,
                                  expected_value, one_sigma_interval, std_dev, variance)

X11 = DFRV([(T(5, 4, 6), 0.39), (T(5, 4, 6), 0.27), (T(10, 8, 12), 0.34)])
X21 = DFRV([(T(3, 2, 4), 0.31), (T(4, 3, 5), 0.29), (T(13, 11, 15), 0.40)])


def test_example_mixture_mean():
    v = DFRV([(T(5, 1, 9), 0.2), (T(8, 4, 12), 0.8)])
    assert expected_value(v) == pytest.approx(7.4, abs=1e-12)


def test_example_mixture_variance():
    # 0.2 * E[(-2.4;-6.4;1.6)^2] + 0.8 * E[(0.6;-3.4;4.6)^2] with alpha-cut oracle values
    v = DFRV([(T(5, 1, 9), 0.2), (T(8, 4, 12), 0.8)])
    assert variance(v) == pytest.approx(5.429066666666669, abs=1e-9)


@pytest.mark.parametrize("var, e, v, lo, hi", [
    # variances frozen from the alpha-cut oracle
    (X11, 6.70, 6.283333333333333, 4.19, 9.21),
    (X21, 7.29, 22.61923333333333, 2.53, 12.05),
])
def test_table_rows(var, e, v, lo, hi):
    assert expected_value(var) == pytest.approx(e, abs=1e-9)
    assert variance(var) == pytest.approx(v, abs=1e-9)
    iv = one_sigma_interval(var)
    assert (iv.lower, iv.upper) == pytest.approx((lo, hi), abs=0.005)


def test_crisp():
    v = DFRV.crisp(3.5)
    assert expected_value(v) == 3.5
    assert variance(v) == 0.0
    assert one_sigma_interval(v) == Interval(3.5, 3.5)


class TestValidation:
    def test_empty(self):
        with pytest.raises(ValueError):
            DFRV([])

    def test_zero_probability(self):
        with pytest.raises(ValueError):
            DFRV([(T(1, 0, 2), 0.0), (T(2, 1, 3), 1.0)])

    def test_sum_outside_tolerance(self):
        with pytest.raises(ValueError):
            DFRV([(T(1, 0, 2), 0.5), (T(2, 1, 3), 0.53)])

    def test_renormalized(self):
        v = DFRV([(T(4, 3, 5), 0.29), (T(4, 3, 5), 0.37), (T(12, 10, 14), 0.35)])
        assert math.fsum(v.probabilities) == pytest.approx(1.0, abs=1e-15)

    def test_kept_as_given(self):
        v = DFRV([(T(4, 3, 5), 0.29), (T(4, 3, 5), 0.37), (T(12, 10, 14), 0.35)], normalize=False)
        assert v.probabilities == (0.29, 0.37, 0.35)
        assert expected_value(v) == pytest.approx(6.84)

    def test_not_a_triangle(self):
        with pytest.raises(TypeError):
            DFRV([((1, 0, 2), 1.0)])

    def test_bad_interval(self):
        with pytest.raises(ValueError):
            Interval(2, 1)


def _mixtures():
    tri = st.builds(lambda c, a, b: T(c, c - a, c + b),
                    st.floats(-20, 20), st.floats(0, 5), st.floats(0, 5))
    return st.lists(st.tuples(tri, st.floats(0.05, 1.0)), min_size=1, max_size=5).map(
        lambda comps: DFRV([(t, w / sum(x for _, x in comps)) for t, w in comps]))


@given(_mixtures(), st.floats(-50, 50))
def test_translation(v, m):
    moved = DFRV([(shift(t, -m), p) for t, p in v.components])
    assert expected_value(moved) == pytest.approx(expected_value(v) + m, abs=1e-9)
    assert variance(moved) == pytest.approx(variance(v), abs=1e-9 * max(1.0, variance(v)))


@given(_mixtures())
def test_variance_nonnegative_and_interval_centered(v):
    assert variance(v) >= 0
    iv = one_sigma_interval(v)
    assert iv.midpoint == pytest.approx(expected_value(v), abs=1e-9)
    assert iv.width / 2 == pytest.approx(std_dev(v), abs=1e-9)


@given(_mixtures(), st.floats(0.985, 1.015))
def test_probability_scaling(v, k):
    scaled = DFRV([(t, p * k) for t, p in v.components])
    assert expected_value(scaled) == pytest.approx(expected_value(v), abs=1e-9)
    assert variance(scaled) == pytest.approx(variance(v), abs=1e-9 * max(1.0, variance(v)))


def test_zero_variance_only_for_crisp_at_mean():
    assert variance(DFRV([(T(2, 2, 2), 0.5), (T(2, 2, 2), 0.5)])) == 0.0
    assert variance(DFRV([(T(2, 2, 2), 0.5), (T(3, 3, 3), 0.5)])) > 0
    assert variance(DFRV([(T(2, 1.9, 2.1), 1.0)])) > 0
