import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.integrate import quad

from memcentre.errors import DomainError
from memcentre.special import (CAUCHY_SCALE, DEFAULT_GUARD, EvalGuard, l_bar, l_exact,
                               l_exact_derivative, l_quadrature, l_sqrt_derivative,
                               weight_kernel)

finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False)


def scipy_l(a):
    """Third-party oracle for the defining integral of L."""
    pts = [a] if -1 < a < 1 else None
    val, _ = quad(lambda x: 0.75 * math.log(abs(x - a)) * (1 - x * x) if x != a else 0.0,
                  -1, 1, points=pts, limit=200, epsabs=1e-13, epsrel=1e-13)
    return val


def test_l_exact_special_values():
    assert l_exact(0.0) == -4.0 / 3.0
    assert l_exact(1.0) == math.log(2) - 5.0 / 6.0
    assert l_exact(-1.0) == math.log(2) - 5.0 / 6.0


def test_l_at_one_value():
    # ln 2 - 5/6, the limit value at the singular point
    assert l_exact(1.0) == pytest.approx(-0.1401861527733880, abs=1e-15)


def test_l_at_two_matches_quadrature():
    # quadrature value frozen from scipy.integrate.quad: 0.6666666666666666
    assert l_exact(2.0) == pytest.approx(0.6666666666666666, abs=1e-12)
    assert scipy_l(2.0) == pytest.approx(0.6666666666666666, abs=1e-12)


@pytest.mark.parametrize("a", [0.5, 3.0, 10.0])
def test_l_even_examples(a):
    assert l_exact(-a) == l_exact(a)


@given(finite)
def test_evenness_is_bitwise(a):
    assert l_exact(a) == l_exact(-a)
    assert l_bar(a) == l_bar(-a)
    assert l_exact_derivative(a) == -l_exact_derivative(-a)


def test_evenness_on_1000_points():
    a = np.random.default_rng(11).normal(0, 5, 1000)
    assert np.array_equal(l_exact(a), l_exact(-a))
    assert np.array_equal(l_bar(a), l_bar(-a))


@pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
def test_non_finite_rejected(bad):
    for f in (l_exact, l_exact_derivative, l_bar, weight_kernel):
        with pytest.raises(DomainError):
            f(bad)


def test_scalar_and_array_agree():
    a = np.array([-3.0, -1.0, -0.2, 0.0, 0.7, 1.0, 2.0, 2.5, 40.0])
    vec = l_exact(a)
    assert isinstance(l_exact(0.7), float)
    assert list(vec) == [l_exact(float(x)) for x in a]


def test_quadrature_matches_scipy():
    for a in [-4.0, -1.0, -0.3, 0.0, 0.999, 1.5, 7.0]:
        assert l_quadrature(a) == pytest.approx(scipy_l(a), abs=1e-9)


def test_quadrature_examples():
    assert l_quadrature(0.0, 1024) == pytest.approx(-4.0 / 3.0, abs=1e-6)
    assert l_quadrature(2.0, 1024) == pytest.approx(0.6666666666666666, abs=1e-6)
    assert l_quadrature(50.0, 1024) == pytest.approx(math.log(50.0), abs=2e-4)


def test_quadrature_needs_enough_panels():
    with pytest.raises(DomainError):
        l_quadrature(0.0, panels=32)


def test_closed_form_matches_quadrature_on_grid():
    grid = np.linspace(-5, 5, 500)
    grid = grid[~DEFAULT_GUARD.in_band(grid)]
    worst = max(abs(l_exact(a) - l_quadrature(a)) for a in grid)
    assert worst <= 1e-6


def test_continuous_across_guard_bands():
    r = DEFAULT_GUARD.singular_radius
    for centre in (0.0, 1.0, -1.0):
        for edge in (centre - r, centre + r):
            inside = l_exact(edge + (1e-12 if edge < centre else -1e-12))
            assert abs(l_exact(edge) - inside) <= 1e-6
        assert abs(l_exact(centre) - l_exact(centre + r)) <= 1e-3


def test_near_one_has_no_cancellation():
    for eps in [1e-3, 1e-6, 1e-9, 1e-12]:
        assert l_exact(1 - eps) == pytest.approx(scipy_l(1 - eps), abs=1e-9)
        assert l_exact(1 + eps) == pytest.approx(scipy_l(1 + eps), abs=1e-9)


@pytest.mark.parametrize("a", [1.0001, 1.5, 2.0, 2.0001, 5.0, 10.0, 100.0, 1e4, 1e8])
def test_asymptotic_bound(a):
    diff = l_exact(a) - math.log(a)
    assert 0.0 >= diff >= 0.5 * math.log1p(-1.0 / (a * a))


def test_series_switch_is_continuous():
    lo, hi = np.nextafter(2.0, 0), np.nextafter(2.0, 3)
    assert abs(l_exact(lo) - l_exact(hi)) < 1e-14
    assert abs(l_exact_derivative(lo) - l_exact_derivative(hi)) < 1e-14


def test_derivative_examples():
    assert l_exact_derivative(0.0) == 0.0
    assert l_exact_derivative(1.0) == 1.5
    assert l_exact_derivative(-1.0) == -1.5
    d = 1e-6
    fd = (l_exact(3 + d) - l_exact(3 - d)) / (2 * d)
    assert l_exact_derivative(3.0) == pytest.approx(fd, rel=1e-6)


def test_sqrt_parametrised_derivative():
    # d/ds L(sqrt s) at s = 1 is 3/4
    assert l_sqrt_derivative(1.0) == 0.75
    assert l_sqrt_derivative(0.0) == 1.5
    assert l_sqrt_derivative(1e-12) == pytest.approx(1.5, abs=1e-5)
    for s in [0.3, 2.0, 9.0]:
        d = 1e-6
        fd = (l_exact(math.sqrt(s + d)) - l_exact(math.sqrt(s - d))) / (2 * d)
        assert l_sqrt_derivative(s) == pytest.approx(fd, rel=1e-6)


def test_derivative_matches_finite_differences():
    rng = np.random.default_rng(5)
    pts = rng.uniform(-10, 10, 400)
    pts = pts[~DEFAULT_GUARD.in_band(pts)][:200]
    assert pts.size == 200
    d = 1e-6
    for a in pts:
        fd = (l_exact(a + d) - l_exact(a - d)) / (2 * d)
        assert l_exact_derivative(a) == pytest.approx(fd, rel=1e-6)


def test_l_bar_examples():
    assert l_bar(0.0) == -4.0 / 3.0
    assert l_bar(0.0) == l_exact(0.0)
    # 1/2 ln(e^{-8/3} + 100) - ln 10 = 1/2 ln(1 + e^{-8/3}/100) ~ 3.47e-4
    assert l_bar(10.0) == pytest.approx(0.5 * math.log(CAUCHY_SCALE + 100.0), rel=1e-15)
    assert 0 < l_bar(10.0) - math.log(10) < 3.5e-4


@pytest.mark.parametrize("a", [20.0, 35.0, 100.0, 1e3, -20.0])
def test_surrogate_agreement_far_out(a):
    assert abs(l_bar(a) - l_exact(a)) <= 1e-3


def test_weight_kernel_values():
    assert weight_kernel(0.0) == pytest.approx(math.exp(8 / 3), rel=1e-15)
    assert weight_kernel(0.0) == pytest.approx(14.3919, abs=1e-4)
    assert weight_kernel(CAUCHY_SCALE) == pytest.approx(7.1960, abs=1e-4)
    assert weight_kernel(1.0) == pytest.approx(1 / (math.exp(-8 / 3) + 1), rel=1e-15)
    assert weight_kernel(1.0) == pytest.approx(0.9350308, abs=1e-7)
    with pytest.raises(DomainError):
        weight_kernel(-1e-9)


@given(st.floats(min_value=0, max_value=1e8), st.floats(min_value=1e-6, max_value=1e3))
def test_weight_kernel_decreasing_and_bounded(s, ds):
    assert weight_kernel(s + ds) < weight_kernel(s) <= math.exp(8 / 3) * (1 + 1e-15)


def test_weight_is_twice_derivative_of_surrogate():
    for s in np.geomspace(1e-6, 1e6, 60):
        # d/ds l_bar(sqrt s) = 1 / (2 (e^{-8/3} + s)), differentiated by hand
        analytic = 0.5 / (CAUCHY_SCALE + s)
        assert weight_kernel(s) == pytest.approx(2 * analytic, rel=1e-12)
        d = 1e-4 * s
        fd = (l_bar(math.sqrt(s + d)) - l_bar(math.sqrt(s - d))) / (2 * d)
        assert weight_kernel(s) == pytest.approx(2 * fd, rel=1e-6)


def test_eval_guard_validation():
    with pytest.raises(DomainError):
        EvalGuard(0.0)
    with pytest.raises(DomainError):
        EvalGuard(0.5)
    g = EvalGuard(0.1)
    assert list(g.in_band([0.05, 0.5, 0.95, 1.2])) == [True, False, True, False]
