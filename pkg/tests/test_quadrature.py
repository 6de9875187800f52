import numpy as np
import pytest

from loopcs.quadrature import (QuadratureConvergenceError, QuadratureSpec,
                               integrate_circle)
from loopcs.verify import check_quadrature_exactness

TWO_PI = 2.0 * np.pi


def test_constant_integrand():
    assert abs(integrate_circle(lambda x: np.ones_like(x)) - TWO_PI) < 1e-14


def test_sine_squared():
    assert abs(integrate_circle(lambda x: np.sin(x) ** 2) - np.pi) < 1e-12


def test_closed_form_high_frequency():
    # cos(8a)^2 + 1/4 integrates to pi + pi/2 = 3 pi / 2
    got = integrate_circle(lambda x: np.cos(8 * x) ** 2 + 0.25)
    assert abs(got - 1.5 * np.pi) < 1e-10


def test_trig_polynomial_exactness():
    result = check_quadrature_exactness(np.random.default_rng(20240))
    assert result.passed, result.detail


def test_scalar_only_integrand():
    # non-vectorized callables fall back to pointwise sampling
    got = integrate_circle(lambda x: float(np.cos(x)) ** 2, QuadratureSpec(n=64))
    assert abs(got - np.pi) < 1e-12


def test_romberg_rule():
    spec = QuadratureSpec(n=32, tol=1e-12, rule="romberg")
    assert abs(integrate_circle(lambda x: np.sin(x) ** 2, spec) - np.pi) < 1e-10
    assert abs(integrate_circle(lambda x: np.ones_like(x), spec) - TWO_PI) < 1e-12


def test_non_convergence_carries_estimates():
    # wildly oscillating near 0; no hope at this tolerance within two doublings
    spec = QuadratureSpec(n=16, tol=1e-15, max_refinements=2)
    with pytest.raises(QuadratureConvergenceError) as err:
        integrate_circle(lambda x: np.sin(1.0 / (x + 0.01)), spec)
    assert isinstance(err.value.last, float)
    assert isinstance(err.value.previous, float)
    assert err.value.last != err.value.previous


def test_spec_validation():
    with pytest.raises(ValueError):
        QuadratureSpec(n=8)
    with pytest.raises(ValueError):
        QuadratureSpec(n=17)
    with pytest.raises(ValueError):
        QuadratureSpec(tol=0.0)
    with pytest.raises(ValueError):
        QuadratureSpec(rule="midpoint")
