import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from dispersim.phase import DispersionParams, dispersion_shape, gaussian_phase_average, phase_shift

from .conftest import dispersion_params


def test_phase_shift_examples():
    assert phase_shift(DispersionParams(0, 0, 1, 0.3), 5.0) == pytest.approx(0.3, abs=1e-15)
    assert phase_shift(DispersionParams(1, 0.5, 1, 0.0), 2.0) == pytest.approx(4.0, abs=1e-15)
    assert phase_shift(DispersionParams(0.5, 0.1, 1, math.pi), -1.0) == pytest.approx(math.pi - 0.4, abs=1e-15)


def test_phase_shift_vectorized():
    x = np.linspace(-2, 2, 7)
    p = DispersionParams(0.3, -0.2, 1.0, 0.1)
    np.testing.assert_allclose(phase_shift(p, x), 0.1 + 0.3 * x - 0.2 * x * x, atol=1e-15)


@given(dispersion_params(), st.floats(-5, 5), st.floats(0.01, 1.0))
def test_second_difference_is_two_beta_h2(p, x, h):
    d2 = phase_shift(p, x + h) - 2 * phase_shift(p, x) + phase_shift(p, x - h)
    assert d2 == pytest.approx(2 * p.beta_l * h * h, abs=1e-12)


def test_shape_examples():
    s = dispersion_shape(DispersionParams(1, 0, 1))
    assert (s.r1, s.r2, s.theta1, s.theta2) == (1.0, 1.0, 0.0, 0.0)
    assert s.zeta == pytest.approx(math.exp(-0.25), rel=1e-15)
    assert math.isinf(s.lambda1)

    s = dispersion_shape(DispersionParams(0, 1, 1))
    assert s.r1 == pytest.approx(math.sqrt(2), rel=1e-15)
    assert s.theta1 == pytest.approx(math.pi / 4, rel=1e-15)
    assert s.r2 == pytest.approx(math.sqrt(5) / 2, rel=1e-15)
    assert s.theta2 == pytest.approx(math.atan(0.5), rel=1e-15)
    assert s.zeta == 1.0
    assert math.isinf(s.lambda2)


def test_shape_zeta_from_lambdas():
    # Lambda1 = 2, Lambda2 = 1/2: the decay exponent is 1/(4 Lambda2 (1 + Lambda1^-2)) = 0.4
    s = dispersion_shape(DispersionParams(2, 1, 2))
    assert s.lambda1 == pytest.approx(2.0)
    assert s.lambda2 == pytest.approx(0.5)
    assert s.zeta == pytest.approx(math.exp(-0.4), rel=1e-14)


def test_zeta_matches_gaussian_average():
    # |<exp(i(phi - phi0))>| over the single-photon spectrum is zeta / sqrt(r1)
    for p in (DispersionParams(2, 1, 2), DispersionParams(0.7, -0.4, 0.8)):
        x = np.linspace(-12, 12, 200001) / math.sqrt(p.sigma)
        w = np.exp(-p.sigma * x * x)
        avg = np.sum(w * np.exp(1j * (p.alpha_l * x + p.beta_l * x * x))) / np.sum(w)
        s = dispersion_shape(p)
        assert abs(avg) == pytest.approx(s.zeta / math.sqrt(s.r1), rel=1e-10)
        assert avg == pytest.approx(gaussian_phase_average(p, p.sigma), rel=1e-10)


@given(dispersion_params(), st.sampled_from([0.5, 2.0, 10.0]))
def test_shape_scaling_invariance(p, t):
    a, b = dispersion_shape(p), dispersion_shape(p.rescaled(t))
    for name in ("r1", "r2", "theta1", "theta2", "zeta"):
        assert getattr(b, name) == pytest.approx(getattr(a, name), rel=1e-13, abs=1e-15)
    for name in ("lambda1", "lambda2"):
        x, y = getattr(a, name), getattr(b, name)
        assert (math.isinf(x) and math.isinf(y)) or y == pytest.approx(x, rel=1e-12)


@given(dispersion_params())
def test_shape_ranges(p):
    s = dispersion_shape(p)
    assert s.r1 >= 1 and s.r2 >= 1
    assert abs(s.theta1) < math.pi / 2 and abs(s.theta2) < math.pi / 2
    assert 0 < s.zeta <= 1
    if p.alpha_l == 0:
        assert s.zeta == 1


@pytest.mark.parametrize("sigma", [0.0, -1.0, float("nan")])
def test_rejects_bad_sigma(sigma):
    with pytest.raises(ValueError):
        DispersionParams(0, 0, sigma)


def test_negative_beta_accepted():
    s = dispersion_shape(DispersionParams(0, -1, 1))
    assert s.theta1 == pytest.approx(-math.pi / 4)
