import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from numerov import (
    GeneralizedCoeffs,
    NormalFormCoeffs,
    StepFailure,
    StepTriple,
    central_derivative,
    normal_form_q,
    numerov_step,
    numerov_step_general,
)

finite = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)
steps = st.floats(1e-4, 0.5, allow_nan=False)


def _const(k2):
    return NormalFormCoeffs(k2, k2, k2)


def test_zero_k2_is_linear_extrapolation():
    assert numerov_step(StepTriple(0.0, 0.1, 0.1), _const(0.0)) == 0.2


@pytest.mark.parametrize("k2, f", [(1.0, math.sin), (-1.0, math.sinh)])
def test_constant_k2_matches_analytic(k2, f):
    got = numerov_step(StepTriple(f(0.0), f(0.1), 0.1), _const(k2))
    assert abs(got - f(0.2)) < 1e-8


def _sinc(x):
    return math.sin(x) / x


def test_general_step_sinc():
    # y'' = -(2/x) y' - y
    x, d = 1.0, 0.01
    g = GeneralizedCoeffs(2 / (x + d), -2 / (x + d) ** 2, 1.0, 1.0, 1.0)
    got = numerov_step_general(StepTriple(_sinc(x), _sinc(x + d), d), g)
    assert abs(got - _sinc(x + 2 * d)) < 1e-9


def test_general_step_hydrogen_ground_state():
    x, d = 1.0, 0.01
    xc = x + d
    g = GeneralizedCoeffs(2 / xc, -2 / xc**2, -1 + 2 / x, -1 + 2 / xc, -1 + 2 / (xc + d))
    got = numerov_step_general(StepTriple(math.exp(-x), math.exp(-xc), d), g)
    assert abs(got - math.exp(-(xc + d))) < 1e-8


def test_vanishing_denominator_raises():
    d = 0.5
    k2 = -12.0 / d**2
    with pytest.raises(StepFailure):
        numerov_step(StepTriple(0.0, 1.0, d), NormalFormCoeffs(0.0, 0.0, k2))
    with pytest.raises(StepFailure):
        numerov_step_general(StepTriple(0.0, 1.0, d), GeneralizedCoeffs(0.0, 0.0, 0.0, 0.0, k2))


@pytest.mark.parametrize("delta", [0.0, -0.1, math.nan])
def test_step_triple_rejects_bad_delta(delta):
    with pytest.raises(ValueError):
        StepTriple(0.0, 1.0, delta)


def test_coefficients_reject_non_finite():
    with pytest.raises(ValueError):
        NormalFormCoeffs(0.0, math.inf, 0.0)
    with pytest.raises(ValueError):
        GeneralizedCoeffs(math.nan, 0.0, 0.0, 0.0, 0.0)


@pytest.mark.parametrize(
    "P, dP, Q, expected",
    [
        (0.0, 0.0, 5.0, 5.0),
        (2.0, -2.0, 3.0, 3.0),
        (1.0, -0.5, -7.25, -7.25),
        (3.0, 1.0, 1.0, 1.0 - 9.0 / 4.0 - 0.5),
    ],
)
def test_normal_form_examples(P, dP, Q, expected):
    assert normal_form_q(P, dP, Q) == expected


@given(st.integers(-20, 20), finite)
def test_normal_form_cancels_exactly_at_powers_of_two(k, Q):
    x = 2.0**k
    assert normal_form_q(2 / x, -2 / x**2, Q) == Q


@given(st.floats(1e-3, 1e3), finite)
def test_normal_form_cancels_for_inverse_x(x, Q):
    # P*P/4 and dP/2 are rounded independently, so for general x the
    # cancellation holds to a few ulp of 1/x**2 rather than bit for bit
    got = normal_form_q(2 / x, -2 / x**2, Q)
    assert abs(got - Q) <= 4 * np.spacing(max(abs(Q), 1 / x**2))


@given(st.floats(-50, 50))
def test_normal_form_linear_p(x):
    assert normal_form_q(x, 1.0, 1.0) == pytest.approx(1 - x * x / 4 - 0.5, abs=1e-12 * (1 + x * x))


def test_central_derivative_examples():
    assert central_derivative(0.3, 0.3, 0.1) == 0.0
    assert abs(central_derivative(math.sin(0.49), math.sin(0.51), 0.01) - math.cos(0.5)) < 2e-5


@given(finite, steps)
def test_central_derivative_of_linear_is_slope(x, d):
    d = 2.0 ** round(math.log2(d))
    assert central_derivative(x - d, x + d, d) == pytest.approx(1.0, rel=1e-12, abs=1e-9 / d)


@given(finite, finite, steps)
def test_central_derivative_antisymmetric(a, b, d):
    assert central_derivative(a, b, d) == -central_derivative(b, a, d)


@given(st.integers(-1000, 1000), st.integers(-1000, 1000), st.integers(-64, 64), st.integers(1, 8))
def test_linear_propagation_is_exact(c0, c1, xi, di):
    x, d = xi / 8, di / 8
    t = StepTriple(c0 + c1 * (x - d), c0 + c1 * x, d)
    assert numerov_step(t, _const(0.0)) == c0 + c1 * (x + d)


@settings(max_examples=10_000, deadline=None)
@given(finite, finite, finite, finite, finite, steps)
def test_general_reduces_to_standard(psi0, psi1, s0, s1, s2, d):
    t = StepTriple(psi0, psi1, d)
    try:
        expected = numerov_step(t, NormalFormCoeffs(s0, s1, s2))
    except StepFailure:
        with pytest.raises(StepFailure):
            numerov_step_general(t, GeneralizedCoeffs(0.0, 0.0, s0, s1, s2))
        return
    got = numerov_step_general(t, GeneralizedCoeffs(0.0, 0.0, s0, s1, s2))
    assert abs(got - expected) <= 2 * np.spacing(abs(expected))


def test_local_order_of_standard_step():
    x0 = 1.0
    deltas = np.array([0.2, 0.1, 0.05])
    errors = []
    for d in deltas:
        got = numerov_step(StepTriple(math.sin(x0 - d), math.sin(x0), d), _const(1.0))
        errors.append(abs(got - math.sin(x0 + d)))
    slope = np.polyfit(np.log(deltas), np.log(errors), 1)[0]
    assert slope >= 5.5
