"""Closed-form formula, exact-rational cross-check, and derived limits."""
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from interchange import exact_chain
from interchange.closed_form import (
    ConvergenceError,
    ModelParams,
    expected_cycles,
    expected_cycles_at_x,
    expected_cycles_by_k,
    expected_cycles_float_at_x,
    expected_distance,
    formula_parts,
    giant_component_theta,
    incomplete_beta_tail,
    phi,
    slowdown_u,
    small_k_density,
)

# independent fixed-point evaluation of the tree-function identity:
# solve T e^-T = 2 e^-2 with T < 1, then u(2) = 1 - (T - T^2/2)/2
TREE_U2 = 0.8380974405270213
# bisection of 1 - z = e^-2z on [0.5, 0.99]
THETA2 = 0.7968121300200199


def test_model_params():
    params = ModelParams(10, 3, 0.5)
    assert params.x == pytest.approx(math.exp(-1.5), rel=1e-15)
    assert ModelParams(10, 3, 0.0).x == 1.0
    with pytest.raises(ValueError):
        ModelParams(10, 11, 0.1)
    with pytest.raises(ValueError):
        ModelParams(10, 3, -0.1)


def test_phi_boundaries():
    assert phi(1.0, 7, 1) == 1.0
    assert phi(1.0, 7, 3) == 0.0
    assert phi(0.0, 7, 3) == 0.0
    assert phi(0.0, 7, 7) == 1.0  # 0^0 convention
    with pytest.raises(ValueError):
        phi(1.2, 7, 3)


def test_phi_peaks_at_the_critical_point():
    for n, k in ((10, 4), (50, 25), (300, 100)):
        ys = np.linspace(1e-4, 1 - 1e-4, 4001)
        values = [phi(float(y), n, k) for y in ys]
        best = ys[int(np.argmax(values))]
        assert best == pytest.approx((n - k) / (n - 1), abs=2e-3)


def test_phi_log_space_large_n():
    value = phi(0.5, 5000, 2500)
    assert value == 0.0 or math.isfinite(value)


def test_incomplete_beta_tail_endpoints():
    assert incomplete_beta_tail(1.0, 9, 4) == 0.0
    full = incomplete_beta_tail(0.0, 9, 4)
    assert full == pytest.approx(
        math.factorial(5) * math.factorial(3) / math.factorial(9), rel=1e-13
    )
    # hand integral: int_{1/2}^1 (1-y) dy = 1/8
    assert incomplete_beta_tail(0.5, 2, 2) == pytest.approx(0.125, rel=1e-13)


@given(
    n=st.integers(min_value=2, max_value=400),
    k_frac=st.floats(min_value=0.0, max_value=1.0),
    t=st.floats(min_value=0.0, max_value=3.0),
)
@settings(max_examples=80, deadline=None)
def test_beta_identity_head_plus_tail(n, k_frac, t):
    k = max(1, min(n, round(1 + k_frac * (n - 1))))
    parts = formula_parts(n, k, t)
    total = math.exp(
        math.lgamma(n - k + 1) + math.lgamma(k) - math.lgamma(n + 1)
    )
    assert parts.head + parts.tail == pytest.approx(total, rel=1e-12)
    assert parts.head >= -1e-300 and parts.tail >= 0.0


def test_expected_cycles_boundary_values():
    assert expected_cycles(5, 1, 0.0) == 5.0
    assert expected_cycles(5, 3, 0.0) == 0.0
    for n, k in ((12, 1), (12, 5), (40, 40)):
        assert expected_cycles(n, k, 60.0) == pytest.approx(1.0 / k, abs=1e-12)


def test_expected_cycles_against_brute_force():
    value = expected_cycles(4, 2, 0.1)
    brute = exact_chain.brute_force_expected_cycles(4, 2, 0.1)
    assert value == pytest.approx(brute, abs=1e-12)
    # frozen spectral-decomposition value 1/2 + e^-0.6 - 1.5 e^-0.8
    assert value == pytest.approx(0.3748181899181941, rel=1e-13)


def test_expected_cycles_rejects_bad_args():
    with pytest.raises(ValueError):
        expected_cycles(4, 0, 0.1)
    with pytest.raises(ValueError):
        expected_cycles(4, 2, -0.1)


@given(num=st.integers(0, 2**20), den=st.just(2**20))
@settings(max_examples=40, deadline=None)
def test_exact_rational_two_element_chain(num, den):
    x = Fraction(num, den)
    assert expected_cycles_at_x(2, 2, x) == (1 - x) / 2


def test_exact_rational_identity_points():
    for n in (3, 10, 41):
        assert expected_cycles_at_x(n, 1, Fraction(1)) == n


def test_float_route_matches_exact_rational():
    worst = 0.0
    for n, k in ((7, 3), (20, 11), (36, 2), (60, 30), (60, 59)):
        exact = expected_cycles_at_x(n, k, Fraction(1, 2))
        value = expected_cycles_float_at_x(n, k, 0.5)
        worst = max(worst, abs(value - float(exact)) / float(exact))
    assert worst <= 1e-10


def test_float_route_matches_exact_at_time_points():
    # x rounded to an exactly-representable rational: error 0 <= 1e-30
    for n, k, t in ((17, 4, 0.05), (33, 20, 0.02), (60, 30, 0.0226), (58, 57, 0.01)):
        x = math.exp(-k * t)
        exact = expected_cycles_at_x(n, k, Fraction(x))
        value = expected_cycles(n, k, t)
        assert abs(value - float(exact)) <= 1e-10 * float(exact)


def test_vectorized_matches_scalar():
    n, t = 90, 0.013
    vector = expected_cycles_by_k(n, t)
    for k in (1, 2, 17, 45, 89, 90):
        assert vector[k - 1] == pytest.approx(expected_cycles(n, k, t), rel=1e-12)


def test_expected_distance_limits():
    assert expected_distance(300, 0.0) == 0.0
    n = 30
    harmonic = sum(1.0 / k for k in range(1, n + 1))
    assert expected_distance(n, 50.0) == pytest.approx(n - harmonic, abs=1e-6)


def test_expected_distance_matches_slowdown_curve():
    n = 2000
    for c in (0.5, 2.0):
        assert expected_distance(n, c / n) / n == pytest.approx(
            slowdown_u(c), abs=0.012
        )


def test_slowdown_linear_below_threshold():
    for c in np.arange(0.1, 0.95, 0.1):
        assert abs(slowdown_u(float(c)) - c / 2) <= 1e-6


def test_slowdown_strictly_slower_above_threshold():
    for c in (1.5, 2.0, 3.0):
        assert slowdown_u(c) < c / 2


def test_slowdown_continuous_at_threshold():
    assert slowdown_u(1.0, tol=1e-8) == pytest.approx(0.5, abs=1e-4)
    assert slowdown_u(1.0 - 1e-3) == pytest.approx(0.5, abs=2e-3)
    assert slowdown_u(1.0 + 1e-3) == pytest.approx(0.5, abs=2e-3)


def test_slowdown_matches_tree_function_oracle():
    assert slowdown_u(2.0) == pytest.approx(TREE_U2, abs=1e-9)


def test_slowdown_convergence_error():
    with pytest.raises(ConvergenceError):
        slowdown_u(1.0, tol=1e-300)
    with pytest.raises(ValueError):
        slowdown_u(-1.0)


def test_small_k_density_values():
    for c in (0.3, 1.0, 2.5):
        assert small_k_density(1, c) == pytest.approx(math.exp(-c), rel=1e-13)
    assert small_k_density(2, 1.0) == pytest.approx(math.exp(-2.0) / 2, rel=1e-13)


def test_small_k_density_is_the_fixed_k_limit():
    errors = [
        abs(expected_cycles(n, 3, 2.0 / n) / n - small_k_density(3, 2.0))
        for n in (500, 1000, 2000)
    ]
    assert errors[0] > errors[1] > errors[2]
    assert errors[2] < 1e-3


def test_giant_component_theta():
    assert giant_component_theta(2.0) == pytest.approx(THETA2, abs=1e-10)
    assert giant_component_theta(1.0 + 1e-6) < 1e-5
    assert giant_component_theta(40.0) == pytest.approx(1.0, abs=1e-10)
    with pytest.raises(ValueError):
        giant_component_theta(1.0)
    with pytest.raises(ValueError):
        giant_component_theta(0.5)


def test_giant_component_theta_solves_the_equation():
    for c in (1.1, 1.5, 2.0, 4.0, 9.0):
        z = giant_component_theta(c)
        assert 0.0 < z < 1.0
        assert 1.0 - z == pytest.approx(math.exp(-c * z), rel=1e-10)
