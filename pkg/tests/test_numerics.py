import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import jv

from hcmgrip.numerics import (
    BESSEL_CROSSOVER,
    ConvergenceError,
    Tolerance,
    bessel_j_quarter,
    find_root,
    gamma_fn,
    integrate,
    minimize_scalar,
)
from hcmgrip.selftest import load_oracles

ORACLES = load_oracles()


def rel(a, b):
    return abs(a - b) / abs(b)


# -- gamma -------------------------------------------------------------------

def test_gamma_trivial():
    assert gamma_fn(1.0) == 1.0
    assert gamma_fn(5.0) == pytest.approx(24.0, rel=1e-15)


@pytest.mark.parametrize("x", ["1.25", "0.5", "7.3", "29.5"])
def test_gamma_vs_frozen_oracle(x):
    assert rel(gamma_fn(float(x)), ORACLES["gamma"][x]) < 1e-12


@settings(max_examples=200)
@given(x=st.floats(0.5, 30.0))
def test_gamma_vs_mpmath(x):
    assert rel(gamma_fn(x), float(mpmath.gamma(x))) < 1e-12


@pytest.mark.parametrize("x", [0.0, -1.0, -0.5])
def test_gamma_domain(x):
    with pytest.raises(ValueError):
        gamma_fn(x)


# -- J_{1/4} -------------------------------------------------------------------

def test_bessel_zero():
    assert bessel_j_quarter(0.0) == 0.0


def test_bessel_small_argument_limit():
    lead = lambda x: (x / 2) ** 0.25 / math.gamma(1.25)
    ratios = [bessel_j_quarter(x) / lead(x) for x in (1e-2, 1e-4, 1e-8)]
    assert abs(ratios[-1] - 1.0) < 1e-15
    assert [abs(r - 1) for r in ratios] == sorted((abs(r - 1) for r in ratios), reverse=True)


def test_bessel_grid_oracle():
    grid = ORACLES["bessel_j_quarter_grid"]
    assert len(grid) == 50
    assert grid[0][0] == pytest.approx(1e-3) and grid[-1][0] == pytest.approx(50.0)
    worst = max(rel(bessel_j_quarter(x), want) for x, want in grid)
    assert worst < 1e-10


@pytest.mark.parametrize("x", ["1", "5", "20"])
def test_bessel_spot_oracle(x):
    assert rel(bessel_j_quarter(float(x)), ORACLES["bessel_j_quarter_spot"][x]) < 1e-10


@settings(max_examples=300, deadline=None)
@given(x=st.floats(1e-3, 50.0))
def test_bessel_vs_mpmath(x):
    want = float(mpmath.besselj(0.25, x))
    # relative error against the local envelope, so zeros of J do not dominate
    envelope = max(abs(want), math.sqrt(2 / (math.pi * x)) * 1e-3)
    assert abs(bessel_j_quarter(x) - want) / envelope < 1e-10


def test_bessel_domain():
    with pytest.raises(ValueError):
        bessel_j_quarter(-1e-9)
    with pytest.raises(ValueError):
        bessel_j_quarter(float("nan"))


@settings(max_examples=500, deadline=None)
@given(x=st.floats(0.5, 30.0))
def test_bessel_ode_residual(x):
    h = 1e-2
    f = bessel_j_quarter
    fm2, fm1, f0, fp1, fp2 = (f(x + k * h) for k in (-2, -1, 0, 1, 2))
    d1 = (fm2 - 8 * fm1 + 8 * fp1 - fp2) / (12 * h)
    d2 = (-fm2 + 16 * fm1 - 30 * f0 + 16 * fp1 - fp2) / (12 * h * h)
    residual = x * x * d2 + x * d1 + (x * x - 1.0 / 16.0) * f0
    assert abs(residual) < 1e-6 * max(1.0, abs(f0))


def test_branch_overlap_near_crossover():
    from hcmgrip import numerics

    for x in np.linspace(BESSEL_CROSSOVER - 2.0, BESSEL_CROSSOVER + 2.0, 41):
        series = numerics._series_sum_decimal(float(x)) * (0.5 * x) ** 0.25 / numerics._GAMMA_5_4
        asym = numerics._hankel(float(x))
        assert abs(series - asym) < 1e-9 * max(abs(series), 1e-2), x


def test_bessel_matches_scipy_dense():
    xs = np.geomspace(1e-3, 50.0, 2001)
    ours = np.array([bessel_j_quarter(float(x)) for x in xs])
    ref = jv(0.25, xs)
    envelope = np.maximum(np.abs(ref), 1e-3 * np.sqrt(2 / (np.pi * xs)))
    assert np.max(np.abs(ours - ref) / envelope) < 1e-10


# -- quadrature ----------------------------------------------------------------

def test_integrate_polynomial():
    assert abs(integrate(lambda x: x * x, 0.0, 1.0) - 1.0 / 3.0) < 1e-12


def test_integrate_sin():
    assert abs(integrate(math.sin, 0.0, math.pi) - 2.0) < 1e-12


def test_integrate_empty_and_reversed():
    assert integrate(math.exp, 1.0, 1.0) == 0.0
    with pytest.raises(ValueError):
        integrate(math.exp, 1.0, 0.0)


def test_integrate_nonfinite_integrand_rejected():
    with pytest.raises(ValueError):
        integrate(lambda x: float("inf"), 0.0, 1.0)


def test_integrate_nonconvergence_is_explicit():
    # oscillation far beyond what 3 bisections can resolve
    tol = Tolerance(absolute=1e-14, relative=1e-14, max_iterations=3)
    with pytest.raises(ConvergenceError):
        integrate(lambda x: math.sin(1e4 * x), 0.0, 1.0, tol)


def _richardson_sqrt_endpoint(f, n):
    """Trapezoid on [0, 1] with the leading endpoint error terms eliminated.

    sqrt(1 - z) contributes h^1.5, h^2.5 terms at z = 1, z^(1/4) from J_{1/4}
    contributes h^1.25, h^2.25 at z = 0, plus the regular h^2.
    """
    def trap(m):
        z = np.linspace(0.0, 1.0, m + 1)
        y = f(z)
        return (1.0 / m) * (0.5 * y[0] + y[1:-1].sum() + 0.5 * y[-1])

    exponents = (1.25, 1.5, 2.0, 2.25, 2.5)
    levels = [trap(n // 2**k) for k in range(len(exponents) + 1)]  # h, 2h, 4h, ...
    for p in exponents:
        factor = 2.0**p
        levels = [(factor * levels[i] - levels[i + 1]) / (factor - 1) for i in range(len(levels) - 1)]
    return levels[0]


def test_integrate_sqrt_bessel_vs_richardson_grid():
    oracle = _richardson_sqrt_endpoint(lambda z: np.sqrt(1.0 - z) * jv(0.25, z), 2**20)
    got = integrate(lambda z: math.sqrt(1.0 - z) * bessel_j_quarter(z), 0.0, 1.0)
    assert rel(got, oracle) < 1e-9
    assert rel(got, ORACLES["quadrature"]["sqrt_one_minus_z_j_quarter"]) < 1e-10


def test_integrate_deterministic():
    f = lambda z: math.sqrt(1.0 - z) * bessel_j_quarter(3 * z)
    assert integrate(f, 0.0, 1.0) == integrate(f, 0.0, 1.0)


@settings(max_examples=100, deadline=None)
@given(c=st.floats(0.01, 0.99), w=st.floats(0.5, 20.0))
def test_integrate_additive(c, w):
    f = lambda x: math.sqrt(1.0 - x) * math.cos(w * x) + x**3
    whole = integrate(f, 0.0, 1.0)
    parts = integrate(f, 0.0, c) + integrate(f, c, 1.0)
    tol = 1e-10 * abs(whole) + 1e-14
    assert abs(whole - parts) <= 2 * tol


# -- root finding --------------------------------------------------------------

def test_root_linear():
    assert find_root(lambda x: x - 2.0, 0.0, 5.0) == pytest.approx(2.0, abs=1e-14)


def test_root_sqrt2():
    assert abs(find_root(lambda x: x * x - 2.0, 0.0, 2.0) - math.sqrt(2.0)) < 1e-12


def test_root_endpoint_zero():
    assert find_root(lambda x: x, 0.0, 1.0) == 0.0


def test_root_no_sign_change():
    with pytest.raises(ValueError, match="sign change"):
        find_root(lambda x: x * x + 1.0, -1.0, 1.0)


@given(c=st.floats(1e-6, 1e6), r=st.floats(-10.0, 10.0))
def test_root_invariant_under_positive_scaling(c, r):
    f = lambda x: math.tanh(x - r)
    a = find_root(f, -20.0, 20.0)
    b = find_root(lambda x: c * f(x), -20.0, 20.0)
    assert abs(a - b) < 1e-12 * max(1.0, abs(r))
    assert abs(a - r) < 1e-12 * max(1.0, abs(r))


# -- minimization --------------------------------------------------------------

def test_minimize_quadratic():
    x, fx = minimize_scalar(lambda x: (x - 1.0) ** 2, 0.0, 3.0)
    assert x == pytest.approx(1.0, abs=1e-8)
    assert fx == pytest.approx(0.0, abs=1e-15)


def test_minimize_kink():
    x, fx = minimize_scalar(abs, -1.0, 2.0)
    assert abs(x) < 1e-9 and fx == abs(x)


def test_minimize_monotone_returns_endpoint():
    x, fx = minimize_scalar(lambda x: -x, 0.0, 1.0)
    assert x == 1.0 and fx == -1.0


def test_minimize_never_worse_than_endpoints():
    f = lambda x: math.sin(7 * x) + 0.1 * x
    x, fx = minimize_scalar(f, 0.0, 4.0)
    assert fx <= f(0.0) and fx <= f(4.0)
    assert fx == f(x)


def test_minimize_handles_infinite_penalty():
    f = lambda x: math.inf if x < 0.3 else (x - 0.5) ** 2
    x, fx = minimize_scalar(f, 0.0, 1.0)
    assert x == pytest.approx(0.5, abs=1e-7)


def test_minimize_bad_bracket():
    with pytest.raises(ValueError):
        minimize_scalar(abs, 1.0, 1.0)


def test_minimize_iteration_budget_is_explicit():
    with pytest.raises(ConvergenceError):
        minimize_scalar(abs, -1.0, 2.0, Tolerance(absolute=1e-300, relative=1e-300, max_iterations=5))


@given(c=st.floats(1e-6, 1e6), m=st.floats(-5.0, 5.0))
def test_minimize_invariant_under_positive_scaling(c, m):
    f = lambda x: (x - m) ** 2 + 1.0
    a, _ = minimize_scalar(f, -10.0, 10.0)
    b, _ = minimize_scalar(lambda x: c * f(x), -10.0, 10.0)
    assert abs(a - b) < 1e-6
