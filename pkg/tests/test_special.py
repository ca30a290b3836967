import math

import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate
from scipy.special import lambertw

from piradiance.special import (
    NoSignChange,
    NonPositiveArgument,
    ToleranceNotMet,
    bernoulli,
    detect_divergence,
    find_root,
    gamma,
    integrate_interval,
    integrate_semiinfinite,
    zeta_even,
)


def planck_integrand(x):
    return x**3 * math.exp(-x) / -math.expm1(-x)


# ---------------------------------------------------------------- gamma


@pytest.mark.parametrize("x, expected", [(3, 2.0), (4, 6.0), (1, 1.0), (0.5, math.sqrt(math.pi))])
def test_gamma_exact_values(x, expected):
    assert gamma(x) == pytest.approx(expected, rel=1e-13)


def test_gamma_thiesen_value():
    assert abs(gamma(3.5) - 3.3234) <= 5e-5


def test_gamma_against_stdlib_on_grid():
    xs = [0.5 + 0.0125 * i for i in range(2361)]  # [0.5, 30]
    worst = max(abs(gamma(x) / math.gamma(x) - 1) for x in xs)
    assert worst <= 1e-12


@pytest.mark.parametrize("bad", [0.0, -1.0, -0.5, float("nan")])
def test_gamma_rejects_non_positive(bad):
    with pytest.raises(NonPositiveArgument):
        gamma(bad)


def test_gamma_small_argument_reflection():
    assert gamma(0.1) == pytest.approx(math.gamma(0.1), rel=1e-13)


@given(st.floats(min_value=0.5, max_value=20))
def test_gamma_recurrence(x):
    assert gamma(x + 1) == pytest.approx(x * gamma(x), rel=1e-11)


# ---------------------------------------------------------------- zeta


def test_bernoulli_numbers():
    expected = ["1", "-1/2", "1/6", "-1/30", "1/42", "-1/30", "5/66", "-691/2730"]
    assert [str(bernoulli(n)) for n in (0, 1, 2, 4, 6, 8, 10, 12)] == expected
    assert bernoulli(3) == 0


def test_zeta_four():
    assert zeta_even(2) == pytest.approx(math.pi**4 / 90, rel=1e-14)
    assert zeta_even(2) == pytest.approx(1.082323233711138, rel=1e-14)


def test_zeta_two_by_direct_summation():
    n = 10**6
    partial = math.fsum(1.0 / (i * i) for i in range(1, n + 1))
    # Euler-Maclaurin tail of sum_{i>n} 1/i^2
    tail = 1.0 / n - 1.0 / (2 * n * n) + 1.0 / (6 * n**3)
    assert zeta_even(1) == pytest.approx(partial + tail, rel=1e-13)
    assert zeta_even(1) == pytest.approx(math.pi**2 / 6, rel=1e-14)


@pytest.mark.parametrize("k", [3, 4, 5, 8])
def test_zeta_higher_by_summation(k):
    direct = math.fsum(1.0 / i ** (2 * k) for i in range(1, 2000))
    assert zeta_even(k) == pytest.approx(direct, rel=1e-14)


def test_planck_integral_product():
    assert gamma(4) * zeta_even(2) == pytest.approx(math.pi**4 / 15, rel=1e-12)


# ---------------------------------------------------------------- quadrature


def test_quadrature_planck_integral():
    res = integrate_semiinfinite(planck_integrand, tol=1e-8)
    assert res.converged and res.abs_error_estimate <= 1e-8
    assert res.value == pytest.approx(6.49393940, abs=1e-8)
    assert res.value == pytest.approx(math.pi**4 / 15, rel=1e-7)


def test_quadrature_wien_integral():
    res = integrate_semiinfinite(lambda x: x**3 * math.exp(-x))
    assert res.value == pytest.approx(6.0, abs=1e-8)


def test_quadrature_thiesen_integral():
    res = integrate_semiinfinite(lambda x: x**2.5 * math.exp(-x))
    assert res.value == pytest.approx(gamma(3.5), rel=1e-9)


@pytest.mark.parametrize("chi", [1, 2, 3, 3.5, 4, 5])
def test_quadrature_reproduces_gamma(chi):
    res = integrate_semiinfinite(lambda x: x ** (chi - 1) * math.exp(-x))
    assert res.value == pytest.approx(gamma(chi), rel=1e-7)


@pytest.mark.parametrize(
    "f",
    [lambda x: 1 / (1 + x * x), lambda x: math.exp(-x * x), lambda x: x * math.exp(-2 * x) * math.cos(x) ** 2],
    ids=["lorentz", "gauss", "damped"],
)
def test_quadrature_against_scipy(f):
    expected, _ = integrate.quad(f, 0, math.inf, epsabs=1e-12)
    assert integrate_semiinfinite(f).value == pytest.approx(expected, abs=1e-8)


def test_finite_interval():
    res = integrate_interval(math.sin, 0.0, math.pi)
    assert res.value == pytest.approx(2.0, abs=1e-12)


def test_tolerance_not_met():
    # 1/sqrt(x) on (0, inf) diverges at both ends
    with pytest.raises(ToleranceNotMet):
        integrate_semiinfinite(lambda x: x**-0.5, tol=1e-8)


# ---------------------------------------------------------------- divergence


@pytest.mark.parametrize(
    "f, divergent",
    [
        (lambda x: 1 / x, True),
        (lambda x: x * x, True),
        (lambda x: 1.0, True),
        (lambda x: x**3 * math.exp(-x), False),
        (planck_integrand, False),
        (lambda x: x**-3, False),
    ],
    ids=["inverse", "quadratic", "constant", "wien", "planck", "inverse-cube"],
)
def test_detect_divergence(f, divergent):
    verdict = detect_divergence(f)
    assert verdict.divergent is divergent
    assert verdict.classification == ("divergent" if divergent else "convergent")


def test_divergence_witness_log_growth():
    # every dyadic panel of 1/x integrates to ln 2
    assert detect_divergence(lambda x: 1 / x).witness == pytest.approx(1.0, rel=1e-9)


# ---------------------------------------------------------------- roots


def test_planck_displacement_root():
    root = find_root(lambda x: x - 3 * (1 - math.exp(-x)), 1, 5)
    assert root == pytest.approx(2.82144, abs=1e-5)
    closed_form = 3 + lambertw(-3 * math.exp(-3)).real
    assert root == pytest.approx(closed_form, abs=1e-10)


def test_root_linear():
    assert find_root(lambda x: x - 1, 0, 2) == pytest.approx(1.0, abs=1e-10)


def test_root_wien_paschen_peak():
    N = -1
    assert find_root(lambda x: x - (2 - N), 0, 10) == pytest.approx(3.0, abs=1e-10)


def test_root_with_derivative():
    root = find_root(lambda x: x * x - 2, 0, 2, dg=lambda x: 2 * x)
    assert root == pytest.approx(math.sqrt(2), abs=1e-10)


def test_no_sign_change():
    with pytest.raises(NoSignChange):
        find_root(lambda x: x * x + 1, -1, 1)


@given(
    st.floats(min_value=-50, max_value=50),
    st.floats(min_value=0.01, max_value=20),
    st.floats(min_value=0.01, max_value=20),
)
def test_root_stays_in_bracket(r, left, right):
    lo, hi = r - left, r + right
    g = lambda x: math.atan(x - r) + 0.1 * (x - r) ** 3
    x = find_root(g, lo, hi, tol=1e-12)
    assert lo <= x <= hi
    assert abs(g(x)) <= 1e-12
