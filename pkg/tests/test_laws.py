import io
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from piradiance.constants import C_LIGHT, SIGMA, TABLE1, WIEN_C
from piradiance.laws import (
    LAW_NAMES,
    ConstantOne,
    DivergentIntegral,
    DomainError,
    Exponential,
    NoMaximum,
    PlanckDistribution,
    PowerLaw,
    RadiationLaw,
    RadiationLawError,
    UnknownLaw,
    classify_extreme,
    energy_density,
    energy_integral,
    evaluate_criteria,
    exponential_law,
    find_peak,
    law_from_dict,
    log_grid,
    peak_nu_over_T,
    preset_law,
    rayleigh_jeans_density,
    sample_spectrum,
    spectral_density,
    spectral_density_derivatives,
    stefan_constant,
    universal_function,
    write_spectrum_csv,
)

K, ETA = TABLE1["planck"]


def fd_derivatives(law, nu, T):
    """Five-point central differences of U in nu."""
    h1, h2 = nu * 1e-5, nu * 1e-4
    u = lambda x: spectral_density(law, x, T)
    d1 = (-u(nu + 2 * h1) + 8 * u(nu + h1) - 8 * u(nu - h1) + u(nu - 2 * h1)) / (12 * h1)
    d2 = (-u(nu + 2 * h2) + 16 * u(nu + h2) - 30 * u(nu) + 16 * u(nu - h2) - u(nu - 2 * h2)) / (12 * h2**2)
    return d1, d2


# ---------------------------------------------------------------- universal functions


@pytest.mark.parametrize("x", [1e-3, 0.5, 3.0, 40.0])
def test_exponential_identities(x):
    phi = Exponential()
    assert phi.derivative(x) == -phi(x)
    assert phi.second_derivative(x) == phi(x)


@pytest.mark.parametrize("x", [1e-6, 0.1, 2.0, 30.0])
def test_planck_distribution_matches_naive_form(x):
    phi = PlanckDistribution()
    naive = 1.0 / (math.exp(x) - 1.0)
    assert phi(x) == pytest.approx(naive, rel=1e-9)
    h = x * 1e-5
    assert phi.derivative(x) == pytest.approx((phi(x + h) - phi(x - h)) / (2 * h), rel=1e-7)


def test_planck_distribution_small_and_large_x():
    phi = PlanckDistribution()
    assert 1e-8 * phi(1e-8) == pytest.approx(1.0, abs=1e-8)
    assert phi(1000.0) == 0.0


def test_universal_function_parser():
    assert universal_function("planck") == PlanckDistribution()
    assert universal_function("power:-3") == PowerLaw(-3.0)
    assert universal_function("one") == ConstantOne()
    with pytest.raises(RadiationLawError):
        universal_function("gaussian")


# ---------------------------------------------------------------- construction


def test_law_rejects_bad_parameters():
    with pytest.raises(RadiationLawError):
        RadiationLaw("x", 3.0, Exponential(), K, ETA)
    with pytest.raises(RadiationLawError):
        RadiationLaw("x", 0.0, Exponential(), -K, ETA)


def test_unknown_preset():
    with pytest.raises(UnknownLaw):
        preset_law("stefan")


def test_law_from_dict():
    law = law_from_dict({"name": "w", "N": -1, "phi": "exponential", "k": K, "eta": ETA})
    assert law == RadiationLaw("w", -1.0, Exponential(), K, ETA, C_LIGHT)
    with pytest.raises(RadiationLawError):
        law_from_dict({"N": -1})


# ---------------------------------------------------------------- spectral density


def test_planck_closed_form():
    law = preset_law("planck")
    for nu, T in [(1e13, 300.0), (5e14, 5800.0), (1e9, 3.0)]:
        x = ETA * nu / (K * T)
        expected = 8 * math.pi * ETA * nu**3 / C_LIGHT**3 / math.expm1(x)
        assert spectral_density(law, nu, T) == pytest.approx(expected, rel=1e-12)


def test_rayleigh_jeans_closed_form():
    law = preset_law("rayleigh-jeans")
    for nu, T in [(1e10, 1.0), (3e14, 6000.0)]:
        assert spectral_density(law, nu, T) == pytest.approx(
            8 * math.pi * nu**2 * K * T / C_LIGHT**3, rel=1e-14
        )


@pytest.mark.parametrize("x", [1e-3, 1e-5, 1e-8])
def test_planck_tends_to_rayleigh_jeans(x):
    T = 300.0
    nu = x * K * T / ETA
    ratio = spectral_density(preset_law("planck"), nu, T) / rayleigh_jeans_density(nu, T, K)
    assert 1 - x <= ratio <= 1


@pytest.mark.parametrize("x", [1e-3, 1e-4, 1e-6])
def test_wien_paschen_maclaurin(x):
    law = preset_law("wien-paschen")
    T = 1000.0
    nu = x * law.k * T / law.eta
    approx = rayleigh_jeans_density(nu, T, law.k) * x / (1 + x)
    assert spectral_density(law, nu, T) == pytest.approx(approx, rel=1e-6)


def test_domain_errors():
    law = preset_law("planck")
    with pytest.raises(DomainError):
        spectral_density(law, 0.0, 300.0)
    with pytest.raises(DomainError):
        spectral_density_derivatives(law, 1e12, -1.0)


@settings(max_examples=200)
@given(
    st.sampled_from(LAW_NAMES),
    st.floats(min_value=1e6, max_value=1e16),
    st.floats(min_value=1.0, max_value=1e5),
)
def test_density_non_negative(name, nu, T):
    assert spectral_density(preset_law(name), nu, T) >= 0.0


# ---------------------------------------------------------------- derivatives


@pytest.mark.parametrize("N", [-1.0, -0.5, 0.0, 1.0, 1.9])
def test_exponential_extreme_is_maximum(N):
    law = exponential_law(N, K, ETA)
    x = find_peak(law)
    assert x == pytest.approx(2 - N, rel=1e-12)
    T = 500.0
    beta = ETA / (K * T)
    nu_e = x / beta
    d1, d2 = spectral_density_derivatives(law, nu_e, T)
    alpha = 8 * math.pi * ETA / C_LIGHT**3
    assert abs(d1) <= 1e-12 * spectral_density(law, nu_e, T) / nu_e
    # curvature at the peak: (N - 2) (alpha / beta) (2 - N)^-N e^(N - 2)
    expected = (N - 2) * alpha / beta * (2 - N) ** (-N) * math.exp(N - 2)
    assert d2 == pytest.approx(expected, rel=1e-10)
    assert d2 < 0


@pytest.mark.parametrize("N", [-2.0, -1.0, 0.0, 1.5])
def test_power_law_extreme_is_inflection(N):
    law = RadiationLaw("power", N, PowerLaw(N - 2), K, ETA)
    T = 300.0
    for x in (0.3, 1.0, 7.0):
        nu = x * K * T / ETA
        d1, d2 = spectral_density_derivatives(law, nu, T)
        scale = spectral_density(law, nu, T) / nu**2
        assert abs(d2) <= 1e-9 * scale
    assert classify_extreme(law)[0] == "inflection"
    with pytest.raises(NoMaximum):
        find_peak(law)


def test_derivatives_against_finite_differences():
    rng = random.Random(20240601)
    laws = [preset_law(n) for n in LAW_NAMES] + [exponential_law(1.0, K, ETA)]
    for _ in range(100):
        law = rng.choice(laws)
        T = 10 ** rng.uniform(0, 4)
        x = 10 ** rng.uniform(-2, 1.3)
        nu = x * law.k * T / law.eta
        a1, a2 = spectral_density_derivatives(law, nu, T)
        f1, f2 = fd_derivatives(law, nu, T)
        u = spectral_density(law, nu, T)
        assert abs(a1 - f1) <= 1e-6 * max(abs(a1), u / nu)
        assert abs(a2 - f2) <= 1e-6 * max(abs(a2), u / nu**2)


# ---------------------------------------------------------------- peaks


def test_peaks():
    assert find_peak(preset_law("planck")) == pytest.approx(2.82144, abs=1e-5)
    assert find_peak(preset_law("wien-paschen")) == pytest.approx(3.0, rel=1e-12)
    assert find_peak(preset_law("thiesen")) == pytest.approx(2.5, rel=1e-12)
    assert find_peak(preset_law("rayleigh")) == pytest.approx(2.0, rel=1e-12)


def test_planck_peak_nu_over_T():
    assert peak_nu_over_T(preset_law("planck")) == pytest.approx(WIEN_C, rel=1e-4)


def test_no_maximum_cases():
    with pytest.raises(NoMaximum):
        find_peak(preset_law("rayleigh-jeans"))
    # 2 <= N < 3 is allowed but the exponential law is then monotone decreasing
    assert classify_extreme(exponential_law(2.5, K, ETA)) == ("none", None)


# ---------------------------------------------------------------- criteria


def test_criteria_planck():
    rep = evaluate_criteria(preset_law("planck"))
    assert rep.red_pass and rep.violet_pass and rep.strengthened_violet_pass
    assert not rep.energy_integral.divergent
    assert rep.energy_integral_value == pytest.approx(math.pi**4 / 15, rel=1e-9)
    assert rep.max_kind == "maximum"
    assert rep.peak_X == pytest.approx(2.82144, abs=1e-5)


def test_criteria_wien_paschen():
    rep = evaluate_criteria(preset_law("wien-paschen"))
    assert not rep.red_pass
    assert rep.red_limit == pytest.approx(1e-8, rel=1e-6)
    assert rep.violet_pass and rep.strengthened_violet_pass
    assert rep.energy_integral_value == pytest.approx(6.0, rel=1e-9)


def test_criteria_rayleigh_jeans():
    rep = evaluate_criteria(preset_law("rayleigh-jeans"))
    assert not rep.violet_pass
    assert rep.energy_integral.divergent
    assert rep.energy_integral_value is None
    assert rep.max_kind == "none"


def test_criteria_log_divergent_power_law():
    # Phi = X^(N-3) makes the energy integrand exactly 1/X
    rep = evaluate_criteria(RadiationLaw("p", -1.0, PowerLaw(-4.0), K, ETA))
    assert rep.energy_integral.divergent


def test_criteria_report_serializes():
    d = evaluate_criteria(preset_law("thiesen")).to_dict()
    assert d["energy_integral"]["classification"] == "convergent"
    assert d["max_kind"] == "maximum"


# ---------------------------------------------------------------- energy density


def test_stefan_constant_planck():
    assert stefan_constant(preset_law("planck")) == pytest.approx(SIGMA, rel=2e-3)


def test_stefan_constant_wien_paschen():
    assert stefan_constant(preset_law("wien-paschen")) == pytest.approx(SIGMA, rel=5e-3)


def test_energy_density_t4():
    law = preset_law("planck")
    assert energy_density(law, 600.0) / energy_density(law, 300.0) == pytest.approx(16.0, rel=1e-14)


def test_energy_density_divergent():
    with pytest.raises(DivergentIntegral):
        energy_density(preset_law("rayleigh-jeans"), 300.0)


@pytest.mark.parametrize("name, expected", [("rayleigh", 2.0), ("thiesen", 3.3233509704478426)])
def test_energy_integral_gamma(name, expected):
    verdict, value = energy_integral(preset_law(name))
    assert not verdict.divergent
    assert value == pytest.approx(expected, rel=1e-9)


# ---------------------------------------------------------------- spectra


def test_planck_spectrum_peak_on_grid():
    grid = log_grid(1e8, 1e12, 512)
    samples = sample_spectrum(preset_law("planck"), grid)
    best = max(samples, key=lambda s: s.U_over_T3)
    step = grid[1] / grid[0]
    assert WIEN_C / step <= best.nu_over_T <= WIEN_C * step


def test_rayleigh_jeans_spectrum_increasing():
    samples = sample_spectrum(preset_law("rayleigh-jeans"), log_grid(1e8, 1e12, 64))
    values = [s.U_over_T3 for s in samples]
    assert all(b > a for a, b in zip(values, values[1:]))


def test_planck_and_wien_agree_in_violet():
    law_p = preset_law("planck")
    law_w = preset_law("wien-paschen", k=K, eta=ETA)
    grid = [x * K / ETA for x in (10, 12, 15, 20, 30)]
    for p, w in zip(sample_spectrum(law_p, grid), sample_spectrum(law_w, grid)):
        assert p.U_over_T3 == pytest.approx(w.U_over_T3, rel=1e-2)


def test_thiesen_close_to_planck():
    # largest gap relative to the Planck peak over the default grid
    grid = log_grid(1e8, 1e12, 512)
    p = [s.U_over_T3 for s in sample_spectrum(preset_law("planck"), grid)]
    t = [s.U_over_T3 for s in sample_spectrum(preset_law("thiesen"), grid)]
    gap = max(abs(a - b) for a, b in zip(p, t)) / max(p)
    assert gap < 0.08


@pytest.mark.parametrize("name", LAW_NAMES)
def test_spectrum_scale_invariance(name):
    law = preset_law(name)
    grid = log_grid(1e8, 1e12, 50)
    a = sample_spectrum(law, grid, check_T=300.0)
    for s in a:
        other = spectral_density(law, s.nu_over_T * 6000.0, 6000.0) / 6000.0**3
        assert other == pytest.approx(s.U_over_T3, rel=1e-12)


def test_spectrum_grid_validation():
    with pytest.raises(DomainError):
        sample_spectrum(preset_law("planck"), [1e10, 1e9])
    with pytest.raises(DomainError):
        sample_spectrum(preset_law("planck"), [0.0, 1e9])


def test_csv_format():
    buf = io.StringIO()
    write_spectrum_csv(sample_spectrum(preset_law("planck"), [1e10, 2e10]), buf)
    lines = buf.getvalue().split("\n")
    assert lines[0] == "nu_over_T,U_over_T3"
    assert lines[-1] == ""
    x, u = lines[1].split(",")
    assert float(x) == 1e10
    assert float(u) == spectral_density(preset_law("planck"), 1e10, 1.0)
