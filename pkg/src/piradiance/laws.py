"""Generalized displacement law and the classical blackbody laws.

Every law here has the form::

    U(nu, T) = 8 pi nu^2 k T / c^3 * X^-N * Phi(X),    X = eta nu / (k T)

with displacement exponent ``N < 3`` and a universal function ``Phi``.
Rayleigh-Jeans is ``N = 0, Phi = 1``; the exponential family
``Phi = exp(-X)`` gives Rayleigh (N = 0), Thiesen (N = -1/2) and
Wien-Paschen (N = -1); Planck is ``N = -1, Phi = 1 / (exp(X) - 1)``.

Derivatives are taken with respect to ``nu`` at fixed ``T``.  With
``alpha = 8 pi eta / c^3`` and ``beta = eta / (k T)`` the prefactor is
``alpha * beta**(-N - 1)``::

    U'  = A nu^(1-N) [(2-N) Phi + X Phi']
    U'' = A nu^(-N)  [(1-N)(2-N) Phi + 2 (2-N) X Phi' + X^2 Phi'']
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from typing import IO, Iterable, Optional, Sequence

from .constants import C_LIGHT, TABLE1
from .special import (
    DEFAULT_QUAD_TOL,
    DivergenceVerdict,
    detect_divergence,
    find_root,
    integrate_semiinfinite,
)


class RadiationLawError(ValueError):
    pass


class DomainError(RadiationLawError):
    pass


class NoMaximum(RadiationLawError):
    pass


class DivergentIntegral(RadiationLawError, ArithmeticError):
    pass


class UnknownLaw(RadiationLawError, KeyError):
    pass


# --------------------------------------------------------------------------
# universal functions


class UniversalFunction:
    """Phi(X) with its first two derivatives; subclasses are value objects."""

    kind: str = ""

    def __call__(self, x: float) -> float:
        raise NotImplementedError

    def derivative(self, x: float) -> float:
        raise NotImplementedError

    def second_derivative(self, x: float) -> float:
        raise NotImplementedError

    def log_derivative(self, x: float) -> float:
        """Phi'(X) / Phi(X); finite where Phi underflows."""
        return self.derivative(x) / self(x)

    def describe(self) -> str:
        return self.kind


@dataclass(frozen=True)
class Exponential(UniversalFunction):
    kind = "exponential"

    def __call__(self, x):
        return math.exp(-x)

    def derivative(self, x):
        return -math.exp(-x)

    def second_derivative(self, x):
        return math.exp(-x)

    def log_derivative(self, x):
        return -1.0


@dataclass(frozen=True)
class PlanckDistribution(UniversalFunction):
    """1 / (exp(X) - 1), written as exp(-X) / (1 - exp(-X)) to avoid overflow."""

    kind = "planck"

    def __call__(self, x):
        return math.exp(-x) / -math.expm1(-x)

    def derivative(self, x):
        p = self(x)
        return -p * (1.0 + p)

    def second_derivative(self, x):
        p = self(x)
        return p * (1.0 + p) * (1.0 + 2.0 * p)

    def log_derivative(self, x):
        return -1.0 / -math.expm1(-x)


@dataclass(frozen=True)
class PowerLaw(UniversalFunction):
    exponent: float
    kind = "power"

    def __call__(self, x):
        return x**self.exponent

    def derivative(self, x):
        q = self.exponent
        return q * x ** (q - 1) if q != 0 else 0.0

    def second_derivative(self, x):
        q = self.exponent
        return q * (q - 1) * x ** (q - 2) if q not in (0, 1) else 0.0

    def log_derivative(self, x):
        return self.exponent / x

    def describe(self):
        return f"power:{self.exponent!r}"


@dataclass(frozen=True)
class ConstantOne(UniversalFunction):
    kind = "one"

    def __call__(self, x):
        return 1.0

    def derivative(self, x):
        return 0.0

    def second_derivative(self, x):
        return 0.0

    def log_derivative(self, x):
        return 0.0


def universal_function(spec: str) -> UniversalFunction:
    """Parse ``exponential``, ``planck``, ``one`` or ``power:<q>``."""
    spec = spec.strip().lower()
    if spec == "exponential":
        return Exponential()
    if spec == "planck":
        return PlanckDistribution()
    if spec == "one":
        return ConstantOne()
    if spec.startswith("power:"):
        try:
            return PowerLaw(float(spec.split(":", 1)[1]))
        except ValueError:
            pass
    raise RadiationLawError(f"unknown universal function {spec!r}")


# --------------------------------------------------------------------------
# laws


@dataclass(frozen=True)
class RadiationLaw:
    name: str
    N: float
    phi: UniversalFunction
    k: float
    eta: float
    c: float = C_LIGHT

    def __post_init__(self):
        if not self.N < 3:
            raise RadiationLawError(f"displacement exponent must satisfy N < 3, got {self.N}")
        for attr in ("k", "eta", "c"):
            if not getattr(self, attr) > 0:
                raise RadiationLawError(f"{attr} must be positive")

    def X(self, nu: float, T: float) -> float:
        return self.eta * nu / (self.k * T)

    def with_constants(self, k: float, eta: float) -> "RadiationLaw":
        return RadiationLaw(self.name, self.N, self.phi, k, eta, self.c)


LAW_SHAPES: dict[str, tuple[float, UniversalFunction]] = {
    "planck": (-1.0, PlanckDistribution()),
    "wien-paschen": (-1.0, Exponential()),
    "thiesen": (-0.5, Exponential()),
    "rayleigh": (0.0, Exponential()),
    "rayleigh-jeans": (0.0, ConstantOne()),
}
LAW_NAMES = tuple(LAW_SHAPES)


def preset_law(name: str, k: float | None = None, eta: float | None = None,
               c: float = C_LIGHT) -> RadiationLaw:
    """One of the five named laws, with tabulated constants unless overridden."""
    try:
        N, phi = LAW_SHAPES[name]
    except KeyError:
        raise UnknownLaw(f"unknown law {name!r}; choose from {', '.join(LAW_NAMES)}") from None
    k0, eta0 = TABLE1[name]
    return RadiationLaw(name, N, phi, k0 if k is None else k, eta0 if eta is None else eta, c)


def exponential_law(N: float, k: float, eta: float, c: float = C_LIGHT,
                    name: str | None = None) -> RadiationLaw:
    return RadiationLaw(name or f"exponential(N={N:g})", N, Exponential(), k, eta, c)


def law_from_dict(data: dict) -> RadiationLaw:
    """Build a law from ``{"name", "N", "phi", "k", "eta"[, "c"]}``."""
    try:
        return RadiationLaw(
            str(data.get("name", "custom")),
            float(data["N"]),
            universal_function(str(data["phi"])),
            float(data["k"]),
            float(data["eta"]),
            float(data.get("c", C_LIGHT)),
        )
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, RadiationLawError):
            raise
        raise RadiationLawError(f"bad law description: {exc}") from exc


def _check_domain(nu: float, T: float) -> None:
    if not (nu > 0 and T > 0):
        raise DomainError(f"need nu > 0 and T > 0, got nu={nu}, T={T}")


def _scaled_phi(law: RadiationLaw, x: float) -> float:
    # X^-N Phi(X); 0 * inf cannot happen for Phi -> 0 faster than X^N grows
    if law.N == 0:
        return law.phi(x)
    return x ** (-law.N) * law.phi(x)


def spectral_density(law: RadiationLaw, nu: float, T: float) -> float:
    """Monochromatic energy density U(nu, T) in J s m^-3."""
    _check_domain(nu, T)
    x = law.X(nu, T)
    return 8 * math.pi * nu * nu * law.k * T / law.c**3 * _scaled_phi(law, x)


def rayleigh_jeans_density(nu: float, T: float, k: float, c: float = C_LIGHT) -> float:
    return 8 * math.pi * nu * nu * k * T / c**3


def spectral_density_derivatives(law: RadiationLaw, nu: float, T: float) -> tuple[float, float]:
    """Analytic dU/dnu and d2U/dnu2 at fixed T."""
    _check_domain(nu, T)
    N = law.N
    alpha = 8 * math.pi * law.eta / law.c**3
    beta = law.eta / (law.k * T)
    x = beta * nu
    pre = alpha * beta ** (-N - 1)
    phi, d1, d2 = law.phi(x), law.phi.derivative(x), law.phi.second_derivative(x)
    first = pre * nu ** (1 - N) * ((2 - N) * phi + x * d1)
    second = pre * nu ** (-N) * ((1 - N) * (2 - N) * phi + 2 * (2 - N) * x * d1 + x * x * d2)
    return first, second


def _curvature_term(law: RadiationLaw, x: float) -> tuple[float, float]:
    """Bracket of U'' at X and a magnitude scale for comparing it with zero."""
    N = law.N
    phi, d1, d2 = law.phi(x), law.phi.derivative(x), law.phi.second_derivative(x)
    terms = ((1 - N) * (2 - N) * phi, 2 * (2 - N) * x * d1, x * x * d2)
    return sum(terms), max(abs(t) for t in terms)


def _stationary_residual(law: RadiationLaw, x: float) -> float:
    return (2 - law.N) + x * law.phi.log_derivative(x)


def _bracket_stationary(law: RadiationLaw) -> Optional[tuple[float, float]]:
    lo = 1e-6
    g_lo = _stationary_residual(law, lo)
    hi = 1.0
    while hi < 2.0**40:
        g_hi = _stationary_residual(law, hi)
        if g_hi == 0.0:
            return 0.5 * hi, 2.0 * hi
        if g_lo * g_hi < 0:
            return lo, hi
        lo, g_lo = hi, g_hi
        hi *= 2.0
    return None


def classify_extreme(law: RadiationLaw, tol: float = 1e-9) -> tuple[str, Optional[float]]:
    """Return ``("maximum" | "inflection" | "none", X_extreme)``.

    A stationary point is located from ``(2 - N) Phi(X) + X Phi'(X) = 0``.
    When that residual vanishes identically (``Phi = X**(N-2)``) every point
    is stationary with zero curvature and the kind is ``"inflection"``.
    """
    probes = (0.1, 1.0, 10.0)
    if all(abs(_stationary_residual(law, x)) <= tol for x in probes):
        curv = [_curvature_term(law, x) for x in probes]
        if all(abs(v) <= tol * max(s, 1e-300) for v, s in curv):
            return "inflection", None
        return "none", None
    bracket = _bracket_stationary(law)
    if bracket is None:
        return "none", None
    x = find_root(lambda t: _stationary_residual(law, t), *bracket, tol=1e-14)
    value, scale = _curvature_term(law, x)
    if abs(value) <= tol * scale:
        return "inflection", x
    if value < 0:
        return "maximum", x
    return "none", x


def find_peak(law: RadiationLaw) -> float:
    """X_max = eta nu_max / (k T) of the spectral maximum.

    Raises
    ------
    NoMaximum
        For laws without a genuine maximum (monotone, or an inflection).
    """
    kind, x = classify_extreme(law)
    if kind != "maximum":
        raise NoMaximum(f"{law.name}: no spectral maximum ({kind})")
    return x


def peak_nu_over_T(law: RadiationLaw) -> float:
    """Wien's displacement constant nu_max / T implied by the law."""
    return find_peak(law) * law.k / law.eta


# --------------------------------------------------------------------------
# energy density


def _energy_integrand(law: RadiationLaw):
    N, phi = law.N, law.phi

    def f(x: float) -> float:
        return x ** (2 - N) * phi(x)

    return f


@lru_cache(maxsize=64)
def energy_integral(law: RadiationLaw, tol: float = DEFAULT_QUAD_TOL) -> tuple[DivergenceVerdict, Optional[float]]:
    """Classify and, if convergent, evaluate ``int_0^inf X^(2-N) Phi(X) dX``.

    Both ends are tested: the tail directly and the origin through
    ``X -> 1/u``.  Only the constants-free shape matters here.
    """
    f = _energy_integrand(law)
    tail = detect_divergence(f)
    head = detect_divergence(lambda u: f(1.0 / u) / (u * u))
    if tail.divergent or head.divergent:
        worst = tail if tail.divergent else head
        return worst, None
    verdict = tail if tail.witness >= head.witness else head
    return verdict, integrate_semiinfinite(f, tol).value


def radiation_constant(law: RadiationLaw) -> float:
    """``a`` in ``E(T) = a T^4``."""
    verdict, integral = energy_integral(law)
    if verdict.divergent or integral is None:
        raise DivergentIntegral(f"{law.name}: energy integral diverges")
    return 8 * math.pi * law.k * (law.k / (law.c * law.eta)) ** 3 * integral


def energy_density(law: RadiationLaw, T: float) -> float:
    """Total energy density E(T) = a T^4 in J m^-3."""
    if not T > 0:
        raise DomainError("T must be positive")
    return radiation_constant(law) * T**4


def stefan_constant(law: RadiationLaw) -> float:
    """sigma = c a / 4."""
    return law.c * radiation_constant(law) / 4


# --------------------------------------------------------------------------
# criteria


RED_PROBES = tuple(10.0**-i for i in range(1, 9))
VIOLET_PROBES = tuple(10.0 ** (1 + 0.25 * i) for i in range(9))


def _power_times_phi(law: RadiationLaw, x: float, m: float) -> float:
    try:
        return x**m * law.phi(x)
    except OverflowError:
        return math.inf


def _decays(values: Sequence[float], tol: float) -> bool:
    last, prev = values[-1], values[-2]
    return math.isfinite(last) and abs(last) <= tol and abs(last) <= abs(prev)


@dataclass(frozen=True)
class CriteriaReport:
    law: str
    N: float
    red_limit: float
    red_pass: bool
    violet_limit_exponent_m: float
    violet_limit: float
    violet_pass: bool
    strengthened_violet_exponent_m: float
    strengthened_violet_limit: float
    strengthened_violet_pass: bool
    energy_integral: DivergenceVerdict
    energy_integral_value: Optional[float]
    max_kind: str
    peak_X: Optional[float]
    tolerance: float = field(default=1e-6)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["energy_integral"] = {
            "classification": self.energy_integral.classification,
            "witness": self.energy_integral.witness,
        }
        return d


def evaluate_criteria(
    law: RadiationLaw, tol: float = 1e-6, quad_tol: float = DEFAULT_QUAD_TOL
) -> CriteriaReport:
    """Red, violet, strengthened-violet, energy and maximum checks.

    Limits are read off geometric probe sequences: the red limit of
    ``X^-N Phi`` at X = 1e-1 ... 1e-8, the violet limits of ``X^m Phi`` at
    X = 10 ... 1000 with ``m = 3 - N`` and the stricter ``m = 4 - N``.
    A limit "passes" when the last probe is within ``tol`` of its target and
    no worse than the one before.
    """
    red = [_scaled_phi(law, x) for x in RED_PROBES]
    red_limit = red[-1]
    red_pass = (
        math.isfinite(red_limit)
        and abs(red_limit - 1.0) <= tol
        and abs(red[-1] - red[-2]) <= tol
    )

    m_violet = 3.0 - law.N
    m_strong = m_violet + 1.0
    violet = [_power_times_phi(law, x, m_violet) for x in VIOLET_PROBES]
    strong = [_power_times_phi(law, x, m_strong) for x in VIOLET_PROBES]

    verdict, integral = energy_integral(law, quad_tol)
    kind, x_ext = classify_extreme(law)
    return CriteriaReport(
        law=law.name,
        N=law.N,
        red_limit=red_limit,
        red_pass=red_pass,
        violet_limit_exponent_m=m_violet,
        violet_limit=violet[-1],
        violet_pass=_decays(violet, tol),
        strengthened_violet_exponent_m=m_strong,
        strengthened_violet_limit=strong[-1],
        strengthened_violet_pass=_decays(strong, tol),
        energy_integral=verdict,
        energy_integral_value=integral,
        max_kind=kind,
        peak_X=x_ext if kind == "maximum" else None,
        tolerance=tol,
    )


# --------------------------------------------------------------------------
# spectra


@dataclass(frozen=True)
class SpectrumSample:
    nu_over_T: float  # s^-1 K^-1
    U_over_T3: float  # J s m^-3 K^-3


def sample_spectrum(
    law: RadiationLaw,
    nu_over_T_grid: Iterable[float],
    check_T: float = 6000.0,
    rtol: float = 1e-12,
) -> list[SpectrumSample]:
    """U/T^3 against nu/T, evaluated at T = 1 and cross-checked at ``check_T``."""
    grid = [float(g) for g in nu_over_T_grid]
    if any(g <= 0 for g in grid):
        raise DomainError("grid values must be positive")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise DomainError("grid must be strictly increasing")
    out = []
    for g in grid:
        base = spectral_density(law, g, 1.0)
        other = spectral_density(law, g * check_T, check_T) / check_T**3
        scale = max(abs(base), abs(other))
        if scale > 1e-290 and abs(base - other) > rtol * scale:
            raise RadiationLawError(
                f"U/T^3 depends on T at nu/T={g:g}: {base!r} vs {other!r}"
            )
        out.append(SpectrumSample(g, base))
    return out


def log_grid(lo: float, hi: float, n: int) -> list[float]:
    """``n`` log-spaced points from ``lo`` to ``hi`` inclusive."""
    if n < 2 or not 0 < lo < hi:
        raise DomainError("need 0 < lo < hi and n >= 2")
    a, b = math.log10(lo), math.log10(hi)
    pts = [10.0 ** (a + (b - a) * i / (n - 1)) for i in range(n)]
    pts[0], pts[-1] = lo, hi
    return pts


def write_spectrum_csv(samples: Iterable[SpectrumSample], fh: IO[str]) -> None:
    fh.write("nu_over_T,U_over_T3\n")
    for s in samples:
        fh.write(f"{s.nu_over_T:.17g},{s.U_over_T3:.17g}\n")
