"""Recover (k, eta) for each law from Stefan's constant and Wien's constant.

Two conditions fix the two constants of a law with a spectral maximum at
``X_max``:

* displacement: ``nu_max / T = C = X_max k / eta``
* Stefan-Boltzmann: ``4 sigma / c = 8 pi k (k / (c eta))^3 I``, where ``I`` is
  the energy integral of the law's universal function.

Substituting ``k / eta = C / X_max`` into the second gives ``k`` in closed
form, linear in ``sigma``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from .constants import C_LIGHT, SIGMA, TABLE1, WIEN_C
from .dimensions import Dimension
from .scenarios import generalized_set
from .special import find_root, gamma, zeta_even

TABLE1_TOL = 2e-3


class FitError(ValueError):
    pass


class InvalidN(FitError):
    pass


@dataclass(frozen=True)
class FitInputs:
    sigma: float = SIGMA
    C: float = WIEN_C
    c: float = C_LIGHT

    def __post_init__(self):
        if not (self.sigma > 0 and self.C > 0 and self.c > 0):
            raise FitError("sigma, C and c must all be positive")

    def perturbed(self, sigma_factor: float = 1.0, C_factor: float = 1.0) -> "FitInputs":
        return FitInputs(self.sigma * sigma_factor, self.C * C_factor, self.c)


@dataclass(frozen=True)
class FittedConstants:
    law_name: str
    k: float
    eta: float
    X_max: float

    @property
    def nu_max_over_T(self) -> float:
        return self.X_max * self.k / self.eta


def planck_x_max() -> float:
    """Root of ``X = 3 (1 - exp(-X))`` on (1, 5)."""
    return find_root(
        lambda x: x - 3.0 * (1.0 - math.exp(-x)),
        1.0,
        5.0,
        tol=1e-15,
        dg=lambda x: 1.0 - 3.0 * math.exp(-x),
    )


def _solve(name: str, x_max: float, integral: float, inputs: FitInputs) -> FittedConstants:
    a = 4.0 * inputs.sigma / inputs.c
    ratio = inputs.C / x_max  # k / eta
    k = a * inputs.c**3 / (8.0 * math.pi * ratio**3 * integral)
    return FittedConstants(name, k, k / ratio, x_max)


def fit_exponential_law(N: float, inputs: FitInputs = FitInputs(),
                        name: str | None = None) -> FittedConstants:
    """Constants for ``Phi = exp(-X)``: peak at ``X = 2 - N``, integral ``Gamma(3 - N)``."""
    if not N < 2:
        raise InvalidN(f"exponential law has a maximum only for N < 2, got {N}")
    return _solve(name or f"exponential(N={N:g})", 2.0 - N, gamma(3.0 - N), inputs)


def fit_planck(inputs: FitInputs = FitInputs()) -> FittedConstants:
    """Planck law: integral ``Gamma(4) zeta(4) = pi^4 / 15``."""
    return _solve("planck", planck_x_max(), gamma(4.0) * zeta_even(2), inputs)


FIT_ROWS = (
    ("planck", None),
    ("wien-paschen", -1.0),
    ("thiesen", -0.5),
    ("rayleigh", 0.0),
)


def fit_all(inputs: FitInputs = FitInputs()) -> list[FittedConstants]:
    out = []
    for name, N in FIT_ROWS:
        out.append(fit_planck(inputs) if N is None else fit_exponential_law(N, inputs, name))
    return out


@dataclass(frozen=True)
class Table1Cell:
    law: str
    quantity: str  # "k" | "eta"
    fitted: float
    reference: float
    rel_error: float
    passed: bool


@dataclass(frozen=True)
class Table1Report:
    inputs: FitInputs
    cells: tuple[Table1Cell, ...]
    tolerance: float

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cells)

    def to_dict(self) -> dict:
        return {
            "inputs": asdict(self.inputs),
            "tolerance": self.tolerance,
            "passed": self.passed,
            "cells": [asdict(c) for c in self.cells],
        }

    def format_text(self) -> str:
        lines = [
            f"sigma = {self.inputs.sigma:.6g} J m^-2 s^-1 K^-4, "
            f"C = {self.inputs.C:.6g} s^-1 K^-1, c = {self.inputs.c:.10g} m/s",
            f"{'law':<14}{'qty':<5}{'fitted':>14}{'table':>14}{'rel.err':>11}  ok",
        ]
        for c in self.cells:
            lines.append(
                f"{c.law:<14}{c.quantity:<5}{c.fitted:>14.5e}{c.reference:>14.4e}"
                f"{c.rel_error:>11.2e}  {'yes' if c.passed else 'NO'}"
            )
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'} (tolerance {self.tolerance:g})")
        return "\n".join(lines)


def verify_table1(inputs: FitInputs = FitInputs(), tol: float = TABLE1_TOL) -> Table1Report:
    """Fit every law with a maximum and compare against the reference table."""
    cells = []
    for fit in fit_all(inputs):
        ref_k, ref_eta = TABLE1[fit.law_name]
        for qty, got, ref in (("k", fit.k, ref_k), ("eta", fit.eta, ref_eta)):
            err = (got - ref) / ref
            cells.append(Table1Cell(fit.law_name, qty, got, ref, err, abs(err) <= tol))
    return Table1Report(inputs, tuple(cells), tol)


def ratio_dimension() -> Dimension:
    """Dimension of k / eta from the quantity table (should be Θ^-1 T^-1)."""
    qs = generalized_set()
    k = qs.quantities[qs.index("k")].dimension
    eta = qs.quantities[qs.index("eta")].dimension
    return k / eta
