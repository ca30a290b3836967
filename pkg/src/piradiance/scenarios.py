"""Built-in quantity tables and the scenario JSON format.

Scenario files look like::

    {
      "basis": ["L", "Θ", "T", "M"],
      "quantities": [{"name": "U", "dim": "L^-1 T^-1 M"}, ...],
      "pins": [{"invariant": 1, "quantity": "U", "value": "1"}, ...]
    }

``symbol`` is optional per quantity; ``pins`` is optional (without it only
rank and a nullspace basis are reported).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Mapping

from .dimensions import DimensionError, QuantitySet, RationalLike, as_fraction
from .pi_solver import PinSpec

BASIS = ["L", "Θ", "T", "M"]
JEANS_BASIS = ["L", "Θ", "T", "M", "A"]

RAYLEIGH_JEANS_TABLE = [
    ("U", "L^-1 T^-1 M"),
    ("nu", "T^-1", "ν"),
    ("T", "Θ"),
    ("c", "L T^-1"),
    ("k", "L^2 Θ^-1 T^-2 M"),
]

GENERALIZED_TABLE = RAYLEIGH_JEANS_TABLE + [("eta", "L^2 T^-1 M", "η")]

# A = the "arbitrary system" dimension of the ether's dielectric constant
JEANS_TABLE = [
    ("U", "L^-1 T^-1 M"),
    ("lambda", "L", "λ"),
    ("T", "Θ"),
    ("c", "L T^-1"),
    ("e", "L^3/2 T^-1 M^1/2 A^1/2"),
    ("m", "M"),
    ("R", "L^2 Θ^-1 T^-2 M"),
    ("K", "A"),
]

PRESETS = ("rayleigh-jeans", "generalized", "jeans")


class ScenarioError(ValueError):
    pass


@dataclass(frozen=True)
class DeriveScenario:
    name: str
    quantity_set: QuantitySet
    pins: PinSpec | None
    note: str = ""


def rayleigh_jeans_set() -> QuantitySet:
    return QuantitySet.from_table(BASIS, RAYLEIGH_JEANS_TABLE)


def generalized_set() -> QuantitySet:
    return QuantitySet.from_table(BASIS, GENERALIZED_TABLE)


def jeans_set() -> QuantitySet:
    return QuantitySet.from_table(JEANS_BASIS, JEANS_TABLE)


def generalized_pins(N: RationalLike) -> PinSpec:
    """x_U = 1, x_eta = N for the first invariant; x_U = 0, x_eta = 1 for the second."""
    n = as_fraction(N)
    return PinSpec({(0, 0): 1, (5, 0): n, (0, 1): 0, (5, 1): 1})


def jeans_pins() -> PinSpec:
    # (U, m, R) pinned for each invariant
    values = [(1, 0, -1), (0, -1, 1), (0, -2, 1)]
    pins = {}
    for i, (u, m, r) in enumerate(values):
        pins[(0, i)] = u
        pins[(5, i)] = m
        pins[(6, i)] = r
    return PinSpec(pins)


JEANS_NOTE = (
    "Every non-dimensional product satisfies x_λ = 2 x_U - x_e/2, so with "
    "x_U = 1 and x_e = 0 the wavelength enters as λ^2: U = R T/(λ^2 c) φ(...). "
    "This cannot reproduce U ∝ T/λ^4 φ or U ∝ λ^-5 φ; the hypothesis fails."
)


def preset(name: str, N: RationalLike = -1) -> DeriveScenario:
    if name == "rayleigh-jeans":
        return DeriveScenario(name, rayleigh_jeans_set(), PinSpec({(0, 0): 1}))
    if name == "generalized":
        return DeriveScenario(name, generalized_set(), generalized_pins(N))
    if name == "jeans":
        return DeriveScenario(name, jeans_set(), jeans_pins(), JEANS_NOTE)
    raise ScenarioError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")


def scenario_from_dict(data: Mapping[str, Any], name: str = "custom") -> DeriveScenario:
    try:
        basis = list(data["basis"])
        rows = []
        for q in data["quantities"]:
            rows.append((q["name"], q.get("dim", ""), q.get("symbol", q["name"])))
        qs = QuantitySet.from_table(basis, rows)
        pins = None
        if data.get("pins"):
            pins = PinSpec.from_records(qs, data["pins"])
    except (KeyError, TypeError) as exc:
        raise ScenarioError(f"bad scenario structure: {exc}") from exc
    except DimensionError as exc:
        raise ScenarioError(str(exc)) from exc
    return DeriveScenario(name, qs, pins, data.get("note", ""))


def load_scenario(path: str | Path) -> DeriveScenario:
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"{path}: invalid JSON ({exc})") from exc
    return scenario_from_dict(data, name=path.stem)


def parse_rational_option(text: str) -> Fraction:
    """Parse ``-1``, ``-1/2`` or a terminating decimal like ``0.5`` exactly."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ScenarioError(f"not a rational number: {text!r}") from exc
