"""Exact dimensional bookkeeping.

A dimension is a vector of rational exponents over a user-declared, ordered
basis of fundamental dimensions.  Quantities carry a dimension; an ordered set
of quantities yields the dimensional matrix ``G`` (rows = basis entries,
columns = quantities).

All arithmetic is done with :class:`fractions.Fraction`, so half-integer
exponents (e.g. the electric charge in Gaussian-like systems) never round.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

RationalLike = Union[int, str, Fraction]

_FACTOR_RE = re.compile(
    r"^(?P<label>[^\s^]+)(?:\^(?P<exp>[+-]?\d+(?:/\d+)?))?$"
)


class DimensionError(ValueError):
    """Base class for malformed dimension input."""


class DimensionParseError(DimensionError):
    pass


def as_fraction(value: RationalLike) -> Fraction:
    """Convert ``value`` to an exact :class:`Fraction`.

    Floats are rejected on purpose: ``Fraction(0.1)`` is not ``1/10``.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rational exponents")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise DimensionParseError(f"malformed rational {value!r}") from exc
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def format_fraction(value: Fraction) -> str:
    """Render ``value`` as ``p`` or ``p/q``."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class DimensionBasis:
    """Ordered, unique labels of the fundamental dimensions."""

    names: tuple[str, ...]

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise DimensionError(f"duplicate basis labels in {names}")
        for name in names:
            if not name or any(ch.isspace() for ch in name) or "^" in name:
                raise DimensionError(f"invalid basis label {name!r}")
        object.__setattr__(self, "names", names)

    def __len__(self) -> int:
        return len(self.names)

    def index(self, label: str) -> int:
        try:
            return self.names.index(label)
        except ValueError:
            raise DimensionParseError(
                f"unknown dimension label {label!r}; basis is {list(self.names)}"
            ) from None


@dataclass(frozen=True)
class Dimension:
    """Exponent vector over a :class:`DimensionBasis`.

    Multiplication and division add and subtract exponents, ``**`` scales them.
    """

    basis: DimensionBasis
    exponents: tuple[Fraction, ...]

    def __post_init__(self):
        exps = tuple(as_fraction(e) for e in self.exponents)
        if len(exps) != len(self.basis):
            raise DimensionError(
                f"expected {len(self.basis)} exponents, got {len(exps)}"
            )
        object.__setattr__(self, "exponents", exps)

    @classmethod
    def dimensionless(cls, basis: DimensionBasis) -> "Dimension":
        return cls(basis, (Fraction(0),) * len(basis))

    def _check(self, other: "Dimension") -> None:
        if other.basis != self.basis:
            raise DimensionError("dimensions over different bases")

    def __mul__(self, other: "Dimension") -> "Dimension":
        self._check(other)
        return Dimension(
            self.basis, tuple(a + b for a, b in zip(self.exponents, other.exponents))
        )

    def __truediv__(self, other: "Dimension") -> "Dimension":
        self._check(other)
        return Dimension(
            self.basis, tuple(a - b for a, b in zip(self.exponents, other.exponents))
        )

    def __pow__(self, power: RationalLike) -> "Dimension":
        p = as_fraction(power)
        return Dimension(self.basis, tuple(p * e for e in self.exponents))

    @property
    def is_dimensionless(self) -> bool:
        return all(e == 0 for e in self.exponents)

    def render(self) -> str:
        """Inverse of :func:`parse_dimension`; basis order, unit exponents elided."""
        parts = []
        for label, exp in zip(self.basis.names, self.exponents):
            if exp == 0:
                continue
            parts.append(label if exp == 1 else f"{label}^{format_fraction(exp)}")
        return " ".join(parts)

    def __str__(self) -> str:
        return self.render() or "1"


def parse_dimension(expr: str, basis: DimensionBasis) -> Dimension:
    """Parse a whitespace-separated product such as ``"L^-1 T^-1 M"``.

    Each factor is ``Label`` or ``Label^p`` or ``Label^p/q``.  Labels not
    mentioned get exponent 0; the empty string is dimensionless.

    Raises
    ------
    DimensionParseError
        On unknown labels, malformed exponents or a label given twice.
    """
    exps = [Fraction(0)] * len(basis)
    seen: set[str] = set()
    for token in expr.split():
        m = _FACTOR_RE.match(token)
        if m is None:
            raise DimensionParseError(f"malformed factor {token!r} in {expr!r}")
        label = m.group("label")
        idx = basis.index(label)
        if label in seen:
            raise DimensionParseError(f"label {label!r} repeated in {expr!r}")
        seen.add(label)
        raw = m.group("exp")
        if raw is None:
            exps[idx] = Fraction(1)
        else:
            try:
                exps[idx] = Fraction(raw)
            except ZeroDivisionError:
                raise DimensionParseError(f"zero denominator in {token!r}") from None
    return Dimension(basis, tuple(exps))


@dataclass(frozen=True)
class Quantity:
    name: str
    dimension: Dimension
    symbol: str = ""

    def __post_init__(self):
        if not self.symbol:
            object.__setattr__(self, "symbol", self.name)


@dataclass(frozen=True)
class QuantitySet:
    """Ordered quantities sharing one basis; column order of ``G``."""

    basis: DimensionBasis
    quantities: tuple[Quantity, ...] = field(default_factory=tuple)

    def __post_init__(self):
        qs = tuple(self.quantities)
        if not qs:
            raise DimensionError("a quantity set needs at least one quantity")
        names = [q.name for q in qs]
        if len(set(names)) != len(names):
            raise DimensionError(f"duplicate quantity names in {names}")
        for q in qs:
            if q.dimension.basis != self.basis:
                raise DimensionError(f"quantity {q.name!r} uses a different basis")
        object.__setattr__(self, "quantities", qs)

    @classmethod
    def from_table(
        cls,
        basis: Sequence[str],
        table: Sequence[tuple[str, str] | tuple[str, str, str]],
    ) -> "QuantitySet":
        """Build from ``(name, dim_expr[, symbol])`` rows."""
        b = DimensionBasis(basis)
        quantities = []
        for row in table:
            name, expr = row[0], row[1]
            symbol = row[2] if len(row) > 2 else name
            quantities.append(Quantity(name, parse_dimension(expr, b), symbol))
        return cls(b, tuple(quantities))

    def __len__(self) -> int:
        return len(self.quantities)

    @property
    def names(self) -> list[str]:
        return [q.name for q in self.quantities]

    def index(self, name: str) -> int:
        for j, q in enumerate(self.quantities):
            if q.name == name:
                return j
        raise KeyError(f"no quantity named {name!r}; have {self.names}")


Matrix = list[list[Fraction]]


def dimensional_matrix(qs: QuantitySet) -> Matrix:
    """Return ``G`` with ``G[n][j]`` the exponent of basis entry n in quantity j."""
    return [
        [q.dimension.exponents[n] for q in qs.quantities] for n in range(len(qs.basis))
    ]


def dimension_of_product(
    qs: QuantitySet, powers: Sequence[RationalLike]
) -> Dimension:
    """Dimension of ``prod_j Q_j ** powers[j]``; zero vector iff dimensionless."""
    if len(powers) != len(qs):
        raise DimensionError(f"expected {len(qs)} powers, got {len(powers)}")
    result = Dimension.dimensionless(qs.basis)
    for q, p in zip(qs.quantities, powers):
        result = result * q.dimension ** as_fraction(p)
    return result
