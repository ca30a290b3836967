"""Buckingham pi-invariants over exact rationals.

Given a :class:`~piradiance.dimensions.QuantitySet` with dimensional matrix
``G`` (r x kappa), the non-dimensional power products are the solutions of
``G x = 0``.  Two routes are provided:

* :func:`nullspace_basis` -- reduced row echelon form, one basis vector per
  free (non-pivot) column.
* :func:`solve_pinned` -- the textbook procedure: fix ``p = kappa - rank``
  exponents per invariant, then solve the remaining square system by
  Cramer's rule.

The two are independent enough to check one another; tests do exactly that.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .dimensions import (
    Matrix,
    QuantitySet,
    RationalLike,
    as_fraction,
    dimension_of_product,
    dimensional_matrix,
    format_fraction,
)


class PiSolverError(ValueError):
    pass


class PinCountMismatch(PiSolverError):
    pass


class SingularSubsystem(PiSolverError):
    pass


class DependentInvariants(PiSolverError):
    pass


class NotSingleInvariant(PiSolverError):
    pass


# --------------------------------------------------------------------------
# exact linear algebra


def _copy(m: Sequence[Sequence[RationalLike]]) -> Matrix:
    return [[as_fraction(v) for v in row] for row in m]


def rref(m: Sequence[Sequence[RationalLike]]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns (left-to-right pivoting)."""
    a = _copy(m)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pr = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        piv = a[r][c]
        a[r] = [v / piv for v in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [vi - f * vr for vi, vr in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(g: Sequence[Sequence[RationalLike]]) -> int:
    """Exact rank of a rational matrix."""
    if not g or not g[0]:
        return 0
    return len(rref(g)[1])


def determinant(m: Sequence[Sequence[RationalLike]]) -> Fraction:
    """Bareiss fraction-free determinant of a square matrix."""
    a = _copy(m)
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return Fraction(1)
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def cramer_solve(
    a: Sequence[Sequence[RationalLike]], b: Sequence[RationalLike]
) -> list[Fraction]:
    """Solve ``a x = b`` by Cramer's rule; ``a`` must be non-singular."""
    det_a = determinant(a)
    if det_a == 0:
        raise SingularSubsystem("coefficient matrix is singular")
    a = _copy(a)
    b = [as_fraction(v) for v in b]
    x = []
    for col in range(len(a)):
        a_col = [row[:col] + [b[i]] + row[col + 1 :] for i, row in enumerate(a)]
        x.append(determinant(a_col) / det_a)
    return x


def independent_rows(g: Matrix) -> list[int]:
    """Indices of a maximal linearly independent subset of rows, first-come."""
    chosen: list[int] = []
    for i in range(len(g)):
        if rank([g[k] for k in chosen + [i]]) == len(chosen) + 1:
            chosen.append(i)
    return chosen


# --------------------------------------------------------------------------
# invariants


@dataclass(frozen=True)
class PiInvariant:
    powers: tuple[Fraction, ...]
    formula: str

    def as_strings(self) -> list[str]:
        return [format_fraction(p) for p in self.powers]


@dataclass(frozen=True)
class PinSpec:
    """Chosen exponents: ``pins[(quantity_index, invariant_index)] = value``.

    Indices are zero-based.  Use :meth:`from_records` for the one-based,
    name-addressed form found in scenario files.
    """

    pins: Mapping[tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(
            self, "pins", {k: as_fraction(v) for k, v in dict(self.pins).items()}
        )

    @classmethod
    def from_records(cls, qs: QuantitySet, records: Iterable[Mapping]) -> "PinSpec":
        pins: dict[tuple[int, int], Fraction] = {}
        for rec in records:
            i = int(rec["invariant"]) - 1
            q = rec["quantity"]
            j = qs.index(q) if isinstance(q, str) else int(q) - 1
            if i < 0 or not 0 <= j < len(qs):
                raise PinCountMismatch(f"pin out of range: {dict(rec)}")
            if (j, i) in pins:
                raise PinCountMismatch(f"pin given twice: {dict(rec)}")
            pins[(j, i)] = as_fraction(rec["value"])
        return cls(pins)

    def for_invariant(self, i: int) -> dict[int, Fraction]:
        return {j: v for (j, ii), v in self.pins.items() if ii == i}

    @property
    def invariant_indices(self) -> set[int]:
        return {i for (_, i) in self.pins}


@dataclass(frozen=True)
class PiSystem:
    quantity_set: QuantitySet
    rank: int
    num_invariants: int
    invariants: tuple[PiInvariant, ...]


def render_formula(qs: QuantitySet, powers: Sequence[Fraction]) -> str:
    """``"U c^3 / (ν^2 T k)"``-style text; quantity order kept on both sides."""

    def factor(sym: str, e: Fraction) -> str:
        if e == 1:
            return sym
        text = format_fraction(e)
        return f"{sym}^({text})" if e.denominator != 1 else f"{sym}^{text}"

    num = [factor(q.symbol, p) for q, p in zip(qs.quantities, powers) if p > 0]
    den = [factor(q.symbol, -p) for q, p in zip(qs.quantities, powers) if p < 0]
    top = " ".join(num) if num else "1"
    if not den:
        return top
    bottom = den[0] if len(den) == 1 else f"({' '.join(den)})"
    return f"{top} / {bottom}"


def _make_invariant(qs: QuantitySet, powers: Sequence[Fraction]) -> PiInvariant:
    powers = tuple(powers)
    if not dimension_of_product(qs, powers).is_dimensionless:
        # would indicate a solver bug, never bad user input
        raise AssertionError(f"non-dimensionless result {powers}")
    return PiInvariant(powers, render_formula(qs, powers))


def nullspace_basis(qs: QuantitySet) -> list[tuple[Fraction, ...]]:
    """Exact basis of ``{x : G x = 0}``; empty when rank equals kappa.

    Free variables are the non-pivot columns of the left-to-right RREF, so
    they sit as far right as possible.  Basis vector ``f`` has a one in free
    column ``f`` and zeros in the other free columns.
    """
    g = dimensional_matrix(qs)
    red, pivots = rref(g)
    kappa = len(qs)
    free = [c for c in range(kappa) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * kappa
        x[f] = Fraction(1)
        for row, pc in enumerate(pivots):
            x[pc] = -red[row][f]
        basis.append(tuple(x))
    return basis


def in_span(vectors: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> bool:
    """Exact test whether ``v`` is a rational combination of ``vectors``."""
    if not vectors:
        return all(x == 0 for x in v)
    return rank([list(u) for u in vectors] + [list(v)]) == rank(
        [list(u) for u in vectors]
    )


def solve_pinned(qs: QuantitySet, pins: PinSpec) -> PiSystem:
    """Solve for the pi-invariants given ``p`` pinned exponents per invariant.

    For invariant ``i`` the pinned exponents move to the right-hand side and
    the remaining ``rank x rank`` system ``G0 x = B_i`` is solved by Cramer's
    rule.  All pin sets are validated before any solve.

    Raises
    ------
    PinCountMismatch
        If an invariant does not carry exactly ``p`` pins, or invariants are
        missing or extra.
    SingularSubsystem
        If the square subsystem left by a pin choice has zero determinant.
    DependentInvariants
        If the resulting power vectors are linearly dependent.
    """
    g = dimensional_matrix(qs)
    r = rank(g)
    kappa = len(qs)
    p = kappa - r
    if pins.invariant_indices != set(range(p)):
        raise PinCountMismatch(
            f"expected pins for invariants 1..{p}, got "
            f"{sorted(i + 1 for i in pins.invariant_indices)}"
        )
    rows = independent_rows(g)
    systems = []
    for i in range(p):
        pinned = pins.for_invariant(i)
        if len(pinned) != p:
            raise PinCountMismatch(
                f"invariant {i + 1} has {len(pinned)} pins, needs {p}"
            )
        unknown = [j for j in range(kappa) if j not in pinned]
        g0 = [[g[n][j] for j in unknown] for n in rows]
        if determinant(g0) == 0:
            names = ", ".join(qs.quantities[j].name for j in sorted(pinned))
            raise SingularSubsystem(
                f"pinning ({names}) for invariant {i + 1} leaves a singular system"
            )
        systems.append((pinned, unknown, g0))

    invariants = []
    for pinned, unknown, g0 in systems:
        rhs = [-sum(g[n][j] * v for j, v in pinned.items()) for n in rows]
        solved = cramer_solve(g0, rhs)
        x = [Fraction(0)] * kappa
        for j, v in pinned.items():
            x[j] = v
        for j, v in zip(unknown, solved):
            x[j] = v
        invariants.append(_make_invariant(qs, x))

    if p and rank([list(inv.powers) for inv in invariants]) != p:
        raise DependentInvariants("pin choice yields linearly dependent invariants")
    return PiSystem(qs, r, p, tuple(invariants))


def verify_scaling_freedom(qs: QuantitySet, alpha: RationalLike) -> bool:
    """Check that pinning the first exponent to ``alpha`` scales the invariant.

    Only meaningful for single-invariant sets.  The first quantity is pinned
    (the usual choice of an exponent of one on the explained variable).
    """
    a = as_fraction(alpha)
    if a == 0:
        raise ValueError("alpha must be non-zero")
    p = len(qs) - rank(dimensional_matrix(qs))
    if p != 1:
        raise NotSingleInvariant(f"set has {p} invariants, need exactly 1")
    unit = solve_pinned(qs, PinSpec({(0, 0): Fraction(1)})).invariants[0]
    scaled = solve_pinned(qs, PinSpec({(0, 0): a})).invariants[0]
    return scaled.powers == tuple(a * v for v in unit.powers)


def jeans_functional(x: Sequence[Fraction]) -> Fraction:
    """``x_lambda - 2 x_U + x_e / 2`` over the (U, λ, T, c, e, m, R, K) ordering.

    Vanishes identically on the nullspace of the Jeans quantity set, so the
    wavelength exponent is pinned to ``2 x_U - x_e/2``.
    """
    return x[1] - 2 * x[0] + x[4] / 2
